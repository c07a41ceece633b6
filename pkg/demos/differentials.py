"""Compute the exterior derivative of every generator and compare with the published table.

Run: python3 demos/differentials.py
"""

from qcross import Calculus
from qcross.calculus import generator_differentials, published_forms, relation_compatibility

calc = Calculus.build()

print("Computed differentials (default pairing convention):")
for g, form in generator_differentials(calc).items():
    print(f"  d{g} = {form}")

report = calc.check_paper_differentials()
print()
print("Per-term comparison with the published formulas:")
for t in report.terms:
    print(f"  d{t.generator} at {t.form}: {t.status}")

# The published table is not compatible with the algebra relations once d is
# extended by the Leibniz rule; the computed one is.
print()
for label, forms in (("computed", generator_differentials(calc)), ("published", published_forms(calc))):
    compat = relation_compatibility(calc, forms)
    broken = [name for name, ok in compat.items() if not ok]
    print(f"{label}: {len(compat) - len(broken)}/{len(compat)} relations respected", broken or "")
