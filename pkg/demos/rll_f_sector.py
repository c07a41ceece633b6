"""The mixed RLL relation and the two lambda entries coupling the f row to b and c.

Run: python3 demos/rll_f_sector.py
"""

from qcross import Algebra, Pairing
from qcross.rmatrix import decouple_f_sector


pairing = Pairing(Algebra())
for label, R in (("printed R", None), ("decoupled R", decouple_f_sector(pairing.R))):
    print(label)
    for res in pairing.check_rll(2, R):
        print("  ", res.line())
