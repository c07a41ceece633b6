import random

import pytest

from qcross import Tensor
from qcross.algebra import random_element
from qcross.hopf import hopf_sample
from qcross.scalar import r


def test_coproduct_examples(alg, hopf):
    A = alg
    assert hopf.coproduct(A.a) == Tensor.pure(A.a, A.a) + Tensor.pure(A.b, A.c)
    assert hopf.coproduct(A.one) == Tensor.pure(A.one, A.one)
    assert hopf.coproduct(A.delta) == Tensor.pure(A.delta, A.delta)
    assert hopf.coproduct(A.f) == Tensor.pure(A.f, A.f)


def test_counit_examples(alg, hopf):
    assert hopf.counit(alg.b) == 0
    assert hopf.counit(alg.one) == 1
    assert hopf.counit(alg.f * alg.f * alg.a * alg.d) == 1


def test_antipode_examples(alg, hopf):
    A = alg
    assert hopf.antipode(A.b) == (A.delta_inv * A.b).scale(-r)
    assert hopf.antipode(A.one) == A.one
    assert hopf.antipode(A.a * A.b) == (A.delta_inv * A.delta_inv * A.b * A.d).scale(-r)
    assert hopf.antipode(A.f) == A.finv
    assert hopf.antipode(A.delta_inv) == A.delta


def test_antipode_on_a_by_hand(alg, hopf):
    A = alg
    lhs = hopf.antipode(A.a) * A.a + hopf.antipode(A.b) * A.c
    assert A.d * A.a - (A.b * A.c).scale(r) == A.delta
    assert lhs == 1


def test_axioms(alg, hopf):
    sample = hopf_sample(alg, random.Random(1), 200, 4)
    results = hopf.check_hopf_axioms(sample)
    assert [x.name for x in results if not x.passed] == []


def test_axioms_detect_a_broken_antipode(alg, hopf):
    # teeth: swapping S(a) and S(d) must be caught
    from qcross import Hopf
    broken = Hopf(alg)
    broken._gen_anti["a"], broken._gen_anti["d"] = broken._gen_anti["d"], broken._gen_anti["a"]
    broken._anti_cache.clear()
    failed = [x.name for x in broken.check_hopf_axioms([alg.a]) if not x.passed]
    assert any("antipode" in n for n in failed)


def test_coproduct_multiplicative(alg, hopf):
    rng = random.Random(2)
    for _ in range(100):
        x, y = random_element(alg, rng, 2, 2), random_element(alg, rng, 2, 2)
        assert hopf.coproduct(x * y) == hopf.coproduct(x) * hopf.coproduct(y)


def test_antipode_antimultiplicative(alg, hopf):
    rng = random.Random(3)
    for _ in range(100):
        x, y = random_element(alg, rng, 2, 2), random_element(alg, rng, 2, 2)
        assert hopf.antipode(x * y) == hopf.antipode(y) * hopf.antipode(x)
        assert hopf.counit(hopf.antipode(x)) == hopf.counit(x)


def test_grouplike(hopf):
    assert all(x.passed for x in hopf.check_grouplike())


@pytest.mark.parametrize("name", ["coproduct respects relations", "counit respects relations"])
def test_bialgebra_relations(hopf, name):
    assert {x.name: x.passed for x in hopf.check_bialgebra_relations()}[name]


def test_antipode_inverse(alg, hopf):
    rng = random.Random(4)
    xs = list(alg.generators().values()) + [alg.delta_inv]
    xs += [random_element(alg, rng, 3, 2, 1) for _ in range(30)]
    for x in xs:
        assert hopf.antipode(hopf.antipode_inverse(x)) == x
        assert hopf.antipode_inverse(hopf.antipode(x)) == x
