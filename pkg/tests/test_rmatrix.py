from fractions import Fraction

import numpy as np
import pytest

from qcross import Params, build_R, check_rtt, check_ybe, invert
from qcross import linalg
from qcross.rmatrix import BASIS, POS, decouple_f_sector, identity_R, rtt_entries
from qcross.scalar import lam, r, s, specialize


def test_entries():
    R = build_R()
    assert R.entry((0, 0), (0, 0)) == r
    assert R.entry((2, 1), (1, 2)) == lam
    assert R.entry((0, 1), (1, 0)) == 0
    assert R.entry((0, 1), (0, 1)) == s.inv()
    assert [p for p in BASIS] == [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_inverse():
    R = build_R()
    Ri = invert(R)
    assert Ri.entry((0, 0), (0, 0)) == r.inv()
    assert Ri.entry((1, 0), (0, 1)) == -lam
    one = R.params.one
    assert linalg.equal(R.M @ Ri.M, linalg.identity(9, one, R.params.zero))
    assert linalg.equal(Ri.M @ R.M, linalg.identity(9, one, R.params.zero))
    assert invert(identity_R()) == identity_R()


def test_singular_matrix_raises():
    R = build_R(Params.specialized(2, 3))
    with pytest.raises(linalg.SingularMatrixError):
        invert(R.with_entry((0, 0), (0, 0), Fraction(0)))


def test_ybe():
    assert check_ybe(build_R())
    assert check_ybe(identity_R())
    assert not check_ybe(build_R().with_entry((2, 1), (1, 2), Params.symbolic().one))


@pytest.mark.parametrize("point", [(2, 3), (Fraction(-3, 7), Fraction(5, 2)), (Fraction(11, 10), -1)])
def test_ybe_float_oracle(point):
    # independent path: floats and einsum leg placement instead of exact Kronecker products
    M = build_R().M
    num = np.array([[float(specialize(x, *point)) for x in row] for row in M])
    R4 = np.zeros((3, 3, 3, 3))
    for (i, j), a in POS.items():
        for (k, l), b in POS.items():
            R4[i, j, k, l] = num[a, b]
    R12 = np.einsum("abij,ck->abcijk", R4, np.eye(3))
    R13 = np.einsum("acik,bj->abcijk", R4, np.eye(3))
    R23 = np.einsum("bcjk,ai->abcijk", R4, np.eye(3))
    mat = lambda T: T.reshape(27, 27)
    left = mat(R12) @ mat(R13) @ mat(R23)
    right = mat(R23) @ mat(R13) @ mat(R12)
    assert np.allclose(left, right, atol=1e-12)


def test_ybe_specialized():
    assert check_ybe(build_R(Params.specialized(2, 3)))


def test_rtt(alg):
    res = check_rtt(alg)
    assert res.passed
    assert res.details["rank_extracted"] == res.details["rank_defining"] == res.details["rank_union"] == 10


def test_rtt_literal_reading_is_rejected(alg):
    res = check_rtt(alg, build_R(reading="literal"))
    assert not res.passed


def test_rtt_entry_examples():
    entries = rtt_entries(build_R())
    # all-zero indices only ever see f f, which cancels
    assert entries[((0, 0), (0, 0))] == {}


def test_decoupled_matrix_gives_same_relations(alg):
    R = build_R()
    D = decouple_f_sector(R)
    assert check_ybe(D)
    assert check_rtt(alg, D).passed
    assert D.entry((1, 0), (0, 1)) == 0 and R.entry((1, 0), (0, 1)) == lam


def test_one_parameter_slice():
    R = build_R(Params.specialized(3, 3))
    assert R.entry((0, 1), (0, 1)) == Fraction(1, 3)


def test_unknown_reading():
    with pytest.raises(ValueError):
        build_R(reading="sideways")
