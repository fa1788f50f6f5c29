import random

import pytest

from quivhom.exactlin import GF, QQ, Field, Mat, inverse, kernel_basis, rank, rref, solve
from quivhom.errors import QuivhomError


def M(rows, field=QQ):
    return Mat.from_rows(field, rows)


def test_field_validation():
    with pytest.raises(QuivhomError):
        Field("fp", 6)
    with pytest.raises(QuivhomError):
        Field("q", 5)
    assert GF(7).inv(3) == 5  # 3*5 = 15 = 1 mod 7


def test_scalar_roundtrip():
    assert QQ.format(QQ.parse("-3/6")) == "-1/2"
    assert GF(5).format(GF(5).parse("7")) == "2"
    assert GF(5).parse("1/2") == 3  # 2*3 = 1 mod 5


def test_rref_identity():
    r, rk, piv = rref(Mat.identity(QQ, 2))
    assert r == Mat.identity(QQ, 2)
    assert rk == 2 and piv == (0, 1)


def test_rref_zero():
    z = Mat.zeros(QQ, 3, 2)
    r, rk, piv = rref(z)
    assert r == z and rk == 0 and piv == ()


def test_rref_rank_one():
    r, rk, piv = rref(M([[1, 2], [2, 4]]))
    assert rk == 1 and piv == (0,)
    assert r.row_list() == [[1, 2], [0, 0]]


def test_kernel_identity_and_zero():
    assert kernel_basis(Mat.identity(QQ, 3)) == []
    ker = kernel_basis(Mat.zeros(QQ, 2, 3))
    assert len(ker) == 3
    for i, v in enumerate(ker):
        col = v.column_vector()
        assert col[i] == 1 and sum(x != 0 for x in col) == 1


def test_kernel_line():
    (v,) = kernel_basis(M([[1, 1]]))
    a, b = v.column_vector()
    assert a + b == 0 and (a, b) != (0, 0)


def test_solve_cases():
    b = Mat.column(QQ, [4, 5])
    assert solve(Mat.identity(QQ, 2), b) == b
    assert solve(M([[1], [0]]), Mat.column(QQ, [0, 1])) is None
    x = solve(M([[2]]), Mat.column(QQ, [1]))
    assert x.column_vector() == [QQ.parse("1/2")]


def _random_matrix(rng, field, rows, cols, lo=-4, hi=4):
    return Mat.from_rows(field, [[field.of_int(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)])


def test_property_suite_rref_idempotent_and_rank_nullity():
    rng = random.Random(20240)
    for _ in range(100):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, QQ, rows, cols)
        r, rk, piv = rref(m)
        r2, rk2, piv2 = rref(r)
        assert r2 == r and rk2 == rk and piv2 == piv
        ker = kernel_basis(m)
        assert rk + len(ker) == cols
        for v in ker:
            assert m.mul(v).is_zero()


def test_property_solve_soundness():
    rng = random.Random(77)
    for _ in range(60):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = _random_matrix(rng, QQ, rows, cols)
        x0 = _random_matrix(rng, QQ, cols, 1)
        b = a.mul(x0)
        x = solve(a, b)
        assert x is not None
        assert a.mul(x) == b


def test_qq_fp_agreement_on_integer_matrices():
    # ranks agree over QQ and F_p when p is large relative to the entries
    rng = random.Random(5150)
    p = 1000003
    fp = GF(p)
    for _ in range(40):
        rows = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(5)]
        mq = Mat.from_rows(QQ, rows)
        mp = Mat.from_rows(fp, rows)
        assert rank(mq) == rank(mp)


def test_inverse_and_kron():
    m = M([[1, 2], [3, 5]])
    mi = inverse(m)
    assert m.mul(mi).is_identity()
    assert inverse(M([[1, 2], [2, 4]])) is None
    k = Mat.kron(Mat.identity(QQ, 2), M([[0, 1], [1, 0]]))
    assert k.rows == 4 and rank(k) == 4


def test_stacking():
    a = M([[1, 2]])
    b = M([[3, 4]])
    assert Mat.vstack(QQ, [a, b]).row_list() == [[1, 2], [3, 4]]
    assert Mat.hstack(QQ, [a, b]).row_list() == [[1, 2, 3, 4]]
    d = Mat.block_diag(QQ, [a, b])
    assert d.row_list() == [[1, 2, 0, 0], [0, 0, 3, 4]]
