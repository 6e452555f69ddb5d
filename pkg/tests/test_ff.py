import pytest
from hypothesis import given, settings, strategies as st

from incidence_lab.errors import FieldMismatchError, NonPrimeFieldError, ZeroInverseError
from incidence_lab.ff import FieldElement, PrimeField, is_prime, nullspace, rank
from incidence_lab.rng import Pcg32


def test_add_examples(F5, F101):
    assert F5(3) + F5(4) == F5(2)
    for v in range(5):
        assert F5(0) + F5(v) == F5(v)
    assert F101(100) + F101(1) == F101(0)


def test_mul_examples(F5):
    assert F5(2) * F5(3) == F5(1)
    for v in range(5):
        assert F5(1) * F5(v) == F5(v)
    F = PrimeField(2147483629)
    assert F(-1) * F(-1) == F(1)
    assert (F(F.modulus - 1) * F(F.modulus - 1)).value == 1


def test_inv_examples(F5):
    assert F5(2).inverse() == F5(3)
    assert F5(1).inverse() == F5(1)
    with pytest.raises(ZeroInverseError):
        F5(0).inverse()
    with pytest.raises(ZeroDivisionError):
        F5(1) / F5(0)


def test_values_are_reduced(F5):
    assert F5(7).value == 2
    assert F5(-1).value == 4
    assert FieldElement(F5(3), F5).value == 3


def test_field_mismatch(F5, F101):
    with pytest.raises(FieldMismatchError):
        F5(1) + F101(1)
    with pytest.raises(FieldMismatchError):
        F5(1) * F101(1)
    assert F5(1) != F101(1)


@pytest.mark.parametrize("bad", [2, 3, 4, 6, 9, 91, 1 << 31, 2147483659, -7])
def test_field_rejects_bad_moduli(bad):
    with pytest.raises(NonPrimeFieldError):
        PrimeField(bad)


def test_largest_prime_modulus_accepted():
    assert PrimeField((1 << 31) - 1).modulus == 2147483647


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if slow(n)]
    # strong pseudoprimes to small bases
    for n in (2047, 1373653, 25326001, 3215031751 - 2):
        assert is_prime(n) == slow(n)


@pytest.mark.parametrize("p", [5, 101, 32003])
def test_field_axioms(p):
    F = PrimeField(p)
    rng = Pcg32(p)
    for _ in range(10_000):
        a, b, c = (F(rng.below(p)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == F.zero
        if a:
            assert a * a.inverse() == F.one


# ---------------------------------------------------------------------------
# nullspace


def _mat(F, rows):
    return [[F(v) for v in row] for row in rows]


def test_nullspace_identity_trivial(F5):
    assert nullspace(_mat(F5, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []


def test_nullspace_zero_row_full(F5):
    basis = nullspace(_mat(F5, [[0, 0, 0]]))
    assert len(basis) == 3
    assert rank([list(v) for v in basis]) == 3


def test_nullspace_single_equation(F5):
    basis = nullspace(_mat(F5, [[1, 2, 3]]))
    assert len(basis) == 2
    for v in basis:
        assert any(v)
        assert v[0] + 2 * v[1] + 3 * v[2] == F5(0)


def test_nullspace_no_rows_needs_width(F5):
    assert len(nullspace([], ncols=4, field=F5)) == 4


def test_nullspace_field_mismatch(F5, F101):
    with pytest.raises(FieldMismatchError):
        nullspace([[F5(1), F101(1)]])


def test_nullspace_deterministic(F101):
    m = _mat(F101, [[3, 1, 4, 1, 5], [9, 2, 6, 5, 3], [12, 3, 10, 6, 8]])
    assert nullspace(m) == nullspace(m)


def _rank_by_hand(rows, p):
    """Plain row reduction kept independent of the library path."""
    rows = [[v % p for v in row] for row in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=300, deadline=None)
@given(rows=matrices, p=st.sampled_from([5, 7, 101]))
def test_nullspace_properties(rows, p):
    F = PrimeField(p)
    m = _mat(F, rows)
    basis = nullspace(m)
    ncols = len(rows[0])
    transpose = [list(col) for col in zip(*rows)]
    assert len(basis) == ncols - _rank_by_hand(transpose, p)
    for v in basis:
        assert any(x.value for x in v)
        for row in m:
            assert sum((a * b for a, b in zip(row, v)), F.zero) == F.zero
    if basis:
        assert rank(basis) == len(basis)
