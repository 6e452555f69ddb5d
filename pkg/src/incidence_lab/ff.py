"""Arithmetic in the prime field F_p and exact linear algebra over it.

Elements are small wrappers around a reduced ``int``.  Hot loops elsewhere in
the package work on raw residues and only build :class:`FieldElement` objects
at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldMismatchError, NonPrimeFieldError, ZeroInverseError

MIN_MODULUS = 5
MAX_MODULUS = 1 << 31

# Deterministic Miller-Rabin witnesses for n < 3_215_031_751.
_MR_BASES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    if n >= 3_215_031_751:
        raise ValueError("primality check only certified below 3215031751")
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``5 <= modulus < 2**31``."""

    modulus: int

    def __post_init__(self):
        p = self.modulus
        if isinstance(p, bool) or not isinstance(p, int):
            raise NonPrimeFieldError(f"modulus must be an int, got {p!r}")
        if not MIN_MODULUS <= p < MAX_MODULUS:
            raise NonPrimeFieldError(f"modulus {p} outside [{MIN_MODULUS}, 2**31)")
        if not is_prime(p):
            raise NonPrimeFieldError(f"modulus {p} is not prime")

    def __call__(self, value) -> FieldElement:
        return FieldElement(value, self)

    def __iter__(self) -> Iterator[FieldElement]:
        return (FieldElement(v, self) for v in range(self.modulus))

    def __len__(self):
        return self.modulus

    def __repr__(self):
        return f"GF({self.modulus})"

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def residue(self, value) -> int:
        """Reduce an int or an element of this field to a residue in [0, p)."""
        if isinstance(value, FieldElement):
            if value.field.modulus != self.modulus:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value.value
        return int(value) % self.modulus

    def inv_residue(self, v: int) -> int:
        if v % self.modulus == 0:
            raise ZeroInverseError(f"0 has no inverse in {self}")
        return pow(v, -1, self.modulus)


class FieldElement:
    __slots__ = ("value", "field")

    def __init__(self, value, field: PrimeField):
        if isinstance(value, FieldElement):
            if value.field != field:
                raise FieldMismatchError(f"element of {value.field} used in {field}")
            value = value.value
        self.value = int(value) % field.modulus
        self.field = field

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.field.modulus != self.field.modulus:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.modulus
        return None

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.value * self.field.inv_residue(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o * self.field.inv_residue(self.value))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.value, e, self.field.modulus))

    def inverse(self) -> FieldElement:
        return self._new(self.field.inv_residue(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.modulus == other.field.modulus
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.modulus})"


# ---------------------------------------------------------------------------
# Linear algebra on residue matrices.  p < 2**31 keeps every product of two
# residues below 2**62, so int64 intermediates are exact.


def rref_mod(rows, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Columns are scanned left to right; the pivot for a column is the first
    remaining row (smallest index) with a nonzero entry.  Returns the reduced
    matrix and the list of pivot columns.
    """
    m = np.array(rows, dtype=np.int64).reshape(len(rows), -1) if len(rows) else None
    if m is None:
        return np.zeros((0, ncols or 0), dtype=np.int64), []
    m %= p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r]) % p) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_mod(rows, p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel of a residue matrix, one vector per free column."""
    if not len(rows):
        if ncols is None:
            raise ValueError("ncols is required for a matrix with no rows")
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref_mod(rows, p)
    ncols = m.shape[1]
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = int(-m[row, f]) % p
        basis.append(v)
    return basis


def rank_mod(rows, p: int) -> int:
    if not len(rows):
        return 0
    return len(rref_mod(rows, p)[1])


def _matrix_field(matrix: Sequence[Sequence[FieldElement]]) -> PrimeField | None:
    field = None
    for row in matrix:
        for x in row:
            if not isinstance(x, FieldElement):
                raise TypeError(f"matrix entries must be FieldElement, got {type(x).__name__}")
            if field is None:
                field = x.field
            elif x.field != field:
                raise FieldMismatchError(f"matrix mixes {field} and {x.field}")
    return field


def nullspace(
    matrix: Sequence[Sequence[FieldElement]],
    ncols: int | None = None,
    field: PrimeField | None = None,
) -> list[list[FieldElement]]:
    """Right nullspace basis of a matrix of field elements.

    Deterministic: pivots are chosen by smallest row index then smallest
    column index, and the basis has one vector per free column in increasing
    column order.  An empty list means the kernel is trivial.  ``ncols`` and
    ``field`` are only needed when the matrix has no rows.
    """
    found = _matrix_field(matrix)
    if found is None:
        if field is None:
            raise ValueError("field is required for an empty matrix")
        found = field
    elif field is not None and field != found:
        raise FieldMismatchError(f"matrix over {found}, expected {field}")
    widths = {len(row) for row in matrix}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is None and widths:
        ncols = widths.pop()
    rows = [[x.value for x in row] for row in matrix]
    return [[FieldElement(v, found) for v in vec]
            for vec in nullspace_mod(rows, found.modulus, ncols)]


def rank(matrix: Sequence[Sequence[FieldElement]]) -> int:
    field = _matrix_field(matrix)
    if field is None:
        return 0
    return rank_mod([[x.value for x in row] for row in matrix], field.modulus)
