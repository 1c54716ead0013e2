"""
Exact Linear Algebra

Row reduction, kernels, linear solving and subquotients over the rationals and
prime fields. Matrices are numpy object arrays holding `fractions.Fraction`
entries (rationals) or reduced Python ints (prime fields); nothing here ever
touches floating point.

Pivoting always picks the first nonzero entry in column order, so every basis
produced downstream is reproducible.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from util.errors import DimensionMismatch, InconsistentComplex, StructureError

logger = logging.getLogger(__name__)

Matrix = np.ndarray
Scalar = Union[int, Fraction]

RATIONALS = "rationals"
PRIME = "prime"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """
    The ground field: the rationals, or a prime field F_p.

    Args:
        kind (str): RATIONALS or PRIME.
        p (int): The prime modulus (prime fields only).
    """
    kind: str
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (RATIONALS, PRIME):
            raise StructureError(f"Unknown field kind {self.kind!r}")
        if self.kind == PRIME and not _is_prime(self.p):
            raise StructureError(f"Modulus {self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME, p)

    @property
    def is_prime(self) -> bool:
        return self.kind == PRIME

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    @property
    def label(self) -> str:
        return f"F{self.p}" if self.is_prime else "Q"

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime else Fraction(1)

    def coerce(self, value) -> Scalar:
        """
        Convert an int, Fraction or "p/q" string into a field element.

        Raises:
            StructureError: If the value cannot be read, or its denominator vanishes mod p.
        """
        try:
            q = value if isinstance(value, Fraction) else Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise StructureError(f"Cannot read scalar {value!r}: {e}")
        if not self.is_prime:
            return q
        if q.denominator % self.p == 0:
            raise StructureError(f"Scalar {value!r} has a denominator divisible by {self.p}")
        return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("Inverse of zero")
        if self.is_prime:
            return pow(int(a), -1, self.p)
        return Fraction(1) / a

    def normalize(self, array: Matrix) -> Matrix:
        """Reduce the entries of an object array into canonical form."""
        if self.is_prime and array.size:
            return array % self.p
        return array

    def format(self, a: Scalar) -> str:
        return str(a)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def zeros(field: FieldSpec, rows: int, cols: int) -> Matrix:
    return np.full((rows, cols), field.zero, dtype=object)


def identity(field: FieldSpec, n: int) -> Matrix:
    result = zeros(field, n, n)
    for i in range(n):
        result[i, i] = field.one
    return result


def vector(field: FieldSpec, values: Iterable) -> np.ndarray:
    """One-dimensional object array of field elements."""
    values = [field.coerce(v) for v in values]
    result = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        result[i] = v
    return result


def zero_vector(field: FieldSpec, n: int) -> np.ndarray:
    return np.full(n, field.zero, dtype=object)


def unit_vector(field: FieldSpec, n: int, i: int) -> np.ndarray:
    result = zero_vector(field, n)
    result[i] = field.one
    return result


def matrix(field: FieldSpec, rows: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
    """
    Build a matrix from nested rows, coercing every entry.

    Args:
        field (FieldSpec): The ground field.
        rows (Sequence[Sequence]): Row-major entries.
        cols (int, optional): Column count, required when there are no rows.

    Returns:
        Matrix: The object array.
    """
    rows = list(rows)
    if not rows:
        return zeros(field, 0, cols or 0)
    width = len(rows[0]) if cols is None else cols
    result = zeros(field, len(rows), width)
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != width:
            raise DimensionMismatch(f"Row {i} has {len(row)} entries, expected {width}")
        for j, entry in enumerate(row):
            result[i, j] = field.coerce(entry)
    return result


def column(field: FieldSpec, values: Iterable) -> Matrix:
    v = vector(field, values)
    return v.reshape(len(v), 1)


def as_column(v: np.ndarray) -> Matrix:
    return v.reshape(v.shape[0], 1) if v.ndim == 1 else v


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def matmul(field: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"Cannot multiply {A.shape} by {B.shape}")
    if 0 in A.shape or 0 in B.shape:
        return zeros(field, A.shape[0], B.shape[1])
    return field.normalize(np.dot(A, B))


def mat_vec(field: FieldSpec, A: Matrix, v: np.ndarray) -> np.ndarray:
    return matmul(field, A, as_column(v))[:, 0]


def add(field: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise DimensionMismatch(f"Cannot add {A.shape} and {B.shape}")
    return field.normalize(A + B)


def sub(field: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise DimensionMismatch(f"Cannot subtract {A.shape} and {B.shape}")
    return field.normalize(A - B)


def scale(field: FieldSpec, c: Scalar, A: Matrix) -> Matrix:
    if A.size == 0:
        return A.copy()
    return field.normalize(A * c)


def linear_combination(field: FieldSpec, coefficients: Sequence[Scalar], mats: Sequence[Matrix],
                       shape: Tuple[int, int]) -> Matrix:
    """Sum of c_i * A_i, skipping zero coefficients."""
    result = zeros(field, *shape)
    for c, A in zip(coefficients, mats):
        if c != 0:
            result = result + A * c
    return field.normalize(result)


def kron(field: FieldSpec, A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product, block (i, j) equal to A[i, j] * B."""
    rows, cols = A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]
    result = zeros(field, rows, cols)
    if result.size == 0:
        return result
    br, bc = B.shape
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if A[i, j] != 0:
                result[i * br:(i + 1) * br, j * bc:(j + 1) * bc] = B * A[i, j]
    return field.normalize(result)


def hstack(field: FieldSpec, mats: Sequence[Matrix], rows: int) -> Matrix:
    parts = [M for M in mats if M.shape[1]]
    for M in parts:
        if M.shape[0] != rows:
            raise DimensionMismatch(f"Cannot stack {M.shape} into {rows} rows")
    if not parts:
        return zeros(field, rows, 0)
    return np.hstack(parts)


def vstack(field: FieldSpec, mats: Sequence[Matrix], cols: int) -> Matrix:
    parts = [M for M in mats if M.shape[0]]
    for M in parts:
        if M.shape[1] != cols:
            raise DimensionMismatch(f"Cannot stack {M.shape} into {cols} columns")
    if not parts:
        return zeros(field, 0, cols)
    return np.vstack(parts)


def block_diagonal(field: FieldSpec, mats: Sequence[Matrix]) -> Matrix:
    rows = sum(M.shape[0] for M in mats)
    cols = sum(M.shape[1] for M in mats)
    result = zeros(field, rows, cols)
    r = c = 0
    for M in mats:
        result[r:r + M.shape[0], c:c + M.shape[1]] = M
        r += M.shape[0]
        c += M.shape[1]
    return result


def is_zero(A: np.ndarray) -> bool:
    return all(x == 0 for x in A.flat)


def equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def rref(field: FieldSpec, A: Matrix) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form.

    Returns:
        Tuple[Matrix, List[int]]: The reduced matrix and its pivot columns.
    """
    n_rows, n_cols = A.shape
    m = [list(row) for row in A]
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        inv = field.inv(m[piv_r][piv_c])
        m[piv_r] = [field.mul(x, inv) for x in m[piv_r]]
        pivot_row = m[piv_r]
        for r in range(n_rows):
            fr = m[r][piv_c]
            if r == piv_r or fr == 0:
                continue
            m[r] = [field.sub(x, field.mul(fr, y)) for x, y in zip(m[r], pivot_row)]
        pivots.append(piv_c)
        piv_r += 1
    result = zeros(field, n_rows, n_cols)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            result[i, j] = x
    return result, pivots


def rank(field: FieldSpec, A: Matrix) -> int:
    if A.size == 0:
        return 0
    return len(rref(field, A)[1])


def kernel_basis(field: FieldSpec, A: Matrix) -> Matrix:
    """
    Basis of the kernel of A, as columns.

    Returns:
        Matrix: cols(A) x (cols(A) - rank(A)) with independent columns.
    """
    n_cols = A.shape[1]
    R, pivots = rref(field, A)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    result = zeros(field, n_cols, len(free))
    for k, f in enumerate(free):
        result[f, k] = field.one
        for i, pc in enumerate(pivots):
            result[pc, k] = field.neg(R[i, f])
    return result


def solve_many(field: FieldSpec, A: Matrix, B: Matrix) -> Optional[Matrix]:
    """
    Solve A X = B for all columns of B at once.

    Returns:
        Matrix or None: A solution, or None when some column of B is outside im(A).

    Raises:
        DimensionMismatch: If rows(A) != rows(B).
    """
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch(f"Cannot solve {A.shape} against {B.shape}")
    n_cols = A.shape[1]
    if B.shape[1] == 0:
        return zeros(field, n_cols, 0)
    R, pivots = rref(field, np.hstack([A, B]) if A.shape[1] else B.copy())
    if any(pc >= n_cols for pc in pivots):
        return None
    X = zeros(field, n_cols, B.shape[1])
    for i, pc in enumerate(pivots):
        X[pc, :] = R[i, n_cols:]
    return X


def solve(field: FieldSpec, A: Matrix, b: np.ndarray) -> Optional[Matrix]:
    """Solve A x = b; returns a column vector, or None when b is not in im(A)."""
    return solve_many(field, A, as_column(b))


def inverse(field: FieldSpec, A: Matrix) -> Optional[Matrix]:
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"Cannot invert non-square {A.shape}")
    if rank(field, A) != A.shape[0]:
        return None
    return solve_many(field, A, identity(field, A.shape[0]))


def column_basis(field: FieldSpec, A: Matrix) -> Matrix:
    """The greedily independent columns of A (first-occurrence order)."""
    if A.shape[1] == 0:
        return A.copy()
    _, pivots = rref(field, A)
    return A[:, pivots]


def in_span(field: FieldSpec, A: Matrix, v: np.ndarray) -> bool:
    v = as_column(v)
    return rank(field, hstack(field, [A, v], A.shape[0])) == rank(field, A)


def same_span(field: FieldSpec, A: Matrix, B: Matrix) -> bool:
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch(f"Cannot compare spans in {A.shape[0]} and {B.shape[0]} rows")
    r = rank(field, hstack(field, [A, B], A.shape[0]))
    return rank(field, A) == r and rank(field, B) == r


def subquotient(field: FieldSpec, Z: Matrix, B: Matrix) -> Tuple[int, Matrix]:
    """
    Compute span(Z) / span(B).

    Args:
        Z (Matrix): Cycle basis columns.
        B (Matrix): Boundary columns, which must lie in span(Z).

    Returns:
        Tuple[int, Matrix]: The dimension and representatives, taken among the columns of Z.

    Raises:
        InconsistentComplex: If some column of B is outside span(Z).
    """
    if Z.shape[0] != B.shape[0]:
        raise DimensionMismatch(f"Cycles live in {Z.shape[0]} rows, boundaries in {B.shape[0]}")
    rows = Z.shape[0]
    rank_z = rank(field, Z)
    if B.shape[1] and rank(field, hstack(field, [Z, B], rows)) != rank_z:
        raise InconsistentComplex("Boundaries are not contained in cycles")
    stacked = hstack(field, [B, Z], rows)
    if stacked.shape[1] == 0:
        return 0, zeros(field, rows, 0)
    _, pivots = rref(field, stacked)
    offset = B.shape[1]
    reps = Z[:, [pc - offset for pc in pivots if pc >= offset]] if Z.shape[1] else zeros(field, rows, 0)
    return reps.shape[1], reps


def quotient_coordinates(field: FieldSpec, reps: Matrix, B: Matrix, vectors: Matrix) -> Matrix:
    """
    Coordinates of vectors in span(reps) + span(B), modulo span(B), on the reps basis.

    Raises:
        InconsistentComplex: If a vector leaves span(reps) + span(B).
    """
    rows = reps.shape[0]
    X = solve_many(field, hstack(field, [reps, B], rows), vectors)
    if X is None:
        raise InconsistentComplex("Vector is outside the cycle space")
    return X[:reps.shape[1], :]


def complement_projection(field: FieldSpec, B: Matrix, n: int) -> Tuple[Matrix, Matrix]:
    """
    Split K^n = C + span(B) with C spanned by standard vectors.

    Returns:
        Tuple[Matrix, Matrix]: (C, P) where P C = I and P B = 0.
    """
    basis = column_basis(field, B) if B.shape[1] else zeros(field, n, 0)
    stacked = hstack(field, [basis, identity(field, n)], n)
    _, pivots = rref(field, stacked)
    offset = basis.shape[1]
    C = identity(field, n)[:, [pc - offset for pc in pivots if pc >= offset]]
    full = hstack(field, [C, basis], n)
    inv = inverse(field, full)
    return C, inv[:C.shape[1], :]
