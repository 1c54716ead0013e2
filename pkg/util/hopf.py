"""
Finite-dimensional Hopf algebras given by structure constants.

A HopfAlgebra stores, on an ordered basis e_0..e_{n-1}:
- mult[i, j, :]    coefficients of e_i e_j
- unit[:]          coefficients of 1
- comult[i, j, k]  coefficient of e_j (x) e_k in Delta(e_i)
- counit[i]        epsilon(e_i)
- antipode         S, column j holding S(e_j); antipode_inv likewise
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from util import exactlin
from util.errors import DimensionMismatch, StructureError
from util.exactlin import FieldSpec, Matrix

logger = logging.getLogger(__name__)

GROUP_ALGEBRA = "group_algebra"
DUAL_GROUP_ALGEBRA = "dual_group_algebra"
SWEEDLER = "sweedler"


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    field: FieldSpec
    labels: Tuple[str, ...]
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: Matrix
    antipode_inv: Matrix
    name: str = ""

    def __post_init__(self) -> None:
        n = len(self.labels)
        shapes = {
            "mult": (self.mult.shape, (n, n, n)),
            "unit": (self.unit.shape, (n,)),
            "comult": (self.comult.shape, (n, n, n)),
            "counit": (self.counit.shape, (n,)),
            "antipode": (self.antipode.shape, (n, n)),
            "antipode_inv": (self.antipode_inv.shape, (n, n)),
        }
        for key, (got, expected) in shapes.items():
            if got != expected:
                raise DimensionMismatch(f"{key} has shape {got}, expected {expected}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"{label!r} is not a basis label of {self.name or 'H'}")

    def basis_vector(self, i: int) -> np.ndarray:
        return exactlin.unit_vector(self.field, self.dim, i)

    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of two elements given as coefficient vectors."""
        F = self.field
        result = exactlin.zero_vector(F, self.dim)
        for i in np.nonzero(a != 0)[0]:
            for j in np.nonzero(b != 0)[0]:
                result = result + self.mult[i, j, :] * F.mul(a[i], b[j])
        return F.normalize(result)

    def coproduct_terms(self, i: int) -> Iterator[Tuple[int, int, object]]:
        """Sweedler terms (j, k, c) of Delta(e_i) = sum c e_j (x) e_k."""
        block = self.comult[i]
        for j in range(self.dim):
            for k in range(self.dim):
                if block[j, k] != 0:
                    yield j, k, block[j, k]

    def coproduct(self, a: np.ndarray) -> Matrix:
        """Delta(a) as an n x n coefficient matrix."""
        result = exactlin.zeros(self.field, self.dim, self.dim)
        for i in np.nonzero(a != 0)[0]:
            result = result + self.comult[i] * a[i]
        return self.field.normalize(result)

    def apply_antipode(self, a: np.ndarray) -> np.ndarray:
        return exactlin.mat_vec(self.field, self.antipode, a)

    def apply_antipode_inv(self, a: np.ndarray) -> np.ndarray:
        return exactlin.mat_vec(self.field, self.antipode_inv, a)

    def epsilon(self, a: np.ndarray) -> object:
        return self.field.normalize(np.array([sum(self.counit * a)], dtype=object))[0]


def antipode_inverse(H: HopfAlgebra) -> Matrix:
    """
    Inverse of the antipode matrix.

    Raises:
        StructureError: If S is singular ("antipode not bijective").
    """
    return _invert_antipode(H.field, H.antipode)


def _invert_antipode(field: FieldSpec, S: Matrix) -> Matrix:
    inv = exactlin.inverse(field, S)
    if inv is None:
        raise StructureError("antipode not bijective")
    return inv


def from_structure_constants(field: FieldSpec, labels: Sequence[str], mult, unit, comult, counit,
                             antipode, antipode_inv=None, name: str = "") -> HopfAlgebra:
    """
    Build a HopfAlgebra from nested lists of scalars (or arrays).

    The inverse antipode is computed when not supplied.
    """
    n = len(labels)
    mult = _tensor(field, mult, (n, n, n), "mult")
    comult = _tensor(field, comult, (n, n, n), "comult")
    unit = _tensor(field, unit, (n,), "unit")
    counit = _tensor(field, counit, (n,), "counit")
    antipode = _tensor(field, antipode, (n, n), "antipode")
    if antipode_inv is None:
        antipode_inv = _invert_antipode(field, antipode)
    else:
        antipode_inv = _tensor(field, antipode_inv, (n, n), "antipode_inv")
    return HopfAlgebra(field, tuple(labels), mult, unit, comult, counit, antipode, antipode_inv, name)


def _tensor(field: FieldSpec, data, shape: Tuple[int, ...], key: str) -> np.ndarray:
    raw = np.array(data, dtype=object)
    if raw.shape != shape:
        raise DimensionMismatch(f"{key} has shape {raw.shape}, expected {shape}")
    result = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        result[idx] = field.coerce(raw[idx])
    return result


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------

def check_hopf(H: HopfAlgebra) -> List[str]:
    """
    Verify the Hopf algebra axioms as exact identities on basis elements.

    Returns:
        List[str]: One message per violated axiom family, empty when H is a Hopf
        algebra with bijective antipode.
    """
    F, n, L = H.field, H.dim, H.labels
    report = []
    e = [H.basis_vector(i) for i in range(n)]
    products = [[H.mult[i, j, :] for j in range(n)] for i in range(n)]
    D = [H.comult[i] for i in range(n)]

    def first(pred, ranges):
        for idx in np.ndindex(*ranges):
            if not pred(*idx):
                return idx
        return None

    bad = first(lambda i, j, k: exactlin.equal(H.product(products[i][j], e[k]),
                                               H.product(e[i], products[j][k])), (n, n, n))
    if bad:
        report.append("associativity fails at " + _names(L, bad))

    bad = first(lambda i: exactlin.equal(H.product(H.unit, e[i]), e[i])
                and exactlin.equal(H.product(e[i], H.unit), e[i]), (n,))
    if bad:
        report.append("unit law fails at " + _names(L, bad))

    def coassociative(i: int) -> bool:
        left = np.full((n, n, n), F.zero, dtype=object)
        right = np.full((n, n, n), F.zero, dtype=object)
        for j, k, c in H.coproduct_terms(i):
            left[:, :, k] = left[:, :, k] + D[j] * c
            right[j, :, :] = right[j, :, :] + D[k] * c
        return exactlin.equal(F.normalize(left), F.normalize(right))

    bad = first(coassociative, (n,))
    if bad:
        report.append("coassociativity fails at " + _names(L, bad))

    def counital(i: int) -> bool:
        left = F.normalize(np.dot(H.counit, D[i])) if n else D[i]
        right = F.normalize(np.dot(D[i], H.counit)) if n else D[i]
        return exactlin.equal(left, e[i]) and exactlin.equal(right, e[i])

    bad = first(counital, (n,))
    if bad:
        report.append("counit law fails at " + _names(L, bad))

    def delta_multiplicative(i: int, j: int) -> bool:
        left = H.coproduct(products[i][j])
        right = exactlin.zeros(F, n, n)
        for p, q, c in H.coproduct_terms(i):
            for r, s, d in H.coproduct_terms(j):
                right = right + np.multiply.outer(H.mult[p, r, :], H.mult[q, s, :]) * F.mul(c, d)
        return exactlin.equal(left, F.normalize(right))

    bad = first(delta_multiplicative, (n, n))
    unit_square = np.multiply.outer(H.unit, H.unit)
    if bad or not exactlin.equal(H.coproduct(H.unit), F.normalize(unit_square)):
        report.append("comultiplication is not an algebra map" + (" at " + _names(L, bad) if bad else " on 1"))

    bad = first(lambda i, j: H.epsilon(products[i][j]) == F.mul(H.counit[i], H.counit[j]), (n, n))
    if bad or H.epsilon(H.unit) != F.one:
        report.append("counit is not an algebra map" + (" at " + _names(L, bad) if bad else " on 1"))

    def antipodal(i: int) -> bool:
        left = exactlin.zero_vector(F, n)
        right = exactlin.zero_vector(F, n)
        for j, k, c in H.coproduct_terms(i):
            left = left + H.product(H.antipode[:, j], e[k]) * c
            right = right + H.product(e[j], H.antipode[:, k]) * c
        target = F.normalize(H.unit * H.counit[i])
        return exactlin.equal(F.normalize(left), target) and exactlin.equal(F.normalize(right), target)

    bad = first(antipodal, (n,))
    if bad:
        report.append("antipode identity fails at " + _names(L, bad))

    I = exactlin.identity(F, n)
    if not (exactlin.equal(exactlin.matmul(F, H.antipode, H.antipode_inv), I)
            and exactlin.equal(exactlin.matmul(F, H.antipode_inv, H.antipode), I)):
        report.append("antipode_inv is not a two-sided inverse of the antipode")

    if not exactlin.equal(F.normalize(np.dot(H.counit, H.antipode)) if n else H.counit, H.counit):
        report.append("counit does not absorb the antipode (epsilon S != epsilon)")
    if not exactlin.equal(H.apply_antipode(H.unit), H.unit):
        report.append("antipode does not fix the unit")

    if report:
        logger.debug(f"{H.name or 'Hopf algebra'} fails {len(report)} axiom families")
    return report


def _names(labels: Sequence[str], idx: Tuple[int, ...]) -> str:
    return "(" + ", ".join(labels[i] for i in idx) + ")"


# ---------------------------------------------------------------------------
# Named algebras
# ---------------------------------------------------------------------------

def _validate_group_table(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise StructureError("Group table must be a nonempty square table")
    if any(not (0 <= x < n) for row in table for x in row):
        raise StructureError("Group table entries must index group elements")
    identities = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not identities:
        raise StructureError("Group table has no identity element")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise StructureError(f"Group table is not associative at ({a}, {b}, {c})")
    e = identities[0]
    for g in range(n):
        if not any(table[g][h] == e for h in range(n)):
            raise StructureError(f"Element {g} has no inverse")
    return e


def group_algebra(field: FieldSpec, table: Sequence[Sequence[int]], labels: Sequence[str] = None) -> HopfAlgebra:
    """
    K[G] with Delta(g) = g (x) g, epsilon(g) = 1 and S(g) = g^-1.

    Args:
        table (Sequence[Sequence[int]]): table[a][b] is the index of ab.
        labels (Sequence[str], optional): Element names, defaulting to g0, g1, ...
    """
    e = _validate_group_table(table)
    n = len(table)
    labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))
    if len(labels) != n:
        raise DimensionMismatch(f"{len(labels)} labels for a group of order {n}")
    mult = np.full((n, n, n), field.zero, dtype=object)
    comult = np.full((n, n, n), field.zero, dtype=object)
    antipode = exactlin.zeros(field, n, n)
    for a in range(n):
        comult[a, a, a] = field.one
        for b in range(n):
            mult[a, b, table[a][b]] = field.one
            if table[a][b] == e:
                antipode[b, a] = field.one
    unit = exactlin.unit_vector(field, n, e)
    counit = np.full(n, field.one, dtype=object)
    return HopfAlgebra(field, labels, mult, unit, comult, counit, antipode, antipode.T.copy(),
                       f"{field.label}[G{n}]")


def dual_group_algebra(field: FieldSpec, table: Sequence[Sequence[int]], labels: Sequence[str] = None) -> HopfAlgebra:
    """K^G, the dual of the group algebra, on the basis of point idempotents."""
    return dual_hopf(group_algebra(field, table, labels))


def sweedler(field: FieldSpec) -> HopfAlgebra:
    """
    Sweedler's four-dimensional Hopf algebra on {1, g, x, gx}.

    g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x, S(x) = -gx.
    """
    if field.characteristic == 2:
        raise StructureError("Sweedler's algebra needs characteristic other than 2")
    one, mone = field.one, field.neg(field.one)
    n = 4
    mult = np.full((n, n, n), field.zero, dtype=object)
    # (i, j) -> (k, c): e_i e_j = c e_k
    table = {
        (0, 0): (0, one), (0, 1): (1, one), (0, 2): (2, one), (0, 3): (3, one),
        (1, 0): (1, one), (1, 1): (0, one), (1, 2): (3, one), (1, 3): (2, one),
        (2, 0): (2, one), (2, 1): (3, mone),
        (3, 0): (3, one), (3, 1): (2, mone),
    }
    for (i, j), (k, c) in table.items():
        mult[i, j, k] = c
    comult = np.full((n, n, n), field.zero, dtype=object)
    comult[0, 0, 0] = one
    comult[1, 1, 1] = one
    comult[2, 2, 0] = one
    comult[2, 1, 2] = one
    comult[3, 3, 1] = one
    comult[3, 0, 3] = one
    unit = exactlin.unit_vector(field, n, 0)
    counit = exactlin.vector(field, [1, 1, 0, 0])
    antipode = exactlin.matrix(field, [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ])
    return HopfAlgebra(field, ("1", "g", "x", "gx"), mult, unit, comult, counit,
                       antipode, _invert_antipode(field, antipode), f"Sweedler/{field.label}")


def build_named_hopf(kind: str, field: FieldSpec, table: Sequence[Sequence[int]] = None,
                     labels: Sequence[str] = None) -> HopfAlgebra:
    """
    Construct one of the named Hopf algebras.

    Raises:
        StructureError: For an unknown kind or an invalid group table.
    """
    if kind == GROUP_ALGEBRA:
        return group_algebra(field, table, labels)
    if kind == DUAL_GROUP_ALGEBRA:
        return dual_group_algebra(field, table, labels)
    if kind == SWEEDLER:
        return sweedler(field)
    raise StructureError(f"Unknown Hopf algebra {kind!r}")


_DUALS: Dict[HopfAlgebra, HopfAlgebra] = {}


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """
    H* on the dual basis e_i*, shared per algebra; the dual of H* is H itself.

    Products are dual to Delta, the coproduct is dual to the product, the unit is
    epsilon, the counit is evaluation at 1 and the antipode is the transpose of S.
    """
    dual = _DUALS.get(H)
    if dual is not None:
        return dual
    mult = np.transpose(H.comult, (1, 2, 0)).copy()
    comult = np.transpose(H.mult, (2, 0, 1)).copy()
    labels = tuple(label[:-1] if label.endswith("*") else label + "*" for label in H.labels)
    name = H.name[:-1] if H.name.endswith("*") else f"{H.name}*"
    dual = HopfAlgebra(H.field, labels, mult, H.counit.copy(), comult, H.unit.copy(),
                       H.antipode.T.copy(), H.antipode_inv.T.copy(), name)
    _DUALS[H] = dual
    _DUALS[dual] = H
    return dual
