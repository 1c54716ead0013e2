"""
Finite K-linear categories, with an H-action or an H-coaction on hom spaces.

Hom spaces are keyed by (X, Y) for morphisms X -> Y. Composition tensors are keyed
by (X, Y, Z): compose[(X, Y, Z)][a, b, :] is the coefficient vector of f_a o g_b
for f_a in Hom(Y, Z) and g_b in Hom(X, Y). Zero hom spaces keep their keys with
empty bases.
"""

import functools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from util import exactlin, hrep
from util.errors import DimensionMismatch, StructureError
from util.exactlin import FieldSpec, Matrix
from util.hopf import HopfAlgebra, dual_hopf
from util.hrep import HComodule, HModule

logger = logging.getLogger(__name__)

Key = Tuple[str, str]
Triple = Tuple[str, str, str]


@dataclass(frozen=True, eq=False)
class LinCategory:
    field: FieldSpec
    objects: Tuple[str, ...]
    hom_basis: Dict[Key, Tuple[str, ...]]
    compose: Dict[Triple, np.ndarray]
    identity: Dict[str, np.ndarray]
    name: str = ""

    def __post_init__(self) -> None:
        for X in self.objects:
            for Y in self.objects:
                if (X, Y) not in self.hom_basis:
                    raise DimensionMismatch(f"Missing hom space {X} -> {Y}")
            if self.identity[X].shape != (self.hom_dim(X, X),):
                raise DimensionMismatch(f"Identity of {X} has the wrong length")
        for X, Y, Z in self.triples():
            expected = (self.hom_dim(Y, Z), self.hom_dim(X, Y), self.hom_dim(X, Z))
            tensor = self.compose.get((X, Y, Z))
            if tensor is None or tensor.shape != expected:
                got = None if tensor is None else tensor.shape
                raise DimensionMismatch(f"Composition {X}->{Y}->{Z} has shape {got}, expected {expected}")

    def hom_dim(self, X: str, Y: str) -> int:
        return len(self.hom_basis[(X, Y)])

    def triples(self) -> Iterator[Triple]:
        for X in self.objects:
            for Y in self.objects:
                for Z in self.objects:
                    yield X, Y, Z

    def keys(self) -> Iterator[Key]:
        for X in self.objects:
            for Y in self.objects:
                yield X, Y

    def composite(self, X: str, Y: str, Z: str, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """f o g for f in Hom(Y, Z) and g in Hom(X, Y), as coefficient vectors."""
        F = self.field
        result = exactlin.zero_vector(F, self.hom_dim(X, Z))
        tensor = self.compose[(X, Y, Z)]
        for a in np.nonzero(f != 0)[0]:
            for b in np.nonzero(g != 0)[0]:
                result = result + tensor[a, b, :] * F.mul(f[a], g[b])
        return F.normalize(result)

    @property
    def total_dim(self) -> int:
        return sum(self.hom_dim(X, Y) for X, Y in self.keys())


@dataclass(frozen=True, eq=False)
class HCategory:
    base: LinCategory
    hopf: HopfAlgebra
    action: Dict[Key, Tuple[Matrix, ...]]

    def __post_init__(self) -> None:
        for X, Y in self.base.keys():
            mats = self.action.get((X, Y))
            d = self.base.hom_dim(X, Y)
            if mats is None or len(mats) != self.hopf.dim or any(A.shape != (d, d) for A in mats):
                raise DimensionMismatch(f"H-action on Hom({X}, {Y}) must be {self.hopf.dim} matrices of size {d}")

    def hom_module(self, X: str, Y: str) -> HModule:
        return HModule(self.hopf, self.base.hom_dim(X, Y), self.action[(X, Y)])


@dataclass(frozen=True, eq=False)
class CoHCategory:
    base: LinCategory
    hopf: HopfAlgebra
    coaction: Dict[Key, Matrix]

    def __post_init__(self) -> None:
        for X, Y in self.base.keys():
            d = self.base.hom_dim(X, Y)
            rho = self.coaction.get((X, Y))
            if rho is None or rho.shape != (d * self.hopf.dim, d):
                raise DimensionMismatch(f"Coaction on Hom({X}, {Y}) must have shape {(d * self.hopf.dim, d)}")

    def hom_comodule(self, X: str, Y: str) -> HComodule:
        return HComodule(self.hopf, self.base.hom_dim(X, Y), self.coaction[(X, Y)])


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_category(C: LinCategory) -> List[str]:
    """Associativity and identity laws, checked on every composable basis triple."""
    F = C.field
    report = []
    for X, Y in C.keys():
        for b, label in enumerate(C.hom_basis[(X, Y)]):
            g = exactlin.unit_vector(F, C.hom_dim(X, Y), b)
            if not exactlin.equal(C.composite(X, Y, Y, C.identity[Y], g), g):
                report.append(f"identity law fails: id_{Y} o {label}")
            if not exactlin.equal(C.composite(X, X, Y, g, C.identity[X]), g):
                report.append(f"identity law fails: {label} o id_{X}")
    for W, X, Y, Z in ((W, X, Y, Z) for W in C.objects for X, Y, Z in C.triples()):
        for a in range(C.hom_dim(Y, Z)):
            for b in range(C.hom_dim(X, Y)):
                fg = C.compose[(X, Y, Z)][a, b, :]
                for c in range(C.hom_dim(W, X)):
                    h = exactlin.unit_vector(F, C.hom_dim(W, X), c)
                    gh = C.compose[(W, X, Y)][b, c, :]
                    f = exactlin.unit_vector(F, C.hom_dim(Y, Z), a)
                    if not exactlin.equal(C.composite(W, X, Z, fg, h), C.composite(W, Y, Z, f, gh)):
                        report.append(f"associativity fails on ({C.hom_basis[(Y, Z)][a]}, "
                                      f"{C.hom_basis[(X, Y)][b]}, {C.hom_basis[(W, X)][c]})")
    return report


def validate_h_structure(C) -> List[str]:
    """
    Check the H-category (resp. co-H-category) axioms on all basis triples.

    Returns:
        List[str]: Violations, empty when the structure is valid.
    """
    if isinstance(C, HCategory):
        return _validate_action(C)
    if isinstance(C, CoHCategory):
        return _validate_coaction(C)
    raise TypeError(f"Expected an HCategory or CoHCategory, got {type(C).__name__}")


def _validate_action(C: HCategory) -> List[str]:
    B, H, F = C.base, C.hopf, C.base.field
    report = []
    for X, Y in B.keys():
        report += [f"Hom({X}, {Y}): {msg}" for msg in hrep.validate_module(C.hom_module(X, Y))]
    for X in B.objects:
        idX = exactlin.as_column(B.identity[X])
        for i in range(H.dim):
            if not exactlin.equal(exactlin.matmul(F, C.action[(X, X)][i], idX),
                                  exactlin.scale(F, H.counit[i], idX)):
                report.append(f"{H.labels[i]} does not act on id_{X} by its counit")
    for X, Y, Z in B.triples():
        T = B.compose[(X, Y, Z)]
        for i in range(H.dim):
            for a in range(B.hom_dim(Y, Z)):
                for b in range(B.hom_dim(X, Y)):
                    left = exactlin.mat_vec(F, C.action[(X, Z)][i], T[a, b, :])
                    right = exactlin.zero_vector(F, B.hom_dim(X, Z))
                    for j, k, c in H.coproduct_terms(i):
                        hf = C.action[(Y, Z)][j][:, a]
                        hg = C.action[(X, Y)][k][:, b]
                        right = right + B.composite(X, Y, Z, hf, hg) * c
                    if not exactlin.equal(left, F.normalize(right)):
                        report.append(f"composition is not H-equivariant: {H.labels[i]} on "
                                      f"{B.hom_basis[(Y, Z)][a]} o {B.hom_basis[(X, Y)][b]}")
    return report


def _validate_coaction(D: CoHCategory) -> List[str]:
    B, H, F = D.base, D.hopf, D.base.field
    n = H.dim
    report = []
    for X, Y in B.keys():
        report += [f"Hom({X}, {Y}): {msg}" for msg in hrep.validate_comodule(D.hom_comodule(X, Y))]
    for X in B.objects:
        idX = B.identity[X]
        expected = np.multiply.outer(idX, H.unit).reshape(-1)
        got = exactlin.mat_vec(F, D.coaction[(X, X)], idX)
        if not exactlin.equal(got, F.normalize(expected)):
            report.append(f"coaction of id_{X} is not id_{X} (x) 1")
    for X, Y, Z in B.triples():
        T = B.compose[(X, Y, Z)]
        for a in range(B.hom_dim(Y, Z)):
            for b in range(B.hom_dim(X, Y)):
                left = exactlin.mat_vec(F, D.coaction[(X, Z)], T[a, b, :])
                right = _product_coaction(D, X, Y, Z, a, b)
                if not exactlin.equal(left, right):
                    report.append(f"composition is not H-coequivariant on "
                                  f"{B.hom_basis[(Y, Z)][a]} o {B.hom_basis[(X, Y)][b]}")
    return report


def _product_coaction(D: CoHCategory, X: str, Y: str, Z: str, a: int, b: int) -> np.ndarray:
    """sum f0 g0 (x) f1 g1 for basis f_a: Y -> Z and g_b: X -> Y, flattened (hom outer, H inner)."""
    B, H, F = D.base, D.hopf, D.base.field
    n = H.dim
    out = np.full((B.hom_dim(X, Z), n), F.zero, dtype=object)
    rf = D.coaction[(Y, Z)][:, a].reshape(B.hom_dim(Y, Z), n)
    rg = D.coaction[(X, Y)][:, b].reshape(B.hom_dim(X, Y), n)
    T = B.compose[(X, Y, Z)]
    for a2, i in zip(*np.nonzero(rf != 0)):
        for b2, j in zip(*np.nonzero(rg != 0)):
            c = F.mul(rf[a2, i], rg[b2, j])
            out = out + np.multiply.outer(T[a2, b2, :], H.mult[i, j, :]) * c
    return F.normalize(out).reshape(-1)


# ---------------------------------------------------------------------------
# Derived categories
# ---------------------------------------------------------------------------

def _restricted_category(C: LinCategory, bases: Dict[Key, Matrix], name: str) -> LinCategory:
    """Subcategory on hom subspaces spanned by the given columns; closure is verified."""
    F = C.field
    compose = {}
    for X, Y, Z in C.triples():
        BYZ, BXY, BXZ = bases[(Y, Z)], bases[(X, Y)], bases[(X, Z)]
        tensor = np.full((BYZ.shape[1], BXY.shape[1], BXZ.shape[1]), F.zero, dtype=object)
        for a in range(BYZ.shape[1]):
            for b in range(BXY.shape[1]):
                fg = C.composite(X, Y, Z, BYZ[:, a], BXY[:, b])
                coords = exactlin.solve(F, BXZ, fg)
                if coords is None:
                    raise StructureError(f"Composition {X}->{Y}->{Z} leaves the fixed hom spaces")
                tensor[a, b, :] = coords[:, 0]
        compose[(X, Y, Z)] = tensor
    identity = {}
    for X in C.objects:
        coords = exactlin.solve(F, bases[(X, X)], C.identity[X])
        if coords is None:
            raise StructureError(f"id_{X} is not fixed")
        identity[X] = coords[:, 0]
    hom_basis = {}
    for key, basis in bases.items():
        labels = C.hom_basis[key]
        hom_basis[key] = tuple(_combination_label(labels, basis[:, k]) for k in range(basis.shape[1]))
    return LinCategory(F, C.objects, hom_basis, compose, identity, name)


def _combination_label(labels: Sequence[str], v: np.ndarray) -> str:
    terms = []
    for label, c in zip(labels, v):
        if c == 0:
            continue
        terms.append(label if c == 1 else f"{c}*{label}")
    return "+".join(terms) or "0"


def fixed_subcategory(C) -> Tuple[LinCategory, Dict[Key, Matrix]]:
    """
    C^H for an H-category, D^coH for a co-H-category.

    Returns:
        Tuple[LinCategory, Dict[Key, Matrix]]: The subcategory, and for each hom
        space the basis of the fixed subspace as columns in the original basis.
    """
    if isinstance(C, HCategory):
        bases = {key: hrep.invariants(C.hom_module(*key)) for key in C.base.keys()}
        suffix = "^H"
    elif isinstance(C, CoHCategory):
        bases = {key: hrep.coinvariants(C.hom_comodule(*key)) for key in C.base.keys()}
        suffix = "^coH"
    else:
        raise TypeError(f"Expected an HCategory or CoHCategory, got {type(C).__name__}")
    return _restricted_category(C.base, bases, C.base.name + suffix), bases


@functools.lru_cache(maxsize=None)
def dualize_coh_category(D: CoHCategory) -> HCategory:
    """D as a left H*-category: h*(f) = sum f0 h*(f1)."""
    action = {}
    for key in D.base.keys():
        dual = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, D.hom_comodule(*key))
        action[key] = dual.action
    return HCategory(D.base, dual_hopf(D.hopf), action)


def codualize_h_category(C: HCategory) -> CoHCategory:
    """The inverse construction rho(f) = sum e_i*(f) (x) e_i, for C acted on by a dual Hopf algebra."""
    coaction = {}
    for key in C.base.keys():
        comod = hrep.comodule_dual_correspondence(hrep.TO_COMODULE, C.hom_module(*key))
        coaction[key] = comod.coaction
    return CoHCategory(C.base, dual_hopf(C.hopf), coaction)


@functools.lru_cache(maxsize=None)
def smash_product(C: HCategory) -> LinCategory:
    """
    C # H: hom spaces Hom(X, Y) (x) H on the basis f_a # e_i (index a*n + i), with
    (f # h)(g # h') = sum f(h1 g) # h2 h'.
    """
    B, H, F = C.base, C.hopf, C.base.field
    n = H.dim
    hom_basis = {key: tuple(f"{f}#{h}" for f in B.hom_basis[key] for h in H.labels) for key in B.keys()}
    compose = {}
    for X, Y, Z in B.triples():
        dYZ, dXY, dXZ = B.hom_dim(Y, Z), B.hom_dim(X, Y), B.hom_dim(X, Z)
        T = B.compose[(X, Y, Z)]
        tensor = np.full((dYZ * n, dXY * n, dXZ * n), F.zero, dtype=object)
        for i in range(n):
            for k, l, c in H.coproduct_terms(i):
                act = C.action[(X, Y)][k]
                for a in range(dYZ):
                    for b in range(dXY):
                        # f_a o (e_k g_b) as a vector in Hom(X, Z)
                        fg = exactlin.zero_vector(F, dXZ)
                        for c2 in np.nonzero(act[:, b] != 0)[0]:
                            fg = fg + T[a, c2, :] * act[c2, b]
                        if exactlin.is_zero(fg):
                            continue
                        for j in range(n):
                            block = np.multiply.outer(fg, H.mult[l, j, :]).reshape(-1) * c
                            tensor[a * n + i, b * n + j, :] = tensor[a * n + i, b * n + j, :] + block
        compose[(X, Y, Z)] = F.normalize(tensor)
    identity = {X: F.normalize(np.multiply.outer(B.identity[X], H.unit).reshape(-1)) for X in B.objects}
    return LinCategory(F, B.objects, hom_basis, compose, identity, f"{B.name}#{H.name}")


def smash_coaction(C: HCategory) -> CoHCategory:
    """
    The coaction f # h -> sum (f # h1) (x) h2 on C # H.

    This is an interpretation for experimentation; no downstream computation relies on it.
    """
    S, H, F = smash_product(C), C.hopf, C.base.field
    n = H.dim
    coaction = {}
    for key in S.keys():
        d = C.base.hom_dim(*key)
        rho = exactlin.zeros(F, d * n * n, d * n)
        for a in range(d):
            for i in range(n):
                for j, k, c in H.coproduct_terms(i):
                    rho[(a * n + j) * n + k, a * n + i] = F.add(rho[(a * n + j) * n + k, a * n + i], c)
        coaction[key] = rho
    return CoHCategory(S, H, coaction)


def opposite(C: LinCategory) -> LinCategory:
    """C^op: Hom^op(X, Y) = Hom(Y, X), f o^op g = g o f."""
    hom_basis = {(X, Y): C.hom_basis[(Y, X)] for X, Y in C.keys()}
    compose = {(X, Y, Z): np.transpose(C.compose[(Z, Y, X)], (1, 0, 2)).copy() for X, Y, Z in C.triples()}
    return LinCategory(C.field, C.objects, hom_basis, compose, dict(C.identity), f"{C.name}^op")


ALGEBRA_OBJECT = "*"


@functools.lru_cache(maxsize=None)
def algebra_category(H: HopfAlgebra) -> LinCategory:
    """The one-object category with End(*) = H and composition the product of H."""
    key = (ALGEBRA_OBJECT, ALGEBRA_OBJECT)
    return LinCategory(H.field, (ALGEBRA_OBJECT,), {key: H.labels},
                       {(ALGEBRA_OBJECT,) * 3: H.mult.copy()}, {ALGEBRA_OBJECT: H.unit.copy()}, H.name)


def build_category(field: FieldSpec, objects: Sequence[str], hom_basis: Dict[Key, Sequence[str]],
                   products: Dict[Tuple[str, str], Dict[str, object]], identities: Dict[str, str],
                   name: str = "") -> LinCategory:
    """
    Build a category from named composites.

    Args:
        products: maps (f, g) label pairs to {label: coefficient} for f o g; unlisted
            composable pairs compose to zero, identities compose automatically.
        identities: maps each object to the label of its identity morphism.
    """
    objects = tuple(objects)
    bases = {(X, Y): tuple(hom_basis.get((X, Y), ())) for X in objects for Y in objects}
    owner = {}
    for key, labels in bases.items():
        for label in labels:
            if label in owner:
                raise StructureError(f"Morphism label {label!r} is used twice")
            owner[label] = key
    compose = {}
    for X in objects:
        for Y in objects:
            for Z in objects:
                tensor = np.full((len(bases[(Y, Z)]), len(bases[(X, Y)]), len(bases[(X, Z)])),
                                 field.zero, dtype=object)
                for a, f in enumerate(bases[(Y, Z)]):
                    for b, g in enumerate(bases[(X, Y)]):
                        if f == identities.get(Y):
                            tensor[a, b, b] = field.one
                            continue
                        if g == identities.get(Y):
                            tensor[a, b, a] = field.one
                            continue
                        for label, c in products.get((f, g), {}).items():
                            if owner.get(label) != (X, Z):
                                raise StructureError(f"{f} o {g} cannot contain {label!r}")
                            tensor[a, b, bases[(X, Z)].index(label)] = field.coerce(c)
                compose[(X, Y, Z)] = tensor
    identity = {}
    for X in objects:
        label = identities.get(X)
        if label not in bases[(X, X)]:
            raise StructureError(f"Identity of {X} must be a basis element of End({X})")
        identity[X] = exactlin.unit_vector(field, len(bases[(X, X)]), bases[(X, X)].index(label))
    return LinCategory(field, objects, bases, compose, identity, name)
