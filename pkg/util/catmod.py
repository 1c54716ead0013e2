"""
Modules over a finite K-linear category.

A right module is a contravariant functor: for f: X -> Y the matrix M(f) maps
M(Y) to M(X). A left module is covariant: M(f) maps M(X) to M(Y). Action matrices
are stored per hom space key (X, Y), one per basis morphism.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from util import exactlin
from util.errors import DimensionMismatch, StructureError
from util.exactlin import Matrix
from util.hcat import ALGEBRA_OBJECT, Key, LinCategory, algebra_category
from util.hopf import HopfAlgebra
from util.hrep import HModule

logger = logging.getLogger(__name__)

RIGHT = "right"
LEFT = "left"


@dataclass(frozen=True, eq=False)
class CatModule:
    category: LinCategory
    side: str
    carrier: Dict[str, int]
    action: Dict[Key, Tuple[Matrix, ...]]
    name: str = ""

    def __post_init__(self) -> None:
        if self.side not in (RIGHT, LEFT):
            raise StructureError(f"Unknown module side {self.side!r}")
        C = self.category
        for X in C.objects:
            if self.carrier.get(X, -1) < 0:
                raise DimensionMismatch(f"Missing carrier dimension at {X}")
        for key in C.keys():
            mats = self.action.get(key)
            dom, cod = self.ends(*key)
            expected = (self.carrier[cod], self.carrier[dom])
            if mats is None or len(mats) != C.hom_dim(*key):
                raise DimensionMismatch(f"Hom{key} needs {C.hom_dim(*key)} action matrices")
            for A in mats:
                if A.shape != expected:
                    raise DimensionMismatch(f"Action of a morphism in Hom{key} has shape {A.shape}, expected {expected}")

    def ends(self, X: str, Y: str) -> Tuple[str, str]:
        """(domain, codomain) of the linear maps M(f) for f: X -> Y."""
        return (Y, X) if self.side == RIGHT else (X, Y)

    def action_matrix(self, X: str, Y: str, f: np.ndarray) -> Matrix:
        dom, cod = self.ends(X, Y)
        return exactlin.linear_combination(self.category.field, f, self.action[(X, Y)],
                                           (self.carrier[cod], self.carrier[dom]))

    @property
    def field(self):
        return self.category.field

    @property
    def total_dim(self) -> int:
        return sum(self.carrier.values())

    def offsets(self) -> Dict[str, int]:
        result, offset = {}, 0
        for X in self.category.objects:
            result[X] = offset
            offset += self.carrier[X]
        return result


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: CatModule
    target: CatModule
    component: Dict[str, Matrix]

    def __post_init__(self) -> None:
        for X in self.source.category.objects:
            expected = (self.target.carrier[X], self.source.carrier[X])
            if self.component[X].shape != expected:
                raise DimensionMismatch(f"Component at {X} has shape {self.component[X].shape}, expected {expected}")

    def flatten(self) -> Matrix:
        parts = [self.component[X].reshape(-1, 1) for X in self.source.category.objects]
        return exactlin.vstack(self.source.field, parts, 1)


def _check_compatible(M: CatModule, N: CatModule) -> None:
    if M.category is not N.category or M.side != N.side:
        raise StructureError("Modules live over different categories or sides")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_module(M: CatModule) -> List[str]:
    """Identity and composition laws, evaluated against the composition tensor."""
    C, F = M.category, M.field
    report = []
    for X in C.objects:
        if not exactlin.equal(M.action_matrix(X, X, C.identity[X]), exactlin.identity(F, M.carrier[X])):
            report.append(f"id_{X} does not act as the identity")
    for X, Y, Z in C.triples():
        T = C.compose[(X, Y, Z)]
        for a in range(C.hom_dim(Y, Z)):
            Mf = M.action[(Y, Z)][a]
            for b in range(C.hom_dim(X, Y)):
                Mg = M.action[(X, Y)][b]
                expected = exactlin.matmul(F, Mg, Mf) if M.side == RIGHT else exactlin.matmul(F, Mf, Mg)
                if not exactlin.equal(M.action_matrix(X, Z, T[a, b, :]), expected):
                    report.append(f"composition law fails on {C.hom_basis[(Y, Z)][a]} o {C.hom_basis[(X, Y)][b]}")
    return report


def validate_morphism(eta: ModuleMorphism) -> List[str]:
    M, N = eta.source, eta.target
    F = M.field
    report = []
    for key in M.category.keys():
        dom, cod = M.ends(*key)
        for a, (A, B) in enumerate(zip(M.action[key], N.action[key])):
            left = exactlin.matmul(F, eta.component[cod], A)
            right = exactlin.matmul(F, B, eta.component[dom])
            if not exactlin.equal(left, right):
                report.append(f"naturality fails on {M.category.hom_basis[key][a]}")
    return report


# ---------------------------------------------------------------------------
# Basic modules and morphisms
# ---------------------------------------------------------------------------

def representable(C: LinCategory, X: str, side: str) -> CatModule:
    """
    h_X = Hom(-, X) (right) or _Xh = Hom(X, -) (left), acting by composition.
    """
    if X not in C.objects:
        raise StructureError(f"{X!r} is not an object of {C.name or 'the category'}")
    if side == RIGHT:
        carrier = {Y: C.hom_dim(Y, X) for Y in C.objects}
        action = {(P, Q): tuple(C.compose[(P, Q, X)][:, b, :].T.copy() for b in range(C.hom_dim(P, Q)))
                  for P, Q in C.keys()}
        name = f"h_{X}"
    else:
        carrier = {Y: C.hom_dim(X, Y) for Y in C.objects}
        action = {(P, Q): tuple(C.compose[(X, P, Q)][b, :, :].T.copy() for b in range(C.hom_dim(P, Q)))
                  for P, Q in C.keys()}
        name = f"_{X}h"
    return CatModule(C, side, carrier, action, name)


def zero_module(C: LinCategory, side: str) -> CatModule:
    F = C.field
    return CatModule(C, side, {X: 0 for X in C.objects},
                     {key: tuple(exactlin.zeros(F, 0, 0) for _ in range(C.hom_dim(*key))) for key in C.keys()})


def identity_morphism(M: CatModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, {X: exactlin.identity(M.field, M.carrier[X]) for X in M.category.objects})


def zero_morphism(M: CatModule, N: CatModule) -> ModuleMorphism:
    return ModuleMorphism(M, N, {X: exactlin.zeros(M.field, N.carrier[X], M.carrier[X]) for X in M.category.objects})


def compose_morphisms(second: ModuleMorphism, first: ModuleMorphism) -> ModuleMorphism:
    if first.target.carrier != second.source.carrier:
        raise DimensionMismatch("Morphisms are not composable")
    F = first.source.field
    return ModuleMorphism(first.source, second.target,
                          {X: exactlin.matmul(F, second.component[X], first.component[X])
                           for X in first.source.category.objects})


def direct_sum(modules: Sequence[CatModule], C: LinCategory, side: str) -> CatModule:
    F = C.field
    carrier = {X: sum(M.carrier[X] for M in modules) for X in C.objects}
    action = {key: tuple(exactlin.block_diagonal(F, [M.action[key][a] for M in modules])
                         for a in range(C.hom_dim(*key))) for key in C.keys()}
    return CatModule(C, side, carrier, action, "+".join(M.name for M in modules if M.name))


def dual_module(M: CatModule) -> CatModule:
    """Pointwise vector-space dual; right modules become left modules and back."""
    side = LEFT if M.side == RIGHT else RIGHT
    action = {key: tuple(A.T.copy() for A in mats) for key, mats in M.action.items()}
    return CatModule(M.category, side, dict(M.carrier), action, f"D({M.name})" if M.name else "")


def dual_morphism(eta: ModuleMorphism, source: CatModule = None, target: CatModule = None) -> ModuleMorphism:
    """D(eta): D(target) -> D(source)."""
    source = source or dual_module(eta.target)
    target = target or dual_module(eta.source)
    return ModuleMorphism(source, target, {X: A.T.copy() for X, A in eta.component.items()})


def is_surjective(eta: ModuleMorphism) -> bool:
    F = eta.source.field
    return all(exactlin.rank(F, eta.component[X]) == eta.target.carrier[X] for X in eta.source.category.objects)


def is_injective(eta: ModuleMorphism) -> bool:
    F = eta.source.field
    return all(exactlin.rank(F, eta.component[X]) == eta.source.carrier[X] for X in eta.source.category.objects)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomSpace:
    """
    A solved Hom space: the basis morphisms are the columns of `matrix`, each the
    concatenation of the row-major components over the objects in order.
    """
    source: CatModule
    target: CatModule
    matrix: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def basis(self) -> List[ModuleMorphism]:
        return [self.morphism(self.matrix[:, [k]], flat=True) for k in range(self.dim)]

    def morphism(self, coords_or_flat: Matrix, flat: bool = False) -> ModuleMorphism:
        F = self.source.field
        vec = coords_or_flat if flat else exactlin.matmul(F, self.matrix, exactlin.as_column(coords_or_flat))
        vec = exactlin.as_column(vec)
        components, offset = {}, 0
        for X in self.source.category.objects:
            rows, cols = self.target.carrier[X], self.source.carrier[X]
            components[X] = vec[offset:offset + rows * cols, 0].reshape(rows, cols)
            offset += rows * cols
        return ModuleMorphism(self.source, self.target, components)

    def coordinates_many(self, morphisms: Sequence[ModuleMorphism]) -> Matrix:
        """
        Coordinates of several morphisms on the basis, as columns.

        Raises:
            StructureError: If a morphism is not in this Hom space.
        """
        F = self.source.field
        stacked = exactlin.hstack(F, [eta.flatten() for eta in morphisms], self.matrix.shape[0])
        X = exactlin.solve_many(F, self.matrix, stacked)
        if X is None:
            raise StructureError("Morphism does not lie in the Hom space")
        return X

    def coordinates(self, eta: ModuleMorphism) -> Matrix:
        return self.coordinates_many([eta])


def _unknown_offsets(M: CatModule, N: CatModule) -> Tuple[Dict[str, int], int]:
    offsets, total = {}, 0
    for X in M.category.objects:
        offsets[X] = total
        total += N.carrier[X] * M.carrier[X]
    return offsets, total


def intertwiner_rows(M: CatModule, N: CatModule, offsets: Dict[str, int], total: int,
                     dom: str, cod: str, A: Matrix, B: Matrix) -> Matrix:
    """Rows of the linear condition eta(cod) A = B eta(dom) on the flattened unknowns."""
    F = M.field
    n_rows = N.carrier[cod] * M.carrier[dom]
    rows = exactlin.zeros(F, n_rows, total)
    if n_rows == 0:
        return rows
    left = exactlin.kron(F, exactlin.identity(F, N.carrier[cod]), A.T)
    right = exactlin.kron(F, B, exactlin.identity(F, M.carrier[dom]))
    oc, od = offsets[cod], offsets[dom]
    rows[:, oc:oc + left.shape[1]] = rows[:, oc:oc + left.shape[1]] + left
    rows[:, od:od + right.shape[1]] = rows[:, od:od + right.shape[1]] - right
    return F.normalize(rows)


def module_hom_basis(M: CatModule, N: CatModule,
                     extra: Sequence[Tuple[str, Matrix, Matrix]] = ()) -> HomSpace:
    """
    Solve the naturality system for Hom(M, N).

    Args:
        extra: additional per-object conditions (X, A, B) meaning eta(X) A = B eta(X),
            used for H-linearity and colinearity.

    Returns:
        HomSpace: The exact solution space.
    """
    _check_compatible(M, N)
    F = M.field
    offsets, total = _unknown_offsets(M, N)
    blocks = []
    for key in M.category.keys():
        dom, cod = M.ends(*key)
        for A, B in zip(M.action[key], N.action[key]):
            blocks.append(intertwiner_rows(M, N, offsets, total, dom, cod, A, B))
    for X, A, B in extra:
        blocks.append(intertwiner_rows(M, N, offsets, total, X, X, A, B))
    system = exactlin.vstack(F, blocks, total)
    basis = exactlin.kernel_basis(F, system)
    logger.debug(f"Hom({M.name}, {N.name}): {total} unknowns, dim {basis.shape[1]}")
    return HomSpace(M, N, basis)


# ---------------------------------------------------------------------------
# Kernels, cokernels, submodules
# ---------------------------------------------------------------------------

def restrict_module(M: CatModule, bases: Dict[str, Matrix], name: str = "") -> CatModule:
    """
    The submodule spanned pointwise by the columns of `bases`, on those bases.

    Raises:
        StructureError: If the subspaces are not stable under the action.
    """
    F = M.field
    action = {}
    for key, mats in M.action.items():
        dom, cod = M.ends(*key)
        restricted = []
        for A in mats:
            coords = exactlin.solve_many(F, bases[cod], exactlin.matmul(F, A, bases[dom]))
            if coords is None:
                raise StructureError(f"Subspaces are not stable under Hom{key}")
            restricted.append(coords)
        action[key] = tuple(restricted)
    return CatModule(M.category, M.side, {X: B.shape[1] for X, B in bases.items()}, action, name)


def kernel(eta: ModuleMorphism) -> Tuple[CatModule, ModuleMorphism]:
    M = eta.source
    bases = {X: exactlin.kernel_basis(M.field, eta.component[X]) for X in M.category.objects}
    K = restrict_module(M, bases, f"ker({M.name})" if M.name else "ker")
    return K, ModuleMorphism(K, M, bases)


def cokernel(eta: ModuleMorphism) -> Tuple[CatModule, ModuleMorphism]:
    N, F = eta.target, eta.target.field
    splits = {X: exactlin.complement_projection(F, eta.component[X], N.carrier[X]) for X in N.category.objects}
    action = {}
    for key, mats in N.action.items():
        dom, cod = N.ends(*key)
        action[key] = tuple(exactlin.matmul(F, splits[cod][1], exactlin.matmul(F, B, splits[dom][0])) for B in mats)
    Q = CatModule(N.category, N.side, {X: s[0].shape[1] for X, s in splits.items()}, action, "coker")
    return Q, ModuleMorphism(N, Q, {X: s[1] for X, s in splits.items()})


class KernelCokernel(NamedTuple):
    kernel: CatModule
    inclusion: ModuleMorphism
    cokernel: CatModule
    projection: ModuleMorphism


def morphism_kernel_cokernel(eta: ModuleMorphism) -> KernelCokernel:
    """
    Pointwise kernel and cokernel with induced actions; both are re-validated.

    Raises:
        StructureError: If eta is not a morphism, or an induced module fails its laws.
    """
    problems = validate_morphism(eta)
    if problems:
        raise StructureError("; ".join(problems))
    K, inc = kernel(eta)
    Q, proj = cokernel(eta)
    problems = validate_module(K) + validate_module(Q)
    if problems:
        raise StructureError("; ".join(problems))
    return KernelCokernel(K, inc, Q, proj)


def generated_submodule(M: CatModule, elements: Sequence[Tuple[str, np.ndarray]]) -> Dict[str, Matrix]:
    """Pointwise bases of the submodule generated by the given elements."""
    F = M.field
    spans = {Y: [] for Y in M.category.objects}
    for X, m in elements:
        col = exactlin.as_column(m)
        for key, mats in M.action.items():
            dom, cod = M.ends(*key)
            if dom != X:
                continue
            for A in mats:
                spans[cod].append(exactlin.matmul(F, A, col))
    return {Y: exactlin.column_basis(F, exactlin.hstack(F, cols, M.carrier[Y])) for Y, cols in spans.items()}


def _contains(F, bases: Dict[str, Matrix], X: str, m: np.ndarray) -> bool:
    return exactlin.in_span(F, bases[X], m)


def generators(M: CatModule) -> Tuple[List[Tuple[str, np.ndarray]], ModuleMorphism]:
    """
    A generating family and the epimorphism from the sum of representables.

    Basis vectors generating larger submodules are tried first; a final pass drops
    any generator lying in the submodule generated by the others.

    Returns:
        Tuple[List[Tuple[str, np.ndarray]], ModuleMorphism]: The generators and the
        certifying map from the direct sum of h_{X_i} (or _{X_i}h) onto M.
    """
    C, F = M.category, M.field
    candidates = []
    for i, X in enumerate(C.objects):
        for b in range(M.carrier[X]):
            e = exactlin.unit_vector(F, M.carrier[X], b)
            size = sum(B.shape[1] for B in generated_submodule(M, [(X, e)]).values())
            candidates.append((-size, i, b, X, e))
    candidates.sort(key=lambda c: c[:3])
    chosen = []
    span = {Y: exactlin.zeros(F, M.carrier[Y], 0) for Y in C.objects}
    for _, _, _, X, e in candidates:
        if _contains(F, span, X, e):
            continue
        chosen.append((X, e))
        span = generated_submodule(M, chosen)
    pruned = list(chosen)
    for item in chosen:
        others = [g for g in pruned if g is not item]
        if _contains(F, generated_submodule(M, others), item[0], item[1]):
            pruned = others
    epi = generator_map(M, pruned)
    if not is_surjective(epi):
        raise StructureError("Generating family does not generate")
    return pruned, epi


def generator_map(M: CatModule, elements: Sequence[Tuple[str, np.ndarray]]) -> ModuleMorphism:
    """The map from the sum of representables sending id_{X_i} to m_i."""
    C, F = M.category, M.field
    reps = [representable(C, X, M.side) for X, _ in elements]
    P = direct_sum(reps, C, M.side) if reps else zero_module(C, M.side)
    components = {}
    for Y in C.objects:
        cols = []
        for X, m in elements:
            key = (Y, X) if M.side == RIGHT else (X, Y)
            for A in M.action[key]:
                cols.append(exactlin.matmul(F, A, exactlin.as_column(m)))
        components[Y] = exactlin.hstack(F, cols, M.carrier[Y])
    return ModuleMorphism(P, M, components)


# ---------------------------------------------------------------------------
# Modules over an algebra, seen as one-object categories
# ---------------------------------------------------------------------------

def algebra_module(V: HModule) -> CatModule:
    """A left H-module as a left module over algebra_category(H)."""
    C = algebra_category(V.hopf)
    return CatModule(C, LEFT, {ALGEBRA_OBJECT: V.dim}, {(ALGEBRA_OBJECT, ALGEBRA_OBJECT): tuple(V.action)})


def as_hmodule(M: CatModule, hopf: HopfAlgebra) -> HModule:
    if M.side != LEFT or M.category.objects != (ALGEBRA_OBJECT,):
        raise StructureError("Not a left module over a one-object algebra category")
    return HModule(hopf, M.carrier[ALGEBRA_OBJECT], M.action[(ALGEBRA_OBJECT, ALGEBRA_OBJECT)])
