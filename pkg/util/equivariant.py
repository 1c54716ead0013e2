"""
H-equivariant modules over an H-category.

An EquivModule is a right C-module M together with an H-module structure on each
M(X) satisfying h(M(f)(m)) = sum M(h2 f)(h1 m). These are the same thing as right
modules over the smash product C # H, and the functions here move between the two
pictures, put the conjugation H-action on Hom spaces, and check the adjunctions
relating tensor products, Hom and extension of scalars.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from util import catmod, exactlin, hrep
from util.catmod import RIGHT, CatModule, HomSpace, ModuleMorphism
from util.errors import StructureError
from util.exactlin import FieldSpec, Matrix
from util.hcat import HCategory, smash_product
from util.hrep import HModule

logger = logging.getLogger(__name__)

TO_SMASH = "to_smash"
FROM_SMASH = "from_smash"


@dataclass(frozen=True, eq=False)
class EquivModule:
    hcat: HCategory
    base: CatModule
    hmod: Dict[str, HModule]

    def __post_init__(self) -> None:
        if self.base.side != RIGHT or self.base.category is not self.hcat.base:
            raise StructureError("An equivariant module is a right module over the H-category's base")
        for X in self.base.category.objects:
            if self.hmod[X].dim != self.base.carrier[X]:
                raise StructureError(f"H-structure at {X} has dimension {self.hmod[X].dim}, "
                                     f"carrier has {self.base.carrier[X]}")

    @property
    def name(self) -> str:
        return self.base.name


def validate_equivariant(M: EquivModule) -> List[str]:
    """
    Check h(M(f)(m)) = sum M(h2 f)(h1 m) on every basis h and f.

    Returns:
        List[str]: Violations of the compatibility, empty when it holds.
    """
    C, H, F = M.hcat.base, M.hcat.hopf, M.hcat.base.field
    report = []
    for X, Y in C.keys():
        for a in range(C.hom_dim(X, Y)):
            Mf = M.base.action[(X, Y)][a]
            for i in range(H.dim):
                left = exactlin.matmul(F, M.hmod[X].action[i], Mf)
                right = exactlin.zeros(F, *Mf.shape)
                for j, k, c in H.coproduct_terms(i):
                    hf = M.hcat.action[(X, Y)][k][:, a]
                    moved = M.base.action_matrix(X, Y, hf)
                    right = right + exactlin.matmul(F, moved, M.hmod[Y].action[j]) * c
                if not exactlin.equal(left, F.normalize(right)):
                    report.append(f"{H.labels[i]} is not compatible with {C.hom_basis[(X, Y)][a]}")
    return report


def equivariant_representable(C: HCategory, X: str) -> EquivModule:
    """h_X with H acting on each Hom(Y, X) through the H-category structure."""
    base = catmod.representable(C.base, X, RIGHT)
    return EquivModule(C, base, {Y: C.hom_module(Y, X) for Y in C.base.objects})


def trivial_equivariant(C: HCategory, base: CatModule) -> EquivModule:
    """A right module with H acting through the counit on every M(X)."""
    return EquivModule(C, base, {X: hrep.trivial_module(C.hopf, base.carrier[X]) for X in C.base.objects})


def direct_sum(modules: Sequence[EquivModule], C: HCategory) -> EquivModule:
    base = catmod.direct_sum([M.base for M in modules], C.base, RIGHT)
    hmod = {X: hrep.direct_sum([M.hmod[X] for M in modules], C.hopf) for X in C.base.objects}
    return EquivModule(C, base, hmod)


# ---------------------------------------------------------------------------
# The smash correspondence
# ---------------------------------------------------------------------------

def to_smash(M: EquivModule) -> CatModule:
    """M'(f # h) = S^-1(h) M(f), a right module over C # H."""
    C, H, F = M.hcat.base, M.hcat.hopf, M.hcat.base.field
    S = smash_product(M.hcat)
    action = {}
    for X, Y in C.keys():
        twisted = [M.hmod[X].act(H.antipode_inv[:, i]) for i in range(H.dim)]
        mats = []
        for Mf in M.base.action[(X, Y)]:
            mats.extend(exactlin.matmul(F, twisted[i], Mf) for i in range(H.dim))
        action[(X, Y)] = tuple(mats)
    return CatModule(S, RIGHT, dict(M.base.carrier), action, M.base.name)


def from_smash(M: CatModule, C: HCategory) -> EquivModule:
    """
    Recover M(f) = M'(f # 1) and hm = M'(id # S(h)) from a module over C # H.

    Raises:
        StructureError: If M is not a right module over smash_product(C).
    """
    S, H = smash_product(C), C.hopf
    if M.category is not S or M.side != RIGHT:
        raise StructureError("Expected a right module over the smash product")
    B = C.base
    action = {}
    for X, Y in B.keys():
        mats = []
        for a in range(B.hom_dim(X, Y)):
            f1 = np.multiply.outer(exactlin.unit_vector(B.field, B.hom_dim(X, Y), a), H.unit).reshape(-1)
            mats.append(M.action_matrix(X, Y, f1))
        action[(X, Y)] = tuple(mats)
    base = CatModule(B, RIGHT, dict(M.carrier), action, M.name)
    hmod = {}
    for X in B.objects:
        mats = []
        for i in range(H.dim):
            id_s = np.multiply.outer(B.identity[X], H.antipode[:, i]).reshape(-1)
            mats.append(M.action_matrix(X, X, B.field.normalize(id_s)))
        hmod[X] = HModule(H, M.carrier[X], tuple(mats))
    return EquivModule(C, base, hmod)


def smash_correspondence(data, direction: str, C: HCategory = None):
    """
    Convert between equivariant modules and modules over C # H.

    Args:
        data: An EquivModule (to_smash) or a CatModule over smash_product(C) (from_smash).
        direction (str): TO_SMASH or FROM_SMASH.
        C (HCategory): The H-category, required for FROM_SMASH.
    """
    if direction == TO_SMASH:
        return to_smash(data)
    if direction == FROM_SMASH:
        if C is None:
            raise ValueError("from_smash needs the H-category")
        return from_smash(data, C)
    raise ValueError(f"Unknown smash direction {direction!r}")


def smash_morphism(eta: ModuleMorphism, source: CatModule, target: CatModule) -> ModuleMorphism:
    """The same components, read as a morphism between smash modules."""
    return ModuleMorphism(source, target, dict(eta.component))


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

class HomAction(NamedTuple):
    space: HomSpace
    module: HModule
    invariants: Matrix


def conjugate(M: EquivModule, N: EquivModule, i: int, eta: ModuleMorphism) -> ModuleMorphism:
    """(e_i . eta)(X) = sum rho_N(h1) eta(X) rho_M(S(h2))."""
    H, F = M.hcat.hopf, M.hcat.base.field
    components = {}
    for X in M.base.category.objects:
        total = exactlin.zeros(F, N.base.carrier[X], M.base.carrier[X])
        for j, k, c in H.coproduct_terms(i):
            twisted = M.hmod[X].act(H.antipode[:, k])
            total = total + exactlin.matmul(F, N.hmod[X].action[j],
                                            exactlin.matmul(F, eta.component[X], twisted)) * c
        components[X] = F.normalize(total)
    return ModuleMorphism(M.base, N.base, components)


def hom_h_action(M: EquivModule, N: EquivModule, space: HomSpace = None) -> HomAction:
    """
    The H-module Hom_C(M, N) with the conjugation action, and its invariants.

    Returns:
        HomAction: The solved Hom space, the HModule on its basis and the
        coordinates of a basis of the invariant subspace.
    """
    if M.hcat is not N.hcat:
        raise StructureError("Equivariant modules over different H-categories")
    space = space or catmod.module_hom_basis(M.base, N.base)
    H = M.hcat.hopf
    basis = space.basis
    action = []
    for i in range(H.dim):
        moved = [conjugate(M, N, i, eta) for eta in basis]
        action.append(space.coordinates_many(moved) if moved else exactlin.zeros(H.field, 0, 0))
    module = HModule(H, space.dim, tuple(action))
    return HomAction(space, module, hrep.invariants(module))


def smash_hom_subspace(M: EquivModule, N: EquivModule, space: HomSpace = None) -> Matrix:
    """
    Hom over C # H, as coordinates in the basis of Hom_C(M, N).

    The two Hom spaces share carriers, so a smash morphism is literally a C-morphism.
    """
    space = space or catmod.module_hom_basis(M.base, N.base)
    smash = catmod.module_hom_basis(to_smash(M), to_smash(N))
    F = M.hcat.base.field
    coords = exactlin.solve_many(F, space.matrix, smash.matrix)
    if coords is None:
        raise StructureError("A smash morphism is not natural over the base category")
    return coords


def verify_invariant_hom(M: EquivModule, N: EquivModule) -> bool:
    """Hom_C(M, N)^H and Hom_{C#H}(M, N) coincide as subspaces."""
    action = hom_h_action(M, N)
    smash = smash_hom_subspace(M, N, action.space)
    return exactlin.same_span(M.hcat.base.field, action.invariants, smash)


# ---------------------------------------------------------------------------
# Tensor products and extension of scalars
# ---------------------------------------------------------------------------

def tensor_hmod(V: HModule, N: EquivModule) -> EquivModule:
    """V (x) N with C acting on the right factor and H diagonally; index v*dim N(X) + n."""
    C, F = N.hcat.base, N.hcat.base.field
    if V.hopf is not N.hcat.hopf:
        raise StructureError("Tensor factor lives over a different Hopf algebra")
    I = exactlin.identity(F, V.dim)
    action = {key: tuple(exactlin.kron(F, I, A) for A in mats) for key, mats in N.base.action.items()}
    carrier = {X: V.dim * N.base.carrier[X] for X in C.objects}
    base = CatModule(C, RIGHT, carrier, action, f"V({V.dim})x{N.name}" if N.name else "")
    hmod = {X: hrep.tensor_rep(hrep.MODULE, V, N.hmod[X]) for X in C.objects}
    return EquivModule(N.hcat, base, hmod)


def extend_scalars(M: CatModule, C: HCategory) -> CatModule:
    """
    M (x) H over C # H: (f' # h')(m (x) h) = sum M(h1 f')(m) (x) h2 h', index m*n + h.
    """
    B, H, F = C.base, C.hopf, C.base.field
    n = H.dim
    S = smash_product(C)
    action = {}
    for X, Y in B.keys():
        mats = []
        for a in range(B.hom_dim(X, Y)):
            moved = [M.action_matrix(X, Y, C.action[(X, Y)][j][:, a]) for j in range(n)]
            for i2 in range(n):
                A = exactlin.zeros(F, M.carrier[X] * n, M.carrier[Y] * n)
                for l in range(n):
                    for j, k, c in H.coproduct_terms(l):
                        prod = H.mult[k, i2, :]
                        if exactlin.is_zero(prod):
                            continue
                        for m in range(M.carrier[Y]):
                            block = np.multiply.outer(moved[j][:, m], prod).reshape(-1) * c
                            A[:, m * n + l] = A[:, m * n + l] + block
                mats.append(F.normalize(A))
        action[(X, Y)] = tuple(mats)
    carrier = {X: M.carrier[X] * n for X in B.objects}
    return CatModule(S, RIGHT, carrier, action, f"{M.name}xH" if M.name else "")


@dataclass(frozen=True, eq=False)
class AdjunctionCertificate:
    """
    A checked bijection between two solved Hom spaces.

    forward maps left coordinates to right coordinates, backward the other way.
    """
    field: FieldSpec
    left_dim: int
    right_dim: int
    forward: Matrix
    backward: Matrix

    @property
    def holds(self) -> bool:
        if self.left_dim != self.right_dim:
            return False
        F = self.field
        I = exactlin.identity(F, self.left_dim)
        return (exactlin.equal(exactlin.matmul(F, self.backward, self.forward), I) and
                exactlin.equal(exactlin.matmul(F, self.forward, self.backward), I))


def _certificate(F, forward: Matrix, backward: Matrix, left_dim: int, right_dim: int) -> AdjunctionCertificate:
    return AdjunctionCertificate(F, left_dim, right_dim, forward, backward)


def extension_adjunction(M: CatModule, N: EquivModule) -> AdjunctionCertificate:
    """
    phi: Hom_{C#H}(M (x) H, N) -> Hom_C(M, N), phi(eta)(m) = eta(m (x) 1), against
    its inverse eta(m (x) h) = S^-1(h) xi(m).
    """
    C, H, F = N.hcat, N.hcat.hopf, N.hcat.base.field
    n = H.dim
    ext = extend_scalars(M, C)
    left = catmod.module_hom_basis(ext, to_smash(N))
    right = catmod.module_hom_basis(M, N.base)
    objects = C.base.objects

    def forward(eta: ModuleMorphism) -> ModuleMorphism:
        comps = {}
        for X in objects:
            J = exactlin.kron(F, exactlin.identity(F, M.carrier[X]), exactlin.as_column(H.unit))
            comps[X] = exactlin.matmul(F, eta.component[X], J)
        return ModuleMorphism(M, N.base, comps)

    def backward(xi: ModuleMorphism) -> ModuleMorphism:
        comps = {}
        for X in objects:
            twisted = [N.hmod[X].act(H.antipode_inv[:, l]) for l in range(n)]
            A = exactlin.zeros(F, N.base.carrier[X], M.carrier[X] * n)
            for m in range(M.carrier[X]):
                col = exactlin.as_column(xi.component[X][:, m])
                for l in range(n):
                    A[:, [m * n + l]] = exactlin.matmul(F, twisted[l], col)
            comps[X] = A
        return ModuleMorphism(ext, to_smash(N), comps)

    fwd = right.coordinates_many([forward(eta) for eta in left.basis]) if left.dim else exactlin.zeros(F, right.dim, 0)
    bwd = left.coordinates_many([backward(xi) for xi in right.basis]) if right.dim else exactlin.zeros(F, left.dim, 0)
    return _certificate(F, fwd, bwd, left.dim, right.dim)


def tensor_hom_adjunction(V: HModule, N: EquivModule, P: EquivModule) -> AdjunctionCertificate:
    """
    Hom_{C#H}(V (x) N, P) against Hom_H(V, Hom_C(N, P)), with
    phi(eta)(v)(X)(n) = eta(X)(v (x) n).
    """
    F = N.hcat.base.field
    tensor = tensor_hmod(V, N)
    left = catmod.module_hom_basis(to_smash(tensor), to_smash(P))
    inner = hom_h_action(N, P)
    right = hrep.hmodule_hom_basis(V, inner.module)
    right_matrix = exactlin.hstack(F, [hrep.flatten_map(f) for f in right], V.dim * inner.space.dim)
    objects = N.hcat.base.objects

    def forward(eta: ModuleMorphism) -> Matrix:
        cols = []
        for v in range(V.dim):
            comps = {}
            for X in objects:
                d = N.base.carrier[X]
                comps[X] = eta.component[X][:, v * d:(v + 1) * d]
            cols.append(inner.space.coordinates(ModuleMorphism(N.base, P.base, comps)))
        return hrep.flatten_map(exactlin.hstack(F, cols, inner.space.dim))

    def backward(f: Matrix) -> ModuleMorphism:
        comps = {}
        basis = inner.space.basis
        for X in objects:
            d = N.base.carrier[X]
            A = exactlin.zeros(F, P.base.carrier[X], V.dim * d)
            for v in range(V.dim):
                block = exactlin.zeros(F, P.base.carrier[X], d)
                for b, xi in enumerate(basis):
                    if f[b, v] != 0:
                        block = block + xi.component[X] * f[b, v]
                A[:, v * d:(v + 1) * d] = F.normalize(block)
            comps[X] = A
        return ModuleMorphism(tensor.base, P.base, comps)

    flat = [forward(eta) for eta in left.basis]
    if flat:
        fwd = exactlin.solve_many(F, right_matrix, exactlin.hstack(F, flat, right_matrix.shape[0]))
        if fwd is None:
            raise StructureError("A smash morphism did not land in the H-linear maps")
    else:
        fwd = exactlin.zeros(F, len(right), 0)
    smash_tensor, smash_p = to_smash(tensor), to_smash(P)
    images = [smash_morphism(backward(f), smash_tensor, smash_p) for f in right]
    bwd = left.coordinates_many(images) if images else exactlin.zeros(F, left.dim, 0)
    return _certificate(F, fwd, bwd, left.dim, len(right))


# ---------------------------------------------------------------------------
# Finite witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteWitness:
    """
    A finite H-submodule V = H.eta of Hom_C(M, N), an element v in V and the smash
    morphism hat: V (x) M -> N with hat(v (x) m) = eta(m).
    """
    source: EquivModule
    target: EquivModule
    hom: HomAction
    basis: Matrix
    module: HModule
    vector: Matrix
    tensor: EquivModule
    hat: ModuleMorphism

    def extract(self) -> List[ModuleMorphism]:
        """xi_i(X)(m) = hat(X)(e_i v (x) m), one morphism M -> N per basis element of H."""
        H, F = self.module.hopf, self.module.hopf.field
        result = []
        for i in range(H.dim):
            hv = exactlin.matmul(F, self.module.action[i], self.vector)
            comps = {}
            for X in self.source.base.category.objects:
                d = self.source.base.carrier[X]
                P = exactlin.kron(F, hv, exactlin.identity(F, d))
                comps[X] = exactlin.matmul(F, self.hat.component[X], P)
            result.append(ModuleMorphism(self.source.base, self.target.base, comps))
        return result

    def spans_orbit(self) -> bool:
        """The extracted family spans H.eta inside Hom_C(M, N)."""
        F = self.module.hopf.field
        extracted = self.extract()
        coords = self.hom.space.coordinates_many(extracted) if extracted else self.basis[:, :0]
        return exactlin.same_span(F, coords, self.basis)


def finite_witness(M: EquivModule, N: EquivModule, eta: ModuleMorphism, hom: HomAction = None) -> FiniteWitness:
    """
    Wrap eta in the finite-dimensional H-module it generates.

    Raises:
        StructureError: If hat fails to be a smash morphism or does not reproduce eta.
    """
    H, F = M.hcat.hopf, M.hcat.base.field
    hom = hom or hom_h_action(M, N)
    coords = hom.space.coordinates(eta)
    orbit = exactlin.hstack(F, [exactlin.matmul(F, A, coords) for A in hom.module.action], hom.space.dim)
    basis = exactlin.column_basis(F, orbit)
    module = hrep.restrict(hom.module, basis)
    vector = exactlin.solve(F, basis, coords)
    tensor = tensor_hmod(module, M)
    components = {}
    members = [hom.space.morphism(basis[:, [b]]) for b in range(basis.shape[1])]
    for X in M.base.category.objects:
        d = M.base.carrier[X]
        A = exactlin.zeros(F, N.base.carrier[X], module.dim * d)
        for b, xi in enumerate(members):
            A[:, b * d:(b + 1) * d] = xi.component[X]
        components[X] = A
    hat = ModuleMorphism(to_smash(tensor), to_smash(N), components)
    problems = catmod.validate_morphism(hat)
    if problems:
        raise StructureError("; ".join(problems))
    for X in M.base.category.objects:
        P = exactlin.kron(F, vector, exactlin.identity(F, M.base.carrier[X]))
        if not exactlin.equal(exactlin.matmul(F, components[X], P), eta.component[X]):
            raise StructureError(f"Witness does not reproduce the morphism at {X}")
    return FiniteWitness(M, N, hom, basis, module, vector, tensor, hat)


# ---------------------------------------------------------------------------
# Generators and covers
# ---------------------------------------------------------------------------

def _orbit_basis(M: EquivModule, X: str, m: np.ndarray) -> Matrix:
    F = M.hcat.base.field
    col = exactlin.as_column(m)
    return exactlin.column_basis(F, exactlin.hstack(F, [exactlin.matmul(F, A, col) for A in M.hmod[X].action],
                                                    M.base.carrier[X]))


def base_generators(M: EquivModule) -> List[Tuple[str, np.ndarray]]:
    """
    Generators of M over C obtained from generators over C # H: each m_i contributes
    a basis of H m_i.
    """
    gens, _ = catmod.generators(to_smash(M))
    result = []
    for X, m in gens:
        orbit = _orbit_basis(M, X, m)
        result.extend((X, orbit[:, b]) for b in range(orbit.shape[1]))
    return result


def equivariant_cover(M: EquivModule) -> Tuple[EquivModule, ModuleMorphism]:
    """
    The epimorphism sum V_i (x) h_{X_i} -> M, v (x) f -> M(f)(v), with V_i = H m_i.

    Returns:
        Tuple[EquivModule, ModuleMorphism]: The cover and the map on base modules.
    """
    C = M.hcat
    B, F = C.base, C.base.field
    gens, _ = catmod.generators(to_smash(M))
    pieces, columns = [], {Y: [] for Y in B.objects}
    for X, m in gens:
        orbit = _orbit_basis(M, X, m)
        V = hrep.restrict(M.hmod[X], orbit)
        pieces.append(tensor_hmod(V, equivariant_representable(C, X)))
        for Y in B.objects:
            for b in range(orbit.shape[1]):
                for A in M.base.action[(Y, X)]:
                    columns[Y].append(exactlin.matmul(F, A, orbit[:, [b]]))
    if pieces:
        P = direct_sum(pieces, C)
    else:
        P = trivial_equivariant(C, catmod.zero_module(B, RIGHT))
    epi = ModuleMorphism(P.base, M.base, {Y: exactlin.hstack(F, columns[Y], M.base.carrier[Y]) for Y in B.objects})
    if not catmod.is_surjective(epi):
        raise StructureError("Equivariant cover is not surjective")
    return P, epi


def equivariant_kernel(eta: ModuleMorphism, source: EquivModule) -> Tuple[EquivModule, ModuleMorphism]:
    """Kernel of an equivariant morphism, with the restricted H-structures."""
    K, inclusion = catmod.kernel(eta)
    hmod = {X: hrep.restrict(source.hmod[X], inclusion.component[X]) for X in K.category.objects}
    return EquivModule(source.hcat, K, hmod), inclusion


def is_equivariant(eta: ModuleMorphism, M: EquivModule, N: EquivModule) -> bool:
    F = M.hcat.base.field
    for X in M.base.category.objects:
        for A, B in zip(M.hmod[X].action, N.hmod[X].action):
            if not exactlin.equal(exactlin.matmul(F, eta.component[X], A), exactlin.matmul(F, B, eta.component[X])):
                return False
    return True


def locally_finite_hom(M: EquivModule, N: EquivModule) -> Tuple[HModule, bool]:
    """The locally finite part of Hom_C(M, N), and whether it is the whole space."""
    module = hom_h_action(M, N).module
    part, cyclic = hrep.locally_finite_part(module)
    return part, part.dim == module.dim and len(cyclic) == module.dim
