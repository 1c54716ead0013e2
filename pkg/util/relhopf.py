"""
Relative (D, H)-Hopf modules over a co-H-category D.

A RelHopfModule is a left D-module M with a right H-comodule structure on each M(X)
such that rho(M(f)(m)) = sum M(f0)(m0) (x) f1 m1. Hom spaces between plain left
D-modules carry a rational coaction whose coinvariants are the relative Hopf
module morphisms.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from util import catmod, exactlin, hrep
from util.catmod import LEFT, CatModule, HomSpace, ModuleMorphism
from util.equivariant import AdjunctionCertificate
from util.errors import StructureError
from util.exactlin import Matrix
from util.hcat import CoHCategory, dualize_coh_category, smash_product
from util.hopf import dual_hopf
from util.hrep import HComodule, HModule

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RelHopfModule:
    coh: CoHCategory
    base: CatModule
    hcomod: Dict[str, HComodule]

    def __post_init__(self) -> None:
        if self.base.side != LEFT or self.base.category is not self.coh.base:
            raise StructureError("A relative Hopf module is a left module over the co-H-category's base")
        for X in self.base.category.objects:
            if self.hcomod[X].dim != self.base.carrier[X]:
                raise StructureError(f"Comodule at {X} has dimension {self.hcomod[X].dim}, "
                                     f"carrier has {self.base.carrier[X]}")

    @property
    def name(self) -> str:
        return self.base.name


def _product_side(M: RelHopfModule, X: str, Y: str, a: int) -> Matrix:
    """sum M(f0)(m0) (x) f1 m1 for f = f_a: X -> Y, as a (dim M(Y) * n) x dim M(X) matrix."""
    D, H, F = M.coh.base, M.coh.hopf, M.coh.base.field
    n = H.dim
    rho_f = M.coh.coaction[(X, Y)][:, a]
    result = exactlin.zeros(F, M.base.carrier[Y] * n, M.base.carrier[X])
    for i in range(n):
        coeffs = rho_f[i::n]
        if exactlin.is_zero(coeffs):
            continue
        Mf_i = M.base.action_matrix(X, Y, coeffs)
        for j in range(n):
            prod = H.mult[i, j, :]
            if exactlin.is_zero(prod):
                continue
            term = exactlin.matmul(F, Mf_i, M.hcomod[X].component(j))
            for t in np.nonzero(prod != 0)[0]:
                result[t::n, :] = result[t::n, :] + term * prod[t]
    return F.normalize(result)


def validate_relhopf(M: RelHopfModule) -> List[str]:
    """
    Check rho(M(f)(m)) = sum M(f0)(m0) (x) f1 m1 exactly.

    Returns:
        List[str]: Violations, empty when M is a relative Hopf module.
    """
    D, F = M.coh.base, M.coh.base.field
    report = []
    for X, Y in D.keys():
        for a, Mf in enumerate(M.base.action[(X, Y)]):
            left = exactlin.matmul(F, M.hcomod[Y].coaction, Mf)
            if not exactlin.equal(left, _product_side(M, X, Y, a)):
                report.append(f"coaction is not compatible with {D.hom_basis[(X, Y)][a]}")
    return report


def relhopf_representable(D: CoHCategory, X: str) -> RelHopfModule:
    """_Xh with the hom-space coactions of D."""
    base = catmod.representable(D.base, X, LEFT)
    return RelHopfModule(D, base, {Y: D.hom_comodule(X, Y) for Y in D.base.objects})


def direct_sum(modules: Sequence[RelHopfModule], D: CoHCategory) -> RelHopfModule:
    base = catmod.direct_sum([M.base for M in modules], D.base, LEFT)
    hcomod = {X: hrep.direct_sum([M.hcomod[X] for M in modules], D.hopf) for X in D.base.objects}
    return RelHopfModule(D, base, hcomod)


def zero_relhopf(D: CoHCategory) -> RelHopfModule:
    return RelHopfModule(D, catmod.zero_module(D.base, LEFT),
                         {X: hrep.trivial_comodule(D.hopf, 0) for X in D.base.objects})


def tensor_comod(N: RelHopfModule, W: HComodule) -> RelHopfModule:
    """N (x) W: D acts on N, rho(n (x) w) = sum n0 (x) w0 (x) n1 w1; index n*dim W + w."""
    D, F = N.coh.base, N.coh.base.field
    if W.hopf is not N.coh.hopf:
        raise StructureError("Tensor factor lives over a different Hopf algebra")
    I = exactlin.identity(F, W.dim)
    action = {key: tuple(exactlin.kron(F, A, I) for A in mats) for key, mats in N.base.action.items()}
    carrier = {X: N.base.carrier[X] * W.dim for X in D.objects}
    base = CatModule(D, LEFT, carrier, action, f"{N.name}xW({W.dim})" if N.name else "")
    hcomod = {X: hrep.tensor_rep(hrep.COMODULE, N.hcomod[X], W) for X in D.objects}
    return RelHopfModule(N.coh, base, hcomod)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def colinearity_constraints(M: RelHopfModule, N: RelHopfModule) -> List[Tuple[str, Matrix, Matrix]]:
    return [(X, M.hcomod[X].component(k), N.hcomod[X].component(k))
            for X in M.base.category.objects for k in range(M.coh.hopf.dim)]


def relhopf_hom_basis(M: RelHopfModule, N: RelHopfModule) -> HomSpace:
    """Natural transformations M -> N that are colinear at every object."""
    if M.coh is not N.coh:
        raise StructureError("Relative Hopf modules over different co-H-categories")
    return catmod.module_hom_basis(M.base, N.base, colinearity_constraints(M, N))


def is_colinear(eta: ModuleMorphism, M: RelHopfModule, N: RelHopfModule) -> bool:
    F = M.coh.base.field
    for X, A, B in colinearity_constraints(M, N):
        if not exactlin.equal(exactlin.matmul(F, eta.component[X], A), exactlin.matmul(F, B, eta.component[X])):
            return False
    return True


@dataclass(frozen=True, eq=False)
class RationalHom:
    """
    Hom_D(M, N) with its rational coaction and the H*-action computed separately.
    """
    space: HomSpace
    comodule: HComodule
    hstar_action: HModule
    coinvariants: Matrix
    relhopf: Matrix

    @property
    def rational(self) -> bool:
        dual = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, self.comodule)
        return all(exactlin.equal(A, B) for A, B in zip(dual.action, self.hstar_action.action))

    @property
    def coinvariants_match(self) -> bool:
        return exactlin.same_span(self.comodule.hopf.field, self.coinvariants, self.relhopf)


def _hom_coaction_component(M: RelHopfModule, N: RelHopfModule, t: int, eta: ModuleMorphism) -> ModuleMorphism:
    """eta_t(X) = sum_{j,l} [e_t](S^-1(e_j) e_l) rho_l^N eta(X) rho_j^M."""
    H, F = M.coh.hopf, M.coh.base.field
    comps = {}
    for X in M.base.category.objects:
        total = exactlin.zeros(F, N.base.carrier[X], M.base.carrier[X])
        for j in range(H.dim):
            s = H.antipode_inv[:, j]
            for l in range(H.dim):
                c = H.product(s, H.basis_vector(l))[t]
                if c == 0:
                    continue
                inner = exactlin.matmul(F, eta.component[X], M.hcomod[X].component(j))
                total = total + exactlin.matmul(F, N.hcomod[X].component(l), inner) * c
        comps[X] = F.normalize(total)
    return ModuleMorphism(M.base, N.base, comps)


def _hstar_action(M: RelHopfModule, N: RelHopfModule, k: int, eta: ModuleMorphism) -> ModuleMorphism:
    """(h* . eta) = sum N(h*2) eta M(S*^-1(h*1)), with both sides read as H*-modules."""
    Hd = dual_hopf(M.coh.hopf)
    F = M.coh.base.field
    comps = {}
    for X in M.base.category.objects:
        Mm = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, M.hcomod[X])
        Nm = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, N.hcomod[X])
        total = exactlin.zeros(F, N.base.carrier[X], M.base.carrier[X])
        for j, l, c in Hd.coproduct_terms(k):
            twisted = Mm.act(Hd.antipode_inv[:, j])
            total = total + exactlin.matmul(F, Nm.action[l], exactlin.matmul(F, eta.component[X], twisted)) * c
        comps[X] = F.normalize(total)
    return ModuleMorphism(M.base, N.base, comps)


def rational_hom(M: RelHopfModule, N: RelHopfModule, space: HomSpace = None) -> RationalHom:
    """
    HOM_D(M, N) realized on Hom_D(M, N) with
    rho(eta)(X)(m) = sum (eta m0)0 (x) S^-1(m1) (eta m0)1.

    Raises:
        StructureError: If the coaction leaves the Hom space.
    """
    if M.coh is not N.coh:
        raise StructureError("Relative Hopf modules over different co-H-categories")
    H, F = M.coh.hopf, M.coh.base.field
    n = H.dim
    space = space or catmod.module_hom_basis(M.base, N.base)
    basis = space.basis
    d = space.dim
    rho = exactlin.zeros(F, d * n, d)
    for t in range(n):
        if d:
            rho[t::n, :] = space.coordinates_many([_hom_coaction_component(M, N, t, eta) for eta in basis])
    comodule = HComodule(H, d, rho)
    Hd = dual_hopf(H)
    action = tuple(space.coordinates_many([_hstar_action(M, N, k, eta) for eta in basis]) if d
                   else exactlin.zeros(F, 0, 0) for k in range(Hd.dim))
    hstar = HModule(Hd, d, action)
    colinear = relhopf_hom_basis(M, N)
    colinear_coords = exactlin.solve_many(F, space.matrix, colinear.matrix)
    if colinear_coords is None:
        raise StructureError("A relative Hopf morphism is not D-linear")
    return RationalHom(space, comodule, hstar, hrep.coinvariants(comodule), colinear_coords)


def verify_hom_adjunction(W: HComodule, N: RelHopfModule, P: RelHopfModule) -> AdjunctionCertificate:
    """
    Hom_{Comod-H}(W, HOM_D(N, P)) against Hom_{relhopf}(N (x) W, P), with
    f(w)(X)(n) = eta(X)(n (x) w).
    """
    F = N.coh.base.field
    hom = rational_hom(N, P)
    left = hrep.comodule_hom_basis(W, hom.comodule)
    left_matrix = exactlin.hstack(F, [hrep.flatten_map(f) for f in left], hom.space.dim * W.dim)
    tensor = tensor_comod(N, W)
    right = relhopf_hom_basis(tensor, P)
    basis = hom.space.basis
    objects = N.base.category.objects

    def to_relhopf(f: Matrix) -> ModuleMorphism:
        comps = {}
        for X in objects:
            d = N.base.carrier[X]
            A = exactlin.zeros(F, P.base.carrier[X], d * W.dim)
            for w in range(W.dim):
                block = exactlin.zeros(F, P.base.carrier[X], d)
                for b, xi in enumerate(basis):
                    if f[b, w] != 0:
                        block = block + xi.component[X] * f[b, w]
                A[:, w::W.dim] = F.normalize(block)
            comps[X] = A
        return ModuleMorphism(tensor.base, P.base, comps)

    def to_comodule_map(eta: ModuleMorphism) -> Matrix:
        cols = []
        for w in range(W.dim):
            comps = {X: eta.component[X][:, w::W.dim] for X in objects}
            cols.append(hom.space.coordinates(ModuleMorphism(N.base, P.base, comps)))
        return hrep.flatten_map(exactlin.hstack(F, cols, hom.space.dim))

    images = [to_relhopf(f) for f in left]
    fwd = right.coordinates_many(images) if images else exactlin.zeros(F, right.dim, 0)
    flat = [to_comodule_map(eta) for eta in right.basis]
    if flat:
        bwd = exactlin.solve_many(F, left_matrix, exactlin.hstack(F, flat, left_matrix.shape[0]))
        if bwd is None:
            raise StructureError("A relative Hopf morphism did not give a colinear map")
    else:
        bwd = exactlin.zeros(F, len(left), 0)
    return AdjunctionCertificate(F, len(left), right.dim, fwd, bwd)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorWitness:
    """The subcomodule W_m of M(X) and eta_m: _Xh (x) W_m -> M."""
    obj: str
    basis: Matrix
    comodule: HComodule
    source: RelHopfModule
    morphism: ModuleMorphism


def coaction_closure(W: HComodule, m: np.ndarray) -> Matrix:
    """Smallest subspace containing m and closed under every coefficient map."""
    F = W.hopf.field
    span = exactlin.column_basis(F, exactlin.as_column(m))
    while True:
        images = [span] + [exactlin.matmul(F, W.component(k), span) for k in range(W.hopf.dim)]
        grown = exactlin.column_basis(F, exactlin.hstack(F, images, W.dim))
        if grown.shape[1] == span.shape[1]:
            return span
        span = grown


def _witness_map(M: RelHopfModule, X: str, basis: Matrix, source: RelHopfModule) -> ModuleMorphism:
    F = M.coh.base.field
    comps = {}
    for Y in M.base.category.objects:
        cols = []
        for A in M.base.action[(X, Y)]:
            for w in range(basis.shape[1]):
                cols.append(exactlin.matmul(F, A, basis[:, [w]]))
        comps[Y] = exactlin.hstack(F, cols, M.base.carrier[Y])
    return ModuleMorphism(source.base, M.base, comps)


def generator_witness(M: RelHopfModule, X: str, m: np.ndarray) -> GeneratorWitness:
    """
    eta_m(Y)(f (x) w) = M(f)(w), with eta_m(X)(id_X (x) m) = m.

    Raises:
        StructureError: If eta_m fails to be a colinear natural map or misses m.
    """
    D, F = M.coh.base, M.coh.base.field
    basis = coaction_closure(M.hcomod[X], m)
    comodule = hrep.restrict(M.hcomod[X], basis)
    source = tensor_comod(relhopf_representable(M.coh, X), comodule)
    eta = _witness_map(M, X, basis, source)
    if catmod.validate_morphism(eta) or not is_colinear(eta, source, M):
        raise StructureError(f"Generator map at {X} is not a relative Hopf morphism")
    coords = exactlin.solve(F, basis, m) if basis.shape[1] else exactlin.zeros(F, 0, 1)
    element = exactlin.kron(F, exactlin.as_column(D.identity[X]), coords)
    if not exactlin.equal(exactlin.matmul(F, eta.component[X], element), exactlin.as_column(m)):
        raise StructureError(f"Generator map at {X} does not recover the element")
    return GeneratorWitness(X, basis, comodule, source, eta)


def generator_epimorphism(M: RelHopfModule) -> Tuple[RelHopfModule, ModuleMorphism]:
    """
    The epimorphism (sum _{X_i}h (x) W_i) -> M assembled from generator witnesses.

    Raises:
        StructureError: If the assembled map is not a pointwise epimorphism.
    """
    D, F = M.coh, M.coh.base.field
    gens, _ = catmod.generators(M.base)
    witnesses = [generator_witness(M, X, m) for X, m in gens]
    if not witnesses:
        P = zero_relhopf(D)
        return P, catmod.zero_morphism(P.base, M.base)
    P = direct_sum([w.source for w in witnesses], D)
    comps = {Y: exactlin.hstack(F, [w.morphism.component[Y] for w in witnesses], M.base.carrier[Y])
             for Y in D.base.objects}
    epi = ModuleMorphism(P.base, M.base, comps)
    if not catmod.is_surjective(epi):
        raise StructureError("Generator witnesses do not cover the module")
    return P, epi


def relhopf_kernel(eta: ModuleMorphism, source: RelHopfModule) -> Tuple[RelHopfModule, ModuleMorphism]:
    K, inclusion = catmod.kernel(eta)
    hcomod = {X: hrep.restrict(source.hcomod[X], inclusion.component[X]) for X in K.category.objects}
    return RelHopfModule(source.coh, K, hcomod), inclusion


# ---------------------------------------------------------------------------
# Left modules over D # H*
# ---------------------------------------------------------------------------

def to_dual_smash(M: RelHopfModule) -> CatModule:
    """M'(f # e_k*) = M(f) rho_k, a left module over D # H*."""
    D, F = M.coh.base, M.coh.base.field
    S = smash_product(dualize_coh_category(M.coh))
    n = M.coh.hopf.dim
    action = {}
    for X, Y in D.keys():
        mats = []
        for Mf in M.base.action[(X, Y)]:
            mats.extend(exactlin.matmul(F, Mf, M.hcomod[X].component(k)) for k in range(n))
        action[(X, Y)] = tuple(mats)
    return CatModule(S, LEFT, dict(M.base.carrier), action, M.base.name)


def from_dual_smash(M: CatModule, D: CoHCategory) -> RelHopfModule:
    """
    M(f) = M'(f # 1), rho_k = M'(id # e_k*).

    Raises:
        StructureError: If M is not a left module over the dual smash product of D.
    """
    Dd = dualize_coh_category(D)
    S = smash_product(Dd)
    if M.category is not S or M.side != LEFT:
        raise StructureError("Expected a left module over the dual smash product")
    B, Hd, F = D.base, Dd.hopf, D.base.field
    n = Hd.dim
    action = {}
    for X, Y in B.keys():
        action[(X, Y)] = tuple(
            M.action_matrix(X, Y, np.multiply.outer(exactlin.unit_vector(F, B.hom_dim(X, Y), a), Hd.unit).reshape(-1))
            for a in range(B.hom_dim(X, Y)))
    base = CatModule(B, LEFT, dict(M.carrier), action, M.name)
    hcomod = {}
    for X in B.objects:
        rho = exactlin.zeros(F, M.carrier[X] * n, M.carrier[X])
        for k in range(n):
            idk = np.multiply.outer(B.identity[X], exactlin.unit_vector(F, n, k)).reshape(-1)
            rho[k::n, :] = M.action_matrix(X, X, F.normalize(idk))
        hcomod[X] = HComodule(D.hopf, M.carrier[X], rho)
    return RelHopfModule(D, base, hcomod)
