"""
Resolutions and derived functors.

Every context reduces to modules over a finite K-linear category:

    mod_c      right modules over the base of an H-category
    mod_smash  right modules over C # H
    d_mod      left modules over the base of a co-H-category
    relhopf    relative Hopf modules, handled as left modules over D # H*
    h_mod      left H-modules, over the one-object category of H
    comod_h    right H-comodules, handled as left H*-modules

Free resolutions iterate generators and kernels. Injective resolutions dualize,
take a free resolution on the other side and dualize back. Every Ext group is
computed from both resolutions and the two answers must agree.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from util import catmod, equivariant, exactlin, hrep, relhopf
from util.catmod import LEFT, RIGHT, CatModule, HomSpace, ModuleMorphism
from util.equivariant import EquivModule
from util.errors import ComputationMismatch, InconsistentComplex, StructureError
from util.exactlin import Matrix
from util.hopf import HopfAlgebra, dual_hopf
from util.hrep import HComodule, HModule
from util.relhopf import RelHopfModule

logger = logging.getLogger(__name__)

MOD_C = "mod_c"
MOD_SMASH = "mod_smash"
D_MOD = "d_mod"
RELHOPF = "relhopf"
H_MOD = "h_mod"
COMOD_H = "comod_h"
CONTEXTS = (MOD_C, MOD_SMASH, D_MOD, RELHOPF, H_MOD, COMOD_H)

FREE = "free"
INJECTIVE = "injective"

INVARIANTS = "invariants"
COINVARIANTS = "coinvariants"


def _check_context(context: str) -> None:
    if context not in CONTEXTS:
        raise ValueError(f"Unknown context {context!r}, expected one of {', '.join(CONTEXTS)}")


def context_module(X, context: str) -> CatModule:
    """
    The module over a finite category that represents X in the given context.

    Raises:
        StructureError: If X cannot live in the context.
    """
    _check_context(context)
    if context == MOD_C:
        base = X.base if isinstance(X, EquivModule) else X
        if isinstance(base, CatModule) and base.side == RIGHT:
            return base
    elif context == MOD_SMASH:
        if isinstance(X, EquivModule):
            return equivariant.to_smash(X)
        if isinstance(X, CatModule) and X.side == RIGHT:
            return X
    elif context == D_MOD:
        base = X.base if isinstance(X, RelHopfModule) else X
        if isinstance(base, CatModule) and base.side == LEFT:
            return base
    elif context == RELHOPF:
        if isinstance(X, RelHopfModule):
            return relhopf.to_dual_smash(X)
    elif context == H_MOD:
        if isinstance(X, HModule):
            return catmod.algebra_module(X)
    elif context == COMOD_H:
        if isinstance(X, HComodule):
            return catmod.algebra_module(hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, X))
    raise StructureError(f"A {type(X).__name__} does not live in the {context} context")


# ---------------------------------------------------------------------------
# Complexes and resolutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChainComplex:
    """
    Modules of one context with their differentials. For a chain complex maps[i]
    goes terms[i+1] -> terms[i]; for a cochain complex terms[i] -> terms[i+1].
    """
    context: str
    terms: List[CatModule]
    maps: List[ModuleMorphism]
    cohomological: bool

    def verify(self) -> List[str]:
        report = []
        for i, d in enumerate(self.maps):
            report += [f"differential {i}: {msg}" for msg in catmod.validate_morphism(d)]
        for i in range(len(self.maps) - 1):
            first, second = (self.maps[i], self.maps[i + 1]) if self.cohomological else (self.maps[i + 1], self.maps[i])
            composite = catmod.compose_morphisms(second, first)
            if not all(exactlin.is_zero(A) for A in composite.component.values()):
                report.append(f"d o d is not zero at degree {i + 1}")
        return report


@dataclass(frozen=True, eq=False)
class Resolution:
    """
    A free resolution P_* -> M or an injective resolution M -> I^*, with terms
    0..length+1 so that derived functors are exact through degree `length`.

    `structured` holds the same terms with their equivariant or relative Hopf
    structure when the resolution was built in such a category.
    """
    kind: str
    context: str
    module: CatModule
    complex: ChainComplex
    augmentation: ModuleMorphism
    length: int
    structured: Optional[list] = None

    @property
    def terms(self) -> List[CatModule]:
        return self.complex.terms

    @property
    def maps(self) -> List[ModuleMorphism]:
        return self.complex.maps

    def ranks(self) -> List[int]:
        return [P.total_dim for P in self.terms]


def _generic_cover(M: CatModule) -> Tuple[CatModule, ModuleMorphism]:
    _, epi = catmod.generators(M)
    return epi.source, epi


def _generic_kernel(eta: ModuleMorphism, source: CatModule) -> Tuple[CatModule, ModuleMorphism]:
    return catmod.kernel(eta)


def _identity(X):
    return X


def _free_tower(M, n: int, cover: Callable, kernel: Callable, base: Callable) -> Tuple[list, List[ModuleMorphism], ModuleMorphism]:
    P, eps = cover(M)
    structures, maps = [P], []
    previous = eps
    for i in range(n + 1):
        K, inclusion = kernel(previous, structures[-1])
        Q, epi = cover(K)
        d = catmod.compose_morphisms(inclusion, epi)
        structures.append(Q)
        maps.append(d)
        previous = d
        logger.debug(f"free step {i + 1}: kernel dim {base(K).total_dim}")
    return structures, maps, eps


def free_resolution(M, context: str, n: int) -> Resolution:
    """
    Free resolution through degree n.

    Equivariant modules in mod_c are covered by sums V_i (x) h_{X_i}; relative Hopf
    modules in d_mod by sums _{X_i}h (x) W_i; everything else by representables.
    Kernels are re-equipped with their structure at every step.

    Raises:
        InconsistentComplex: If the result fails the exactness check.
    """
    _check_context(context)
    if n < 0:
        raise ValueError("Resolution length must be non-negative")
    structured = None
    if context == MOD_C and isinstance(M, EquivModule):
        structures, maps, eps = _free_tower(M, n, equivariant.equivariant_cover,
                                            equivariant.equivariant_kernel, lambda S: S.base)
        terms, module, structured = [S.base for S in structures], M.base, structures
    elif context == D_MOD and isinstance(M, RelHopfModule):
        structures, maps, eps = _free_tower(M, n, relhopf.generator_epimorphism,
                                            relhopf.relhopf_kernel, lambda S: S.base)
        terms, module, structured = [S.base for S in structures], M.base, structures
    else:
        module = context_module(M, context)
        terms, maps, eps = _free_tower(module, n, _generic_cover, _generic_kernel, _identity)
        structured = _restructure(terms, M, context)
    logger.info(f"free resolution in {context}: ranks {[P.total_dim for P in terms]}")
    res = Resolution(FREE, context, module, ChainComplex(context, terms, maps, False), eps, n, structured)
    return _certify(res)


def _restructure(terms: List[CatModule], M, context: str) -> Optional[list]:
    if context == MOD_SMASH and isinstance(M, EquivModule):
        return [equivariant.from_smash(P, M.hcat) for P in terms]
    if context == RELHOPF and isinstance(M, RelHopfModule):
        return [relhopf.from_dual_smash(P, M.coh) for P in terms]
    return None


def injective_resolution(M, context: str, n: int) -> Resolution:
    """
    Injective resolution through degree n, by duality: D(M) is resolved by free
    modules on the other side and the resolution is dualized back. Duals of
    projectives over a finite-dimensional category algebra are injective.

    Raises:
        InconsistentComplex: If the result is not exact or a term fails the lifting test.
    """
    _check_context(context)
    if n < 0:
        raise ValueError("Resolution length must be non-negative")
    module = context_module(M, context)
    dual = catmod.dual_module(module)
    free_terms, free_maps, eps = _free_tower(dual, n, _generic_cover, _generic_kernel, _identity)
    terms = [catmod.dual_module(P) for P in free_terms]
    augmentation = ModuleMorphism(module, terms[0], {X: A.T.copy() for X, A in eps.component.items()})
    maps = [ModuleMorphism(terms[i], terms[i + 1], {X: A.T.copy() for X, A in d.component.items()})
            for i, d in enumerate(free_maps)]
    logger.info(f"injective resolution in {context}: ranks {[I.total_dim for I in terms]}")
    res = Resolution(INJECTIVE, context, module, ChainComplex(context, terms, maps, True), augmentation, n,
                     _restructure(terms, M, context))
    return _certify(res)


def verify_exactness(res: Resolution) -> List[str]:
    """
    d o d = 0, and pointwise exactness by rank counts at every degree whose outgoing
    map was computed.
    """
    report = res.complex.verify()
    F = res.module.field
    objects = res.module.category.objects
    aug = res.augmentation
    for X in objects:
        r_aug = exactlin.rank(F, aug.component[X])
        if r_aug != res.module.carrier[X]:
            kind = "surjective" if res.kind == FREE else "injective"
            report.append(f"augmentation is not {kind} at {X}")
        ranks = [exactlin.rank(F, d.component[X]) for d in res.maps]
        for i, term in enumerate(res.terms[:-1]):
            incoming = r_aug if i == 0 else ranks[i - 1]
            if ranks[i] != term.carrier[X] - incoming:
                report.append(f"not exact at degree {i} over {X}")
    for msg in report:
        logger.debug(msg)
    return report


def check_injective(I: CatModule) -> List[str]:
    """
    Lifting test: every map from a cyclic subfunctor of a representable into I
    must extend to the representable.

    Returns:
        List[str]: The subfunctors that fail, empty when the panel passes.
    """
    C, F = I.category, I.field
    report = []
    for X in C.objects:
        P = catmod.representable(C, X, I.side)
        whole = catmod.module_hom_basis(P, I)
        for Y in C.objects:
            for b in range(P.carrier[Y]):
                bases = catmod.generated_submodule(P, [(Y, exactlin.unit_vector(F, P.carrier[Y], b))])
                U = catmod.restrict_module(P, bases)
                inclusion = ModuleMorphism(U, P, bases)
                restricted = catmod.module_hom_basis(U, I)
                if restricted.dim == 0:
                    continue
                images = [catmod.compose_morphisms(eta, inclusion) for eta in whole.basis]
                coords = restricted.coordinates_many(images) if images else exactlin.zeros(F, restricted.dim, 0)
                if exactlin.rank(F, coords) != restricted.dim:
                    label = P.name or X
                    report.append(f"a map from the subfunctor of {label} generated at {Y}[{b}] does not extend")
    return report


def _certify(res: Resolution) -> Resolution:
    problems = verify_exactness(res)
    if res.kind == INJECTIVE:
        for i, I in enumerate(res.terms):
            problems += [f"I^{i}: {msg}" for msg in check_injective(I)]
    if problems:
        raise InconsistentComplex(f"{res.kind} resolution in {res.context}: {'; '.join(problems)}")
    return res


# ---------------------------------------------------------------------------
# Hom cochains and Ext
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomCochain:
    """
    Hom spaces in each degree with the coboundaries between their coordinates;
    `structures` optionally carries the H-module or H-comodule on each space.
    """
    spaces: List[HomSpace]
    deltas: List[Matrix]
    structures: Optional[list] = None

    def cohomology(self, i: int) -> Tuple[int, Matrix, Matrix]:
        """(dim, cycles, boundaries) in degree i, as coordinate columns."""
        F = self.spaces[i].source.field
        d = self.spaces[i].dim
        Z = exactlin.kernel_basis(F, self.deltas[i]) if i < len(self.deltas) else exactlin.identity(F, d)
        B = self.deltas[i - 1] if i > 0 else exactlin.zeros(F, d, 0)
        dim, _ = exactlin.subquotient(F, Z, B)
        return dim, Z, B

    def dims(self, n: int) -> List[int]:
        return [self.cohomology(i)[0] for i in range(n + 1)]

    def structure(self, i: int):
        if self.structures is None:
            return None
        _, Z, B = self.cohomology(i)
        return hrep.restrict(self.structures[i], Z, B)


def _delta(source: HomSpace, target: HomSpace, images: List[ModuleMorphism]) -> Matrix:
    F = source.source.field
    if not images:
        return exactlin.zeros(F, target.dim, 0)
    return target.coordinates_many(images)


def free_cochain(res: Resolution, N: CatModule, structure: Callable = None) -> HomCochain:
    """Hom(P_i, N) with delta(eta) = eta o d_{i+1}."""
    spaces = [catmod.module_hom_basis(P, N) for P in res.terms]
    deltas = []
    for i, d in enumerate(res.maps):
        images = [catmod.compose_morphisms(eta, d) for eta in spaces[i].basis]
        deltas.append(_delta(spaces[i], spaces[i + 1], images))
    structures = None
    if structure is not None:
        structures = [structure(i, space) for i, space in enumerate(spaces)]
    return HomCochain(spaces, deltas, structures)


def injective_cochain(M: CatModule, res: Resolution, structure: Callable = None) -> HomCochain:
    """Hom(M, I^i) with delta(eta) = d^i o eta."""
    spaces = [catmod.module_hom_basis(M, I) for I in res.terms]
    deltas = []
    for i, d in enumerate(res.maps):
        images = [catmod.compose_morphisms(d, eta) for eta in spaces[i].basis]
        deltas.append(_delta(spaces[i], spaces[i + 1], images))
    structures = None
    if structure is not None:
        structures = [structure(i, space) for i, space in enumerate(spaces)]
    return HomCochain(spaces, deltas, structures)


@dataclass(frozen=True, eq=False)
class ExtResult:
    """
    Ext^0..Ext^degree computed from a free resolution of the source and from an
    injective resolution of the target. `structures` holds the H-module (mod_c) or
    H-comodule (d_mod) on each Ext group when the inputs carry that structure.
    """
    context: str
    degree: int
    dims: List[int]
    injective_dims: List[int]
    free: Resolution
    injective: Resolution
    structures: Optional[list] = None
    injective_structures: Optional[list] = None

    def fixed_dims(self, which: str = "free") -> Optional[List[int]]:
        structures = self.structures if which == "free" else self.injective_structures
        if structures is None:
            return None
        return [_fixed_dim(S) for S in structures]


def _fixed_dim(S) -> int:
    if isinstance(S, HModule):
        return hrep.invariants(S).shape[1]
    return hrep.coinvariants(S).shape[1]


def _check_relhopf_hom(M: RelHopfModule, N: RelHopfModule) -> None:
    direct = relhopf.relhopf_hom_basis(M, N).dim
    via_smash = catmod.module_hom_basis(relhopf.to_dual_smash(M), relhopf.to_dual_smash(N)).dim
    if direct != via_smash:
        raise ComputationMismatch(f"Relative Hopf Hom has dim {direct}, dual smash Hom has dim {via_smash}")


def ext_groups(M, N, context: str, n: int) -> ExtResult:
    """
    Ext^q(M, N) for q = 0..n in the given context.

    Raises:
        ComputationMismatch: If the free and injective computations disagree, or the
            two structured computations have different fixed parts.
    """
    _check_context(context)
    if context == RELHOPF:
        _check_relhopf_hom(M, N)
    Mc, Nc = context_module(M, context), context_module(N, context)
    free = free_resolution(M, context, n)
    structures = injective_structures = None
    if context == MOD_C and isinstance(M, EquivModule) and isinstance(N, EquivModule):
        injective = injective_resolution(N, MOD_SMASH, n)
        fcochain = free_cochain(free, Nc, lambda i, space: equivariant.hom_h_action(free.structured[i], N, space).module)
        icochain = injective_cochain(Mc, base_resolution(injective), lambda i, space: equivariant.hom_h_action(
            M, injective.structured[i], space).module)
    elif context == D_MOD and isinstance(M, RelHopfModule) and isinstance(N, RelHopfModule):
        injective = injective_resolution(N, RELHOPF, n)
        fcochain = free_cochain(free, Nc, lambda i, space: relhopf.rational_hom(free.structured[i], N, space).comodule)
        icochain = injective_cochain(Mc, base_resolution(injective), lambda i, space: relhopf.rational_hom(
            M, injective.structured[i], space).comodule)
    else:
        injective = injective_resolution(N, context, n)
        fcochain = free_cochain(free, Nc)
        icochain = injective_cochain(Mc, injective)
    dims, injective_dims = fcochain.dims(n), icochain.dims(n)
    logger.info(f"Ext in {context} through degree {n}: {dims}")
    if dims != injective_dims:
        logger.error(f"free route gives {dims}, injective route gives {injective_dims}")
        raise ComputationMismatch(f"Ext dims disagree in {context}: free {dims}, injective {injective_dims}")
    if fcochain.structures is not None:
        structures = [fcochain.structure(i) for i in range(n + 1)]
        injective_structures = [icochain.structure(i) for i in range(n + 1)]
        fixed = [_fixed_dim(S) for S in structures]
        injective_fixed = [_fixed_dim(S) for S in injective_structures]
        if fixed != injective_fixed:
            raise ComputationMismatch(f"Fixed parts of Ext disagree: free {fixed}, injective {injective_fixed}")
    return ExtResult(context, n, dims, injective_dims, free, injective, structures, injective_structures)


def base_resolution(res: Resolution) -> Resolution:
    """An injective resolution over C # H or D # H*, read on the base category."""
    if res.structured is None:
        return res
    terms = [S.base for S in res.structured]
    maps = [ModuleMorphism(terms[i], terms[i + 1], dict(d.component)) for i, d in enumerate(res.maps)]
    augmentation = ModuleMorphism(_augmentation_source(res), terms[0], dict(res.augmentation.component))
    return Resolution(res.kind, res.context, augmentation.source, ChainComplex(res.context, terms, maps, True),
                      augmentation, res.length, res.structured)


def _augmentation_source(res: Resolution) -> CatModule:
    S = res.module
    if res.context == MOD_SMASH:
        return equivariant.from_smash(S, res.structured[0].hcat).base
    return relhopf.from_dual_smash(S, res.structured[0].coh).base


def derived_fixed_points(kind: str, M, n: int) -> List[int]:
    """
    R^p of invariants (Ext_H(K, M)) or of coinvariants (Ext_{H*}(K, M)), p = 0..n.

    Raises:
        ComputationMismatch: If R^0 differs from the fixed subspace of M.
    """
    if kind == INVARIANTS:
        if not isinstance(M, HModule):
            raise StructureError("Derived invariants need an HModule")
        result = ext_groups(hrep.trivial_module(M.hopf), M, H_MOD, n).dims
        expected = hrep.invariants(M).shape[1]
    elif kind == COINVARIANTS:
        if not isinstance(M, HComodule):
            raise StructureError("Derived coinvariants need an HComodule")
        result = ext_groups(hrep.trivial_comodule(M.hopf), M, COMOD_H, n).dims
        expected = hrep.coinvariants(M).shape[1]
    else:
        raise ValueError(f"Unknown fixed-point functor {kind!r}")
    if result[0] != expected:
        raise ComputationMismatch(f"R^0 has dim {result[0]}, the fixed subspace has dim {expected}")
    return result


def outer_algebra(kind: str, hopf: HopfAlgebra) -> HopfAlgebra:
    """The algebra whose modules compute the given fixed points."""
    return hopf if kind == INVARIANTS else dual_hopf(hopf)
