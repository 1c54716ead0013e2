"""
Double complexes, spectral sequence pages and the Grothendieck spectral sequences
for equivariant modules and relative Hopf modules.

Differentials of a DoubleComplex anticommute. Pages are computed on the total
complex: for a filtration F^s by coordinate subspaces,

    Z_r = F^s ∩ D^-1(F^{s+r}),   B_r = F^s ∩ D(F^{s-r+1}),
    E_r = (Z_r + F^{s+1}) / (B_r + F^{s+1}),

and d_r is induced by D on representatives. Column pages sit at (p, q) with
filtration degree p; row pages at (p, q) with filtration degree q.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from util import catmod, equivariant, exactlin, homological, hrep, relhopf
from util.catmod import HomSpace, ModuleMorphism
from util.equivariant import EquivModule
from util.errors import InconsistentComplex, StructureError
from util.exactlin import FieldSpec, Matrix
from util.hcat import ALGEBRA_OBJECT
from util.homological import COINVARIANTS, INVARIANTS
from util.relhopf import RelHopfModule

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]

COLUMN = "column"
ROW = "row"

T3_15 = "T3_15"
T4_18 = "T4_18"
T4_19 = "T4_19"
T5_9 = "T5_9"
T5_17 = "T5_17"
THEOREMS = (T3_15, T4_18, T4_19, T5_9, T5_17)


@dataclass(frozen=True, eq=False)
class DoubleComplex:
    """
    A first-quadrant grid with anticommuting differentials.

    horizontal[(p, q)] maps cell (p, q) to (p+1, q); vertical[(p, q)] maps (p, q)
    to (p, q+1). Missing maps are zero.
    """
    field: FieldSpec
    columns: int
    rows: int
    dims: Dict[Cell, int]
    horizontal: Dict[Cell, Matrix] = dc_field(default_factory=dict)
    vertical: Dict[Cell, Matrix] = dc_field(default_factory=dict)

    @classmethod
    def from_commuting(cls, field: FieldSpec, columns: int, rows: int, dims: Dict[Cell, int],
                       horizontal: Dict[Cell, Matrix], vertical: Dict[Cell, Matrix]) -> "DoubleComplex":
        """Twist the vertical maps by (-1)^p so that commuting squares anticommute."""
        twisted = {(p, q): (exactlin.scale(field, -1, A) if p % 2 else A) for (p, q), A in vertical.items()}
        return cls(field, columns, rows, dims, dict(horizontal), twisted)

    def dim(self, p: int, q: int) -> int:
        if 0 <= p < self.columns and 0 <= q < self.rows:
            return self.dims.get((p, q), 0)
        return 0

    def h(self, p: int, q: int) -> Matrix:
        A = self.horizontal.get((p, q))
        return A if A is not None else exactlin.zeros(self.field, self.dim(p + 1, q), self.dim(p, q))

    def v(self, p: int, q: int) -> Matrix:
        A = self.vertical.get((p, q))
        return A if A is not None else exactlin.zeros(self.field, self.dim(p, q + 1), self.dim(p, q))

    def cells(self):
        for p in range(self.columns):
            for q in range(self.rows):
                yield p, q

    def validate(self) -> List[str]:
        """d_h^2 = 0, d_v^2 = 0 and d_h d_v + d_v d_h = 0 on every cell."""
        F = self.field
        report = []
        for p, q in self.cells():
            for key, A in (("h", self.h(p, q)), ("v", self.v(p, q))):
                expected = (self.dim(p + 1, q), self.dim(p, q)) if key == "h" else (self.dim(p, q + 1), self.dim(p, q))
                if A.shape != expected:
                    report.append(f"{key} at ({p},{q}) has shape {A.shape}, expected {expected}")
            if report:
                continue
            if not exactlin.is_zero(exactlin.matmul(F, self.h(p + 1, q), self.h(p, q))):
                report.append(f"d_h^2 != 0 at ({p},{q})")
            if not exactlin.is_zero(exactlin.matmul(F, self.v(p, q + 1), self.v(p, q))):
                report.append(f"d_v^2 != 0 at ({p},{q})")
            square = exactlin.add(F, exactlin.matmul(F, self.h(p, q + 1), self.v(p, q)),
                                  exactlin.matmul(F, self.v(p + 1, q), self.h(p, q)))
            if not exactlin.is_zero(square):
                report.append(f"differentials do not anticommute at ({p},{q})")
        return report


@dataclass(frozen=True, eq=False)
class TotalComplex:
    field: FieldSpec
    dims: List[int]
    offsets: Dict[Cell, int]
    differentials: List[Matrix]

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def dim(self, t: int) -> int:
        return self.dims[t] if 0 <= t <= self.top else 0

    def d(self, t: int) -> Matrix:
        if 0 <= t < len(self.differentials):
            return self.differentials[t]
        return exactlin.zeros(self.field, self.dim(t + 1), self.dim(t))


def total_complex(D: DoubleComplex) -> TotalComplex:
    """Tot^t = sum over p + q = t, with differential d_h + d_v."""
    F = D.field
    top = max(D.columns + D.rows - 2, 0)
    dims, offsets = [], {}
    for t in range(top + 1):
        offset = 0
        for p in range(D.columns):
            q = t - p
            if 0 <= q < D.rows:
                offsets[(p, q)] = offset
                offset += D.dim(p, q)
        dims.append(offset)
    differentials = []
    for t in range(top):
        A = exactlin.zeros(F, dims[t + 1], dims[t])
        for p in range(D.columns):
            q = t - p
            if not 0 <= q < D.rows or D.dim(p, q) == 0:
                continue
            o = offsets[(p, q)]
            width = D.dim(p, q)
            if p + 1 < D.columns and D.dim(p + 1, q):
                r = offsets[(p + 1, q)]
                A[r:r + D.dim(p + 1, q), o:o + width] = D.h(p, q)
            if q + 1 < D.rows and D.dim(p, q + 1):
                r = offsets[(p, q + 1)]
                A[r:r + D.dim(p, q + 1), o:o + width] = D.v(p, q)
        differentials.append(A)
    return TotalComplex(F, dims, offsets, differentials)


def total_cohomology(D: DoubleComplex) -> List[int]:
    T = total_complex(D)
    F = D.field
    result = []
    for t in range(T.top + 1):
        incoming = exactlin.rank(F, T.d(t - 1)) if t > 0 else 0
        result.append(T.dim(t) - exactlin.rank(F, T.d(t)) - incoming)
    return result


# ---------------------------------------------------------------------------
# Pages
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SSPage:
    filtration: str
    r: int
    dims: Dict[Cell, int]
    differentials: Dict[Cell, Matrix]

    def target(self, cell: Cell) -> Cell:
        p, q = cell
        if self.filtration == COLUMN:
            return p + self.r, q - self.r + 1
        return p - self.r + 1, q + self.r

    def total(self, t: int) -> int:
        return sum(d for (p, q), d in self.dims.items() if p + q == t)


class _Filtered:
    """The total complex with coordinate filtration subspaces."""

    def __init__(self, D: DoubleComplex, filtration: str) -> None:
        self.D = D
        self.T = total_complex(D)
        self.F = D.field
        self.filtration = filtration

    def degree(self, cell: Cell) -> int:
        return cell[0] if self.filtration == COLUMN else cell[1]

    def cell(self, s: int, t: int) -> Cell:
        return (s, t - s) if self.filtration == COLUMN else (t - s, s)

    def in_grid(self, s: int, t: int) -> bool:
        p, q = self.cell(s, t)
        return 0 <= p < self.D.columns and 0 <= q < self.D.rows and 0 <= t <= self.T.top

    def _coords(self, t: int, s: int, inside: bool) -> List[int]:
        result = []
        if not 0 <= t <= self.T.top:
            return result
        for cell, offset in self.T.offsets.items():
            if cell[0] + cell[1] != t:
                continue
            if (self.degree(cell) >= s) == inside:
                result.extend(range(offset, offset + self.D.dim(*cell)))
        return np.array(sorted(result), dtype=int)

    def sub(self, t: int, s: int) -> Matrix:
        """Columns spanning F^s in degree t."""
        n = self.T.dim(t)
        return exactlin.identity(self.F, n)[:, self._coords(t, s, True)]

    def outside(self, t: int, s: int) -> Matrix:
        """Rows reading the coordinates outside F^s in degree t."""
        n = self.T.dim(t)
        return exactlin.identity(self.F, n)[self._coords(t, s, False), :]

    def cycles(self, s: int, t: int, r: int) -> Matrix:
        F = self.F
        Fs = self.sub(t, s)
        constraint = exactlin.matmul(F, self.outside(t + 1, s + r), exactlin.matmul(F, self.T.d(t), Fs))
        return exactlin.matmul(F, Fs, exactlin.kernel_basis(F, constraint))

    def boundaries(self, s: int, t: int, start: int) -> Matrix:
        """F^s ∩ D(F^start) in degree t."""
        F = self.F
        if t == 0:
            return exactlin.zeros(F, self.T.dim(0), 0)
        image = exactlin.matmul(F, self.T.d(t - 1), self.sub(t - 1, start))
        inside = exactlin.kernel_basis(F, exactlin.matmul(F, self.outside(t, s), image))
        return exactlin.matmul(F, image, inside)

    def term(self, s: int, t: int, r: int) -> Tuple[int, Matrix, Matrix]:
        """(dim E_r, representatives, the subspace quotiented out)."""
        F = self.F
        n = self.T.dim(t)
        Z = self.cycles(s, t, r)
        B = exactlin.hstack(F, [self.boundaries(s, t, s - r + 1), self.sub(t, s + 1)], n)
        dim, reps = exactlin.subquotient(F, exactlin.hstack(F, [Z, B], n), B)
        return dim, reps, B


def _pages(D: DoubleComplex, filtration: str, r_max: int) -> List[SSPage]:
    X = _Filtered(D, filtration)
    F = D.field
    top = X.T.top
    pages = []
    for r in range(r_max + 1):
        terms = {}
        for t in range(top + 1):
            for s in range(t + 1):
                if X.in_grid(s, t):
                    terms[(s, t)] = X.term(s, t, r)
        dims, diffs = {}, {}
        for (s, t), (dim, reps, _) in terms.items():
            cell = X.cell(s, t)
            dims[cell] = dim
            target = terms.get((s + r, t + 1))
            if target is None:
                diffs[cell] = exactlin.zeros(F, 0, dim)
                continue
            images = exactlin.matmul(F, X.T.d(t), reps)
            diffs[cell] = exactlin.quotient_coordinates(F, target[1], target[2], images)
        page = SSPage(filtration, r, dims, diffs)
        _check_page(F, page, pages[-1] if pages else None)
        pages.append(page)
    return pages


def _check_page(field: FieldSpec, page: SSPage, previous: Optional[SSPage]) -> None:
    for cell, A in page.differentials.items():
        onward = page.differentials.get(page.target(cell))
        if onward is not None and not exactlin.is_zero(exactlin.matmul(field, onward, A)):
            raise InconsistentComplex(f"d_{page.r}^2 != 0 at {cell} ({page.filtration})")
    if previous is None:
        return
    incoming = {previous.target(cell): A for cell, A in previous.differentials.items()}
    for cell, dim in page.dims.items():
        out = exactlin.rank(field, previous.differentials[cell])
        into = exactlin.rank(field, incoming[cell]) if cell in incoming else 0
        expected = previous.dims[cell] - out - into
        if dim != expected:
            raise InconsistentComplex(f"E_{page.r} at {cell} has dim {dim}, the homology of E_{previous.r} "
                                      f"has dim {expected} ({page.filtration})")


def pages_for(pages: List[SSPage], filtration: str) -> List[SSPage]:
    return [page for page in pages if page.filtration == filtration]


def ss_from_double_complex(D: DoubleComplex, r_max: int = None) -> List[SSPage]:
    """
    Pages E_0..E_{r_max} for the column filtration followed by those for the row
    filtration.

    Raises:
        InconsistentComplex: If D is not a double complex, if some d_r squares to a
            nonzero map, or if the last pages do not add up to the total cohomology.
    """
    problems = D.validate()
    if problems:
        raise InconsistentComplex("; ".join(problems))
    r_max = max(D.columns, D.rows) + 1 if r_max is None else r_max
    pages = _pages(D, COLUMN, r_max) + _pages(D, ROW, r_max)
    totals = total_cohomology(D)
    for filtration in (COLUMN, ROW):
        last = pages_for(pages, filtration)[-1]
        for t, h in enumerate(totals):
            if last.total(t) != h:
                raise InconsistentComplex(f"{filtration} E_{last.r} gives {last.total(t)} in degree {t}, "
                                          f"total cohomology is {h}")
    logger.debug(f"Pages up to E_{r_max} on a {D.columns}x{D.rows} grid, total cohomology {totals}")
    return pages


# ---------------------------------------------------------------------------
# Grothendieck spectral sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Coefficients:
    """
    The cochain complex A^q of modules over the outer algebra B, with
    maps[q]: A^q -> A^{q+1} on the bases of the A^q.
    """
    outer: str
    modules: List[hrep.HModule]
    maps: List[Matrix]


@dataclass(frozen=True, eq=False)
class GrothendieckResult:
    theorem: str
    degree: int
    e2: Dict[Cell, int]
    e2_grid: Dict[Cell, int]
    e_inf: Dict[Cell, int]
    abutment: List[int]
    total: List[int]
    unreliable: List[Cell]
    checks: Dict[str, Optional[bool]]
    mismatches: List[str]
    pages: List[SSPage] = dc_field(default_factory=list)

    @property
    def reliable_through(self) -> int:
        return self.degree - 1

    @property
    def verdict(self) -> bool:
        return not self.mismatches


def _equivariant_coefficients(M: EquivModule, N: EquivModule, n: int) -> Coefficients:
    """A^q = Hom_C(M, I^q) with the conjugation action, I an injective resolution over C # H."""
    res = homological.injective_resolution(N, homological.MOD_SMASH, n)
    base = homological.base_resolution(res)
    actions = [equivariant.hom_h_action(M, I) for I in res.structured[:n + 1]]
    maps = []
    for q in range(n):
        images = [catmod.compose_morphisms(base.maps[q], eta) for eta in actions[q].space.basis]
        maps.append(_coords(actions[q + 1].space, images, actions[q].space.dim))
    return Coefficients(INVARIANTS, [a.module for a in actions], maps)


def _relhopf_coefficients(M: RelHopfModule, N: RelHopfModule, n: int) -> Coefficients:
    """A^q = HOM_D(M, I^q) read as H*-modules, I an injective resolution of relative Hopf modules."""
    res = homological.injective_resolution(N, homological.RELHOPF, n)
    base = homological.base_resolution(res)
    homs = [relhopf.rational_hom(M, I) for I in res.structured[:n + 1]]
    for q, hom in enumerate(homs):
        if not hom.rational:
            raise InconsistentComplex(f"The coaction on HOM(M, I^{q}) is not rational")
    maps = []
    for q in range(n):
        images = [catmod.compose_morphisms(base.maps[q], eta) for eta in homs[q].space.basis]
        maps.append(_coords(homs[q + 1].space, images, homs[q].space.dim))
    modules = [hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, h.comodule) for h in homs]
    return Coefficients(COINVARIANTS, modules, maps)


def _coords(space: HomSpace, images: List[ModuleMorphism], width: int) -> Matrix:
    if not images:
        return exactlin.zeros(space.source.field, space.dim, width)
    return space.coordinates_many(images)


def _outer_resolution(A: Coefficients, hopf, n: int) -> homological.Resolution:
    outer = homological.outer_algebra(A.outer, hopf)
    return homological.free_resolution(hrep.trivial_module(outer), homological.H_MOD, n)


def balanced_double_complex(A: Coefficients, Q: homological.Resolution, columns: int) -> DoubleComplex:
    """K^{p,q} = Hom_B(Q_p, A^q), horizontally precomposing with Q and vertically applying A."""
    targets = [catmod.algebra_module(V) for V in A.modules]
    field = targets[0].field
    rows = len(targets)
    spaces = {(p, q): catmod.module_hom_basis(Q.terms[p], targets[q]) for p in range(columns) for q in range(rows)}
    dims = {cell: space.dim for cell, space in spaces.items()}
    horizontal, vertical = {}, {}
    for (p, q), space in spaces.items():
        if p + 1 < columns:
            images = [catmod.compose_morphisms(phi, Q.maps[p]) for phi in space.basis]
            horizontal[(p, q)] = _coords(spaces[(p + 1, q)], images, space.dim)
        if q + 1 < rows:
            step = ModuleMorphism(targets[q], targets[q + 1], {ALGEBRA_OBJECT: A.maps[q]})
            images = [catmod.compose_morphisms(step, phi) for phi in space.basis]
            vertical[(p, q)] = _coords(spaces[(p, q + 1)], images, space.dim)
    return DoubleComplex.from_commuting(field, columns, rows, dims, horizontal, vertical)


def _single_column(A: Coefficients) -> DoubleComplex:
    field = A.modules[0].hopf.field
    dims = {(0, q): V.dim for q, V in enumerate(A.modules)}
    vertical = {(0, q): A_q for q, A_q in enumerate(A.maps)}
    return DoubleComplex(field, 1, len(A.modules), dims, {}, vertical)


def _compositional_e2(theorem: str, ext: homological.ExtResult, n: int) -> Dict[Cell, int]:
    """E_2^{p,q} = R^p(fixed points)(Ext^q) from the structured Ext groups."""
    if theorem in (T3_15, T5_17):
        structures = ext.structures
    else:
        structures = ext.injective_structures
    kind = COINVARIANTS if theorem in (T5_9, T5_17) else INVARIANTS
    table = {}
    for q, S in enumerate(structures):
        if theorem in (T4_18, T4_19):
            S, _ = hrep.locally_finite_part(S)
        if theorem == T4_19:
            table[(0, q)] = S.dim
            continue
        for p, dim in enumerate(homological.derived_fixed_points(kind, S, n - q)):
            table[(p, q)] = dim
    return table


def _edge_hom_dim(theorem: str, M, N) -> int:
    if theorem in (T3_15, T4_18):
        return catmod.module_hom_basis(equivariant.to_smash(M), equivariant.to_smash(N)).dim
    if theorem == T4_19:
        return catmod.module_hom_basis(M.base, N.base).dim
    return relhopf.relhopf_hom_basis(M, N).dim


def _check_inputs(theorem: str, M, N, n: int) -> None:
    if theorem not in THEOREMS:
        raise ValueError(f"Unknown theorem {theorem!r}, expected one of {', '.join(THEOREMS)}")
    if n < 1:
        raise ValueError("The spectral sequence needs degree at least 1")
    if theorem in (T5_9, T5_17):
        if not (isinstance(M, RelHopfModule) and isinstance(N, RelHopfModule)) or M.coh is not N.coh:
            raise StructureError(f"{theorem} needs two relative Hopf modules over the same co-H-category")
    elif not (isinstance(M, EquivModule) and isinstance(N, EquivModule)) or M.hcat is not N.hcat:
        raise StructureError(f"{theorem} needs two equivariant modules over the same H-category")


def grothendieck_ss(theorem: str, M, N, n: int) -> GrothendieckResult:
    """
    Build the spectral sequence of the given theorem from an explicit double
    complex and check it against the composite computation and the abutment.

    Cells with p + q >= n are reported but depend on the truncation, so the
    verdict only covers total degrees below n.

    Raises:
        ValueError: For an unknown theorem or degree below 1.
        StructureError: If the inputs do not fit the theorem.
        ComputationMismatch: If an internal Ext computation disagrees with itself.
    """
    _check_inputs(theorem, M, N, n)
    equivariant_case = theorem in (T3_15, T4_18, T4_19)
    hopf = M.hcat.hopf if equivariant_case else M.coh.hopf

    if equivariant_case:
        inner = homological.ext_groups(M, N, homological.MOD_C, n)
        A = _equivariant_coefficients(M, N, n)
        abut_context = homological.MOD_C if theorem == T4_19 else homological.MOD_SMASH
    else:
        inner = homological.ext_groups(M, N, homological.D_MOD, n)
        A = _relhopf_coefficients(M, N, n)
        abut_context = homological.RELHOPF
    abutment = homological.ext_groups(M, N, abut_context, n).dims

    if theorem == T4_19:
        D = _single_column(A)
    else:
        Q = _outer_resolution(A, hopf, n)
        D = balanced_double_complex(A, Q, n + 1)
    pages = ss_from_double_complex(D)
    column, row = pages_for(pages, COLUMN), pages_for(pages, ROW)
    e2_grid = column[2].dims if len(column) > 2 else column[-1].dims
    e_inf = column[-1].dims
    total = total_cohomology(D)

    def reliable(cell: Cell) -> bool:
        return cell[0] + cell[1] < n

    unreliable = sorted(cell for cell in e_inf if not reliable(cell))
    if unreliable:
        logger.warning(f"{theorem}: cells {unreliable} lie at or beyond total degree {n} and are unreliable")

    e2 = _compositional_e2(theorem, inner, n)
    mismatches, checks = [], {}

    for t in range(n):
        converged = sum(d for cell, d in e_inf.items() if sum(cell) == t)
        if converged != abutment[t]:
            mismatches.append(f"E_inf in total degree {t} sums to {converged}, Ext^{t} has dim {abutment[t]}")

    disagreements = [cell for cell in e2 if reliable(cell) and e2[cell] != e2_grid.get(cell, 0)]
    disagreements += [cell for cell, d in e2_grid.items() if reliable(cell) and cell not in e2 and d]
    checks["e2_agree"] = not disagreements
    for cell in sorted(set(disagreements)):
        mismatches.append(f"E_2{cell}: composite gives {e2.get(cell, 0)}, double complex gives {e2_grid.get(cell, 0)}")

    hom_dim = _edge_hom_dim(theorem, M, N)
    checks["edge_map"] = e2_grid.get((0, 0), 0) == hom_dim == abutment[0]
    if not checks["edge_map"]:
        mismatches.append(f"E_2(0,0) = {e2_grid.get((0, 0), 0)}, Hom has dim {hom_dim}, Ext^0 has dim {abutment[0]}")

    if all(d == 0 for (p, q), d in e2.items() if p >= 1 and reliable((p, q))):
        collapsed = all(abutment[t] == e2.get((0, t), 0) for t in range(n))
        checks["collapse"] = collapsed
        if not collapsed:
            mismatches.append("Fixed points are exact but Ext is not concentrated in the p = 0 column")
    else:
        checks["collapse"] = None

    row_e1 = row[1].dims
    stray = sorted(cell for cell, d in row_e1.items() if cell[0] >= 1 and reliable(cell) and d)
    checks["row_concentrated"] = not stray
    if stray:
        mismatches.append(f"Row filtration E_1 is nonzero off the p = 0 column at {stray}")

    if theorem in (T4_18, T5_9):
        partner = _compositional_e2(T3_15 if theorem == T4_18 else T5_17, inner, n)
        checks["tables_equal"] = partner == e2
        if partner != e2:
            mismatches.append(f"{theorem} E_2 differs from the free-route table: {e2} vs {partner}")

    for msg in mismatches:
        logger.error(f"{theorem}: {msg}")
    logger.info(f"{theorem} through degree {n}: abutment {abutment}, verdict {'pass' if not mismatches else 'fail'}")
    return GrothendieckResult(theorem, n, e2, dict(e2_grid), dict(e_inf), abutment, total[:n],
                              unreliable, checks, mismatches, pages)
