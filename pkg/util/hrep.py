"""
Finite-dimensional H-modules and H-comodules.

An HModule holds one action matrix per basis element of H. An HComodule holds
its coaction as a (d*n) x d matrix: row a*n + i, column b is the coefficient of
v_a (x) e_i in rho(v_b).
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from util import exactlin
from util.errors import DimensionMismatch, StructureError
from util.exactlin import Matrix
from util.hopf import HopfAlgebra, dual_hopf

logger = logging.getLogger(__name__)

MODULE = "module"
COMODULE = "comodule"
TO_DUAL_MODULE = "to_dual_module"
TO_COMODULE = "to_comodule"


@dataclass(frozen=True, eq=False)
class HModule:
    hopf: HopfAlgebra
    dim: int
    action: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if len(self.action) != self.hopf.dim:
            raise DimensionMismatch(f"{len(self.action)} action matrices for a {self.hopf.dim}-dimensional H")
        for A in self.action:
            if A.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Action matrix of shape {A.shape} on a {self.dim}-dimensional carrier")

    def act(self, h: np.ndarray) -> Matrix:
        """Matrix of a general element h of H."""
        return exactlin.linear_combination(self.hopf.field, h, self.action, (self.dim, self.dim))


@dataclass(frozen=True, eq=False)
class HComodule:
    hopf: HopfAlgebra
    dim: int
    coaction: Matrix

    def __post_init__(self) -> None:
        if self.coaction.shape != (self.dim * self.hopf.dim, self.dim):
            raise DimensionMismatch(f"Coaction of shape {self.coaction.shape} on a {self.dim}-dimensional carrier")

    def component(self, i: int) -> Matrix:
        """The coefficient map v -> (id (x) e_i*) rho(v)."""
        return self.coaction[i::self.hopf.dim, :]


Rep = Union[HModule, HComodule]


def module_from_matrices(H: HopfAlgebra, mats: Sequence[Sequence[Sequence]]) -> HModule:
    F = H.field
    action = tuple(exactlin.matrix(F, m, cols=len(m)) for m in mats)
    dim = action[0].shape[0] if action else 0
    return HModule(H, dim, action)


def character_module(H: HopfAlgebra, values: Sequence) -> HModule:
    """One-dimensional module on which e_i acts by values[i]."""
    F = H.field
    return HModule(H, 1, tuple(exactlin.matrix(F, [[v]]) for v in values))


def trivial_module(H: HopfAlgebra, dim: int = 1) -> HModule:
    F = H.field
    return HModule(H, dim, tuple(exactlin.scale(F, H.counit[i], exactlin.identity(F, dim)) for i in range(H.dim)))


def regular_module(H: HopfAlgebra) -> HModule:
    """H acting on itself by left multiplication."""
    F, n = H.field, H.dim
    action = []
    for i in range(n):
        A = exactlin.zeros(F, n, n)
        for j in range(n):
            A[:, j] = H.mult[i, j, :]
        action.append(A)
    return HModule(H, n, tuple(action))


def trivial_comodule(H: HopfAlgebra, dim: int = 1) -> HComodule:
    return graded_comodule(H, [H.unit] * dim)


def graded_comodule(H: HopfAlgebra, degrees: Sequence[np.ndarray]) -> HComodule:
    """Comodule with rho(v_a) = v_a (x) degrees[a]; each degree must be grouplike."""
    F, n, d = H.field, H.dim, len(degrees)
    rho = exactlin.zeros(F, d * n, d)
    for a, g in enumerate(degrees):
        rho[a * n:(a + 1) * n, a] = g
    return HComodule(H, d, rho)


def graded_line(H: HopfAlgebra, label: str) -> HComodule:
    return graded_comodule(H, [H.basis_vector(H.index(label))])


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_rep(kind: str, data: Rep) -> List[str]:
    """
    Check the module or comodule axioms exactly.

    Returns:
        List[str]: Violations, empty when the structure is valid.
    """
    if kind == MODULE:
        return validate_module(data)
    if kind == COMODULE:
        return validate_comodule(data)
    raise ValueError(f"Unknown representation kind {kind!r}")


def validate_module(M: HModule) -> List[str]:
    H, F = M.hopf, M.hopf.field
    report = []
    if not exactlin.equal(M.act(H.unit), exactlin.identity(F, M.dim)):
        report.append("the unit of H does not act as the identity")
    for i in range(H.dim):
        for j in range(H.dim):
            left = exactlin.matmul(F, M.action[i], M.action[j])
            right = M.act(H.mult[i, j, :])
            if not exactlin.equal(left, right):
                report.append(f"representation law fails: {H.labels[i]}.{H.labels[j]} "
                              f"does not act as the product")
    return report


def validate_comodule(M: HComodule) -> List[str]:
    H, F, n, d = M.hopf, M.hopf.field, M.hopf.dim, M.dim
    report = []
    # (rho (x) id) rho versus (id (x) Delta) rho, compared on each basis vector.
    for b in range(d):
        left = np.full((d, n, n), F.zero, dtype=object)
        right = np.full((d, n, n), F.zero, dtype=object)
        for a in range(d):
            for i in range(n):
                c = M.coaction[a * n + i, b]
                if c == 0:
                    continue
                right[a] = right[a] + H.comult[i] * c
                for a2 in range(d):
                    left[a2, :, i] = left[a2, :, i] + M.coaction[a2 * n:(a2 + 1) * n, a] * c
        if not exactlin.equal(F.normalize(left), F.normalize(right)):
            report.append(f"coassociativity of the coaction fails on v{b}")
    counit_applied = exactlin.zeros(F, d, d)
    for i in range(n):
        counit_applied = counit_applied + M.component(i) * H.counit[i]
    if not exactlin.equal(F.normalize(counit_applied), exactlin.identity(F, d)):
        report.append("counit law of the coaction fails")
    return report


# ---------------------------------------------------------------------------
# Fixed points
# ---------------------------------------------------------------------------

def invariants(M: HModule) -> Matrix:
    """Basis (columns) of {m : hm = epsilon(h)m for every basis h}."""
    F, H = M.hopf.field, M.hopf
    I = exactlin.identity(F, M.dim)
    stacked = exactlin.vstack(F, [exactlin.sub(F, A, exactlin.scale(F, H.counit[i], I))
                                  for i, A in enumerate(M.action)], M.dim)
    return exactlin.kernel_basis(F, stacked)


def coinvariants(M: HComodule) -> Matrix:
    """Basis (columns) of {m : rho(m) = m (x) 1}."""
    F, H = M.hopf.field, M.hopf
    return exactlin.kernel_basis(F, exactlin.sub(F, M.coaction, _unit_coaction(H, M.dim)))


def _unit_coaction(H: HopfAlgebra, d: int) -> Matrix:
    return trivial_comodule(H, d).coaction


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def _same_hopf(M: Rep, N: Rep) -> None:
    if M.hopf is not N.hopf:
        raise StructureError("Representations over different Hopf algebras")


def tensor_rep(kind: str, M: Rep, N: Rep) -> Rep:
    """
    Tensor product with the diagonal action (modules) or the multiplied coaction
    rho(m (x) n) = sum m0 (x) n0 (x) m1 n1 (comodules). Basis index a*dim(N) + b.
    """
    _same_hopf(M, N)
    H, F = M.hopf, M.hopf.field
    if kind == MODULE:
        action = []
        for i in range(H.dim):
            A = exactlin.zeros(F, M.dim * N.dim, M.dim * N.dim)
            for j, k, c in H.coproduct_terms(i):
                A = A + exactlin.kron(F, M.action[j], N.action[k]) * c
            action.append(F.normalize(A))
        return HModule(H, M.dim * N.dim, tuple(action))
    if kind == COMODULE:
        n = H.dim
        rho = exactlin.zeros(F, M.dim * N.dim * n, M.dim * N.dim)
        for i in range(n):
            for j in range(n):
                prod = H.mult[i, j, :]
                if exactlin.is_zero(prod):
                    continue
                block = exactlin.kron(F, M.component(i), N.component(j))
                for t in np.nonzero(prod != 0)[0]:
                    rho[t::n, :] = rho[t::n, :] + block * prod[t]
        return HComodule(H, M.dim * N.dim, F.normalize(rho))
    raise ValueError(f"Unknown representation kind {kind!r}")


def hom_hmodule(V: HModule, W: HModule) -> HModule:
    """
    Hom_K(V, W) with (hf)(v) = sum h1 f(S(h2) v).

    A map f is flattened row-major: coordinate w*dim(V) + v holds f[w, v].
    """
    _same_hopf(V, W)
    H, F = V.hopf, V.hopf.field
    size = V.dim * W.dim
    action = []
    for i in range(H.dim):
        A = exactlin.zeros(F, size, size)
        for j, k, c in H.coproduct_terms(i):
            twisted = V.act(H.antipode[:, k])
            A = A + exactlin.kron(F, W.action[j], twisted.T) * c
        action.append(F.normalize(A))
    return HModule(H, size, tuple(action))


def flatten_map(f: Matrix) -> Matrix:
    return f.reshape(f.shape[0] * f.shape[1], 1)


def hmodule_hom_basis(V: HModule, W: HModule) -> List[Matrix]:
    """H-linear maps V -> W, solved directly from A_W(h) f = f A_V(h)."""
    _same_hopf(V, W)
    F = V.hopf.field
    blocks = []
    for A, B in zip(V.action, W.action):
        blocks.append(exactlin.sub(F, exactlin.kron(F, B, exactlin.identity(F, V.dim)),
                                   exactlin.kron(F, exactlin.identity(F, W.dim), A.T)))
    K = exactlin.kernel_basis(F, exactlin.vstack(F, blocks, V.dim * W.dim))
    return [K[:, k].reshape(W.dim, V.dim) for k in range(K.shape[1])]


def comodule_hom_basis(V: HComodule, W: HComodule) -> List[Matrix]:
    """Colinear maps V -> W: one intertwining condition per coefficient map."""
    _same_hopf(V, W)
    F = V.hopf.field
    blocks = []
    for i in range(V.hopf.dim):
        blocks.append(exactlin.sub(F, exactlin.kron(F, W.component(i), exactlin.identity(F, V.dim)),
                                   exactlin.kron(F, exactlin.identity(F, W.dim), V.component(i).T)))
    K = exactlin.kernel_basis(F, exactlin.vstack(F, blocks, V.dim * W.dim))
    return [K[:, k].reshape(W.dim, V.dim) for k in range(K.shape[1])]


def direct_sum(reps: Sequence[Rep], hopf: HopfAlgebra) -> Rep:
    F = hopf.field
    if reps and isinstance(reps[0], HComodule):
        n = hopf.dim
        d = sum(R.dim for R in reps)
        rho = exactlin.zeros(F, d * n, d)
        offset = 0
        for R in reps:
            for i in range(n):
                comp = R.component(i)
                for a in range(R.dim):
                    rho[(offset + a) * n + i, offset:offset + R.dim] = comp[a, :]
            offset += R.dim
        return HComodule(hopf, d, rho)
    action = tuple(exactlin.block_diagonal(F, [R.action[i] for R in reps]) for i in range(hopf.dim))
    return HModule(hopf, sum(R.dim for R in reps), action)


def restrict(rep: Rep, Z: Matrix, B: Matrix = None) -> Rep:
    """
    Induced structure on span(Z)/span(B), on the representatives chosen by subquotient.

    With B omitted this is the restriction to the subspace spanned by the columns of Z.

    Raises:
        InconsistentComplex: If the subquotient is not stable under the structure.
    """
    F, H = rep.hopf.field, rep.hopf
    B = exactlin.zeros(F, rep.dim, 0) if B is None else B
    dim, reps = exactlin.subquotient(F, Z, B)
    if isinstance(rep, HModule):
        action = tuple(exactlin.quotient_coordinates(F, reps, B, exactlin.matmul(F, A, reps))
                       for A in rep.action)
        return HModule(H, dim, action)
    n = H.dim
    rho = exactlin.zeros(F, dim * n, dim)
    for i in range(n):
        rho[i::n, :] = exactlin.quotient_coordinates(F, reps, B, exactlin.matmul(F, rep.component(i), reps))
    return HComodule(H, dim, rho)


def comodule_dual_correspondence(direction: str, X: Rep) -> Rep:
    """
    Translate between right H-comodules and (rational) left H*-modules.

    to_dual_module: e_i* acts by the coefficient map of e_i, h*m = sum h*(m1) m0.
    to_comodule: rho(m) = sum e_i* m (x) e_i, where X is a module over dual_hopf(H).
    """
    if direction == TO_DUAL_MODULE:
        dual = dual_hopf(X.hopf)
        return HModule(dual, X.dim, tuple(X.component(i).copy() for i in range(X.hopf.dim)))
    if direction == TO_COMODULE:
        H = dual_hopf(X.hopf)
        n = H.dim
        rho = exactlin.zeros(H.field, X.dim * n, X.dim)
        for i in range(n):
            rho[i::n, :] = X.action[i]
        return HComodule(H, X.dim, rho)
    raise ValueError(f"Unknown correspondence direction {direction!r}")


def locally_finite_part(M: HModule) -> Tuple[HModule, List[int]]:
    """
    M^(H) together with dim(H m) for each basis vector m.

    On a finite-dimensional carrier every cyclic submodule is finite, so the first
    component is M itself.
    """
    F = M.hopf.field
    cyclic = []
    for b in range(M.dim):
        e = exactlin.identity(F, M.dim)[:, [b]]
        orbit = exactlin.hstack(F, [exactlin.matmul(F, A, e) for A in M.action], M.dim)
        cyclic.append(exactlin.rank(F, orbit))
    return M, cyclic
