"""
Named Hopf algebras, categories and modules shared by the task documents and the tests.

    F1       Q[C2] on {e, g}
    F2       F2[C2] on {e, g}
    F3       Sweedler's algebra over Q on {1, g, x, gx}
    C1       one object "*" with End = K, H acting trivially
    C2fix    one object "o" with End = K[x]/(x^2), g.x = -x
    C3       objects A, B with Hom(A, B) = K.alpha, g.alpha = -alpha
    D1       C3 as a co-F1-category, rho(alpha) = alpha (x) g

Module fixtures: T, R, signT over C2fix; trivial over C1; M1 and M1_shifted over D1.
"""

import functools
from typing import Dict

from util import equivariant, exactlin, hopf, hrep
from util.catmod import LEFT, RIGHT, CatModule
from util.equivariant import EquivModule
from util.errors import StructureError
from util.exactlin import FieldSpec
from util.hcat import CoHCategory, HCategory, LinCategory, build_category
from util.hopf import HopfAlgebra
from util.relhopf import RelHopfModule

C2_TABLE = ((0, 1), (1, 0))
C2_LABELS = ("e", "g")

HOPF_FIXTURES = ("F1", "F2", "F3")
CATEGORY_FIXTURES = ("C1", "C2fix", "C3", "D1")
MODULE_FIXTURES = {
    "T": "C2fix",
    "R": "C2fix",
    "signT": "C2fix",
    "trivial": "C1",
    "M1": "D1",
    "M1_shifted": "D1",
}


@functools.lru_cache(maxsize=None)
def named_hopf(name: str) -> HopfAlgebra:
    """
    Raises:
        StructureError: For a name outside HOPF_FIXTURES.
    """
    if name == "F1":
        return hopf.group_algebra(FieldSpec.rationals(), C2_TABLE, C2_LABELS)
    if name == "F2":
        return hopf.group_algebra(FieldSpec.prime(2), C2_TABLE, C2_LABELS)
    if name == "F3":
        return hopf.sweedler(FieldSpec.rationals())
    raise StructureError(f"Unknown Hopf algebra fixture {name!r}")


def _diagonal(field: FieldSpec, values) -> exactlin.Matrix:
    n = len(values)
    A = exactlin.zeros(field, n, n)
    for i, v in enumerate(values):
        A[i, i] = field.coerce(v)
    return A


def _c2_action(H: HopfAlgebra, g_values) -> tuple:
    """e acts as the identity, g diagonally."""
    F = H.field
    return exactlin.identity(F, len(g_values)), _diagonal(F, g_values)


def _two_object_base(field: FieldSpec) -> LinCategory:
    return build_category(field, ["A", "B"],
                          {("A", "A"): ["id_A"], ("B", "B"): ["id_B"], ("A", "B"): ["alpha"]},
                          {}, {"A": "id_A", "B": "id_B"}, "C3")


def named_category(name: str, H: HopfAlgebra = None):
    """
    An H-category (C1, C2fix, C3) or co-H-category (D1).

    C1 works over any Hopf algebra, defaulting to F2; the others need a group
    algebra of C2 on (e, g) and default to F1.

    Raises:
        StructureError: For an unknown name or an unsuitable Hopf algebra.
    """
    if name == "C1":
        return _category(name, H or named_hopf("F2"))
    if name not in CATEGORY_FIXTURES:
        raise StructureError(f"Unknown category fixture {name!r}")
    return _category(name, H or named_hopf("F1"))


@functools.lru_cache(maxsize=None)
def _category(name: str, H: HopfAlgebra):
    if name == "C1":
        base = build_category(H.field, ["*"], {("*", "*"): ["id"]}, {}, {"*": "id"}, "C1")
        key = ("*", "*")
        return HCategory(base, H, {key: tuple(hrep.trivial_module(H).action)})
    if H.labels != C2_LABELS or H.dim != 2:
        raise StructureError(f"{name} needs the group algebra of C2 on (e, g)")
    F = H.field
    if name == "C2fix":
        base = build_category(F, ["o"], {("o", "o"): ["1", "x"]}, {("x", "x"): {}}, {"o": "1"}, "C2fix")
        return HCategory(base, H, {("o", "o"): _c2_action(H, [1, -1])})
    base = _two_object_base(F)
    if name == "C3":
        action = {key: _c2_action(H, [1] * base.hom_dim(*key)) for key in base.keys()}
        action[("A", "B")] = _c2_action(H, [-1])
        return HCategory(base, H, action)
    coaction = {key: hrep.trivial_comodule(H, base.hom_dim(*key)).coaction for key in base.keys()}
    coaction[("A", "B")] = hrep.graded_line(H, "g").coaction
    return CoHCategory(base, H, coaction)


def _one_dim_right(C: LinCategory, values: Dict[str, object], name: str) -> CatModule:
    F = C.field
    action = {key: tuple(exactlin.matrix(F, [[values[label]]]) for label in C.hom_basis[key]) for key in C.keys()}
    return CatModule(C, RIGHT, {X: 1 for X in C.objects}, action, name)


def named_module(name: str, category=None):
    """
    A module fixture over its category fixture (or the given category of that shape).

    Raises:
        StructureError: For an unknown module name.
    """
    if name not in MODULE_FIXTURES:
        raise StructureError(f"Unknown module fixture {name!r}")
    C = category or named_category(MODULE_FIXTURES[name])
    H = C.hopf
    if name == "R":
        return equivariant.equivariant_representable(C, "o")
    if name in ("T", "signT"):
        base = _one_dim_right(C.base, {"1": 1, "x": 0}, name)
        g = 1 if name == "T" else -1
        return EquivModule(C, base, {"o": hrep.character_module(H, [1, g])})
    if name == "trivial":
        base = _one_dim_right(C.base, {"id": 1}, name)
        return equivariant.trivial_equivariant(C, base)
    return _graded_m1(C, name)


def _graded_m1(D: CoHCategory, name: str) -> RelHopfModule:
    """m0 at A and m1 at B with alpha . m0 = m1; M1_shifted moves both degrees by g."""
    C, H, F = D.base, D.hopf, D.base.field
    one = exactlin.matrix(F, [[1]])
    action = {key: tuple(one.copy() for _ in C.hom_basis[key]) for key in C.keys()}
    base = CatModule(C, LEFT, {"A": 1, "B": 1}, action, name)
    degrees = ("e", "g") if name == "M1" else ("g", "e")
    hcomod = {X: hrep.graded_line(H, label) for X, label in zip(("A", "B"), degrees)}
    return RelHopfModule(D, base, hcomod)

