import itertools
import unittest

import numpy as np

from config.settings import DESK
from util import catmod, exactlin, hrep, relhopf
from util.catmod import LEFT, RIGHT, ModuleMorphism
from util.errors import StructureError
from util.fixtures import named_category, named_hopf, named_module


def brute_force_hom_dim(M, N, accept=None):
    """
    Count natural transformations over F_p by enumeration; dim = log_p(count).

    `accept` adds a further condition on each candidate, e.g. colinearity.
    """
    F = M.field
    objects = M.category.objects
    shapes = [(N.carrier[X], M.carrier[X]) for X in objects]
    total = sum(r * c for r, c in shapes)
    count = 0
    for entries in itertools.product(range(F.p), repeat=total):
        comps, offset = {}, 0
        for X, (r, c) in zip(objects, shapes):
            block = np.array(entries[offset:offset + r * c], dtype=object).reshape(r, c)
            comps[X] = block
            offset += r * c
        eta = ModuleMorphism(M, N, comps)
        if not catmod.validate_morphism(eta) and (accept is None or accept(eta)):
            count += 1
    dim = 0
    while F.p ** dim < count:
        dim += 1
    return dim


class TestCatModules(unittest.TestCase):
    def setUp(self):
        self.C2fix = named_category("C2fix").base
        self.C3 = named_category("C3").base

    def test_representables_are_modules(self):
        for C in (self.C2fix, self.C3):
            for X in C.objects:
                for side in (RIGHT, LEFT):
                    self.assertEqual(catmod.validate_module(catmod.representable(C, X, side)), [])

    def test_unknown_object(self):
        with self.assertRaises(StructureError):
            catmod.representable(self.C3, "Z", RIGHT)

    def test_broken_module(self):
        F = self.C2fix.field
        one = exactlin.identity(F, 1)
        bad = catmod.CatModule(self.C2fix, RIGHT, {"o": 1}, {("o", "o"): (one, one)}, "bad")
        report = catmod.validate_module(bad)
        self.assertIn("composition law fails on x o x", report)

    def test_yoneda(self):
        for C in (self.C2fix, self.C3):
            M = catmod.direct_sum([catmod.representable(C, X, RIGHT) for X in C.objects], C, RIGHT)
            for X in C.objects:
                hom = catmod.module_hom_basis(catmod.representable(C, X, RIGHT), M)
                self.assertEqual(hom.dim, M.carrier[X])

    def test_hom_from_t_into_representable(self):
        T = named_module("T").base
        h = catmod.representable(self.C2fix, "o", RIGHT)
        self.assertEqual(catmod.module_hom_basis(T, h).dim, 1)
        self.assertEqual(catmod.module_hom_basis(h, T).dim, 1)

    def test_hom_basis_solves_naturality(self):
        h = catmod.representable(self.C2fix, "o", RIGHT)
        hom = catmod.module_hom_basis(h, h)
        self.assertEqual(hom.dim, 2)
        for eta in hom.basis:
            self.assertEqual(catmod.validate_morphism(eta), [])

    def test_basis_when_hom_is_smaller_than_its_unknowns(self):
        T = named_module("T").base
        h = catmod.representable(self.C2fix, "o", RIGHT)
        hom = catmod.module_hom_basis(h, T)
        self.assertEqual(hom.matrix.shape, (2, 1))
        (eta,) = hom.basis
        self.assertEqual(eta.component["o"].shape, (1, 2))
        self.assertEqual(catmod.validate_morphism(eta), [])
        self.assertTrue(exactlin.equal(eta.flatten(), hom.matrix))
        self.assertTrue(exactlin.equal(hom.coordinates_many([eta]), exactlin.identity(T.field, 1)))

    def test_mixed_sides_rejected(self):
        with self.assertRaises(StructureError):
            catmod.module_hom_basis(catmod.representable(self.C3, "A", RIGHT),
                                    catmod.representable(self.C3, "A", LEFT))

    def test_kernel_and_cokernel(self):
        hA = catmod.representable(self.C3, "A", RIGHT)
        hB = catmod.representable(self.C3, "B", RIGHT)
        (alpha,) = catmod.module_hom_basis(hA, hB).basis
        pieces = catmod.morphism_kernel_cokernel(alpha)
        self.assertEqual(pieces.kernel.total_dim, 0)
        self.assertEqual(pieces.cokernel.carrier, {"A": 0, "B": 1})
        self.assertTrue(catmod.is_injective(alpha))
        self.assertTrue(catmod.is_surjective(pieces.projection))

    def test_non_natural_map_rejected(self):
        hA = catmod.representable(self.C3, "A", RIGHT)
        hB = catmod.representable(self.C3, "B", RIGHT)
        F = self.C3.field
        eta = ModuleMorphism(hB, hA, {"A": exactlin.identity(F, 1), "B": exactlin.zeros(F, 0, 1)})
        with self.assertRaises(StructureError):
            catmod.morphism_kernel_cokernel(eta)

    def test_generators(self):
        M = named_module("T").base
        gens, epi = catmod.generators(M)
        self.assertEqual(len(gens), 1)
        self.assertTrue(catmod.is_surjective(epi))
        self.assertEqual(catmod.validate_morphism(epi), [])

    def test_dual_module_switches_side(self):
        D = catmod.dual_module(catmod.representable(self.C2fix, "o", RIGHT))
        self.assertEqual(D.side, LEFT)
        self.assertEqual(catmod.validate_module(D), [])

    def test_algebra_module_round_trip(self):
        H = named_hopf("F3")
        M = catmod.algebra_module(hrep.regular_module(H))
        self.assertEqual(catmod.validate_module(M), [])
        back = catmod.as_hmodule(M, H)
        self.assertEqual(hrep.validate_module(back), [])
        with self.assertRaises(StructureError):
            catmod.as_hmodule(catmod.representable(self.C3, "A", LEFT), H)


class TestBruteForceOracle(unittest.TestCase):
    """Solved Hom dimensions against enumeration over F_2."""

    def setUp(self):
        self.H = named_hopf("F2")
        self.limit = DESK["oracle_max_dim"]

    def pairs(self):
        C2fix = named_category("C2fix", self.H).base
        C3 = named_category("C3", self.H).base
        h_o = catmod.representable(C2fix, "o", RIGHT)
        T = named_module("T", named_category("C2fix", self.H)).base
        hA, hB = (catmod.representable(C3, X, RIGHT) for X in ("A", "B"))
        _Ah = catmod.representable(C3, "A", LEFT)
        return [(h_o, h_o), (h_o, T), (T, h_o), (T, T), (hA, hB), (hB, hA), (hB, hB), (_Ah, _Ah)]

    def test_hom_dims_match_enumeration(self):
        checked = 0
        for M, N in self.pairs():
            unknowns = sum(M.carrier[X] * N.carrier[X] for X in M.category.objects)
            if unknowns > self.limit:
                continue
            self.assertEqual(catmod.module_hom_basis(M, N).dim, brute_force_hom_dim(M, N), (M.name, N.name))
            checked += 1
        self.assertGreater(checked, 0)


class TestColinearOracle(unittest.TestCase):
    """Colinear Hom dimensions over D1 against enumeration over F_2."""

    def setUp(self):
        self.D = named_category("D1", named_hopf("F2"))
        self.limit = DESK["oracle_max_dim"]

    def test_relhopf_hom_dims_match_enumeration(self):
        modules = [named_module(name, self.D) for name in ("M1", "M1_shifted")]
        modules += [relhopf.relhopf_representable(self.D, X) for X in ("A", "B")]
        checked = 0
        for M in modules:
            for N in modules:
                unknowns = sum(M.base.carrier[X] * N.base.carrier[X] for X in self.D.base.objects)
                if unknowns > self.limit:
                    continue
                expected = brute_force_hom_dim(M.base, N.base, lambda eta: relhopf.is_colinear(eta, M, N))
                self.assertEqual(relhopf.relhopf_hom_basis(M, N).dim, expected, (M.name, N.name))
                checked += 1
        self.assertGreater(checked, 0)

    def test_graded_shift_has_no_colinear_maps(self):
        M1, shifted = (named_module(name, self.D) for name in ("M1", "M1_shifted"))
        self.assertEqual(brute_force_hom_dim(M1.base, shifted.base, lambda eta: relhopf.is_colinear(eta, M1, shifted)), 0)
        self.assertEqual(brute_force_hom_dim(M1.base, M1.base, lambda eta: relhopf.is_colinear(eta, M1, M1)), 1)


if __name__ == '__main__':
    unittest.main()
