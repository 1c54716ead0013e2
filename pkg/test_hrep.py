import unittest

from util import exactlin, hopf, hrep
from util.errors import DimensionMismatch, StructureError
from util.fixtures import named_hopf


class TestModules(unittest.TestCase):
    def setUp(self):
        self.H = named_hopf("F1")
        self.F = self.H.field
        self.triv = hrep.trivial_module(self.H)
        self.sign = hrep.character_module(self.H, [1, -1])

    def test_valid_modules(self):
        for M in (self.triv, self.sign, hrep.regular_module(self.H), hrep.regular_module(named_hopf("F3"))):
            self.assertEqual(hrep.validate_rep(hrep.MODULE, M), [])

    def test_broken_module(self):
        bad = hrep.character_module(self.H, [1, 2])
        report = hrep.validate_rep(hrep.MODULE, bad)
        self.assertTrue(any("representation law" in msg for msg in report))

    def test_wrong_action_count(self):
        with self.assertRaises(DimensionMismatch):
            hrep.HModule(self.H, 1, (exactlin.identity(self.F, 1),))

    def test_invariants(self):
        self.assertEqual(hrep.invariants(self.triv).shape[1], 1)
        self.assertEqual(hrep.invariants(self.sign).shape[1], 0)
        self.assertEqual(hrep.invariants(hrep.regular_module(self.H)).shape[1], 1)

    def test_hom_module_invariants_are_module_maps(self):
        for V, W in ((self.triv, self.sign), (self.sign, self.sign), (hrep.regular_module(self.H), self.sign)):
            inv = hrep.invariants(hrep.hom_hmodule(V, W)).shape[1]
            self.assertEqual(inv, len(hrep.hmodule_hom_basis(V, W)))

    def test_sign_twist_vanishes_in_characteristic_two(self):
        H2 = named_hopf("F2")
        sign = hrep.character_module(H2, [1, -1])
        hom = hrep.hom_hmodule(hrep.trivial_module(H2), sign)
        self.assertEqual(hrep.invariants(hom).shape[1], 1)

    def test_tensor_of_signs_is_trivial(self):
        T = hrep.tensor_rep(hrep.MODULE, self.sign, self.sign)
        self.assertTrue(exactlin.equal(T.action[1], exactlin.identity(self.F, 1)))

    def test_sweedler_hom_action_is_a_module(self):
        H3 = named_hopf("F3")
        R = hrep.regular_module(H3)
        self.assertEqual(hrep.validate_module(hrep.hom_hmodule(R, R)), [])

    def test_locally_finite_part(self):
        M, cyclic = hrep.locally_finite_part(hrep.regular_module(self.H))
        self.assertEqual(M.dim, 2)
        self.assertEqual(cyclic, [2, 2])

    def test_restrict_to_invariant_line(self):
        R = hrep.regular_module(self.H)
        line = hrep.restrict(R, hrep.invariants(R))
        self.assertEqual(line.dim, 1)
        self.assertEqual(hrep.validate_module(line), [])


class TestComodules(unittest.TestCase):
    def setUp(self):
        self.H = named_hopf("F1")

    def test_graded_lines(self):
        for label in ("e", "g"):
            self.assertEqual(hrep.validate_rep(hrep.COMODULE, hrep.graded_line(self.H, label)), [])

    def test_non_grouplike_degree_breaks_coassociativity(self):
        degree = exactlin.vector(self.H.field, [1, 1])
        bad = hrep.graded_comodule(self.H, [degree])
        self.assertTrue(hrep.validate_rep(hrep.COMODULE, bad))

    def test_unknown_label(self):
        with self.assertRaises(StructureError):
            hrep.graded_line(self.H, "h")

    def test_coinvariants(self):
        self.assertEqual(hrep.coinvariants(hrep.graded_line(self.H, "e")).shape[1], 1)
        self.assertEqual(hrep.coinvariants(hrep.graded_line(self.H, "g")).shape[1], 0)

    def test_tensor_adds_degrees(self):
        g = hrep.graded_line(self.H, "g")
        gg = hrep.tensor_rep(hrep.COMODULE, g, g)
        self.assertEqual(hrep.validate_comodule(gg), [])
        self.assertEqual(hrep.coinvariants(gg).shape[1], 1)

    def test_colinear_maps_respect_degree(self):
        e, g = hrep.graded_line(self.H, "e"), hrep.graded_line(self.H, "g")
        self.assertEqual(len(hrep.comodule_hom_basis(e, g)), 0)
        self.assertEqual(len(hrep.comodule_hom_basis(g, g)), 1)

    def test_dual_correspondence(self):
        V = hrep.direct_sum([hrep.graded_line(self.H, "e"), hrep.graded_line(self.H, "g")], self.H)
        M = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, V)
        self.assertIs(M.hopf, hopf.dual_hopf(self.H))
        self.assertEqual(hrep.validate_module(M), [])
        back = hrep.comodule_dual_correspondence(hrep.TO_COMODULE, M)
        self.assertTrue(exactlin.equal(back.coaction, V.coaction))
        self.assertIs(back.hopf, self.H)
        both = hrep.tensor_rep(hrep.COMODULE, back, V)
        self.assertEqual(hrep.validate_comodule(both), [])

    def test_coinvariants_are_dual_module_invariants(self):
        F = self.H.field
        V = hrep.direct_sum([hrep.graded_line(self.H, label) for label in ("e", "g", "e")], self.H)
        W = hrep.tensor_rep(hrep.COMODULE, V, hrep.graded_line(self.H, "g"))
        for C in (V, W):
            M = hrep.comodule_dual_correspondence(hrep.TO_DUAL_MODULE, C)
            self.assertTrue(exactlin.same_span(F, hrep.coinvariants(C), hrep.invariants(M)))
        S = named_hopf("F3")
        M = hrep.regular_module(hopf.dual_hopf(S))
        C = hrep.comodule_dual_correspondence(hrep.TO_COMODULE, M)
        self.assertEqual(hrep.invariants(M).shape[1], 1)
        self.assertTrue(exactlin.same_span(S.field, hrep.coinvariants(C), hrep.invariants(M)))

    def test_unknown_direction(self):
        with self.assertRaises(ValueError):
            hrep.comodule_dual_correspondence("sideways", hrep.graded_line(self.H, "e"))


if __name__ == '__main__':
    unittest.main()
