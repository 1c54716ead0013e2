import unittest

from util import catmod, exactlin, hrep, relhopf
from util.errors import StructureError
from util.fixtures import named_category, named_hopf, named_module
from util.relhopf import RelHopfModule


class TestRelativeHopfModules(unittest.TestCase):
    def setUp(self):
        self.D = named_category("D1")
        self.H = self.D.hopf
        self.M1 = named_module("M1")
        self.M1_shifted = named_module("M1_shifted")

    def test_fixtures_are_valid(self):
        modules = (self.M1, self.M1_shifted, relhopf.relhopf_representable(self.D, "A"),
                   relhopf.relhopf_representable(self.D, "B"))
        for M in modules:
            self.assertEqual(relhopf.validate_relhopf(M), [], M.name)

    def test_ungraded_alpha_breaks_compatibility(self):
        flat = {X: hrep.graded_line(self.H, "e") for X in ("A", "B")}
        bad = RelHopfModule(self.D, self.M1.base, flat)
        self.assertIn("coaction is not compatible with alpha", relhopf.validate_relhopf(bad))

    def test_right_module_rejected(self):
        right = catmod.representable(self.D.base, "A", catmod.RIGHT)
        with self.assertRaises(StructureError):
            RelHopfModule(self.D, right, {X: hrep.trivial_comodule(self.H, right.carrier[X]) for X in ("A", "B")})

    def test_colinear_hom(self):
        self.assertEqual(relhopf.relhopf_hom_basis(self.M1, self.M1).dim, 1)
        self.assertEqual(relhopf.relhopf_hom_basis(self.M1, self.M1_shifted).dim, 0)
        self.assertEqual(catmod.module_hom_basis(self.M1.base, self.M1_shifted.base).dim, 1)

    def test_tensor_with_graded_line_shifts(self):
        shifted = relhopf.tensor_comod(self.M1, hrep.graded_line(self.H, "g"))
        self.assertEqual(relhopf.validate_relhopf(shifted), [])
        self.assertEqual(relhopf.relhopf_hom_basis(shifted, self.M1_shifted).dim, 1)

    def test_tensor_factor_must_share_hopf(self):
        with self.assertRaises(StructureError):
            relhopf.tensor_comod(self.M1, hrep.trivial_comodule(named_hopf("F3")))


class TestRationalHom(unittest.TestCase):
    def setUp(self):
        self.D = named_category("D1")
        self.H = self.D.hopf
        self.M1 = named_module("M1")
        self.M1_shifted = named_module("M1_shifted")

    def test_rational_hom(self):
        for N, colinear in ((self.M1, 1), (self.M1_shifted, 0)):
            hom = relhopf.rational_hom(self.M1, N)
            self.assertEqual(hom.space.dim, 1)
            self.assertTrue(hom.rational)
            self.assertTrue(hom.coinvariants_match)
            self.assertEqual(hom.coinvariants.shape[1], colinear)
            self.assertEqual(hrep.validate_comodule(hom.comodule), [])

    def test_dual_smash_hom_agrees(self):
        for N in (self.M1, self.M1_shifted):
            direct = relhopf.relhopf_hom_basis(self.M1, N).dim
            smash = catmod.module_hom_basis(relhopf.to_dual_smash(self.M1), relhopf.to_dual_smash(N)).dim
            self.assertEqual(direct, smash)

    def test_hom_adjunction(self):
        for label in ("e", "g"):
            W = hrep.graded_line(self.H, label)
            for N, P in ((self.M1, self.M1), (self.M1, self.M1_shifted)):
                self.assertTrue(relhopf.verify_hom_adjunction(W, N, P).holds, (label, P.name))


class TestGeneratorsAndSmash(unittest.TestCase):
    def setUp(self):
        self.D = named_category("D1")
        self.M1 = named_module("M1")

    def test_coaction_closure_of_homogeneous_element(self):
        W = self.M1.hcomod["A"]
        span = relhopf.coaction_closure(W, exactlin.vector(W.hopf.field, [1]))
        self.assertEqual(span.shape[1], 1)

    def test_generator_witness(self):
        F = self.D.base.field
        for X in ("A", "B"):
            witness = relhopf.generator_witness(self.M1, X, exactlin.vector(F, [1]))
            self.assertEqual(witness.basis.shape[1], 1)
            self.assertEqual(relhopf.validate_relhopf(witness.source), [])
            self.assertTrue(relhopf.is_colinear(witness.morphism, witness.source, self.M1))
        witness = relhopf.generator_witness(self.M1, "A", exactlin.vector(F, [0]))
        self.assertEqual(witness.basis.shape[1], 0)

    def test_generator_epimorphism(self):
        for M in (self.M1, named_module("M1_shifted"), relhopf.relhopf_representable(self.D, "B")):
            P, epi = relhopf.generator_epimorphism(M)
            self.assertEqual(relhopf.validate_relhopf(P), [])
            self.assertTrue(catmod.is_surjective(epi))
            self.assertTrue(relhopf.is_colinear(epi, P, M))

    def test_generator_kernel(self):
        P, epi = relhopf.generator_epimorphism(self.M1)
        K, inclusion = relhopf.relhopf_kernel(epi, P)
        self.assertEqual(K.base.total_dim, P.base.total_dim - self.M1.base.total_dim)
        self.assertEqual(relhopf.validate_relhopf(K), [])

    def test_dual_smash_round_trip(self):
        S = relhopf.to_dual_smash(self.M1)
        self.assertEqual(catmod.validate_module(S), [])
        back = relhopf.from_dual_smash(S, self.D)
        for X in self.D.base.objects:
            self.assertTrue(exactlin.equal(back.hcomod[X].coaction, self.M1.hcomod[X].coaction))
        for key in self.D.base.keys():
            for A, B in zip(back.base.action[key], self.M1.base.action[key]):
                self.assertTrue(exactlin.equal(A, B))

    def test_from_dual_smash_needs_the_smash_category(self):
        with self.assertRaises(StructureError):
            relhopf.from_dual_smash(self.M1.base, self.D)


if __name__ == '__main__':
    unittest.main()
