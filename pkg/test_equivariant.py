import unittest

from util import catmod, equivariant, exactlin, hrep
from util.equivariant import EquivModule
from util.errors import StructureError
from util.fixtures import named_category, named_hopf, named_module


class TestEquivariantModules(unittest.TestCase):
    def setUp(self):
        self.C = named_category("C2fix")
        self.H = self.C.hopf
        self.T = named_module("T")
        self.R = named_module("R")
        self.signT = named_module("signT")

    def test_fixtures_are_equivariant(self):
        for M in (self.T, self.R, self.signT, named_module("trivial")):
            self.assertEqual(equivariant.validate_equivariant(M), [], M.name)

    def test_trivial_action_on_representable_breaks_compatibility(self):
        bad = equivariant.trivial_equivariant(self.C, self.R.base)
        report = equivariant.validate_equivariant(bad)
        self.assertIn("g is not compatible with x", report)

    def test_carrier_mismatch(self):
        with self.assertRaises(StructureError):
            EquivModule(self.C, self.T.base, {"o": hrep.trivial_module(self.H, 2)})

    def test_smash_round_trip(self):
        for M in (self.T, self.R, self.signT):
            S = equivariant.smash_correspondence(M, equivariant.TO_SMASH)
            self.assertEqual(catmod.validate_module(S), [])
            back = equivariant.smash_correspondence(S, equivariant.FROM_SMASH, self.C)
            for key in self.C.base.keys():
                for A, B in zip(back.base.action[key], M.base.action[key]):
                    self.assertTrue(exactlin.equal(A, B))
            for X in self.C.base.objects:
                for A, B in zip(back.hmod[X].action, M.hmod[X].action):
                    self.assertTrue(exactlin.equal(A, B))

    def test_from_smash_needs_category(self):
        with self.assertRaises(ValueError):
            equivariant.smash_correspondence(equivariant.to_smash(self.T), equivariant.FROM_SMASH)


class TestEquivariantHom(unittest.TestCase):
    def setUp(self):
        self.T = named_module("T")
        self.R = named_module("R")
        self.signT = named_module("signT")

    def test_hom_from_representable(self):
        action = equivariant.hom_h_action(self.R, self.T)
        self.assertEqual(action.space.dim, 1)
        self.assertEqual(action.invariants.shape[1], 1)

    def test_hom_into_representable_is_sign_twisted(self):
        action = equivariant.hom_h_action(self.T, self.R)
        self.assertEqual(action.space.dim, 1)
        self.assertEqual(action.invariants.shape[1], 0)
        self.assertEqual(equivariant.smash_hom_subspace(self.T, self.R).shape[1], 0)

    def test_invariant_hom_equals_smash_hom(self):
        modules = (self.T, self.R, self.signT)
        for M in modules:
            for N in modules:
                self.assertTrue(equivariant.verify_invariant_hom(M, N), (M.name, N.name))

    def test_hom_is_locally_finite(self):
        part, whole = equivariant.locally_finite_hom(self.R, self.R)
        self.assertEqual(part.dim, 2)
        self.assertTrue(whole)

    def test_conjugate_action_is_a_module(self):
        action = equivariant.hom_h_action(self.R, self.R)
        self.assertEqual(hrep.validate_module(action.module), [])


class TestAdjunctions(unittest.TestCase):
    def setUp(self):
        self.C = named_category("C2fix")
        self.H = self.C.hopf
        self.T = named_module("T")
        self.R = named_module("R")

    def test_extension_of_scalars(self):
        for M in (self.T.base, self.R.base):
            for N in (self.T, self.R):
                ext = equivariant.extend_scalars(M, self.C)
                self.assertEqual(catmod.validate_module(ext), [])
                self.assertTrue(equivariant.extension_adjunction(M, N).holds)

    def test_tensor_hom(self):
        sign = hrep.character_module(self.H, [1, -1])
        for V in (sign, hrep.regular_module(self.H)):
            for N, P in ((self.T, self.R), (self.R, self.T), (self.R, self.R)):
                cert = equivariant.tensor_hom_adjunction(V, N, P)
                self.assertTrue(cert.holds, (V.dim, N.name, P.name))

    def test_tensor_factor_must_share_hopf(self):
        with self.assertRaises(StructureError):
            equivariant.tensor_hmod(hrep.trivial_module(named_hopf("F3")), self.T)


class TestWitnessAndCover(unittest.TestCase):
    def setUp(self):
        self.R = named_module("R")
        self.T = named_module("T")

    def test_finite_witness(self):
        hom = equivariant.hom_h_action(self.R, self.R)
        for eta in hom.space.basis:
            witness = equivariant.finite_witness(self.R, self.R, eta, hom)
            self.assertTrue(witness.spans_orbit())
            self.assertLessEqual(witness.module.dim, 2)

    def test_cover_is_equivariant_and_surjective(self):
        for M in (self.T, self.R):
            P, epi = equivariant.equivariant_cover(M)
            self.assertEqual(equivariant.validate_equivariant(P), [])
            self.assertTrue(catmod.is_surjective(epi))
            self.assertEqual(catmod.validate_morphism(epi), [])
            self.assertTrue(equivariant.is_equivariant(epi, P, M))

    def test_kernel_of_cover(self):
        P, epi = equivariant.equivariant_cover(self.T)
        K, inclusion = equivariant.equivariant_kernel(epi, P)
        self.assertEqual(K.base.total_dim, P.base.total_dim - self.T.base.total_dim)
        self.assertEqual(equivariant.validate_equivariant(K), [])

    def test_base_generators_cover_orbits(self):
        gens = equivariant.base_generators(self.R)
        self.assertEqual(len(gens), 1)


if __name__ == '__main__':
    unittest.main()
