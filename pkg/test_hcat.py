import unittest

from util import exactlin, hcat, hopf
from util.errors import DimensionMismatch, StructureError
from util.fixtures import named_category, named_hopf
from util.hcat import HCategory, build_category


class TestLinCategory(unittest.TestCase):
    def setUp(self):
        self.Q = named_hopf("F1").field

    def test_fixture_bases_are_categories(self):
        for name in ("C1", "C2fix", "C3", "D1"):
            self.assertEqual(hcat.validate_category(named_category(name).base), [], name)

    def test_non_associative_composition(self):
        C = build_category(self.Q, ["o"], {("o", "o"): ["1", "x", "y"]},
                           {("x", "x"): {"y": 1}, ("y", "x"): {"x": 1}}, {"o": "1"}, "broken")
        report = hcat.validate_category(C)
        self.assertTrue(any(msg.startswith("associativity fails") for msg in report), report)

    def test_composite_in_wrong_hom_space(self):
        with self.assertRaises(StructureError):
            build_category(self.Q, ["A", "B"], {("A", "A"): ["a", "n"], ("B", "B"): ["b"], ("A", "B"): ["f"]},
                           {("f", "n"): {"n": 1}}, {"A": "a", "B": "b"})

    def test_identity_must_be_a_basis_element(self):
        with self.assertRaises(StructureError):
            build_category(self.Q, ["o"], {("o", "o"): ["x"]}, {}, {"o": "1"})

    def test_opposite(self):
        C = named_category("C3").base
        op = hcat.opposite(C)
        self.assertEqual(op.hom_dim("B", "A"), 1)
        self.assertEqual(op.hom_dim("A", "B"), 0)
        self.assertEqual(hcat.validate_category(op), [])

    def test_algebra_category(self):
        H = named_hopf("F3")
        C = hcat.algebra_category(H)
        self.assertEqual(C.total_dim, 4)
        self.assertEqual(hcat.validate_category(C), [])
        self.assertIs(hcat.algebra_category(H), C)


class TestHStructures(unittest.TestCase):
    def test_fixture_structures(self):
        for name in ("C1", "C2fix", "C3", "D1"):
            self.assertEqual(hcat.validate_h_structure(named_category(name)), [], name)

    def test_identity_must_be_invariant(self):
        C = named_category("C2fix")
        F = C.base.field
        flipped = (exactlin.identity(F, 2), exactlin.matrix(F, [[-1, 0], [0, 1]]))
        bad = HCategory(C.base, C.hopf, {("o", "o"): flipped})
        report = hcat.validate_h_structure(bad)
        self.assertIn("g does not act on id_o by its counit", report)

    def test_action_shape(self):
        C = named_category("C2fix")
        with self.assertRaises(DimensionMismatch):
            HCategory(C.base, C.hopf, {("o", "o"): (exactlin.identity(C.base.field, 2),)})

    def test_fixed_subcategories(self):
        fixed, bases = hcat.fixed_subcategory(named_category("C2fix"))
        self.assertEqual(fixed.hom_dim("o", "o"), 1)
        self.assertEqual(hcat.validate_category(fixed), [])
        fixed, _ = hcat.fixed_subcategory(named_category("C3"))
        self.assertEqual(fixed.hom_dim("A", "B"), 0)
        fixed, _ = hcat.fixed_subcategory(named_category("D1"))
        self.assertEqual(fixed.hom_dim("A", "B"), 0)
        self.assertEqual(fixed.hom_dim("B", "B"), 1)

    def test_smash_product(self):
        C = named_category("C2fix")
        S = hcat.smash_product(C)
        self.assertEqual(S.hom_dim("o", "o"), 4)
        self.assertEqual(hcat.validate_category(S), [])
        self.assertIs(hcat.smash_product(C), S)
        F, n = S.field, C.hopf.dim
        one_g = exactlin.unit_vector(F, 4, 0 * n + 1)
        x_e = exactlin.unit_vector(F, 4, 1 * n + 0)
        # (1 # g)(x # e) = (g.x) # g = -(x # g)
        expected = exactlin.scale(F, -1, exactlin.unit_vector(F, 4, 1 * n + 1))
        self.assertTrue(exactlin.equal(S.composite("o", "o", "o", one_g, x_e), expected))

    def test_smash_coaction_is_valid(self):
        self.assertEqual(hcat.validate_h_structure(hcat.smash_coaction(named_category("C3"))), [])

    def test_dualize_and_back(self):
        D = named_category("D1")
        C = hcat.dualize_coh_category(D)
        self.assertIs(C.hopf, hopf.dual_hopf(D.hopf))
        self.assertEqual(hcat.validate_h_structure(C), [])
        back = hcat.codualize_h_category(C)
        self.assertIs(back.hopf, D.hopf)
        for key in D.base.keys():
            self.assertTrue(exactlin.equal(back.coaction[key], D.coaction[key]))

    def test_non_grouplike_coaction(self):
        D = named_category("D1")
        F = D.base.field
        bad = dict(D.coaction)
        bad[("A", "B")] = exactlin.matrix(F, [[1], [1]])
        report = hcat.validate_h_structure(hcat.CoHCategory(D.base, D.hopf, bad))
        self.assertTrue(report)

    def test_wrong_kind(self):
        with self.assertRaises(TypeError):
            hcat.validate_h_structure(named_category("C3").base)


if __name__ == '__main__':
    unittest.main()
