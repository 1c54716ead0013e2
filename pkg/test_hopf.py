import dataclasses
import unittest

import numpy as np

from util import exactlin, hopf
from util.errors import DimensionMismatch, StructureError
from util.exactlin import FieldSpec
from util.fixtures import C2_TABLE, named_hopf


def perturbed(H, key, idx):
    """A copy of H with one structure constant increased by 1."""
    data = getattr(H, key).copy()
    data[idx] = H.field.add(data[idx], H.field.one)
    return dataclasses.replace(H, **{key: data})


class TestHopfAxioms(unittest.TestCase):
    def setUp(self):
        self.F1 = named_hopf("F1")
        self.F2 = named_hopf("F2")
        self.F3 = named_hopf("F3")

    def test_fixtures_are_hopf_algebras(self):
        for H in (self.F1, self.F2, self.F3):
            self.assertEqual(hopf.check_hopf(H), [], H.name)

    def test_duals_are_hopf_algebras(self):
        for H in (self.F1, self.F2, self.F3):
            self.assertEqual(hopf.check_hopf(hopf.dual_hopf(H)), [], H.name)

    def test_double_dual_restores_labels(self):
        H = self.F3
        DD = hopf.dual_hopf(hopf.dual_hopf(H))
        self.assertIs(DD, H)
        self.assertIs(hopf.dual_hopf(DD), hopf.dual_hopf(H))
        self.assertEqual(DD.labels, H.labels)
        self.assertTrue(exactlin.equal(DD.mult, H.mult))
        self.assertTrue(exactlin.equal(DD.comult, H.comult))

    def test_dual_is_shared(self):
        self.assertIs(hopf.dual_hopf(self.F1), hopf.dual_hopf(self.F1))

    def test_g_squared_equal_to_g_breaks_the_antipode(self):
        H = self.F1
        g, e = H.index("g"), H.index("e")
        mult = H.mult.copy()
        mult[g, g, e] = H.field.zero
        mult[g, g, g] = H.field.one
        report = hopf.check_hopf(dataclasses.replace(H, mult=mult))
        self.assertTrue(any(msg.startswith("antipode identity fails") for msg in report), report)

    def test_every_single_perturbation_is_detected(self):
        H = self.F1
        n = H.dim
        shapes = {"mult": (n, n, n), "unit": (n,), "comult": (n, n, n), "counit": (n,),
                  "antipode": (n, n), "antipode_inv": (n, n)}
        count = 0
        for key, shape in shapes.items():
            for idx in np.ndindex(*shape):
                report = hopf.check_hopf(perturbed(H, key, idx))
                self.assertTrue(report, f"{key}{idx} went unnoticed")
                count += 1
        self.assertEqual(count, 28)

    def test_sweedler_antipode_has_order_four(self):
        H, F = self.F3, self.F3.field
        S2 = exactlin.matmul(F, H.antipode, H.antipode)
        self.assertFalse(exactlin.equal(S2, exactlin.identity(F, 4)))
        self.assertTrue(exactlin.equal(exactlin.matmul(F, S2, S2), exactlin.identity(F, 4)))

    def test_antipode_inverse(self):
        self.assertTrue(exactlin.equal(hopf.antipode_inverse(self.F1), exactlin.identity(self.F1.field, 2)))
        H, F = self.F3, self.F3.field
        inv = hopf.antipode_inverse(H)
        self.assertTrue(exactlin.equal(exactlin.matmul(F, H.antipode, inv), exactlin.identity(F, 4)))
        self.assertTrue(exactlin.equal(exactlin.matmul(F, inv, H.antipode), exactlin.identity(F, 4)))


class TestConstruction(unittest.TestCase):
    def test_from_structure_constants_inverts_the_antipode(self):
        H = named_hopf("F3")
        rebuilt = hopf.from_structure_constants(H.field, H.labels, H.mult.tolist(), H.unit.tolist(),
                                                H.comult.tolist(), H.counit.tolist(), H.antipode.tolist())
        self.assertTrue(exactlin.equal(rebuilt.antipode_inv, H.antipode_inv))
        self.assertEqual(hopf.check_hopf(rebuilt), [])

    def test_singular_antipode(self):
        Q = FieldSpec.rationals()
        H = named_hopf("F1")
        with self.assertRaises(StructureError) as ctx:
            hopf.from_structure_constants(Q, H.labels, H.mult.tolist(), H.unit.tolist(),
                                          H.comult.tolist(), H.counit.tolist(), [[1, 1], [1, 1]])
        self.assertIn("antipode not bijective", str(ctx.exception))

    def test_wrong_shape(self):
        with self.assertRaises(DimensionMismatch):
            hopf.from_structure_constants(FieldSpec.rationals(), ["e"], [[1]], [1], [[[1]]], [1], [[1]])

    def test_sweedler_needs_odd_characteristic(self):
        with self.assertRaises(StructureError):
            hopf.sweedler(FieldSpec.prime(2))

    def test_group_table_validation(self):
        Q = FieldSpec.rationals()
        with self.assertRaises(StructureError):
            hopf.group_algebra(Q, [[0, 1], [1, 1]])
        with self.assertRaises(StructureError):
            hopf.build_named_hopf("quantum_group", Q)

    def test_dual_group_algebra_is_commutative_idempotents(self):
        H = hopf.build_named_hopf(hopf.DUAL_GROUP_ALGEBRA, FieldSpec.prime(3), C2_TABLE)
        self.assertEqual(hopf.check_hopf(H), [])
        e0 = H.basis_vector(0)
        self.assertTrue(exactlin.equal(H.product(e0, e0), e0))
        self.assertTrue(exactlin.is_zero(H.product(e0, H.basis_vector(1))))


if __name__ == '__main__':
    unittest.main()
