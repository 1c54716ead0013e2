import itertools
import unittest
from fractions import Fraction

from util import exactlin
from util.errors import DimensionMismatch, InconsistentComplex, StructureError
from util.exactlin import FieldSpec


class TestFieldSpec(unittest.TestCase):
    def setUp(self):
        self.Q = FieldSpec.rationals()
        self.F5 = FieldSpec.prime(5)

    def test_coerce(self):
        self.assertEqual(self.Q.coerce("3/4"), Fraction(3, 4))
        self.assertEqual(self.F5.coerce("1/2"), 3)
        self.assertEqual(self.F5.coerce(-1), 4)

    def test_denominator_divisible_by_p(self):
        with self.assertRaises(StructureError):
            self.F5.coerce("1/5")

    def test_composite_modulus_rejected(self):
        with self.assertRaises(StructureError):
            FieldSpec.prime(6)

    def test_arithmetic(self):
        self.assertEqual(self.F5.mul(3, 4), 2)
        self.assertEqual(self.F5.inv(2), 3)
        self.assertEqual(self.Q.inv(Fraction(2, 3)), Fraction(3, 2))
        with self.assertRaises(ZeroDivisionError):
            self.Q.inv(Fraction(0))


class TestElimination(unittest.TestCase):
    def setUp(self):
        self.Q = FieldSpec.rationals()
        self.F2 = FieldSpec.prime(2)

    def test_rank_depends_on_field(self):
        rows = [[1, 1], [1, -1]]
        self.assertEqual(exactlin.rank(self.Q, exactlin.matrix(self.Q, rows)), 2)
        self.assertEqual(exactlin.rank(self.F2, exactlin.matrix(self.F2, rows)), 1)

    def test_kernel_basis(self):
        A = exactlin.matrix(self.Q, [[1, 2, 3], [2, 4, 6]])
        K = exactlin.kernel_basis(self.Q, A)
        self.assertEqual(K.shape, (3, 2))
        self.assertTrue(exactlin.is_zero(exactlin.matmul(self.Q, A, K)))

    def test_solve(self):
        A = exactlin.matrix(self.Q, [[2, 0], [0, 3]])
        x = exactlin.solve(self.Q, A, exactlin.vector(self.Q, [1, 1]))
        self.assertEqual(list(x[:, 0]), [Fraction(1, 2), Fraction(1, 3)])

    def test_solve_outside_image(self):
        A = exactlin.matrix(self.Q, [[1], [1]])
        self.assertIsNone(exactlin.solve(self.Q, A, exactlin.vector(self.Q, [1, 0])))

    def test_solve_shape_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            exactlin.solve_many(self.Q, exactlin.identity(self.Q, 2), exactlin.identity(self.Q, 3))

    def test_inverse(self):
        A = exactlin.matrix(self.F2, [[1, 1], [0, 1]])
        inv = exactlin.inverse(self.F2, A)
        self.assertTrue(exactlin.equal(exactlin.matmul(self.F2, A, inv), exactlin.identity(self.F2, 2)))
        self.assertIsNone(exactlin.inverse(self.F2, exactlin.matrix(self.F2, [[1, 1], [1, 1]])))

    def test_subquotient(self):
        Z = exactlin.identity(self.Q, 3)[:, :2]
        B = exactlin.column(self.Q, [1, 1, 0])
        dim, reps = exactlin.subquotient(self.Q, Z, B)
        self.assertEqual(dim, 1)
        self.assertFalse(exactlin.in_span(self.Q, B, reps[:, 0]))

    def test_subquotient_ignores_column_order(self):
        Z = exactlin.matrix(self.Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]])
        B = exactlin.matrix(self.Q, [[1, 0], [1, 0], [0, 1], [2, 0]])
        for order in itertools.permutations(range(3)):
            for b_order in ([0, 1], [1, 0]):
                dim, reps = exactlin.subquotient(self.Q, Z[:, list(order)], B[:, b_order])
                self.assertEqual(dim, 1, order)
                self.assertEqual(exactlin.rank(self.Q, exactlin.hstack(self.Q, [B, reps], 4)), 3, order)

    def test_subquotient_rejects_stray_boundary(self):
        Z = exactlin.identity(self.Q, 2)[:, :1]
        B = exactlin.column(self.Q, [0, 1])
        with self.assertRaises(InconsistentComplex):
            exactlin.subquotient(self.Q, Z, B)

    def test_quotient_coordinates(self):
        reps = exactlin.column(self.Q, [1, 0])
        B = exactlin.column(self.Q, [1, 1])
        coords = exactlin.quotient_coordinates(self.Q, reps, B, exactlin.column(self.Q, [0, 1]))
        self.assertEqual(coords[0, 0], -1)

    def test_same_span(self):
        A = exactlin.matrix(self.Q, [[1, 0], [0, 1]])
        B = exactlin.matrix(self.Q, [[1, 1], [1, -1]])
        self.assertTrue(exactlin.same_span(self.Q, A, B))
        self.assertFalse(exactlin.same_span(self.F2, exactlin.matrix(self.F2, [[1, 0], [0, 1]]),
                                            exactlin.matrix(self.F2, [[1, 1], [1, -1]])))

    def test_complement_projection(self):
        B = exactlin.column(self.Q, [1, 1, 0])
        C, P = exactlin.complement_projection(self.Q, B, 3)
        self.assertEqual(C.shape, (3, 2))
        self.assertTrue(exactlin.equal(exactlin.matmul(self.Q, P, C), exactlin.identity(self.Q, 2)))
        self.assertTrue(exactlin.is_zero(exactlin.matmul(self.Q, P, B)))

    def test_ragged_rows(self):
        with self.assertRaises(DimensionMismatch):
            exactlin.matrix(self.Q, [[1, 2], [3]])


if __name__ == '__main__':
    unittest.main()
