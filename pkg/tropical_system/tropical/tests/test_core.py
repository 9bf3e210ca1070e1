import random
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from tropical.core import (
    Halfspace, Hyperplane, Polytope, Sector, TropPoint, affine_chart, as_rational, canonicalize,
    cube_generators, from_affine, halfspace_boundary_contains, halfspace_contains, halfspace_includes,
    hyperplane_contains, hypersimplex, sector_contains, sector_includes, segment_breakpoints, segment_eval,
    standard_simplex, trop_add, trop_combination, trop_dist, trop_mul, trop_norm,
)
from tropical.exceptions import DimensionError, PreconditionError
from tropical.membership import contains

ORIGIN = TropPoint((0, 0, 0))

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)
points3 = st.lists(rationals, min_size=3, max_size=3).map(canonicalize)


def random_point(rng: random.Random, d: int, spread: int = 6) -> TropPoint:
    return canonicalize(Fraction(rng.randint(-spread * 4, spread * 4), 4) for _ in range(d + 1))


class ArithmeticTest(SimpleTestCase):
    """Тест полукольца и канонических координат"""

    def test_semiring_operations(self):
        self.assertEqual(trop_add(3, 5), 3)
        self.assertEqual(trop_mul(3, 5), 8)
        self.assertEqual(trop_add(-2, -2), -2)

    def test_canonicalize(self):
        self.assertEqual(canonicalize((-1, 0, 0)).coords, (0, 1, 1))
        self.assertEqual(canonicalize((0, 0, 0)).coords, (0, 0, 0))
        self.assertEqual(canonicalize((5, 7, 6)).coords, (0, 2, 1))
        self.assertEqual(TropPoint((5, 7, 6)), TropPoint((0, 2, 1)))

    def test_affine_chart_round_trip(self):
        self.assertEqual(affine_chart(TropPoint((0, 1, 1))), (1, 1))
        self.assertEqual(affine_chart(TropPoint((1, 0, 0))), (-1, -1))
        self.assertEqual(from_affine((2, 1)), TropPoint((0, 2, 1)))

    def test_exact_rationals_only(self):
        self.assertEqual(as_rational('0.25'), Fraction(1, 4))
        self.assertEqual(as_rational('1/3'), Fraction(1, 3))
        with self.assertRaises(TypeError):
            as_rational(0.5)
        with self.assertRaises(TypeError):
            as_rational(True)

    def test_point_needs_two_coordinates(self):
        with self.assertRaises(DimensionError):
            TropPoint((1,))

    def test_norm_and_distance(self):
        self.assertEqual(trop_norm(TropPoint((0, 2, 1))), 2)
        self.assertEqual(trop_norm(ORIGIN), 0)
        self.assertEqual(trop_norm(TropPoint((0, 1, 1))), 1)
        self.assertEqual(trop_dist(ORIGIN, TropPoint((0, 2, 1))), 2)
        self.assertEqual(trop_dist(TropPoint((0, 1, 1)), TropPoint((1, 0, 1))), 2)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            trop_dist(ORIGIN, TropPoint((0, 0)))

    def test_trop_combination(self):
        points = [TropPoint((0, 1, 1)), TropPoint((1, 0, 1))]
        self.assertEqual(trop_combination((0, 0), points), TropPoint((0, 0, 1)))
        with self.assertRaises(PreconditionError):
            trop_combination((0,), points)


class MetricPropertiesTest(SimpleTestCase):
    """Метрические аксиомы на случайных точках"""

    @settings(max_examples=200, deadline=None)
    @given(points3, points3, points3)
    def test_metric_axioms(self, x, y, z):
        self.assertEqual(trop_dist(x, y), trop_dist(y, x))
        self.assertEqual(trop_dist(x, y) == 0, x == y)
        self.assertLessEqual(trop_dist(x, z), trop_dist(x, y) + trop_dist(y, z))


class SegmentTest(SimpleTestCase):
    """Тест тропических отрезков"""

    def test_segment_eval(self):
        x, y = ORIGIN, TropPoint((0, 2, 1))
        self.assertEqual(segment_eval(x, y, 0, 1000), x)
        self.assertEqual(segment_eval(x, y, 0, -1), TropPoint((0, 1, 1)))
        self.assertEqual(segment_eval(x, y, 0, -2), TropPoint((0, 2, 1)))

    def test_breakpoints(self):
        x, y = ORIGIN, TropPoint((0, 2, 1))
        self.assertEqual(segment_breakpoints(x, y), [ORIGIN, TropPoint((0, 1, 1)), y])
        self.assertEqual(segment_breakpoints(x, x), [x])

    def test_breakpoints_lie_on_segment(self):
        rng = random.Random(11)
        for _ in range(100):
            d = rng.randint(1, 4)
            x, y = random_point(rng, d), random_point(rng, d)
            chain = segment_breakpoints(x, y)
            self.assertEqual(chain[0], x)
            self.assertEqual(chain[-1], y)
            for p in chain:
                self.assertTrue(contains([x, y], p).member)

    def test_breakpoints_example(self):
        x, y = TropPoint((0, 1, 1)), TropPoint((1, 0, 1))
        chain = segment_breakpoints(x, y)
        self.assertEqual(chain, [x, TropPoint((0, 0, 1)), y])


class SectorsAndHalfspacesTest(SimpleTestCase):
    """Тест секторов, гиперплоскостей и полупространств"""

    def test_sector_contains(self):
        self.assertTrue(sector_contains(Sector(ORIGIN, 0), TropPoint((0, 1, 1))))
        self.assertFalse(sector_contains(Sector(ORIGIN, 0, closed=False), TropPoint((0, 0, 1))))
        self.assertTrue(sector_contains(Sector(ORIGIN, 1), TropPoint((1, 0, 0))))

    def test_sector_index_range(self):
        with self.assertRaises(DimensionError):
            Sector(ORIGIN, 3)

    def test_hyperplane_contains(self):
        h = Hyperplane(ORIGIN)
        self.assertTrue(hyperplane_contains(h, TropPoint((1, 0, 0))))
        self.assertFalse(hyperplane_contains(h, TropPoint((0, 1, 2))))
        self.assertTrue(hyperplane_contains(h, ORIGIN))
        self.assertEqual(Hyperplane.from_linear_form((1, 2, 3)).apex, TropPoint((2, 1, 0)))

    def test_halfspace_contains(self):
        h = Halfspace(ORIGIN, frozenset({1, 2}))
        self.assertTrue(halfspace_contains(h, TropPoint((1, 0, 0))))
        self.assertFalse(halfspace_contains(h, TropPoint((0, 1, 1))))
        boundary = TropPoint((0, 0, 1))
        self.assertTrue(halfspace_contains(h, boundary))
        self.assertTrue(halfspace_contains(h.opposite(), boundary))
        self.assertTrue(halfspace_boundary_contains(h, boundary))
        self.assertFalse(halfspace_boundary_contains(h, TropPoint((1, 0, 0))))

    def test_open_halfspace(self):
        h = Halfspace(ORIGIN, frozenset({1, 2}), closed=False)
        self.assertTrue(halfspace_contains(h, TropPoint((1, 0, 0))))
        self.assertFalse(halfspace_contains(h, TropPoint((0, 0, 1))))

    def test_halfspace_index_set_validation(self):
        with self.assertRaises(PreconditionError):
            Halfspace(ORIGIN, frozenset())
        with self.assertRaises(PreconditionError):
            Halfspace(ORIGIN, frozenset({0, 1, 2}))
        with self.assertRaises(DimensionError):
            Halfspace(ORIGIN, frozenset({3}))

    def test_halfspace_includes(self):
        small = Halfspace(ORIGIN, frozenset({1}))
        large = Halfspace(ORIGIN, frozenset({1, 2}))
        self.assertTrue(halfspace_includes(small, large))
        self.assertFalse(halfspace_includes(large, small))
        self.assertTrue(halfspace_includes(large, large))

    def test_sector_nesting(self):
        rng = random.Random(5)
        for _ in range(60):
            d = rng.randint(1, 4)
            a = random_point(rng, d)
            k = rng.randint(0, d)
            # b в a + S̄_k: сдвиг по всем координатам, кроме k
            b = canonicalize(c if j == k else c + Fraction(rng.randint(0, 8), 2) for j, c in enumerate(a))
            self.assertTrue(sector_contains(Sector(a, k), b))
            self.assertTrue(sector_includes(Sector(b, k), Sector(a, k)))
            for _ in range(5):
                sample = canonicalize(c if j == k else c + Fraction(rng.randint(0, 12), 3) for j, c in enumerate(b))
                self.assertTrue(sector_contains(Sector(a, k), sample))
            if a != b:
                self.assertFalse(sector_includes(Sector(a, k), Sector(b, k)))

    def test_closed_halfspace_is_tropically_convex(self):
        rng = random.Random(7)
        checked = 0
        while checked < 80:
            d = rng.randint(2, 4)
            apex = random_point(rng, d, 2)
            indices = frozenset(rng.sample(range(d + 1), rng.randint(1, d)))
            h = Halfspace(apex, indices)
            x, y = random_point(rng, d, 3), random_point(rng, d, 3)
            if not (halfspace_contains(h, x) and halfspace_contains(h, y)):
                continue
            checked += 1
            lam, mu = Fraction(rng.randint(-8, 8), 2), Fraction(rng.randint(-8, 8), 2)
            self.assertTrue(halfspace_contains(h, segment_eval(x, y, lam, mu)))


class HypersimplexTest(SimpleTestCase):
    """Тест гиперсимплексов и куба"""

    def test_small_examples(self):
        self.assertEqual(
            set(standard_simplex(2)), {TropPoint((0, 1, 1)), TropPoint((1, 0, 1)), TropPoint((1, 1, 0))},
        )
        self.assertEqual(
            set(hypersimplex(2, 2)), {TropPoint((1, 0, 0)), TropPoint((0, 1, 0)), TropPoint((0, 0, 1))},
        )
        self.assertEqual(len(hypersimplex(4, 2)), 10)

    def test_argument_validation(self):
        with self.assertRaises(DimensionError):
            hypersimplex(0, 1)
        with self.assertRaises(PreconditionError):
            hypersimplex(3, 4)

    def test_nesting(self):
        for d in range(2, 6):
            for k in range(1, d):
                smaller, larger = hypersimplex(d, k), hypersimplex(d, k + 1)
                for v in larger:
                    self.assertTrue(contains(smaller, v).member)
                self.assertTrue(any(not contains(larger, v).member for v in smaller))

    def test_second_hypersimplex_is_unit_ball_of_zero_hyperplane(self):
        rng = random.Random(3)
        values = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
        for d in (2, 3):
            generators = hypersimplex(d, 2)
            zero = Hyperplane(TropPoint((0,) * (d + 1)))
            inside = outside = 0
            for _ in range(200):
                x = canonicalize(rng.choice(values) for _ in range(d + 1))
                expected = hyperplane_contains(zero, x) and trop_norm(x) <= 1
                self.assertEqual(contains(generators, x).member, expected, x)
                inside += expected
                outside += not expected
            self.assertGreater(inside, 0)
            self.assertGreater(outside, 0)

    def test_cube_generators(self):
        self.assertEqual(
            cube_generators(2), [TropPoint((1, 0, 2)), TropPoint((1, 2, 0)), TropPoint((0, 1, 1))],
        )
        for d in (2, 3):
            generators = cube_generators(d)
            for corner in range(2 ** d):
                chart = [1 if corner >> i & 1 else -1 for i in range(d)]
                self.assertTrue(contains(generators, from_affine(chart)).member)


class PolytopeTest(SimpleTestCase):

    def test_vertices_are_cached(self):
        p = Polytope(tuple(hypersimplex(2, 2)) + (ORIGIN,))
        self.assertEqual(p.dim, 2)
        self.assertEqual(set(p.vertices), set(hypersimplex(2, 2)))
        self.assertIs(p.vertices, p.vertices)

    def test_empty_polytope(self):
        with self.assertRaises(PreconditionError):
            Polytope(())
