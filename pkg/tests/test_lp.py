import random
from fractions import Fraction
from itertools import combinations

import pytest

from emclab.constructions import build_Hi
from emclab.hypergraph import complete_hypergraph, is_stable, new_hypergraph
from emclab.lp import (Infeasible, LPError, PerfectExtensionError, Unbounded,
                       check_complementary_slackness, dominance_maximal_edges,
                       extend_to_perfect_fm, fractional_cover_number,
                       fractional_matching_number, full_degree_vertices,
                       has_perfect_fm, lex_max_fractional_matching,
                       make_fractional_matching, monotone_cover_bound,
                       solve_lp)
from emclab.matching import cover_number, matching_number


def random_hypergraph(rng, n, k, m):
    all_e = list(combinations(range(1, n + 1), k))
    return new_hypergraph(n, k, rng.sample(all_e, min(m, len(all_e))))


def random_stable(rng, n, k, m):
    from emclab.shifting import stabilize
    h, _ = stabilize(random_hypergraph(rng, n, k, m))
    return h


class TestSimplex:
    def test_simple_max(self):
        # max x1 + x2 s.t. x1 <= 2, x2 <= 3
        v, x, duals = solve_lp([1, 1], [([1, 0], "<=", 2), ([0, 1], "<=", 3)],
                               maximize=True)
        assert v == 5 and x == [2, 3]
        assert duals == [1, 1]

    def test_equality_and_ge(self):
        # min x1 + 2*x2 s.t. x1 + x2 == 4, x1 <= 3
        v, x, _ = solve_lp([1, 2], [([1, 1], "==", 4), ([1, 0], "<=", 3)])
        assert v == 5 and x == [3, 1]

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            solve_lp([1], [([1], "<=", 1), ([1], ">=", 2)])

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            solve_lp([1], [([1], ">=", 1)], maximize=True)

    def test_exact_rationals(self):
        v, x, _ = solve_lp([1], [([Fraction(3)], "<=", Fraction(1))], maximize=True)
        assert v == Fraction(1, 3)


class TestDuality:
    def test_triangle(self):
        h = new_hypergraph(3, 2, [(1, 2), (1, 3), (2, 3)])
        nu_star, fm = fractional_matching_number(h)
        tau_star, fc = fractional_cover_number(h)
        assert nu_star == tau_star == Fraction(3, 2)
        assert all(w == Fraction(1, 2) for w in fm.weights.values())
        assert all(w == Fraction(1, 2) for w in fc.weights.values())

    def test_empty(self):
        h = new_hypergraph(4, 2, [])
        assert fractional_matching_number(h)[0] == 0
        assert fractional_cover_number(h)[0] == 0

    def test_strong_duality_random(self):
        rng = random.Random(15)
        for _ in range(80):
            n = rng.randint(3, 10)
            k = rng.choice([x for x in (2, 3, 4) if x <= n])
            h = random_hypergraph(rng, n, k, rng.randint(1, 12))
            nu_star, fm = fractional_matching_number(h)
            tau_star, fc = fractional_cover_number(h)
            assert nu_star == tau_star
            assert fm.size == nu_star
            assert fc.size == tau_star
            nu, _ = matching_number(h)
            tau = cover_number(h)
            assert nu <= nu_star <= tau

    def test_slackness_support_bound(self):
        rng = random.Random(99)
        for _ in range(40):
            h = random_hypergraph(rng, rng.randint(4, 9), rng.choice([2, 3]),
                                  rng.randint(1, 10))
            nu_star, fm = fractional_matching_number(h)
            _, fc = fractional_cover_number(h)
            rep = check_complementary_slackness(h, fm, fc)
            assert rep.saturated_ok, rep.violations
            assert rep.support_size <= h.k * nu_star


class TestFractionalMatchingValidation:
    def test_overload_rejected(self):
        h = new_hypergraph(4, 2, [(1, 2), (1, 3)])
        with pytest.raises(LPError, match="overloaded"):
            make_fractional_matching(h, {(1, 2): 1, (1, 3): 1})

    def test_non_edge_rejected(self):
        h = new_hypergraph(4, 2, [(1, 2)])
        with pytest.raises(LPError, match="non-edge"):
            make_fractional_matching(h, {(3, 4): Fraction(1, 2)})

    def test_boundary(self):
        h = new_hypergraph(4, 2, [(1, 2), (3, 4)])
        fm = make_fractional_matching(h, {(1, 2): 1, (3, 4): Fraction(1, 3)})
        assert fm.boundary() == [3, 4]


class TestLexMax:
    def test_target_above_optimum(self):
        h = new_hypergraph(3, 2, [(1, 2)])
        with pytest.raises(LPError, match="exceeds"):
            lex_max_fractional_matching(h, (1, 2, 3), Fraction(2))

    def test_loads_nonincreasing_on_stable(self):
        rng = random.Random(7)
        checked = 0
        for _ in range(60):
            n = rng.randint(5, 12)
            h = random_stable(rng, n, 4, rng.randint(2, 25))
            if not h.edges:
                continue
            nu_star, _ = fractional_matching_number(h)
            fm = lex_max_fractional_matching(h, tuple(range(1, n + 1)), nu_star)
            loads = [fm.loads[v] for v in range(1, n + 1)]
            assert all(x >= y for x, y in zip(loads, loads[1:]))
            checked += 1
        assert checked >= 30

    def test_fractional_boundary_block_small(self):
        # the strictly-fractional loads of a lex-max matching form a block of <= 4
        rng = random.Random(8)
        for _ in range(40):
            n = rng.randint(5, 11)
            h = random_stable(rng, n, 4, rng.randint(2, 20))
            if not h.edges:
                continue
            nu_star, _ = fractional_matching_number(h)
            fm = lex_max_fractional_matching(h, tuple(range(1, n + 1)), nu_star)
            frac = fm.boundary()
            assert len(frac) <= 4
            if frac:
                assert frac == list(range(frac[0], frac[0] + len(frac)))


class TestPerfectExtension:
    def test_wrong_k(self):
        h = complete_hypergraph(6, 3)
        fm = make_fractional_matching(h, {})
        with pytest.raises(PerfectExtensionError, match="uniformity"):
            extend_to_perfect_fm(h, 0, fm)

    def test_complete_t0(self):
        # K_8^4 has a perfect fractional matching needing no apex help
        h = complete_hypergraph(8, 4)
        fm = lex_max_fractional_matching(h, tuple(range(1, 9)), Fraction(2))
        out = extend_to_perfect_fm(h, 0, fm)
        assert all(v == 1 for v in out.loads.values())

    def test_full_degree_check(self):
        h = complete_hypergraph(8, 4)
        assert full_degree_vertices(h, 8)
        h2 = new_hypergraph(8, 4, [e for e in h.edges if e != (1, 2, 3, 4)])
        assert not full_degree_vertices(h2, 1)

    def test_non_divisible_rejected(self):
        h = complete_hypergraph(7, 4)
        fm = make_fractional_matching(h, {})
        with pytest.raises(PerfectExtensionError, match="divisibility"):
            extend_to_perfect_fm(h, 0, fm)


class TestHasPerfectFM:
    def test_disjoint_edges(self):
        h = new_hypergraph(8, 4, [(1, 2, 3, 4), (5, 6, 7, 8)])
        assert has_perfect_fm(h)

    def test_star(self):
        assert not has_perfect_fm(new_hypergraph(4, 2, [(1, 2), (1, 3), (1, 4)]))


class TestMonotoneCoverBound:
    def test_matches_lp_on_hi(self):
        for k, s in [(2, 2), (3, 1), (4, 1)]:
            h = build_Hi(k * (s + 1) + 2, k, s, 1)
            nu_star, _ = fractional_matching_number(h)
            bound = monotone_cover_bound(h)
            assert bound == nu_star == s

    def test_sound_upper_bound_random_stable(self):
        rng = random.Random(55)
        for _ in range(30):
            h = random_stable(rng, rng.randint(4, 9), rng.choice([2, 3]),
                              rng.randint(1, 12))
            nu_star, _ = fractional_matching_number(h)
            assert monotone_cover_bound(h) >= nu_star

    def test_maximal_edges(self):
        h = build_Hi(8, 2, 1, 1)  # star at vertex 1 on 8 vertices
        assert dominance_maximal_edges(h) == [(1, 8)]
