"""Exact sum choice numbers, the greedy bound, and type-II optimum."""

import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from sumchoice.bipartite import closed_form
from sumchoice.choosability import color_from_lists, enumerate_canonical_assignments, is_sufficient
from sumchoice.exact import (
    edge_bound,
    greedy_sufficient_f,
    sorted_profiles,
    sum_choice_exact,
    sum_choice_type2_exact,
)
from sumchoice.graphs import degeneracy_order, generate, make_graph
from sumchoice.acceptance import TRIANGULATIONS

PROPERTY_SETTINGS = settings(
    max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def brute_force_chi_sc(g, max_size):
    """Independent oracle: raw assignment enumeration, no canonicalization,
    no caps beyond max_size, universe exactly sum(f)."""

    def sufficient(f):
        universe = range(sum(f))
        return all(
            color_from_lists(g, lists) is not None
            for lists in itertools.product(*[itertools.combinations(universe, s) for s in f])
        )

    for total in itertools.count(g.n):
        for f in itertools.product(range(1, max_size + 1), repeat=g.n):
            if sum(f) == total and sufficient(f):
                return total, f


def test_path3_value():
    assert sum_choice_exact(generate("path", [3])).value == 5


def test_k22_value():
    assert sum_choice_exact(generate("complete_bipartite", [2, 2])).value == 8


def test_triangle_matches_brute_force():
    g = generate("complete", [3])
    brute, _ = brute_force_chi_sc(g, max_size=3)
    assert brute == 6
    assert sum_choice_exact(g).value == 6


def test_small_cycle_matches_brute_force():
    g = generate("cycle", [4])
    brute, _ = brute_force_chi_sc(g, max_size=3)
    assert sum_choice_exact(g).value == brute


def test_optimal_f_is_sufficient_and_tight():
    for g in [generate("path", [4]), generate("complete", [3]), generate("complete_bipartite", [2, 2])]:
        res = sum_choice_exact(g)
        assert is_sufficient(g, res.optimal_f).status == "sufficient"
        for v in range(g.n):
            lowered = tuple(s - 1 if u == v else s for u, s in enumerate(res.optimal_f))
            if min(lowered) >= 1:
                assert is_sufficient(g, lowered).status == "insufficient"


def test_record_witnesses():
    res = sum_choice_exact(generate("path", [3]), record_witnesses=True)
    assert res.witnesses
    for f, witness in res.witnesses.items():
        assert tuple(len(L) for L in witness) == f


def test_undecided_bracket():
    g = generate("cycle", [4])
    res = sum_choice_exact(g, budget=3)
    assert res.undecided and res.value is None
    lo, hi = res.bracket
    assert lo <= sum_choice_exact(g).value <= hi


def test_greedy_path3():
    g = generate("path", [3])
    f = greedy_sufficient_f(g)
    order = degeneracy_order(g).order
    assert tuple(f[v] for v in order) == (1, 2, 2)
    assert sum(f) == 5


def test_greedy_complete4():
    g = generate("complete", [4])
    f = greedy_sufficient_f(g)
    order = degeneracy_order(g).order
    assert tuple(f[v] for v in order) == (1, 2, 3, 4)
    assert sum(f) == 10


def test_greedy_octahedron_planar_bound():
    n, edges = TRIANGULATIONS["octahedron"]
    g = make_graph(n, edges)
    f = greedy_sufficient_f(g)
    assert sum(f) <= 4 * g.n - 6
    assert max(f) <= 6


def test_edge_bound_values():
    assert edge_bound(generate("complete_bipartite", [2, 2])) == 8
    assert edge_bound(make_graph(5, [])) == 5
    assert edge_bound(generate("complete", [4])) == 10


def test_capped_search_equals_uncapped():
    # independent uncapped search: entries may go up to n
    def uncapped(g):
        for total in itertools.count(g.n):
            for f in sorted(
                f
                for f in itertools.product(range(1, g.n + 1), repeat=g.n)
                if sum(f) == total
            ):
                if is_sufficient(g, f).status == "sufficient":
                    return total

    for g in [
        generate("path", [4]),
        generate("complete", [3]),
        generate("cycle", [4]),
        generate("star", [3]),
        generate("random_graph", [5, 4, 1]),
    ]:
        assert sum_choice_exact(g).value == uncapped(g)


def test_tree_values_2n_minus_1():
    for n in range(1, 6):
        for seed in range(2):
            g = generate("random_tree", [n, seed])
            assert sum_choice_exact(g).value == 2 * n - 1


def test_tree_isomorphism_class_counts():
    from sumchoice.acceptance import all_trees_up_to_iso

    assert [len(all_trees_up_to_iso(n)) for n in range(1, 7)] == [1, 1, 1, 2, 3, 6]


def test_chain_chi_le_greedy_le_edge_bound():
    for seed in range(6):
        g = generate("random_graph", [5, 5, seed])
        chi = sum_choice_exact(g).value
        assert chi <= sum(greedy_sufficient_f(g)) <= edge_bound(g)


@PROPERTY_SETTINGS
@given(st.integers(min_value=0, max_value=500))
def test_greedy_is_always_sufficient(seed):
    import random

    rng = random.Random(seed)
    n = rng.randint(1, 7)
    m = rng.randint(0, n * (n - 1) // 2)
    g = generate("random_graph", [n, m, seed])
    assert is_sufficient(g, greedy_sufficient_f(g)).status == "sufficient"


# ---------------------------------------------------------------------------
# type-II optimum


def type2_oracle_a2(q):
    """For a=2 the type-II optimum is 2q plus the least s1+s2 with s1*s2 > q."""
    return 2 * q + min(
        s1 + s2 for s1 in range(1, q + 2) for s2 in range(1, q + 2) if s1 * s2 > q
    )


def test_type2_small_values():
    assert sum_choice_type2_exact(2, 2) == type2_oracle_a2(2) == 8
    assert sum_choice_type2_exact(2, 6) == type2_oracle_a2(6) == 18


def test_type2_star_collapses_to_closed_form():
    assert sum_choice_type2_exact(1, 3) == closed_form(1, 3) == 7


def test_type2_dominates_chi_sc():
    for a, q in [(1, 2), (2, 2), (2, 3), (2, 4), (3, 2)]:
        g = generate("complete_bipartite", [a, q])
        assert sum_choice_exact(g).value <= sum_choice_type2_exact(a, q)


def test_sorted_profiles_cover_all_multisets():
    got = set(sorted_profiles(6, 2, 5))
    want = {
        tuple(sorted(f))
        for f in itertools.product(range(1, 6), repeat=2)
        if sum(f) == 6
    }
    assert got == want


def test_canonical_enumeration_count_vs_profiles():
    # there must be at least one assignment class per profile shape
    assert sum(1 for _ in enumerate_canonical_assignments((1, 1, 1))) >= 1
