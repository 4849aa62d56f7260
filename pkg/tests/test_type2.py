"""Reduced graphs, blocking enumeration, the integer criterion, and beta."""

import itertools
import math

import pytest

from sumchoice.bipartite import closed_form, constr_assignment
from sumchoice.choosability import (
    BudgetExceededError,
    bipartite_is_sufficient,
    color_from_lists,
)
from sumchoice.exact import sum_choice_type2_exact
from sumchoice.graphs import make_graph
from sumchoice.type2 import (
    ReducedGraph,
    atom_from_label,
    atom_label,
    beta,
    blocking_orbits,
    chi_sc2_reduced,
    enumerate_blocking,
    is_blocking,
    materialize_reduced_witness,
    phi,
    reduced_witness_to_json,
    symmetrize,
    type2_insufficient,
)

# ---------------------------------------------------------------------------
# phi and atoms


def test_phi_examples():
    assert phi({0b01: 1, 0b11: 2}, 2) == (3, 2)
    assert phi({}, 2) == (0, 0)
    assert phi({0b111: 1}, 3) == (1, 1, 1)


def test_phi_validates():
    with pytest.raises(ValueError):
        phi({0: 1}, 2)
    with pytest.raises(ValueError):
        phi({0b100: 1}, 2)


def test_atom_labels_round_trip():
    for mask in range(1, 8):
        assert atom_from_label(atom_label(mask)) == mask


# ---------------------------------------------------------------------------
# is_blocking


def test_is_blocking_examples():
    assert is_blocking(ReducedGraph((1, 2), ((1, 2),)), 2) is True
    assert is_blocking(ReducedGraph((1, 2, 3), ((1, 2),)), 2) is False
    assert is_blocking(ReducedGraph((1, 2), ()), 2) is False


def test_is_blocking_uncovered_index_rejected():
    with pytest.raises(ValueError):
        is_blocking(ReducedGraph((1,), ()), 2)


def test_is_blocking_permutation_invariant():
    perms = list(itertools.permutations(range(3)))

    def apply(mask, perm):
        return sum(1 << perm[i] for i in range(3) if mask >> i & 1)

    for r in enumerate_blocking(3)[:40]:
        for perm in perms:
            mapped = ReducedGraph(
                tuple(sorted(apply(v, perm) for v in r.vertices)),
                tuple(
                    sorted(
                        (min(apply(u, perm), apply(v, perm)), max(apply(u, perm), apply(v, perm)))
                        for u, v in r.edges
                    )
                ),
            )
            assert is_blocking(mapped, 3)


# ---------------------------------------------------------------------------
# enumerate_blocking


def test_enumerate_blocking_a1_empty():
    assert enumerate_blocking(1) == ()


def test_enumerate_blocking_a2():
    got = enumerate_blocking(2)
    assert got == (ReducedGraph((1, 2), ((1, 2),)),)


def brute_blocking(a, max_vertices):
    """Independent filter over every (vertex set, edge set) pair with the
    public is_blocking as the only decision procedure."""
    atoms = list(range(1, 1 << a))
    found = []
    for pick in range(1, 1 << len(atoms)):
        verts = tuple(atoms[j] for j in range(len(atoms)) if pick >> j & 1)
        if len(verts) > max_vertices:
            continue
        covered = 0
        for v in verts:
            covered |= v
        if covered != (1 << a) - 1:
            continue
        pairs = list(itertools.combinations(verts, 2))
        for emask in range(1, 1 << len(pairs)):
            edges = tuple(pairs[k] for k in range(len(pairs)) if emask >> k & 1)
            if is_blocking(ReducedGraph(verts, edges), a):
                found.append((verts, edges))
    return found


def test_enumerate_blocking_a2_matches_brute_filter():
    brute = brute_blocking(2, max_vertices=3)
    # one blocking graph total, and its orbit is itself
    assert len(brute) == 1
    assert len(blocking_orbits(2)) == 1


def test_enumerate_blocking_a3_matches_brute_filter():
    # vertex sets of size 7 all contain the universal atom, whose singleton
    # cover blocks nothing, so size <= 6 is the whole story (checked below)
    brute = set(brute_blocking(3, max_vertices=6))
    orbit = {(r.vertices, r.edges) for r in blocking_orbits(3)}
    assert brute == orbit
    assert len(orbit) == 1158


def test_seven_atom_vertex_sets_never_block():
    verts = tuple(range(1, 8))
    pairs = list(itertools.combinations(verts, 2))
    for emask in (1, 2**21 - 1, 0b101010101010101010101, 0b110011001100110011001):
        edges = tuple(pairs[k] for k in range(len(pairs)) if emask >> k & 1)
        assert not is_blocking(ReducedGraph(verts, edges), 3)


def test_every_enumerated_graph_is_blocking():
    for r in enumerate_blocking(3):
        assert is_blocking(r, 3)


def test_blocking_never_contains_the_full_atom():
    # a cover by the universal atom alone contains no edge, so no blocking R
    # may include it; this falls out of the definition rather than a special case
    full = 0b111
    assert all(full not in r.vertices for r in blocking_orbits(3))
    assert not is_blocking(ReducedGraph((1, 2, 0b111), ((1, 2),)), 3)


def test_enumerate_blocking_a4_exceeds_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_blocking(4)


# ---------------------------------------------------------------------------
# symmetrize


def test_symmetrize_fixed_point():
    conflict = make_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    x, r = symmetrize([{0, 1}, {2, 3}], conflict)
    assert x == {1: 2, 2: 2}
    assert r == ReducedGraph((1, 2), ((1, 2),))
    assert is_blocking(r, 2)


def test_symmetrize_constr_instance_is_blocking():
    c = constr_assignment(2, 1)
    conflict = make_graph(c.n_colors, [tuple(sorted(L)) for L in c.q_lists])
    x, r = symmetrize(c.a_lists, conflict)
    assert sum(x.values()) == c.n_colors
    assert is_blocking(r, c.a)


def test_symmetrize_strips_in_atom_edges():
    conflict = make_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (0, 1)])
    x, r = symmetrize([{0, 1}, {2, 3}], conflict)
    assert r.edges == ((1, 2),)


def test_symmetrize_rejects_sufficient_input():
    with pytest.raises(ValueError):
        symmetrize([{0}, {1}], make_graph(2, []))


# ---------------------------------------------------------------------------
# the integer criterion


def test_type2_insufficient_examples():
    w = type2_insufficient((2, 2), 4)
    assert w is not None and w.cost == 4
    assert type2_insufficient((2, 3), 4) is None
    w = type2_insufficient((1, 5), 5)
    assert w is not None and w.cost <= 5


def test_type2_phi_dominates_f():
    w = type2_insufficient((2, 2), 4)
    f = phi(dict(w.atoms), 2)
    assert all(fi >= want for fi, want in zip(f, (2, 2)))


def test_reduced_criterion_matches_oracle_a2():
    for q in range(1, 6):
        for f in itertools.product(range(1, 6), repeat=2):
            witness = type2_insufficient(f, q)
            oracle = bipartite_is_sufficient(f, (2,) * q)
            assert (witness is None) == (oracle.status == "sufficient"), (f, q)


def test_reduced_criterion_matches_oracle_a3_spot():
    for f, q in [((1, 1, 1), 1), ((2, 2, 2), 4), ((2, 2, 2), 1), ((1, 2, 3), 3), ((3, 3, 3), 8)]:
        witness = type2_insufficient(f, q)
        oracle = bipartite_is_sufficient(f, (2,) * q)
        assert (witness is None) == (oracle.status == "sufficient"), (f, q)


def test_materialized_witnesses_fail_coloring():
    for q in range(1, 5):
        for f in itertools.product(range(1, 5), repeat=2):
            w = type2_insufficient(f, q)
            if w is None:
                continue
            g, lists = materialize_reduced_witness(w, f, q)
            assert tuple(len(L) for L in lists) == f + (2,) * q
            assert color_from_lists(g, lists) is None


def test_chi_sc2_reduced_values():
    assert chi_sc2_reduced(2, 6) == 18
    assert chi_sc2_reduced(2, 2) == 8
    # a=1: no loopless reduced graph blocks a single list, so pairs on Q
    # never bite and the star value 2q+1 drops out
    assert chi_sc2_reduced(1, 3) == 7


def test_chi_sc2_matches_exact():
    for q in range(1, 7):
        assert chi_sc2_reduced(2, q) == sum_choice_type2_exact(2, q)


def test_chi_sc2_touches_closed_form_at_special_q():
    for q in (2, 3, 6):
        assert chi_sc2_reduced(2, q) - 2 * q == closed_form(2, q) - 2 * q


def test_chi_sc2_excess_nondecreasing_in_q():
    excesses = [chi_sc2_reduced(2, q) - 2 * q for q in range(1, 9)]
    assert excesses == sorted(excesses)


def test_deletion_consistency_with_exact_values():
    # removing d vertices from Q costs at most 2d in the type-II optimum
    for q in range(3, 9):
        for d in range(0, 3):
            assert closed_form(2, q) >= chi_sc2_reduced(2, q - d) - 2 * d


def test_reduced_witness_json_shape():
    w = type2_insufficient((2, 2), 4)
    doc = reduced_witness_to_json(w)
    assert doc["cost"] == 4
    assert doc["x"] == {"1": 2, "2": 2}
    assert doc["R"]["edges"] == [["1", "2"]]


# ---------------------------------------------------------------------------
# beta


def test_beta_a2_exact():
    assert beta(2, 1e-6) == pytest.approx(2.0, abs=1e-6)


def test_beta_a3_close_to_limit():
    assert beta(3, 1e-3) == pytest.approx(2 * math.sqrt(3), abs=0.05)


def test_beta_grid_refinement_monotone():
    values = [beta(3, 1e-3, grid=n, refine=False) for n in (8, 16, 32)]
    assert values == sorted(values, reverse=True)


def test_beta_unsupported_a():
    with pytest.raises(ValueError):
        beta(4, 1e-3)
    with pytest.raises(ValueError):
        beta(2, -1.0)


def test_normalized_excess_brackets_beta():
    b2 = beta(2, 1e-6)
    for q in (16, 64):
        excess = (chi_sc2_reduced(2, q) - 2 * q) / math.sqrt(q)
        assert abs(excess - b2) <= 0.5
    b3 = beta(3, 1e-3)
    excess = (chi_sc2_reduced(3, 16) - 32) / 4.0
    assert abs(excess - b3) <= 0.5
