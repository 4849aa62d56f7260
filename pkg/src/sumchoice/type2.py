"""Type-II insufficiency via reduced graphs, and the limit constant beta.

On K_{a,q} with every Q-list of size 2, an insufficient assignment can be
symmetrized: colors sharing the same A-list membership pattern form atoms,
conflict edges inside an atom can be dropped, and between atoms the conflict
block can be made complete or empty.  What survives is a reduced graph R on
atom patterns plus an atom-count vector x.  Insufficiency of a size vector f
is then an integer-point question: some blocking R must admit x >= 0 with
list sums covering f and pair cost sum x_I x_J over E(R) at most q.

Normalizing by sqrt(q) turns the same geometry into a real coverage problem
whose critical simplex size is the limit of (chi_sc2 - 2q)/sqrt(q); ``beta``
computes it by grid search over the unit face with local refinement, using
multi-start coordinate descent for the bilinear minima (the single-edge case,
which is all of a=2, is solved exactly by one descent step).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .choosability import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    ListAssignment,
    minimal_transversal_sets,
    normalize_lists,
)
from .graphs import Graph, bits_of, complete_bipartite
from .rng import derive_rng


@dataclass(frozen=True)
class ReducedGraph:
    """Graph on atom patterns; a vertex is a nonempty subset of [a] encoded
    as a bitmask, an edge marks a complete conflict block between atoms."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ReducedWitness:
    reduced: ReducedGraph
    atoms: tuple[tuple[int, int], ...]  # (pattern mask, count), sorted
    cost: int


def atom_label(mask: int) -> str:
    return ",".join(str(i + 1) for i in bits_of(mask))


def atom_from_label(label: str) -> int:
    mask = 0
    for part in str(label).split(","):
        i = int(part)
        if i < 1:
            raise ValueError(f"atom indices are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def phi(x: Mapping[int, int], a: int) -> tuple[int, ...]:
    """List sizes induced by atom counts: f_i = sum of x_I over patterns I
    containing i."""
    full = (1 << a) - 1
    for mask, count in x.items():
        if not 0 < mask <= full:
            raise ValueError(f"atom mask {mask} out of range for a={a}")
        if count < 0:
            raise ValueError(f"atom count must be nonnegative, got {count}")
    return tuple(sum(c for I, c in x.items() if I >> i & 1) for i in range(a))


def _validate_reduced(r: ReducedGraph, a: int) -> None:
    full = (1 << a) - 1
    if len(set(r.vertices)) != len(r.vertices):
        raise ValueError("duplicate reduced-graph vertices")
    for v in r.vertices:
        if not 0 < v <= full:
            raise ValueError(f"vertex mask {v} out of range for a={a}")
    vs = set(r.vertices)
    for u, v in r.edges:
        if u == v or u not in vs or v not in vs:
            raise ValueError(f"bad reduced edge ({u},{v})")
    covered = 0
    for v in r.vertices:
        covered |= v
    if covered != full:
        missing = [i + 1 for i in range(a) if not covered >> i & 1]
        raise ValueError(f"indices {missing} uncovered: their lists would be empty")


def is_blocking(r: ReducedGraph, a: int) -> bool:
    """True iff every vertex cover of the pattern hypergraph (S_i = atoms
    containing i) contains both endpoints of some edge of r.  Decided by
    exhaustive enumeration of cover subsets."""
    _validate_reduced(r, a)
    verts = r.vertices
    nv = len(verts)
    index = {v: j for j, v in enumerate(verts)}
    hyper = []
    for i in range(a):
        hyper.append(sum(1 << j for j, v in enumerate(verts) if v >> i & 1))
    edge_masks = [(1 << index[u]) | (1 << index[v]) for u, v in r.edges]
    for cover in range(1, 1 << nv):
        if all(cover & S for S in hyper):
            if not any(cover & em == em for em in edge_masks):
                return False
    return True


_BLOCKING_CACHE: dict[int, tuple[ReducedGraph, ...]] = {}
_ORBIT_CACHE: dict[int, tuple[ReducedGraph, ...]] = {}


def _perm_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i in bits_of(mask):
        out |= 1 << perm[i]
    return out


def _canonical_key(
    verts: Sequence[int], edges: Sequence[tuple[int, int]], a: int
) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    best = None
    for perm in itertools.permutations(range(a)):
        pv = tuple(sorted(_perm_mask(v, perm) for v in verts))
        pe = tuple(
            sorted(
                (min(_perm_mask(u, perm), _perm_mask(v, perm)),
                 max(_perm_mask(u, perm), _perm_mask(v, perm)))
                for u, v in edges
            )
        )
        key = (pv, pe)
        if best is None or key < best:
            best = key
    return best


def enumerate_blocking(a: int) -> tuple[ReducedGraph, ...]:
    """All blocking reduced graphs for a, one canonical representative per
    orbit of index permutations, in a fixed order.

    a=1 is empty (a loopless single cover cannot contain an edge).  a=4
    would mean filtering every graph on up to 14 atoms, beyond any budget,
    so it raises.
    """
    if a < 1:
        raise ValueError(f"need a >= 1, got {a}")
    if a in _BLOCKING_CACHE:
        return _BLOCKING_CACHE[a]
    if a == 1:
        _BLOCKING_CACHE[1] = ()
        return ()
    if a > 3:
        raise BudgetExceededError(
            f"enumerating blocking graphs for a={a} exceeds the budget "
            f"(universe of {(1 << a) - 1} atom patterns)"
        )
    atoms = list(range(1, 1 << a))
    full = (1 << a) - 1
    seen: set = set()
    for pick in range(1, 1 << len(atoms)):
        verts = tuple(atoms[j] for j in bits_of(pick))
        covered = 0
        for v in verts:
            covered |= v
        if covered != full:
            continue
        nv = len(verts)
        hyper = [sum(1 << j for j, v in enumerate(verts) if v >> i & 1) for i in range(a)]
        covers = [c for c in range(1, 1 << nv) if all(c & S for S in hyper)]
        minimal = [c for c in covers if not any(d != c and d & c == d for d in covers)]
        if any(c.bit_count() == 1 for c in minimal):
            continue  # a single-atom cover can never contain an edge
        pairs = list(itertools.combinations(range(nv), 2))
        pair_in_cover = [
            sum(1 << k for k, (x, y) in enumerate(pairs) if c >> x & 1 and c >> y & 1)
            for c in minimal
        ]
        for emask in range(1, 1 << len(pairs)):
            if all(emask & pc for pc in pair_in_cover):
                edges = tuple(
                    (min(verts[x], verts[y]), max(verts[x], verts[y]))
                    for k, (x, y) in enumerate(pairs)
                    if emask >> k & 1
                )
                seen.add(_canonical_key(verts, edges, a))
    result = tuple(
        ReducedGraph(vertices=v, edges=e)
        for v, e in sorted(seen, key=lambda k: (len(k[0]), k[0], len(k[1]), k[1]))
    )
    _BLOCKING_CACHE[a] = result
    return result


def blocking_orbits(a: int) -> tuple[ReducedGraph, ...]:
    """Every blocking reduced graph (orbits expanded), deterministic order."""
    if a in _ORBIT_CACHE:
        return _ORBIT_CACHE[a]
    expanded: set = set()
    for r in enumerate_blocking(a):
        for perm in itertools.permutations(range(a)):
            pv = tuple(sorted(_perm_mask(v, perm) for v in r.vertices))
            pe = tuple(
                sorted(
                    (min(_perm_mask(u, perm), _perm_mask(v, perm)),
                     max(_perm_mask(u, perm), _perm_mask(v, perm)))
                    for u, v in r.edges
                )
            )
            expanded.add((pv, pe))
    result = tuple(
        ReducedGraph(vertices=v, edges=e)
        for v, e in sorted(expanded, key=lambda k: (len(k[0]), k[0], len(k[1]), k[1]))
    )
    _ORBIT_CACHE[a] = result
    return result


# ---------------------------------------------------------------------------
# Symmetrization of an insufficient type-II assignment


def _assignment_insufficient(LA: Sequence[frozenset[int]], adj: Mapping[int, set[int]]) -> bool:
    """Every minimal transversal of LA induces a conflict edge."""
    for T in minimal_transversal_sets(tuple(LA)):
        elems = sorted(T)
        if not any(v in adj[u] for u, v in itertools.combinations(elems, 2)):
            return False
    return True


def symmetrize(
    LA: Iterable[Iterable[int]], conflict: Graph
) -> tuple[dict[int, int], ReducedGraph]:
    """Symmetrize an insufficient type-II assignment; returns atom counts and
    the reduced graph.

    Within an atom no minimal transversal uses two colors, so in-atom edges
    go; copying the smallest neighborhood across each atom keeps every
    transversal conflicted while making blocks complete or empty.  Edge
    count never grows.  Raises if the input assignment is colorable, and
    re-verifies insufficiency of the symmetric result.
    """
    LA = normalize_lists(LA)
    a = len(LA)
    colors = sorted(set().union(*LA))
    adj: dict[int, set[int]] = {c: set() for c in colors}
    for u, v in conflict.edges:
        if u in adj and v in adj:  # conflicts on colors outside every list are inert
            adj[u].add(v)
            adj[v].add(u)
    if not _assignment_insufficient(LA, adj):
        raise ValueError("assignment is sufficient; nothing to symmetrize")

    pattern = {
        c: sum(1 << i for i in range(a) if c in LA[i]) for c in colors
    }
    atoms: dict[int, list[int]] = {}
    for c in colors:
        atoms.setdefault(pattern[c], []).append(c)

    for _ in range(4 * len(colors) * len(colors) + 16):
        changed = False
        for mask in sorted(atoms):
            members = atoms[mask]
            for u, v in itertools.combinations(members, 2):
                if v in adj[u]:
                    adj[u].discard(v)
                    adj[v].discard(u)
                    changed = True
        for mask in sorted(atoms):
            members = atoms[mask]
            source = min(members, key=lambda c: (len(adj[c]), c))
            target = set(adj[source])
            for c in members:
                if adj[c] != target:
                    for w in adj[c] - target:
                        adj[w].discard(c)
                    for w in target - adj[c]:
                        adj[w].add(c)
                    adj[c] = set(target)
                    changed = True
        if not changed:
            break
    else:
        raise RuntimeError("symmetrization did not converge")

    x = {mask: len(members) for mask, members in atoms.items()}
    edges = []
    for m1, m2 in itertools.combinations(sorted(atoms), 2):
        links = sum(1 for c in atoms[m1] for d in atoms[m2] if d in adj[c])
        if links == len(atoms[m1]) * len(atoms[m2]):
            edges.append((m1, m2))
        elif links != 0:
            raise AssertionError("block neither complete nor empty after symmetrization")
    if not _assignment_insufficient(LA, adj):
        raise AssertionError("symmetrization lost insufficiency")
    reduced = ReducedGraph(vertices=tuple(sorted(atoms)), edges=tuple(sorted(edges)))
    return x, reduced


# ---------------------------------------------------------------------------
# Integer witness search


def _cost(r: ReducedGraph, x: Mapping[int, int]) -> int:
    return sum(x.get(u, 0) * x.get(v, 0) for u, v in r.edges)


def _integer_point(
    r: ReducedGraph, f: Sequence[int], q: int, budget: list[int]
) -> dict[int, int] | None:
    """Integer x >= 0 supported on V(r) with phi(x) >= f and cost <= q.

    Branches only over atoms of two or more indices; singleton atoms are
    forced to the residual demand afterwards.  Coordinates are capped at
    max(f): any larger coordinate alone already covers its rows, so
    truncating it keeps phi(x) >= f and can only lower the cost.
    """
    a = len(f)
    cap = max(f)
    verts = r.vertices
    multi = sorted((v for v in verts if v.bit_count() >= 2), key=lambda v: (-v.bit_count(), v))
    singles = {v: v.bit_length() - 1 for v in verts if v.bit_count() == 1}
    nbrs: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in r.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    x: dict[int, int] = {}

    def finish() -> dict[int, int] | None:
        got = dict(x)
        for mask, i in sorted(singles.items()):
            need = f[i] - sum(c for I, c in got.items() if I >> i & 1)
            got[mask] = max(0, need)
        for i in range(a):
            if sum(c for I, c in got.items() if I >> i & 1) < f[i]:
                return None
        if _cost(r, got) <= q:
            return got
        return None

    def rec(idx: int) -> dict[int, int] | None:
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceededError("type-II witness search budget exceeded")
        if idx == len(multi):
            return finish()
        v = multi[idx]
        for val in range(cap + 1):
            x[v] = val
            partial = sum(
                x.get(u1, 0) * x.get(u2, 0) for u1, u2 in r.edges if u1 in x and u2 in x
            )
            if partial <= q:
                got = rec(idx + 1)
                if got is not None:
                    return got
        del x[v]
        return None

    return rec(0)


def type2_insufficient(
    f_A: Sequence[int], q: int, *, budget: int = DEFAULT_BUDGET
) -> ReducedWitness | None:
    """Reduced witness (blocking R, atom counts, cost <= q) certifying that
    the type-II function (f_A on A, 2 on Q) is insufficient on K_{a,q};
    None exactly when the function is sufficient.

    Uses the downward-closed criterion phi(x) >= f: materializing the atoms
    and shrinking the A-lists to the exact sizes keeps the assignment
    insufficient, so the relaxation is still sound and complete.
    """
    f = tuple(int(s) for s in f_A)
    if any(s < 1 for s in f):
        raise ValueError("A-list sizes must be positive")
    if q < 0:
        raise ValueError(f"need q >= 0, got {q}")
    a = len(f)
    meter = [budget]
    for r in blocking_orbits(a):
        x = _integer_point(r, f, q, meter)
        if x is not None:
            atoms = tuple(sorted((mask, c) for mask, c in x.items() if c > 0))
            return ReducedWitness(r, atoms, _cost(r, x))
    return None


def materialize_reduced_witness(
    witness: ReducedWitness, f_A: Sequence[int], q: int
) -> tuple[Graph, ListAssignment]:
    """Expand a reduced witness into a concrete insufficient assignment on
    K_{a,q}: atoms become color blocks, each reduced edge becomes the full
    set of cross pairs as Q-lists, A-lists shrink to the exact sizes, and
    surplus Q-vertices get fresh pairs."""
    f = tuple(int(s) for s in f_A)
    a = len(f)
    counts = dict(witness.atoms)
    start: dict[int, int] = {}
    base = 0
    for mask in sorted(counts):
        start[mask] = base
        base += counts[mask]
    a_lists = []
    for i in range(a):
        pool: list[int] = []
        for mask in sorted(counts):
            if mask >> i & 1:
                pool.extend(range(start[mask], start[mask] + counts[mask]))
        if len(pool) < f[i]:
            raise ValueError(f"witness does not cover f[{i}]={f[i]}")
        a_lists.append(frozenset(sorted(pool)[: f[i]]))
    q_lists: list[frozenset[int]] = []
    for u, v in sorted(witness.reduced.edges):
        cu, cv = counts.get(u, 0), counts.get(v, 0)
        for x in range(start.get(u, 0), start.get(u, 0) + cu):
            for y in range(start.get(v, 0), start.get(v, 0) + cv):
                q_lists.append(frozenset((x, y)))
    if len(q_lists) > q:
        raise ValueError(f"witness cost {len(q_lists)} exceeds q={q}")
    fresh = base
    while len(q_lists) < q:
        q_lists.append(frozenset((fresh, fresh + 1)))
        fresh += 2
    return complete_bipartite(a, q), tuple(a_lists) + tuple(q_lists)


def chi_sc2_reduced(a: int, q: int, *, budget: int = DEFAULT_BUDGET) -> int:
    """Type-II sum choice number via the reduced-graph criterion: 2q plus
    the least A-total whose size vector admits no reduced witness."""
    if a < 1 or q < 1:
        raise ValueError("need a >= 1 and q >= 1")
    from .exact import sorted_profiles  # cyclic-import-free local use

    for s in range(a, a * (q + 1) + 1):
        for fa in sorted_profiles(s, a, q + 1):
            if type2_insufficient(fa, q, budget=budget) is None:
                return 2 * q + s
    raise AssertionError("f on A identically q+1 is type-II sufficient")


# ---------------------------------------------------------------------------
# The limit constant beta


def _prep_relaxations(a: int) -> list[tuple[tuple[int, ...], list[tuple[int, int]], list[list[int]], list[list[int]]]]:
    """Blocking graphs prepped for the continuous problem: keep, per vertex
    set, only edge-minimal blocking graphs (removing edges can only lower
    the bilinear cost), ordered cheapest-looking first."""
    orbits = blocking_orbits(a)
    by_verts: dict[tuple[int, ...], list[ReducedGraph]] = {}
    for r in orbits:
        by_verts.setdefault(r.vertices, []).append(r)
    keep: list[ReducedGraph] = []
    for verts, group in by_verts.items():
        for r in group:
            es = set(r.edges)
            if not any(o is not r and set(o.edges) < es for o in group):
                keep.append(r)
    keep.sort(key=lambda r: (len(r.edges), len(r.vertices), r.vertices, r.edges))
    prepped = []
    for r in keep:
        verts = r.vertices
        index = {v: j for j, v in enumerate(verts)}
        edges = [(index[u], index[v]) for u, v in r.edges]
        rows = [[j for j, v in enumerate(verts) if v >> i & 1] for i in range(a)]
        nbrs: list[list[int]] = [[] for _ in verts]
        for ju, jv in edges:
            nbrs[ju].append(jv)
            nbrs[jv].append(ju)
        prepped.append((verts, edges, rows, nbrs))
    return prepped


def _tight_start(verts: tuple[int, ...], f: Sequence[float]) -> list[float] | None:
    """Minimum-norm solution of 'all row constraints tight' (negatives
    clipped); the balanced interior optima live here, where slam-to-bound
    coordinate steps cannot arrive on their own."""
    a = len(f)
    nv = len(verts)
    rows = [[1.0 if verts[j] >> i & 1 else 0.0 for j in range(nv)] for i in range(a)]
    gram = [[sum(rows[i][j] * rows[k][j] for j in range(nv)) for k in range(a)] for i in range(a)]
    rhs = list(f)
    # gaussian elimination with partial pivoting on the a x a gram system
    for col in range(a):
        pivot = max(range(col, a), key=lambda r: abs(gram[r][col]))
        if abs(gram[pivot][col]) < 1e-12:
            return None
        gram[col], gram[pivot] = gram[pivot], gram[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        for r in range(a):
            if r != col and gram[r][col]:
                factor = gram[r][col] / gram[col][col]
                gram[r] = [gr - factor * gc for gr, gc in zip(gram[r], gram[col])]
                rhs[r] -= factor * rhs[col]
    lam = [rhs[i] / gram[i][i] for i in range(a)]
    return [max(0.0, sum(rows[i][j] * lam[i] for i in range(a))) for j in range(nv)]


def _min_bilinear(
    prep: tuple[tuple[int, ...], list[tuple[int, int]], list[list[int]], list[list[int]]],
    f: Sequence[float],
    starts: int = 16,
    sweeps: int = 120,
) -> float:
    """min over x >= 0 (supported on V(R)) of sum_{IJ in E(R)} x_I x_J
    subject to every row sum covering f, by multi-start coordinate descent.

    With one coordinate free the cost is linear, so each update drops the
    coordinate to its row-driven lower bound (or raises a cost-free one to
    cover its rows outright); a final raising pass restores feasibility.
    Structured starts (zeros, row maxima, fair split, all-rows-tight) seed
    the interior optima; the rest are seeded-random.
    """
    verts, edges, rows, nbrs = prep
    nv = len(verts)
    a = len(f)
    rowmax = [max((f[i] for i in range(a) if verts[j] >> i & 1), default=0.0) for j in range(nv)]
    rowcount = [max(1, len(rows[i])) for i in range(a)]
    fair = [
        max((f[i] / rowcount[i] for i in range(a) if verts[j] >> i & 1), default=0.0)
        for j in range(nv)
    ]

    def lower_bound(j: int, x: list[float]) -> float:
        lb = 0.0
        for i in range(a):
            if verts[j] >> i & 1:
                need = f[i] - sum(x[k] for k in rows[i] if k != j)
                if need > lb:
                    lb = need
        return lb

    seeds: list[list[float] | None] = [[0.0] * nv, list(rowmax), list(fair), _tight_start(verts, f)]
    best = math.inf
    for s in range(starts):
        if s < len(seeds):
            if seeds[s] is None:
                continue
            x = list(seeds[s])  # type: ignore[arg-type]
        else:
            rng = derive_rng(s, "bilinear-start", verts)
            x = [rng.random() * (rowmax[j] + 1e-9) for j in range(nv)]
        for _ in range(sweeps):
            delta = 0.0
            for j in range(nv):
                lb = lower_bound(j, x)
                coef = sum(x[k] for k in nbrs[j])
                new = lb if coef > 1e-15 else max(lb, rowmax[j])
                delta += abs(new - x[j])
                x[j] = new
            if delta < 1e-13:
                break
        for j in range(nv):  # raising pass: restores feasibility monotonically
            lb = lower_bound(j, x)
            if x[j] < lb:
                x[j] = lb
        cost = sum(x[ju] * x[jv] for ju, jv in edges)
        if cost < best:
            best = cost
    return best


def _worst_cost(f: Sequence[float], prepped, cutoff: float | None = None) -> float:
    best = math.inf
    for prep in prepped:
        c = _min_bilinear(prep, f)
        if c < best:
            best = c
        if cutoff is not None and best <= cutoff:
            return best
    return best


def _face_grid(a: int, n: int) -> list[tuple[float, ...]]:
    pts = []
    for combo in itertools.combinations_with_replacement(range(a), n):
        counts = [0] * a
        for i in combo:
            counts[i] += 1
        pts.append(tuple(c / n for c in counts))
    return pts


def beta(a: int, tolerance: float = 1e-4, *, grid: int = 32, refine: bool = True) -> float:
    """Largest k whose simplex {f >= 0, sum f <= k} lies inside the union of
    the normalized insufficiency regions; equals the limit of
    (chi_sc2(K_{a,q}) - 2q)/sqrt(q).

    Cost scales quadratically along rays, so coverage of the whole simplex
    reduces to the worst point of the unit face: beta = M^{-1/2} where M is
    the max over the face of the min over blocking R of the bilinear
    minimum.  The face is scanned on a grid and the maximum refined locally;
    coarser grids can only report a larger k (fewer points to cover).
    """
    if a not in (2, 3):
        raise ValueError(f"beta is computed for a in {{2, 3}}, got {a}")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if grid < 2:
        raise ValueError(f"grid must have at least 2 points per dimension, got {grid}")
    prepped = _prep_relaxations(a)
    best_val = -math.inf
    best_f: tuple[float, ...] = ()
    for f in _face_grid(a, grid):
        val = _worst_cost(f, prepped, cutoff=best_val if best_val > 0 else None)
        if val > best_val:
            best_val = val
            best_f = f
    if refine:
        h = 1.0 / grid
        prev_beta = best_val ** -0.5
        for _ in range(80):
            improved = False
            for i in range(a):
                for j in range(a):
                    if i == j:
                        continue
                    cand = list(best_f)
                    cand[i] += h
                    cand[j] -= h
                    if cand[j] < -1e-12:
                        continue
                    cand[j] = max(cand[j], 0.0)
                    val = _worst_cost(cand, prepped)
                    if val > best_val + 1e-15:
                        best_val = val
                        best_f = tuple(cand)
                        improved = True
            if not improved:
                new_beta = best_val ** -0.5
                if abs(new_beta - prev_beta) < tolerance and h < 1.0 / grid:
                    break
                prev_beta = new_beta
                h /= 2.0
                if h < tolerance / 16.0 and h < 1e-7:
                    break
    return best_val ** -0.5


# ---------------------------------------------------------------------------
# Serialization for the CLI


def reduced_witness_to_json(w: ReducedWitness) -> dict:
    return {
        "R": {
            "vertices": [atom_label(v) for v in w.reduced.vertices],
            "edges": [[atom_label(u), atom_label(v)] for u, v in w.reduced.edges],
        },
        "x": {atom_label(mask): count for mask, count in w.atoms},
        "cost": w.cost,
    }
