"""Choosability oracle: list-coloring search and exhaustive sufficiency tests.

``is_sufficient`` is the ground truth the rest of the package leans on.  The
generic path enumerates list assignments up to color relabeling (each class
is a multiset of membership patterns) and backtracks a coloring for each.
For labeled complete bipartite / complete split graphs it switches to a
transversal formulation: enumerate the shapes of the A-side lists, compute
the candidate transversals, and search for Q-side lists that block them all.
Both paths report an explicit ``undecided`` verdict when the budget runs out.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, bits_of

SizeFunction = tuple[int, ...]
ListAssignment = tuple[frozenset[int], ...]
ColoringWitness = tuple[int, ...]

DEFAULT_BUDGET = 100_000_000


class BudgetExceededError(RuntimeError):
    """Search budget ran out; carries a bracketing interval when known."""

    def __init__(self, message: str, bracket: tuple[int, int | None] | None = None):
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class Verdict:
    """Outcome of a sufficiency test.

    ``status`` is one of ``sufficient``, ``insufficient``, ``undecided``;
    a witness (an f-assignment with no proper coloring) accompanies every
    insufficient verdict.  ``checked`` counts enumerated assignments or
    search nodes, for budget accounting.
    """

    status: str
    witness: ListAssignment | None = None
    checked: int = 0

    def __post_init__(self):
        if self.status not in ("sufficient", "insufficient", "undecided"):
            raise ValueError(f"bad verdict status {self.status!r}")


def normalize_lists(lists: Iterable[Iterable[int]], n: int | None = None) -> ListAssignment:
    out = tuple(frozenset(int(c) for c in L) for L in lists)
    if n is not None and len(out) != n:
        raise ValueError(f"expected {n} lists, got {len(out)}")
    return out


def validate_sizes(f: Sequence[int], n: int | None = None, minimum: int = 1) -> SizeFunction:
    out = tuple(int(s) for s in f)
    if n is not None and len(out) != n:
        raise ValueError(f"expected {n} list sizes, got {len(out)}")
    if any(s < minimum for s in out):
        raise ValueError(f"list sizes must be >= {minimum}: {out}")
    return out


# ---------------------------------------------------------------------------
# Coloring from concrete lists


def color_from_lists(g: Graph, lists: Iterable[Iterable[int]]) -> ColoringWitness | None:
    """Proper coloring choosing each vertex's color from its list, or None.

    Backtracking, most-constrained vertex first (ties to the lowest index),
    colors tried in ascending order, so the answer is deterministic.
    """
    lists = normalize_lists(lists, g.n)
    color: list[int | None] = [None] * g.n
    uncolored = g.n

    def options(v: int) -> list[int]:
        return [c for c in sorted(lists[v]) if all(color[u] != c for u in bits_of(g.adj[v]))]

    def walk() -> bool:
        nonlocal uncolored
        if uncolored == 0:
            return True
        pick, pick_opts = -1, None
        for v in range(g.n):
            if color[v] is not None:
                continue
            opts = options(v)
            if pick_opts is None or len(opts) < len(pick_opts):
                pick, pick_opts = v, opts
                if not opts:
                    return False
        for c in pick_opts:
            color[pick] = c
            uncolored -= 1
            if walk():
                return True
            color[pick] = None
            uncolored += 1
        return False

    if walk():
        return tuple(color)  # type: ignore[arg-type]
    return None


# ---------------------------------------------------------------------------
# Canonical enumeration of f-assignments
#
# A class of f-assignments modulo color relabeling is exactly a multiset of
# nonempty membership patterns (pattern = the set of vertices whose lists
# share that color), with each vertex v appearing in f(v) patterns.  At most
# sum(f) colors ever occur, so the enumeration below is complete.


def enumerate_canonical_assignments(f: Sequence[int]) -> Iterator[ListAssignment]:
    """One representative per color-relabeling class of f-assignments.

    Patterns are emitted in decreasing bitmask order with multiplicities
    tried high-to-low; colors are numbered in order of first appearance.
    The stream order is deterministic, and a prefix of pattern choices
    identifies an independent chunk of the stream.
    """
    f = validate_sizes(f)
    n = len(f)
    rem = list(f)
    chunks: list[tuple[int, int]] = []

    def emit() -> ListAssignment:
        lists: list[list[int]] = [[] for _ in range(n)]
        color = 0
        for pattern, mult in chunks:
            for _ in range(mult):
                for v in bits_of(pattern):
                    lists[v].append(color)
                color += 1
        return tuple(frozenset(L) for L in lists)

    def rec(pattern: int) -> Iterator[ListAssignment]:
        if not any(rem):
            yield emit()
            return
        if pattern == 0:
            return
        hi = max(v for v in range(n) if rem[v] > 0)
        if (1 << hi) > pattern:
            return  # no remaining pattern can contain vertex hi
        members = bits_of(pattern)
        kmax = min(rem[v] for v in members)
        for k in range(kmax, 0, -1):
            for v in members:
                rem[v] -= k
            chunks.append((pattern, k))
            yield from rec(pattern - 1)
            chunks.pop()
            for v in members:
                rem[v] += k
        yield from rec(pattern - 1)

    yield from rec((1 << n) - 1)


# ---------------------------------------------------------------------------
# Transversal check (complete bipartite semantics)


def transversal_check(
    LA: Iterable[Iterable[int]], LQ: Iterable[Iterable[int]]
) -> frozenset[int] | None:
    """A set T hitting every A-list with no Q-list fully inside T, or None.

    On K_{a,q} such a T exists iff the assignment is colorable: color A from
    T and each Q-vertex from its list's leftover.  Q-lists of any size are
    allowed; T must merely avoid containing one whole.
    """
    LA = [frozenset(L) for L in LA]
    LQ = [frozenset(L) for L in LQ]
    if any(not L for L in LA) or any(not L for L in LQ):
        return None  # an empty list can never be satisfied
    order = sorted(range(len(LA)), key=lambda i: (len(LA[i]), i))

    def rec(idx: int, T: set[int]) -> frozenset[int] | None:
        if idx == len(order):
            return frozenset(T)
        L = LA[order[idx]]
        if T & L:
            return rec(idx + 1, T)
        for c in sorted(L):
            T.add(c)
            if not any(Lq <= T for Lq in LQ):
                got = rec(idx + 1, T)
                if got is not None:
                    return got
            T.remove(c)
        return None

    return rec(0, set())


# ---------------------------------------------------------------------------
# Candidate transversal sets
#
# Every minimal transversal of a list family arises as the union of one pick
# per not-yet-hit list, so the DFS below (skip lists already hit) generates
# all of them; non-minimal unions are filtered afterwards.


def minimal_transversal_sets(LA: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    seen: set[frozenset[int]] = set()

    def rec(idx: int, T: set[int]) -> None:
        if idx == len(LA):
            seen.add(frozenset(T))
            return
        L = LA[idx]
        if T & L:
            rec(idx + 1, T)
            return
        for c in sorted(L):
            T.add(c)
            rec(idx + 1, T)
            T.remove(c)

    rec(0, set())
    minimal = [T for T in seen if not any(S < T for S in seen)]
    return sorted(minimal, key=lambda T: (len(T), sorted(T)))


def sdr_image_sets(LA: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """Images of systems of distinct representatives (one per list, all
    distinct); these are the candidate A-color sets on a complete split
    graph, where the A-side is a clique."""
    seen: set[frozenset[int]] = set()

    def rec(idx: int, T: set[int]) -> None:
        if idx == len(LA):
            seen.add(frozenset(T))
            return
        for c in sorted(LA[idx]):
            if c not in T:
                T.add(c)
                rec(idx + 1, T)
                T.remove(c)

    rec(0, set())
    return sorted(seen, key=lambda T: (len(T), sorted(T)))


# ---------------------------------------------------------------------------
# Adversarial Q-side search: can q lists of the given sizes block every
# candidate transversal?  (A list blocks T when it lies fully inside T.)


class _Budget:
    __slots__ = ("left", "used")

    def __init__(self, cap: int):
        self.left = cap
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.left -= amount
        self.used += amount
        if self.left < 0:
            raise BudgetExceededError("sufficiency search budget exceeded")


def _blocking_family(
    targets: list[frozenset[int]], size_counts: Counter, budget: _Budget
) -> list[frozenset[int]] | None:
    """Distinct blocker sets, at most size_counts[s] of each size s, covering
    every target (each target must contain some blocker); None if impossible."""
    counts = Counter(size_counts)

    def rec(uncovered: list[frozenset[int]], chosen: list[frozenset[int]]):
        budget.tick()
        if not uncovered:
            return chosen
        if not counts:
            return None
        T = uncovered[0]
        for size in sorted(counts):
            if counts[size] <= 0 or size > len(T):
                continue
            for combo in itertools.combinations(sorted(T), size):
                e = frozenset(combo)
                counts[size] -= 1
                if counts[size] == 0:
                    del counts[size]
                got = rec([U for U in uncovered if not e <= U], chosen + [e])
                counts[size] += 1
                if got is not None:
                    return got
        return None

    return rec(targets, [])


def _assemble_witness(
    LA: ListAssignment,
    blockers: list[frozenset[int]],
    a_sizes: SizeFunction,
    q_sizes: SizeFunction,
) -> tuple[ListAssignment, ListAssignment]:
    """Pair the blockers with Q-vertices of matching list size and pad every
    remaining vertex with fresh colors (used once, so they cannot interact)."""
    fresh = sum(a_sizes)  # canonical LA colors live below this
    by_size: dict[int, list[frozenset[int]]] = {}
    for e in blockers:
        by_size.setdefault(len(e), []).append(e)
    q_lists: list[frozenset[int]] = []
    for s in q_sizes:
        pool = by_size.get(s)
        if pool:
            q_lists.append(pool.pop(0))
        else:
            q_lists.append(frozenset(range(fresh, fresh + s)))
            fresh += s
    if any(pool for pool in by_size.values()):
        raise AssertionError("unplaced blockers")
    return LA, tuple(q_lists)


def bipartite_is_sufficient(
    a_sizes: Sequence[int], q_sizes: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Exhaustive sufficiency decision on K_{a,q} via the transversal view.

    Enumerates A-side list shapes up to color relabeling; for each, searches
    for Q-lists (inside the A universe, sizes as given) blocking every
    minimal transversal.  Q-lists longer than a can never sit inside a
    minimal transversal, so only sizes <= a act as blockers.
    """
    a_sizes = validate_sizes(a_sizes)
    q_sizes = validate_sizes(q_sizes)
    a = len(a_sizes)
    counts = Counter(s for s in q_sizes if s <= a)
    meter = _Budget(budget)
    try:
        for LA in enumerate_canonical_assignments(a_sizes):
            meter.tick()
            targets = minimal_transversal_sets(LA)
            blockers = _blocking_family(targets, counts, meter)
            if blockers is not None:
                witness = _assemble_witness(LA, blockers, a_sizes, q_sizes)
                return Verdict("insufficient", witness[0] + witness[1], meter.used)
    except BudgetExceededError:
        return Verdict("undecided", None, meter.used)
    return Verdict("sufficient", None, meter.used)


def split_is_sufficient(
    a_sizes: Sequence[int], q_sizes: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Same adversarial search on the complete split graph G_{a,q}: the
    A-side is a clique, so candidate color sets are SDR images instead of
    minimal transversals."""
    a_sizes = validate_sizes(a_sizes)
    q_sizes = validate_sizes(q_sizes)
    a = len(a_sizes)
    counts = Counter(s for s in q_sizes if s <= a)
    meter = _Budget(budget)
    try:
        for LA in enumerate_canonical_assignments(a_sizes):
            meter.tick()
            targets = sdr_image_sets(LA)
            blockers = _blocking_family(targets, counts, meter)
            if blockers is not None:
                witness = _assemble_witness(LA, blockers, a_sizes, q_sizes)
                return Verdict("insufficient", witness[0] + witness[1], meter.used)
    except BudgetExceededError:
        return Verdict("undecided", None, meter.used)
    return Verdict("sufficient", None, meter.used)


# ---------------------------------------------------------------------------
# Structure detection and the peel reduction


def detect_structure(g: Graph) -> str | None:
    """"complete_bipartite" / "complete_split" when the part labels match the
    edge set exactly, else None (no guessing on unlabeled graphs)."""
    if g.parts is None:
        return None
    a_side, q_side = g.parts
    if len(a_side) + len(q_side) != g.n or not a_side or not q_side:
        return None
    cross = {(min(u, v), max(u, v)) for u in a_side for v in q_side}
    inner = {(min(u, v), max(u, v)) for i, u in enumerate(a_side) for v in a_side[i + 1:]}
    edges = set(g.edges)
    if edges == cross:
        return "complete_bipartite"
    if edges == cross | inner:
        return "complete_split"
    return None


def peel_order(g: Graph, f: Sequence[int]) -> list[int]:
    """Vertices removable because f(v) exceeds their remaining degree.

    A vertex with f(v) >= deg(v)+1 can always be colored last, so sufficiency
    of f on g is equivalent to sufficiency of the restriction to the core
    that survives repeated removal.  Returns the surviving core, sorted.
    """
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if f[v] >= deg[v] + 1:
                alive.discard(v)
                for u in bits_of(g.adj[v]):
                    if u in alive:
                        deg[u] -= 1
                changed = True
    return sorted(alive)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(n=len(vertices), edges=tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# The sufficiency oracle


def is_sufficient(
    g: Graph,
    f: Sequence[int],
    *,
    budget: int = DEFAULT_BUDGET,
    force_generic: bool = False,
) -> Verdict:
    """Decide whether every f-assignment of g is colorable.

    Returns a sufficient / insufficient / undecided verdict; insufficiency
    always comes with a concrete failing assignment.  f(v)=0 is answered as
    trivially insufficient (the empty list at v).  Labeled complete
    bipartite and complete split graphs take the transversal fast path
    unless ``force_generic`` is set.
    """
    f = validate_sizes(f, g.n, minimum=0)
    if any(s == 0 for s in f):
        fresh = 0
        lists = []
        for v in range(g.n):
            lists.append(frozenset(range(fresh, fresh + f[v])))
            fresh += f[v]
        return Verdict("insufficient", tuple(lists), 0)

    structure = None if force_generic else detect_structure(g)
    if structure in ("complete_bipartite", "complete_split"):
        a_side, q_side = g.parts  # type: ignore[misc]
        a_sizes = tuple(f[v] for v in a_side)
        q_sizes = tuple(f[v] for v in q_side)
        decide = bipartite_is_sufficient if structure == "complete_bipartite" else split_is_sufficient
        verdict = decide(a_sizes, q_sizes, budget=budget)
        if verdict.witness is None:
            return verdict
        per_vertex: dict[int, frozenset[int]] = {}
        for i, v in enumerate(a_side):
            per_vertex[v] = verdict.witness[i]
        for i, v in enumerate(q_side):
            per_vertex[v] = verdict.witness[len(a_side) + i]
        return Verdict(verdict.status, tuple(per_vertex[v] for v in range(g.n)), verdict.checked)

    core = peel_order(g, f)
    if not core:
        return Verdict("sufficient", None, 0)
    sub = induced_subgraph(g, core)
    core_f = tuple(f[v] for v in core)
    checked = 0
    for L in enumerate_canonical_assignments(core_f):
        checked += 1
        if checked > budget:
            return Verdict("undecided", None, checked)
        if color_from_lists(sub, L) is None:
            witness: dict[int, frozenset[int]] = {v: L[i] for i, v in enumerate(core)}
            fresh = sum(core_f)
            for v in range(g.n):
                if v not in witness:
                    witness[v] = frozenset(range(fresh, fresh + f[v]))
                    fresh += f[v]
            return Verdict("insufficient", tuple(witness[v] for v in range(g.n)), checked)
    return Verdict("sufficient", None, checked)


# ---------------------------------------------------------------------------
# Witness serialization: {"lists": [[colors...], ...]} in vertex order


def lists_to_json(lists: Iterable[Iterable[int]]) -> dict:
    return {"lists": [sorted(L) for L in lists]}


def lists_from_json(doc: dict) -> ListAssignment:
    return normalize_lists(doc["lists"])
