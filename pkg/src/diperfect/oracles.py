"""Exact exponential-time reference solvers.

These are ground truth: every solver is exhaustive within an explicit
size cap and fails loudly (TooLarge) beyond it.  All searches explore
candidates in lexicographic vertex order so returned witnesses are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Digraph, Graph, underlying_graph
from .errors import NotStable, TooLarge

STABLE_CAP = 24
PARTITION_CAP = 12
CLIQUE_CAP = 16
PERFECT_CAP = 14
HAMILTON_CAP = 12


@dataclass(frozen=True)
class StableSetFamily:
    alpha: int
    sets: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PathPartition:
    paths: tuple[tuple[int, ...], ...]
    mode: str  # "plain" | "alpha" | "be"
    stable_set: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)


# -- stable sets -----------------------------------------------------------


def _adjacency_masks(G: Graph) -> list[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _alpha_masks(masks: list[int], n: int) -> int:
    best = 0

    def rec(cand: int, size: int):
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if cand == 0:
            best = size
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~(1 << v) & ~masks[v], size + 1)
        rec(cand & ~(1 << v), size)

    rec((1 << n) - 1, 0)
    return best


def stable_family_of_graph(G: Graph) -> StableSetFamily:
    """All maximum stable sets of a graph, lexicographically sorted."""
    if G.n > STABLE_CAP:
        raise TooLarge(f"stable set search capped at n={STABLE_CAP}")
    n = G.n
    if n == 0:
        return StableSetFamily(0, (tuple(),))
    masks = _adjacency_masks(G)
    alpha = _alpha_masks(masks, n)
    sets: list[tuple[int, ...]] = []

    def rec(v: int, cand: int, chosen: list[int]):
        if len(chosen) == alpha:
            sets.append(tuple(chosen))
            return
        if len(chosen) + bin(cand >> v).count("1") < alpha:
            return
        for w in range(v, n):
            if cand & (1 << w):
                rec(w + 1, cand & ~masks[w], chosen + [w])

    rec(0, (1 << n) - 1, [])
    sets.sort()
    return StableSetFamily(alpha, tuple(sets))


def max_stable_sets(D: Digraph) -> StableSetFamily:
    return stable_family_of_graph(underlying_graph(D))


def alpha_of(G: Graph) -> int:
    if G.n > STABLE_CAP:
        raise TooLarge(f"stable set search capped at n={STABLE_CAP}")
    if G.n == 0:
        return 0
    return _alpha_masks(_adjacency_masks(G), G.n)


def alpha_of_subset(G: Graph, vertices) -> int:
    H, _ = G.induced(vertices)
    return alpha_of(H)


def is_stable(G: Graph, S) -> bool:
    S = list(S)
    return all(
        not G.adjacent(S[i], S[j]) for i in range(len(S)) for j in range(i + 1, len(S))
    )


# -- path partitions -------------------------------------------------------


def _paths_through(D: Digraph, remaining: frozenset[int], m: int):
    """All directed paths within ``remaining`` containing ``m``.

    Each path is produced exactly once (the split at ``m`` is unique).
    """

    def right(seq: tuple[int, ...], used: frozenset[int]):
        yield seq, used
        for w in D.out_neighbors(seq[-1]):
            if w in remaining and w not in used:
                yield from right(seq + (w,), used | {w})

    def left(seq: tuple[int, ...], used: frozenset[int]):
        yield seq
        for w in D.in_neighbors(seq[0]):
            if w in remaining and w not in used:
                yield from left((w,) + seq, used | {w})

    base = frozenset([m])
    for rseq, used in right((m,), base):
        yield from left(rseq, used)


def min_path_partition(D: Digraph) -> PathPartition:
    """A smallest path partition, by iterative deepening over the size."""
    if D.n > PARTITION_CAP:
        raise TooLarge(f"path partition search capped at n={PARTITION_CAP}")
    if D.n == 0:
        return PathPartition(tuple(), "plain")

    full = frozenset(range(D.n))
    # memo: remaining set -> largest budget known insufficient
    failed: dict[frozenset[int], int] = {}

    def search(remaining: frozenset[int], budget: int):
        if not remaining:
            return []
        if budget == 0:
            return None
        if failed.get(remaining, -1) >= budget:
            return None
        m = min(remaining)
        for path in _paths_through(D, remaining, m):
            rest = search(remaining - set(path), budget - 1)
            if rest is not None:
                return [path] + rest
        prev = failed.get(remaining, -1)
        if budget > prev:
            failed[remaining] = budget
        return None

    for k in range(1, D.n + 1):
        result = search(full, k)
        if result is not None:
            return PathPartition(tuple(sorted(result)), "plain")
    raise AssertionError("singleton partition always exists")


def exists_s_path_partition(D: Digraph, S, mode: str) -> PathPartition | None:
    """An S-path partition (mode=alpha) or S_BE-path partition (mode=be),
    or None if none exists.  Exhaustive backtracking with failure
    memoization on the remaining vertex set."""
    if mode not in ("alpha", "be"):
        raise ValueError(f"mode must be alpha or be, got {mode!r}")
    if D.n > PARTITION_CAP:
        raise TooLarge(f"path partition search capped at n={PARTITION_CAP}")
    S = frozenset(S)
    U = underlying_graph(D)
    if not is_stable(U, S):
        raise NotStable(f"{sorted(S)} is not stable")
    if D.n == 0:
        return PathPartition(tuple(), mode, tuple())

    failed: set[frozenset[int]] = set()

    def ok_path(path: tuple[int, ...]) -> bool:
        hits = [i for i, v in enumerate(path) if v in S]
        if len(hits) != 1:
            return False
        if mode == "be" and hits[0] not in (0, len(path) - 1):
            return False
        return True

    def feasible(remaining: frozenset[int]) -> bool:
        # a non-S vertex with no remaining neighbors can never be covered
        for v in remaining:
            if v not in S and not any(w in remaining for w in U.neighbors(v)):
                return False
        return bool(remaining & S) or not remaining

    def search(remaining: frozenset[int]):
        if not remaining:
            return []
        if remaining in failed:
            return None
        if not feasible(remaining):
            failed.add(remaining)
            return None
        m = min(remaining)
        for path in _paths_through(D, remaining, m):
            if sum(1 for v in path if v in S) > 1:
                continue
            if not ok_path(path):
                continue
            rest = search(remaining - set(path))
            if rest is not None:
                return [path] + rest
        failed.add(remaining)
        return None

    result = search(frozenset(range(D.n)))
    if result is None:
        return None
    return PathPartition(tuple(sorted(result)), mode, tuple(sorted(S)))


def validate_partition(D: Digraph, pp: PathPartition) -> bool:
    """Independent re-check of all PathPartition invariants against D."""
    seen: set[int] = set()
    for path in pp.paths:
        if not path:
            return False
        if len(set(path)) != len(path):
            return False
        for v in path:
            if v in seen or not (0 <= v < D.n):
                return False
            seen.add(v)
        for a, b in zip(path, path[1:]):
            if not D.has_arc(a, b):
                return False
    if seen != set(range(D.n)):
        return False
    if pp.mode in ("alpha", "be"):
        if pp.stable_set is None:
            return False
        S = set(pp.stable_set)
        U = underlying_graph(D)
        if not is_stable(U, S):
            return False
        for path in pp.paths:
            hits = [i for i, v in enumerate(path) if v in S]
            if len(hits) != 1:
                return False
            if pp.mode == "be" and hits[0] not in (0, len(path) - 1):
                return False
    return True


# -- clique partitions -----------------------------------------------------


def min_clique_partition(G: Graph) -> list[list[int]]:
    """Fewest cliques covering V(G): exact coloring of the complement."""
    if G.n > CLIQUE_CAP:
        raise TooLarge(f"clique partition capped at n={CLIQUE_CAP}")
    n = G.n
    if n == 0:
        return []
    comp = G.complement()
    lower = alpha_of(G)

    def try_color(k: int):
        colors = [-1] * n

        def rec(v: int, used: int):
            if v == n:
                return True
            limit = min(k - 1, used)
            for c in range(limit + 1):
                if all(colors[w] != c for w in comp.neighbors(v) if w < v):
                    colors[v] = c
                    if rec(v + 1, max(used, c + 1)):
                        return True
                    colors[v] = -1
            return False

        if rec(0, 0):
            return colors
        return None

    for k in range(max(lower, 1), n + 1):
        colors = try_color(k)
        if colors is not None:
            classes: dict[int, list[int]] = {}
            for v, c in enumerate(colors):
                classes.setdefault(c, []).append(v)
            return sorted(classes.values())
    raise AssertionError("n singletons always work")


# -- perfection ------------------------------------------------------------


def chordless_cycles(G: Graph, min_len: int = 3):
    """All chordless cycles of G as vertex tuples, each exactly once.

    The tuple starts at the cycle's smallest vertex; the second entry is
    smaller than the last (canonical direction).  Results are sorted by
    (length, tuple) for reproducibility.
    """
    found = []

    for s in range(G.n):
        # DFS over induced paths starting at s using only vertices > s
        def extend(path: tuple[int, ...]):
            last = path[-1]
            for w in G.neighbors(last):
                if w <= s or w in path:
                    continue
                # chordless: w may touch only `last` among path[1:-1]+[s]
                if any(G.adjacent(w, x) for x in path[1:-1]):
                    continue
                if len(path) >= 2 and G.adjacent(w, s):
                    # the edge back to s closes the cycle; a longer path
                    # through w would leave that edge as a chord
                    if path[1] < w and len(path) + 1 >= min_len:
                        found.append(path + (w,))
                    continue
                extend(path + (w,))

        extend((s,))
    found.sort(key=lambda c: (len(c), c))
    return found


def is_perfect(G: Graph):
    """(True, None) iff neither G nor its complement has an induced odd
    cycle of order >= 5; otherwise (False, (kind, cycle))."""
    if G.n > PERFECT_CAP:
        raise TooLarge(f"perfection test capped at n={PERFECT_CAP}")
    for cyc in chordless_cycles(G, min_len=5):
        if len(cyc) % 2 == 1:
            return False, ("odd_hole", cyc)
    for cyc in chordless_cycles(G.complement(), min_len=5):
        if len(cyc) % 2 == 1:
            return False, ("odd_antihole", cyc)
    return True, None


# -- bipartite matching ----------------------------------------------------


def max_bipartite_matching(left, right, adjacency) -> Matching:
    """Maximum matching via augmenting paths.

    ``adjacency`` maps each left vertex to an iterable of right vertices.
    Size equals |left| iff Hall's condition holds.
    """
    left = sorted(set(left))
    right_set = set(right)
    if set(left) & right_set:
        raise ValueError("sides must be disjoint")
    adj = {u: sorted(set(adjacency.get(u, ())) & right_set) for u in left}
    match_of_right: dict[int, int] = {}

    def augment(u: int, visited: set[int]) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_of_right or augment(match_of_right[v], visited):
                match_of_right[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    pairs = sorted((u, v) for v, u in match_of_right.items())
    return Matching(tuple(pairs))


# -- Hamilton search -------------------------------------------------------


def hamilton_search(D: Digraph, constraint=None):
    """Exhaustive backtracking Hamilton path/cycle search.

    constraint: None | ("start", v) | ("end", v) | ("ends", {s, t}) |
    ("cycle",).  Returns a vertex tuple (for "cycle": the cycle without
    the repeated closing vertex, starting at vertex 0's position rotated
    to the smallest label) or None.
    """
    n = D.n
    if n > HAMILTON_CAP:
        raise TooLarge(f"hamilton search capped at n={HAMILTON_CAP}")
    if n == 0:
        return None

    kind = constraint[0] if constraint else "none"

    if kind == "cycle":
        if n == 1:
            return None
        start = 0

        def extend_cycle(path, used):
            if len(path) == n:
                return path if D.has_arc(path[-1], start) else None
            for w in D.out_neighbors(path[-1]):
                if w not in used:
                    got = extend_cycle(path + (w,), used | {w})
                    if got is not None:
                        return got
            return None

        return extend_cycle((start,), {start})

    if kind == "start":
        starts = [constraint[1]]
        end_ok = lambda v: True
    elif kind == "end":
        starts = sorted(set(range(n)) - {constraint[1]}) if n > 1 else [constraint[1]]
        end_ok = lambda v: v == constraint[1]
    elif kind == "ends":
        ends = set(constraint[1])
        if n == 1:
            starts = sorted(ends)
            end_ok = lambda v: True
        else:
            starts = sorted(ends)
            end_ok = lambda v: v in ends and v != path_start[0]
    else:
        starts = list(range(n))
        end_ok = lambda v: True

    path_start = [None]

    def extend(path, used):
        if len(path) == n:
            return path if end_ok(path[-1]) else None
        for w in D.out_neighbors(path[-1]):
            if w not in used:
                got = extend(path + (w,), used | {w})
                if got is not None:
                    return got
        return None

    for s in starts:
        path_start[0] = s
        got = extend((s,), {s})
        if got is not None:
            return got
    return None
