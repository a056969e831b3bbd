"""Recognizers for digraph classes and forbidden induced structures.

Each finder returns a Witness whose labeling can be re-validated against
the host digraph with validate_witness.  Source/sink conditions in the
cycle finders are evaluated inside the induced subdigraph, not in the
host.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Digraph, Graph, induced, underlying_graph
from .errors import PreconditionViolated, TooLarge
from .oracles import chordless_cycles, is_perfect

CYCLE_CAP = 14


@dataclass(frozen=True)
class Witness:
    kind: str
    vertices: tuple[int, ...]
    extra: tuple = tuple()


@dataclass(frozen=True)
class ClassReport:
    n: int
    tournament: bool
    semicomplete: bool
    complete: bool
    symmetric: bool
    in_semicomplete: bool
    lonely_arc_count: int
    series_parallel: bool
    perfect: bool
    in_b: bool
    in_d: bool


# -- basic class predicates ------------------------------------------------


def is_semicomplete(D: Digraph) -> bool:
    return all(
        D.adjacent(u, v) for u in range(D.n) for v in range(u + 1, D.n)
    )


def is_tournament(D: Digraph) -> bool:
    return all(
        D.has_arc(u, v) != D.has_arc(v, u)
        for u in range(D.n)
        for v in range(u + 1, D.n)
    )


def is_complete(D: Digraph) -> bool:
    return all(
        D.has_arc(u, v) and D.has_arc(v, u)
        for u in range(D.n)
        for v in range(u + 1, D.n)
    )


def is_symmetric(D: Digraph) -> bool:
    return all((v, u) in D.arcs for (u, v) in D.arcs)


def is_in_semicomplete(D: Digraph) -> bool:
    for v in range(D.n):
        nbhd = D.in_neighbors(v)
        sub, _ = induced(D, nbhd)
        if not is_semicomplete(sub):
            return False
    return True


def lonely_arcs(D: Digraph) -> list[tuple[int, int]]:
    return sorted((u, v) for (u, v) in D.arcs if (v, u) not in D.arcs)


# -- forbidden structure finders -------------------------------------------


def find_induced_transitive_triangle(D: Digraph) -> Witness | None:
    """A triple inducing exactly u->v, v->w, u->w, or None."""
    for u in range(D.n):
        for v in range(D.n):
            for w in range(D.n):
                if len({u, v, w}) < 3:
                    continue
                if (
                    D.has_arc(u, v)
                    and D.has_arc(v, w)
                    and D.has_arc(u, w)
                    and not D.has_arc(v, u)
                    and not D.has_arc(w, v)
                    and not D.has_arc(w, u)
                ):
                    return Witness("transitive_triangle", (u, v, w))
    return None


def _source_sink_flags(C: Digraph) -> list[bool]:
    return [C.is_source(v) or C.is_sink(v) for v in range(C.n)]


def _induced_odd_cycles(D: Digraph, min_len: int):
    """(cycle tuple, induced subdigraph, per-position source/sink flags)
    for every chordless odd cycle of U(D), shortest first."""
    U = underlying_graph(D)
    for cyc in chordless_cycles(U, min_len=min_len):
        if len(cyc) % 2 == 0:
            continue
        sub, vmap = induced(D, cyc)
        back = {old: new for new, old in enumerate(vmap)}
        flags = _source_sink_flags(sub)
        yield cyc, [flags[back[v]] for v in cyc]


def find_induced_blocking_odd_cycle(D: Digraph) -> Witness | None:
    """An induced odd cycle with two consecutive vertices each a source
    or sink of the cycle.  Absence certifies membership in class D."""
    if D.n > CYCLE_CAP:
        raise TooLarge(f"cycle finders capped at n={CYCLE_CAP}")
    for cyc, flags in _induced_odd_cycles(D, min_len=3):
        L = len(cyc)
        for seq, fl in ((cyc, flags), (cyc[:1] + cyc[:0:-1], flags[:1] + flags[:0:-1])):
            for r in range(L):
                if fl[r] and fl[(r + 1) % L]:
                    labeling = tuple(seq[(r + i) % L] for i in range(L))
                    return Witness(
                        "blocking_odd_cycle", labeling, (labeling[0], labeling[1])
                    )
    return None


def _anti_required(L: int) -> list[int]:
    # positions x1..x4 and even x6..x_{2k} of the odd cycle x1..x_{2k+1},
    # shifted to 0-based indices
    k = (L - 1) // 2
    return [0, 1, 2, 3] + [2 * j - 1 for j in range(3, k + 1)]


def find_induced_anti_directed_odd_cycle(D: Digraph) -> Witness | None:
    """An induced odd cycle of length >= 5 matching the anti-directed
    source/sink pattern under some rotation or reflection.  Absence
    certifies membership in class B."""
    if D.n > CYCLE_CAP:
        raise TooLarge(f"cycle finders capped at n={CYCLE_CAP}")
    for cyc, flags in _induced_odd_cycles(D, min_len=5):
        L = len(cyc)
        required = _anti_required(L)
        for seq, fl in ((cyc, flags), (cyc[:1] + cyc[:0:-1], flags[:1] + flags[:0:-1])):
            for r in range(L):
                if all(fl[(r + i) % L] for i in required):
                    labeling = tuple(seq[(r + i) % L] for i in range(L))
                    return Witness("anti_directed_odd_cycle", labeling)
    return None


def in_class_d(D: Digraph) -> bool:
    return find_induced_blocking_odd_cycle(D) is None


def in_class_b(D: Digraph) -> bool:
    return find_induced_anti_directed_odd_cycle(D) is None


def validate_witness(D: Digraph, w: Witness) -> bool:
    """Structure-specific re-check of a finder's output against D."""
    vs = w.vertices
    if len(set(vs)) != len(vs) or any(not 0 <= v < D.n for v in vs):
        return False
    if w.kind == "transitive_triangle":
        u, v, x = vs
        return (
            D.has_arc(u, v)
            and D.has_arc(v, x)
            and D.has_arc(u, x)
            and not D.has_arc(v, u)
            and not D.has_arc(x, v)
            and not D.has_arc(x, u)
        )
    if w.kind in ("blocking_odd_cycle", "anti_directed_odd_cycle"):
        L = len(vs)
        if L % 2 == 0 or L < 3:
            return False
        if w.kind == "anti_directed_odd_cycle" and L < 5:
            return False
        U = underlying_graph(D)
        for i in range(L):
            for j in range(i + 1, L):
                adjacent = U.adjacent(vs[i], vs[j])
                on_cycle = j - i == 1 or (i == 0 and j == L - 1)
                if adjacent != on_cycle:
                    return False
        sub, vmap = induced(D, vs)
        back = {old: new for new, old in enumerate(vmap)}
        flags = [
            sub.is_source(back[v]) or sub.is_sink(back[v]) for v in vs
        ]
        if w.kind == "blocking_odd_cycle":
            return flags[0] and flags[1] and w.extra == (vs[0], vs[1])
        return all(flags[i] for i in _anti_required(L))
    return False


# -- series-parallel recognition -------------------------------------------


def is_series_parallel(G: Graph) -> bool:
    """True iff G has no K4-subdivision, by iterated reduction: delete
    degree <= 1 vertices, suppress degree-2 vertices, drop the loops and
    parallel edges this creates.  SP iff the null graph is reached."""
    adj: dict[int, set[int]] = {v: set(G.neighbors(v)) for v in range(G.n)}
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v not in adj:
                continue
            deg = len(adj[v])
            if deg <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif deg == 2:
                a, b = sorted(adj[v])
                adj[a].discard(v)
                adj[b].discard(v)
                del adj[v]
                if a != b:
                    adj[a].add(b)  # no-op if already adjacent: parallel dropped
                    adj[b].add(a)
                changed = True
    return not adj


def has_k4_subdivision(G: Graph) -> bool:
    """Independent oracle: brute-force search for a K4-subdivision by
    assigning every vertex to one of four branches or to none."""
    n = G.n
    if n < 4:
        return False

    # choose 4 branch vertices, then route the 6 connecting paths with
    # disjoint interiors by backtracking over the pairs
    import itertools

    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def connect(branch, idx, used):
        if idx == len(pairs):
            return True
        a, b = branch[pairs[idx][0]], branch[pairs[idx][1]]

        def paths(v, target, seen):
            if G.adjacent(v, target):
                yield seen
            for w in G.neighbors(v):
                if w == target or w in used or w in seen or w in branch:
                    continue
                yield from paths(w, target, seen | {w})

        for interior in paths(a, b, frozenset()):
            if connect(branch, idx + 1, used | interior):
                return True
        return False

    for branch in itertools.combinations(range(n), 4):
        if connect(branch, 0, frozenset()):
            return True
    return False


def is_two_connected(G: Graph) -> bool:
    if G.n < 3 or not G.is_connected():
        return False
    for v in range(G.n):
        H, _ = G.induced([u for u in range(G.n) if u != v])
        if not H.is_connected():
            return False
    return True


def sp_induced_cycle_two_high(G: Graph) -> tuple[int, ...]:
    """An induced cycle of a 2-connected series-parallel graph with at
    most two vertices of degree > 2 (shortest such cycle)."""
    if G.n < 3:
        raise PreconditionViolated("need n >= 3")
    if not is_two_connected(G):
        raise PreconditionViolated("graph is not 2-connected")
    if not is_series_parallel(G):
        raise PreconditionViolated("graph is not series-parallel")
    for cyc in chordless_cycles(G, min_len=3):
        high = sum(1 for v in cyc if G.degree(v) > 2)
        if high <= 2:
            return cyc
    raise PreconditionViolated("no induced cycle with <= 2 high-degree vertices")


# -- combined report -------------------------------------------------------


def classify(D: Digraph) -> ClassReport:
    U = underlying_graph(D)
    perfect, _ = is_perfect(U)
    return ClassReport(
        n=D.n,
        tournament=is_tournament(D),
        semicomplete=is_semicomplete(D),
        complete=is_complete(D),
        symmetric=is_symmetric(D),
        in_semicomplete=is_in_semicomplete(D),
        lonely_arc_count=len(lonely_arcs(D)),
        series_parallel=is_series_parallel(U),
        perfect=perfect,
        in_b=in_class_b(D),
        in_d=in_class_d(D),
    )
