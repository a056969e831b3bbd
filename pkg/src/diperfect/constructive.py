"""Constructive partition builders.

Each public function realizes one constructive proof as an algorithm.
Steps a proof guarantees to succeed are still verified at runtime; a
failed guarantee raises InternalTheoremViolation instead of being
silently patched, so bugs and precondition leaks surface immediately.
All free choices (which vertex, which path) are resolved by smallest
label for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Digraph,
    Graph,
    component_of,
    are_isomorphic,
    induced,
    is_path_of,
    is_strong,
    strong_decomposition,
    underlying_graph,
    E4,
)
from .errors import (
    AlphaNotAdditive,
    ExceptionDigraph,
    InsertionImpossible,
    InternalTheoremViolation,
    NotACliqueCut,
    NotACycle,
    NotAPartition,
    NotInClassB,
    NotInClassD,
    NotInSemicomplete,
    NotMaximumStable,
    NotPerfect,
    NotSemicomplete,
    NotSeriesParallel,
    NotStable,
    NotStrong,
    NotUniversal,
    PreconditionViolated,
    SharedEndvertex,
    SidesViolated,
    TooManyLonelyArcs,
    TransitiveTrianglePresent,
)
from . import oracles
from .oracles import (
    PathPartition,
    alpha_of,
    alpha_of_subset,
    hamilton_search,
    is_stable,
    max_bipartite_matching,
    min_clique_partition,
    min_path_partition,
    stable_family_of_graph,
)
from .forbidden import (
    find_induced_transitive_triangle,
    in_class_b,
    in_class_d,
    is_in_semicomplete,
    is_semicomplete,
    lonely_arcs,
    sp_induced_cycle_two_high,
    is_series_parallel,
)


@dataclass
class BuildTrace:
    steps: list = field(default_factory=list)

    def add(self, lemma: str, **payload):
        self.steps.append((lemma, tuple(sorted(payload.items()))))

    def merge(self, other: "BuildTrace"):
        self.steps.extend(other.steps)


def _check_mode(mode: str):
    if mode not in ("alpha", "be"):
        raise ValueError(f"mode must be alpha or be, got {mode!r}")


def _require_max_stable(D: Digraph, S) -> frozenset[int]:
    S = frozenset(S)
    U = underlying_graph(D)
    if not is_stable(U, S):
        raise NotStable(f"{sorted(S)} is not stable")
    if len(S) != alpha_of(U):
        raise NotMaximumStable(
            f"{sorted(S)} has size {len(S)}, alpha is {alpha_of(U)}"
        )
    return S


# -- Hamilton paths in semicomplete digraphs -------------------------------


def redei_hamilton_path(D: Digraph) -> tuple[int, ...]:
    """Hamilton path of a semicomplete digraph by incremental insertion."""
    if not is_semicomplete(D):
        raise NotSemicomplete("redei_hamilton_path needs a semicomplete digraph")
    path: list[int] = []
    for v in range(D.n):
        for p in range(len(path) + 1):
            if (p == 0 or D.has_arc(path[p - 1], v)) and (
                p == len(path) or D.has_arc(v, path[p])
            ):
                path.insert(p, v)
                break
        else:
            raise InternalTheoremViolation("insertion must succeed")
    return tuple(path)


def _dom(D: Digraph, u: int, v: int) -> bool:
    return D.has_arc(u, v) and not D.has_arc(v, u)


def _absorb_move(D: Digraph, P: tuple[int, ...], u: int):
    """The move chain for one outside vertex u with arcs both to and
    from the path; returns a longer candidate path or None."""
    l = len(P)
    ks = [i for i in range(l) if D.has_arc(u, P[i])]
    if not ks:
        return None
    k = max(ks)
    # insert u behind the last in-arc before position k
    for j in range(k - 1, -1, -1):
        if D.has_arc(P[j], u):
            return P[: j + 1] + (u,) + P[j + 1 :]
    if k == 0:
        return tuple(reversed(P[1:])) + (u, P[0])
    if k == l - 1:
        return (P[-1], u) + tuple(reversed(P[:-1]))
    # 0 < k < l-1 below (k is the 0-based position of the proof's v_k)
    vk, vkm, vkp = P[k], P[k - 1], P[k + 1]
    if D.has_arc(vk, vkm):
        return tuple(reversed(P[k + 1 :])) + (u,) + tuple(reversed(P[: k + 1]))
    if D.has_arc(vkp, vk):
        return tuple(reversed(P[k:])) + (u,) + tuple(reversed(P[:k]))
    # forced now: vk <-> u and v_{k+1} <-> v_{k-1}
    if l > k + 2:
        return (
            tuple(reversed(P[k + 2 :]))
            + (u, vk, vkp)
            + tuple(reversed(P[:k]))
        )
    if k > 1:
        return (P[-1], vkm, vk, u) + tuple(reversed(P[: k - 1]))
    return None


def _valid_extension(D, P, Q) -> bool:
    return (
        Q is not None
        and len(Q) > len(P)
        and {Q[0], Q[-1]} == {P[0], P[-1]}
        and is_path_of(D, Q)
    )


def _lengthen(D: Digraph, P: tuple[int, ...]):
    """One extension move of the strong-case machine: a strictly longer
    path with the same endpoint set, or None on a stall.

    Every candidate is validated before use: the proof derives its moves
    for a longest path, so on shorter intermediate paths a candidate may
    fail and the next outside vertex is tried instead.  A stall with all
    candidates exhausted implies the four-vertex exception host.
    """
    B = sorted(set(range(D.n)) - set(P))
    Bp = [u for u in B if all(_dom(D, v, u) for v in P)]
    Bpp = [u for u in B if all(_dom(D, u, v) for v in P)]
    Bstar = [u for u in B if u not in Bp and u not in Bpp]

    if not Bstar:
        if not Bp or not Bpp:
            return None  # cannot happen in a strong host
        u, w = Bp[0], Bpp[0]
        # uw is forced, else {u, v1, w} induces a transitive triangle
        Q = (P[0], u, w) + P[1:]
        return Q if _valid_extension(D, P, Q) else None

    for u in Bstar:
        Q = _absorb_move(D, P, u)
        if _valid_extension(D, P, Q):
            return Q
    if len(P) == 3:
        for u in Bstar:
            for w in Bstar:
                if w == u:
                    continue
                Q = (P[2], w, P[1], u, P[0])
                if _valid_extension(D, P, Q):
                    return Q
    return None


def st_hamilton_path(D: Digraph, s: int, t: int) -> tuple[int, ...]:
    """Hamilton path with endpoint set {s, t} in a semicomplete digraph
    free of induced transitive triangles.

    Strong case: repeated application of the lengthening moves.  The
    unique stall is the four-vertex exception digraph on its two digon
    pairs.  Non-strong case: two complete strong components X1 -> X2;
    the endpoints must lie in different components.
    """
    if s == t:
        raise PreconditionViolated("endpoints must differ")
    if not is_semicomplete(D):
        raise NotSemicomplete("st_hamilton_path needs a semicomplete digraph")
    if find_induced_transitive_triangle(D) is not None:
        raise TransitiveTrianglePresent("host contains a transitive triangle")

    if not is_strong(D):
        X1, X2 = _two_complete_components(D)
        in1 = {s, t} & set(X1)
        if len(in1) != 1:
            raise SidesViolated("endpoints must lie in different strong components")
        a = s if s in in1 else t
        b = t if a == s else s
        path = (
            (a,)
            + tuple(v for v in X1 if v != a)
            + tuple(v for v in X2 if v != b)
            + (b,)
        )
        if not is_path_of(D, path):
            raise InternalTheoremViolation("non-strong concatenation invalid")
        return path

    P = (s, t) if D.has_arc(s, t) else (t, s)
    while len(P) < D.n:
        Q = _lengthen(D, P)
        if Q is None:
            if are_isomorphic(D, E4) and hamilton_search(D, ("ends", {s, t})) is None:
                raise ExceptionDigraph(f"no Hamilton path with ends {{{s}, {t}}}")
            raise InternalTheoremViolation("extension machine stalled")
        if len(Q) <= len(P) or not is_path_of(D, Q) or {Q[0], Q[-1]} != {s, t}:
            raise InternalTheoremViolation(f"invalid move {P} -> {Q}")
        P = Q
    return P


def _two_complete_components(D: Digraph):
    """The ordered pair (X1, X2) of a non-strong transitive-triangle-free
    semicomplete digraph, X1 minimal, both complete, X1 -> X2."""
    sd = strong_decomposition(D)
    if len(sd.components) != 2:
        raise InternalTheoremViolation("expected exactly two strong components")
    first_minimal = sd.minimal_flags()[0]
    X1 = sd.components[0] if first_minimal else sd.components[1]
    X2 = sd.components[1] if first_minimal else sd.components[0]
    for X in (X1, X2):
        for i, u in enumerate(X):
            for v in X[i + 1 :]:
                if not (D.has_arc(u, v) and D.has_arc(v, u)):
                    raise InternalTheoremViolation("component is not complete")
    for u in X1:
        for v in X2:
            if not _dom(D, u, v):
                raise InternalTheoremViolation("X1 must dominate X2")
    return tuple(X1), tuple(X2)


def _semicomplete_hamilton_path_at(D: Digraph, x: int) -> tuple[int, ...]:
    """Hamilton path of a transitive-triangle-free semicomplete digraph
    with x as an endpoint."""
    if D.n == 1:
        return (x,)
    if is_strong(D):
        for t in range(D.n):
            if t == x:
                continue
            try:
                return st_hamilton_path(D, x, t)
            except ExceptionDigraph:
                continue
        cyc = hamilton_search(D, ("cycle",))
        if cyc is None:
            raise InternalTheoremViolation("strong semicomplete digraph lost its Hamilton cycle")
        i = cyc.index(x)
        return cyc[i:] + cyc[:i]
    X1, X2 = _two_complete_components(D)
    if x in X1:
        return (x,) + tuple(v for v in X1 if v != x) + X2
    return X1 + tuple(v for v in X2 if v != x) + (x,)


def partition_semicomplete(D: Digraph, S, mode: str):
    """S-path partition of a transitive-triangle-free semicomplete
    digraph: a single Hamilton path with the one stable vertex as an
    endpoint (which also serves alpha-mode)."""
    _check_mode(mode)
    if not is_semicomplete(D):
        raise NotSemicomplete("partition_semicomplete needs a semicomplete digraph")
    if find_induced_transitive_triangle(D) is not None:
        raise TransitiveTrianglePresent("host contains a transitive triangle")
    S = _require_max_stable(D, S)
    (x,) = sorted(S)
    trace = BuildTrace()
    path = _semicomplete_hamilton_path_at(D, x)
    trace.add("endpoint_hamilton_path", endpoint=x)
    pp = PathPartition((path,), mode, (x,))
    if not oracles.validate_partition(D, pp):
        raise InternalTheoremViolation("semicomplete construction produced an invalid partition")
    return pp, trace


# -- perfect underlying graphs ---------------------------------------------


def partition_perfect(D: Digraph, S, mode: str):
    """S-path partition of a digraph with perfect underlying graph via a
    minimum clique partition plus one Hamilton path per clique."""
    _check_mode(mode)
    S = _require_max_stable(D, S)
    U = underlying_graph(D)
    perfect, hole = oracles.is_perfect(U)
    if not perfect:
        raise NotPerfect(f"underlying graph has {hole[0]} {hole[1]}")
    if mode == "be" and not in_class_d(D):
        raise NotInClassD("be-mode needs a host without induced blocking odd cycles")

    cliques = min_clique_partition(U)
    if len(cliques) != len(S):
        raise InternalTheoremViolation("clique cover size must equal alpha on perfect hosts")
    trace = BuildTrace()
    trace.add("minimum_clique_partition", cliques=tuple(map(tuple, cliques)))
    paths = []
    for C in cliques:
        hit = sorted(S & set(C))
        if len(hit) != 1:
            raise InternalTheoremViolation("each clique must meet S exactly once")
        sub, vmap = induced(D, C)
        back = {old: new for new, old in enumerate(vmap)}
        if mode == "alpha":
            local = redei_hamilton_path(sub)
            trace.add("redei_hamilton_path", clique=tuple(C))
        else:
            local = _semicomplete_hamilton_path_at(sub, back[hit[0]])
            trace.add("endpoint_hamilton_path", clique=tuple(C), endpoint=hit[0])
        paths.append(tuple(vmap[v] for v in local))
    pp = PathPartition(tuple(sorted(paths)), mode, tuple(sorted(S)))
    if not oracles.validate_partition(D, pp):
        raise InternalTheoremViolation("perfect-host construction produced an invalid partition")
    return pp, trace


# -- universal-vertex extension --------------------------------------------


def extend_through_universal(D: Digraph, v: int, S, P: PathPartition, mode: str) -> PathPartition:
    """Insert a universal vertex v into a partition of D - v.

    The partition P is expressed in D's labels (v absent).  alpha-mode
    inserts v into the first path at the first feasible position.
    be-mode follows the universal-vertex lemma: insert behind the last
    in-arc, or reverse the all-digon path and prepend v.
    """
    _check_mode(mode)
    if any(not D.adjacent(v, u) for u in range(D.n) if u != v):
        raise NotUniversal(f"vertex {v} is not universal")
    S = _require_max_stable(D, S)
    if v in S:
        raise PreconditionViolated("a universal vertex cannot lie in a stable set of size >= 2")
    if mode == "be" and not in_class_d(D):
        raise NotInClassD("be-mode needs a host without induced blocking odd cycles")

    paths = list(P.paths)
    target = paths[0]

    if mode == "alpha":
        for idx, path in enumerate(paths):
            for p in range(len(path) + 1):
                if (p == 0 or D.has_arc(path[p - 1], v)) and (
                    p == len(path) or D.has_arc(v, path[p])
                ):
                    paths[idx] = path[:p] + (v,) + path[p:]
                    return PathPartition(tuple(sorted(paths)), mode, P.stable_set)
        raise InsertionImpossible("universal vertex insertion failed")

    # be mode: work on the first path, oriented so its S vertex is first
    flipped = target[-1] in S and target[0] not in S
    path = target[::-1] if flipped else target
    new = None
    for j in range(len(path), 0, -1):
        # insert v after position j-1 (append when j == len)
        if D.has_arc(path[j - 1], v) and (j == len(path) or D.has_arc(v, path[j])):
            new = path[:j] + (v,) + path[j:]
            break
    if new is None:
        # v dominates every path vertex; all interior arcs are digons
        new = (v,) + path[::-1]
    if flipped:
        new = new[::-1]
    if not is_path_of(D, new):
        raise InternalTheoremViolation("universal extension produced a non-path")
    paths[0] = new
    return PathPartition(tuple(sorted(paths)), mode, P.stable_set)


# -- composition -----------------------------------------------------------


def compose_partitions(D: Digraph, parts, mode: str) -> PathPartition:
    """Union of per-part partitions, relabeled to D.

    ``parts`` is a list of (subdigraph, vertex map, PathPartition) where
    vertex_map[new] = old.  Requires the vertex sets to partition V(D)
    and alpha to be additive across them.
    """
    _check_mode(mode)
    seen: set[int] = set()
    total_alpha = 0
    for H, vmap, _pp in parts:
        vs = set(vmap)
        if vs & seen or len(vmap) != H.n:
            raise NotAPartition("part vertex sets overlap")
        seen |= vs
        total_alpha += alpha_of(underlying_graph(H))
    if seen != set(range(D.n)):
        raise NotAPartition("parts do not cover the host")
    if total_alpha != alpha_of(underlying_graph(D)):
        raise AlphaNotAdditive(
            f"sum of part alphas {total_alpha} != alpha {alpha_of(underlying_graph(D))}"
        )
    paths = []
    stable: list[int] = []
    for _H, vmap, pp in parts:
        paths.extend(tuple(vmap[v] for v in path) for path in pp.paths)
        if pp.stable_set:
            stable.extend(vmap[v] for v in pp.stable_set)
    return PathPartition(tuple(sorted(paths)), mode, tuple(sorted(stable)))


# -- alpha-additive splits -------------------------------------------------


def clique_cut_split(G: Graph, B):
    """Bipartition (H1, H2) with alpha(G) = alpha(H1) + alpha(H2) and
    every crossing edge meeting the clique cut B.  Follows the proof's
    induction: peel one cut vertex at a time, then reattach it to the
    side where alpha does not grow."""
    B = frozenset(B)
    for u in B:
        for v in B:
            if u < v and not G.adjacent(u, v):
                raise NotACliqueCut(f"{sorted(B)} is not a clique")
    if G.is_connected():
        rest, _ = G.induced(sorted(set(range(G.n)) - B))
        if not B or rest.n == 0 or rest.is_connected():
            raise NotACliqueCut(f"removing {sorted(B)} does not disconnect the graph")

    def sub_connected(W: frozenset[int]) -> bool:
        H, _ = G.induced(sorted(W))
        return H.is_connected()

    def split(W: frozenset[int], B: frozenset[int]):
        if not sub_connected(W):
            H, vmap = G.induced(sorted(W))
            comp = component_of(H, 0)
            H1 = frozenset(vmap[v] for v in comp)
            return H1, W - H1
        b = min(B)
        W2 = W - {b}
        B2 = B - {b}
        if not sub_connected(W2) or not B2:
            if sub_connected(W2):
                raise NotACliqueCut("cut exhausted without disconnecting")
            H, vmap = G.induced(sorted(W2))
            comp = component_of(H, 0)
            H1, H2 = frozenset(vmap[v] for v in comp), W2 - frozenset(
                vmap[v] for v in comp
            )
        else:
            H1, H2 = split(W2, B2)
        aW, aW2 = alpha_of_subset(G, W), alpha_of_subset(G, W2)
        a1, a2 = alpha_of_subset(G, H1), alpha_of_subset(G, H2)
        if aW == aW2:
            if alpha_of_subset(G, H1 | {b}) == a1:
                return H1 | {b}, H2
            if alpha_of_subset(G, H2 | {b}) == a2:
                return H1, H2 | {b}
            raise InternalTheoremViolation("alpha grew on both sides")
        return H1 | {b}, H2

    H1, H2 = split(frozenset(range(G.n)), B)
    if alpha_of_subset(G, H1) + alpha_of_subset(G, H2) != alpha_of(G):
        raise InternalTheoremViolation("clique cut split is not alpha-additive")
    return sorted(H1), sorted(H2)


def _cycle_order(G: Graph, C) -> list[int]:
    """Vertices of the chordless cycle C in traversal order, starting at
    min(C), second vertex the smaller neighbor."""
    Cset = set(C)
    start = min(C)
    nbrs = sorted(w for w in G.neighbors(start) if w in Cset)
    order = [start, nbrs[0]]
    while len(order) < len(C):
        nxt = [
            w
            for w in G.neighbors(order[-1])
            if w in Cset and w != order[-2]
        ]
        order.append(nxt[0])
    return order


def cycle_split(G: Graph, C):
    """Alpha-additive bipartition from a proper induced cycle with at
    most two vertices of degree > 2, by the proof's case analysis."""
    Cset = set(C)
    if len(Cset) == G.n:
        raise PreconditionViolated("the cycle must be proper")
    high = sorted(v for v in C if G.degree(v) > 2)
    if len(high) > 2:
        raise PreconditionViolated("more than two high-degree vertices on the cycle")
    if not high:
        return sorted(Cset), sorted(set(range(G.n)) - Cset)
    if len(high) == 1:
        return clique_cut_split(G, {high[0]})

    order = _cycle_order(G, C)
    x0 = high[0]
    i0 = order.index(x0)
    order = order[i0:] + order[:i0]
    k = order.index(high[1])
    rest = sorted(set(range(G.n)) - Cset)

    HC, cmap = G.induced(sorted(Cset))
    cback = {old: new for new, old in enumerate(cmap)}
    for SC in stable_family_of_graph(HC).sets:
        picked = {cmap[v] for v in SC}
        if not picked & {order[0], order[k]}:
            result = sorted(Cset), rest
            break
    else:
        HR, rmap = G.induced(rest)
        n0 = set(G.neighbors(order[0])) & set(rest)
        nk = set(G.neighbors(order[k])) & set(rest)
        chosen = None
        if rest:
            for SR in stable_family_of_graph(HR).sets:
                picked = {rmap[v] for v in SR}
                if not picked & n0 or not picked & nk:
                    chosen = sorted(Cset), rest
                    break
        if chosen is not None:
            result = chosen
        else:
            P1 = order[1:k]
            if not P1:
                P1 = order[k + 1 :]
            result = sorted(P1), sorted(set(range(G.n)) - set(P1))

    H1, H2 = result
    if alpha_of_subset(G, H1) + alpha_of_subset(G, H2) != alpha_of(G):
        raise InternalTheoremViolation("cycle split is not alpha-additive")
    return H1, H2


# -- cycle-shaped hosts ----------------------------------------------------


def _is_cycle_graph(G: Graph) -> bool:
    return (
        G.n >= 3
        and all(G.degree(v) == 2 for v in range(G.n))
        and G.is_connected()
    )


def partition_cycle_digraph(D: Digraph, S, mode: str) -> PathPartition:
    """S-path partition of a digraph whose underlying graph is a cycle."""
    _check_mode(mode)
    U = underlying_graph(D)
    if not _is_cycle_graph(U):
        raise NotACycle("underlying graph is not a cycle")
    S = _require_max_stable(D, S)
    if mode == "alpha" and not in_class_b(D):
        raise NotInClassB("alpha-mode needs a host without induced anti-directed odd cycles")
    if mode == "be" and not in_class_d(D):
        raise NotInClassD("be-mode needs a host without induced blocking odd cycles")

    n = D.n
    if n % 2 == 0 or n == 3:
        # even cycles and triangles have perfect underlying graphs
        pp, _trace = partition_perfect(D, S, mode)
        return pp

    k = (n - 1) // 2
    order = _cycle_order(U, list(range(n)))
    # rotate so the unique adjacent non-S pair sits at positions 2k-1, 2k
    x = None
    for i in range(n):
        if order[i] not in S and order[(i + 1) % n] not in S:
            x = [order[(i + 2 + j) % n] for j in range(n)]
            break
    if x is None or any(x[2 * j] not in S for j in range(k)):
        raise InternalTheoremViolation("stable set does not alternate as required")

    def edge_arc(a: int, b: int) -> tuple[int, int]:
        return (a, b) if D.has_arc(a, b) else (b, a)

    def two_path(a: int, m: int, b: int):
        # a length-two path on {a, m, b} with m in the middle
        if D.has_arc(a, m) and D.has_arc(m, b):
            return (a, m, b)
        if D.has_arc(b, m) and D.has_arc(m, a):
            return (b, m, a)
        return None

    # main case: cover the adjacent non-S pair together with a neighbor z
    for z_pos, cover in (
        (0, [(2 * j - 1, 2 * j) for j in range(1, k)]),
        (2 * k - 2, [(2 * j, 2 * j + 1) for j in range(0, k - 1)]),
    ):
        if z_pos == 0:
            P = two_path(x[2 * k - 1], x[2 * k], x[0])
        else:
            P = two_path(x[2 * k - 2], x[2 * k - 1], x[2 * k])
        if P is not None:
            paths = [P] + [edge_arc(x[a], x[b]) for a, b in cover]
            return PathPartition(tuple(sorted(paths)), mode, tuple(sorted(S)))

    if mode == "be":
        raise InternalTheoremViolation(
            "a two-path around the non-blocking pair must exist in class D"
        )

    # alpha fallback: a two-path centered at some S vertex
    for i in range(0, 2 * k - 1, 2):
        P = two_path(x[(i - 1) % n], x[i], x[(i + 1) % n])
        if P is None:
            continue
        paths = [P]
        for j in range(0, 2 * k - 1, 2):
            if j == i:
                continue
            if j < i:
                paths.append(edge_arc(x[(j - 1) % n], x[j]))
            else:
                paths.append(edge_arc(x[j], x[j + 1]))
        return PathPartition(tuple(sorted(paths)), mode, tuple(sorted(S)))

    raise InternalTheoremViolation(
        "every stable vertex is a source or sink: anti-directed host slipped the gate"
    )


# -- series-parallel underlying graphs -------------------------------------


def partition_series_parallel(D: Digraph, S, mode: str):
    """S-path partition of a digraph with series-parallel underlying
    graph, by recursive alpha-additive splitting."""
    _check_mode(mode)
    U = underlying_graph(D)
    if not is_series_parallel(U):
        raise NotSeriesParallel("underlying graph contains a K4-subdivision")
    S = _require_max_stable(D, S)
    if mode == "alpha" and not in_class_b(D):
        raise NotInClassB("alpha-mode needs a host without induced anti-directed odd cycles")
    if mode == "be" and not in_class_d(D):
        raise NotInClassD("be-mode needs a host without induced blocking odd cycles")
    trace = BuildTrace()
    pp = _psp(D, S, mode, trace)
    if not oracles.validate_partition(D, pp):
        raise InternalTheoremViolation("series-parallel construction produced an invalid partition")
    return pp, trace


def _small_partition(D: Digraph, S: frozenset[int], mode: str) -> PathPartition:
    """Direct base case for n <= 2."""
    if D.n == 0:
        return PathPartition(tuple(), mode, tuple())
    if D.n == 1:
        return PathPartition(((0,),), mode, tuple(sorted(S)))
    if len(S) == 2:
        return PathPartition(((0,), (1,)), mode, tuple(sorted(S)))
    (x,) = S
    y = 1 - x
    if D.has_arc(x, y):
        return PathPartition(((x, y),), mode, tuple(sorted(S)))
    return PathPartition(((y, x),), mode, tuple(sorted(S)))


def _split_and_recurse(D, S, mode, trace, H1, H2, builder):
    parts = []
    for side in (H1, H2):
        sub, vmap = induced(D, side)
        back = {old: new for new, old in enumerate(vmap)}
        Ssub = frozenset(back[v] for v in S if v in set(side))
        if len(Ssub) != alpha_of(underlying_graph(sub)):
            raise InternalTheoremViolation("restricted stable set is not maximum on its side")
        parts.append((sub, vmap, builder(sub, Ssub, mode, trace)))
    return compose_partitions(D, parts, mode)


def _psp(D: Digraph, S: frozenset[int], mode: str, trace: BuildTrace) -> PathPartition:
    if D.n <= 2:
        return _small_partition(D, S, mode)
    U = underlying_graph(D)

    if not U.is_connected():
        comp = sorted(component_of(U, 0))
        rest = sorted(set(range(D.n)) - set(comp))
        trace.add("component_split", component=tuple(comp))
        return _split_and_recurse(D, S, mode, trace, comp, rest, _psp)

    if D.n <= oracles.PERFECT_CAP and oracles.is_perfect(U)[0]:
        trace.add("perfect_shortcut", n=D.n)
        pp, sub_trace = partition_perfect(D, S, mode)
        trace.merge(sub_trace)
        return pp

    if _is_cycle_graph(U):
        trace.add("cycle_host", n=D.n)
        return partition_cycle_digraph(D, S, mode)

    cut = next(
        (
            v
            for v in range(D.n)
            if not U.induced([u for u in range(D.n) if u != v])[0].is_connected()
        ),
        None,
    )
    if cut is not None:
        H1, H2 = clique_cut_split(U, {cut})
        trace.add("cut_vertex_split", vertex=cut, sides=(tuple(H1), tuple(H2)))
        return _split_and_recurse(D, S, mode, trace, H1, H2, _psp)

    C = sp_induced_cycle_two_high(U)
    H1, H2 = cycle_split(U, C)
    trace.add("cycle_split", cycle=tuple(C), sides=(tuple(H1), tuple(H2)))
    return _split_and_recurse(D, S, mode, trace, H1, H2, _psp)


# -- in-semicomplete digraphs ----------------------------------------------


def hamilton_cycle_strong_in_semicomplete(D: Digraph) -> tuple[int, ...]:
    """Hamilton cycle of a strong in-semicomplete digraph."""
    if not is_in_semicomplete(D):
        raise NotInSemicomplete("host is not in-semicomplete")
    if D.n < 2 or not is_strong(D):
        raise NotStrong("host must be strong with n >= 2")
    cyc = hamilton_search(D, ("cycle",))
    if cyc is None:
        raise InternalTheoremViolation("strong in-semicomplete digraph without a Hamilton cycle")
    return cyc


def partition_in_semicomplete(D: Digraph, S, mode: str):
    """S-path partition of an in-semicomplete digraph."""
    _check_mode(mode)
    if not is_in_semicomplete(D):
        raise NotInSemicomplete("host is not in-semicomplete")
    S = _require_max_stable(D, S)
    if mode == "be" and not in_class_d(D):
        raise NotInClassD("be-mode needs a host without induced blocking odd cycles")
    trace = BuildTrace()
    pp = _pis(D, S, mode, trace)
    if not oracles.validate_partition(D, pp):
        raise InternalTheoremViolation("in-semicomplete construction produced an invalid partition")
    return pp, trace


def _pis(D: Digraph, S: frozenset[int], mode: str, trace: BuildTrace) -> PathPartition:
    if D.n <= 2:
        return _small_partition(D, S, mode)
    U = underlying_graph(D)

    if len(S) == 1:
        # alpha 1 means every pair is adjacent: the host is semicomplete
        (x,) = S
        if mode == "alpha":
            path = redei_hamilton_path(D)
            trace.add("redei_hamilton_path", n=D.n)
        else:
            path = _semicomplete_hamilton_path_at(D, x)
            trace.add("endpoint_hamilton_path", endpoint=x)
        return PathPartition((path,), mode, tuple(sorted(S)))

    if not U.is_connected():
        comp = sorted(component_of(U, 0))
        rest = sorted(set(range(D.n)) - set(comp))
        trace.add("component_split", component=tuple(comp))
        return _split_and_recurse(D, S, mode, trace, comp, rest, _pis)

    if is_strong(D):
        cyc = hamilton_cycle_strong_in_semicomplete(D)
        pos = sorted(i for i, v in enumerate(cyc) if v in S)
        paths = []
        for a, b in zip(pos, pos[1:] + [pos[0] + len(cyc)]):
            paths.append(tuple(cyc[i % len(cyc)] for i in range(a, b)))
        trace.add("hamilton_cycle_segments", cycle=cyc, segments=len(paths))
        return PathPartition(tuple(sorted(paths)), mode, tuple(sorted(S)))

    sd = strong_decomposition(D)
    sinks = [
        i
        for i in range(len(sd.components))
        if not sd.condensation.out_neighbors(i)
    ]
    X = set(sd.components[sinks[0]])
    Y = sorted(
        {
            u
            for u in range(D.n)
            if u not in X and any(D.has_arc(u, v) for v in X)
        }
    )
    if not Y:
        raise InternalTheoremViolation("a connected non-strong host must feed its sink component")
    subY, _ = induced(D, Y)
    if not is_semicomplete(subY):
        raise InternalTheoremViolation("in-dominators of the sink component must be semicomplete")

    without_Y = sorted(set(range(D.n)) - set(Y))
    HY, _ = U.induced(without_Y)
    if without_Y and not HY.is_connected():
        H1, H2 = clique_cut_split(U, Y)
        trace.add("clique_cut_split", cut=tuple(Y), sides=(tuple(H1), tuple(H2)))
        return _split_and_recurse(D, S, mode, trace, H1, H2, _pis)

    y = Y[0]
    if any(not D.adjacent(y, u) for u in range(D.n) if u != y):
        raise InternalTheoremViolation("in-dominator must be universal when Y is not a cut")
    others = sorted(set(range(D.n)) - {y})
    sub, vmap = induced(D, others)
    back = {old: new for new, old in enumerate(vmap)}
    Ssub = frozenset(back[v] for v in S)
    inner = _pis(sub, Ssub, mode, trace)
    lifted = PathPartition(
        tuple(sorted(tuple(vmap[v] for v in path) for path in inner.paths)),
        mode,
        tuple(sorted(S)),
    )
    trace.add("universal_vertex_extension", vertex=y)
    return extend_through_universal(D, y, S, lifted, mode)


# -- semi-symmetric digraphs -----------------------------------------------


def partition_semi_symmetric(D: Digraph, S):
    """S_BE-path partition of a digraph with at most three lonely arcs,
    pairwise disjoint when there are exactly three."""
    S = _require_max_stable(D, S)
    lonely = lonely_arcs(D)
    if len(lonely) > 3:
        raise TooManyLonelyArcs(f"{len(lonely)} lonely arcs, at most 3 supported")
    if len(lonely) == 3:
        ends = [set(a) for a in lonely]
        for i in range(3):
            for j in range(i + 1, 3):
                if ends[i] & ends[j]:
                    raise SharedEndvertex(
                        f"lonely arcs {lonely[i]} and {lonely[j]} share an endvertex"
                    )
        if not in_class_d(D):
            raise NotInClassD("three-lonely-arc case needs a host in class D")
    trace = BuildTrace()
    pp = _pss(D, S, trace, D.n + len(D.arcs) + 1)
    if not oracles.validate_partition(D, pp):
        raise InternalTheoremViolation("semi-symmetric construction produced an invalid partition")
    return pp, trace


def _directional_build(D: Digraph, S: frozenset[int], trace: BuildTrace, direction: str) -> PathPartition:
    """Berge's construction: delete the arcs entering (resp. leaving) S,
    take a minimum path partition; every S vertex is a source (sink) of
    the pruned digraph, so it starts (ends) its own path."""
    if direction == "leaving":
        kept = [a for a in D.arcs if a[1] not in S]
    else:
        kept = [a for a in D.arcs if a[0] not in S]
    Dp = Digraph(D.n, kept)
    if alpha_of(underlying_graph(Dp)) != len(S):
        raise InternalTheoremViolation("pruning digon halves must preserve alpha")
    mp = min_path_partition(Dp)
    if mp.size != len(S):
        raise InternalTheoremViolation("minimum partition size must equal alpha")
    for path in mp.paths:
        anchor = path[0] if direction == "leaving" else path[-1]
        if anchor not in S or sum(1 for v in path if v in S) != 1:
            raise InternalTheoremViolation("path does not anchor at its stable vertex")
    trace.add("berge_direction", direction=direction, size=mp.size)
    return PathPartition(mp.paths, "be", tuple(sorted(S)))


def _mixed_build(D: Digraph, S: frozenset[int], entering, trace: BuildTrace) -> PathPartition:
    """Reversal trick: flip the lonely arcs entering S, build with every
    path leaving S, then reverse the paths that used a flipped arc (all
    their interior arcs are digons of the host)."""
    flipped = {(y, x) for (x, y) in entering}
    arcs = [a for a in D.arcs if a[1] not in S] + sorted(flipped)
    Dp = Digraph(D.n, arcs)
    if alpha_of(underlying_graph(Dp)) != len(S):
        raise InternalTheoremViolation("reversal must preserve alpha")
    mp = min_path_partition(Dp)
    if mp.size != len(S):
        raise InternalTheoremViolation("minimum partition size must equal alpha")
    paths = []
    for path in mp.paths:
        if len(path) >= 2 and (path[0], path[1]) in flipped:
            path = path[::-1]
        if not is_path_of(D, path):
            raise InternalTheoremViolation("mixed construction produced a non-path")
        paths.append(path)
    trace.add("lonely_arc_reversal", flipped=tuple(sorted(flipped)))
    return PathPartition(tuple(sorted(paths)), "be", tuple(sorted(S)))


def _pss(D: Digraph, S: frozenset[int], trace: BuildTrace, measure_bound: int) -> PathPartition:
    measure = D.n + len(D.arcs)
    if measure >= measure_bound:
        raise InternalTheoremViolation("recursion measure failed to decrease")
    if D.n <= 1:
        return _small_partition(D, S, "be")

    lonely = lonely_arcs(D)
    entering = [a for a in lonely if a[1] in S]
    leaving = [a for a in lonely if a[0] in S]
    disjoint = [a for a in lonely if a[0] not in S and a[1] not in S]

    if not entering:
        return _directional_build(D, S, trace, "leaving")
    if not leaving:
        return _directional_build(D, S, trace, "entering")
    if not disjoint:
        return _mixed_build(D, S, entering, trace)

    if len(entering) != 1 or len(leaving) != 1 or len(disjoint) != 1:
        raise InternalTheoremViolation("three-arc recursion needs one arc of each kind")
    (x1, x2) = leaving[0]
    (y1, y2) = entering[0]
    U = underlying_graph(D)

    if U.neighbors(y2) == (y1,):
        keep = sorted(set(range(D.n)) - {y1, y2})
        sub, vmap = induced(D, keep)
        back = {old: new for new, old in enumerate(vmap)}
        Ssub = frozenset(back[v] for v in S if v != y2)
        trace.add("pendant_shortcut", removed=(y1, y2))
        inner = _pss(sub, Ssub, trace, measure)
        paths = [tuple(vmap[v] for v in p) for p in inner.paths] + [(y1, y2)]
        return PathPartition(tuple(sorted(paths)), "be", tuple(sorted(S)))

    z = min(v for v in U.neighbors(y2) if v != y1)
    if not (D.has_arc(y2, z) and D.has_arc(z, y2)):
        raise InternalTheoremViolation("the extra neighbor must form a digon")
    Dp = Digraph(D.n, [a for a in D.arcs if a not in ((y2, z), (z, y2))])
    ap = alpha_of(underlying_graph(Dp))
    a = len(S)
    if ap == a:
        trace.add("digon_deletion", digon=(y2, z))
        return _pss(Dp, S, trace, measure)
    if ap != a + 1:
        raise InternalTheoremViolation("digon deletion can raise alpha by at most one")

    Sp = set(stable_family_of_graph(underlying_graph(Dp)).sets[0])
    if y2 not in Sp or z not in Sp or y1 in Sp:
        raise InternalTheoremViolation("every maximum stable set of the pruned host holds the digon pair")
    Spp = frozenset(Sp - {y2})
    R = sorted(S - Spp)
    Z = sorted(Spp - S)
    if y2 not in R or len(R) != len(Z):
        raise InternalTheoremViolation("exchange sets are malformed")
    adjacency = {r: [w for w in Z if U.adjacent(r, w)] for r in R}
    M = max_bipartite_matching(R, Z, adjacency)
    if M.size != len(R):
        raise InternalTheoremViolation("Hall's condition guarantees a perfect matching")
    match = dict(M.pairs)
    trace.add("hall_matching", r=tuple(R), z=tuple(Z), pairs=M.pairs)

    lonely_matched = [r for r in R if not (D.has_arc(r, match[r]) and D.has_arc(match[r], r))]
    keep = sorted(set(range(D.n)) - set(R))
    sub, vmap = induced(D, keep)
    back = {old: new for new, old in enumerate(vmap)}
    Ssub = frozenset(back[v] for v in Spp)

    if not lonely_matched:
        inner = _pss(sub, Ssub, trace, measure)
        trace.add("digon_reattachment", matched=tuple(sorted(match.items())))
        return _reattach(D, S, R, match, vmap, inner)

    if lonely_matched != [x1] or match[x1] != x2:
        raise InternalTheoremViolation("only the leaving lonely arc can be matched without a digon")
    x2s = back[x2]
    pruned = Digraph(sub.n, [a for a in sub.arcs if a[1] != x2s])
    inner = _pss(pruned, Ssub, trace, measure)
    trace.add("source_reattachment", source=x2, matched=tuple(sorted(match.items())))
    return _reattach(D, S, R, match, vmap, inner)


def _reattach(D, S, R, match, vmap, inner: PathPartition):
    paths = [tuple(vmap[v] for v in p) for p in inner.paths]
    for r in R:
        target = match[r]
        for i, path in enumerate(paths):
            if path[0] == target and D.has_arc(r, target):
                paths[i] = (r,) + path
                break
            if path[-1] == target and D.has_arc(target, r):
                paths[i] = path + (r,)
                break
        else:
            raise InternalTheoremViolation(f"no attachment point for {r}")
    for path in paths:
        if not is_path_of(D, path):
            raise InternalTheoremViolation("reattachment produced a non-path")
    return PathPartition(tuple(sorted(paths)), "be", tuple(sorted(S)))
