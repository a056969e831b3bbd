"""Immutable digraph and graph value types with structural queries.

Vertices are dense integers 0..n-1.  Digraphs are simple (no loops, no
parallel arcs) but digons -- both (u,v) and (v,u) -- are allowed.  All
values are immutable after construction and safe to share between
concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import LoopArc, TooLarge, VertexOutOfRange

CANONICAL_CAP = 10


class Digraph:
    """A finite simple digraph given by a vertex count and an arc set."""

    __slots__ = ("n", "arcs", "_out", "_in", "_hash")

    def __init__(self, n: int, arcs):
        arc_set = set()
        for u, v in arcs:
            if u == v:
                raise LoopArc(f"loop arc ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u},{v}) outside 0..{n - 1}")
            arc_set.add((u, v))
        self.n = n
        self.arcs = frozenset(arc_set)
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in sorted(arc_set):
            out[u].append(v)
            inn[v].append(u)
        self._out = tuple(tuple(x) for x in out)
        self._in = tuple(tuple(sorted(x)) for x in inn)
        self._hash = hash((n, self.arcs))

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph({self.n}, {self.sorted_arcs()})"

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs or (v, u) in self.arcs

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(set(self._out[v]) | set(self._in[v])))

    def is_source(self, v: int) -> bool:
        return not self._in[v]

    def is_sink(self, v: int) -> bool:
        return not self._out[v]

    def reverse(self) -> "Digraph":
        return Digraph(self.n, [(v, u) for u, v in self.arcs])


class Graph:
    """A finite simple undirected graph; edges are stored as (min, max)."""

    __slots__ = ("n", "edges", "_adj", "_hash")

    def __init__(self, n: int, edges):
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise LoopArc(f"loop edge ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            edge_set.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = frozenset(edge_set)
        adj = [set() for _ in range(n)]
        for u, v in edge_set:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._hash = hash((n, self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.n}, {sorted(self.edges)})"

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        ]
        return Graph(self.n, edges)

    def induced(self, vertices) -> tuple["Graph", tuple[int, ...]]:
        vmap = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(vmap)}
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph(len(vmap), edges), vmap

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(component_of(self, 0)) == self.n


def component_of(G: Graph, v: int) -> set[int]:
    """Vertex set of the connected component of ``G`` containing ``v``."""
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in G.neighbors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def connected_components(G: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    comps = []
    for v in range(G.n):
        if v not in seen:
            comp = component_of(G, v)
            seen |= comp
            comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class StrongDecomposition:
    components: tuple[tuple[int, ...], ...]
    condensation: Digraph

    def component_index(self, v: int) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise VertexOutOfRange(str(v))

    def minimal_flags(self) -> tuple[bool, ...]:
        """A component is minimal iff no condensation arc enters it."""
        return tuple(
            self.condensation.is_source(i) for i in range(len(self.components))
        )


# -- operations ------------------------------------------------------------


def from_arcs(n: int, arcs) -> Digraph:
    """Build a digraph; duplicate arcs collapse via set semantics."""
    return Digraph(n, arcs)


def underlying_graph(D: Digraph) -> Graph:
    return Graph(D.n, [(u, v) for u, v in D.arcs])


def induced(D: Digraph, vertices) -> tuple[Digraph, tuple[int, ...]]:
    """Induced subdigraph on ``vertices``, relabeled 0..|X|-1.

    Returns the subdigraph and the relabeling map: map[new] = old.
    """
    vmap = tuple(sorted(set(vertices)))
    for v in vmap:
        if not (0 <= v < D.n):
            raise VertexOutOfRange(str(v))
    index = {old: new for new, old in enumerate(vmap)}
    arcs = [(index[u], index[v]) for u, v in D.arcs if u in index and v in index]
    return Digraph(len(vmap), arcs), vmap


def strong_decomposition(D: Digraph) -> StrongDecomposition:
    """Tarjan SCCs, components ordered by smallest contained vertex."""
    n = D.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # iterative Tarjan
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            out = D.out_neighbors(v)
            for i in range(pi, len(out)):
                w = out[i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])

    comps.sort(key=lambda c: c[0])
    which = {}
    for i, comp in enumerate(comps):
        for v in comp:
            which[v] = i
    cond_arcs = {
        (which[u], which[v]) for u, v in D.arcs if which[u] != which[v]
    }
    return StrongDecomposition(
        tuple(tuple(c) for c in comps), Digraph(len(comps), cond_arcs)
    )


def is_strong(D: Digraph) -> bool:
    return len(strong_decomposition(D).components) == 1


def canonical_form(D: Digraph) -> bytes:
    """Canonical byte string: equal iff isomorphic.

    Minimizes, over all vertex permutations, the bit string of arc
    indicators read in growing-submatrix order (all cells whose larger
    endpoint is k come before those with larger endpoint k+1).  The
    prefix property of that order allows branch-and-bound pruning.
    """
    n = D.n
    if n > CANONICAL_CAP:
        raise TooLarge(f"canonical_form capped at n={CANONICAL_CAP}, got {n}")
    if n == 0:
        return b"\x00"

    arcs = D.arcs
    best: list[int] | None = None

    # cells revealed when vertex at position k is fixed, as (i, j) position
    # pairs with max(i, j) == k, in deterministic order
    def cells(k):
        out = []
        for j in range(k):
            out.append((k, j))
            out.append((j, k))
        return out

    cell_lists = [cells(k) for k in range(n)]

    def extend(perm: list[int], bits: list[int]):
        nonlocal best
        k = len(perm)
        if k == n:
            if best is None or bits < best:
                best = list(bits)
            return
        used = set(perm)
        for v in range(n):
            if v in used:
                continue
            cand = perm + [v]
            new_bits = []
            for (i, j) in cell_lists[k]:
                new_bits.append(1 if (cand[i], cand[j]) in arcs else 0)
            total = bits + new_bits
            if best is not None:
                prefix = best[: len(total)]
                if total > prefix:
                    continue
            extend(cand, total)

    extend([], [])
    assert best is not None
    # pack: n as one byte, then bits
    out = bytearray([n])
    acc = 0
    nbits = 0
    for b in best:
        acc = (acc << 1) | b
        nbits += 1
        if nbits == 8:
            out.append(acc)
            acc = 0
            nbits = 0
    if nbits:
        out.append(acc << (8 - nbits))
    return bytes(out)


def are_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    if D1.n != D2.n or len(D1.arcs) != len(D2.arcs):
        return False
    return canonical_form(D1) == canonical_form(D2)


def permute(D: Digraph, sigma) -> Digraph:
    """Relabel: vertex v becomes sigma[v]."""
    return Digraph(D.n, [(sigma[u], sigma[v]) for u, v in D.arcs])


# -- paths -----------------------------------------------------------------


def is_path_of(D: Digraph, vertices) -> bool:
    """True iff the sequence is a directed path of ``D``."""
    seq = list(vertices)
    if len(set(seq)) != len(seq):
        return False
    if any(not (0 <= v < D.n) for v in seq):
        return False
    return all(D.has_arc(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


# -- reference instances ---------------------------------------------------
# Fixed for the whole repository; cycle vertex x_k maps to index k-1.


def _ref(n, arcs):
    return Digraph(n, arcs)


#: transitive triangle: 0 -> 1, 0 -> 2, 2 -> 1
TT = _ref(3, [(0, 1), (0, 2), (2, 1)])

#: seven-vertex blocking odd cycle with two digons
B7 = _ref(7, [(0, 1), (0, 6), (2, 1), (3, 2), (3, 4), (4, 3), (4, 5), (5, 6), (6, 5)])

#: anti-directed 9-cycle, first type
A9 = _ref(9, [(0, 1), (2, 1), (2, 3), (4, 3), (5, 4), (5, 6), (6, 7), (8, 7), (0, 8)])

#: anti-directed 9-cycle, second type
A9B = _ref(9, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (6, 5), (6, 7), (8, 7), (0, 8)])

#: the unique strong semicomplete exception: 1->0, 0->3, 3->2, 2->1, 0<->2, 1<->3
E4 = _ref(4, [(1, 0), (0, 3), (3, 2), (2, 1), (0, 2), (2, 0), (1, 3), (3, 1)])

#: directed 5-cycle
DC5 = _ref(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])

#: symmetric 5-cycle (all digons)
SymC5 = _ref(
    5,
    [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 0), (0, 4)],
)

#: five-vertex digraph with a universal vertex 4 whose removal satisfies the
#: BE-property while the whole digraph does not (stable set {0, 1})
UNIV5 = _ref(5, [(4, 0), (4, 1), (4, 2), (4, 3), (0, 2), (1, 3)])
