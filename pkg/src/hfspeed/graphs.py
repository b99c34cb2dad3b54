"""Small graphs as immutable bitset adjacency rows.

A graph on n vertices has vertex set 0..n-1.  Row v is a Python int whose
bit u is set iff uv is an edge, so adjacency tests, neighbourhood
intersections and subset logic are single int operations.  The hard cap of
64 vertices keeps rows word-sized; everything at desk scale (n <= 16 for
enumeration) is far below it.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CapacityError, ValidationError

MAX_VERTICES = 64


def bits(mask: int):
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable undirected graph, no loops, no multi-edges."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, edges=()):
        if n < 0 or n > MAX_VERTICES:
            raise CapacityError(f"graph order {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_hash", hash((n,) + tuple(rows)))

    @classmethod
    def from_rows(cls, rows) -> "Graph":
        """Build from a symmetric adjacency row tuple (trusted caller)."""
        g = object.__new__(cls)
        rows = tuple(rows)
        object.__setattr__(g, "n", len(rows))
        object.__setattr__(g, "rows", rows)
        object.__setattr__(g, "_hash", hash((len(rows),) + rows))
        return g

    def __setattr__(self, *a):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph.from_rows, (self.rows,))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self):
        return tuple(r.bit_count() for r in self.rows)

    def edges(self):
        for u in range(self.n):
            m = self.rows[u] >> (u + 1) << (u + 1)
            for v in bits(m):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.n}, {sorted(self.edges())})"


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced on `vertices`; their order fixes the new labels."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise ValidationError("repeated vertex in induced_subgraph")
    rows = [0] * len(vs)
    for i, u in enumerate(vs):
        for j, v in enumerate(vs):
            if i != j and g.rows[u] >> v & 1:
                rows[i] |= 1 << j
    return Graph.from_rows(rows)


def subgraph_on_mask(g: Graph, mask: int) -> Graph:
    return induced_subgraph(g, bits(mask))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def complement(g: Graph) -> Graph:
    full = g.full_mask()
    return Graph.from_rows(tuple((full ^ r ^ (1 << v)) for v, r in enumerate(g.rows)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"union order {g.n + h.n} exceeds {MAX_VERTICES}")
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph.from_rows(rows)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus all edges between the two sides."""
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"join order {g.n + h.n} exceeds {MAX_VERTICES}")
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [r | hmask for r in g.rows] + [(r << g.n) | gmask for r in h.rows]
    return Graph.from_rows(rows)


def relabel(g: Graph, perm) -> Graph:
    """Image of g under the permutation perm, with perm[old] = new."""
    rows = [0] * g.n
    for v in range(g.n):
        m = 0
        for u in bits(g.rows[v]):
            m |= 1 << perm[u]
        rows[perm[v]] = m
    return Graph.from_rows(rows)


def add_vertex(g: Graph, neighbours_mask: int) -> Graph:
    """Extend g by one vertex (new label n) with the given neighbourhood."""
    n = g.n
    if n + 1 > MAX_VERTICES:
        raise CapacityError("extension exceeds vertex cap")
    if neighbours_mask >> n:
        raise ValidationError("neighbourhood mask out of range")
    rows = list(g.rows)
    for u in bits(neighbours_mask):
        rows[u] |= 1 << n
    rows.append(neighbours_mask)
    return Graph.from_rows(rows)


def components(g: Graph):
    """Connected components as vertex masks, ordered by least vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.rows[u]
            frontier = nxt & ~comp
            comp |= frontier
        out.append(comp)
        seen |= comp
    return out


def co_components(g: Graph):
    return components(complement(g))


def is_clique_mask(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        if g.rows[v] & mask != mask ^ (1 << v):
            return False
    return True


def is_independent_mask(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        if g.rows[v] & mask:
            return False
    return True


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


# ---------------------------------------------------------------------------
# named constructions

def edgeless(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValidationError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves}: vertex 0 is the centre."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def matching(k: int) -> Graph:
    """k disjoint edges."""
    return Graph(2 * k, ((2 * i, 2 * i + 1) for i in range(k)))


def copies(k: int, g: Graph) -> Graph:
    out = Graph(0)
    for _ in range(k):
        out = disjoint_union(out, g)
    return out


# ---------------------------------------------------------------------------
# induced embeddings

def find_induced_embedding(pattern: Graph, host: Graph):
    """First injective map eta with host[eta(V)] inducing exactly pattern.

    Pattern vertices are assigned in label order, candidates are tried in
    increasing order, so the witness is the lexicographically least one.
    Candidates are prefiltered by degree (an induced image of a degree-d
    vertex has host degree >= d).  Returns a tuple, or None.
    """
    k, n = pattern.n, host.n
    if k > n:
        return None
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    prow, hrow = pattern.rows, host.rows
    eta = [0] * k
    used = 0

    def extend(i, used):
        if i == k:
            return True
        for c in range(n):
            if used >> c & 1 or hdeg[c] < pdeg[i]:
                continue
            ok = True
            for j in range(i):
                if (prow[i] >> j & 1) != (hrow[c] >> eta[j] & 1):
                    ok = False
                    break
            if ok:
                eta[i] = c
                if extend(i + 1, used | 1 << c):
                    return True
        return False

    return tuple(eta) if extend(0, used) else None


def contains_induced(host: Graph, pattern: Graph) -> bool:
    return find_induced_embedding(pattern, host) is not None


# ---------------------------------------------------------------------------
# bigraphs (ordered bipartite patterns: only cross pairs are constrained)

class Bigraph:
    """Bipartite pattern with sides A (size a) and B (size b).

    cross[i] is the mask over B-indices adjacent to the i-th A-vertex.
    Used for bigraph-freeness: an embedding constrains cross pairs exactly
    and leaves within-side pairs free.
    """

    __slots__ = ("a", "b", "cross")

    def __init__(self, a: int, b: int, cross_edges=()):
        cross = [0] * a
        for i, j in cross_edges:
            if not (0 <= i < a and 0 <= j < b):
                raise ValidationError(f"cross edge ({i},{j}) out of range")
            cross[i] |= 1 << j
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "cross", tuple(cross))

    def __setattr__(self, *a):
        raise AttributeError("Bigraph is immutable")

    def __reduce__(self):
        edges = [(i, j) for i in range(self.a) for j in bits(self.cross[i])]
        return (Bigraph, (self.a, self.b, edges))

    def __eq__(self, other):
        return (isinstance(other, Bigraph) and self.a == other.a
                and self.b == other.b and self.cross == other.cross)

    def __hash__(self):
        return hash(("Bigraph", self.a, self.b, self.cross))

    def __repr__(self):
        es = [(i, j) for i in range(self.a) for j in bits(self.cross[i])]
        return f"Bigraph({self.a}, {self.b}, {es})"

    @classmethod
    def between(cls, g: Graph, left, right) -> "Bigraph":
        """The bigraph g[left, right] induced by two disjoint vertex lists."""
        left, right = list(left), list(right)
        if set(left) & set(right):
            raise ValidationError("sides must be disjoint")
        es = [(i, j) for i, u in enumerate(left) for j, v in enumerate(right)
              if g.rows[u] >> v & 1]
        return cls(len(left), len(right), es)


def find_bigraph_embedding(pattern: Bigraph, host: Graph):
    """Injective map of A then B into host matching all cross pairs exactly.

    Within-side adjacency in the host is unconstrained.  Deterministic
    first-witness order as in find_induced_embedding.  Returns a pair of
    tuples (A-images, B-images), or None.
    """
    a, b, n = pattern.a, pattern.b, host.n
    if a + b > n:
        return None
    hdeg = host.degrees()
    adeg = [pattern.cross[i].bit_count() for i in range(a)]
    bdeg = [sum(pattern.cross[i] >> j & 1 for i in range(a)) for j in range(b)]
    hrow = host.rows
    amap = [0] * a
    bmap = [0] * b

    def extend_b(j, used):
        if j == b:
            return True
        for c in range(n):
            if used >> c & 1 or hdeg[c] < bdeg[j]:
                continue
            ok = True
            for i in range(a):
                if (pattern.cross[i] >> j & 1) != (hrow[c] >> amap[i] & 1):
                    ok = False
                    break
            if ok:
                bmap[j] = c
                if extend_b(j + 1, used | 1 << c):
                    return True
        return False

    def extend_a(i, used):
        if i == a:
            return extend_b(0, used)
        for c in range(n):
            if used >> c & 1 or hdeg[c] < adeg[i]:
                continue
            amap[i] = c
            if extend_a(i + 1, used | 1 << c):
                return True
        return False

    return (tuple(amap), tuple(bmap)) if extend_a(0, 0) else None


def contains_bigraph(host: Graph, pattern: Bigraph) -> bool:
    return find_bigraph_embedding(pattern, host) is not None


# ---------------------------------------------------------------------------
# Ramsey-type greedy decomposition

def _find_homogeneous(g: Graph, mask: int, r: int, want_clique: bool):
    """Least r-subset of mask that is a clique (or independent set), or None."""
    rows = g.rows
    full = g.full_mask()

    def rec(chosen, count, cand):
        if count == r:
            return chosen
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            nxt = cand & (rows[v] if want_clique else full ^ rows[v])
            if count + 1 + nxt.bit_count() >= r:
                got = rec(chosen | b, count + 1, nxt)
                if got is not None:
                    return got
        return None

    return rec(0, 0, mask)


def homogeneous_decomposition(g: Graph, r: int):
    """Greedily split V(g) into cliques and independent sets of size exactly r.

    Each step takes the least available r-clique, else the least available
    r-independent set.  Returns (parts, leftover_mask) where parts is a list
    of ("clique" | "independent", mask) pairs.  Ramsey's bound R(r,r) <= 4**r
    guarantees the leftover has at most 4**r vertices; asserted when that is
    informative.
    """
    if r < 1:
        raise ValidationError("part size must be positive")
    parts = []
    rem = g.full_mask()
    while rem.bit_count() >= r:
        got = _find_homogeneous(g, rem, r, True)
        if got is not None:
            parts.append(("clique", got))
        else:
            got = _find_homogeneous(g, rem, r, False)
            if got is None:
                break
            parts.append(("independent", got))
        rem ^= got
    if 4 ** r < g.n:
        assert rem.bit_count() <= 4 ** r
    return parts, rem
