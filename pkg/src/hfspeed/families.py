"""Family expressions and the exact membership engine.

A family is a closed expression over the constructors below.  Membership is
decided exactly by backtracking with a node budget; exceeding the budget
raises ResourceLimitError, it never degrades to a guess.  Positive
partition-style decisions carry a certificate that can be re-verified
independently; exhaustive negative searches are certified by a transcript
hash (family text, graph, node count), which pins the run for reproducing.

Hereditariness is tracked *by construction*: the flag is True only when the
expression shape guarantees it (forb, H, iota, partition products and
set/graph operations over hereditary parts).  apex is the one constructor
that breaks it.
"""

from __future__ import annotations

import hashlib

from .errors import ResourceLimitError, UnsupportedOperationError, ValidationError
from . import graph6
from .graphs import (
    Bigraph,
    Graph,
    bits,
    complement,
    components,
    co_components,
    complete,
    cycle,
    edgeless,
    find_bigraph_embedding,
    find_induced_embedding,
    induced_subgraph,
    path,
    star,
    subgraph_on_mask,
)

DEFAULT_NODE_BUDGET = 10_000_000


class Budget:
    """Search-node allowance shared across one top-level membership call."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_NODE_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise ResourceLimitError(
                f"membership search exceeded node budget {self.limit}")


class MembershipResult:
    """Exact verdict plus evidence.

    certificate is present on the constructive side (a partition, an
    embedding, a component split, depending on the constructor); when the
    verdict rests on an exhausted search instead, transcript_hash pins it.
    """

    __slots__ = ("member", "certificate", "transcript_hash", "nodes")

    def __init__(self, member, certificate, transcript_hash, nodes):
        self.member = member
        self.certificate = certificate
        self.transcript_hash = transcript_hash
        self.nodes = nodes

    def __bool__(self):
        return self.member

    def __repr__(self):
        return (f"MembershipResult(member={self.member}, "
                f"certificate={self.certificate!r}, nodes={self.nodes})")


class PartitionCertificate:
    """Parts (vertex tuples, in factor order) with per-part evidence."""

    __slots__ = ("parts", "sub")

    def __init__(self, parts, sub):
        self.parts = tuple(tuple(p) for p in parts)
        self.sub = tuple(sub)

    def __repr__(self):
        return f"PartitionCertificate(parts={self.parts})"


class Family:
    """Base class: structural equality, hereditary flag, membership."""

    __slots__ = ()
    hereditary = False

    # immutable slot classes need explicit pickle support
    def __getstate__(self):
        state = {}
        for cls in type(self).__mro__:
            for slot in getattr(cls, "__slots__", ()):
                if hasattr(self, slot):
                    state[slot] = getattr(self, slot)
        return state

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)

    def key(self):
        raise NotImplementedError

    def text(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Family) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.text()

    def _decide(self, g: Graph, budget: Budget, new_vertex_only: bool):
        """(member, certificate-or-None).  new_vertex_only may be honored by
        constructors with local structure (forb) when the caller guarantees
        the graph minus its last vertex is already a member."""
        raise NotImplementedError

    def membership(self, g: Graph, budget: Budget | None = None,
                   new_vertex_only: bool = False) -> MembershipResult:
        if budget is None:
            budget = Budget()
        start = budget.used
        member, cert = self._decide(g, budget, new_vertex_only)
        nodes = budget.used - start
        thash = None
        if cert is None:
            blob = f"{self.text()}|{graph6.encode(g)}|{nodes}"
            thash = hashlib.sha256(blob.encode()).hexdigest()
        return MembershipResult(member, cert, thash, nodes)

    def contains(self, g: Graph, budget: Budget | None = None) -> bool:
        return self.membership(g, budget).member


def is_member(g: Graph, f: Family, budget: Budget | None = None) -> MembershipResult:
    return f.membership(g, budget)


# ---------------------------------------------------------------------------
# atoms

class AtomS(Family):
    """Edgeless graphs."""
    __slots__ = ()
    hereditary = True

    def key(self):
        return ("S",)

    def text(self):
        return "S"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        return all(r == 0 for r in g.rows), None


class AtomC(Family):
    """Complete graphs."""
    __slots__ = ()
    hereditary = True

    def key(self):
        return ("C",)

    def text(self):
        return "C"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        full = g.full_mask()
        return all(r == full ^ (1 << v) for v, r in enumerate(g.rows)), None


class AtomM(Family):
    """Matchings: maximum degree at most 1."""
    __slots__ = ()
    hereditary = True

    def key(self):
        return ("M",)

    def text(self):
        return "M"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        return all(r.bit_count() <= 1 for r in g.rows), None


class AtomAll(Family):
    """All graphs."""
    __slots__ = ()
    hereditary = True

    def key(self):
        return ("ALL",)

    def text(self):
        return "ALL"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        return True, None


S = AtomS()
C = AtomC()
M = AtomM()
ALL = AtomAll()


# ---------------------------------------------------------------------------
# forbidden induced subgraphs

class Forb(Family):
    """Graphs with no induced copy of any pattern in the list."""

    __slots__ = ("patterns", "_pattern_reps")
    hereditary = True

    def __init__(self, patterns):
        patterns = tuple(patterns)
        if not patterns:
            raise ValidationError("forb needs at least one pattern")
        if any(not isinstance(p, Graph) for p in patterns):
            raise ValidationError("forb patterns must be graphs")
        object.__setattr__(self, "patterns", patterns)
        object.__setattr__(self, "_pattern_reps", None)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        return ("forb",) + tuple((p.n, p.rows) for p in self.patterns)

    def text(self):
        return "forb(" + ", ".join(graph_name(p) for p in self.patterns) + ")"

    def _anchored_reps(self):
        # orbit representatives of each pattern's vertices, for anchored scans
        reps = self._pattern_reps
        if reps is None:
            from .canon import canonical_form, vertex_orbit
            reps = []
            for p in self.patterns:
                gens = canonical_form(p).generators
                seen = 0
                mine = []
                for v in range(p.n):
                    if not seen >> v & 1:
                        mine.append(v)
                        seen |= vertex_orbit(v, gens, p.n)
                reps.append(tuple(mine))
            object.__setattr__(self, "_pattern_reps", tuple(reps))
        return reps

    def _decide(self, g, budget, new_vertex_only):
        if new_vertex_only and g.n > 0:
            anchor = g.n - 1
            for idx, p in enumerate(self.patterns):
                for pv in self._anchored_reps()[idx]:
                    budget.spend(g.n + 1)
                    eta = _find_embedding_anchored(p, g, pv, anchor)
                    if eta is not None:
                        return False, ("pattern", idx, eta)
            return True, None
        for idx, p in enumerate(self.patterns):
            budget.spend(g.n + 1)
            eta = find_induced_embedding(p, g)
            if eta is not None:
                return False, ("pattern", idx, eta)
        return True, None


def _find_embedding_anchored(pattern, host, pv, hv):
    """Induced embedding with pattern vertex pv pinned to host vertex hv."""
    k, n = pattern.n, host.n
    if k > n:
        return None
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    if hdeg[hv] < pdeg[pv]:
        return None
    prow, hrow = pattern.rows, host.rows
    order = [pv] + [v for v in range(k) if v != pv]
    eta = [0] * k

    def extend(i, used):
        if i == k:
            return True
        v = order[i]
        for c in range(n):
            if used >> c & 1 or hdeg[c] < pdeg[v]:
                continue
            ok = True
            for j in range(i):
                w = order[j]
                if (prow[v] >> w & 1) != (hrow[c] >> eta[w] & 1):
                    ok = False
                    break
            if ok:
                eta[v] = c
                if extend(i + 1, used | 1 << c):
                    return True
        return False

    eta[pv] = hv
    return tuple(eta) if extend(1, 1 << hv) else None


class ForbBigraph(Family):
    """Graphs with no embedding of any bigraph pattern (cross pairs exact,
    within-side pairs free).  Not reachable from the DSL."""

    __slots__ = ("patterns",)
    hereditary = True

    def __init__(self, patterns):
        patterns = tuple(patterns)
        if not patterns or any(not isinstance(p, Bigraph) for p in patterns):
            raise ValidationError("forb_bigraph needs Bigraph patterns")
        object.__setattr__(self, "patterns", patterns)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        return ("forbB",) + tuple((p.a, p.b, p.cross) for p in self.patterns)

    def text(self):
        inner = ", ".join(
            f"B[{p.a},{p.b};{','.join(format(c, 'x') for c in p.cross)}]"
            for p in self.patterns)
        return f"forb_bigraph({inner})"

    def _decide(self, g, budget, new_vertex_only):
        for idx, p in enumerate(self.patterns):
            budget.spend(g.n + 1)
            hit = find_bigraph_embedding(p, g)
            if hit is not None:
                return False, ("bigraph", idx, hit)
        return True, None


# ---------------------------------------------------------------------------
# H(s, t): s independent parts plus t clique parts

class HST(Family):
    """Graphs partitionable into s independent sets and t cliques."""

    __slots__ = ("s", "t")
    hereditary = True

    def __init__(self, s, t):
        if s < 0 or t < 0:
            raise ValidationError("H(s,t) needs s, t >= 0")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        return ("H", self.s, self.t)

    def text(self):
        return f"H({self.s}, {self.t})"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        s, t = self.s, self.t
        if g.n == 0:
            return True, PartitionCertificate([()] * (s + t),
                                              ["independent"] * s + ["clique"] * t)
        if s + t == 0:
            return False, None
        if (s, t) == (1, 0):
            ok = all(r == 0 for r in g.rows)
            return (True, _hst_cert([g.full_mask()], 1, 0)) if ok else (False, None)
        if (s, t) == (0, 1):
            full = g.full_mask()
            ok = all(r == full ^ (1 << v) for v, r in enumerate(g.rows))
            return (True, _hst_cert([g.full_mask()], 0, 1)) if ok else (False, None)
        if (s, t) == (2, 0):
            parts = _two_color(g)
            return (True, _hst_cert(parts, 2, 0)) if parts is not None else (False, None)
        if s < t:
            # complements swap independent and clique parts
            got, cert = HST(t, s)._decide(complement(g), budget, False)
            if not got:
                return False, None
            masks = [_mask_from(p) for p in cert.parts]
            return True, _hst_cert(masks[t:] + masks[:t], s, t)
        masks = _hst_backtrack(g, s, t, budget)
        if masks is None:
            return False, None
        return True, _hst_cert(masks, s, t)


def _mask_from(part):
    m = 0
    for v in part:
        m |= 1 << v
    return m


def _hst_cert(masks, s, t):
    parts = [tuple(bits(m)) for m in masks]
    return PartitionCertificate(parts, ["independent"] * s + ["clique"] * t)


def _two_color(g):
    """Proper 2-coloring as [mask0, mask1], BFS per component, or None."""
    color = {}
    rows = g.rows
    m0 = m1 = 0
    for root in range(g.n):
        if root in color:
            continue
        color[root] = 0
        m0 |= 1 << root
        queue = [root]
        while queue:
            u = queue.pop()
            cu = color[u]
            for v in bits(rows[u]):
                if v not in color:
                    color[v] = 1 - cu
                    if color[v]:
                        m1 |= 1 << v
                    else:
                        m0 |= 1 << v
                    queue.append(v)
                elif color[v] == cu:
                    return None
    return [m0, m1]


def _hst_backtrack(g, s, t, budget):
    """Least-vertex-first assignment; empty parts of equal type are
    interchangeable so only the first of each type is tried."""
    n = g.n
    rows = g.rows
    parts = [0] * (s + t)

    def rec(v):
        budget.spend()
        if v == n:
            return True
        b = 1 << v
        empty_indep = empty_clique = False
        for i in range(s + t):
            p = parts[i]
            if p == 0:
                if i < s:
                    if empty_indep:
                        continue
                    empty_indep = True
                else:
                    if empty_clique:
                        continue
                    empty_clique = True
            elif i < s:
                if rows[v] & p:
                    continue
            else:
                if rows[v] & p != p:
                    continue
            parts[i] |= b
            if rec(v + 1):
                return True
            parts[i] ^= b
        return False

    return list(parts) if rec(0) else None


# ---------------------------------------------------------------------------
# partition products over arbitrary factor families

class PartitionProduct(Family):
    """P(F_1, ..., F_l): graphs whose vertex set splits into l (possibly
    empty) parts with part i inducing a member of F_i."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValidationError("P needs at least one factor")
        if any(not isinstance(f, Family) for f in factors):
            raise ValidationError("P factors must be families")
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return all(f.hereditary for f in self.factors)

    def key(self):
        return ("P",) + tuple(f.key() for f in self.factors)

    def text(self):
        return "P(" + ", ".join(f.text() for f in self.factors) + ")"

    def _decide(self, g, budget, new_vertex_only):
        n = g.n
        fs = self.factors
        l = len(fs)
        rows = g.rows
        memo = {}

        def part_ok(i, mask):
            got = memo.get((i, mask))
            if got is None:
                sub = fs[i].membership(subgraph_on_mask(g, mask), budget)
                memo[(i, mask)] = sub
                return sub
            return got

        prune = [f.hereditary for f in fs]
        masks = [0] * l
        found = []

        def rec(v):
            budget.spend()
            if v == n:
                subs = []
                for i in range(l):
                    res = part_ok(i, masks[i])
                    if not res.member:
                        return False
                    subs.append(res)
                found.extend([tuple(masks), tuple(subs)])
                return True
            b = 1 << v
            seen_empty = set()
            for i in range(l):
                if masks[i] == 0:
                    fk = fs[i].key()
                    if fk in seen_empty:
                        continue
                    seen_empty.add(fk)
                if prune[i]:
                    if not part_ok(i, masks[i] | b).member:
                        continue
                masks[i] |= b
                if rec(v + 1):
                    return True
                masks[i] ^= b
            return False

        if rec(0):
            part_masks, subs = found
            parts = [tuple(bits(m)) for m in part_masks]
            return True, PartitionCertificate(
                parts, [r.certificate for r in subs])
        return False, None


# ---------------------------------------------------------------------------
# closures and one-vertex operations

class Iota(Family):
    """All graphs isomorphic to an induced subgraph of one fixed graph."""

    __slots__ = ("host",)
    hereditary = True

    def __init__(self, host):
        if not isinstance(host, Graph):
            raise ValidationError("iota takes a graph")
        object.__setattr__(self, "host", host)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        return ("iota", self.host.n, self.host.rows)

    def text(self):
        return f"iota({graph_name(self.host)})"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend(g.n + 1)
        eta = find_induced_embedding(g, self.host)
        if eta is None:
            return False, None
        return True, ("embedding", eta)


class Apex(Family):
    """Graphs with a vertex whose removal lands in the base family.

    Not hereditary by construction; a graph on 0 vertices has no removable
    vertex, so it is never a member.  Nesting apex is rejected.
    """

    __slots__ = ("base",)
    hereditary = False

    def __init__(self, base):
        if not isinstance(base, Family):
            raise ValidationError("apex takes a family")
        if _contains_apex(base):
            raise ValidationError("apex cannot be nested")
        object.__setattr__(self, "base", base)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        return ("apex", self.base.key())

    def text(self):
        return f"apex({self.base.text()})"

    def _decide(self, g, budget, new_vertex_only):
        for v in range(g.n):
            budget.spend()
            rest = induced_subgraph(g, [u for u in range(g.n) if u != v])
            res = self.base.membership(rest, budget)
            if res.member:
                return True, ("apex", v, res.certificate)
        return False, None


def _contains_apex(f: Family) -> bool:
    if isinstance(f, Apex):
        return True
    if isinstance(f, PartitionProduct):
        return any(_contains_apex(x) for x in f.factors)
    for slot in ("base", "left", "right"):
        if hasattr(f, slot) and isinstance(getattr(f, slot), Family):
            if _contains_apex(getattr(f, slot)):
                return True
    return False


class ComplementFamily(Family):
    """co(F): graphs whose complement lies in F."""

    __slots__ = ("base",)

    def __init__(self, base):
        if not isinstance(base, Family):
            raise ValidationError("co takes a family")
        object.__setattr__(self, "base", base)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return self.base.hereditary

    def key(self):
        return ("co", self.base.key())

    def text(self):
        return f"co({self.base.text()})"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        res = self.base.membership(complement(g), budget)
        if res.member:
            return True, ("complement", res.certificate)
        return False, None


class DisjointUnionFam(Family):
    """F1 v F2: graphs splitting into two vertex-disjoint halves with no
    edges between, half i in F_i.  Halves are unions of components."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        if not isinstance(left, Family) or not isinstance(right, Family):
            raise ValidationError("du takes two families")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def key(self):
        return ("du", self.left.key(), self.right.key())

    def text(self):
        return f"du({self.left.text()}, {self.right.text()})"

    def _decide(self, g, budget, new_vertex_only):
        return _split_decide(g, budget, components(g), self.left, self.right, "du")


class JoinFam(Family):
    """F1 ^ F2: complete join of a member of F1 and a member of F2.
    Halves are unions of co-components."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        if not isinstance(left, Family) or not isinstance(right, Family):
            raise ValidationError("join takes two families")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def key(self):
        return ("join", self.left.key(), self.right.key())

    def text(self):
        return f"join({self.left.text()}, {self.right.text()})"

    def _decide(self, g, budget, new_vertex_only):
        return _split_decide(g, budget, co_components(g), self.left, self.right, "join")


def _split_decide(g, budget, blocks, fl, fr, kind):
    """Try every split of the blocks into a left and a right union."""
    k = len(blocks)
    for pick in range(1 << k):
        budget.spend()
        lmask = rmask = 0
        for i in range(k):
            if pick >> i & 1:
                lmask |= blocks[i]
            else:
                rmask |= blocks[i]
        lres = fl.membership(subgraph_on_mask(g, lmask), budget)
        if not lres.member:
            continue
        rres = fr.membership(subgraph_on_mask(g, rmask), budget)
        if rres.member:
            return True, (kind, tuple(bits(lmask)), tuple(bits(rmask)),
                          lres.certificate, rres.certificate)
    return False, None


class UnionFam(Family):
    """Set union."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def key(self):
        return ("or", self.left.key(), self.right.key())

    def text(self):
        return f"({self.left.text()} or {self.right.text()})"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        res = self.left.membership(g, budget)
        if res.member:
            return True, ("left", res.certificate)
        res = self.right.membership(g, budget)
        if res.member:
            return True, ("right", res.certificate)
        return False, None


class IntersectionFam(Family):
    """Set intersection."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def key(self):
        return ("and", self.left.key(), self.right.key())

    def text(self):
        return f"({self.left.text()} and {self.right.text()})"

    def _decide(self, g, budget, new_vertex_only):
        budget.spend()
        lres = self.left.membership(g, budget)
        if not lres.member:
            return False, None
        rres = self.right.membership(g, budget)
        if not rres.member:
            return False, None
        return True, ("both", lres.certificate, rres.certificate)


# ---------------------------------------------------------------------------
# containment in a finitely generated family

def family_contains(f_sub: Family, f_super: Family, budget: Budget | None = None):
    """Decide f_sub subseteq f_super for f_super = forb(K_1..K_m).

    Sound because f_sub is hereditary: if any member of f_sub contains some
    K_i induced then K_i itself is a member of f_sub.  Returns (True, None)
    or (False, (pattern_graph, membership_result)).
    """
    if not isinstance(f_super, Forb):
        raise UnsupportedOperationError(
            "containment target must be a forb(...) family")
    if not f_sub.hereditary:
        raise UnsupportedOperationError(
            "containment source must be hereditary by construction")
    for k in f_super.patterns:
        res = f_sub.membership(k, budget)
        if res.member:
            return False, (k, res)
    return True, None


# ---------------------------------------------------------------------------
# graph naming for DSL round-trips

_NAMED = {}


def _register_named():
    if _NAMED:
        return
    _NAMED["K13"] = star(3)
    for n in range(0, 10):
        _NAMED[f"K{n}"] = complete(n)
        _NAMED[f"E{n}"] = edgeless(n)
        if n >= 1:
            _NAMED[f"P{n}"] = path(n)
        if n >= 3:
            _NAMED[f"C{n}"] = cycle(n)
        if n >= 1:
            for m in range(2, 7):
                if m * n <= 24:
                    from .graphs import copies
                    _NAMED[f"{m}K{n}"] = copies(m, complete(n))


def graph_from_name(name: str) -> Graph:
    """Resolve a graph literal: K13 (the claw), Kn, Cn, Pn, En, mKn or g6:...

    K13 is the lone historical alias; every other Kxx parses as a complete
    graph on xx vertices.
    """
    name = name.strip()
    if name.startswith("g6:"):
        return graph6.decode(name[3:])
    _register_named()
    if name in _NAMED:
        return _NAMED[name]
    import re
    m = re.fullmatch(r"(\d*)K(\d+)", name)
    if m:
        cnt = int(m.group(1)) if m.group(1) else 1
        from .graphs import copies
        return copies(cnt, complete(int(m.group(2))))
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return cycle(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", name)
    if m:
        return path(int(m.group(1)))
    m = re.fullmatch(r"E(\d+)", name)
    if m:
        return edgeless(int(m.group(1)))
    raise ValidationError(f"unknown graph literal {name!r}")


def graph_name(g: Graph) -> str:
    """Preferred printable name: a named literal when the labeled graph
    matches one exactly, else a g6 literal."""
    _register_named()
    for name, h in _NAMED.items():
        if g == h:
            return name
    return "g6:" + graph6.encode(g)
