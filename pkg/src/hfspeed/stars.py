"""Crowns, cores, star systems and constellations.

A crown is a homogeneous set that induces a complete or edgeless graph;
a core is what is left when a crown is removed.  Star systems (J, alpha,
beta) and their l-part generalization, constellations (J, phi, alpha,
beta), encode graphs with small cores; P(J) is the hereditary family of
induced subgraphs of all hosts admitting a template.

Membership in P(J) is decided without unbounded host search: a graph g
lies in P(J) iff some subset W of the core embeds into g and the rest of
g splits into crowns satisfying the alpha/beta conditions restricted to
g.  Everything a host adds outside g (missing core vertices, crown
padding) can be wired freely, so the restricted conditions are exact;
see is_member_PJ for the two-directional argument.

The crown definition quantifies over every vertex, including crown
vertices themselves; for those the "adjacent to all" branch is read as
all of the crown minus the vertex, which is the reading forced by the
requirement that the crown induce a complete or edgeless graph.
"""

from __future__ import annotations

import hashlib
import json
from itertools import combinations, combinations_with_replacement

from .canon import canonical_form
from .errors import CapacityError, ValidationError
from .families import ALL, Budget, Family, HST, MembershipResult
from .graphs import Graph, bits, delete_vertex, mask_of
from . import graph6


def _budget(limit):
    return Budget(limit) if limit else Budget()


# ---------------------------------------------------------------------------
# crowns and cores

def is_crown(g: Graph, mask: int) -> bool:
    """Is the vertex set `mask` a crown of g?

    Every vertex sees all of the crown (minus itself, when inside) or
    none of it.  The per-vertex rule already forces the crown to induce
    a complete or edgeless graph, so no separate internal check is
    needed.
    """
    for v in range(g.n):
        others = mask & ~(1 << v)
        hit = g.rows[v] & others
        if hit and hit != others:
            return False
    return True


def minimal_core(g: Graph, max_size: int | None = None):
    """Smallest S with V(G) - S a crown, ties broken lexicographically.

    Scans subset sizes upward; itertools yields each size in lex order,
    so the first hit is the lex-least core of minimum size.  max_size
    cuts the scan early (is_s_star style queries stay polynomial: only
    sum of C(n, k) for k <= max_size crown checks); when no core within
    the bound exists the result is (None, None).  Unbounded calls always
    succeed because any single vertex is a crown, so size n-1 works.
    """
    n = g.n
    full = g.full_mask()
    top = n if max_size is None else min(max_size, n)
    for size in range(top + 1):
        for sub in combinations(range(n), size):
            m = mask_of(sub)
            if is_crown(g, full ^ m):
                return size, sub
    return None, None


def is_s_star(g: Graph, s: int) -> bool:
    """Does g have a core of at most s vertices?"""
    return minimal_core(g, max_size=s)[0] is not None


# ---------------------------------------------------------------------------
# star systems

class StarSystem:
    """A star system (J, alpha, beta).

    J is the core pattern; alpha[v] = 1 means core vertex v is joined to
    the whole crown (0: to none of it); beta = 1 means the crown is a
    clique (0: independent).
    """

    __slots__ = ("j", "alpha", "beta")

    def __init__(self, j: Graph, alpha, beta):
        if not isinstance(j, Graph):
            raise ValidationError("star system needs a core graph")
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != j.n or any(a not in (0, 1) for a in alpha):
            raise ValidationError("alpha must map V(J) to {0,1}")
        if beta not in (0, 1):
            raise ValidationError("beta must be 0 or 1")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", int(beta))

    def __setattr__(self, *a):
        raise AttributeError("StarSystem is immutable")

    def __reduce__(self):
        return (StarSystem, (self.j, self.alpha, self.beta))

    def as_constellation(self) -> "Constellation":
        return Constellation(self.j, (0,) * self.j.n, self.alpha, (self.beta,))

    def to_json_obj(self):
        return {"j": graph6.encode(self.j), "alpha": list(self.alpha),
                "beta": self.beta}

    def canonical_key(self):
        return self.as_constellation().canonical_key()

    def __eq__(self, other):
        return (isinstance(other, StarSystem) and self.j == other.j
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash(("sys", self.j.rows, self.alpha, self.beta))

    def __repr__(self):
        return (f"StarSystem({graph6.encode(self.j)!r}, "
                f"alpha={list(self.alpha)}, beta={self.beta})")


def star_system_irreducible(sys: StarSystem) -> bool:
    """Does the system correspond to a minimal core?

    Core vertex v is removable iff alpha(v) = beta (its attachment
    matches the crown's internal type) and every other core vertex u
    relates to v exactly as alpha(u) forces u to relate to crown
    vertices: uv an edge iff alpha(u) = 1.  Moving such a v into the
    crown keeps every template condition, so the core was not minimal;
    conversely an irreducible system has no removable vertex and its
    template image is a minimal core in any host with crown >= 2.

    The definition's literal text reads "uv not in E(J)" in both of its
    branches, which collapses to "some u nonadjacent to v" and breaks
    the minimal-core reading it claims to paraphrase; the operational
    meaning wins here and the host cross-check in the test suite replays
    every verdict against an explicit host.
    """
    j, alpha, beta = sys.j, sys.alpha, sys.beta
    for v in range(j.n):
        if alpha[v] != beta:
            continue
        if all((j.rows[u] >> v & 1) == alpha[u]
               for u in range(j.n) if u != v):
            return False
    return True


def star_system_host(sys: StarSystem, crown: int) -> Graph:
    """The canonical host: J plus a crown of `crown` fresh vertices wired
    per (alpha, beta).  Crown vertices take labels n(J) onward."""
    if crown < 0:
        raise ValidationError("crown size must be >= 0")
    k = sys.j.n
    n = k + crown
    rows = list(sys.j.rows) + [0] * crown
    crown_mask = ((1 << crown) - 1) << k
    for v in range(k):
        if sys.alpha[v]:
            rows[v] |= crown_mask
            for w in range(k, n):
                rows[w] |= 1 << v
    if sys.beta:
        for w in range(k, n):
            rows[w] |= crown_mask ^ (1 << w)
    return Graph.from_rows(rows)


# ---------------------------------------------------------------------------
# constellations

class Constellation:
    """An (l, s)-constellation (J, phi, alpha, beta).

    phi maps each core vertex to a part (0-based; l = len(beta)), alpha
    gives crown attachments as in star systems, beta[i] the crown type
    of part i.  Fiber i induces the component system
    J_i = (J[phi^-1(i)], alpha restricted, beta[i]); the fiber size
    bound s is contextual, exposed as the property `s`.
    """

    __slots__ = ("j", "phi", "alpha", "beta")

    def __init__(self, j: Graph, phi, alpha, beta):
        if not isinstance(j, Graph):
            raise ValidationError("constellation needs a core graph")
        phi = tuple(int(i) for i in phi)
        alpha = tuple(int(a) for a in alpha)
        beta = tuple(int(b) for b in beta)
        if not beta or any(b not in (0, 1) for b in beta):
            raise ValidationError("beta must be a nonempty 0/1 tuple")
        if len(phi) != j.n or any(not 0 <= i < len(beta) for i in phi):
            raise ValidationError("phi must map V(J) into the parts")
        if len(alpha) != j.n or any(a not in (0, 1) for a in alpha):
            raise ValidationError("alpha must map V(J) to {0,1}")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, *a):
        raise AttributeError("Constellation is immutable")

    def __reduce__(self):
        return (Constellation, (self.j, self.phi, self.alpha, self.beta))

    @property
    def l(self) -> int:
        return len(self.beta)

    @property
    def s(self) -> int:
        sizes = [0] * self.l
        for i in self.phi:
            sizes[i] += 1
        return max(sizes)

    def fiber(self, i: int):
        return tuple(v for v in range(self.j.n) if self.phi[v] == i)

    def system(self, i: int) -> StarSystem:
        vs = self.fiber(i)
        from .graphs import induced_subgraph
        return StarSystem(induced_subgraph(self.j, vs),
                          tuple(self.alpha[v] for v in vs), self.beta[i])

    def systems(self):
        return tuple(self.system(i) for i in range(self.l))

    def to_json_obj(self):
        return {"j": graph6.encode(self.j), "phi": list(self.phi),
                "alpha": list(self.alpha), "beta": list(self.beta)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True,
                          separators=(",", ":"))

    def stable_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    def canonical_key(self):
        """Invariant of the equivalence class: canonical form of the
        gadget graph (J plus one anchor per part, core vertices tied to
        their fiber's anchor) colored by (anchor beta, core alpha).
        Isomorphisms of the colored gadget are exactly the equivalence
        moves: J-isomorphism respecting alpha and fibers plus part
        permutations preserving beta."""
        k, l = self.j.n, self.l
        rows = list(self.j.rows) + [0] * l
        for v in range(k):
            a = k + self.phi[v]
            rows[v] |= 1 << a
            rows[a] |= 1 << v
        gadget = Graph.from_rows(rows)
        groups = [0, 0, 0, 0]  # anchors beta 0/1, cores alpha 0/1
        for i in range(l):
            groups[self.beta[i]] |= 1 << (k + i)
        for v in range(k):
            groups[2 + self.alpha[v]] |= 1 << v
        cells = [m for m in groups if m]
        sizes = tuple(m.bit_count() for m in groups)
        return (k, l, sizes, canonical_form(gadget, cells).canon.rows)

    def __eq__(self, other):
        return (isinstance(other, Constellation) and self.j == other.j
                and self.phi == other.phi and self.alpha == other.alpha
                and self.beta == other.beta)

    def __hash__(self):
        return hash(("cons", self.j.rows, self.phi, self.alpha, self.beta))

    def __repr__(self):
        return (f"Constellation({graph6.encode(self.j)!r}, phi={list(self.phi)}, "
                f"alpha={list(self.alpha)}, beta={list(self.beta)})")


def constellation_irreducible(c: Constellation) -> bool:
    """Componentwise: every fiber system must be irreducible."""
    return all(star_system_irreducible(c.system(i)) for i in range(c.l))


def constellation_host(c: Constellation, crown_sizes) -> Graph:
    """A host admitting a template: each fiber system gets its own crown,
    no edges across parts beyond those of J.  Part i occupies the fiber
    vertices (J labels) followed by its crown block."""
    crown_sizes = list(crown_sizes)
    if len(crown_sizes) != c.l or any(m < 0 for m in crown_sizes):
        raise ValidationError("need one crown size >= 0 per part")
    k = c.j.n
    n = k + sum(crown_sizes)
    rows = list(c.j.rows) + [0] * (n - k)
    base = k
    for i in range(c.l):
        m = crown_sizes[i]
        cmask = ((1 << m) - 1) << base
        for v in range(k):
            if c.phi[v] == i and c.alpha[v]:
                rows[v] |= cmask
                for w in range(base, base + m):
                    rows[w] |= 1 << v
        if c.beta[i]:
            for w in range(base, base + m):
                rows[w] |= cmask ^ (1 << w)
        base += m
    return Graph.from_rows(rows)


# ---------------------------------------------------------------------------
# templates

class Template:
    """A verified embedding: psi maps core vertices into the host and
    parts[i] lists the host vertices of X_i (core images included)."""

    __slots__ = ("psi", "parts")

    def __init__(self, psi, parts):
        object.__setattr__(self, "psi", tuple(psi))
        object.__setattr__(self, "parts", tuple(tuple(p) for p in parts))

    def __setattr__(self, *a):
        raise AttributeError("Template is immutable")

    def to_json_obj(self):
        return {"psi": list(self.psi), "parts": [list(p) for p in self.parts]}

    def __eq__(self, other):
        return (isinstance(other, Template) and self.psi == other.psi
                and self.parts == other.parts)

    def __repr__(self):
        return f"Template(psi={list(self.psi)}, parts={[list(p) for p in self.parts]})"


def _as_constellation(c) -> Constellation:
    if isinstance(c, StarSystem):
        return c.as_constellation()
    if not isinstance(c, Constellation):
        raise ValidationError("expected a star system or constellation")
    return c


def verify_template(g: Graph, c, t: Template) -> bool:
    """Re-check every template condition from scratch.

    Parts partition V(g); psi is an injective induced embedding of J
    with psi(v) in its fiber's part; alpha controls attachment of each
    core image to its own part's crown; beta controls each crown's
    internal type.  Any violation, including shape mismatches, is False.
    """
    c = _as_constellation(c)
    k, l = c.j.n, c.l
    if len(t.psi) != k or len(t.parts) != l:
        return False
    seen = 0
    for p in t.parts:
        m = mask_of(p)
        if len(p) != m.bit_count() or m & seen or m >> g.n:
            return False
        seen |= m
    if seen != g.full_mask():
        return False
    if len(set(t.psi)) != k or any(not 0 <= x < g.n for x in t.psi):
        return False
    for v in range(k):
        if t.psi[v] not in t.parts[c.phi[v]]:
            return False
    for u in range(k):
        for v in range(u + 1, k):
            if (c.j.rows[u] >> v & 1) != (g.rows[t.psi[u]] >> t.psi[v] & 1):
                return False
    z = set(t.psi)
    for v in range(k):
        for w in t.parts[c.phi[v]]:
            if w in z:
                continue
            if (g.rows[t.psi[v]] >> w & 1) != c.alpha[v]:
                return False
    for i in range(l):
        crown = [w for w in t.parts[i] if w not in z]
        for a in range(len(crown)):
            for b in range(a + 1, len(crown)):
                if (g.rows[crown[a]] >> crown[b] & 1) != c.beta[i]:
                    return False
    return True


def find_template(g: Graph, c, budget_limit: int | None = None):
    """First template of the constellation in g, or None.

    Backtracking in two stages: embed J (vertices in label order,
    candidate hosts ascending, degree-prefiltered), then assign the
    remaining vertices to parts in label order.  Parts with no core and
    equal beta are interchangeable while empty, so only the first such
    part is tried.  The returned template has been re-verified.
    """
    c = _as_constellation(c)
    budget = _budget(budget_limit)
    k, l, n = c.j.n, c.l, g.n
    if k > n:
        return None
    jrow, grow = c.j.rows, g.rows
    jdeg, gdeg = c.j.degrees(), g.degrees()
    fibers = [c.fiber(i) for i in range(l)]
    psi = [0] * k

    def assign_rest(used):
        rest = [w for w in range(n) if not used >> w & 1]
        allowed = []
        for w in rest:
            m = 0
            for i in range(l):
                if all((grow[w] >> psi[v] & 1) == c.alpha[v] for v in fibers[i]):
                    m |= 1 << i
            if not m:
                return None
            allowed.append(m)
        crowns = [0] * l

        def rec(idx):
            budget.spend()
            if idx == len(rest):
                return True
            w = rest[idx]
            b = 1 << w
            tried_empty = 0
            for i in range(l):
                if not allowed[idx] >> i & 1:
                    continue
                crown = crowns[i]
                if not crown and not fibers[i]:
                    tb = 1 << c.beta[i]
                    if tried_empty & tb:
                        continue
                    tried_empty |= tb
                if c.beta[i]:
                    if grow[w] & crown != crown:
                        continue
                elif grow[w] & crown:
                    continue
                crowns[i] |= b
                if rec(idx + 1):
                    return True
                crowns[i] ^= b
            return False

        if not rec(0):
            return None
        parts = []
        for i in range(l):
            m = crowns[i] | mask_of(psi[v] for v in fibers[i])
            parts.append(tuple(bits(m)))
        return Template(psi, parts)

    def embed(i, used):
        if i == k:
            return assign_rest(used)
        for cand in range(n):
            if used >> cand & 1 or gdeg[cand] < jdeg[i]:
                continue
            budget.spend()
            if all((jrow[i] >> v & 1) == (grow[cand] >> psi[v] & 1)
                   for v in range(i)):
                psi[i] = cand
                got = embed(i + 1, used | 1 << cand)
                if got is not None:
                    return got
        return None

    t = embed(0, 0)
    if t is not None:
        assert verify_template(g, c, t)
    return t


# ---------------------------------------------------------------------------
# P(J) membership

def _pj_decide(g: Graph, c: Constellation, budget: Budget):
    """Certificate ("pj", core_pairs, part_of) or None.

    core_pairs lists (core vertex, g vertex) for the part of the core
    embedded inside g; part_of assigns every g vertex its part.  The
    search runs over core subsets W by increasing size, injective
    induced embeddings of J[W] in lex order, then a part-coloring
    backtrack over the remaining vertices.
    """
    k, l, n = c.j.n, c.l, g.n
    if k == 0:
        s_idx = [i for i in range(l) if c.beta[i] == 0]
        t_idx = [i for i in range(l) if c.beta[i] == 1]
        res = HST(len(s_idx), len(t_idx)).membership(g, budget)
        if not res.member:
            return None
        part_of = [0] * n
        for pos, i in enumerate(s_idx + t_idx):
            for w in res.certificate.parts[pos]:
                part_of[w] = i
        return ("pj", (), tuple(part_of))

    jrow, grow = c.j.rows, g.rows

    def color_rest(wset, sigma):
        image = mask_of(sigma)
        by_part = [[] for _ in range(l)]
        for pos, v in enumerate(wset):
            by_part[c.phi[v]].append((sigma[pos], c.alpha[v]))
        rest = [w for w in range(n) if not image >> w & 1]
        allowed = []
        for w in rest:
            m = 0
            for i in range(l):
                if all((grow[w] >> sv & 1) == a for sv, a in by_part[i]):
                    m |= 1 << i
            if not m:
                return None
            allowed.append(m)
        crowns = [0] * l

        def rec(idx):
            budget.spend()
            if idx == len(rest):
                return True
            w = rest[idx]
            b = 1 << w
            tried_empty = 0
            for i in range(l):
                if not allowed[idx] >> i & 1:
                    continue
                crown = crowns[i]
                if not crown and not by_part[i]:
                    tb = 1 << c.beta[i]
                    if tried_empty & tb:
                        continue
                    tried_empty |= tb
                if c.beta[i]:
                    if grow[w] & crown != crown:
                        continue
                elif grow[w] & crown:
                    continue
                crowns[i] |= b
                if rec(idx + 1):
                    return True
                crowns[i] ^= b
            return False

        if not rec(0):
            return None
        part_of = [0] * n
        for i in range(l):
            for w in bits(crowns[i]):
                part_of[w] = i
        for pos, v in enumerate(wset):
            part_of[sigma[pos]] = c.phi[v]
        return tuple(part_of)

    gdeg = g.degrees()
    for size in range(min(k, n) + 1):
        for wset in combinations(range(k), size):
            wdeg = [sum(jrow[v] >> u & 1 for u in wset) for v in wset]
            sigma = [0] * size

            def embed(i, used):
                if i == size:
                    return color_rest(wset, sigma)
                v = wset[i]
                for cand in range(n):
                    if used >> cand & 1 or gdeg[cand] < wdeg[i]:
                        continue
                    budget.spend()
                    if all((jrow[v] >> wset[p] & 1) == (grow[cand] >> sigma[p] & 1)
                           for p in range(i)):
                        sigma[i] = cand
                        got = embed(i + 1, used | 1 << cand)
                        if got is not None:
                            return got
                return None

            part_of = embed(0, 0)
            if part_of is not None:
                pairs = tuple(zip(wset, sigma))
                return ("pj", pairs, part_of)
    return None


def is_member_PJ(g: Graph, c, budget_limit: int | None = None) -> MembershipResult:
    """Is g an induced subgraph of some host admitting a template?

    Decided inside g: choose W subseteq V(J) and an injective induced
    embedding sigma of J[W] into g, then assign the remaining vertices
    to parts so that (a) each embedded core vertex meets its own part's
    crown-in-g fully or not at all per alpha, and (b) each part's
    crown-in-g is a clique or independent per beta.  This is exact in
    both directions: restricting any host template to g yields such a
    (sigma, parts), and conversely g plus the missing core vertices of
    J - W (wired to match J, and to crowns per alpha) is itself a host,
    so no crown padding is ever needed.  Certificates replay through
    verify_pj_certificate, which rebuilds that host.
    """
    c = _as_constellation(c)
    budget = _budget(budget_limit)
    start = budget.used
    cert = _pj_decide(g, c, budget)
    nodes = budget.used - start
    thash = None
    if cert is None:
        blob = f"pj|{c.to_json()}|{graph6.encode(g)}|{nodes}"
        thash = hashlib.sha256(blob.encode()).hexdigest()
    return MembershipResult(cert is not None, cert, thash, nodes)


def verify_pj_certificate(g: Graph, c, cert) -> bool:
    """Rebuild the host described by the certificate and re-verify.

    The host is g plus one fresh vertex per missing core vertex, wired
    to match J exactly and to each in-g crown per alpha; the template
    it should admit is then checked bullet by bullet via
    verify_template, plus g must come back as the induced subgraph on
    its own labels.
    """
    c = _as_constellation(c)
    if not (isinstance(cert, tuple) and len(cert) == 3 and cert[0] == "pj"):
        return False
    _, pairs, part_of = cert
    k, n = c.j.n, g.n
    if len(part_of) != n or any(not 0 <= i < c.l for i in part_of):
        return False
    inside = dict(pairs)
    if len(inside) != len(pairs):
        return False
    for v, w in pairs:
        if not (0 <= v < k and 0 <= w < n):
            return False
    missing = [v for v in range(k) if v not in inside]
    rows = list(g.rows)
    host_label = {}
    for off, v in enumerate(missing):
        host_label[v] = n + off
        rows.append(0)
    zs = set(inside.values())
    for v in missing:
        x = host_label[v]
        for u in range(k):
            if not c.j.rows[v] >> u & 1:
                continue
            y = inside[u] if u in inside else host_label[u]
            rows[x] |= 1 << y
            rows[y] |= 1 << x
        if c.alpha[v]:
            for w in range(n):
                if part_of[w] == c.phi[v] and w not in zs:
                    rows[x] |= 1 << w
                    rows[w] |= 1 << x
    host = Graph.from_rows(rows)
    psi = [inside[v] if v in inside else host_label[v] for v in range(k)]
    parts = [[] for _ in range(c.l)]
    for w in range(n):
        parts[part_of[w]].append(w)
    for v in missing:
        parts[c.phi[v]].append(host_label[v])
    t = Template(psi, [tuple(sorted(p)) for p in parts])
    if not verify_template(host, c, t):
        return False
    from .graphs import induced_subgraph
    return induced_subgraph(host, range(n)) == g


class PJFamily(Family):
    """P(J) as a family expression: hereditary by definition (induced
    subgraphs of hosts), usable by the enumerator.  The decision has no
    incremental shortcut, so new_vertex_only is ignored."""

    __slots__ = ("constellation",)
    hereditary = True

    def __init__(self, c):
        object.__setattr__(self, "constellation", _as_constellation(c))

    def __setattr__(self, *a):
        raise AttributeError("Family is immutable")

    def key(self):
        c = self.constellation
        return ("pj", c.j.n, c.j.rows, c.phi, c.alpha, c.beta)

    def text(self):
        c = self.constellation
        return ("pj(" + graph6.encode(c.j)
                + ";" + "".join(map(str, c.phi))
                + ";" + "".join(map(str, c.alpha))
                + ";" + "".join(map(str, c.beta)) + ")")

    def _decide(self, g, budget, new_vertex_only):
        return (lambda cert: (cert is not None, cert))(
            _pj_decide(g, self.constellation, budget))


# ---------------------------------------------------------------------------
# systematic generation

def irreducible_star_systems(s: int) -> list[StarSystem]:
    """All irreducible systems with core at most s, one per isomorphism
    class (alpha-respecting, beta-exact), sorted by canonical key."""
    if s < 0:
        raise ValidationError("s must be >= 0")
    if s > 6:
        raise CapacityError("star system generation is guarded at s <= 6")
    from .enumeration import enumerate_family
    table = enumerate_family(ALL, s, keep_members=True)
    out = {}
    for size in range(s + 1):
        for j in table.members[size]:
            for abits in range(1 << size):
                alpha = tuple(abits >> v & 1 for v in range(size))
                for beta in (0, 1):
                    sys = StarSystem(j, alpha, beta)
                    if not star_system_irreducible(sys):
                        continue
                    out.setdefault(sys.canonical_key(), sys)
    return [out[k] for k in sorted(out)]


def generate_constellations(l: int, s: int) -> list[Constellation]:
    """All irreducible (l, s)-constellations up to equivalence.

    Assembly: a multiset of l irreducible component systems, laid out in
    consecutive fiber blocks, plus an arbitrary bigraph between every
    pair of fiber blocks.  Two cross-edge codes give equivalent
    constellations iff they lie in the same orbit of the assembly's
    automorphism group (part permutations between identical components
    and alpha-respecting fiber automorphisms), so codes are
    orbit-reduced before emission; distinct multisets can never collide.
    The final canonical-key dedup is a safety net on top of that
    argument.  Grids at the top of the l*s <= 6 envelope take minutes.
    """
    if l < 1:
        raise ValidationError("constellations need at least one part")
    if s < 0:
        raise ValidationError("fiber bound must be >= 0")
    if l * s > 6:
        raise CapacityError(
            f"grid l*s = {l * s} beyond the generation guard of 6")
    comps = irreducible_star_systems(s)
    out = {}

    def emit(c: Constellation):
        out.setdefault(c.canonical_key(), c)

    for combo in combinations_with_replacement(range(len(comps)), l):
        systems = [comps[ix] for ix in combo]
        sizes = [sy.j.n for sy in systems]
        offs = [0] * l
        for i in range(1, l):
            offs[i] = offs[i - 1] + sizes[i - 1]
        total = sum(sizes)
        beta = tuple(sy.beta for sy in systems)
        phi = tuple(i for i in range(l) for _ in range(sizes[i]))
        alpha = tuple(a for sy in systems for a in sy.alpha)
        base = [0] * total
        for i, sy in enumerate(systems):
            for v in range(sizes[i]):
                base[offs[i] + v] = sy.j.rows[v] << offs[i]
        pairs = [(offs[i] + u, offs[jx] + v)
                 for i in range(l) for jx in range(i + 1, l)
                 for u in range(sizes[i]) for v in range(sizes[jx])]
        if not pairs:
            emit(Constellation(Graph.from_rows(base), phi, alpha, beta))
            continue
        pair_idx = {}
        for idx, (u, v) in enumerate(pairs):
            pair_idx[(u, v)] = idx
            pair_idx[(v, u)] = idx
        pperms = []
        for p in _assembly_generators(base, phi, alpha, beta, total, l):
            pperms.append(tuple(pair_idx[(p[u], p[v])] for u, v in pairs))
        seen = bytearray(1 << len(pairs))
        for code in range(1 << len(pairs)):
            if seen[code]:
                continue
            seen[code] = 1
            stack = [code]
            while stack:
                x = stack.pop()
                for pp in pperms:
                    y = 0
                    for b in bits(x):
                        y |= 1 << pp[b]
                    if not seen[y]:
                        seen[y] = 1
                        stack.append(y)
            rows = list(base)
            for b in bits(code):
                u, v = pairs[b]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            emit(Constellation(Graph.from_rows(rows), phi, alpha, beta))
    return [out[k] for k in sorted(out)]


def _assembly_generators(base, phi, alpha, beta, total, l):
    """Automorphism generators of the cross-edge-free assembly, restricted
    to core vertices: the colored-gadget group, so exactly fiber-block
    permutations between identical systems composed with internal
    alpha-preserving automorphisms."""
    rows = list(base) + [0] * l
    for v in range(total):
        a = total + phi[v]
        rows[v] |= 1 << a
        rows[a] |= 1 << v
    gadget = Graph.from_rows(rows)
    groups = [0, 0, 0, 0]
    for i in range(l):
        groups[beta[i]] |= 1 << (total + i)
    for v in range(total):
        groups[2 + alpha[v]] |= 1 << v
    cells = [m for m in groups if m]
    gens = canonical_form(gadget, cells).generators
    return [p[:total] for p in gens]


# ---------------------------------------------------------------------------
# minimal non-star scans

class NonStarScanReport:
    """Vertex-minimal non-s-stars found by a scan.

    witnesses holds canonical graph6 strings; scanned is a list of
    (n, count) pairs so serialization order is fixed.  max_order is 0
    when the scan found nothing.
    """

    __slots__ = ("s", "mode", "n_max", "seed", "samples", "scanned",
                 "witnesses", "max_order")

    def __init__(self, s, mode, n_max, seed, samples, scanned, witnesses):
        self.s = s
        self.mode = mode
        self.n_max = n_max
        self.seed = seed
        self.samples = samples
        self.scanned = list(scanned)
        self.witnesses = list(witnesses)
        self.max_order = max((graph6.decode(w).n for w in self.witnesses),
                             default=0)

    def to_json_obj(self):
        obj = {"s": self.s, "mode": self.mode, "n_max": self.n_max,
               "scanned": [list(row) for row in self.scanned],
               "witnesses": self.witnesses, "max_order": self.max_order}
        if self.mode == "random":
            obj["seed"] = self.seed
            obj["samples"] = self.samples
        return obj

    def __repr__(self):
        return (f"NonStarScanReport(s={self.s}, mode={self.mode!r}, "
                f"max_order={self.max_order}, witnesses={len(self.witnesses)})")


def is_minimal_nonstar(g: Graph, s: int) -> bool:
    """Not an s-star, but every one-vertex deletion is."""
    if is_s_star(g, s):
        return False
    return all(is_s_star(delete_vertex(g, v), s) for v in range(g.n))


def minimal_nonstar_scan(s: int, n_max: int, *, samples: int | None = None,
                         seed: int = 0) -> NonStarScanReport:
    """Hunt for vertex-minimal non-s-stars.

    Exhaustive mode (samples is None) walks every unlabeled graph up to
    n_max (capped at 8 by enumeration cost).  Random mode draws
    `samples` graphs: order uniform in 1..n_max, then each edge an
    independent fair coin from random.Random(seed), pairs in
    lexicographic order; the seed lands in the report so runs are
    reproducible.  Witnesses are canonical graph6, deduplicated, sorted.
    """
    if s < 0:
        raise ValidationError("s must be >= 0")
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    found = set()
    scanned = []
    if samples is None:
        if n_max > 8:
            raise CapacityError("exhaustive non-star scan is capped at n = 8")
        from .enumeration import enumerate_family
        table = enumerate_family(ALL, n_max, keep_members=True)
        for n in range(1, n_max + 1):
            scanned.append((n, len(table.members[n])))
            for g in table.members[n]:
                if is_minimal_nonstar(g, s):
                    found.add(graph6.encode(g))
        return NonStarScanReport(s, "exhaustive", n_max, None, None,
                                 scanned, sorted(found))
    import random
    from .canon import canonical_form as _cf
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    rng = random.Random(seed)
    per_n = {}
    for _ in range(samples):
        n = rng.randint(1, n_max)
        per_n[n] = per_n.get(n, 0) + 1
        rows = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if rng.getrandbits(1):
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
        g = Graph.from_rows(rows)
        if is_minimal_nonstar(g, s):
            found.add(graph6.encode(_cf(g).canon))
    scanned = sorted(per_n.items())
    return NonStarScanReport(s, "random", n_max, seed, samples,
                             scanned, sorted(found))
