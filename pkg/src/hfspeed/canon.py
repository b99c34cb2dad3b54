"""Canonical labelings, automorphism groups, orbit machinery.

Individualization-refinement in the style of nauty, scaled down to n <= 16:
equitable refinement by neighbour counts, target cell = first non-singleton,
leaves compared by the packed upper triangle of the relabeled graph, subtree
pruning via automorphisms discovered at repeated leaves.  The canonical form
is the least leaf encoding.

Initial cells are ordered by a cheap vertex invariant (degree, then sorted
neighbour degrees) ascending, and refinement only ever splits cells in
place, so the vertex in the highest canonical position always carries the
maximum invariant.  The enumerator relies on that to reject most candidate
children without running this search.

Group orders come from a small deterministic Schreier-Sims over the
discovered generators.
"""

from __future__ import annotations

from .graphs import Graph, bits, relabel


class CanonicalForm:
    """Canonically relabeled copy plus the data the enumerator needs."""

    __slots__ = ("canon", "labeling", "aut_order", "generators")

    def __init__(self, canon, labeling, aut_order, generators):
        self.canon = canon            # Graph on canonical labels
        self.labeling = labeling      # labeling[old] = canonical position
        self.aut_order = aut_order    # |Aut| of the input graph
        self.generators = generators  # Aut generators on the input labels

    def __repr__(self):
        return f"CanonicalForm(n={self.canon.n}, aut={self.aut_order})"


def vertex_invariant(g: Graph):
    """Per-vertex (degree, sorted neighbour degrees); isomorphism-invariant."""
    deg = g.degrees()
    return tuple((deg[v], tuple(sorted(deg[u] for u in bits(g.rows[v]))))
                 for v in range(g.n))


def _refine(rows, cells):
    """Equitable refinement of an ordered partition (list of cell masks).

    Cells split in place into subcells ordered by neighbour count against
    the splitter, ascending.  The rule is isomorphism-invariant, so two
    isomorphic colored graphs refine along mirror-image partitions.
    """
    queue = list(cells)
    while queue:
        splitter = queue.pop()
        newcells = []
        touched = False
        for cell in cells:
            if cell.bit_count() <= 1:
                newcells.append(cell)
                continue
            groups = {}
            m = cell
            while m:
                b = m & -m
                m ^= b
                k = (rows[b.bit_length() - 1] & splitter).bit_count()
                groups[k] = groups.get(k, 0) | b
            if len(groups) == 1:
                newcells.append(cell)
            else:
                touched = True
                for k in sorted(groups):
                    sub = groups[k]
                    newcells.append(sub)
                    queue.append(sub)
        if touched:
            cells = newcells
    return cells


def _perm_from_discrete(cells, n):
    """labeling[old] = position, for a discrete ordered partition."""
    lab = [0] * n
    for pos, cell in enumerate(cells):
        lab[cell.bit_length() - 1] = pos
    return tuple(lab)


def _encode_by_labeling(rows, n, lab):
    """Packed upper triangle of the relabeled graph, row-major over positions."""
    order = [0] * n
    for v in range(n):
        order[lab[v]] = v
    enc = 0
    for p in range(n):
        rp = rows[order[p]]
        for q in range(p + 1, n):
            enc = enc << 1 | (rp >> order[q] & 1)
    return enc


def _compose(a, b):
    """Permutation a after b: (a*b)[i] = a[b[i]]."""
    return tuple(a[x] for x in b)


def _inverse(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def canonical_form(g: Graph, cells=None) -> CanonicalForm:
    """Canonical form of g, optionally respecting an initial ordered partition.

    With `cells` (ordered list of vertex masks covering V) the search only
    considers labelings whose position order refines the given cell order,
    i.e. canonical forms of the colored graph.  Generators then preserve the
    coloring.
    """
    n = g.n
    if n == 0:
        return CanonicalForm(g, (), 1, ())
    rows = g.rows
    inv = vertex_invariant(g)

    if cells is None:
        groups = {}
        for v in range(n):
            groups.setdefault(inv[v], 0)
            groups[inv[v]] |= 1 << v
        initial = [groups[k] for k in sorted(groups)]
    else:
        if sum(c.bit_count() for c in cells) != n:
            raise ValueError("initial cells must partition the vertex set")
        initial = []
        for cell in cells:
            groups = {}
            for v in bits(cell):
                groups.setdefault(inv[v], 0)
                groups[inv[v]] |= 1 << v
            initial.extend(groups[k] for k in sorted(groups))

    best = None          # (enc, labeling)
    first = None         # (enc, labeling) at the first leaf
    gens = []

    def record_aut(lab_a, lab_b):
        # two labelings producing the same labeled graph: a^-1 b is an aut
        sigma = _compose(_inverse(lab_a), lab_b)
        if any(sigma[i] != i for i in range(n)) and sigma not in gens:
            gens.append(sigma)

    def orbit_hit(v, tried, prefix):
        # is v in the orbit of a tried vertex under gens fixing the prefix?
        if not tried or not gens:
            return False
        fixers = [p for p in gens if all(p[x] == x for x in prefix)]
        if not fixers:
            return False
        seen = set(tried)
        frontier = list(tried)
        while frontier:
            x = frontier.pop()
            for p in fixers:
                y = p[x]
                if y not in seen:
                    if y == v:
                        return True
                    seen.add(y)
                    frontier.append(y)
        return v in seen

    def search(cells, prefix):
        nonlocal best, first
        cells = _refine(rows, cells)
        target = -1
        for idx, cell in enumerate(cells):
            if cell.bit_count() > 1:
                target = idx
                break
        if target < 0:
            lab = _perm_from_discrete(cells, n)
            enc = _encode_by_labeling(rows, n, lab)
            if first is None:
                first = (enc, lab)
                best = (enc, lab)
                return
            if enc == first[0]:
                record_aut(first[1], lab)
            if enc < best[0]:
                best = (enc, lab)
            elif enc == best[0] and lab != best[1]:
                record_aut(best[1], lab)
            return
        cell = cells[target]
        tried = []
        for v in bits(cell):
            if orbit_hit(v, tried, prefix):
                continue
            tried.append(v)
            child = cells[:target] + [1 << v, cell ^ (1 << v)] + cells[target + 1:]
            search(child, prefix + (v,))

    search(initial, ())
    lab = best[1]
    canon = relabel(g, lab)
    return CanonicalForm(canon, lab, group_order(gens, n), tuple(gens))


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).canon


# ---------------------------------------------------------------------------
# permutation groups

def group_order(generators, n: int) -> int:
    """Order of the group generated by `generators` (Schreier-Sims).

    Deterministic incremental version with sifting; degree is tiny here so
    no bells, no whistles.
    """
    ident = tuple(range(n))
    gens = sorted({tuple(p) for p in generators} - {ident})
    if not gens:
        return 1

    base = []      # base points
    gens_at = []   # gens_at[i]: strong generators fixing base[:i]
    orbits = []    # orbits[i]: point -> transversal perm taking base[i] there

    def rebuild_orbit(i):
        orb = orbits[i]
        frontier = list(orb)
        while frontier:
            x = frontier.pop()
            tx = orb[x]
            for p in gens_at[i]:
                y = p[x]
                if y not in orb:
                    orb[y] = _compose(p, tx)
                    frontier.append(y)

    def sift(p):
        for i in range(len(base)):
            x = p[base[i]]
            if x not in orbits[i]:
                return p, i
            p = _compose(_inverse(orbits[i][x]), p)
        return p, len(base)

    def add_gen(p):
        residue, level = sift(p)
        if residue == ident:
            return False
        if level == len(base):
            pt = min(i for i in range(n) if residue[i] != i)
            base.append(pt)
            gens_at.append([])
            orbits.append({pt: ident})
        for j in range(level + 1):
            gens_at[j].append(residue)
            rebuild_orbit(j)
        return True

    for p in gens:
        add_gen(p)

    # verify the Schreier condition bottom-up; restart on any addition
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for x in list(orbits[i]):
                tx = orbits[i][x]
                for p in gens_at[i]:
                    schreier = _compose(_compose(_inverse(orbits[i][p[x]]), p), tx)
                    if schreier != ident and add_gen(schreier):
                        changed = True
            if changed:
                break

    order = 1
    for orb in orbits:
        order *= len(orb)
    return order


def vertex_orbit(v: int, generators, n: int):
    """Orbit of vertex v under the group generated by `generators`, as a mask."""
    seen = 1 << v
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for p in generators:
            y = p[x]
            if not seen >> y & 1:
                seen |= 1 << y
                frontier.append(y)
    return seen


def apply_perm_to_mask(mask: int, perm) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << perm[v]
    return out


def subset_orbit_reps(n: int, generators):
    """One representative per orbit of 2^[n] under the generated group.

    Representatives are the least masks of their orbits, listed ascending.
    With no generators every mask is its own orbit.
    """
    total = 1 << n
    if not generators:
        return list(range(total))
    reps = []
    seen = bytearray(total)
    for m in range(total):
        if seen[m]:
            continue
        reps.append(m)
        frontier = [m]
        seen[m] = 1
        while frontier:
            x = frontier.pop()
            for p in generators:
                y = apply_perm_to_mask(x, p)
                if not seen[y]:
                    seen[y] = 1
                    frontier.append(y)
    return reps
