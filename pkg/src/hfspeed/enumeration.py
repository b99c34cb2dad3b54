"""Isomorph-free exhaustive enumeration of hereditary families.

Canonical augmentation: level n+1 is produced from level n by attaching a
new vertex to every Aut(parent)-orbit representative of neighbourhood
subsets, and a child is accepted iff the new vertex lies in the Aut(child)
orbit of the canonical deletion vertex (the one in the highest canonical
position).  Parents are stored canonically, so each unlabeled child arrives
exactly once; no hashing against previously seen graphs is ever needed.

Because the canonical labeling puts the vertex of maximum invariant
(degree, then sorted neighbour degrees) in the highest position, a child
whose new vertex is not of maximum invariant can be rejected before any
canonical computation.  The degree part of that filter is O(1) per subset
via precomputed degree-threshold masks.

Labeled counts are exact: sum over classes of n!/|Aut|.  All decisions come
from the family's own membership engine, so enumeration and the direct
labeled scan (labeled_count_direct) agree only if both are right; tests
exploit that.
"""

from __future__ import annotations

import hashlib
import math
import os
import pickle
from fractions import Fraction
from itertools import combinations

from .canon import canonical_form, subset_orbit_reps, vertex_invariant, vertex_orbit
from .errors import CapacityError, UnsupportedOperationError, ValidationError
from .families import Budget, Family
from .graphs import Graph, add_vertex, bits
from . import graph6

ENUM_MAX_N = 16


class SpeedTable:
    """Per-order counts of a family: unlabeled classes, labeled graphs, h.

    h(n) = log2(labeled[n]) as a float for display; every consumer that
    needs to *compare* speeds works on the exact integers instead.
    members[n] holds the canonical representatives, sorted by adjacency
    encoding, when the run kept them.
    """

    def __init__(self, family_text, n_max, unlabeled, labeled, members=None):
        self.family_text = family_text
        self.n_max = n_max
        self.unlabeled = list(unlabeled)
        self.labeled = list(labeled)
        self.members = members
        self.h_bits = [math.log2(c) if c > 0 else float("-inf")
                       for c in self.labeled]

    def row(self, n):
        return (n, self.unlabeled[n], self.labeled[n], self.h_bits[n])

    def to_csv(self) -> str:
        lines = ["n,unlabeled,labeled,h_bits"]
        for n in range(self.n_max + 1):
            h = self.h_bits[n]
            htxt = f"{h:.12f}" if h != float("-inf") else "-inf"
            lines.append(f"{n},{self.unlabeled[n]},{self.labeled[n]},{htxt}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self):
        return {
            "family": self.family_text,
            "n_max": self.n_max,
            "rows": [
                {"n": n, "unlabeled": self.unlabeled[n],
                 "labeled": str(self.labeled[n]),
                 "h_bits": self.h_bits[n] if self.labeled[n] else None}
                for n in range(self.n_max + 1)
            ],
        }

    def __repr__(self):
        return (f"SpeedTable({self.family_text!r}, n_max={self.n_max}, "
                f"unlabeled={self.unlabeled})")


# one class per level entry: canonical rows, Aut generators (canonical
# labels), |Aut|
def _child_records(family, parents, n, budget_limit):
    """All accepted (rows, gens, aut) children of the given parent records."""
    out = []
    nb = n + 1
    for rows, gens in parents:
        degs = [r.bit_count() for r in rows]
        maxdeg = max(degs, default=0)
        # deg_mask[t] = vertices of parent degree >= t
        deg_mask = [0] * (n + 2)
        for v, d in enumerate(degs):
            for t in range(d + 1):
                deg_mask[t] |= 1 << v
        survivors = []
        for sub in range(1 << n):
            t = sub.bit_count()
            # new vertex needs the maximum degree in the child
            if t >= maxdeg and not sub & deg_mask[t]:
                survivors.append(sub)
        if gens:
            reps = []
            seen = set()
            for sub in survivors:
                if sub in seen:
                    continue
                reps.append(sub)
                frontier = [sub]
                seen.add(sub)
                while frontier:
                    x = frontier.pop()
                    for p in gens:
                        y = 0
                        for ub in bits(x):
                            y |= 1 << p[ub]
                        if y not in seen:
                            seen.add(y)
                            frontier.append(y)
        else:
            reps = survivors
        parent = Graph.from_rows(rows)
        for sub in reps:
            child = add_vertex(parent, sub)
            budget = Budget(budget_limit) if budget_limit else None
            if not family.membership(child, budget, new_vertex_only=True).member:
                continue
            inv = vertex_invariant(child)
            vmax = max(inv)
            if inv[n] != vmax:
                continue
            cf = canonical_form(child)
            w = cf.labeling.index(nb - 1)
            if w != n and not vertex_orbit(n, cf.generators, nb) >> w & 1:
                continue
            lab = cf.labeling
            inv_lab = [0] * nb
            for i, p in enumerate(lab):
                inv_lab[p] = i
            gens_c = tuple(tuple(lab[p[inv_lab[q]]] for q in range(nb))
                           for p in cf.generators)
            out.append((cf.canon.rows, gens_c, cf.aut_order))
    return out


_WORKER_FAMILY = None
_WORKER_BUDGET = None


def _init_worker(blob, budget_limit):
    global _WORKER_FAMILY, _WORKER_BUDGET
    _WORKER_FAMILY = pickle.loads(blob)
    _WORKER_BUDGET = budget_limit


def _worker_chunk(args):
    parents, n = args
    return _child_records(_WORKER_FAMILY, parents, n, _WORKER_BUDGET)


def enumerate_family(f: Family, n_max: int, *, budget_limit: int | None = None,
                     threads: int = 1, keep_members: bool = True,
                     checkpoint_dir: str | None = None, progress=None) -> SpeedTable:
    """Exhaustive unlabeled enumeration of f up to n_max vertices.

    Refuses families that are not hereditary by construction (the
    augmentation scheme would silently undercount).  threads > 1 fans the
    parent set out to a process pool; results are merged by sorted
    canonical encoding, so any worker count produces identical output.
    Checkpoints, when enabled, are keyed by (family text hash, n) and make
    reruns resume at the highest completed level.
    """
    if not f.hereditary:
        raise UnsupportedOperationError(
            f"enumeration needs a hereditary-by-construction family, "
            f"got {f.text()}")
    if n_max < 0 or n_max > ENUM_MAX_N:
        raise CapacityError(f"n_max {n_max} outside 0..{ENUM_MAX_N}")

    ckpt_key = None
    if checkpoint_dir:
        os.makedirs(checkpoint_dir, exist_ok=True)
        ckpt_key = hashlib.sha256(f.text().encode()).hexdigest()[:16]

    def ckpt_path(n):
        return os.path.join(checkpoint_dir, f"enum-{ckpt_key}-{n:02d}.pkl")

    empty = Graph(0)
    start_n = 0
    level = None
    unlabeled, labeled = [], []
    if ckpt_key:
        for n in range(n_max, -1, -1):
            p = ckpt_path(n)
            if os.path.exists(p):
                with open(p, "rb") as fh:
                    unlabeled, labeled, level = pickle.load(fh)
                start_n = n
                break
    if level is None:
        member0 = f.membership(empty,
                               Budget(budget_limit) if budget_limit else None)
        level = [(empty.rows, ())] if member0.member else []
        unlabeled = [len(level)]
        labeled = [len(level)]
        if ckpt_key:
            with open(ckpt_path(0), "wb") as fh:
                pickle.dump((unlabeled, labeled, level), fh)

    members = None
    if keep_members:
        members = [[Graph.from_rows(r) for r, _ in level]]
        # rebuild earlier levels if we resumed mid-run
        if start_n > 0:
            members = [None] * start_n + members

    pool = None
    blob = None
    if threads > 1:
        import multiprocessing as mp
        blob = pickle.dumps(f)
        pool = mp.get_context("fork").Pool(
            threads, initializer=_init_worker, initargs=(blob, budget_limit))

    try:
        for n in range(start_n, n_max):
            parents = level
            if pool is not None and len(parents) > 1:
                chunk = max(1, len(parents) // (threads * 4))
                tasks = [(parents[i:i + chunk], n)
                         for i in range(0, len(parents), chunk)]
                recs = []
                for part in pool.imap(_worker_chunk, tasks):
                    recs.extend(part)
            else:
                recs = _child_records(f, parents, n, budget_limit)
            recs.sort(key=lambda r: r[0])
            level = [(rows, gens) for rows, gens, _ in recs]
            unlabeled.append(len(recs))
            fact = math.factorial(n + 1)
            labeled.append(sum(fact // aut for _, _, aut in recs))
            if members is not None:
                members.append([Graph.from_rows(rows) for rows, _, _ in recs])
            if ckpt_key:
                with open(ckpt_path(n + 1), "wb") as fh:
                    pickle.dump((unlabeled, labeled, level), fh)
            if progress is not None:
                progress(n + 1, len(recs))
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    if members is not None and any(m is None for m in members):
        # resumed runs have no stored members below the checkpoint; rerun
        # the cheap lower levels locally to fill them in
        lower = enumerate_family(f, start_n, budget_limit=budget_limit,
                                 keep_members=True)
        for i in range(start_n):
            members[i] = lower.members[i]

    return SpeedTable(f.text(), n_max, unlabeled, labeled, members)


def family_members(f: Family, n: int, **kw) -> list[Graph]:
    """Canonical representatives of the n-vertex members of f."""
    return enumerate_family(f, n, **kw).members[n]


def write_graph6(graphs, fh):
    for g in graphs:
        fh.write(graph6.encode(g) + "\n")


# ---------------------------------------------------------------------------
# the independent counting route

def labeled_count_direct(f: Family, n: int, budget_limit: int | None = None) -> int:
    """Count labeled members on [n] by scanning all 2^C(n,2) graphs.

    Exponential on purpose; it shares nothing with the augmentation scheme
    except the membership engine, which makes it the oracle of choice for
    cross-checking counts at small n.
    """
    if n < 0 or n > 7:
        raise CapacityError("direct labeled scan is capped at n = 7")
    pairs = list(combinations(range(n), 2))
    total = 0
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if code >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        g = Graph.from_rows(rows)
        budget = Budget(budget_limit) if budget_limit else None
        if f.membership(g, budget).member:
            total += 1
    return total


def one_vertex_extensions(g: Graph, f: Family,
                          budget_limit: int | None = None) -> list[Graph]:
    """All one-vertex extensions of g inside f, by ascending neighbourhood
    mask of the new vertex (labeled, not up to isomorphism)."""
    out = []
    for sub in range(1 << g.n):
        child = add_vertex(g, sub)
        budget = Budget(budget_limit) if budget_limit else None
        if f.membership(child, budget).member:
            out.append(child)
    return out


# ---------------------------------------------------------------------------
# speed deltas against the benchmark H(l) = H(l, 0)

class DeltaReport:
    """delta(n) = h(F, n) - h(H(l), n), a fitted log coefficient and the
    residual drift over the top half of the range."""

    def __init__(self, family_text, l, n_max, delta, k_fit, drift, fit_ns):
        self.family_text = family_text
        self.l = l
        self.n_max = n_max
        self.delta = delta
        self.k_fit = k_fit
        self.drift = drift
        self.fit_ns = fit_ns

    def to_json_obj(self):
        return {
            "family": self.family_text,
            "l": self.l,
            "n_max": self.n_max,
            "delta": self.delta,
            "k_fit": self.k_fit,
            "drift": self.drift,
            "fit_ns": list(self.fit_ns),
        }


def speed_delta(f: Family, l: int, n_max: int, *, budget_limit=None,
                threads: int = 1, table: SpeedTable | None = None,
                bench: SpeedTable | None = None) -> DeltaReport:
    """Fit delta(n) = h(F,n) - h(H(l),n) ~ k*log2(n) + O(1) over the top
    half of the range; k is rounded and clamped at 0, drift is the spread
    of the residual delta(n) - k*log2(n) there."""
    from .families import HST
    if table is None:
        table = enumerate_family(f, n_max, budget_limit=budget_limit,
                                 threads=threads, keep_members=False)
    if bench is None:
        bench = enumerate_family(HST(l, 0), n_max, budget_limit=budget_limit,
                                 threads=threads, keep_members=False)
    delta = [None] * (n_max + 1)
    for n in range(n_max + 1):
        if table.labeled[n] > 0 and bench.labeled[n] > 0:
            delta[n] = math.log2(Fraction(table.labeled[n], bench.labeled[n]))
    fit_ns = [n for n in range(max(1, n_max // 2 + 1), n_max + 1)
              if delta[n] is not None]
    if len(fit_ns) < 2:
        raise ValidationError("not enough points to fit a delta slope")
    xs = [math.log2(n) for n in fit_ns]
    ys = [delta[n] for n in fit_ns]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx else 0.0
    k_fit = max(0, round(slope))
    resid = [delta[n] - k_fit * math.log2(n) for n in fit_ns]
    drift = max(resid) - min(resid)
    return DeltaReport(f.text(), l, n_max, delta, k_fit, drift, fit_ns)
