"""Criticality decisions and the desk-scale verification experiments.

A family f with chi_c(f) = l is critical when its speed stays within a
bounded factor of the benchmark H(l, 0); the working criterion here is
the tuple scan: f is critical iff no partition product P(F1, ..., Fl),
with F1 drawn from the eight-seed menu below and every later part C or
S, is contained in f.  Containment of a product in forb(K_1, ..., K_m)
is the finite rule: every K_i a non-member of the product.

The finite rule needs the product hereditary on nonempty graphs.  The
non-apex seeds are hereditary outright.  An apex seed fails heredity
only when deleting a vertex empties its part, and a re-partition
repairs that case: the deleted graph is still nonempty, so some other
part owns a vertex w, and {w} lands in apex(C) and apex(S) both (one
vertex, remove it, the empty graph is complete and edgeless) while the
donor part stays in C or S.  Deleting any other vertex keeps the part
in its seed because the seed bases are hereditary.  So a pattern
induced in a product member is itself a product member, which is all
the rule uses; the empty graph needs no care because forb with
non-null patterns always keeps it.

The experiments (verify_*) freeze exact counts into ExperimentReport
rows.  Fractions are exact rationals serialized as "p/q" strings;
wall-clock runtime is kept on the report object but deliberately left
out of every serialized form, so artifacts are byte-identical across
runs, thread counts, and machines.
"""

from __future__ import annotations

import csv
import io
import math
import time
from fractions import Fraction

from .canon import canonical_form
from .enumeration import enumerate_family
from .errors import UnsupportedOperationError, ValidationError
from .families import (Apex, Budget, C, ComplementFamily, DisjointUnionFam,
                       Forb, HST, M, PartitionProduct, S)
from .graphs import bits, complete, induced_subgraph
from .stars import (Constellation, PJFamily, StarSystem,
                    constellation_irreducible, generate_constellations,
                    is_member_PJ, is_s_star)
from .structure import coloring_number, enumerate_reduced, is_balanced
from . import graph6


def _budget(limit):
    return Budget(limit) if limit else Budget()


# the eight first-part seeds, in scan order; later parts range over (C, S)
# with C first.  du is disjoint union, co is complementation, apex(F) adds
# one unrestricted vertex.  co(apex(C)) is apex(S), spelled directly.
_DU_CC = DisjointUnionFam(C, C)
_DU_CS = DisjointUnionFam(C, S)
FIRST_PART_MENU = (
    M,
    _DU_CC,
    _DU_CS,
    Apex(C),
    ComplementFamily(M),
    ComplementFamily(_DU_CC),
    ComplementFamily(_DU_CS),
    Apex(S),
)


class CriticalityVerdict:
    """Outcome of a criticality decision.

    critical: the boolean verdict at level l = chi_c(f).
    s: on the critical side, the least s whose reduced members in the
       window [4s+6, n_check] are all s-stars.  The window is empty for
       large s, which the horizon reads as vacuously fine, so s is only
       trusted up to n_check; None on the non-critical side.
    witness: on the non-critical side, the factor tuple whose product
       sits inside f.
    refutations: on the critical side, one entry per scanned tuple:
       (factors, pattern, certificate) where pattern is a forbidden
       graph of f that the product accepts, with its partition
       certificate.
    """

    __slots__ = ("critical", "l", "s", "witness", "refutations", "n_check")

    def __init__(self, critical, l, s, witness, refutations, n_check):
        self.critical = critical
        self.l = l
        self.s = s
        self.witness = tuple(witness) if witness is not None else None
        self.refutations = (tuple(refutations)
                            if refutations is not None else None)
        self.n_check = n_check

    def __bool__(self):
        return self.critical

    def to_json_obj(self):
        obj = {"critical": self.critical, "l": self.l, "s": self.s,
               "n_check": self.n_check}
        if self.witness is not None:
            obj["witness"] = [f.text() for f in self.witness]
        if self.refutations is not None:
            obj["refutations"] = [
                {"tuple": [f.text() for f in fams],
                 "pattern": graph6.encode(k)}
                for fams, k, _cert in self.refutations]
        return obj

    def __repr__(self):
        if self.critical:
            return (f"CriticalityVerdict(critical, l={self.l}, s={self.s} "
                    f"at horizon {self.n_check})")
        inner = ", ".join(f.text() for f in self.witness)
        return f"CriticalityVerdict(non-critical, l={self.l}, P({inner}))"


def criticality_tuples(l):
    """The scan order: eight seeds times (C, S)^(l-1), C before S."""
    if l < 1:
        raise ValidationError("tuples need l >= 1")
    tuples = []
    rest_choices = [()]
    for _ in range(l - 1):
        rest_choices = [r + (t,) for r in rest_choices for t in (C, S)]
    for f1 in FIRST_PART_MENU:
        for rest in rest_choices:
            tuples.append((f1,) + rest)
    return tuples


def is_critical(f, *, n_check: int = 8, budget_limit: int | None = None,
                threads: int = 1) -> CriticalityVerdict:
    """Criticality of f at its own level l = chi_c(f).

    f must be in forbidden-pattern form with non-null patterns and
    finite chi_c; a family of unbounded coloring number has no level to
    be critical at.  Non-critical verdicts carry the witness tuple;
    critical verdicts carry the full refutation table and the horizon-s
    described on CriticalityVerdict.
    """
    res = coloring_number(f, budget_limit)
    l = res.l
    if l == math.inf:
        raise UnsupportedOperationError(
            "criticality is undefined at unbounded coloring number")
    if l < 1:
        raise UnsupportedOperationError(
            "criticality needs chi_c >= 1; this family excludes a "
            "one-vertex graph")
    refutations = []
    for fams in criticality_tuples(l):
        prod = PartitionProduct(fams)
        hit = None
        for k in f.patterns:
            mres = prod.membership(k, _budget(budget_limit))
            if mres.member:
                hit = (k, mres.certificate)
                break
        if hit is None:
            # every pattern avoids the product, so the product sits
            # inside f and f is not critical
            return CriticalityVerdict(False, l, None, fams, None, n_check)
        refutations.append((fams, hit[0], hit[1]))
    s = _s_at_horizon(f, l, n_check, budget_limit, threads)
    return CriticalityVerdict(True, l, s, None, refutations, n_check)


def _s_at_horizon(f, l, n_check, budget_limit, threads):
    """Least s whose reduced members in [4s+6, n_check] are all s-stars.

    Minimal non-s-stars have at most 4s+5 vertices, so a family whose
    reduced members are s-stars from 4s+6 on keeps that property for
    every order the horizon reached.  An empty window is vacuously
    fine; the verdict records n_check so the caller knows how far the
    evidence goes.
    """
    table = enumerate_reduced(f, l, n_check, budget_limit=budget_limit,
                              threads=threads)
    s = 0
    while True:
        if all(is_s_star(g, s)
               for n in range(4 * s + 6, n_check + 1)
               for g in table.members[n]):
            return s
        s += 1


# ---------------------------------------------------------------------------
# experiment reports

class ExperimentReport:
    """One experiment's exact rows plus its verdicts.

    rows is a list of flat dicts with a fixed key order; counts are
    decimal strings, fractions are "p/q" strings, bit quantities are
    floats.  runtime (wall seconds) and extras (in-memory conveniences
    such as Fraction lists or certificate objects) are excluded from
    both serialized forms on purpose: artifacts must not depend on the
    clock or the process.
    """

    __slots__ = ("experiment", "params", "rows", "verdicts", "runtime",
                 "extras")

    def __init__(self, experiment, params, rows, verdicts, runtime=0.0,
                 extras=None):
        self.experiment = experiment
        self.params = dict(params)
        self.rows = [dict(r) for r in rows]
        self.verdicts = dict(verdicts)
        self.runtime = runtime
        self.extras = extras

    def to_json_obj(self):
        return {"experiment": self.experiment, "params": self.params,
                "rows": self.rows, "verdicts": self.verdicts}

    def to_csv(self) -> str:
        if not self.rows:
            return "\n"
        header = list(self.rows[0])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in self.rows:
            w.writerow([_csv_cell(r.get(k)) for k in header])
        return buf.getvalue()

    def __repr__(self):
        return (f"ExperimentReport({self.experiment!r}, "
                f"rows={len(self.rows)}, verdicts={self.verdicts})")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _labeled_weight(g):
    return math.factorial(g.n) // canonical_form(g).aut_order


def _trend_verdicts(fracs, n_max):
    """Compare the last fraction against three orders earlier."""
    lo = n_max - 3
    if lo < 1:
        return {"trend_up": None, "trend_pair": None}
    return {"trend_up": fracs[n_max] > fracs[lo], "trend_pair": [lo, n_max]}


# ---------------------------------------------------------------------------
# benchmark fraction of the clique-free family

def verify_kpr(l: int, n_max: int, *, budget_limit: int | None = None,
               threads: int = 1) -> ExperimentReport:
    """Exact fraction |H(l,0)^n| / |forb(K_{l+1})^n| for n up to n_max.

    Labeled counts on both sides; the asymptotic claim this probes says
    the fraction tends to 1, and the trend verdict honestly reports
    whether the last value beats the one three orders earlier, which at
    desk scale it may not.
    """
    if l not in (2, 3):
        raise ValidationError("the clique benchmark runs at l in {2, 3}")
    if not 4 <= n_max <= 10:
        raise ValidationError("n_max must lie in [4, 10]")
    start = time.perf_counter()
    sub = enumerate_family(HST(l, 0), n_max, budget_limit=budget_limit,
                           threads=threads, keep_members=False)
    sup = enumerate_family(Forb([complete(l + 1)]), n_max,
                           budget_limit=budget_limit, threads=threads,
                           keep_members=False)
    fracs = [None] * (n_max + 1)
    rows = []
    for n in range(1, n_max + 1):
        total, covered = sup.labeled[n], sub.labeled[n]
        assert 0 < covered <= total
        fracs[n] = Fraction(covered, total)
        rows.append({"n": n, "total": str(total), "covered": str(covered),
                     "fraction": str(fracs[n])})
    verdicts = _trend_verdicts(fracs, n_max)
    return ExperimentReport("kpr", {"l": l, "n_max": n_max}, rows, verdicts,
                            time.perf_counter() - start,
                            extras={"fractions": fracs})


# ---------------------------------------------------------------------------
# partitioned fraction of an arbitrary family

def _count_partitions(g, t_fam, l, budget, cap=2):
    """Set partitions of V(g) into at most l parts, each inducing a
    member of t_fam, counted up to part permutation and stopped at cap.

    Parts are opened in first-use order, which enumerates unordered
    partitions exactly once.  Pruning on prefixes is sound because
    t_fam is hereditary.
    """
    memo = {}

    def part_ok(mask):
        got = memo.get(mask)
        if got is None:
            got = t_fam.membership(
                induced_subgraph(g, bits(mask)), budget).member
            memo[mask] = got
        return got

    parts = []
    count = 0

    def rec(v):
        nonlocal count
        if v == g.n:
            count += 1
            return count >= cap
        bit = 1 << v
        for i in range(len(parts)):
            new = parts[i] | bit
            if part_ok(new):
                parts[i] = new
                if rec(v + 1):
                    return True
                parts[i] ^= bit
        if len(parts) < l and part_ok(bit):
            parts.append(bit)
            if rec(v + 1):
                return True
            parts.pop()
        return False

    rec(0)
    return count


def verify_partition_fraction(f, t_family, l: int, n_max: int, *,
                              eps: Fraction = Fraction(1, 2),
                              budget_limit: int | None = None,
                              threads: int = 1) -> ExperimentReport:
    """Fraction of f^n (labeled) splitting into l parts from t_family,
    plus the sub-fraction whose partition is unique up to part
    permutation and eps-balanced.

    Weights are n!/|Aut|, so the labeled fractions are exact.  The
    uniqueness counter is independent of the membership search and
    stops at two partitions.  One spot certificate per order (the
    first partitioned member in canonical order) lands in
    verdicts["spots"] for replay; rows stay flat so the CSV form is a
    plain table.
    """
    if not t_family.hereditary:
        raise ValidationError("the part family must be hereditary")
    if l < 1:
        raise ValidationError("need l >= 1 parts")
    if not 1 <= n_max <= 10:
        raise ValidationError("n_max must lie in [1, 10]")
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValidationError("eps must lie strictly between 0 and 1")
    start = time.perf_counter()
    prod = PartitionProduct((t_family,) * l)
    table = enumerate_family(f, n_max, budget_limit=budget_limit,
                             threads=threads, keep_members=True)
    fracs = [None] * (n_max + 1)
    rows = []
    spots = []
    for n in range(1, n_max + 1):
        total = table.labeled[n]
        covered = unique_balanced = 0
        spot = None
        for g in table.members[n]:
            mres = prod.membership(g, _budget(budget_limit))
            if not mres.member:
                continue
            w = _labeled_weight(g)
            covered += w
            cnt = _count_partitions(g, t_family, l, _budget(budget_limit))
            assert cnt >= 1
            if cnt == 1 and is_balanced(mres.certificate, eps):
                unique_balanced += w
            if spot is None:
                spot = {"n": n, "graph": graph6.encode(g),
                        "parts": [list(p) for p in mres.certificate.parts]}
        fracs[n] = Fraction(covered, total)
        if spot is not None:
            spots.append(spot)
        rows.append({
            "n": n, "total": str(total), "covered": str(covered),
            "fraction": str(fracs[n]),
            "unique_balanced": (str(Fraction(unique_balanced, covered))
                                if covered else None),
        })
    verdicts = _trend_verdicts(fracs, n_max)
    # one replayable certificate per order: the first partitioned member
    # in canonical enumeration order
    verdicts["spots"] = spots
    params = {"family": f.text(), "part_family": t_family.text(), "l": l,
              "n_max": n_max, "eps": str(eps)}
    return ExperimentReport("partition-fraction", params, rows, verdicts,
                            time.perf_counter() - start,
                            extras={"fractions": fracs})


# ---------------------------------------------------------------------------
# constellation coverage

def verify_constellation_cover(f, l: int, s: int, n_max: int, *,
                               budget_limit: int | None = None,
                               threads: int = 1) -> ExperimentReport:
    """Coverage of f^n (labeled) by the P(J) of every generated
    constellation at (l, s) whose family fits inside f.

    Selection uses the finite rule (P(J) is hereditary): J is kept iff
    no forbidden pattern of f is a member of P(J).  Coverage of a graph
    means membership in at least one selected P(J).
    """
    if not isinstance(f, Forb):
        raise UnsupportedOperationError(
            "coverage needs forbidden-pattern form")
    if not 1 <= n_max <= 10:
        raise ValidationError("n_max must lie in [1, 10]")
    start = time.perf_counter()
    selected = []
    for c in generate_constellations(l, s):
        if all(not is_member_PJ(k, c, budget_limit).member
               for k in f.patterns):
            selected.append(c)
    table = enumerate_family(f, n_max, budget_limit=budget_limit,
                             threads=threads, keep_members=True)
    fracs = [None] * (n_max + 1)
    rows = []
    for n in range(1, n_max + 1):
        total = table.labeled[n]
        covered = 0
        for g in table.members[n]:
            if any(is_member_PJ(g, c, budget_limit).member
                   for c in selected):
                covered += _labeled_weight(g)
        fracs[n] = Fraction(covered, total)
        rows.append({"n": n, "total": str(total), "covered": str(covered),
                     "fraction": str(fracs[n])})
    verdicts = _trend_verdicts(fracs, n_max)
    verdicts["selected"] = len(selected)
    params = {"family": f.text(), "l": l, "s": s, "n_max": n_max,
              "selected": [c.to_json_obj() for c in selected]}
    return ExperimentReport("constellation-cover", params, rows, verdicts,
                            time.perf_counter() - start,
                            extras={"fractions": fracs,
                                    "selected": tuple(selected)})


# ---------------------------------------------------------------------------
# star and constellation speed drift

def verify_star_speed(sys, l: int, n_max: int, *, n_min: int | None = None,
                      budget_limit: int | None = None,
                      threads: int = 1) -> ExperimentReport:
    """Drift of h(P(J), n) - h(H(l, 0), n) - k log2 n with k = |V(J)|.

    The speed of P(J) should exceed the benchmark by k log2 n plus a
    bounded term, so the residual over the window [n_min, n_max]
    (default: the top half) should move by less than the declared two
    bits.  k is the true core size, not a fitted slope; the drift is
    an honest measurement, not a regression.
    """
    c = sys.as_constellation() if isinstance(sys, StarSystem) else sys
    if not isinstance(c, Constellation):
        raise ValidationError("expected a star system or constellation")
    if not constellation_irreducible(c):
        raise ValidationError("speed drift needs an irreducible system")
    if l != c.l:
        raise ValidationError(f"l={l} does not match the system's {c.l}")
    cap = 12 if c.l == 1 else 10
    if not 2 <= n_max <= cap:
        raise ValidationError(f"n_max must lie in [2, {cap}] at l={c.l}")
    lo = max(1, n_max // 2 + 1) if n_min is None else n_min
    if not 1 <= lo < n_max:
        raise ValidationError("the drift window needs at least two orders")
    start = time.perf_counter()
    fam = PJFamily(c)
    tp = enumerate_family(fam, n_max, budget_limit=budget_limit,
                          threads=threads, keep_members=False)
    tb = enumerate_family(HST(l, 0), n_max, budget_limit=budget_limit,
                          threads=threads, keep_members=False)
    k = c.j.n
    rows = []
    residuals = {}
    for n in range(1, n_max + 1):
        lab, blab = tp.labeled[n], tb.labeled[n]
        # both sides keep at least one graph per order: the all-in-one-
        # crown split works for edgeless or complete depending on beta
        assert lab > 0 and blab > 0
        delta = math.log2(lab) - math.log2(blab)
        resid = delta - k * math.log2(n)
        residuals[n] = resid
        rows.append({"n": n, "labeled": str(lab), "bench_labeled": str(blab),
                     "delta_bits": delta, "residual_bits": resid})
    window = [residuals[n] for n in range(lo, n_max + 1)]
    drift = max(window) - min(window)
    verdicts = {"drift_bits": drift, "within_tolerance": drift < 2.0,
                "window": [lo, n_max], "k": k}
    params = {"system": c.to_json_obj(), "l": l, "n_max": n_max,
              "n_min": lo, "k": k}
    return ExperimentReport("star-speed", params, rows, verdicts,
                            time.perf_counter() - start)
