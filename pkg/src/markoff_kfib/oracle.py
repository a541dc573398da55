"""Brute-force enumeration of Markoff m-triples and the checks built on it.

The enumerator never consults the branch formulas: for each pair ``a <= b`` it
solves ``c^2 - 3ab c + (a^2 + b^2 - m) = 0`` through an exact integer square
root of the discriminant.  Everything else in this module compares that
ground truth against the constructive side in :mod:`markoff_kfib.branches`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .branches import (
    admissible_ell,
    branch_roots,
    family_triple,
    principal_triples,
    theorem11_enumerate,
)
from .markoff import (
    Triple,
    descend_to_root,
    is_minimal,
    markoff_value,
    order_triple,
    phi_gap,
    vieta1,
    vieta2,
    vieta3,
)
from .sequences import fib, fib_index_map, fib_index_of, fib_list

# --- enumeration --------------------------------------------------------------


def default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def _scan(a_values: Sequence[int], m_min: int, m_max: int, bound: int) -> list[tuple[int, Triple]]:
    """All ``(m, (a, b, c))`` with ``a`` from ``a_values``, ``a <= b <= c <= bound``."""
    out = []
    for a in a_values:
        b = a
        while True:
            ab3 = 3 * a * b
            n0 = 9 * a * a * b * b - 4 * a * a - 4 * b * b
            lo = n0 + 4 * m_min
            hi = n0 + 4 * m_max
            s_lo = isqrt(lo) if lo > 0 else 0
            # the larger root grows with b, so once it leaves the bound for the
            # smallest m it stays out; (1, 1) is the only pair whose smaller
            # root can also be >= b, and it is scanned before any break
            if (ab3 + s_lo) // 2 > bound and b > 1:
                break
            if s_lo * s_lo < lo:
                s_lo += 1
            if hi >= 0:
                s_hi = isqrt(hi)
                s = s_lo + ((s_lo ^ ab3) & 1)
                while s <= s_hi:
                    m = (s * s - n0) // 4
                    big = (ab3 + s) // 2
                    if b <= big <= bound:
                        out.append((m, Triple(a, b, big)))
                    small = (ab3 - s) // 2
                    if s and b <= small <= bound:
                        out.append((m, Triple(a, b, small)))
                    s += 2
            b += 1
    return out


def enumerate_markoff_range(
    m_min: int,
    m_max: int,
    bound: int,
    workers: int | None = None,
) -> dict[int, list[Triple]]:
    """Every ordered m-triple with ``m_min <= m <= m_max`` and ``c <= bound``.

    Returns ``{m: sorted triples}`` with an entry (possibly empty) for each m.
    ``workers > 1`` splits the ``a`` range round-robin over processes; the
    merged result is sorted, so it does not depend on the worker count.
    """
    if m_min < 0 or m_max < m_min:
        raise ValueError(f"need 0 <= m_min <= m_max, got {m_min}, {m_max}")
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    # c >= 3ab/2 >= 3a^2/2 for the larger root
    a_max = isqrt(2 * bound // 3) + 1
    a_all = range(1, a_max + 1)
    if workers == 1:
        found = _scan(a_all, m_min, m_max, bound)
    else:
        chunks = [a_all[i::workers] for i in range(workers)]
        found = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan, chunks, [m_min] * workers, [m_max] * workers, [bound] * workers):
                found.extend(part)
    by_m: dict[int, set[Triple]] = {m: set() for m in range(m_min, m_max + 1)}
    for m, t in found:
        by_m[m].add(t)
    return {m: sorted(ts) for m, ts in by_m.items()}


def enumerate_markoff(m: int, bound: int, workers: int | None = None) -> list[Triple]:
    """Every ordered Markoff m-triple with largest component <= bound, sorted."""
    return enumerate_markoff_range(m, m, bound, workers)[m]


def naive_markoff(m: int, bound: int) -> list[Triple]:
    """Reference triple loop; only for small bounds."""
    out = []
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            for c in range(b, bound + 1):
                if a * a + b * b + c * c - 3 * a * b * c == m:
                    out.append(Triple(a, b, c))
    return out


# --- classification -----------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedTriple:
    triple: Triple
    m: int
    minimal: bool
    phi: int
    # k-Fibonacci index of each component, None when it is not one
    fib_indices: tuple[int | None, int | None, int | None]

    @property
    def fib_count(self) -> int:
        return sum(i is not None for i in self.fib_indices)


def classify_triple(k: int, t: Iterable[int]) -> ClassifiedTriple:
    t = order_triple(t)
    idx = (fib_index_of(k, t.a), fib_index_of(k, t.b), fib_index_of(k, t.c))
    return ClassifiedTriple(t, markoff_value(t), is_minimal(t), phi_gap(t), idx)


def _index_lookup(k: int, bound: int):
    index = fib_index_map(k, bound)

    def lookup(v: int) -> int | None:
        return index.get(v) if v <= bound else fib_index_of(k, v)

    return lookup


def two_fib_filter(k: int, triples: Iterable[Iterable[int]]) -> list[ClassifiedTriple]:
    """Annotate triples with their k-Fibonacci components; keep those with at least two."""
    triples = [order_triple(t) for t in triples]
    top = max((t.c for t in triples), default=0)
    lookup = _index_lookup(k, top)
    out = []
    for t in triples:
        idx = (lookup(t.a), lookup(t.b), lookup(t.c))
        if sum(i is not None for i in idx) >= 2:
            out.append(ClassifiedTriple(t, markoff_value(t), is_minimal(t), phi_gap(t), idx))
    return out


# --- reports ------------------------------------------------------------------


class Mismatch(NamedTuple):
    triple: Triple
    expected: str
    actual: str


@dataclass
class SearchReport:
    check: str
    k: int
    m: int | None
    bound: int
    triples: list[ClassifiedTriple] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)
    # principal-branch segments reached by long paths (path checks only)
    paths: list[list[Triple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


# --- non-minimal triples with k-Fibonacci b, c --------------------------------


def verify_theorem11(
    k: int,
    m_max: int,
    bound: int,
    workers: int | None = None,
    triples_by_m: dict[int, list[Triple]] | None = None,
) -> SearchReport:
    """Compare oracle and formula on non-minimal triples whose b and c are k-Fibonacci.

    The oracle side keeps every ordered non-minimal m-triple, ``1 <= m <= m_max``,
    ``c <= bound``, with b and c both k-Fibonacci values.  The formula side is
    ``theorem11_enumerate(k, bound)`` restricted to the same m range.  Each
    triple present on only one side, or with a differing m, is a mismatch.
    ``triples_by_m`` lets several k share one enumeration.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if triples_by_m is None:
        triples_by_m = enumerate_markoff_range(1, m_max, bound, workers)
    lookup = _index_lookup(k, bound)
    found: dict[Triple, ClassifiedTriple] = {}
    for m in range(1, m_max + 1):
        for t in triples_by_m.get(m, []):
            if t.c > bound or t.c >= 3 * t.a * t.b:
                continue
            ib, ic = lookup(t.b), lookup(t.c)
            if ib is None or ic is None:
                continue
            found[t] = ClassifiedTriple(t, m, False, t.c - 3 * t.a * t.b, (lookup(t.a), ib, ic))

    predicted: dict[Triple, int] = {}
    for cl in theorem11_enumerate(k, bound):
        if 1 <= cl.m <= m_max:
            predicted[Triple(*cl.triple)] = cl.m

    mismatches = []
    for t in sorted(found.keys() - predicted.keys()):
        mismatches.append(Mismatch(t, "absent (not of the formula form)", f"oracle found m={found[t].m}"))
    for t in sorted(predicted.keys() - found.keys()):
        mismatches.append(Mismatch(t, f"formula triple with m={predicted[t]}", "missing from oracle"))
    for t in sorted(found.keys() & predicted.keys()):
        if found[t].m != predicted[t]:
            mismatches.append(Mismatch(t, f"m={predicted[t]}", f"m={found[t].m}"))
    return SearchReport("theorem11", k, None, bound, [found[t] for t in sorted(found)], mismatches)


def nonminimal_consecutive(k: int, bound: int, m_min: int = 0) -> list[Triple]:
    """Ordered non-minimal ``(a, F_k(n), F_k(n+d))``, d in {0, 1}, n >= 1, with m >= m_min.

    All components are at most ``bound``.  ``d = 0`` admits repeated values
    such as ``(1, 1, 1)``.
    """
    seq = fib_list(k, 2)
    while seq[-1] <= bound:
        seq.append(k * seq[-1] + seq[-2])
    out = set()
    for n in range(1, len(seq) - 1):
        b = seq[n]
        for c in (seq[n], seq[n + 1]):
            if c > bound or c < b:
                continue
            for a in range(1, b + 1):
                t = Triple(a, b, c)
                if c < 3 * a * b and markoff_value(t) >= m_min:
                    out.add(t)
    return sorted(out)


# --- distribution of the principal branches -----------------------------------


def verify_distribution(k: int, r: int, ell_max: int, depth: int = 1000) -> SearchReport:
    """Check that each admissible family triple sits on exactly one principal branch.

    For every admissible ``l <= ell_max`` the family triple must be reached by
    ``vieta2`` from exactly one ``branch_start`` (the one with ``ell0 = l mod 2r``)
    and descend, within ``depth`` steps, to that entry's minimal root.  For
    k in {1, 2} the member ``l = 2r`` is itself the ``ell0 = 2r`` root.
    """
    roots = branch_roots(k, r)
    by_ell0 = {br.ell0: br for br in roots}
    members = []
    mismatches = []
    for ell in range(1, ell_max + 1):
        if not admissible_ell(k, r, ell):
            continue
        t = family_triple(k, r, ell)
        members.append(classify_triple(k, t))
        ell0 = (ell - 1) % (2 * r) + 1
        expected = by_ell0.get(ell0)
        if expected is None:
            mismatches.append(Mismatch(t, f"a root with ell0={ell0}", "none"))
            continue
        if ell == ell0:
            if order_triple(t) != expected.minimal_root:
                mismatches.append(Mismatch(t, f"root {expected.minimal_root}", "different triple"))
            continue
        hits = []
        for br in roots:
            x = br.branch_start
            while x.c < t.c:
                x = vieta2(x)
            if x == t:
                hits.append(br.ell0)
        if hits != [ell0]:
            mismatches.append(Mismatch(t, f"reached from ell0={ell0} only", f"reached from {hits}"))
        root, _ = descend_to_root(order_triple(t), depth)
        if root != expected.minimal_root:
            mismatches.append(Mismatch(t, f"descends to {expected.minimal_root}", f"descends to {root}"))
    return SearchReport("distribution", k, None, 0, members, mismatches)


# --- paths with two k-Fibonacci components ------------------------------------


def extend_two_fib_paths(
    k: int,
    m: int,
    bound: int,
    min_report_len: int = 3,
    triples: Sequence[Triple] | None = None,
    workers: int | None = None,
) -> SearchReport:
    """Bounded check that long two-k-Fibonacci paths end inside principal branches.

    Builds the forest of in-bound m-triples with at least two k-Fibonacci
    components, linked by ``vieta1``/``vieta2``, and walks every maximal
    root-to-leaf path.  A path whose leaf has such a child beyond ``bound``
    may continue forever.  When it has at least ``min_report_len`` nodes its
    leaf must be a principal-branch triple, otherwise it is a mismatch.
    Paths that stop inside the bound are finite and are not reported.
    ``paths`` lists, for each accepted long path, its final run of
    principal triples joined by ``vieta2``.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    if min_report_len < 1:
        raise ValueError("min_report_len must be positive")
    if triples is None:
        triples = enumerate_markoff(m, bound, workers)
    lookup = _index_lookup(k, bound)

    def fib_count(t: Triple) -> int:
        return sum(lookup(v) is not None for v in t)

    good = {t: fib_count(t) for t in triples if t.c <= bound}
    good = {t for t, n in good.items() if n >= 2}
    principal = principal_triples(k, m, bound)
    mismatches = [Mismatch(t, "enumerated by the oracle", "missing") for t in sorted(principal - set(triples))]

    children: dict[Triple, list[Triple]] = {}
    starts = []
    for t in sorted(good):
        kids = []
        for c in dict.fromkeys((vieta1(t), vieta2(t))):
            if c in good:
                kids.append(c)
        children[t] = kids
        if is_minimal(t) or vieta3(t) not in good:
            starts.append(t)

    def open_ended(leaf: Triple) -> bool:
        return any(c.c > bound and fib_count(c) >= 2 for c in (vieta1(leaf), vieta2(leaf)))

    tails = []
    stack = [[s] for s in starts]
    while stack:
        path = stack.pop()
        kids = children[path[-1]]
        if kids:
            stack.extend(path + [c] for c in kids)
            continue
        if len(path) < min_report_len or not open_ended(path[-1]):
            continue
        if path[-1] not in principal:
            mismatches.append(
                Mismatch(path[-1], "path ends on a principal branch", " -> ".join(map(str, path)))
            )
            continue
        i = len(path) - 1
        while i > 0 and path[i - 1] in principal and vieta2(path[i - 1]) == path[i]:
            i -= 1
        tails.append(path[i:])

    tails.sort()
    report = SearchReport("paths", k, m, bound, two_fib_filter(k, sorted(good)), mismatches, tails)
    return report


# --- uniqueness of the non-minimal completion ---------------------------------


def _isqrt_array(d: np.ndarray) -> np.ndarray:
    s = np.floor(np.sqrt(d.astype(np.float64))).astype(np.int64)
    for _ in range(2):
        s -= (s * s > d).astype(np.int64)
        s += ((s + 1) * (s + 1) <= d).astype(np.int64)
    return s


def count_completions(b: int, c: np.ndarray) -> np.ndarray:
    """Number of ``a`` with ``c/(3b) < a <= b`` and ``M(a, b, c) > 0``, for each c.

    M(x, b, c) > 0 for ``x <= b`` exactly when ``x`` is below the smaller root
    ``(3bc - sqrt(D))/2``, ``D = 9b^2c^2 - 4b^2 - 4c^2``, i.e. when
    ``x <= (3bc - isqrt(D) - 1) // 2``.  Exact for ``b, c`` up to about 3e4.
    """
    c = np.asarray(c, dtype=np.int64)
    if b > 30000 or (c.size and int(c.max()) > 30000):
        raise ValueError("count_completions is exact only for components <= 30000")
    p = 3 * b * c
    s = _isqrt_array(p * p - 4 * b * b - 4 * c * c)
    top = np.minimum(b, (p - s - 1) // 2)
    return np.maximum(0, top - c // (3 * b))


@dataclass(frozen=True)
class UniquenessScan:
    c_max: int
    pairs: int
    max_count: int
    # (b, c) pairs with exactly one admissible a
    hits: list[tuple[int, int]]


def uniqueness_scan(c_max: int) -> UniquenessScan:
    """Count admissible non-minimal completions for every ``1 <= b <= c <= c_max``."""
    pairs = 0
    max_count = 0
    hits: list[tuple[int, int]] = []
    for b in range(1, c_max + 1):
        c = np.arange(b, c_max + 1, dtype=np.int64)
        counts = count_completions(b, c)
        pairs += c.size
        if counts.size:
            max_count = max(max_count, int(counts.max()))
        hits.extend((b, int(v)) for v in c[counts > 0])
    return UniquenessScan(c_max, pairs, max_count, hits)


# --- window checks on alternating paths ---------------------------------------


class PathState(NamedTuple):
    """The triple ``(F_k(u), x, F_k(v))`` of an alternating path."""

    u: int
    v: int
    x: int


def check_path_window(k: int, path: Sequence[PathState]) -> list[bool]:
    """Per-state flags for the open windows and the index recurrence.

    Consecutive states must satisfy ``x' = 3 F_k(u) F_k(v) - x``, otherwise
    ``ValueError``.  For k in {1, 2} a state passes when
    ``F(v-u-1) < x < F(v-u)`` and, if a successor exists,
    ``F(u+v) < x' < F(u+v+1)`` and ``v'-u'-1 = u+v``.  For k >= 3 every
    index is shifted by one: ``F(v-u) < x < F(v-u+1)``,
    ``F(u+v-1) < x' < F(u+v)`` and ``v'-u' = u+v-1``.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    shift = 0 if k <= 2 else 1

    def inside(x: int, lo_index: int) -> bool:
        if lo_index < 0:
            return False
        return fib(k, lo_index) < x < fib(k, lo_index + 1)

    flags = []
    for i, st in enumerate(path):
        if st.v < st.u:
            raise ValueError(f"state {i} has v < u: {st}")
        ok = inside(st.x, st.v - st.u - 1 + shift)
        if i + 1 < len(path):
            nxt = path[i + 1]
            if nxt.x != 3 * fib(k, st.u) * fib(k, st.v) - st.x:
                raise ValueError(f"states {i} and {i + 1} are not consecutive: {st} -> {nxt}")
            ok = ok and inside(nxt.x, st.u + st.v - shift)
            ok = ok and nxt.v - nxt.u - 1 + 2 * shift == st.u + st.v
        flags.append(ok)
    return flags


def path_states(k: int, triples: Sequence[Iterable[int]]) -> list[PathState]:
    """Read the states off an alternating path ``(F(u), x, F(v)), (F(u), F(v), x'), ...``.

    Only the triples at even positions carry a state; their first and last
    components must be k-Fibonacci values.
    """
    out = []
    for i, t in enumerate(triples):
        if i % 2:
            continue
        a, x, c = t
        u, v = fib_index_of(k, a), fib_index_of(k, c)
        if u is None or v is None:
            raise ValueError(f"triple {i} is not of the form (F(u), x, F(v)): {tuple(t)}")
        out.append(PathState(u, v, x))
    return out
