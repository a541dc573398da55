"""The ten acceptance criteria, one test each.

Every test prints a ``criterion N PASS|FAIL`` line; the lines are repeated
in the terminal summary.  Two criteria cannot hold as stated: one printed
tree leaf is not a Markoff triple, and for k >= 4, r >= 3 two odd family
indices share a root.  Those tests report FAIL and are marked xfail only
while the failure is exactly the documented one.
"""

from __future__ import annotations

import random
import time

from markoff_kfib.branches import (
    alpha,
    alpha_consistency,
    branch_roots,
    family_m,
    family_members,
    principal_branch,
    theorem11_enumerate,
)
from markoff_kfib.markoff import descend_to_root, is_minimal, markoff_value, tree_enumerate, unique_nonminimal_a
from markoff_kfib.oracle import extend_two_fib_paths, nonminimal_consecutive, uniqueness_scan, verify_theorem11
from markoff_kfib.sequences import IDENTITIES, div3_class, fib, identity_residual, table1_residue
from conftest import DESK_BOUND, DESK_M_MAX
from drawings import DRAWINGS

NOT_DIV3 = (1, 2, 4, 5, 7, 8, 10)


def test_criterion_01_alpha(acceptance):
    start = time.perf_counter()
    failures = [
        f"alpha{kr}={alpha(*kr)}"
        for kr, want in {(4, 1): 6, (1, 3): 6, (2, 1): 2, (1, 1): 1}.items()
        if alpha(*kr) != want
    ]
    failures += [
        f"consistency({k},{r})" for k in NOT_DIV3 for r in range(1, 10, 2) if alpha_consistency(k, r) != (0, 0)
    ]
    if time.perf_counter() - start > 1:
        failures.append("slower than 1 s")
    acceptance(1, "alpha closed forms", failures)


def test_criterion_02_family_m(acceptance):
    failures = []
    for k in NOT_DIV3:
        if 9 * family_m(k, 1, "even") != k**4 + 13 * k**2 + 4:
            failures.append(f"even k={k}")
        if 9 * family_m(k, 1, "odd") != k**4 - 5 * k**2 + 4:
            failures.append(f"odd k={k}")
    spot = {(4, 1, "even"): 52, (4, 1, "odd"): 20, (1, 1, "even"): 2, (1, 1, "odd"): 0,
            (2, 1, "even"): 8, (2, 1, "odd"): 0, (1, 3, "even"): 100}
    failures += [f"family_m{key}={family_m(*key)}" for key, m in spot.items() if family_m(*key) != m]
    acceptance(2, "family m-values", failures)


def test_criterion_03_tree_drawings(acceptance):
    """Printed triples are compared literally, with no misprint correction."""
    start = time.perf_counter()
    failures = []
    for name, d in DRAWINGS.items():
        generated = {n.triple for n in tree_enumerate(d.root, max_depth=3)}
        for t in d.triples:
            if t not in generated:
                failures.append(f"{name}: {t} not generated (m={markoff_value(t)})")
        if tuple(principal_branch(d.k, d.r, d.bold_ell, len(d.bold) - 1)) != d.bold:
            failures.append(f"{name}: bold path differs")
    if time.perf_counter() - start > 1:
        failures.append("slower than 1 s")
    known = {
        "100-tree (6,8,144): (2584, 1116282, 8653418058) not generated (m=1194171672232)":
        "the printed leaf 8653418058 is not a 100-triple; the true vieta1 child is 8653417920",
    }
    acceptance(3, "tree drawing reproduction", failures, known)


def _oracle_failures(desk_enumeration, ks):
    failures = []
    for k in ks:
        report = verify_theorem11(k, DESK_M_MAX, DESK_BOUND, triples_by_m=desk_enumeration)
        failures += [f"k={k}: {mm.triple} {mm.actual}" for mm in report.mismatches]
        formula = {c.triple for c in theorem11_enumerate(k, DESK_BOUND) if c.m <= DESK_M_MAX}
        found = {c.triple for c in report.triples}
        if found != formula:
            failures.append(f"k={k}: sets differ by {sorted(found ^ formula)}")
        if k % 3 == 0 and found:
            failures.append(f"k={k}: {len(found)} qualifying triples")
    return failures


def test_criterion_04_theorem11_oracle(acceptance, desk_enumeration):
    acceptance(4, "oracle equals formula for k in 1,2,4,5", _oracle_failures(desk_enumeration, (1, 2, 4, 5)))


def test_criterion_05_div3_exclusion(acceptance, desk_enumeration):
    acceptance(5, "no qualifying triples for k in 3,6,9", _oracle_failures(desk_enumeration, (3, 6, 9)))


def test_criterion_06_pell_boundary(acceptance):
    found = nonminimal_consecutive(2, 10**3)
    failures = [] if found == [(1, 1, 1), (1, 1, 2), (1, 2, 5)] else [f"found {found}"]
    acceptance(6, "Pell boundary", failures)


def test_criterion_07_distribution(acceptance):
    failures = []
    for k, r in ((1, 3), (4, 1), (4, 3), (5, 3)):
        roots = branch_roots(k, r)
        want = r if k <= 2 else 2 * r
        if len(roots) != want:
            failures.append(f"({k},{r}): {len(roots)} roots, want {want}")
        if not all(is_minimal(br.minimal_root) for br in roots):
            failures.append(f"({k},{r}): non-minimal root")
        distinct = {br.minimal_root for br in roots}
        if len(distinct) != len(roots):
            failures.append(f"({k},{r}): {len(distinct)} distinct roots among {len(roots)}")
        for ell, t in family_members(k, r, 2 * r + 12):
            root, _ = descend_to_root(t)
            if root not in distinct:
                failures.append(f"({k},{r}) ell={ell}: {t} descends to {root}")
    known = {
        f"({k},3): 5 distinct roots among 6": "odd family indices l0 and 2r - l0 share one minimal root"
        for k in (4, 5)
    }
    acceptance(7, "principal branch distribution", failures, known)


def test_criterion_08_bounded_paths(acceptance, desk_enumeration):
    failures = []
    for k, m in ((4, 52), (4, 20), (1, 2), (1, 100), (2, 8)):
        report = extend_two_fib_paths(k, m, DESK_BOUND, 3, triples=desk_enumeration[m])
        failures += [f"({k},{m}): {mm.actual}" for mm in report.mismatches]
        if not report.paths:
            failures.append(f"({k},{m}): no long paths found")
    acceptance(8, "bounded two-k-Fibonacci paths", failures)


def _sample(rng, name, hi=60):
    if name == "vajda":
        return rng.randint(0, hi), rng.randint(0, hi), rng.randint(0, hi)
    if name == "sum":
        return rng.randint(1, hi), rng.randint(1, hi)
    if name == "simson":
        return (rng.randint(1, hi),)
    x, y = sorted((rng.randint(1, hi), rng.randint(1, hi)))
    return (x, y) if name == "docagne" else (y, x)


def test_criterion_09_identities(acceptance):
    start = time.perf_counter()
    rng = random.Random(20261016)
    failures = []
    for name in sorted(IDENTITIES):
        bad = sum(identity_residual(name, k, _sample(rng, name)) != 0 for k in (rng.randint(1, 10) for _ in range(1000)))
        if bad:
            failures.append(f"{name}: {bad}/1000 non-zero")
    for k in (1, 2, 4, 5, 7, 8):
        for r in range(12):
            direct = ((fib(k, r + 1) + (fib(k, r - 1) if r else 1)) ** 2 - 2 * (-1) ** r) % 3
            if table1_residue(k, r) != direct:
                failures.append(f"table residue ({k},{r})")
    for k in range(1, 11):
        f, g = [0, 1], [2, k % 3]
        while len(f) <= 100:
            f.append((k * f[-1] + f[-2]) % 3)
            g.append((k * g[-1] + g[-2]) % 3)
        for ell in range(101):
            if tuple(div3_class(k, ell)) != (f[ell] == 0, g[ell] == 0):
                failures.append(f"div3 ({k},{ell})")
    if time.perf_counter() - start > 5:
        failures.append("slower than 5 s")
    acceptance(9, "identity suite", failures)


def test_criterion_10_uniqueness(acceptance):
    scan = uniqueness_scan(10**4)
    failures = [] if scan.max_count <= 1 else [f"max count {scan.max_count}"]
    hits = set(scan.hits)
    for b, c in scan.hits:
        if unique_nonminimal_a(b, c) is None:
            failures.append(f"({b},{c}) counted but no a")
            break
    for c in range(1, 2001):
        for b in range(1, c + 1):
            if (b, c) not in hits and unique_nonminimal_a(b, c) is not None:
                failures.append(f"({b},{c}) missed by scan")
                break
    acceptance(10, f"uniqueness over {scan.pairs} pairs", failures)
