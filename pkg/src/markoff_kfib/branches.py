"""Principal (2,k)-Fibonacci branches.

For odd ``r`` and ``3 ∤ k`` the integer

    alpha(k, r) = ((F_k(r+1) + F_k(r-1))^2 - 2(-1)^r) / 3 = L_k(2r) / 3

makes ``(alpha, F_k(l), F_k(l + 2r))`` a Markoff m-triple whose m depends
only on the parity of ``l``, and ``vieta2`` moves ``l`` to ``l + 2r``.
The family index ``l`` relates to the centred index ``N`` by ``N = l + r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .markoff import (
    Triple,
    is_ordered,
    markoff_value,
    order_triple,
    vieta1,
    vieta2,
    vieta3,
)
from .sequences import fib, lucas


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _check_spec(k: int, r: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k % 3 == 0:
        raise ValueError(f"k must not be divisible by 3, got {k}")
    if not isinstance(r, int) or r < 1 or r % 2 == 0:
        raise ValueError(f"r must be an odd positive integer, got {r!r}")


def alpha(k: int, r: int) -> Fraction:
    """``((F_k(r+1) + F_k(r-1))^2 - 2(-1)^r) / 3`` as an exact rational."""
    if k < 1 or r < 1:
        raise ValueError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    s = fib(k, r + 1) + fib(k, r - 1)
    return Fraction(s * s - 2 * _sign(r), 3)


def alpha_int(k: int, r: int) -> int:
    value = alpha(k, r)
    if value.denominator != 1:
        raise ValueError(f"alpha({k}, {r}) = {value} is not an integer")
    return value.numerator


def alpha_consistency(k: int, r: int) -> tuple[int, int]:
    """Residuals of ``F_k(4r) = 3 alpha F_k(2r)`` and ``L_k(2r) = 3 alpha``."""
    _check_spec(k, r)
    a = alpha_int(k, r)
    return fib(k, 4 * r) - 3 * a * fib(k, 2 * r), lucas(k, 2 * r) - 3 * a


def family_m(k: int, r: int, parity: str) -> int:
    """The constant m of ``(alpha, F_k(l), F_k(l+2r))`` over ``l`` of the given parity.

    alpha^2 + (-1)^l F_k(r)^2 (F_k(r+1) + F_k(r-1))^2
    """
    _check_spec(k, r)
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    a = alpha_int(k, r)
    s = fib(k, r + 1) + fib(k, r - 1)
    sign = 1 if parity == "even" else -1
    return a * a + sign * fib(k, r) ** 2 * s * s


def admissible_ell(k: int, r: int, ell: int) -> bool:
    """Whether family index ``l`` belongs to a principal branch.

    ``l > 2r`` when k > 2; ``l >= 2r`` and even when k is 1 or 2.
    """
    if k > 2:
        return ell > 2 * r
    return ell >= 2 * r and ell % 2 == 0


def family_triple(k: int, r: int, ell: int) -> Triple:
    _check_spec(k, r)
    if ell < 0:
        raise ValueError(f"family index must be non-negative, got {ell}")
    return Triple(alpha_int(k, r), fib(k, ell), fib(k, ell + 2 * r))


@dataclass(frozen=True)
class BranchSpec:
    """A principal branch: parameters ``k``, ``r`` and its root index ``ell0``.

    ``ell0`` is the index of the minimal root's k-Fibonacci entry; the branch
    itself starts at family index ``ell0 + 2r``.
    """

    k: int
    r: int
    ell0: int

    def __post_init__(self) -> None:
        _check_spec(self.k, self.r)
        if not 1 <= self.ell0 <= 2 * self.r:
            raise ValueError(f"ell0 must lie in 1..{2 * self.r}, got {self.ell0}")
        if self.ell0 % 2 == 1 and self.k < 4:
            raise ValueError("odd ell0 needs k >= 4")

    def contains(self, t: Triple) -> bool:
        """Whether ``t`` is ``(alpha, F_k(l), F_k(l+2r))`` with ``l = ell0 + 2rj``, j >= 1."""
        a = alpha_int(self.k, self.r)
        if t[0] != a:
            return False
        ell = self.ell0 + 2 * self.r
        while True:
            b = fib(self.k, ell)
            if b > t[1]:
                return False
            if b == t[1]:
                return t[2] == fib(self.k, ell + 2 * self.r)
            ell += 2 * self.r


@dataclass(frozen=True)
class Classification:
    triple: Triple
    integer_entries: bool
    ordered: bool
    minimal: bool
    m: Fraction | int
    m_positive: bool
    # exact m equals the closed-form family value
    formula_agrees: bool


def classify(k: int, r: int, N: int) -> Classification:
    """Classify ``(alpha(k, r), F_k(N-r), F_k(N+r))``.

    Minimality is judged on the ordered rearrangement.  When the entries are
    integral the exact m is compared with ``family_m``.
    """
    if not (isinstance(k, int) and isinstance(r, int) and isinstance(N, int)):
        raise TypeError("k, r and N must be integers")
    if k < 1 or r < 1:
        raise ValueError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    if N <= r:
        raise ValueError(f"need N > r, got N={N}, r={r}")
    a = alpha(k, r)
    integer_entries = a.denominator == 1
    first: Fraction | int = a.numerator if integer_entries else a
    t = Triple(first, fib(k, N - r), fib(k, N + r))
    m = markoff_value(t)
    ordered = is_ordered(t)
    o = order_triple(t)
    minimal = o.c - 3 * o.a * o.b >= 0
    agrees = True
    if integer_entries and r % 2 == 1 and k % 3:
        agrees = m == family_m(k, r, "even" if (N - r) % 2 == 0 else "odd")
    return Classification(t, integer_entries, ordered, minimal, m, m > 0, agrees)


def principal_branch(k: int, r: int, ell0: int, count: int) -> list[Triple]:
    """``count + 1`` consecutive triples of a principal branch from family index ``ell0``.

    Each step is checked to be ``vieta2`` of the previous one.
    """
    _check_spec(k, r)
    if not admissible_ell(k, r, ell0):
        raise ValueError(f"family index {ell0} is not admissible for k={k}, r={r}")
    if count < 0:
        raise ValueError("count must be non-negative")
    out = [family_triple(k, r, ell0 + 2 * r * j) for j in range(count + 1)]
    for prev, nxt in zip(out, out[1:]):
        if vieta2(prev) != nxt:
            raise ArithmeticError(f"vieta2{prev} = {vieta2(prev)} but branch continues with {nxt}")
    return out


class BranchRoot(NamedTuple):
    ell0: int
    minimal_root: Triple
    branch_start: Triple
    # minimal_root ... branch_start, each step a vieta1 or vieta2 child
    entry: tuple[Triple, ...]


def branch_roots(k: int, r: int) -> list[BranchRoot]:
    """Minimal roots of the m-trees carrying the principal branches for ``(k, r)``.

    Even ``ell0`` in 2..2r: the root is ``ord(F_k(ell0), alpha, F_k(ell0+2r))``.
    Odd ``ell0`` in 1..2r-1 (only when k >= 4): the root is one ``vieta3`` step
    further down.  Sorted by ``ell0``.
    """
    _check_spec(k, r)
    a = alpha_int(k, r)
    out = []
    for ell0 in range(1, 2 * r + 1):
        if ell0 % 2 == 1 and k < 4:
            continue
        seed = order_triple((fib(k, ell0), a, fib(k, ell0 + 2 * r)))
        start = family_triple(k, r, ell0 + 2 * r)
        if ell0 % 2 == 0:
            entry = (seed, start)
        else:
            entry = (vieta3(seed), seed, start)
        out.append(BranchRoot(ell0, entry[0], start, entry))
    return out


def is_tree_step(parent: Triple, child: Triple) -> bool:
    return child in (vieta1(parent), vieta2(parent))


def theorem11_enumerate(k: int, bound: int) -> list[Classification]:
    """Every ``(alpha, F_k(N-r), F_k(N+r))`` with odd r, N > 3r and largest entry <= bound.

    For k in {1, 2} only odd N qualify.  Empty when 3 | k.  Sorted by (r, N).
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k % 3 == 0:
        return []
    out = []
    step = 2 if k <= 2 else 1
    r = 1
    while True:
        N = 3 * r + step
        # the smallest admissible c grows with r, so the first miss ends the scan
        if fib(k, N + r) > bound:
            break
        while fib(k, N + r) <= bound:
            out.append(classify(k, r, N))
            N += step
        r += 2
    return out


def family_members(k: int, r: int, ell_max: int) -> list[tuple[int, Triple]]:
    """Admissible ``(l, family_triple)`` pairs with ``l <= ell_max``."""
    _check_spec(k, r)
    return [(ell, family_triple(k, r, ell)) for ell in range(1, ell_max + 1) if admissible_ell(k, r, ell)]


def principal_triples(k: int, m: int, bound: int) -> set[Triple]:
    """All principal-branch triples with Markoff value ``m`` and entries <= bound."""
    if k % 3 == 0:
        return set()
    out: set[Triple] = set()
    r = 1
    # l >= 2r, so c >= F_k(4r)
    while fib(k, 4 * r) <= bound:
        ell = 2 * r
        while fib(k, ell + 2 * r) <= bound:
            if admissible_ell(k, r, ell):
                t = family_triple(k, r, ell)
                if markoff_value(t) == m:
                    out.add(t)
            ell += 1
        r += 2
    return out
