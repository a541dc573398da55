"""k-Fibonacci and k-Lucas numbers, inverse lookup and the identity corpus.

    F_k(0) = 0, F_k(1) = 1, F_k(n) = k F_k(n-1) + F_k(n-2)
    L_k(0) = 2, L_k(1) = k, L_k(n) = k L_k(n-1) + L_k(n-2)

Everything is exact Python ``int`` arithmetic.  Negative indices are
rejected; no operation here needs ``F_k(-n)``.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Callable, NamedTuple

# Below this index the plain recurrence beats fast doubling.
FAST_DOUBLING_THRESHOLD = 64


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _check_index(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {n!r}")


def fib_iterative(k: int, n: int) -> int:
    _check_k(k)
    _check_index(n)
    prev, cur = 0, 1
    if n == 0:
        return 0
    for _ in range(n - 1):
        prev, cur = cur, k * cur + prev
    return cur


def fib_pair(k: int, n: int) -> tuple[int, int]:
    """Return ``(F_k(n), F_k(n+1))`` by fast doubling.

    F(2j)   = F(j) * (2 F(j+1) - k F(j))
    F(2j+1) = F(j)^2 + F(j+1)^2
    """
    _check_k(k)
    _check_index(n)
    f, g = 0, 1
    for bit in bin(n)[2:]:
        f, g = f * (2 * g - k * f), f * f + g * g
        if bit == "1":
            f, g = g, k * g + f
    return f, g


def fib(k: int, n: int) -> int:
    """The ``n``-th k-Fibonacci number F_k(n)."""
    if n > FAST_DOUBLING_THRESHOLD:
        return fib_pair(k, n)[0]
    return fib_iterative(k, n)


def lucas(k: int, n: int) -> int:
    """The ``n``-th k-Lucas number, via L_k(n) = 2 F_k(n+1) - k F_k(n)."""
    _check_k(k)
    _check_index(n)
    if n > FAST_DOUBLING_THRESHOLD:
        f, g = fib_pair(k, n)
    else:
        f, g = fib_iterative(k, n), fib_iterative(k, n + 1)
    return 2 * g - k * f


def fib_list(k: int, n_max: int) -> list[int]:
    """``[F_k(0), ..., F_k(n_max)]``."""
    _check_k(k)
    _check_index(n_max, "n_max")
    out = [0, 1]
    while len(out) <= n_max:
        out.append(k * out[-1] + out[-2])
    return out[: n_max + 1]


def lucas_list(k: int, n_max: int) -> list[int]:
    _check_k(k)
    _check_index(n_max, "n_max")
    out = [2, k]
    while len(out) <= n_max:
        out.append(k * out[-1] + out[-2])
    return out[: n_max + 1]


def fib_upto(k: int, bound: int) -> list[int]:
    """All F_k(n) with F_k(n) <= bound, in index order starting at n = 0."""
    _check_k(k)
    out = [0, 1]
    while k * out[-1] + out[-2] <= bound:
        out.append(k * out[-1] + out[-2])
    return [v for v in out if v <= bound]


def fib_index_map(k: int, bound: int) -> dict[int, int]:
    """Map each k-Fibonacci value <= bound to its smallest index."""
    index: dict[int, int] = {}
    for n, v in enumerate(fib_upto(k, bound)):
        index.setdefault(v, n)
    return index


def fib_index_of(k: int, v: int) -> int | None:
    """Smallest ``n`` with F_k(n) == v, or ``None``.

    Doubles an index bracket, then bisects; the sequence is non-decreasing
    in n so the search is exact.
    """
    _check_k(k)
    if not isinstance(v, int) or v < 0:
        return None
    if v <= 1:
        return v
    hi = 2
    while fib(k, hi) < v:
        hi *= 2
    lo = hi // 2
    # F_k is strictly increasing on [2, inf) and F_k(1) <= F_k(2)
    n = bisect_left(range(lo, hi + 1), v, key=lambda i: fib(k, i)) + lo
    return n if fib(k, n) == v else None


# --- identities ---------------------------------------------------------------


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _vajda(k: int, n: int, a: int, b: int) -> int:
    F = lambda i: fib(k, i)  # noqa: E731
    return F(n + a) * F(n + b) - F(n) * F(n + a + b) - _sign(n) * F(a) * F(b)


def _sum(k: int, a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("sum identity needs a, b >= 1")
    F = lambda i: fib(k, i)  # noqa: E731
    return F(a + b) - (F(a + 1) * F(b) + F(a) * F(b - 1))


def _docagne(k: int, a: int, b: int) -> int:
    if not 1 <= a <= b:
        raise ValueError(f"d'Ocagne identity needs 1 <= a <= b, got a={a}, b={b}")
    F = lambda i: fib(k, i)  # noqa: E731
    return _sign(a) * F(b - a) - (F(b) * F(a + 1) - F(b + 1) * F(a))


def _catalan(k: int, n: int, r: int) -> int:
    if not 1 <= r <= n:
        raise ValueError(f"Catalan identity needs 1 <= r <= n, got n={n}, r={r}")
    F = lambda i: fib(k, i)  # noqa: E731
    return F(n) ** 2 - (F(n + r) * F(n - r) + _sign(n - r) * F(r) ** 2)


def _simson(k: int, n: int) -> int:
    if n < 1:
        raise ValueError(f"Simson identity needs n >= 1, got n={n}")
    F = lambda i: fib(k, i)  # noqa: E731
    return F(n) ** 2 - (F(n + 1) * F(n - 1) - _sign(n))


def _fib_lucas(k: int, a: int, b: int) -> int:
    if not 1 <= b <= a:
        raise ValueError(f"Fibonacci-Lucas identity needs 1 <= b <= a, got a={a}, b={b}")
    return fib(k, a + b) - (fib(k, a) * lucas(k, b) - _sign(b) * fib(k, a - b))


IDENTITIES: dict[str, tuple[int, Callable[..., int]]] = {
    "vajda": (3, _vajda),
    "sum": (2, _sum),
    "docagne": (2, _docagne),
    "catalan": (2, _catalan),
    "simson": (1, _simson),
    "fib_lucas": (2, _fib_lucas),
}


def identity_residual(name: str, k: int, params: tuple[int, ...]) -> int:
    """LHS - RHS of a named identity; zero whenever the identity holds.

    Parameter tuples, in order:

    ========== =========== ==================================================
    vajda      (n, a, b)   F(n+a)F(n+b) - F(n)F(n+a+b) = (-1)^n F(a)F(b)
    sum        (a, b)      F(a+b) = F(a+1)F(b) + F(a)F(b-1)
    docagne    (a, b)      (-1)^a F(b-a) = F(b)F(a+1) - F(b+1)F(a), a <= b
    catalan    (n, r)      F(n)^2 = F(n+r)F(n-r) + (-1)^(n-r) F(r)^2
    simson     (n,)        F(n)^2 = F(n+1)F(n-1) - (-1)^n
    fib_lucas  (a, b)      F(a+b) = F(a)L(b) - (-1)^b F(a-b), a >= b
    ========== =========== ==================================================
    """
    try:
        arity, func = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}") from None
    _check_k(k)
    params = tuple(params)
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameters, got {len(params)}")
    for p in params:
        _check_index(p, "identity parameter")
    return func(k, *params)


# --- inequalities and residues ------------------------------------------------


class ThresholdResult(NamedTuple):
    holds: bool
    equality: bool


def product_threshold(k: int, a: int, b: int, c: int) -> ThresholdResult:
    """Evaluate ``F_k(c) <= 3 F_k(a) F_k(b)`` exactly."""
    _check_k(k)
    if not 1 <= a <= b <= c:
        raise ValueError(f"need 1 <= a <= b <= c, got ({a}, {b}, {c})")
    lhs = fib(k, c)
    rhs = 3 * fib(k, a) * fib(k, b)
    return ThresholdResult(lhs <= rhs, lhs == rhs)


class Div3Class(NamedTuple):
    fib_div3: bool
    lucas_div3: bool


def div3_class(k: int, ell: int) -> Div3Class:
    return Div3Class(fib(k, ell) % 3 == 0, lucas(k, ell) % 3 == 0)


def table1_residue(k: int, r: int) -> int:
    """Residue of ``(F_k(r+1) + F_k(r-1))^2 - 2(-1)^r`` modulo 3, for 3 not dividing k.

    F_k(r+1) + F_k(r-1) is L_k(r), which keeps r = 0 free of negative indices.
    """
    _check_k(k)
    _check_index(r, "r")
    if k % 3 == 0:
        raise ValueError(f"k must not be divisible by 3, got {k}")
    return (lucas(k, r) ** 2 - 2 * _sign(r)) % 3
