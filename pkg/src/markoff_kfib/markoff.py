"""The Markoff form, Vieta moves, minimality, branches and m-trees.

A triple ``(a, b, c)`` is a Markoff m-triple when
``a^2 + b^2 + c^2 - 3abc == m``.  The three Vieta moves preserve that value;
``vieta1``/``vieta2`` climb a tree and ``vieta3`` walks back towards the
minimal root.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import NamedTuple


class Triple(NamedTuple):
    a: int
    b: int
    c: int

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


class NonPositiveComponentError(ValueError):
    """``vieta3`` would produce ``3ab - c <= 0``, i.e. the input is minimal."""


class DescentBudgetExceeded(RuntimeError):
    pass


MOVE_ROOT = "root"
MOVE_V1 = "v1"
MOVE_V2 = "v2"
MOVE_DEDUP = "v1=v2(dedup)"


def as_triple(t: Iterable[int]) -> Triple:
    a, b, c = t
    return Triple(a, b, c)


def markoff_value(t: Iterable[int]) -> int:
    a, b, c = t
    return a * a + b * b + c * c - 3 * a * b * c


def order_triple(t: Iterable[int]) -> Triple:
    return Triple(*sorted(t))


def is_ordered(t: Iterable[int]) -> bool:
    a, b, c = t
    return a <= b <= c


def vieta1(t: Iterable[int]) -> Triple:
    a, b, c = t
    return Triple(b, c, 3 * b * c - a)


def vieta2(t: Iterable[int]) -> Triple:
    a, b, c = t
    return Triple(a, c, 3 * a * c - b)


def vieta3(t: Iterable[int]) -> Triple:
    """``ord(3ab - c, a, b)``; raises on minimal input."""
    a, b, c = t
    x = 3 * a * b - c
    if x <= 0:
        raise NonPositiveComponentError(f"3ab - c = {x} for {tuple(t)}")
    return order_triple((x, a, b))


def _require_ordered(t: Triple) -> None:
    if not is_ordered(t):
        raise ValueError(f"triple {tuple(t)} is not ordered")


def phi_gap(t: Iterable[int]) -> int:
    """``c - 3ab`` of an ordered triple; non-negative exactly on minimal triples."""
    t = as_triple(t)
    _require_ordered(t)
    return t.c - 3 * t.a * t.b


def is_minimal(t: Iterable[int]) -> bool:
    return phi_gap(t) >= 0


def unique_nonminimal_a(b: int, c: int) -> tuple[int, int] | None:
    """The only ``a <= b`` making ``(a, b, c)`` a non-minimal m-triple with m > 0.

    Returns ``(a, m)`` or ``None``.  Non-minimality means ``a > c/(3b)``;
    M(x, b, c) is decreasing for x <= c, so if any admissible a exists it is
    the first integer above the threshold.
    """
    if not 1 <= b <= c:
        raise ValueError(f"need 1 <= b <= c, got b={b}, c={c}")
    a = c // (3 * b) + 1
    if a > b:
        return None
    m = a * a + b * b + c * c - 3 * a * b * c
    if m <= 0:
        return None
    return a, m


def branch(root: Iterable[int], count: int) -> list[Triple]:
    """``[root, v2(root), ..., v2^count(root)]``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    out = [as_triple(root)]
    for _ in range(count):
        out.append(vieta2(out[-1]))
    return out


def descend_to_root(t: Iterable[int], max_steps: int = 1000) -> tuple[Triple, int]:
    """Apply ``vieta3`` until the triple is minimal; return it and the step count."""
    t = as_triple(t)
    _require_ordered(t)
    if t.a <= 0:
        raise ValueError(f"descent needs positive components, got {tuple(t)}")
    steps = 0
    while not is_minimal(t):
        if steps >= max_steps:
            raise DescentBudgetExceeded(f"no minimal triple within {max_steps} steps of {t}")
        t = vieta3(t)
        steps += 1
    return t, steps


def descent_path(t: Iterable[int], max_steps: int = 1000) -> list[Triple]:
    """The triples visited by ``descend_to_root``, starting with ``t``."""
    t = as_triple(t)
    _, steps = descend_to_root(t, max_steps)
    path = [t]
    for _ in range(steps):
        path.append(vieta3(path[-1]))
    return path


@dataclass(frozen=True)
class TreeNode:
    triple: Triple
    parent: int | None
    move: str
    depth: int


def tree_children(t: Triple) -> list[tuple[str, Triple]]:
    c1, c2 = vieta1(t), vieta2(t)
    if c1 == c2:
        return [(MOVE_DEDUP, c1)]
    return [(MOVE_V1, c1), (MOVE_V2, c2)]


def tree_enumerate(
    root: Iterable[int],
    max_component: int | None = None,
    max_depth: int = 3,
) -> list[TreeNode]:
    """Breadth-first fragment of the m-tree below a minimal root.

    Nodes are listed depth by depth, lexicographically within a depth;
    ``parent`` indexes into the returned list.  Children whose largest
    component exceeds ``max_component`` are pruned.
    """
    root = as_triple(root)
    if not is_ordered(root) or not is_minimal(root):
        raise ValueError(f"tree root must be an ordered minimal triple, got {tuple(root)}")
    nodes = [TreeNode(root, None, MOVE_ROOT, 0)]
    level = [0]
    for depth in range(1, max_depth + 1):
        pending: list[tuple[Triple, int, str]] = []
        for idx in level:
            for move, child in tree_children(nodes[idx].triple):
                if max_component is not None and child.c > max_component:
                    continue
                pending.append((child, idx, move))
        pending.sort()
        level = []
        for child, parent, move in pending:
            level.append(len(nodes))
            nodes.append(TreeNode(child, parent, move, depth))
        if not level:
            break
    return nodes
