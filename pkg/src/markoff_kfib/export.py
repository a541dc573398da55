"""JSON and DOT serialization.

JSON output has sorted keys, compact separators and a trailing newline.
Every integer value is written as a decimal string so nothing is lost in
consumers with 53-bit numbers; only the tree bookkeeping fields ``parent``
and ``depth`` are plain JSON numbers.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Sequence

from .branches import BranchSpec
from .markoff import Triple, TreeNode

_STRUCTURAL = frozenset({"parent", "depth"})


def triple_to_json(t: Sequence[int]) -> list[str]:
    return [str(v) for v in t]


def tree_to_dict(nodes: Sequence[TreeNode]) -> dict[str, Any]:
    return {
        "nodes": [
            {"triple": triple_to_json(n.triple), "parent": n.parent, "move": n.move, "depth": n.depth}
            for n in nodes
        ]
    }


def tree_from_json(text: str) -> list[TreeNode]:
    """Inverse of ``export_json`` on a tree."""
    data = json.loads(text)
    return [
        TreeNode(Triple(*(int(v) for v in n["triple"])), n["parent"], n["move"], n["depth"])
        for n in data["nodes"]
    ]


def to_jsonable(obj: Any, key: str | None = None) -> Any:
    """Convert library values into JSON-ready structures."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if key in _STRUCTURAL else str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Triple):
        return triple_to_json(obj)
    if isinstance(obj, list) and obj and all(isinstance(n, TreeNode) for n in obj):
        return tree_to_dict(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name), f.name) for f in fields(obj)}
        if hasattr(obj, "ok"):
            out["ok"] = obj.ok
        return out
    if isinstance(obj, tuple) and hasattr(obj, "_fields"):
        return {name: to_jsonable(getattr(obj, name), name) for name in obj._fields}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, str(k)) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def export_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":")) + "\n"


def export_dot(nodes: Sequence[TreeNode], spec: BranchSpec | None = None, name: str = "mtree") -> str:
    """A ``digraph`` with one node per triple and edges labelled by the Vieta move.

    With ``spec`` the nodes of that principal branch are drawn bold.
    """
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for i, n in enumerate(nodes):
        attrs = f'label="{n.triple}"'
        if spec is not None and spec.contains(n.triple):
            attrs += ", style=bold"
        lines.append(f"  n{i} [{attrs}];")
    for i, n in enumerate(nodes):
        if n.parent is not None:
            lines.append(f'  n{n.parent} -> n{i} [label="{n.move}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
