"""Tree-proof certificates: data structure, JSON serialization, verifier.

A certificate encodes a winning adversary strategy: each internal node says
which item is sent from the recorded bin loads, with one child per distinct
placement outcome; every leaf must have some bin at the target load or
above. The verifier re-checks all of that using only the core, combinatorics
and feasibility modules, so it cannot inherit a bug from the search or the
pruning table.

Verification failure codes:

* ``root-shape``        root loads are not the all-zero m-vector
* ``malformed-loads``   a node's loads are not a valid packing of length m
* ``illegal-item``      an item is not a legal extension of the path's instance
* ``load-mismatch``     a child's loads are not parent loads + item in one bin
* ``missing-placement`` some bin's placement outcome has no child
* ``leaf-below-target`` a leaf's maximum load is below t
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .combinatorics import CountTable
from .core import GameParams, Packing, is_sorted_non_increasing, place
from .feasibility import FeasibleFront, empty_front, extend_front, largest_extension

FORMAT_VERSION = 1


class CertificateParseError(ValueError):
    """Malformed certificate file; message carries the offending path."""


@dataclass(frozen=True)
class ProofNode:
    """Internal node (item is set) or leaf (item is None)."""

    loads: Packing
    item: int | None = None
    children: tuple["ProofNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.item is None


@dataclass(frozen=True)
class ProofTree:
    params: GameParams
    root: ProofNode


@dataclass
class VerifyReport:
    ok: bool
    code: str | None = None
    message: str = ""
    nodes: int = 0
    leaves: int = 0
    depth: int = 0
    value: int | None = None  # min over leaves of max load
    items: set = field(default_factory=set)

    def __bool__(self) -> bool:
        return self.ok


# -- serialization ---------------------------------------------------------


def serialize(tree: ProofTree) -> bytes:
    def node_obj(node: ProofNode) -> dict:
        if node.is_leaf:
            return {"loads": list(node.loads)}
        return {
            "loads": list(node.loads),
            "item": node.item,
            "children": [node_obj(c) for c in node.children],
        }

    obj = {
        "m": tree.params.m,
        "g": tree.params.g,
        "t": tree.params.t,
        "format_version": FORMAT_VERSION,
        "root": node_obj(tree.root),
    }
    return json.dumps(obj, indent=1).encode()


def deserialize(data: bytes) -> ProofTree:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertificateParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CertificateParseError("top level: expected an object")
    for key in ("m", "g", "t"):
        if not isinstance(obj.get(key), int):
            raise CertificateParseError(f"header.{key}: expected an integer")
    if obj.get("format_version") != FORMAT_VERSION:
        raise CertificateParseError(
            f"header.format_version: expected {FORMAT_VERSION}, got {obj.get('format_version')!r}"
        )
    try:
        params = GameParams(obj["m"], obj["g"], obj["t"])
    except ValueError as exc:
        raise CertificateParseError(f"header: {exc}") from exc
    if "root" not in obj:
        raise CertificateParseError("missing root node")
    return ProofTree(params, _parse_node(obj["root"], "root"))


def _parse_node(obj, path: str) -> ProofNode:
    if not isinstance(obj, dict):
        raise CertificateParseError(f"{path}: expected an object")
    loads = obj.get("loads")
    if (
        not isinstance(loads, list)
        or not loads
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in loads)
    ):
        raise CertificateParseError(f"{path}.loads: expected a non-empty list of integers")
    if "item" in obj or "children" in obj:
        item = obj.get("item")
        if not isinstance(item, int) or isinstance(item, bool):
            raise CertificateParseError(f"{path}.item: expected an integer")
        children = obj.get("children")
        if not isinstance(children, list) or not children:
            raise CertificateParseError(f"{path}.children: expected a non-empty list")
        parsed = tuple(
            _parse_node(c, f"{path}.children[{i}]") for i, c in enumerate(children)
        )
        return ProofNode(tuple(loads), item, parsed)
    return ProofNode(tuple(loads))


def load_certificate(path) -> ProofTree:
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def save_certificate(tree: ProofTree, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(tree))


# -- verification ------------------------------------------------------------


def verify(tree: ProofTree, params: GameParams, tables: CountTable | None = None) -> VerifyReport:
    """Check every certificate invariant; stop at the first failure.

    The feasibility of each item is re-established by a fresh DP walk down
    each root-to-leaf path, independent of how the tree was produced.
    """
    m, t = params.m, params.t
    report = VerifyReport(ok=True)
    root = tree.root
    if len(root.loads) != m or any(x != 0 for x in root.loads):
        return _fail(report, "root-shape", f"root loads {root.loads} are not {m} zeros")
    if tables is None:
        tables = CountTable(params)
    ok = _verify_node(root, empty_front(params), 0, "root", params, tables, report)
    if ok and report.value is not None and report.value < t:
        # unreachable if leaf checks passed; kept as a belt-and-braces guard
        return _fail(report, "leaf-below-target", f"tree value {report.value} < {t}")
    return report


def _fail(report: VerifyReport, code: str, message: str) -> VerifyReport:
    report.ok = False
    report.code = code
    report.message = message
    return report


def _verify_node(node: ProofNode, front: FeasibleFront, depth: int, path: str,
                 params: GameParams, tables: CountTable, report: VerifyReport) -> bool:
    m, g, t = params.m, params.g, params.t
    report.nodes += 1
    report.depth = max(report.depth, depth)
    loads = node.loads
    if len(loads) != m or not is_sorted_non_increasing(loads) or loads[-1] < 0:
        _fail(report, "malformed-loads", f"{path}: loads {loads} are not a packing over {m} bins")
        return False
    if node.is_leaf:
        report.leaves += 1
        if loads[0] < t:
            _fail(report, "leaf-below-target", f"{path}: max load {loads[0]} < target {t}")
            return False
        report.value = loads[0] if report.value is None else min(report.value, loads[0])
        return True
    y = node.item
    report.items.add(y)
    if y < 1 or y > g or y > largest_extension(front):
        _fail(
            report,
            "illegal-item",
            f"{path}: item {y} is not a legal extension (largest is {largest_extension(front)})",
        )
        return False
    expected = {place(loads, i, y) for i in range(m)}
    child_loads = set()
    for i, child in enumerate(node.children):
        if tuple(child.loads) not in expected:
            _fail(
                report,
                "load-mismatch",
                f"{path}.children[{i}]: loads {child.loads} are not {loads} + {y} in one bin",
            )
            return False
        child_loads.add(tuple(child.loads))
    missing = expected - child_loads
    if missing:
        _fail(
            report,
            "missing-placement",
            f"{path}: no child for placement outcome {sorted(missing)[0]}",
        )
        return False
    new_front = extend_front(front, y, tables)
    for i, child in enumerate(node.children):
        if not _verify_node(child, new_front, depth + 1, f"{path}.children[{i}]",
                            params, tables, report):
            return False
    return True
