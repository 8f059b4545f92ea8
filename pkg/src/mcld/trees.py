"""Complete binary trees in the two depth conventions used here.

io-labeled and Psi-labeled trees put the root at depth 0 and leave leaves
unlabeled: a tree of depth ``b`` has ``2^b - 1`` internal nodes and ``2^b``
root-to-leaf paths.  They are stored as nested nodes with ``LEAF`` for leaves.

Input- and output-labeled trees put the root at depth 1 and label every node,
leaves included: depth ``b`` means ``2^b - 1`` labeled nodes and ``2^(b-1)``
paths.  They are stored heap-ordered (children of ``i`` at ``2i+1``, ``2i+2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .caps import DEFAULT_CAPS, Caps
from .dimensions import STAR, MapFamily, iter_splits, solver_for
from .hypothesis import HypothesisClass


class TreeError(ValueError):
    """Malformed tree or a tree incompatible with the class it is checked against."""


@dataclass(frozen=True)
class Leaf:
    def __repr__(self) -> str:
        return "LEAF"


LEAF = Leaf()


@dataclass(frozen=True)
class IoNode:
    """Internal node of an io-labeled tree; ``labels[0]`` is on the left edge."""

    x: int
    labels: tuple[int, int]
    left: "IoTree"
    right: "IoTree"


@dataclass(frozen=True)
class PsiNode:
    """Internal node of a Psi-labeled tree; the left edge is 0, the right edge 1."""

    x: int
    phi: tuple
    left: "PsiTree"
    right: "PsiTree"


IoTree = Union[IoNode, Leaf]
PsiTree = Union[PsiNode, Leaf]


def tree_depth(t) -> int:
    if isinstance(t, Leaf):
        return 0
    dl, dr = tree_depth(t.left), tree_depth(t.right)
    if dl != dr:
        raise TreeError("tree is not complete")
    return dl + 1


def _edge_ok(H: HypothesisClass, node, side: int):
    """Predicate on a label ``y`` for taking edge ``side`` out of ``node``."""
    if isinstance(node, IoNode):
        want = node.labels[side]
        return lambda y: y == want
    phi = node.phi
    return lambda y: phi[y] == side


def _validate_node(H: HypothesisClass, node) -> None:
    if not 0 <= node.x < H.domain_size:
        raise TreeError(f"tree point {node.x} outside the domain")
    if isinstance(node, IoNode):
        y0, y1 = node.labels
        if y0 == y1:
            raise TreeError("sibling edges of an io-labeled tree must differ")
        if not (0 <= y0 <= H.k and 0 <= y1 <= H.k):
            raise TreeError(f"edge labels {node.labels} outside 0..{H.k}")
    elif isinstance(node, PsiNode):
        if len(node.phi) != H.k + 1 or any(v not in (0, 1, STAR) for v in node.phi):
            raise TreeError(f"collapsing map {node.phi} invalid for k={H.k}")
    else:
        raise TreeError(f"unknown tree node {node!r}")


def is_shattered(H: HypothesisClass, tree) -> bool:
    """True iff every root-to-leaf path of ``tree`` is realized by some member of ``H``."""

    def walk(rows: list, t) -> bool:
        if isinstance(t, Leaf):
            return bool(rows)
        _validate_node(H, t)
        for side, child in ((0, t.left), (1, t.right)):
            ok = _edge_ok(H, t, side)
            if not walk([r for r in rows if ok(r[t.x])], child):
                return False
        return True

    tree_depth(tree)
    return walk(list(H.rows), tree)


def find_shattered_tree(H: HypothesisClass, family: MapFamily | None, depth: int,
                        caps: Caps = DEFAULT_CAPS):
    """A shattered tree of the given depth, or ``None`` if the dimension is smaller.

    ``family=None`` asks for an io-labeled tree.  Splits are tried in the
    deterministic order of :func:`iter_splits`, so the witness is the
    lexicographically first one.
    """
    if depth < 0:
        raise TreeError("depth must be non-negative")
    solver = solver_for(H, family, caps=caps)
    if solver.dim(H.full_mask) < depth:
        return None
    make = IoNode if family is None else PsiNode

    def build(S: int, b: int):
        if b == 0:
            return LEAF
        for x, tag, s0, s1 in iter_splits(H, family, S):
            if solver.dim(s0) >= b - 1 and solver.dim(s1) >= b - 1:
                return make(x, tag, build(s0, b - 1), build(s1, b - 1))
        raise AssertionError("recursion value and split enumeration disagree")

    return build(H.full_mask, depth)


def root_paths(tree) -> Iterator[list[tuple[object, int]]]:
    """Yield each root-to-leaf path of an io/Psi tree as ``[(node, side), ...]``."""
    if isinstance(tree, Leaf):
        yield []
        return
    for side, child in ((0, tree.left), (1, tree.right)):
        for rest in root_paths(child):
            yield [(tree, side)] + rest


def tree_to_json(tree) -> dict:
    def enc(t):
        if isinstance(t, Leaf):
            return None
        out = {"x": t.x}
        if isinstance(t, IoNode):
            out["labels"] = list(t.labels)
        else:
            out["phi"] = list(t.phi)
        out["left"], out["right"] = enc(t.left), enc(t.right)
        return out

    conv = "psi" if isinstance(tree, PsiNode) else "io"
    return {"convention": conv, "root_depth": 0, "depth": tree_depth(tree), "tree": enc(tree)}


def tree_from_json(data: dict):
    conv = data.get("convention")
    if conv not in ("io", "psi"):
        raise TreeError(f"expected an io or psi tree, got convention {conv!r}")

    def dec(node):
        if node is None:
            return LEAF
        try:
            if conv == "io":
                return IoNode(int(node["x"]), tuple(node["labels"]), dec(node["left"]),
                              dec(node["right"]))
            return PsiNode(int(node["x"]), tuple(node["phi"]), dec(node["left"]), dec(node["right"]))
        except (KeyError, TypeError) as e:
            raise TreeError(f"malformed tree node: {e}") from None

    return dec(data["tree"])


@dataclass(frozen=True)
class HeapTree:
    """Complete tree with a label on every node (root depth 1), heap-ordered."""

    depth: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.depth < 0 or len(self.labels) != (1 << self.depth) - 1:
            raise TreeError(f"depth-{self.depth} tree needs {(1 << self.depth) - 1} node labels")

    def paths(self) -> list[tuple[int, ...]]:
        """Node-index sequences of the root-to-leaf paths, left to right."""
        if self.depth == 0:
            return []
        out = [(0,)]
        for _ in range(self.depth - 1):
            out = [p + (2 * p[-1] + c,) for p in out for c in (1, 2)]
        return out


class InputTree(HeapTree):
    convention = "input"


class OutputTree(HeapTree):
    convention = "output"


def heap_to_json(t: HeapTree) -> dict:
    key = "x" if isinstance(t, InputTree) else "y"

    def enc(i):
        if i >= len(t.labels):
            return None
        return {key: t.labels[i], "left": enc(2 * i + 1), "right": enc(2 * i + 2)}

    return {"convention": t.convention, "root_depth": 1, "depth": t.depth, "tree": enc(0)}


def heap_from_json(data: dict) -> HeapTree:
    conv = data.get("convention")
    cls = {"input": InputTree, "output": OutputTree}.get(conv)
    if cls is None:
        raise TreeError(f"expected an input or output tree, got convention {conv!r}")
    key = "x" if cls is InputTree else "y"
    depth = int(data["depth"])
    labels = [0] * ((1 << depth) - 1)

    def dec(node, i):
        if i >= len(labels):
            if node is not None:
                raise TreeError("tree deeper than its declared depth")
            return
        if node is None:
            raise TreeError("tree shallower than its declared depth")
        labels[i] = int(node[key])
        dec(node.get("left"), 2 * i + 1)
        dec(node.get("right"), 2 * i + 2)

    dec(data.get("tree"), 0)
    return cls(depth, tuple(labels))


def random_input_tree(rng, domain_size: int, depth: int) -> InputTree:
    return InputTree(depth, tuple(int(v) for v in rng.integers(0, domain_size,
                                                                size=(1 << depth) - 1)))
