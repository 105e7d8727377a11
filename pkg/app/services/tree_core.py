from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Hashable, Iterable, Literal, NamedTuple, Sequence


logger = logging.getLogger(__name__)

Side = Literal["leftmost", "rightmost"]

_LABEL = re.compile(r"(\d+) ?")


class TreeSyntaxError(ValueError):
    pass


class LabellingError(ValueError):
    pass


class NotAnNTreeError(LabellingError):
    pass


@dataclass(frozen=True, eq=False)
class PlanarTree:
    """Planar rooted tree; the root never carries a label.

    Two trees are equal when their canonical strings are equal.
    """

    children: tuple[PlanarTree, ...] = ()
    label: int | None = None

    @cached_property
    def text(self) -> str:
        if self.label is None:
            head = ""
        elif self.children:
            head = f"{self.label} "
        else:
            head = str(self.label)
        return "(" + head + "".join(child.text for child in self.children) + ")"

    @property
    def key(self) -> str:
        return "tree:" + self.text

    @cached_property
    def degree(self) -> int:
        return sum(1 + child.degree for child in self.children)

    @cached_property
    def nodes(self) -> tuple[NodeRef, ...]:
        """Non-root nodes in post-order; the root is position ``degree + 1``."""
        parents: list[int] = []
        labels: list[int | None] = []
        sizes: list[int] = []

        def visit(node: PlanarTree) -> int:
            kids = [visit(child) for child in node.children]
            parents.append(0)
            labels.append(node.label)
            sizes.append(1 + sum(sizes[k - 1] for k in kids))
            position = len(parents)
            for k in kids:
                parents[k - 1] = position
            return position

        root_kids = [visit(child) for child in self.children]
        root = len(parents) + 1
        for k in root_kids:
            parents[k - 1] = root
        return tuple(
            NodeRef(i + 1, parents[i], labels[i], sizes[i]) for i in range(len(parents))
        )

    @property
    def labels(self) -> tuple[int | None, ...]:
        return tuple(ref.label for ref in self.nodes)

    @property
    def is_labelled(self) -> bool:
        return any(label is not None for label in self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarTree):
            return NotImplemented
        return self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __lt__(self, other: PlanarTree) -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"PlanarTree({self.text!r})"


class NodeRef(NamedTuple):
    position: int
    parent: int
    label: int | None
    size: int


ROOT = PlanarTree()


def parse_tree(text: str, *, ntree: bool = False) -> PlanarTree:
    """Parse the canonical string; a single space after a label is optional."""
    source = text.strip()
    stack: list[tuple[int | None, list[PlanarTree]]] = []
    result: PlanarTree | None = None
    i = 0
    while i < len(source):
        ch = source[i]
        if ch == "(":
            if result is not None:
                raise TreeSyntaxError(f"trailing input at offset {i}")
            match = _LABEL.match(source, i + 1)
            label = None
            if match:
                if not stack:
                    raise TreeSyntaxError("the root cannot carry a label")
                label = int(match.group(1))
                i = match.end()
            else:
                i += 1
            stack.append((label, []))
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError(f"unbalanced ')' at offset {i}")
            label, kids = stack.pop()
            node = PlanarTree(tuple(kids), label)
            if stack:
                stack[-1][1].append(node)
            else:
                result = node
            i += 1
        else:
            raise TreeSyntaxError(f"unexpected character {ch!r} at offset {i}")

    if stack or result is None:
        raise TreeSyntaxError("unbalanced parentheses")

    labels = result.labels
    if any(label is None for label in labels) and any(label is not None for label in labels):
        raise LabellingError(f"{text!r} mixes labelled and unlabelled nodes")
    if ntree and not is_ntree(result):
        raise NotAnNTreeError(f"{text!r} is not labelled by 1..{result.degree} without repeats")
    return result


def render_tree(tree: PlanarTree) -> str:
    return tree.text


def is_ntree(tree: PlanarTree) -> bool:
    labels = tree.labels
    if None in labels:
        return False
    return sorted(labels) == list(range(1, tree.degree + 1))  # type: ignore[type-var]


def _check_modes(*trees: PlanarTree) -> None:
    modes = {t.is_labelled for t in trees if t.degree}
    if len(modes) > 1:
        raise LabellingError("cannot combine labelled and unlabelled trees")


def tree_from_postorder(entries: Sequence[tuple[int, int | None]]) -> PlanarTree:
    """Rebuild a tree from ``(parent, label)`` pairs listed in post-order.

    Positions are 1-based and the root is ``len(entries) + 1``.
    """
    root = len(entries) + 1
    pending: dict[int, list[PlanarTree]] = {}
    for position, (parent, label) in enumerate(entries, start=1):
        if not position < parent <= root:
            raise ValueError(f"node {position} cannot hang below {parent}")
        node = PlanarTree(tuple(pending.pop(position, ())), label)
        pending.setdefault(parent, []).append(node)
    tree = PlanarTree(tuple(pending.pop(root, ())))
    if pending:
        raise ValueError("entries do not describe a post-order traversal")
    return tree


def _assemble(
    sequence: Sequence[tuple[Hashable, Hashable, int | None]], root: Hashable
) -> PlanarTree:
    """Build a tree from ``(ident, parent_ident, label)`` triples given in post-order."""
    positions = {ident: index for index, (ident, _, _) in enumerate(sequence, start=1)}
    positions[root] = len(sequence) + 1
    return tree_from_postorder([(positions[parent], label) for _, parent, label in sequence])


def relabel(tree: PlanarTree, labels: Sequence[int | None]) -> PlanarTree:
    """Assign labels to the non-root nodes in post-order."""
    if len(labels) != tree.degree:
        raise LabellingError(f"expected {tree.degree} labels, got {len(labels)}")
    return tree_from_postorder([(ref.parent, label) for ref, label in zip(tree.nodes, labels)])


def postorder_nodes(tree: PlanarTree) -> tuple[NodeRef, ...]:
    return tree.nodes


def subtree_at(tree: PlanarTree, position: int) -> PlanarTree:
    """Subtree hanging at a node, re-rooted: the node itself becomes the root."""
    if position == tree.degree + 1:
        return tree
    ref = tree.nodes[position - 1]
    start = position - ref.size + 1
    return convex_subtree(tree, start, position - 1)


def convex_subtree(tree: PlanarTree, i: int, j: int) -> PlanarTree:
    n = tree.degree
    lo, hi = max(i, 1), min(j, n)
    if lo > hi:
        return ROOT

    refs = tree.nodes
    entries: list[tuple[int, int | None]] = []
    for ref in refs[lo - 1 : hi]:
        parent = ref.parent
        while hi < parent <= n:
            parent = refs[parent - 1].parent
        entries.append((parent - lo + 1 if parent <= hi else hi - lo + 2, ref.label))
    return tree_from_postorder(entries)


@dataclass(frozen=True)
class TreePartition:
    """Cut of the post-order sequence ``1..n`` into consecutive intervals."""

    tree: PlanarTree
    cuts: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.tree.degree
        if n == 0:
            raise ValueError("a tree of degree 0 has no partitions")
        bounds = self.bounds
        if any(a >= b for a, b in zip(bounds, bounds[1:])):
            raise ValueError(f"cuts {self.cuts} are not strictly inside 0..{n}")

    @property
    def bounds(self) -> tuple[int, ...]:
        return (0, *self.cuts, self.tree.degree)

    @property
    def intervals(self) -> tuple[tuple[int, int], ...]:
        b = self.bounds
        return tuple((b[r] + 1, b[r + 1]) for r in range(len(b) - 1))

    @cached_property
    def blocks(self) -> tuple[PlanarTree, ...]:
        return tuple(convex_subtree(self.tree, lo, hi) for lo, hi in self.intervals)

    def __len__(self) -> int:
        return len(self.cuts) + 1


def partitions(tree: PlanarTree, k: int | None = None) -> tuple[TreePartition, ...]:
    """All partitions in (k, cuts) order; ``k`` restricts to one block count."""
    n = tree.degree
    if n == 0:
        return ()
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"a tree of degree {n} has no partition into {k} blocks")
    counts = range(1, n + 1) if k is None else (k,)
    return tuple(
        TreePartition(tree, cuts)
        for size in counts
        for cuts in combinations(range(1, n), size - 1)
    )


def dot(t: PlanarTree, w: PlanarTree) -> PlanarTree:
    """Identify the roots; children of ``t`` come first."""
    _check_modes(t, w)
    return PlanarTree(t.children + w.children)


def dot_all(trees: Iterable[PlanarTree]) -> PlanarTree:
    children: list[PlanarTree] = []
    pieces = list(trees)
    _check_modes(*pieces)
    for piece in pieces:
        children.extend(piece.children)
    return PlanarTree(tuple(children))


def irreducible_factors(tree: PlanarTree) -> tuple[PlanarTree, ...]:
    return tuple(PlanarTree((child,)) for child in tree.children)


def is_irreducible(tree: PlanarTree) -> bool:
    return len(tree.children) == 1


@lru_cache(maxsize=None)
def _forests(n: int) -> tuple[tuple[PlanarTree, ...], ...]:
    if n == 0:
        return ((),)
    out: list[tuple[PlanarTree, ...]] = []
    for first in range(1, n + 1):
        for inner in _forests(first - 1):
            head = PlanarTree(inner)
            for rest in _forests(n - first):
                out.append((head, *rest))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[PlanarTree, ...]:
    if n < 0:
        raise ValueError("degree must be non-negative")
    return tuple(sorted(PlanarTree(forest) for forest in _forests(n)))


def enumerate_labelled(n: int, alphabet: Sequence[int]) -> tuple[PlanarTree, ...]:
    """Trees of degree ``n`` with every non-root node labelled from ``alphabet``."""
    if not alphabet:
        raise LabellingError("the alphabet is empty")
    letters = sorted(set(alphabet))
    trees = [
        relabel(shape, labels)
        for shape in enumerate_trees(n)
        for labels in product(letters, repeat=n)
    ]
    return tuple(sorted(trees))


def graft_all(
    host: PlanarTree, grafts: Sequence[tuple[int, PlanarTree]], side: Side
) -> PlanarTree:
    """Glue the root-children of every ``(position, tree)`` pair onto a host node.

    Rightmost grafts become the last children of their node; leftmost grafts
    become the first ones. Grafts meeting at the same slot keep their order.
    """
    n = host.degree
    refs = host.nodes
    inserts: dict[int, list[tuple[Hashable, Hashable, int | None]]] = {}
    _check_modes(host, *(sub for _, sub in grafts))

    for index, (target, sub) in enumerate(grafts):
        if not 1 <= target <= n + 1:
            raise ValueError(f"node {target} is not in a tree of degree {n}")
        if side == "rightmost":
            slot = target - 1
        else:
            size = n + 1 if target == n + 1 else refs[target - 1].size
            slot = target - size
        sub_root = sub.degree + 1
        inserts.setdefault(slot, []).extend(
            (
                ("s", index, ref.position),
                ("h", target) if ref.parent == sub_root else ("s", index, ref.parent),
                ref.label,
            )
            for ref in sub.nodes
        )

    sequence: list[tuple[Hashable, Hashable, int | None]] = []
    for slot in range(n + 1):
        sequence.extend(inserts.get(slot, ()))
        if slot < n:
            ref = refs[slot]
            sequence.append((("h", ref.position), ("h", ref.parent), ref.label))
    return _assemble(sequence, ("h", n + 1))


def graft(host: PlanarTree, node: int, sub: PlanarTree, side: Side = "rightmost") -> PlanarTree:
    return graft_all(host, ((node, sub),), side)
