from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from itertools import combinations, pairwise
from typing import Any

from app.services.hopf_planar import coproduct, dual_product, product
from app.services.linalg import (
    LinearCombination,
    TensorCombination,
    componentwise,
    extend_bilinear,
    extend_linear,
    pairing,
    tensor_of,
)
from app.services.tree_core import (
    ROOT,
    LabellingError,
    PlanarTree,
    dot_all,
    enumerate_trees,
    irreducible_factors,
)


logger = logging.getLogger(__name__)

MAX_CHECK_DEGREE = 6


class BinaryTreeSyntaxError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BinaryTree:
    """Full binary tree; a leaf has neither child, an internal vertex has both."""

    left: BinaryTree | None = None
    right: BinaryTree | None = None

    def __post_init__(self) -> None:
        if (self.left is None) != (self.right is None):
            raise BinaryTreeSyntaxError("an internal vertex needs both children")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @cached_property
    def text(self) -> str:
        if self.is_leaf:
            return "."
        return f"({self.left.text},{self.right.text})"  # type: ignore[union-attr]

    @property
    def key(self) -> str:
        return "binary:" + self.text

    @cached_property
    def degree(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + self.left.degree + self.right.degree  # type: ignore[union-attr]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryTree):
            return NotImplemented
        return self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __lt__(self, other: BinaryTree) -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"BinaryTree({self.text!r})"


LEAF = BinaryTree()
Y = BinaryTree(LEAF, LEAF)


def parse_binary(text: str) -> BinaryTree:
    source = "".join(text.split())

    def node(i: int) -> tuple[BinaryTree, int]:
        if i >= len(source):
            raise BinaryTreeSyntaxError(f"{text!r} ends early")
        if source[i] == ".":
            return LEAF, i + 1
        if source[i] != "(":
            raise BinaryTreeSyntaxError(f"unexpected {source[i]!r} at offset {i}")
        left, i = node(i + 1)
        if i >= len(source) or source[i] != ",":
            raise BinaryTreeSyntaxError(f"expected ',' at offset {i}")
        right, i = node(i + 1)
        if i >= len(source) or source[i] != ")":
            raise BinaryTreeSyntaxError(f"expected ')' at offset {i}")
        return BinaryTree(left, right), i + 1

    tree, end = node(0)
    if end != len(source):
        raise BinaryTreeSyntaxError(f"trailing input at offset {end}")
    return tree


def render_binary(x: BinaryTree) -> str:
    return x.text


@lru_cache(maxsize=None)
def enumerate_binary(n: int) -> tuple[BinaryTree, ...]:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return (LEAF,)
    return tuple(
        sorted(
            BinaryTree(left, right)
            for k in range(n)
            for left in enumerate_binary(k)
            for right in enumerate_binary(n - 1 - k)
        )
    )


def over(x: BinaryTree, y: BinaryTree) -> BinaryTree:
    """Root of ``x`` replaces the leftmost leaf of ``y``."""
    if y.is_leaf:
        return x
    return BinaryTree(over(x, y.left), y.right)  # type: ignore[arg-type]


def under(x: BinaryTree, y: BinaryTree) -> BinaryTree:
    """Root of ``y`` replaces the rightmost leaf of ``x``."""
    if x.is_leaf:
        return y
    return BinaryTree(x.left, under(x.right, y))  # type: ignore[arg-type]


def is_under_irreducible(x: BinaryTree) -> bool:
    return not x.is_leaf and x.right.is_leaf  # type: ignore[union-attr]


def under_irreducible_factors(x: BinaryTree) -> tuple[BinaryTree, ...]:
    factors: list[BinaryTree] = []
    while not x.is_leaf:
        factors.append(BinaryTree(x.left, LEAF))
        x = x.right  # type: ignore[assignment]
    return tuple(factors)


def inorder_vertices(x: BinaryTree) -> tuple[BinaryTree, ...]:
    """Subtrees rooted at the internal vertices, numbered ``1..n`` in in-order."""
    if x.is_leaf:
        return ()
    return (*inorder_vertices(x.left), x, *inorder_vertices(x.right))  # type: ignore[arg-type]


@lru_cache(maxsize=65536)
def planar_to_binary(t: PlanarTree) -> BinaryTree:
    if t.is_labelled:
        raise LabellingError("only unlabelled trees map to binary trees")
    if t.degree == 0:
        return LEAF
    factors = irreducible_factors(t)
    if len(factors) == 1:
        return over(planar_to_binary(PlanarTree(t.children[0].children)), Y)
    return reduce(under, (planar_to_binary(f) for f in factors))


@lru_cache(maxsize=65536)
def binary_to_planar(x: BinaryTree) -> PlanarTree:
    if x.is_leaf:
        return ROOT
    factors = under_irreducible_factors(x)
    if len(factors) == 1:
        inner = binary_to_planar(x.left)  # type: ignore[arg-type]
        return PlanarTree((PlanarTree(inner.children),))
    return dot_all(binary_to_planar(f) for f in factors)


def _trim(x: BinaryTree, offset: int, lo: int, hi: int) -> BinaryTree:
    if x.is_leaf or lo > hi:
        return LEAF
    index = offset + x.left.degree + 1  # type: ignore[union-attr]
    if index < lo:
        return _trim(x.right, index, lo, hi)  # type: ignore[arg-type]
    if index > hi:
        return _trim(x.left, offset, lo, hi)  # type: ignore[arg-type]
    return BinaryTree(_trim(x.left, offset, lo, hi), _trim(x.right, index, lo, hi))  # type: ignore[arg-type]


def binary_convex(x: BinaryTree, i: int, j: int) -> BinaryTree:
    """Subtree spanned by the internal vertices ``i+1..j`` between branches ``i`` and ``j``."""
    if not 0 <= i <= j <= x.degree:
        raise ValueError(f"[{i},{j}] is not inside 0..{x.degree}")
    return _trim(x, 0, i + 1, j)


@lru_cache(maxsize=65536)
def _binary_coproduct(x: BinaryTree) -> TensorCombination:
    n = x.degree
    return TensorCombination(
        ((binary_convex(x, 0, i), binary_convex(x, i, n)), 1) for i in range(n + 1)
    )


def binary_coproduct(value: Any) -> TensorCombination:
    return _binary_split(value)


_binary_split = extend_linear(_binary_coproduct, into=TensorCombination)


def _substitute(x: BinaryTree, offset: int, blocks: dict[int, BinaryTree]) -> BinaryTree:
    if x.is_leaf:
        return blocks.get(offset, x)
    left = _substitute(x.left, offset, blocks)  # type: ignore[arg-type]
    right = _substitute(x.right, offset + x.left.degree + 1, blocks)  # type: ignore[union-attr, arg-type]
    return BinaryTree(left, right)


@dataclass(frozen=True)
class BinaryPartition:
    """Cut sequence ``0 < n1 < ... < n``; neighbouring blocks share a boundary branch."""

    tree: BinaryTree
    cuts: tuple[int, ...] = field(default=())

    @property
    def bounds(self) -> tuple[int, ...]:
        return (0, *self.cuts, self.tree.degree)

    @cached_property
    def blocks(self) -> tuple[BinaryTree, ...]:
        return tuple(binary_convex(self.tree, a, b) for a, b in pairwise(self.bounds))

    def __len__(self) -> int:
        return len(self.cuts) + 1


def binary_partitions(y: BinaryTree) -> tuple[BinaryPartition, ...]:
    n = y.degree
    return tuple(
        BinaryPartition(y, cuts)
        for k in range(1, n + 1)
        for cuts in combinations(range(1, n), k - 1)
    )


def binary_hash_product(x: BinaryTree, partition: BinaryPartition, leaves: tuple[int, ...]) -> BinaryTree:
    """Substitute block ``r`` for leaf ``leaves[r]`` of ``x``; leaves are numbered ``0..m``."""
    if len(leaves) != len(partition):
        raise ValueError("every block needs exactly one leaf")
    if any(not 0 <= leaf <= x.degree for leaf in leaves) or any(a >= b for a, b in pairwise(leaves)):
        raise ValueError(f"leaves {leaves} are not order preserving into 0..{x.degree}")
    return _substitute(x, 0, dict(zip(leaves, partition.blocks)))


@lru_cache(maxsize=65536)
def _binary_product(x: BinaryTree, y: BinaryTree) -> LinearCombination:
    if y.is_leaf:
        return LinearCombination.of(x)
    return LinearCombination(
        (binary_hash_product(x, partition, leaves), 1)
        for partition in binary_partitions(y)
        for leaves in combinations(range(x.degree + 1), len(partition))
    )


def binary_product(left: Any, right: Any) -> LinearCombination:
    return _binary_multiply(left, right)


_binary_multiply = extend_bilinear(_binary_product)


def opposite_product(left: Any, right: Any) -> LinearCombination:
    return _binary_multiply(right, left)


def _transport(value: Any) -> LinearCombination:
    return extend_linear(planar_to_binary)(value)


@lru_cache(maxsize=65536)
def _binary_dual_product(x: BinaryTree, y: BinaryTree) -> LinearCombination:
    return _transport(dual_product(binary_to_planar(x), binary_to_planar(y)))


def binary_dual_product(left: Any, right: Any) -> LinearCombination:
    """Dual product carried over from planar trees through the bijection."""
    return extend_bilinear(_binary_dual_product)(left, right)


@dataclass
class DualityReport:
    maxdeg: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, check: str, passed: bool, detail: str) -> None:
        self.checked[check] = self.checked.get(check, 0) + 1
        if not passed:
            self.violations.append(f"{check}: {detail}")


def _upto(maxdeg: int) -> list[BinaryTree]:
    return [x for n in range(maxdeg + 1) for x in enumerate_binary(n)]


def loday_ronco_dual_check(maxdeg: int) -> DualityReport:
    """Check that (binary trees, opposite product, coproduct) is dual to the planar ·_d structure."""
    if maxdeg > MAX_CHECK_DEGREE:
        raise ValueError(f"the duality check is capped at degree {MAX_CHECK_DEGREE}")
    report = DualityReport(maxdeg)
    trees = _upto(maxdeg)

    for n in range(maxdeg + 1):
        planar, binary = len(enumerate_trees(n)), len(enumerate_binary(n))
        report.record("dimensions", planar == binary, f"degree {n}: {planar} planar vs {binary} binary")

    for x in trees:
        once = binary_coproduct(x)
        left = TensorCombination.total(
            tensor_of(_binary_coproduct(a), b) * c for (a, b), c in once
        )
        right = TensorCombination.total(
            tensor_of(a, _binary_coproduct(b)) * c for (a, b), c in once
        )
        report.record("coassociativity", left == right, x.text)

    compose = componentwise(lambda a, b: _binary_product(b, a))
    for x in trees:
        for y in trees:
            if x.degree + y.degree > maxdeg:
                continue
            lhs = binary_coproduct(opposite_product(x, y))
            rhs = compose(binary_coproduct(x), binary_coproduct(y))
            report.record("compatibility", lhs == rhs, f"{x.text} {y.text}")
            for z in trees:
                if x.degree + y.degree + z.degree > maxdeg:
                    continue
                assoc = opposite_product(opposite_product(x, y), z) == opposite_product(
                    x, opposite_product(y, z)
                )
                report.record("associativity", assoc, f"{x.text} {y.text} {z.text}")

    for x in trees:
        for y in trees:
            total = x.degree + y.degree
            if total > maxdeg:
                continue
            glued = binary_dual_product(x, y)
            for z in enumerate_binary(total):
                lhs = pairing(glued, z)
                rhs = pairing(tensor_of(x, y), binary_coproduct(z))
                report.record("pairing", lhs == rhs, f"<{x.text} . {y.text}, {z.text}>")

    for t in (t for n in range(maxdeg + 1) for t in enumerate_trees(n)):
        mapped = TensorCombination(
            ((planar_to_binary(a), planar_to_binary(b)), c) for (a, b), c in coproduct(t)
        )
        report.record("transport", mapped == binary_coproduct(planar_to_binary(t)), t.text)

    logger.info("duality check up to degree %d: %d violations", maxdeg, len(report.violations))
    return report


def transported_product(t: PlanarTree, u: PlanarTree) -> LinearCombination:
    return _transport(product(t, u))
