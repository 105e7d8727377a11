from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, pairwise
from typing import Any, Callable, Iterator

from app.services.linalg import (
    LinearCombination,
    Scalar,
    TensorCombination,
    componentwise,
    extend_bilinear,
    extend_linear,
    lift,
    pairing,
)
from app.services.tree_core import (
    ROOT,
    PlanarTree,
    TreePartition,
    convex_subtree,
    dot_all,
    graft_all,
    irreducible_factors,
    partitions,
)


logger = logging.getLogger(__name__)

MAX_ANTIPODE_DEGREE = 8

__all__ = [
    "MAX_ANTIPODE_DEGREE",
    "antipode",
    "antipode_recursion",
    "coproduct",
    "counit",
    "dual_coproduct",
    "dual_product",
    "hash_product",
    "hash_products",
    "leftmost_branch",
    "order_preserving_maps",
    "pairing",
    "product",
    "tensor_product",
]


def order_preserving_maps(k: int, tree: PlanarTree) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing maps from ``1..k`` to the nodes ``1..n+1`` of ``tree``."""
    return tuple(combinations(range(1, tree.degree + 2), k))


def hash_product(
    t: PlanarTree, u: PlanarTree, partition: TreePartition, targets: tuple[int, ...]
) -> PlanarTree:
    """Glue block ``r`` of ``partition`` at node ``targets[r]`` of ``t``, rightmost."""
    if partition.tree != u:
        raise ValueError("the partition does not belong to the right factor")
    if len(targets) != len(partition):
        raise ValueError(f"{len(partition)} blocks need as many targets, got {len(targets)}")
    if any(a >= b for a, b in pairwise(targets)):
        raise ValueError(f"targets {targets} are not strictly increasing")
    return graft_all(t, tuple(zip(targets, partition.blocks)), "rightmost")


def hash_products(
    t: PlanarTree, u: PlanarTree
) -> Iterator[tuple[TreePartition, tuple[int, ...], PlanarTree]]:
    for partition in partitions(u):
        for targets in order_preserving_maps(len(partition), t):
            yield partition, targets, hash_product(t, u, partition, targets)


@lru_cache(maxsize=65536)
def _product(t: PlanarTree, u: PlanarTree) -> LinearCombination:
    if u.degree == 0:
        return LinearCombination.of(t)
    return LinearCombination((tree, 1) for _, _, tree in hash_products(t, u))


def product(left: Any, right: Any) -> LinearCombination:
    """Sum of all hash products; bilinear, with the root tree as unit."""
    return _multiply(left, right)


_multiply = extend_bilinear(_product)


@lru_cache(maxsize=65536)
def _coproduct(t: PlanarTree) -> TensorCombination:
    n = t.degree
    return TensorCombination(
        ((convex_subtree(t, 1, k), convex_subtree(t, k + 1, n)), 1) for k in range(n + 1)
    )


def coproduct(value: Any) -> TensorCombination:
    return _split(value)


_split = extend_linear(_coproduct, into=TensorCombination)


def counit(value: Any) -> Scalar:
    return lift(value).coefficient(ROOT)


def tensor_product(left: TensorCombination, right: TensorCombination) -> TensorCombination:
    return componentwise(_product)(left, right)


def antipode_recursion(
    split: Callable[[PlanarTree], TensorCombination],
    multiply: Callable[[Any, Any], LinearCombination],
    *,
    max_degree: int = MAX_ANTIPODE_DEGREE,
) -> Callable[[Any], LinearCombination]:
    """Antipode of a connected graded bialgebra from its Takeuchi-style recursion.

    ``S(t) = -t - sum S(t') * t''`` over the terms of ``split(t)`` whose legs
    both have positive degree.
    """

    @lru_cache(maxsize=None)
    def on_basis(t: PlanarTree) -> LinearCombination:
        if t.degree == 0:
            return LinearCombination.of(t)
        if t.degree > max_degree:
            raise ValueError(f"antipode is only computed up to degree {max_degree}")
        acc = -LinearCombination.of(t)
        for (left, right), coeff in split(t):
            if left.degree and right.degree:
                acc = acc - multiply(on_basis(left), right) * coeff
        return acc

    return extend_linear(on_basis)


_antipode = antipode_recursion(_coproduct, product)


def antipode(value: Any) -> LinearCombination:
    return _antipode(value)


def leftmost_branch(tree: PlanarTree) -> tuple[int, ...]:
    """Positions of the nodes on the path from the leftmost leaf up to the root."""
    if tree.degree == 0:
        return (1,)
    refs = tree.nodes
    branch = [1]
    while branch[-1] <= tree.degree:
        branch.append(refs[branch[-1] - 1].parent)
    return tuple(branch)


@lru_cache(maxsize=65536)
def _dual_product(t: PlanarTree, w: PlanarTree) -> LinearCombination:
    factors = irreducible_factors(t)
    if not factors:
        return LinearCombination.of(w)
    if w.degree == 0:
        return LinearCombination.of(t)

    branch = leftmost_branch(w)
    k = len(factors)
    terms: list[tuple[PlanarTree, int]] = []
    for j in range(1, min(k, len(branch)) + 1):
        for cuts in combinations(range(1, k), j - 1):
            bounds = (0, *cuts, k)
            groups = [dot_all(factors[a:b]) for a, b in pairwise(bounds)]
            for nodes in combinations(branch, j):
                # the first group goes to the highest chosen node
                grafts = tuple(zip(reversed(nodes), groups))
                terms.append((graft_all(w, grafts, "leftmost"), 1))
    return LinearCombination(terms)


def dual_product(left: Any, right: Any) -> LinearCombination:
    """Product dual to the coproduct under the pairing of tree bases."""
    return _dual_multiply(left, right)


_dual_multiply = extend_bilinear(_dual_product)


def _dual_coproduct(t: PlanarTree) -> TensorCombination:
    factors = irreducible_factors(t)
    return TensorCombination(
        ((dot_all(factors[:i]), dot_all(factors[i:])), 1) for i in range(len(factors) + 1)
    )


def dual_coproduct(value: Any) -> TensorCombination:
    """Deconcatenation of the irreducible factor sequence."""
    return _dual_split(value)


_dual_split = extend_linear(_dual_coproduct, into=TensorCombination)
