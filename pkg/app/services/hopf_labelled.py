from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Any, Iterator

from app.services.hopf_planar import antipode_recursion, coproduct, product
from app.services.linalg import LinearCombination, TensorCombination, extend_bilinear, extend_linear
from app.services.tree_core import (
    ROOT,
    LabellingError,
    NotAnNTreeError,
    PlanarTree,
    dot,
    dot_all,
    enumerate_trees,
    irreducible_factors,
    is_ntree,
    relabel,
    tree_from_postorder,
)


logger = logging.getLogger(__name__)

__all__ = [
    "FamilyTag",
    "NotAnNTreeError",
    "antipode_std",
    "coproduct_std",
    "enumerate_family",
    "enumerate_increasing_by_gluing",
    "is_member",
    "is_ntree",
    "require_ntree",
    "shift",
    "slash_irreducible_factors",
    "slash_product",
    "standardize",
    "standardize_combination",
    "star_product",
]


class FamilyTag(str, Enum):
    NTREE = "ntree"
    INCREASING = "increasing"
    SORTED = "sorted"


def require_ntree(*trees: PlanarTree) -> None:
    for tree in trees:
        if not is_ntree(tree):
            raise NotAnNTreeError(f"{tree.text} is not an n-tree")


def _map_labels(tree: PlanarTree, mapping: dict[int, int]) -> PlanarTree:
    return tree_from_postorder([(ref.parent, mapping[ref.label]) for ref in tree.nodes])  # type: ignore[index]


def standardize(tree: PlanarTree) -> PlanarTree:
    """Relabel by rank: the k-th smallest label becomes k."""
    labels = tree.labels
    if None in labels and tree.degree:
        raise LabellingError(f"{tree.text} is not labelled")
    if len(set(labels)) != len(labels):
        raise LabellingError(f"{tree.text} repeats a label")
    ranks = {label: rank for rank, label in enumerate(sorted(labels), start=1)}  # type: ignore[type-var]
    return _map_labels(tree, ranks)  # type: ignore[arg-type]


_standardize_all = extend_linear(standardize)


def standardize_combination(value: Any) -> LinearCombination:
    return _standardize_all(value)


def shift(tree: PlanarTree, m: int) -> PlanarTree:
    if m < 0:
        raise ValueError("shift must be non-negative")
    if m == 0 or tree.degree == 0:
        return tree
    return tree_from_postorder([(ref.parent, ref.label + m) for ref in tree.nodes])  # type: ignore[operator]


@lru_cache(maxsize=65536)
def _coproduct_std(t: PlanarTree) -> TensorCombination:
    require_ntree(t)
    return TensorCombination(
        ((standardize(a), standardize(b)), c) for (a, b), c in coproduct(t)
    )


def coproduct_std(value: Any) -> TensorCombination:
    """Standardized coproduct: both legs are relabelled by rank."""
    return _split_std(value)


_split_std = extend_linear(_coproduct_std, into=TensorCombination)


def slash_product(t: PlanarTree, w: PlanarTree) -> PlanarTree:
    require_ntree(t, w)
    return dot(t, shift(w, t.degree))


@lru_cache(maxsize=65536)
def _star(t: PlanarTree, w: PlanarTree) -> LinearCombination:
    require_ntree(t, w)
    return product(t, shift(w, t.degree))


def star_product(left: Any, right: Any) -> LinearCombination:
    return _star_multiply(left, right)


_star_multiply = extend_bilinear(_star)


def slash_irreducible_factors(tree: PlanarTree) -> tuple[PlanarTree, ...]:
    """Split at every prefix of root-children whose labels are exactly ``1..size``."""
    require_ntree(tree)
    out: list[PlanarTree] = []
    group: list[PlanarTree] = []
    size = top = 0
    for factor in irreducible_factors(tree):
        group.append(factor)
        size += factor.degree
        top = max(top, *factor.labels)  # type: ignore[type-var]
        if top == size:
            out.append(standardize(dot_all(group)))
            group = []
    return tuple(out)


def is_slash_irreducible(tree: PlanarTree) -> bool:
    return len(slash_irreducible_factors(tree)) == 1


_antipode_std = antipode_recursion(_coproduct_std, star_product)


def antipode_std(value: Any) -> LinearCombination:
    return _antipode_std(value)


def _leaf(label: int) -> PlanarTree:
    return PlanarTree((), label)


def _with_leaf(node: PlanarTree, leaf: PlanarTree, *, last_only: bool) -> Iterator[PlanarTree]:
    """Every tree obtained by adding ``leaf`` as a child somewhere below ``node``."""
    kids = node.children
    slots = (len(kids),) if last_only else range(len(kids) + 1)
    for slot in slots:
        yield PlanarTree(kids[:slot] + (leaf,) + kids[slot:], node.label)
    for index, child in enumerate(kids):
        for variant in _with_leaf(child, leaf, last_only=last_only):
            yield PlanarTree(kids[:index] + (variant,) + kids[index + 1 :], node.label)


@lru_cache(maxsize=None)
def _glued(n: int, last_only: bool) -> tuple[PlanarTree, ...]:
    if n == 0:
        return (ROOT,)
    leaf = _leaf(n)
    grown = {
        variant
        for tree in _glued(n - 1, last_only)
        for variant in _with_leaf(tree, leaf, last_only=last_only)
    }
    return tuple(sorted(grown))


def enumerate_increasing_by_gluing(n: int) -> tuple[PlanarTree, ...]:
    """Increasing trees grown by attaching a leaf labelled ``n`` in every child slot."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return _glued(n, False)


@lru_cache(maxsize=None)
def _ntrees(n: int) -> tuple[PlanarTree, ...]:
    return tuple(
        sorted(
            relabel(shape, labels)
            for shape in enumerate_trees(n)
            for labels in permutations(range(1, n + 1))
        )
    )


def enumerate_family(tag: FamilyTag | str, n: int) -> tuple[PlanarTree, ...]:
    tag = FamilyTag(tag)
    if n < 0:
        raise ValueError("degree must be non-negative")
    if tag is FamilyTag.NTREE:
        return _ntrees(n)
    if tag is FamilyTag.INCREASING:
        return _glued(n, False)
    # sorted trees: the new leaf is always the rightmost child
    return _glued(n, True)


def _increasing(node: PlanarTree, floor: int) -> bool:
    return all(
        child.label > floor and _increasing(child, child.label)  # type: ignore[operator]
        for child in node.children
    )


def _sorted_children(node: PlanarTree) -> bool:
    labels = [child.label for child in node.children]
    return labels == sorted(labels) and all(_sorted_children(c) for c in node.children)  # type: ignore[type-var]


def is_member(tag: FamilyTag | str, tree: PlanarTree) -> bool:
    tag = FamilyTag(tag)
    if not is_ntree(tree):
        return False
    if tag is FamilyTag.NTREE:
        return True
    if not _increasing(tree, 0):
        return False
    return tag is FamilyTag.INCREASING or _sorted_children(tree)
