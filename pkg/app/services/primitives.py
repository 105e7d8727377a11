from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, pairwise
from math import comb, factorial, prod
from typing import Any, Callable, Iterator, Sequence

from app.services.hopf_labelled import (
    FamilyTag,
    coproduct_std,
    enumerate_family,
    is_slash_irreducible,
    slash_product,
)
from app.services.hopf_planar import coproduct, counit
from app.services.linalg import (
    LinearCombination,
    TensorCombination,
    apply_to_leg,
    lift,
    multiply_legs,
    rank_of,
)
from app.services.tree_core import (
    PlanarTree,
    dot,
    enumerate_labelled,
    enumerate_trees,
    is_irreducible,
)


logger = logging.getLogger(__name__)

DEFAULT_ALPHABET = (1, 2)


class CounitError(ValueError):
    pass


class Mode(str, Enum):
    DOT = "dot"
    SLASH = "slash"


class Family(str, Enum):
    UNLABELLED = "unlabelled"
    LABELLED = "labelled"
    NTREE = "ntree"
    INCREASING = "increasing"
    SORTED = "sorted"

    @property
    def mode(self) -> Mode:
        return Mode.DOT if self in (Family.UNLABELLED, Family.LABELLED) else Mode.SLASH


# largest degree at which exhaustive rank computation is attempted
RANK_CAPS: dict[Family, int] = {
    Family.UNLABELLED: 6,
    Family.LABELLED: 4,
    Family.NTREE: 5,
    Family.INCREASING: 5,
    Family.SORTED: 6,
}


@dataclass(frozen=True)
class DimensionSeries:
    family: Family
    components: tuple[int, ...]
    primitives: tuple[int, ...]

    def lines(self) -> Iterator[str]:
        for n in range(1, len(self.components)):
            yield f"{n}\t{self.components[n]}\t{self.primitives[n]}"


def _split_for(mode: Mode) -> Callable[[Any], TensorCombination]:
    return coproduct if mode is Mode.DOT else coproduct_std


def _multiplication_for(mode: Mode) -> Callable[[PlanarTree, PlanarTree], PlanarTree]:
    return dot if mode is Mode.DOT else slash_product


def _reduced_on_basis(tree: PlanarTree, mode: Mode) -> TensorCombination:
    return TensorCombination(
        ((a, b), c) for (a, b), c in _split_for(mode)(tree) if a.degree and b.degree
    )


def reduced_coproduct(value: Any, mode: Mode = Mode.DOT) -> TensorCombination:
    v = lift(value)
    if counit(v):
        raise CounitError("the reduced coproduct is defined on the kernel of the counit")
    return TensorCombination.total(
        _reduced_on_basis(tree, mode) * coeff for tree, coeff in v
    )


def iterated_reduced_coproduct(value: Any, n: int, mode: Mode = Mode.DOT) -> TensorCombination:
    """Apply the reduced coproduct ``n`` times, always to the first leg."""
    if n < 0:
        raise ValueError("the iteration count must be non-negative")
    v = lift(value)
    if n == 0:
        if counit(v):
            raise CounitError("the reduced coproduct is defined on the kernel of the counit")
        return TensorCombination(((tree,), coeff) for tree, coeff in v)
    legs = reduced_coproduct(v, mode)
    for _ in range(n - 1):
        legs = apply_to_leg(legs, 0, lambda tree: _reduced_on_basis(tree, mode))
    return legs


def idempotent_e(value: Any, mode: Mode = Mode.DOT) -> LinearCombination:
    """Projection onto primitives: the alternating sum of multiplied reduced coproducts."""
    v = lift(value)
    if counit(v):
        raise CounitError("the idempotent is defined on the kernel of the counit")
    degree = max((tree.degree for tree, _ in v), default=0)
    multiply = _multiplication_for(mode)
    parts: list[LinearCombination] = []
    for n in range(degree):
        legs = iterated_reduced_coproduct(v, n, mode)
        if not legs:
            break
        parts.append(multiply_legs(legs, multiply) * (-1) ** n)
    return LinearCombination.total(parts)


def irreducible_trees(
    family: Family | str, n: int, alphabet: Sequence[int] = DEFAULT_ALPHABET
) -> tuple[PlanarTree, ...]:
    family = Family(family)
    if family is Family.UNLABELLED:
        return tuple(t for t in enumerate_trees(n) if is_irreducible(t))
    if family is Family.LABELLED:
        return tuple(t for t in enumerate_labelled(n, alphabet) if is_irreducible(t))
    return tuple(
        t for t in enumerate_family(FamilyTag(family.value), n) if is_slash_irreducible(t)
    )


def primitive_basis(
    family: Family | str, n: int, alphabet: Sequence[int] = DEFAULT_ALPHABET
) -> tuple[LinearCombination, ...]:
    family = Family(family)
    if n < 1:
        raise ValueError("primitives live in positive degree")
    return tuple(idempotent_e(t, family.mode) for t in irreducible_trees(family, n, alphabet))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def component_dimension(family: Family | str, n: int, alphabet_size: int = len(DEFAULT_ALPHABET)) -> int:
    family = Family(family)
    if family is Family.UNLABELLED:
        return catalan(n)
    if family is Family.LABELLED:
        return alphabet_size**n * catalan(n)
    if family is Family.NTREE:
        return factorial(n) * catalan(n)
    if family is Family.INCREASING:
        return prod(range(1, 2 * n, 2))
    return factorial(n)


def prim_dimensions(
    family: Family | str, N: int, alphabet_size: int = len(DEFAULT_ALPHABET)
) -> DimensionSeries:
    family = Family(family)
    if N < 1:
        raise ValueError("the series needs at least one degree")
    a = [component_dimension(family, n, alphabet_size) for n in range(N + 1)]
    b = [0]
    for n in range(1, N + 1):
        b.append(a[n] - sum(a[k] * b[n - k] for k in range(1, n)))
    return DimensionSeries(family, tuple(a), tuple(b))


def prim_dimensions_by_rank(
    family: Family | str,
    N: int,
    alphabet: Sequence[int] = DEFAULT_ALPHABET,
    *,
    cap: int | None = None,
) -> tuple[int, ...]:
    family = Family(family)
    limit = RANK_CAPS[family] if cap is None else cap
    if N > limit:
        raise ValueError(f"rank computation for {family.value} is capped at degree {limit}")
    out = []
    for n in range(1, N + 1):
        basis = primitive_basis(family, n, alphabet)
        out.append(rank_of(basis))
        logger.info("%s degree %d: %d primitives span rank %d", family.value, n, len(basis), out[-1])
    return tuple(out)


def cofree_dimensions(primitives: Sequence[int], N: int) -> tuple[int, ...]:
    """Component dimensions of the tensor coalgebra on primitives, summed over compositions."""
    b = list(primitives)
    a = [1]
    for n in range(1, N + 1):
        total = 0
        for j in range(1, n + 1):
            for cuts in combinations(range(1, n), j - 1):
                total += prod(b[hi - lo] for lo, hi in pairwise((0, *cuts, n)))
        a.append(total)
    return tuple(a)
