from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence, Tuple, TypeVar, Union

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix


logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
C = TypeVar("C", bound="LinearCombination")


class BasisNamespaceError(ValueError):
    pass


def namespace_of(key: Any) -> str | tuple[str, ...]:
    if isinstance(key, tuple):
        return tuple(namespace_of(k) for k in key)
    return key.key.split(":", 1)[0]


def _sort_key(key: Any) -> Any:
    if isinstance(key, tuple):
        return tuple(k.key for k in key)
    return key.key


def _normalize(value: Any) -> Scalar:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Rational):
        return _normalize(Fraction(value.numerator, value.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {value!r}")


class LinearCombination:
    """Finitely supported combination of basis elements with exact coefficients.

    Basis elements expose a namespaced ``key`` string ("tree:...", "word:...",
    "binary:..."); identity and iteration order both follow that key.
    Instances are never mutated after construction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = ()) -> None:
        acc: dict[Any, Any] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for basis, coeff in items:
            acc[basis] = acc.get(basis, 0) + coeff
        ordered = sorted(acc.items(), key=lambda item: _sort_key(item[0]))
        self._terms: dict[Any, Scalar] = {
            basis: _normalize(coeff) for basis, coeff in ordered if coeff != 0
        }

    @classmethod
    def of(cls: type[C], basis: Any, coeff: Scalar = 1) -> C:
        return cls(((basis, coeff),))

    @classmethod
    def total(cls: type[C], parts: Iterable[LinearCombination]) -> C:
        return cls((basis, coeff) for part in parts for basis, coeff in part)

    def __iter__(self) -> Iterator[tuple[Any, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, basis: Any) -> bool:
        return basis in self._terms

    def support(self) -> tuple[Any, ...]:
        return tuple(self._terms)

    def coefficient(self, basis: Any) -> Scalar:
        return self._terms.get(basis, 0)

    def coefficient_sum(self) -> Scalar:
        """Sum of all coefficients; counts addends with multiplicity."""
        return _normalize(sum(self._terms.values(), 0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return type(self) is type(other) and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self: C, other: LinearCombination) -> C:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return type(self)(list(self) + list(other))

    def __sub__(self: C, other: LinearCombination) -> C:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return type(self)(list(self) + [(b, -c) for b, c in other])

    def __neg__(self: C) -> C:
        return type(self)((b, -c) for b, c in self)

    def __mul__(self: C, scalar: Any) -> C:
        if isinstance(scalar, LinearCombination):
            return NotImplemented
        factor = _normalize(scalar)
        return type(self)((b, c * factor) for b, c in self)

    __rmul__ = __mul__

    def _format_key(self, basis: Any) -> str:
        return basis.key

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{self._format_key(b)}" for b, c in self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class TensorCombination(LinearCombination):
    """Combination over ordered tuples of basis elements (tensor legs)."""

    __slots__ = ()

    def _format_key(self, basis: Tuple[Any, ...]) -> str:
        return " (x) ".join(leg.key for leg in basis)

    @property
    def arity(self) -> int | None:
        for legs, _ in self:
            return len(legs)
        return None


def lift(value: Any) -> LinearCombination:
    """Accept either a combination or a single basis element."""
    if isinstance(value, LinearCombination):
        return value
    return LinearCombination.of(value)


def _legs(key: Any) -> tuple[Any, ...]:
    return key if isinstance(key, tuple) else (key,)


def tensor_of(*factors: Any) -> TensorCombination:
    """Tensor product of combinations; tuple keys are concatenated."""
    terms: list[tuple[tuple[Any, ...], Scalar]] = [((), 1)]
    for factor in factors:
        combo = lift(factor)
        terms = [
            (legs + _legs(basis), coeff * c)
            for legs, coeff in terms
            for basis, c in combo
        ]
    return TensorCombination(terms)


def extend_linear(
    rule: Callable[[Any], Any], *, into: type[C] = LinearCombination  # type: ignore[assignment]
) -> Callable[[Any], C]:
    """Extend a rule defined on basis elements to combinations."""

    def apply(value: Any) -> C:
        out: list[tuple[Any, Scalar]] = []
        for basis, coeff in lift(value):
            for image, c in lift(rule(basis)):
                out.append((image, coeff * c))
        return into(out)

    return apply


def extend_bilinear(
    rule: Callable[[Any, Any], Any], *, into: type[C] = LinearCombination  # type: ignore[assignment]
) -> Callable[[Any, Any], C]:
    """Extend a rule defined on pairs of basis elements to pairs of combinations."""

    def apply(left: Any, right: Any) -> C:
        out: list[tuple[Any, Scalar]] = []
        right_terms = list(lift(right))
        for a, ca in lift(left):
            for b, cb in right_terms:
                for image, c in lift(rule(a, b)):
                    out.append((image, ca * cb * c))
        return into(out)

    return apply


def componentwise(rule: Callable[[Any, Any], Any]) -> Callable[[Any, Any], TensorCombination]:
    """Product on tensors: (a1 x ... x ak)(b1 x ... x bk) = rule(a1,b1) x ... x rule(ak,bk)."""

    def apply(left: TensorCombination, right: TensorCombination) -> TensorCombination:
        parts: list[TensorCombination] = []
        right_terms = list(right)
        for legs_a, ca in left:
            for legs_b, cb in right_terms:
                if len(legs_a) != len(legs_b):
                    raise ValueError("tensor legs differ in number")
                images = [rule(a, b) for a, b in zip(legs_a, legs_b)]
                parts.append(tensor_of(*images) * (ca * cb))
        return TensorCombination.total(parts)

    return apply


def apply_to_leg(
    value: TensorCombination, index: int, rule: Callable[[Any], Any]
) -> TensorCombination:
    """Apply a basis-level map to one leg; tensor images are spliced in place."""
    parts: list[TensorCombination] = []
    for legs, coeff in value:
        image = rule(legs[index])
        if not isinstance(image, LinearCombination):
            image = LinearCombination.of(image)
        for inner, c in image:
            parts.append(
                TensorCombination.of(legs[:index] + _legs(inner) + legs[index + 1 :], coeff * c)
            )
    return TensorCombination.total(parts)


def multiply_legs(value: TensorCombination, rule: Callable[[Any, Any], Any]) -> LinearCombination:
    """Left fold of a basis-level multiplication over the legs of every term."""
    multiply = extend_bilinear(rule)
    parts: list[LinearCombination] = []
    for legs, coeff in value:
        acc: LinearCombination = LinearCombination.of(legs[0])
        for leg in legs[1:]:
            acc = multiply(acc, leg)
        parts.append(acc * coeff)
    return LinearCombination.total(parts)


def pairing(left: Any, right: Any) -> Scalar:
    """Bilinear pairing for which distinct basis keys are orthogonal and each key pairs to 1."""
    a, b = lift(left), lift(right)
    spaces_a = {namespace_of(k) for k in a.support()}
    spaces_b = {namespace_of(k) for k in b.support()}
    if spaces_a and spaces_b and spaces_a != spaces_b:
        raise BasisNamespaceError(
            f"cannot pair {sorted(map(str, spaces_a))} with {sorted(map(str, spaces_b))}"
        )
    return _normalize(sum((c * b.coefficient(k) for k, c in a), 0))


def rank_of(span: Sequence[LinearCombination]) -> int:
    """Exact rank of the span over the rationals.

    Rows are scaled to integers and reduced with sympy's sparse fraction-free
    Gauss-Jordan elimination, so no coefficient is ever rounded.
    """
    rows = [lift(v) for v in span if lift(v)]
    if not rows:
        return 0

    columns = {k: i for i, k in enumerate(sorted({k for v in rows for k in v.support()}, key=_sort_key))}
    elements: dict[int, dict[int, Any]] = {}
    for r, row in enumerate(rows):
        scale = lcm(*(Fraction(c).denominator for _, c in row))
        elements[r] = {columns[k]: ZZ(int(Fraction(c) * scale)) for k, c in row}

    matrix = DomainMatrix(elements, (len(rows), len(columns)), ZZ)
    _, _, pivots = matrix.rref_den(method="FF")
    logger.debug("rank of %dx%d span is %d", len(rows), len(columns), len(pivots))
    return len(pivots)