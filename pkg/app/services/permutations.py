from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, pairwise, permutations
from typing import Any, Iterable, Sequence

from app.services.hopf_labelled import FamilyTag, enumerate_family, is_member
from app.services.linalg import LinearCombination, TensorCombination, extend_bilinear, extend_linear
from app.services.tree_core import ROOT, PlanarTree, graft


logger = logging.getLogger(__name__)

_DIGITS = re.compile(r"[1-9]+")


class WordError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Word:
    """A word over positive integers: 2-permutations and permutations alike."""

    letters: tuple[int, ...] = ()

    @cached_property
    def text(self) -> str:
        return " ".join(map(str, self.letters))

    @property
    def key(self) -> str:
        return "word:" + self.text

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: Word) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"


EMPTY = Word()


def parse_word(text: str) -> Word:
    """Space-separated letters; an unseparated digit string is read one letter per digit."""
    source = text.strip()
    if not source:
        return EMPTY
    if " " not in source and "\t" not in source and _DIGITS.fullmatch(source):
        return Word(tuple(int(ch) for ch in source))
    try:
        letters = tuple(int(part) for part in source.split())
    except ValueError as exc:
        raise WordError(f"{text!r} is not a word of positive integers") from exc
    if any(letter < 1 for letter in letters):
        raise WordError(f"{text!r} contains a non-positive letter")
    return Word(letters)


def render_word(word: Word) -> str:
    return word.text


def word_size(word: Word) -> int:
    return len(word.letters) // 2


def is_two_permutation(word: Word) -> bool:
    n = word_size(word)
    counts = Counter(word.letters)
    return len(word.letters) == 2 * n and counts == Counter({k: 2 for k in range(1, n + 1)})


def is_permutation(word: Word) -> bool:
    return sorted(word.letters) == list(range(1, len(word.letters) + 1))


def _between(word: Word) -> dict[int, tuple[int, ...]]:
    first: dict[int, int] = {}
    out: dict[int, tuple[int, ...]] = {}
    for index, letter in enumerate(word.letters):
        if letter in first:
            out[letter] = word.letters[first[letter] + 1 : index]
        else:
            first[letter] = index
    return out


def is_treed(word: Word) -> bool:
    if not is_two_permutation(word):
        return False
    return all(
        all(c == 2 for c in Counter(segment).values()) for segment in _between(word).values()
    )


def is_stirling(word: Word) -> bool:
    if not is_two_permutation(word):
        return False
    return all(
        all(h > k for h in segment) for k, segment in _between(word).items()
    )


def require_treed(*words: Word) -> None:
    for word in words:
        if not is_treed(word):
            raise WordError(f"{word.text!r} is not a treed permutation")


def standardize_word(word: Word) -> Word:
    ranks = {letter: rank for rank, letter in enumerate(sorted(set(word.letters)), start=1)}
    return Word(tuple(ranks[letter] for letter in word.letters))


def shift_word(word: Word, m: int) -> Word:
    return Word(tuple(letter + m for letter in word.letters))


def restrict_word(word: Word, letters: Iterable[int]) -> Word:
    keep = set(letters)
    return Word(tuple(letter for letter in word.letters if letter in keep))


def concatenate(*words: Word) -> Word:
    return Word(tuple(letter for word in words for letter in word.letters))


def parts(word: Word) -> tuple[Word, ...]:
    """Split a treed word into its ``k ... k`` parts."""
    out: list[Word] = []
    letters = word.letters
    i = 0
    while i < len(letters):
        try:
            j = letters.index(letters[i], i + 1)
        except ValueError as exc:
            raise WordError(f"{word.text!r} does not split into parts") from exc
        out.append(Word(letters[i : j + 1]))
        i = j + 1
    return tuple(out)


def second_occurrence_order(word: Word) -> tuple[int, ...]:
    seen: set[int] = set()
    order: list[int] = []
    for letter in word.letters:
        if letter in seen:
            order.append(letter)
        else:
            seen.add(letter)
    return tuple(order)


def _tour(tree: PlanarTree) -> tuple[int, ...]:
    out: list[int] = []
    for child in tree.children:
        out.append(child.label)  # type: ignore[arg-type]
        out.extend(_tour(child))
        out.append(child.label)  # type: ignore[arg-type]
    return tuple(out)


def euler_tour(tree: PlanarTree) -> Word:
    """Read every label twice while walking around the border from root to root."""
    if tree.degree and not tree.is_labelled:
        raise WordError(f"{tree.text} carries no labels to read")
    return Word(_tour(tree))


def _forest(letters: tuple[int, ...]) -> tuple[PlanarTree, ...]:
    return tuple(
        PlanarTree(_forest(part.letters[1:-1]), part.letters[0]) for part in parts(Word(letters))
    )


def euler_tour_inverse(word: Word) -> PlanarTree:
    require_treed(word)
    return PlanarTree(_forest(word.letters))


def word_partitions(word: Word, k: int | None = None) -> tuple[tuple[Word, ...], ...]:
    """Restrictions of ``word`` to consecutive runs of its second-occurrence order."""
    order = second_occurrence_order(word)
    n = len(order)
    if n == 0:
        return ()
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"a word of size {n} has no partition into {k} blocks")
    counts = range(1, n + 1) if k is None else (k,)
    return tuple(
        tuple(restrict_word(word, order[a:b]) for a, b in pairwise((0, *cuts, n)))
        for size in counts
        for cuts in combinations(range(1, n), size - 1)
    )


def treed_hash_product(u: Word, blocks: Sequence[Word], targets: Sequence[int]) -> Word:
    """Insert block ``r`` just before the second occurrence of ``targets[r]``; 0 means the end."""
    if len(blocks) != len(targets):
        raise ValueError("every block needs exactly one target")
    order = {letter: rank for rank, letter in enumerate(second_occurrence_order(u))}
    order[0] = len(order)
    try:
        ranks = [order[target] for target in targets]
    except KeyError as exc:
        raise ValueError(f"target {exc.args[0]} is not a letter of {u.text!r}") from exc
    if any(a >= b for a, b in pairwise(ranks)):
        raise ValueError(f"targets {tuple(targets)} are not order preserving")

    placed = dict(zip(targets, blocks))
    seen: set[int] = set()
    out: list[int] = []
    for letter in u.letters:
        if letter in seen and letter in placed:
            out.extend(placed[letter].letters)
        seen.add(letter)
        out.append(letter)
    if 0 in placed:
        out.extend(placed[0].letters)
    return Word(tuple(out))


@lru_cache(maxsize=65536)
def _treed_product(u: Word, w: Word) -> LinearCombination:
    if not w.letters:
        return LinearCombination.of(u)
    shifted = shift_word(w, word_size(u))
    order = (*second_occurrence_order(u), 0)
    terms = [
        (treed_hash_product(u, blocks, targets), 1)
        for blocks in word_partitions(shifted)
        for targets in combinations(order, len(blocks))
    ]
    return LinearCombination(terms)


def treed_product(left: Any, right: Any) -> LinearCombination:
    return _treed_multiply(left, right)


_treed_multiply = extend_bilinear(_treed_product)


def _treed_coproduct(u: Word) -> TensorCombination:
    order = second_occurrence_order(u)
    return TensorCombination(
        (
            (
                standardize_word(restrict_word(u, order[:i])),
                standardize_word(restrict_word(u, order[i:])),
            ),
            1,
        )
        for i in range(len(order) + 1)
    )


def treed_coproduct(value: Any) -> TensorCombination:
    return _treed_split(value)


_treed_split = extend_linear(_treed_coproduct, into=TensorCombination)


@lru_cache(maxsize=None)
def enumerate_stirling(n: int) -> tuple[Word, ...]:
    """Stirling words grown by inserting ``n n`` between the letters of smaller ones."""
    if n < 0:
        raise ValueError("size must be non-negative")
    if n == 0:
        return (EMPTY,)
    words = {
        Word(w.letters[:i] + (n, n) + w.letters[i:])
        for w in enumerate_stirling(n - 1)
        for i in range(len(w.letters) + 1)
    }
    return tuple(sorted(words))


def enumerate_treed(n: int) -> tuple[Word, ...]:
    return tuple(sorted(euler_tour(t) for t in enumerate_family(FamilyTag.NTREE, n)))


def enumerate_permutations(n: int) -> tuple[Word, ...]:
    return tuple(sorted(Word(p) for p in permutations(range(1, n + 1))))


def sorted_to_permutation(tree: PlanarTree) -> Word:
    """Labels read in post-order."""
    if not is_member(FamilyTag.SORTED, tree):
        raise WordError(f"{tree.text} is not a sorted tree")
    return Word(tree.labels)  # type: ignore[arg-type]


def permutation_to_sorted(word: Word) -> PlanarTree:
    if not is_permutation(word):
        raise WordError(f"{word.text!r} is not a permutation")
    tree = ROOT
    for j in range(1, len(word.letters) + 1):
        subword = [letter for letter in word.letters if letter <= j]
        index = subword.index(j)
        if index == len(subword) - 1:
            target = tree.degree + 1
        else:
            positions = {ref.label: ref.position for ref in tree.nodes}
            target = positions[subword[index + 1]]
        tree = graft(tree, target, PlanarTree((PlanarTree((), j),)), "rightmost")
    return tree


@lru_cache(maxsize=65536)
def _mr_product(u: Word, v: Word) -> LinearCombination:
    m, n = len(u), len(v)
    shifted = shift_word(v, m).letters
    terms = []
    for slots in combinations(range(m + n), m):
        left, right = iter(u.letters), iter(shifted)
        chosen = set(slots)
        terms.append((Word(tuple(next(left) if i in chosen else next(right) for i in range(m + n))), 1))
    return LinearCombination(terms)


def mr_product(left: Any, right: Any) -> LinearCombination:
    """Shifted shuffle product of permutations."""
    return _mr_multiply(left, right)


_mr_multiply = extend_bilinear(_mr_product)


def _mr_coproduct(u: Word) -> TensorCombination:
    return TensorCombination(
        ((standardize_word(Word(u.letters[:i])), standardize_word(Word(u.letters[i:]))), 1)
        for i in range(len(u) + 1)
    )


def mr_coproduct(value: Any) -> TensorCombination:
    return _mr_split(value)


_mr_split = extend_linear(_mr_coproduct, into=TensorCombination)
