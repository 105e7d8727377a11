from math import comb

import pytest
from hypothesis import given

from app.services.hopf_labelled import enumerate_family
from app.services.linalg import LinearCombination, TensorCombination
from app.services.permutations import (
    EMPTY,
    WordError,
    concatenate,
    enumerate_permutations,
    enumerate_stirling,
    enumerate_treed,
    euler_tour,
    euler_tour_inverse,
    is_permutation,
    is_stirling,
    is_treed,
    is_two_permutation,
    mr_coproduct,
    mr_product,
    parse_word,
    parts,
    permutation_to_sorted,
    second_occurrence_order,
    sorted_to_permutation,
    standardize_word,
    treed_coproduct,
    treed_hash_product,
    treed_product,
    word_partitions,
)
from app.services.tree_core import dot, irreducible_factors, parse_tree
from tests.strategies import family_trees, permutations


def w(text):
    return parse_word(text)


class TestWords:
    def test_parse(self):
        assert w("2 1 1 2").letters == (2, 1, 1, 2)
        assert w("2112") == w("2 1 1 2")
        assert w("") == EMPTY
        assert w("10 10").letters == (10, 10)

    @pytest.mark.parametrize("text", ["1 x", "0 1", "-1"])
    def test_parse_rejects(self, text):
        with pytest.raises(WordError):
            parse_word(text)

    def test_predicates(self):
        assert is_two_permutation(w("1 2 1 2"))
        assert not is_two_permutation(w("1 1 1"))
        assert is_treed(w("1 1 2 2"))
        assert not is_treed(w("1 2 1 2"))
        assert is_stirling(w("1 2 2 1"))
        assert not is_stirling(w("2 1 1 2"))
        assert is_permutation(w("2 4 1 3"))
        assert not is_permutation(w("1 1"))

    def test_helpers(self):
        assert standardize_word(w("7 3 3 7")) == w("2 1 1 2")
        assert second_occurrence_order(w("2 1 5 5 4 3 3 4 1 2")) == (5, 3, 4, 1, 2)
        assert [p.text for p in parts(w("1 3 3 1 2 2"))] == ["1 3 3 1", "2 2"]
        with pytest.raises(WordError):
            parts(w("1 2 1 2 3"))

    def test_partitions(self):
        blocks = word_partitions(w("1 2 2 1"))
        assert blocks == ((w("1 2 2 1"),), (w("2 2"), w("1 1")))


class TestEulerTour:
    def test_example(self):
        t = parse_tree("((1 (3))(5 (6 (4))(2)))")
        assert euler_tour(t) == w("1 3 3 1 5 6 4 4 6 2 2 5")

    @given(family_trees("ntree", 4))
    def test_inverse(self, t):
        assert euler_tour_inverse(euler_tour(t)) == t

    def test_inverse_needs_treed(self):
        with pytest.raises(WordError):
            euler_tour_inverse(w("1 2 1 2"))

    def test_concatenation_over_factors(self):
        a, b = parse_tree("((2 (1)))"), parse_tree("((4)(3))")
        assert euler_tour(dot(a, b)) == concatenate(euler_tour(a), euler_tour(b))
        assert euler_tour(dot(a, b)) == w("2 1 1 2 4 4 3 3")

    @given(family_trees("ntree", 5))
    def test_tour_of_factors(self, t):
        tours = (euler_tour(f) for f in irreducible_factors(t))
        assert euler_tour(t) == concatenate(*tours)

    def test_unlabelled_tree(self):
        with pytest.raises(WordError):
            euler_tour(parse_tree("(())"))

    def test_increasing_trees_give_stirling_words(self):
        tours = {euler_tour(t) for t in enumerate_family("increasing", 3)}
        assert tours == set(enumerate_stirling(3))


class TestTreedAlgebra:
    def test_hash_product(self):
        u = w("4 2 2 3 1 1 3 4")
        blocks = (w("5 5 7 7"), w("9 8 8 9"), w("6 6"))
        result = treed_hash_product(u, blocks, (2, 3, 0))
        assert result == w("4 2 5 5 7 7 2 3 1 1 9 8 8 9 3 4 6 6")

    def test_hash_product_targets_must_follow_order(self):
        with pytest.raises(ValueError):
            treed_hash_product(w("1 1 2 2"), (w("3 3"), w("4 4")), (2, 1))

    def test_product_addends(self):
        expected = LinearCombination(
            (w(text), 1)
            for text in [
                "2 1 5 5 4 3 3 4 1 2",
                "2 1 1 5 5 4 3 3 4 2",
                "2 1 1 2 5 5 4 3 3 4",
                "2 1 5 5 1 4 3 3 4 2",
                "2 1 5 5 1 2 4 3 3 4",
                "2 1 1 5 5 2 4 3 3 4",
                "2 1 5 5 3 3 1 4 4 2",
                "2 1 5 5 3 3 1 2 4 4",
                "2 1 1 5 5 3 3 2 4 4",
                "2 1 5 5 1 3 3 2 4 4",
            ]
        )
        assert treed_product(w("2112"), w("332112")) == expected

    def test_small_product(self):
        expected = LinearCombination([(w("1 2 2 1"), 1), (w("1 1 2 2"), 1)])
        assert treed_product(w("1 1"), w("1 1")) == expected

    def test_coproduct(self):
        u = w("2 1 5 5 4 3 3 4 1 2")
        split = treed_coproduct(u)
        assert len(split) == 6
        for left, right in [
            ("", "2 1 5 5 4 3 3 4 1 2"),
            ("1 1", "2 1 4 3 3 4 1 2"),
            ("2 2 1 1", "2 1 3 3 1 2"),
            ("3 3 2 1 1 2", "2 1 1 2"),
            ("1 4 4 3 2 2 3 1", "1 1"),
            ("2 1 5 5 4 3 3 4 1 2", ""),
        ]:
            assert split.coefficient((w(left), w(right))) == 1

    def test_enumeration(self):
        assert len(enumerate_treed(3)) == 30
        assert all(is_treed(u) for u in enumerate_treed(3))


class TestStirling:
    def test_degree_two(self):
        assert [u.text for u in enumerate_stirling(2)] == ["1 1 2 2", "1 2 2 1", "2 2 1 1"]

    def test_counts(self):
        assert [len(enumerate_stirling(n)) for n in range(6)] == [1, 1, 3, 15, 105, 945]


class TestSortedTrees:
    def test_example(self):
        t = parse_tree("((1 (2)(4))(3))")
        assert sorted_to_permutation(t) == w("2413")
        assert permutation_to_sorted(w("2413")) == t

    @given(family_trees("sorted", 5))
    def test_round_trip(self, t):
        assert permutation_to_sorted(sorted_to_permutation(t)) == t

    @given(permutations(5))
    def test_inverse_round_trip(self, p):
        assert sorted_to_permutation(permutation_to_sorted(p)) == p

    def test_rejects_non_sorted(self):
        with pytest.raises(WordError):
            sorted_to_permutation(parse_tree("((2)(1))"))
        with pytest.raises(WordError):
            permutation_to_sorted(w("1 1"))


class TestMalvenutoReutenauer:
    def test_product(self):
        expected = LinearCombination([(w("1 2"), 1), (w("2 1"), 1)])
        assert mr_product(w("1"), w("1")) == expected

    @given(permutations(3), permutations(3))
    def test_product_addends(self, p, q):
        assert mr_product(p, q).coefficient_sum() == comb(len(p) + len(q), len(p))

    def test_coproduct(self):
        expected = TensorCombination(
            [
                ((EMPTY, w("2 1 3")), 1),
                ((w("1"), w("1 2")), 1),
                ((w("2 1"), w("1")), 1),
                ((w("2 1 3"), EMPTY), 1),
            ]
        )
        assert mr_coproduct(w("2 1 3")) == expected

    def test_enumeration(self):
        assert len(enumerate_permutations(4)) == 24
