import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.services.hopf_labelled import (
    NotAnNTreeError,
    antipode_std,
    coproduct_std,
    enumerate_family,
    enumerate_increasing_by_gluing,
    is_member,
    is_slash_irreducible,
    require_ntree,
    shift,
    slash_irreducible_factors,
    slash_product,
    standardize,
    standardize_combination,
    star_product,
)
from app.services.hopf_planar import product
from app.services.linalg import LinearCombination, TensorCombination
from app.services.tree_core import ROOT, LabellingError, dot, parse_tree
from tests.strategies import family_trees


ONE = parse_tree("((1))")


class TestFamilies:
    @pytest.mark.parametrize(
        "tag, counts",
        [
            ("ntree", [1, 1, 4, 30, 336]),
            ("increasing", [1, 1, 3, 15, 105]),
            ("sorted", [1, 1, 2, 6, 24]),
        ],
    )
    def test_counts(self, tag, counts):
        assert [len(enumerate_family(tag, n)) for n in range(5)] == counts

    @pytest.mark.parametrize("n", range(5))
    @pytest.mark.parametrize("tag", ["increasing", "sorted"])
    def test_gluing_matches_filter(self, tag, n):
        filtered = tuple(t for t in enumerate_family("ntree", n) if is_member(tag, t))
        assert enumerate_family(tag, n) == filtered

    @pytest.mark.parametrize("n", range(5))
    def test_increasing_gluing_matches_filter(self, n):
        filtered = tuple(t for t in enumerate_family("ntree", n) if is_member("increasing", t))
        assert enumerate_increasing_by_gluing(n) == filtered

    @pytest.mark.parametrize("tag", ["ntree", "increasing", "sorted"])
    def test_members(self, tag):
        assert all(is_member(tag, t) for t in enumerate_family(tag, 3))

    def test_membership(self):
        assert is_member("sorted", parse_tree("((1 (2)))"))
        assert is_member("increasing", parse_tree("((2)(1))"))
        assert not is_member("sorted", parse_tree("((2)(1))"))
        assert not is_member("increasing", parse_tree("((2 (1)))"))
        assert not is_member("ntree", parse_tree("(())"))

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            enumerate_family("binary", 2)


class TestRelabelling:
    def test_standardize(self):
        t = parse_tree("((7 (2))(9)(4 (15)))")
        assert standardize(t).text == "((3 (1))(4)(2 (5)))"

    def test_standardize_rejects_repeats(self):
        with pytest.raises(LabellingError):
            standardize(parse_tree("((1)(1))"))

    def test_shift(self):
        assert shift(parse_tree("((2)(1))"), 3).text == "((5)(4))"
        with pytest.raises(ValueError):
            shift(ONE, -1)

    def test_require_ntree(self):
        with pytest.raises(NotAnNTreeError):
            require_ntree(parse_tree("((2))"))

    def test_standardized_dot(self):
        t, w = parse_tree("((3))"), parse_tree("((7 (5)))")
        assert standardize(dot(t, w)).text == "((1)(3 (2)))"
        assert standardize(dot(t, w)) == slash_product(standardize(t), standardize(w))

    def test_standardized_product(self):
        t, w = parse_tree("((3))"), parse_tree("((8))")
        expected = LinearCombination([(parse_tree("((1)(2))"), 1), (parse_tree("((1 (2)))"), 1)])
        assert standardize_combination(product(t, w)) == expected

    @given(family_trees("ntree", 2), family_trees("ntree", 2), st.integers(0, 3))
    def test_standardization_splits_over_dot(self, x, y, gap):
        t, w = shift(x, gap), shift(y, x.degree + 2 * gap)
        assert standardize(dot(t, w)) == slash_product(standardize(t), standardize(w))

    @given(family_trees("ntree", 2), family_trees("ntree", 2), st.integers(0, 3))
    def test_standardization_splits_over_product(self, x, y, gap):
        t, w = shift(x, gap), shift(y, x.degree + 2 * gap)
        assert standardize_combination(product(t, w)) == star_product(standardize(t), standardize(w))


class TestSlash:
    def test_slash_product(self):
        assert slash_product(ONE, ONE).text == "((1)(2))"
        assert slash_product(ROOT, ONE) == ONE

    def test_factors(self):
        assert [f.text for f in slash_irreducible_factors(parse_tree("((1)(2))"))] == ["((1))", "((1))"]
        assert [f.text for f in slash_irreducible_factors(parse_tree("((2)(1 (3)))"))] == [
            "((2)(1 (3)))"
        ]

    def test_irreducible(self):
        assert is_slash_irreducible(parse_tree("((2)(1 (3)))"))
        assert not is_slash_irreducible(parse_tree("((1)(3 (2)))"))

    @given(family_trees("ntree", 4))
    def test_factors_rebuild_tree(self, t):
        rebuilt = ROOT
        for factor in slash_irreducible_factors(t):
            rebuilt = slash_product(rebuilt, factor)
        assert rebuilt == t


class TestStandardizedBialgebra:
    def test_star_product(self):
        expected = LinearCombination([(parse_tree("((1)(2))"), 1), (parse_tree("((1 (2)))"), 1)])
        assert star_product(ONE, ONE) == expected

    def test_coproduct(self):
        t = parse_tree("((2 (1)))")
        expected = TensorCombination([((ROOT, t), 1), ((ONE, ONE), 1), ((t, ROOT), 1)])
        assert coproduct_std(t) == expected

    def test_coproduct_needs_ntree(self):
        with pytest.raises(NotAnNTreeError):
            coproduct_std(parse_tree("((3))"))

    def test_antipode(self):
        assert antipode_std(ONE) == -LinearCombination.of(ONE)

    @given(family_trees("ntree", 3))
    def test_antipode_identity(self, t):
        unit = LinearCombination.of(ROOT, 1 if t.degree == 0 else 0)
        total = LinearCombination.total(
            star_product(antipode_std(a), b) * c for (a, b), c in coproduct_std(t)
        )
        assert total == unit

    @pytest.mark.parametrize("tag", ["increasing", "sorted"])
    def test_families_are_closed(self, tag):
        family = [t for n in range(3) for t in enumerate_family(tag, n)]
        for x in family:
            for y in family:
                assert all(is_member(tag, k) for k in star_product(x, y).support())
            for a, b in coproduct_std(x).support():
                assert is_member(tag, a) and is_member(tag, b)
