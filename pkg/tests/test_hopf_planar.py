from math import comb

import pytest
from hypothesis import given

from app.services.hopf_planar import (
    antipode,
    coproduct,
    counit,
    dual_coproduct,
    dual_product,
    hash_product,
    hash_products,
    leftmost_branch,
    order_preserving_maps,
    pairing,
    product,
    tensor_product,
)
from app.services.linalg import LinearCombination, TensorCombination, tensor_of
from app.services.tree_core import ROOT, TreePartition, dot, enumerate_trees, parse_tree
from tests.strategies import labelled_trees, trees


LEAF = parse_tree("(())")
CHERRY = parse_tree("(()())")
LADDER = parse_tree("((()))")


def combo(*texts):
    return LinearCombination((parse_tree(text), 1) for text in texts)


class TestProduct:
    def test_leaf_times_leaf(self):
        assert product(LEAF, LEAF) == combo("((()))", "(()())")

    def test_leaf_times_cherry(self):
        assert product(LEAF, CHERRY) == combo("((()()))", "(()()())", "((())())")

    def test_number_of_addends(self):
        assert product(CHERRY, LADDER).coefficient_sum() == 10
        assert len(list(hash_products(CHERRY, LADDER))) == 10

    def test_single_hash_product(self):
        u = parse_tree("(()())")
        partition = TreePartition(u, (1,))
        assert hash_product(LEAF, u, partition, (1, 2)).text == "((())())"

    def test_targets_must_increase(self):
        partition = TreePartition(CHERRY, (1,))
        with pytest.raises(ValueError):
            hash_product(LEAF, CHERRY, partition, (2, 1))

    def test_order_preserving_maps(self):
        assert order_preserving_maps(2, CHERRY) == ((1, 2), (1, 3), (2, 3))

    @given(trees(4))
    def test_root_is_the_unit(self, t):
        assert product(ROOT, t) == LinearCombination.of(t)
        assert product(t, ROOT) == LinearCombination.of(t)

    @given(trees(3), trees(3))
    def test_addends_are_binomial(self, t, u):
        assert product(t, u).coefficient_sum() == comb(t.degree + u.degree, t.degree)

    @given(trees(2), trees(2), trees(2))
    def test_associativity(self, x, y, z):
        assert product(product(x, y), z) == product(x, product(y, z))


class TestCoproduct:
    def test_splits_along_postorder(self):
        t = parse_tree("(()(()))")
        expected = TensorCombination(
            [
                ((ROOT, t), 1),
                ((LEAF, LADDER), 1),
                ((CHERRY, LEAF), 1),
                ((t, ROOT), 1),
            ]
        )
        assert coproduct(t) == expected

    def test_counit(self):
        assert counit(ROOT) == 1
        assert counit(LEAF) == 0
        assert counit(combo("()", "(())") * 3) == 3

    @given(trees(4))
    def test_degree_plus_one_terms(self, t):
        assert coproduct(t).coefficient_sum() == t.degree + 1

    @given(trees(4))
    def test_coassociativity(self, t):
        once = coproduct(t)
        left = TensorCombination.total(tensor_of(coproduct(a), b) * c for (a, b), c in once)
        right = TensorCombination.total(tensor_of(a, coproduct(b)) * c for (a, b), c in once)
        assert left == right


class TestAntipode:
    def test_small_degrees(self):
        assert antipode(LEAF) == -LinearCombination.of(LEAF)
        assert antipode(CHERRY) == LinearCombination.of(LADDER)
        assert antipode(LADDER) == LinearCombination.of(CHERRY)

    @given(trees(4))
    def test_antipode_identity(self, t):
        unit = LinearCombination.of(ROOT, 1 if t.degree == 0 else 0)
        total = LinearCombination.total(product(antipode(a), b) * c for (a, b), c in coproduct(t))
        assert total == unit

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            antipode(enumerate_trees(9)[0])


class TestDualStructure:
    def test_leftmost_branch(self):
        assert leftmost_branch(ROOT) == (1,)
        assert leftmost_branch(LADDER) == (1, 2, 3)
        assert leftmost_branch(CHERRY) == (1, 3)

    def test_leaf_times_leaf(self):
        assert dual_product(LEAF, LEAF) == combo("((()))", "(()())")

    def test_groups_go_to_higher_nodes_first(self):
        assert dual_product(CHERRY, LEAF) == combo("((()()))", "(()()())", "(()(()))")

    def test_deconcatenation(self):
        t = parse_tree("(()(()))")
        expected = TensorCombination([((ROOT, t), 1), ((LEAF, LADDER), 1), ((t, ROOT), 1)])
        assert dual_coproduct(t) == expected

    @given(trees(2), trees(2))
    def test_pairing_against_coproduct(self, t, w):
        glued = dual_product(t, w)
        for u in enumerate_trees(t.degree + w.degree):
            assert pairing(glued, u) == pairing(tensor_of(t, w), coproduct(u))

    @given(trees(3), trees(3))
    def test_addends(self, t, w):
        k = len(t.children)
        depth = len(leftmost_branch(w)) - 1
        assert dual_product(t, w).coefficient_sum() == comb(k + depth, k)


class TestLabelledTrees:
    def test_labels_are_carried_along(self):
        one, two = parse_tree("((1))"), parse_tree("((2))")
        assert product(one, two) == combo("((1)(2))", "((1 (2)))")
        assert product(one, one) == combo("((1)(1))", "((1 (1)))")

    @given(labelled_trees(4))
    def test_coassociativity(self, t):
        once = coproduct(t)
        left = TensorCombination.total(tensor_of(coproduct(a), b) * c for (a, b), c in once)
        right = TensorCombination.total(tensor_of(a, coproduct(b)) * c for (a, b), c in once)
        assert left == right

    @given(labelled_trees(1), labelled_trees(1), labelled_trees(1))
    def test_associativity(self, x, y, z):
        assert product(product(x, y), z) == product(x, product(y, z))

    @given(labelled_trees(2), labelled_trees(2))
    def test_compatibility(self, x, y):
        assert coproduct(product(x, y)) == tensor_product(coproduct(x), coproduct(y))

    @given(labelled_trees(2), labelled_trees(2))
    def test_infinitesimal_relation(self, x, y):
        expected = (
            TensorCombination(((a, dot(b, y)), c) for (a, b), c in coproduct(x))
            + TensorCombination(((dot(x, a), b), c) for (a, b), c in coproduct(y))
            - TensorCombination.of((x, y))
        )
        assert coproduct(dot(x, y)) == expected

    @given(labelled_trees(3))
    def test_counit(self, t):
        right = LinearCombination.total(LinearCombination.of(b, c * counit(a)) for (a, b), c in coproduct(t))
        assert right == LinearCombination.of(t)
