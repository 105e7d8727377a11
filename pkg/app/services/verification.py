from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Callable, Iterator

from app.services import binary_trees as bt
from app.services import hopf_labelled as hl
from app.services import hopf_planar as hp
from app.services import permutations as pm
from app.services import primitives as pr
from app.services.linalg import (
    LinearCombination,
    TensorCombination,
    componentwise,
    extend_linear,
    lift,
    pairing,
    tensor_of,
)
from app.services.tree_core import (
    ROOT,
    PlanarTree,
    convex_subtree,
    dot,
    enumerate_labelled,
    enumerate_trees,
    irreducible_factors,
    partitions,
)


logger = logging.getLogger(__name__)

LABEL_ALPHABET = (1, 2)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, passed: bool, detail: str) -> None:
        self.checked += 1
        if not passed:
            self.violations.append(detail)
            logger.warning("%s: %s", self.name, detail)


Suite = Callable[[int], SuiteResult]

SUITES: dict[str, Suite] = {}


def suite(name: str) -> Callable[[Suite], Suite]:
    def register(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn

    return register


def _trees_upto(maxdeg: int) -> list[PlanarTree]:
    return [t for n in range(maxdeg + 1) for t in enumerate_trees(n)]


def _ntrees_upto(maxdeg: int, tag: hl.FamilyTag = hl.FamilyTag.NTREE) -> list[PlanarTree]:
    return [t for n in range(maxdeg + 1) for t in hl.enumerate_family(tag, n)]


def _pairs(trees: list[PlanarTree], maxdeg: int) -> Iterator[tuple[PlanarTree, PlanarTree]]:
    for x in trees:
        for y in trees:
            if x.degree + y.degree <= maxdeg:
                yield x, y


def _triples(trees: list[PlanarTree], maxdeg: int) -> Iterator[tuple[PlanarTree, ...]]:
    for x, y in _pairs(trees, maxdeg):
        for z in trees:
            if x.degree + y.degree + z.degree <= maxdeg:
                yield x, y, z


def _coassociative(split: Callable[[PlanarTree], TensorCombination], t: PlanarTree) -> bool:
    once = split(t)
    left = TensorCombination.total(tensor_of(split(a), b) * c for (a, b), c in once)
    right = TensorCombination.total(tensor_of(a, split(b)) * c for (a, b), c in once)
    return left == right


def _counit_laws(split: Callable[[PlanarTree], TensorCombination], t: PlanarTree) -> bool:
    once = split(t)
    left = LinearCombination.total(LinearCombination.of(b, c * hp.counit(a)) for (a, b), c in once)
    right = LinearCombination.total(LinearCombination.of(a, c * hp.counit(b)) for (a, b), c in once)
    return left == lift(t) == right


def _infinitesimal(
    split: Callable[[PlanarTree], TensorCombination],
    glue: Callable[[PlanarTree, PlanarTree], PlanarTree],
    x: PlanarTree,
    y: PlanarTree,
) -> bool:
    lhs = split(glue(x, y))
    rhs = (
        TensorCombination(((a, glue(b, y)), c) for (a, b), c in split(x))
        + TensorCombination(((glue(x, a), b), c) for (a, b), c in split(y))
        - TensorCombination.of((x, y))
    )
    return lhs == rhs


def _antipode_identity(
    split: Callable[[PlanarTree], TensorCombination],
    multiply: Callable[[object, object], LinearCombination],
    antipode: Callable[[object], LinearCombination],
    t: PlanarTree,
) -> bool:
    unit = LinearCombination.of(ROOT, 1 if t.degree == 0 else 0)
    once = split(t)
    left = LinearCombination.total(multiply(antipode(a), b) * c for (a, b), c in once)
    right = LinearCombination.total(multiply(a, antipode(b)) * c for (a, b), c in once)
    return left == unit == right


@suite("counts")
def check_counts(maxdeg: int) -> SuiteResult:
    result = SuiteResult("counts")
    for n in range(maxdeg + 1):
        catalan = pr.catalan(n)
        result.check(len(enumerate_trees(n)) == catalan, f"|T_{n}| != {catalan}")
        result.check(len(bt.enumerate_binary(n)) == catalan, f"|Y_{n}| != {catalan}")
        if n <= 5:
            expected = factorial(n) * catalan
            result.check(len(hl.enumerate_family("ntree", n)) == expected, f"|T[{n}]| != {expected}")
        if n <= 6:
            double = prod(range(1, 2 * n, 2))
            result.check(
                len(hl.enumerate_family("increasing", n)) == double, f"|I[{n}]| != {double}"
            )
            result.check(len(pm.enumerate_stirling(n)) == double, f"Stirling({n}) != {double}")
            result.check(
                len(hl.enumerate_family("sorted", n)) == factorial(n), f"|SI[{n}]| != {factorial(n)}"
            )

    for n in range(min(maxdeg, 4) + 1):
        ntrees = hl.enumerate_family("ntree", n)
        filtered = {
            tag: tuple(t for t in ntrees if hl.is_member(tag, t))
            for tag in (hl.FamilyTag.INCREASING, hl.FamilyTag.SORTED)
        }
        for tag, members in filtered.items():
            result.check(hl.enumerate_family(tag, n) == members, f"{tag.value} gluing vs filter in degree {n}")
        result.check(
            hl.enumerate_increasing_by_gluing(n) == filtered[hl.FamilyTag.INCREASING],
            f"increasing gluing in degree {n}",
        )
    return result


@suite("partitions")
def check_partitions(maxdeg: int) -> SuiteResult:
    result = SuiteResult("partitions")
    for t in _trees_upto(maxdeg):
        n = t.degree
        if n == 0:
            result.check(partitions(t) == (), "degree-0 tree has partitions")
            continue
        for k in range(1, n + 1):
            count = len(partitions(t, k))
            result.check(count == comb(n - 1, k - 1), f"{t.text}: {count} partitions into {k}")
        result.check(len(partitions(t)) == 2 ** (n - 1), f"{t.text}: total partitions")
        for p in partitions(t):
            result.check(
                sum(block.degree for block in p.blocks) == n, f"{t.text} {p.cuts}: block degrees"
            )
    return result


def _planar_laws(
    result: SuiteResult, trees: list[PlanarTree], maxdeg: int, *, antipode_upto: int, triples_upto: int
) -> None:
    for t in trees:
        result.check(_coassociative(hp.coproduct, t), f"coassociativity at {t.text}")
        result.check(_counit_laws(hp.coproduct, t), f"counit laws at {t.text}")
        if t.degree <= antipode_upto:
            result.check(
                _antipode_identity(hp.coproduct, hp.product, hp.antipode, t),
                f"antipode identity at {t.text}",
            )

    for x, y in _pairs(trees, maxdeg):
        glued = hp.product(x, y)
        expected = comb(x.degree + y.degree, x.degree)
        result.check(glued.coefficient_sum() == expected, f"{x.text}*{y.text} has {expected} addends")
        result.check(_infinitesimal(hp.coproduct, dot, x, y), f"infinitesimal relation at {x.text}, {y.text}")
        result.check(
            hp.coproduct(glued) == hp.tensor_product(hp.coproduct(x), hp.coproduct(y)),
            f"compatibility at {x.text}, {y.text}",
        )

    for x, y, z in _triples(trees, triples_upto):
        result.check(
            hp.product(hp.product(x, y), z) == hp.product(x, hp.product(y, z)),
            f"associativity at {x.text}, {y.text}, {z.text}",
        )


@suite("hopf")
def check_hopf(maxdeg: int) -> SuiteResult:
    result = SuiteResult("hopf")
    _planar_laws(
        result,
        _trees_upto(maxdeg),
        maxdeg,
        antipode_upto=min(maxdeg, hp.MAX_ANTIPODE_DEGREE),
        triples_upto=maxdeg,
    )

    # labels from {1, 2} are carried along unchanged
    bound = min(maxdeg, 4)
    labelled = [t for n in range(bound + 1) for t in enumerate_labelled(n, LABEL_ALPHABET)]
    _planar_laws(
        result, labelled, bound, antipode_upto=min(bound, 3), triples_upto=min(bound, 3)
    )
    return result


@suite("labelled")
def check_labelled(maxdeg: int) -> SuiteResult:
    result = SuiteResult("labelled")
    trees = _ntrees_upto(maxdeg)
    compose = componentwise(hl.star_product)

    for t in trees:
        result.check(_coassociative(hl.coproduct_std, t), f"coassociativity at {t.text}")
        result.check(_counit_laws(hl.coproduct_std, t), f"counit laws at {t.text}")
        factors = hl.slash_irreducible_factors(t)
        rebuilt = ROOT
        for factor in factors:
            rebuilt = hl.slash_product(rebuilt, factor)
        result.check(rebuilt == t, f"slash factorisation of {t.text}")
        if t.degree <= 4:
            result.check(
                _antipode_identity(hl.coproduct_std, hl.star_product, hl.antipode_std, t),
                f"antipode identity at {t.text}",
            )

    for x, y in _pairs(trees, maxdeg):
        starred = hl.star_product(x, y)
        expected = comb(x.degree + y.degree, x.degree)
        result.check(starred.coefficient_sum() == expected, f"{x.text}*{y.text} has {expected} addends")
        result.check(
            _infinitesimal(hl.coproduct_std, hl.slash_product, x, y),
            f"infinitesimal relation at {x.text}, {y.text}",
        )
        result.check(
            hl.coproduct_std(starred) == compose(hl.coproduct_std(x), hl.coproduct_std(y)),
            f"compatibility at {x.text}, {y.text}",
        )

    for x, y, z in _triples(trees, min(maxdeg, 4)):
        result.check(
            hl.star_product(hl.star_product(x, y), z) == hl.star_product(x, hl.star_product(y, z)),
            f"associativity at {x.text}, {y.text}, {z.text}",
        )

    for x, y in _pairs(trees, min(maxdeg, 4)):
        for gap in (0, 2):
            # every label of t precedes every label of w
            t, w = hl.shift(x, gap), hl.shift(y, x.degree + 2 * gap)
            result.check(
                hl.standardize(dot(t, w)) == hl.slash_product(hl.standardize(t), hl.standardize(w)),
                f"standardized dot at {t.text}, {w.text}",
            )
            result.check(
                hl.standardize_combination(hp.product(t, w))
                == hl.star_product(hl.standardize(t), hl.standardize(w)),
                f"standardized product at {t.text}, {w.text}",
            )

    for tag in (hl.FamilyTag.INCREASING, hl.FamilyTag.SORTED):
        family = _ntrees_upto(maxdeg, tag)
        for x, y in _pairs(family, maxdeg):
            keys = hl.star_product(x, y).support()
            result.check(all(hl.is_member(tag, k) for k in keys), f"{tag.value} closure of {x.text}*{y.text}")
        for t in family:
            legs = [leg for pair in hl.coproduct_std(t).support() for leg in pair]
            result.check(all(hl.is_member(tag, k) for k in legs), f"{tag.value} closure of coproduct of {t.text}")
    return result


@suite("duality")
def check_duality(maxdeg: int) -> SuiteResult:
    result = SuiteResult("duality")
    trees = _trees_upto(maxdeg)
    by_degree = {n: enumerate_trees(n) for n in range(maxdeg + 1)}

    for t, w in _pairs(trees, maxdeg):
        glued = hp.dual_product(t, w)
        k = len(irreducible_factors(t))
        branch = len(hp.leftmost_branch(w)) - 1
        expected = comb(k + branch, k)
        result.check(glued.coefficient_sum() == expected, f"{t.text}.d{w.text} has {expected} addends")
        target = dot(t, w)
        for u in by_degree[t.degree + w.degree]:
            result.check(
                pairing(glued, u) == pairing(tensor_of(t, w), hp.coproduct(u)),
                f"<{t.text} .d {w.text}, {u.text}>",
            )
            result.check(
                pairing(hp.dual_coproduct(u), tensor_of(t, w)) == (1 if u == target else 0),
                f"<dual coproduct of {u.text}, {t.text} x {w.text}>",
            )
    return result


@suite("primitives")
def check_primitives(maxdeg: int) -> SuiteResult:
    result = SuiteResult("primitives")
    trees = [t for t in _trees_upto(maxdeg) if t.degree]

    for t in trees:
        e = pr.idempotent_e(t)
        result.check(pr.idempotent_e(e) == e, f"e is not idempotent at {t.text}")
        result.check(not pr.reduced_coproduct(e), f"e({t.text}) is not primitive")
    for x, y in _pairs(trees, maxdeg):
        result.check(not pr.idempotent_e(dot(x, y)), f"e kills no product at {x.text}, {y.text}")

    ntrees = [t for t in _ntrees_upto(min(maxdeg, 4)) if t.degree]
    for t in ntrees:
        e = pr.idempotent_e(t, pr.Mode.SLASH)
        result.check(pr.idempotent_e(e, pr.Mode.SLASH) == e, f"slash e is not idempotent at {t.text}")
    for x, y in _pairs(ntrees, min(maxdeg, 4)):
        result.check(
            not pr.idempotent_e(hl.slash_product(x, y), pr.Mode.SLASH),
            f"slash e kills no product at {x.text}, {y.text}",
        )

    bounds = {
        pr.Family.UNLABELLED: min(maxdeg, 5),
        pr.Family.SORTED: min(maxdeg, 4),
        pr.Family.INCREASING: min(maxdeg, 3),
        pr.Family.NTREE: min(maxdeg, 3),
    }
    for family, bound in bounds.items():
        if bound < 1:
            continue
        series = pr.prim_dimensions(family, bound)
        ranks = pr.prim_dimensions_by_rank(family, bound)
        result.check(ranks == series.primitives[1:], f"{family.value}: ranks {ranks} vs {series.primitives[1:]}")

    for family in pr.Family:
        series = pr.prim_dimensions(family, 6)
        result.check(
            pr.cofree_dimensions(series.primitives, 6) == series.components,
            f"{family.value}: component dimensions are not cofree",
        )
    return result


@suite("bijections")
def check_bijections(maxdeg: int) -> SuiteResult:
    result = SuiteResult("bijections")
    for n in range(min(maxdeg, 4) + 1):
        family = hl.enumerate_family("ntree", n)
        tours = {pm.euler_tour(t) for t in family}
        result.check(len(tours) == len(family), f"euler tour is not injective in degree {n}")
        for t in family:
            result.check(pm.euler_tour_inverse(pm.euler_tour(t)) == t, f"euler round trip at {t.text}")
        stirling = {pm.euler_tour(t) for t in hl.enumerate_family("increasing", n)}
        result.check(stirling == set(pm.enumerate_stirling(n)), f"Stirling image in degree {n}")

    for n in range(min(maxdeg, 5) + 1):
        for t in hl.enumerate_family("ntree", n):
            tours = (pm.euler_tour(f) for f in irreducible_factors(t))
            result.check(pm.euler_tour(t) == pm.concatenate(*tours), f"euler tour of factors at {t.text}")

    for n in range(min(maxdeg, 5) + 1):
        for t in hl.enumerate_family("sorted", n):
            word = pm.sorted_to_permutation(t)
            result.check(pm.permutation_to_sorted(word) == t, f"sorted round trip at {t.text}")
        images = {pm.sorted_to_permutation(t) for t in hl.enumerate_family("sorted", n)}
        result.check(images == set(pm.enumerate_permutations(n)), f"sorted trees onto Sym_{n}")

    for t in _trees_upto(maxdeg):
        x = bt.planar_to_binary(t)
        result.check(bt.binary_to_planar(x) == t, f"binary round trip at {t.text}")
        if t.degree <= 5:
            n = t.degree
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    result.check(
                        bt.planar_to_binary(convex_subtree(t, i, j)) == bt.binary_convex(x, i - 1, j),
                        f"convex subtree [{i},{j}] of {t.text}",
                    )
    return result


@suite("transport")
def check_transport(maxdeg: int) -> SuiteResult:
    result = SuiteResult("transport")
    to_words = extend_linear(pm.euler_tour)

    def tensor_words(v: TensorCombination) -> TensorCombination:
        return TensorCombination(((pm.euler_tour(a), pm.euler_tour(b)), c) for (a, b), c in v)

    ntrees = _ntrees_upto(min(maxdeg, 4))
    for t in ntrees:
        result.check(
            tensor_words(hl.coproduct_std(t)) == pm.treed_coproduct(pm.euler_tour(t)),
            f"treed coproduct at {t.text}",
        )
    for x, y in _pairs(ntrees, min(maxdeg, 4)):
        result.check(
            to_words(hl.star_product(x, y)) == pm.treed_product(pm.euler_tour(x), pm.euler_tour(y)),
            f"treed product at {x.text}, {y.text}",
        )

    to_perms = extend_linear(pm.sorted_to_permutation)
    sorted_trees = _ntrees_upto(maxdeg, hl.FamilyTag.SORTED)
    for t in sorted_trees:
        mapped = TensorCombination(
            ((pm.sorted_to_permutation(a), pm.sorted_to_permutation(b)), c)
            for (a, b), c in hl.coproduct_std(t)
        )
        result.check(mapped == pm.mr_coproduct(pm.sorted_to_permutation(t)), f"MR coproduct at {t.text}")
    for x, y in _pairs(sorted_trees, maxdeg):
        result.check(
            to_perms(hl.star_product(x, y))
            == pm.mr_product(pm.sorted_to_permutation(x), pm.sorted_to_permutation(y)),
            f"MR product at {x.text}, {y.text}",
        )

    trees = _trees_upto(maxdeg)
    for x, y in _pairs(trees, maxdeg):
        result.check(
            bt.transported_product(x, y)
            == bt.binary_product(bt.planar_to_binary(x), bt.planar_to_binary(y)),
            f"binary product at {x.text}, {y.text}",
        )
    return result


@suite("binary")
def check_binary(maxdeg: int) -> SuiteResult:
    report = bt.loday_ronco_dual_check(maxdeg)
    return SuiteResult("binary", sum(report.checked.values()), list(report.violations))


def run_suites(names: list[str], maxdeg: int) -> list[SuiteResult]:
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        logger.info("running suite %s up to degree %d", name, maxdeg)
        results.append(SUITES[name](maxdeg))
    return results
