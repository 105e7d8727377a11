from __future__ import annotations

import argparse
from math import factorial
from typing import Any, Callable, Sequence

from app.config import CommandConfig
from app.handlers.common import announce_cost, budget, emit, guard
from app.i18n import Lang, i18n
from app.services.binary_trees import enumerate_binary
from app.services.hopf_labelled import enumerate_family
from app.services.permutations import enumerate_permutations, enumerate_stirling, enumerate_treed
from app.services.primitives import catalan, component_dimension
from app.services.tree_core import enumerate_labelled, enumerate_trees
from app.utils.validators import degree_arg, positive_arg


_ENUMERATORS: dict[str, Callable[[int, int], Sequence[Any]]] = {
    "tree": lambda n, _: enumerate_trees(n),
    "labelled": lambda n, size: enumerate_labelled(n, range(1, size + 1)),
    "ntree": lambda n, _: enumerate_family("ntree", n),
    "increasing": lambda n, _: enumerate_family("increasing", n),
    "sorted": lambda n, _: enumerate_family("sorted", n),
    "binary": lambda n, _: enumerate_binary(n),
    "treed": lambda n, _: enumerate_treed(n),
    "stirling": lambda n, _: enumerate_stirling(n),
    "permutation": lambda n, _: enumerate_permutations(n),
}


def estimate(family: str, n: int, alphabet: int) -> int:
    if family in ("tree", "binary"):
        return catalan(n)
    if family == "labelled":
        return component_dimension("labelled", n, alphabet)
    if family in ("ntree", "treed"):
        return factorial(n) * catalan(n)
    if family in ("increasing", "stirling"):
        return component_dimension("increasing", n)
    return factorial(n)


def enumerate_basis(config: CommandConfig, data: dict[str, Any]) -> int:
    family, n = config.family or "tree", config.degree or 0
    guard(config, data, ("enumerate", family), n)
    count = estimate(family, n, config.alphabet)
    budget(config, data, f"enumerate {family}", count)
    announce_cost(config, data, family, n, count)
    emit(data, (item.text for item in _ENUMERATORS[family](n, config.alphabet)))
    return 0


def register(subparsers: Any, parents: list[argparse.ArgumentParser], lang: Lang) -> None:
    parser = subparsers.add_parser("enumerate", parents=parents, help=i18n.t(lang, "help.enumerate"))
    parser.add_argument("--family", choices=tuple(_ENUMERATORS), default="tree")
    parser.add_argument("--degree", type=degree_arg, required=True)
    parser.add_argument("--alphabet", type=positive_arg, default=2)
    parser.set_defaults(handler=enumerate_basis)
