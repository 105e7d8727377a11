from __future__ import annotations

import argparse
import logging
from typing import Any, Callable

from app.config import CommandConfig
from app.handlers.common import emit, guard, require_operands
from app.i18n import Lang, i18n
from app.services import binary_trees as bt
from app.services import hopf_labelled as hl
from app.services import hopf_planar as hp
from app.services import permutations as pm
from app.services.primitives import Mode, idempotent_e
from app.utils.validators import parse_operand


logger = logging.getLogger(__name__)

_PRODUCTS: dict[str, Callable[[Any, Any], Any]] = {
    "tree": hp.product,
    "labelled": hp.product,
    "ntree": hl.star_product,
    "treed": pm.treed_product,
    "binary": bt.binary_product,
    "permutation": pm.mr_product,
}

_COPRODUCTS: dict[str, Callable[[Any], Any]] = {
    "tree": hp.coproduct,
    "labelled": hp.coproduct,
    "ntree": hl.coproduct_std,
    "treed": pm.treed_coproduct,
    "binary": bt.binary_coproduct,
    "permutation": pm.mr_coproduct,
}

_MODES = {"tree": Mode.DOT, "labelled": Mode.DOT, "ntree": Mode.SLASH}


def _unsupported(config: CommandConfig) -> ValueError:
    return ValueError(i18n.t(config.lang, "error.family", command=config.command, family=config.family))


def _size(family: str, item: Any) -> int:
    if family == "permutation":
        return len(item)
    if family == "treed":
        return pm.word_size(item)
    return item.degree


def product(config: CommandConfig, data: dict[str, Any]) -> int:
    family = config.family or "tree"
    require_operands(config, 2)
    left, right = (parse_operand(family, text) for text in config.operands)
    guard(config, data, ("product", family), _size(family, left) + _size(family, right))

    if config.expand:
        if family not in ("tree", "labelled"):
            raise _unsupported(config)
        emit(
            data,
            (
                f"{','.join(map(str, partition.cuts)) or '-'}\t{','.join(map(str, targets))}\t{tree.text}"
                for partition, targets, tree in hp.hash_products(left, right)
            ),
        )
        return 0

    emit(data, str(_PRODUCTS[family](left, right)))
    return 0


def coproduct(config: CommandConfig, data: dict[str, Any]) -> int:
    family = config.family or "tree"
    require_operands(config, 1)
    item = parse_operand(family, config.operands[0])
    if config.dual:
        if family not in ("tree", "labelled"):
            raise _unsupported(config)
        emit(data, str(hp.dual_coproduct(item)))
        return 0
    emit(data, str(_COPRODUCTS[family](item)))
    return 0


def dual_product(config: CommandConfig, data: dict[str, Any]) -> int:
    family = config.family or "tree"
    require_operands(config, 2)
    left, right = (parse_operand(family, text) for text in config.operands)
    guard(config, data, ("dual-product", "tree"), left.degree + right.degree)
    emit(data, str(hp.dual_product(left, right)))
    return 0


def idempotent(config: CommandConfig, data: dict[str, Any]) -> int:
    family = config.family or "tree"
    require_operands(config, 1)
    tree = parse_operand(family, config.operands[0])
    guard(config, data, ("idempotent", family), tree.degree)
    emit(data, str(idempotent_e(tree, _MODES[family])))
    return 0


def register(subparsers: Any, parents: list[argparse.ArgumentParser], lang: Lang) -> None:
    parser = subparsers.add_parser("product", parents=parents, help=i18n.t(lang, "help.product"))
    parser.add_argument("--family", choices=tuple(_PRODUCTS), default="tree")
    parser.add_argument("--expand", action="store_true")
    parser.add_argument("operands", nargs="*")
    parser.set_defaults(handler=product)

    parser = subparsers.add_parser("coproduct", parents=parents, help=i18n.t(lang, "help.coproduct"))
    parser.add_argument("--family", choices=tuple(_COPRODUCTS), default="tree")
    parser.add_argument("--dual", action="store_true")
    parser.add_argument("operands", nargs="*")
    parser.set_defaults(handler=coproduct)

    parser = subparsers.add_parser("dual-product", parents=parents, help=i18n.t(lang, "help.dual_product"))
    parser.add_argument("--family", choices=("tree", "labelled"), default="tree")
    parser.add_argument("operands", nargs="*")
    parser.set_defaults(handler=dual_product)

    parser = subparsers.add_parser("idempotent", parents=parents, help=i18n.t(lang, "help.idempotent"))
    parser.add_argument("--family", choices=tuple(_MODES), default="tree")
    parser.add_argument("operands", nargs="*")
    parser.set_defaults(handler=idempotent)
