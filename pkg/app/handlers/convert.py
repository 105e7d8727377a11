from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from app.config import CommandConfig
from app.handlers.common import emit
from app.i18n import Lang, i18n
from app.services import binary_trees as bt
from app.services import permutations as pm
from app.utils.validators import parse_operand


# map name -> (input family, conversion)
_MAPS: dict[str, tuple[str, Callable[[Any], Any]]] = {
    "euler": ("ntree", pm.euler_tour),
    "euler-inverse": ("treed", pm.euler_tour_inverse),
    "sorted-to-permutation": ("sorted", pm.sorted_to_permutation),
    "permutation-to-sorted": ("permutation", pm.permutation_to_sorted),
    "planar-to-binary": ("tree", bt.planar_to_binary),
    "binary-to-planar": ("binary", bt.binary_to_planar),
}


def convert(config: CommandConfig, data: dict[str, Any]) -> int:
    family, mapping = _MAPS[config.mapping or "euler"]
    source = config.operands or tuple(data.get("stdin", sys.stdin))
    for raw in source:
        text = raw.rstrip("\n")
        if not text.strip():
            continue
        emit(data, f"{text}\t{mapping(parse_operand(family, text)).text}")
    return 0


def register(subparsers: Any, parents: list[argparse.ArgumentParser], lang: Lang) -> None:
    parser = subparsers.add_parser("convert", parents=parents, help=i18n.t(lang, "help.convert"))
    parser.add_argument("--map", dest="mapping", choices=tuple(_MAPS), required=True)
    parser.add_argument("operands", nargs="*")
    parser.set_defaults(handler=convert)
