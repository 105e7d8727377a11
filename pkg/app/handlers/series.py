from __future__ import annotations

import argparse
from typing import Any

from app.config import CommandConfig
from app.handlers.common import announce_cost, budget, emit, guard
from app.i18n import Lang, i18n
from app.services.primitives import (
    Family,
    component_dimension,
    prim_dimensions,
    prim_dimensions_by_rank,
)
from app.utils.validators import positive_arg


def series(config: CommandConfig, data: dict[str, Any]) -> int:
    family = Family(config.family or "unlabelled")
    top = config.maxdeg or 1
    guard(config, data, ("series", family.value), top)
    dimensions = prim_dimensions(family, top, config.alphabet)

    if not config.rank:
        emit(data, i18n.t(config.lang, "series.header"))
        emit(data, dimensions.lines())
        return 0

    guard(config, data, ("rank", family.value), top)
    cost = sum(component_dimension(family, n, config.alphabet) for n in range(1, top + 1))
    budget(config, data, f"rank {family.value}", cost)
    announce_cost(config, data, f"rank {family.value}", top, cost)
    alphabet = tuple(range(1, config.alphabet + 1))
    ranks = prim_dimensions_by_rank(family, top, alphabet, cap=top if config.force else None)
    emit(data, i18n.t(config.lang, "series.header_rank"))
    emit(
        data,
        (f"{line}\t{rank}" for line, rank in zip(dimensions.lines(), ranks)),
    )
    return 0


def register(subparsers: Any, parents: list[argparse.ArgumentParser], lang: Lang) -> None:
    parser = subparsers.add_parser("series", parents=parents, help=i18n.t(lang, "help.series"))
    parser.add_argument("--family", choices=tuple(f.value for f in Family), default="unlabelled")
    parser.add_argument("--max", dest="maxdeg", type=positive_arg, required=True)
    parser.add_argument("--rank", action="store_true")
    parser.add_argument("--alphabet", type=positive_arg, default=2)
    parser.set_defaults(handler=series)
