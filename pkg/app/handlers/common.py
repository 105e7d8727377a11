from __future__ import annotations

import logging
from typing import Any, Iterable

from app.config import CommandConfig, check_cost, check_feasible
from app.i18n import i18n


logger = logging.getLogger(__name__)


def emit(data: dict[str, Any], lines: Iterable[str] | str) -> None:
    out = data["out"]
    for line in [lines] if isinstance(lines, str) else lines:
        out.write(line + "\n")


def guard(config: CommandConfig, data: dict[str, Any], what: tuple[str, str], bound: int) -> None:
    check_feasible(what, bound, data["settings"], force=config.force)


def announce_cost(
    config: CommandConfig, data: dict[str, Any], what: str, bound: int, count: int
) -> None:
    logger.info("cost estimate for %s up to %d: %d", what, bound, count)
    data["err"].write(i18n.t(config.lang, "cost.estimate", count=count, what=what, bound=bound) + "\n")


def budget(config: CommandConfig, data: dict[str, Any], what: str, count: int) -> None:
    check_cost(what, count, data["settings"], force=config.force)


def require_operands(config: CommandConfig, count: int) -> None:
    if len(config.operands) != count:
        raise ValueError(
            i18n.t(config.lang, "error.operands", command=config.command, count=count, given=len(config.operands))
        )
