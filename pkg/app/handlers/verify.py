from __future__ import annotations

import argparse
import logging
from typing import Any

from app.config import CommandConfig
from app.handlers.common import announce_cost, emit, guard
from app.i18n import Lang, i18n
from app.services import verification
from app.services.primitives import catalan
from app.utils.validators import degree_arg


logger = logging.getLogger(__name__)


def verify(config: CommandConfig, data: dict[str, Any]) -> int:
    names = list(config.suites) or ["all"]
    if "all" in names:
        names = list(verification.SUITES)
    maxdeg = config.maxdeg if config.maxdeg is not None else 4
    for name in names:
        guard(config, data, ("verify", name), maxdeg)
    announce_cost(config, data, "verify", maxdeg, sum(catalan(n) for n in range(maxdeg + 1)))

    failed = 0
    for result in verification.run_suites(names, maxdeg):
        data["err"].write(
            i18n.t(
                config.lang,
                "verify.suite",
                suite=result.name,
                checked=result.checked,
                failed=len(result.violations),
            )
            + "\n"
        )
        emit(data, (i18n.t(config.lang, "verify.violation", detail=d) for d in result.violations))
        failed += len(result.violations)

    if failed:
        logger.warning("verification found %d violations", failed)
        emit(data, i18n.t(config.lang, "verify.failed"))
        return 1
    emit(data, i18n.t(config.lang, "verify.ok"))
    return 0


def register(subparsers: Any, parents: list[argparse.ArgumentParser], lang: Lang) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help=i18n.t(lang, "help.verify"))
    parser.add_argument(
        "--suite", dest="suites", action="append", choices=(*verification.SUITES, "all")
    )
    parser.add_argument("--maxdeg", type=degree_arg, default=4)
    parser.set_defaults(handler=verify)
