from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Sequence, TextIO

from app.config import CommandConfig, Settings
from app.handlers import algebra as algebra_handlers
from app.handlers import convert as convert_handlers
from app.handlers import enumerate as enumerate_handlers
from app.handlers import series as series_handlers
from app.handlers import verify as verify_handlers
from app.i18n import Lang, i18n
from app.middlewares.errors import ErrorsMiddleware


logger = logging.getLogger(__name__)

HANDLER_MODULES = (
    enumerate_handlers,
    algebra_handlers,
    series_handlers,
    convert_handlers,
    verify_handlers,
)


def build_parser(lang: Lang) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", choices=("en", "ru"), default=None, help=i18n.t(lang, "help.lang"))
    common.add_argument("--log-level", default=None, help=i18n.t(lang, "help.log_level"))
    common.add_argument("--force", action="store_true", help=i18n.t(lang, "help.force"))

    parser = argparse.ArgumentParser(prog="planar-trees", description=i18n.t(lang, "app.description"))
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in HANDLER_MODULES:
        module.register(subparsers, [common], lang)
    return parser


def _to_config(ns: argparse.Namespace, settings: Settings) -> CommandConfig:
    def get(name: str, default: Any = None) -> Any:
        return getattr(ns, name, default)

    return CommandConfig(
        command=ns.command,
        family=get("family"),
        degree=get("degree"),
        maxdeg=get("maxdeg"),
        operands=tuple(get("operands") or ()),
        suites=tuple(get("suites") or ()),
        mapping=get("mapping"),
        alphabet=get("alphabet", 2),
        expand=bool(get("expand", False)),
        dual=bool(get("dual", False)),
        rank=bool(get("rank", False)),
        force=bool(get("force", False)),
        lang=get("lang") or settings.lang,
    )


def run(
    argv: Sequence[str] | None = None,
    *,
    out: TextIO | None = None,
    err: TextIO | None = None,
    stdin: TextIO | None = None,
) -> int:
    settings = Settings.from_env()
    parser = build_parser(settings.lang)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    level = ns.log_level or settings.log_level
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        stream=sys.stderr,
    )

    data = {
        "settings": settings,
        "out": out or sys.stdout,
        "err": err or sys.stderr,
        "stdin": stdin or sys.stdin,
    }
    logger.debug("running %s", ns.command)
    return ErrorsMiddleware()(ns.handler, _to_config(ns, settings), data)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
