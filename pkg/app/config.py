from __future__ import annotations

import os
from dataclasses import dataclass
from dotenv import load_dotenv

from app.i18n import Lang


load_dotenv()


class InfeasibleBoundError(ValueError):
    def __init__(self, what: str, bound: int, cap: int) -> None:
        super().__init__(f"{what}: degree {bound} exceeds cap {cap}")
        self.what = what
        self.bound = bound
        self.cap = cap


class CostLimitError(ValueError):
    def __init__(self, what: str, count: int, limit: int) -> None:
        super().__init__(f"{what}: {count} basis elements exceed the limit {limit}")
        self.what = what
        self.count = count
        self.limit = limit


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    lang: Lang = "en"
    cap_scale: int = 0

    @staticmethod
    def from_env() -> "Settings":
        lang = os.getenv("CLI_LANG", "en")
        if lang not in ("en", "ru"):
            raise RuntimeError(f"CLI_LANG must be 'en' or 'ru', got {lang!r}.")

        raw_scale = os.getenv("DEGREE_CAP_SCALE", "0")
        if not raw_scale.isdigit():
            raise RuntimeError(f"DEGREE_CAP_SCALE must be a non-negative integer, got {raw_scale!r}.")

        return Settings(
            log_level=os.getenv("LOG_LEVEL", "WARNING"),
            lang=lang,  # type: ignore[arg-type]
            cap_scale=int(raw_scale),
        )


# Largest degree each exhaustive job is allowed to reach without --force.
FEASIBILITY_CAPS: dict[tuple[str, str], int] = {
    # enumerate
    ("enumerate", "tree"): 10,
    ("enumerate", "labelled"): 6,
    ("enumerate", "ntree"): 6,
    ("enumerate", "increasing"): 7,
    ("enumerate", "sorted"): 7,
    ("enumerate", "binary"): 10,
    ("enumerate", "treed"): 6,
    ("enumerate", "stirling"): 7,
    ("enumerate", "permutation"): 7,
    # products and coproducts, by the degree sum of the operands
    ("product", "tree"): 10,
    ("product", "labelled"): 10,
    ("product", "ntree"): 10,
    ("product", "treed"): 10,
    ("product", "binary"): 10,
    ("product", "permutation"): 10,
    ("dual-product", "tree"): 12,
    ("idempotent", "tree"): 8,
    ("idempotent", "labelled"): 8,
    ("idempotent", "ntree"): 7,
    # series: the closed-form column is cheap, the rank column is not
    ("series", "unlabelled"): 40,
    ("series", "labelled"): 40,
    ("series", "ntree"): 40,
    ("series", "increasing"): 40,
    ("series", "sorted"): 40,
    ("rank", "unlabelled"): 6,
    ("rank", "labelled"): 4,
    ("rank", "ntree"): 5,
    ("rank", "increasing"): 5,
    ("rank", "sorted"): 6,
    # verify suites, by the degree-sum bound of their checks
    ("verify", "counts"): 8,
    ("verify", "partitions"): 8,
    ("verify", "hopf"): 6,
    ("verify", "labelled"): 5,
    ("verify", "duality"): 6,
    ("verify", "primitives"): 5,
    ("verify", "bijections"): 6,
    ("verify", "transport"): 5,
    ("verify", "binary"): 6,
}

# Basis elements a single job may visit without --force; DEGREE_CAP_SCALE multiplies it by 10 per step.
MAX_BASIS_ELEMENTS = 1_000_000


@dataclass(frozen=True)
class CommandConfig:
    command: str
    family: str | None = None
    degree: int | None = None
    maxdeg: int | None = None
    operands: tuple[str, ...] = ()
    suites: tuple[str, ...] = ()
    mapping: str | None = None
    alphabet: int = 2
    expand: bool = False
    dual: bool = False
    rank: bool = False
    force: bool = False
    lang: Lang = "en"


def check_feasible(
    what: tuple[str, str], bound: int, settings: Settings, *, force: bool = False
) -> None:
    cap = FEASIBILITY_CAPS.get(what)
    if cap is None or force:
        return
    cap += settings.cap_scale
    if bound > cap:
        raise InfeasibleBoundError(" ".join(what), bound, cap)


def check_cost(what: str, count: int, settings: Settings, *, force: bool = False) -> None:
    limit = MAX_BASIS_ELEMENTS * 10**settings.cap_scale
    if count > limit and not force:
        raise CostLimitError(what, count, limit)
