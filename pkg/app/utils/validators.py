from __future__ import annotations

import argparse
import re
from typing import Any

from app.services.binary_trees import parse_binary
from app.services.hopf_labelled import is_member
from app.services.permutations import (
    WordError,
    is_permutation,
    is_stirling,
    is_treed,
    parse_word,
)
from app.services.tree_core import LabellingError, parse_tree


_DEGREE_RE = re.compile(r"^\s*\d+\s*$")
_WORD_RE = re.compile(r"^\s*(\d+(\s+\d+)*)?\s*$")


def parse_degree(text: str) -> int | None:
    if not _DEGREE_RE.match(text):
        return None
    return int(text)


def degree_arg(text: str) -> int:
    value = parse_degree(text)
    if value is None:
        raise argparse.ArgumentTypeError(f"{text!r} is not a non-negative integer")
    return value


def positive_arg(text: str) -> int:
    value = parse_degree(text)
    if not value:
        raise argparse.ArgumentTypeError(f"{text!r} is not a positive integer")
    return value


def is_word_text(text: str) -> bool:
    return bool(_WORD_RE.match(text))


def parse_operand(family: str, text: str) -> Any:
    """Read one basis element written in the canonical syntax of ``family``."""
    if family == "tree":
        tree = parse_tree(text)
        if tree.is_labelled:
            raise LabellingError(f"{text!r} carries labels; use --family labelled")
        return tree
    if family == "labelled":
        return parse_tree(text)
    if family in ("ntree", "increasing", "sorted"):
        tree = parse_tree(text, ntree=True)
        if not is_member(family, tree):
            raise LabellingError(f"{text!r} is not a {family} tree")
        return tree
    if family == "binary":
        return parse_binary(text)
    if family in ("treed", "stirling", "permutation"):
        if not is_word_text(text):
            raise WordError(f"{text!r} is not a word")
        word = parse_word(text)
        checks = {"treed": is_treed, "stirling": is_stirling, "permutation": is_permutation}
        if not checks[family](word):
            raise WordError(f"{text!r} is not a {family} word")
        return word
    raise ValueError(f"unknown family {family!r}")
