from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Literal


Lang = Literal["ru", "en"]


@dataclass(frozen=True)
class I18N:
    messages: Dict[str, Dict[str, str]]
    default_lang: Lang = "en"

    def t(self, lang: Lang | None, key: str, /, **params) -> str:
        lang_key = lang if lang in ("ru", "en") else self.default_lang
        template = self.messages.get(lang_key, {}).get(key)
        if template is None:
            template = self.messages[self.default_lang].get(key, key)
        return template.format(**params)


i18n = I18N(
    messages={
        "en": {
            # App
            "app.description": "Exact Hopf-algebra computations on planar rooted trees and their relatives.",
            # Help
            "help.enumerate": "list every basis element of a family in one degree",
            "help.product": "multiply two basis elements",
            "help.coproduct": "split a basis element",
            "help.dual_product": "dual product of two unlabelled trees",
            "help.idempotent": "apply the primitive projection e",
            "help.series": "component and primitive dimensions",
            "help.convert": "stream a bijection, one operand per line",
            "help.verify": "run invariant suites exhaustively",
            "help.force": "ignore the feasibility caps",
            "help.lang": "language of messages on stderr",
            "help.log_level": "logging level (overrides LOG_LEVEL)",
            # Results
            "verify.suite": "{suite}: {checked} checks, {failed} failed",
            "verify.violation": "  {detail}",
            "verify.ok": "OK",
            "verify.failed": "FAILED",
            "series.header": "n\ta_n\tb_n",
            "series.header_rank": "n\ta_n\tb_n\trank",
            "cost.estimate": "About {count} basis elements to visit for {what} up to degree {bound}.",
            # Errors
            "error.input": "Invalid input: {detail}",
            "error.infeasible": (
                "Degree {bound} is above the cap {cap} for {what}. "
                "Pass --force to run it anyway."
            ),
            "error.cost": (
                "{what} would visit {count} basis elements, above the limit {limit}. "
                "Pass --force to run it anyway."
            ),
            "error.operands": "{command} needs {count} operand(s), got {given}.",
            "error.family": "{command} does not support the family {family!r}.",
            "error.unexpected": "Unexpected error. See the log for details.",
        },
        "ru": {
            # App
            "app.description": "Точные вычисления в алгебрах Хопфа плоских корневых деревьев и их родственников.",
            # Help
            "help.enumerate": "перечислить все базисные элементы семейства данной степени",
            "help.product": "перемножить два базисных элемента",
            "help.coproduct": "коумножение базисного элемента",
            "help.dual_product": "двойственное произведение двух непомеченных деревьев",
            "help.idempotent": "применить проектор e на примитивные элементы",
            "help.series": "размерности компонент и примитивных элементов",
            "help.convert": "применить биекцию построчно",
            "help.verify": "полная проверка инвариантов",
            "help.force": "игнорировать ограничения на степень",
            "help.lang": "язык сообщений в stderr",
            "help.log_level": "уровень логирования (вместо LOG_LEVEL)",
            # Results
            "verify.suite": "{suite}: проверок {checked}, ошибок {failed}",
            "verify.violation": "  {detail}",
            "verify.ok": "OK",
            "verify.failed": "ОШИБКА",
            "series.header": "n\ta_n\tb_n",
            "series.header_rank": "n\ta_n\tb_n\trank",
            "cost.estimate": "Нужно обойти около {count} базисных элементов для {what} до степени {bound}.",
            # Errors
            "error.input": "Некорректный ввод: {detail}",
            "error.infeasible": (
                "Степень {bound} больше допустимой {cap} для {what}. "
                "Добавьте --force, чтобы всё равно запустить."
            ),
            "error.cost": (
                "{what}: нужно обойти {count} базисных элементов, больше предела {limit}. "
                "Добавьте --force, чтобы всё равно запустить."
            ),
            "error.operands": "{command}: нужно операндов: {count}, передано: {given}.",
            "error.family": "{command} не поддерживает семейство {family!r}.",
            "error.unexpected": "Непредвиденная ошибка. Подробности в логе.",
        },
    }
)
