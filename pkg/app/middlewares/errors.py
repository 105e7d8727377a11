from __future__ import annotations

import logging
from typing import Any, Callable

from app.config import CommandConfig, CostLimitError, InfeasibleBoundError
from app.i18n import i18n


logger = logging.getLogger(__name__)


class ErrorsMiddleware:
    """Turn exceptions into a localized message on stderr and an exit status."""

    def __call__(
        self,
        handler: Callable[[CommandConfig, dict[str, Any]], int],
        event: CommandConfig,
        data: dict[str, Any],
    ) -> int:
        err = data["err"]
        try:
            return handler(event, data)
        except InfeasibleBoundError as exc:
            logger.info("Refused %s: %s", event.command, exc)
            err.write(
                i18n.t(event.lang, "error.infeasible", what=exc.what, bound=exc.bound, cap=exc.cap)
                + "\n"
            )
            return 2
        except CostLimitError as exc:
            logger.info("Refused %s: %s", event.command, exc)
            err.write(
                i18n.t(event.lang, "error.cost", what=exc.what, count=exc.count, limit=exc.limit) + "\n"
            )
            return 2
        except ValueError as exc:
            logger.info("Rejected input for %s: %s", event.command, exc)
            err.write(i18n.t(event.lang, "error.input", detail=str(exc)) + "\n")
            return 2
        except Exception:
            logger.exception("Unhandled error")

        err.write(i18n.t(event.lang, "error.unexpected") + "\n")
        return 1
