"""Cooperative cancellation for long-running computations."""

from __future__ import annotations

import threading


class Cancelled(RuntimeError):
    pass


class CancelToken:
    """Set from any thread; workers call :meth:`check` between units of work."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self) -> None:
        if self._event.is_set():
            raise Cancelled("operation cancelled")


def check(token: CancelToken | None) -> None:
    if token is not None:
        token.check()
