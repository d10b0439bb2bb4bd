"""Structured rejection evidence shared by the kernel and the front end."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Optional

# Rule names a diagnostic may carry.  The first eleven name inference rules
# (or rule families); "elab" and "io" cover front-end failures that do not
# correspond to any rule of the theory.
RULES = frozenset(
    {"ec", "cc", "var", "ob", "ar", "es", "sc", "tm", "ps", "fullness", "parse", "elab", "io"}
)


@dataclass(frozen=True)
class Span:
    file: Optional[str] = None
    line: int = 0
    column: int = 0
    end_line: int = 0
    end_column: int = 0

    def __str__(self) -> str:
        return f"{self.file or '<input>'}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    kind: str
    message: str
    expected: Any = None
    actual: Any = None
    span: Optional[Span] = None
    details: tuple = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule name {self.rule!r}")

    def at(self, span: Optional[Span]) -> "Diagnostic":
        """Attach ``span`` unless a more precise one is already present."""
        if self.span is not None or span is None:
            return self
        return replace(self, span=span)

    def detail(self, key: str, default: Any = None) -> Any:
        return dict(self.details).get(key, default)

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        return f"{where}[{self.rule}] {self.kind}: {self.message}"


class Rejected(Exception):
    """Internal control flow for checkers; never escapes a public entry point."""

    def __init__(self, diag: Diagnostic):
        super().__init__(str(diag))
        self.diag = diag
