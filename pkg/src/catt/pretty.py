"""Human-readable rendering of raw syntax, using surface names when known."""

from __future__ import annotations

from typing import Any, Sequence

from catt.syntax import Arrow, Coh, Obj, Var


def show(obj: Any, names: Sequence[str] = ()) -> str:
    if isinstance(obj, Obj):
        return "*"
    if isinstance(obj, Arrow):
        return f"{show(obj.src, names)} -> {show(obj.tgt, names)}"
    if isinstance(obj, Var):
        k = obj.level
        return names[k] if isinstance(k, int) and 0 <= k < len(names) else f"v{k}"
    if isinstance(obj, Coh):
        label = getattr(obj.index, "label", None) or "coh"
        return f"{label}({', '.join(show(t, names) for _, t in obj.sub)})"
    if isinstance(obj, (set, frozenset)):
        return "{" + ", ".join(show(Var(k), names) for k in sorted(obj)) + "}"
    return repr(obj)


def show_ctx(ctx, names: Sequence[str] = ()) -> str:
    return " ".join(f"({show(Var(k), names)} : {show(ty, names)})" for k, ty in ctx)
