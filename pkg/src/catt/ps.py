"""Pasting-scheme contexts.

A ps-context is built by the moves

* ``START``: the context ``(0 : *)`` with focus ``0 : *``;
* ``EXTEND``: at focus ``x : A``, append ``ℓ : A`` and ``ℓ+1 : x -> ℓ`` (over
  ``A``), where ``ℓ`` is the current length; the focus becomes ``ℓ+1``;
* ``DROP``: at focus ``f : x -> y`` (over ``A``), move the focus to ``y : A``;

and is accepted once the focus is back at an object.  The move sequence
is forced by the context, so :func:`check_ps` replays it greedily.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

from catt.diagnostics import Diagnostic
from catt.rules import GLOB, check_ctx
from catt.syntax import OBJ, Arrow, Obj, RawCtx, RawType, Var, VarSet, dim_ctx, dim_ty


class PsMove(enum.Enum):
    START = "start"
    EXTEND = "extend"
    DROP = "drop"

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PsDerivation:
    ctx: RawCtx
    moves: tuple[PsMove, ...]
    focus: tuple[int, RawType]


@dataclass(frozen=True)
class Step:
    """One replayed move: the focus before it and, for EXTEND, the new names."""

    move: PsMove
    focus: tuple[int, RawType]
    fresh: int = -1


def _not_ps(reason: str, **kw) -> Diagnostic:
    return Diagnostic("ps", "NotPs", reason, **kw)


def _drop(focus: tuple[int, RawType]) -> Union[tuple[int, RawType], None]:
    _, ty = focus
    if isinstance(ty, Arrow) and isinstance(ty.tgt, Var):
        return ty.tgt.level, ty.base
    return None


def check_ps(ctx: RawCtx) -> Union[PsDerivation, Diagnostic]:
    """Decide ``ctx ⊢ps`` and return its (unique) derivation."""
    res = check_ctx(GLOB, ctx)
    if isinstance(res, Diagnostic):
        return _not_ps(f"not a Glob context: {res.message}", details=(("cause", res),))
    if not ctx or ctx[0] != (0, OBJ):
        return _not_ps("a ps-context starts with a single object (0 : *)")
    moves = [PsMove.START]
    focus: tuple[int, RawType] = (0, OBJ)
    n = len(ctx)
    pos = 1
    while pos < n:
        want = ctx[pos][1]
        while focus[1] != want:
            nxt = _drop(focus)
            if nxt is None or dim_ty(focus[1]) <= dim_ty(want):
                return _not_ps(
                    f"entry {pos} has a type that is not the type of any iterated target "
                    f"of the focus {focus[0]}",
                    expected=focus[1], actual=want,
                )
            moves.append(PsMove.DROP)
            focus = nxt
        if pos + 1 >= n:
            return _not_ps(f"entry {pos} is not followed by an arrow out of the focus")
        arrow = Arrow(want, Var(focus[0]), Var(pos))
        if ctx[pos + 1][1] != arrow:
            return _not_ps(
                f"entry {pos + 1} should be an arrow from {focus[0]} to {pos}",
                expected=arrow, actual=ctx[pos + 1][1],
            )
        moves.append(PsMove.EXTEND)
        focus = (pos + 1, arrow)
        pos += 2
    while not isinstance(focus[1], Obj):
        nxt = _drop(focus)
        if nxt is None:  # pragma: no cover - focus types are always variable arrows
            return _not_ps("focus cannot be dropped to an object")
        moves.append(PsMove.DROP)
        focus = nxt
    return PsDerivation(ctx, tuple(moves), focus)


def replay(d: PsDerivation) -> Iterator[Step]:
    """Re-run the moves of ``d``, yielding each with the focus it acts on."""
    focus: tuple[int, RawType] = (0, OBJ)
    length = 0
    for move in d.moves:
        if move is PsMove.START:
            yield Step(move, focus)
            length = 1
        elif move is PsMove.DROP:
            yield Step(move, focus)
            focus = _drop(focus)  # type: ignore[assignment]
        else:
            yield Step(move, focus, length)
            focus = (length + 1, Arrow(focus[1], Var(focus[0]), Var(length)))
            length += 2


def src_vars(d: PsDerivation, i: int) -> list[int]:
    """The variables of the ``i``-source, in order."""
    out: list[int] = []
    for step in replay(d):
        if step.move is PsMove.START:
            out = [] if i == 0 else [0]
        elif step.move is PsMove.EXTEND and i > dim_ty(step.focus[1]) + 1:
            out += [step.fresh, step.fresh + 1]
    return out


def tgt_vars(d: PsDerivation, i: int) -> list[int]:
    """The variables of the ``i``-target, in order."""
    out: list[int] = []
    for step in replay(d):
        if step.move is PsMove.START:
            out = [] if i == 0 else [0]
        elif step.move is PsMove.EXTEND:
            edge = dim_ty(step.focus[1]) + 1
            if i == edge:
                # the latest element is replaced by the new target endpoint
                out = out[:-1] + [step.fresh]
            elif i > edge:
                out += [step.fresh, step.fresh + 1]
    return out


def src_set(d: PsDerivation) -> VarSet:
    return frozenset(src_vars(d, dim_ctx(d.ctx)))


def tgt_set(d: PsDerivation) -> VarSet:
    return frozenset(tgt_vars(d, dim_ctx(d.ctx)))


@dataclass(frozen=True)
class TriangleRel:
    ctx: RawCtx
    pairs: frozenset

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs


def triangle_rel(ctx: RawCtx) -> TriangleRel:
    """Transitive closure of ``x ◃ f ◃ y`` for every ``f : x -> y`` in ``ctx``.

    Arrows whose endpoints are not variables contribute nothing.
    """
    gen: set[tuple[int, int]] = set()
    for f, ty in ctx:
        if isinstance(ty, Arrow) and isinstance(ty.src, Var) and isinstance(ty.tgt, Var):
            gen.add((ty.src.level, f))
            gen.add((f, ty.tgt.level))
    succ: dict[int, set[int]] = {}
    for a, b in gen:
        succ.setdefault(a, set()).add(b)
    closure = set()
    for start in succ:
        stack = list(succ[start])
        seen: set[int] = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ.get(v, ()))
        closure.update((start, v) for v in seen)
    return TriangleRel(ctx, frozenset(closure))


def is_linear(ctx: RawCtx, rel: TriangleRel) -> bool:
    """Whether ``rel`` is a strict total order on the variables of ``ctx``."""
    names = [name for name, _ in ctx]
    if any((x, x) in rel for x in names):
        return False
    return all(
        (x, y) in rel or (y, x) in rel
        for a, x in enumerate(names)
        for y in names[a + 1:]
    )


def triangle_chain(ctx: RawCtx, rel: TriangleRel) -> list[int]:
    """The variables of ``ctx`` sorted by a linear ``rel``."""
    if not is_linear(ctx, rel):
        raise ValueError("◃ is not a linear order on this context")
    # in a strict total order the rank is the number of predecessors
    return sorted((name for name, _ in ctx), key=lambda x: sum((y, x) in rel for y, _ in ctx))
