"""Raw syntax of globular type theories and its substitution calculus.

Variables are De Bruijn levels: the k-th variable declared in a context is
named ``k``.  Contexts and substitutions are plain tuples of
``(name, value)`` pairs, oldest binding first.  Everything here is total on
raw syntax; well-formedness is the business of :mod:`catt.rules`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Tuple, Union


@dataclass(frozen=True)
class Obj:
    """The type of 0-cells."""

    def __repr__(self) -> str:
        return "Obj()"


@dataclass(frozen=True)
class Arrow:
    """``Arrow(base, src, tgt)``: cells from ``src`` to ``tgt``, both of type ``base``."""

    base: "RawType"
    src: "RawTerm"
    tgt: "RawTerm"


@dataclass(frozen=True)
class Var:
    level: int


@dataclass(frozen=True)
class Coh:
    """A term constructor applied to a substitution.

    ``index`` is opaque to this module; a theory signature gives it meaning.
    """

    index: Hashable
    sub: "RawSub"


RawType = Union[Obj, Arrow]
RawTerm = Union[Var, Coh]
RawSub = Tuple[Tuple[int, RawTerm], ...]
RawCtx = Tuple[Tuple[int, RawType], ...]
VarSet = frozenset

OBJ = Obj()
EMPTY: tuple = ()


def apply_sub_ty(ty: RawType, sub: RawSub) -> RawType:
    if isinstance(ty, Obj):
        return ty
    return Arrow(
        apply_sub_ty(ty.base, sub), apply_sub_tm(ty.src, sub), apply_sub_tm(ty.tgt, sub)
    )


def apply_sub_tm(tm: RawTerm, sub: RawSub) -> RawTerm:
    if isinstance(tm, Coh):
        return Coh(tm.index, compose(tm.sub, sub))
    # newest binding wins
    for name, value in reversed(sub):
        if name == tm.level:
            return value
    return tm


def compose(gamma: RawSub, delta: RawSub) -> RawSub:
    """``gamma ∘ delta``: apply ``delta`` to every value of ``gamma``."""
    return tuple((name, apply_sub_tm(value, delta)) for name, value in gamma)


def identity(ctx: RawCtx) -> RawSub:
    return tuple((name, Var(name)) for name, _ in ctx)


def dim_ty(ty: RawType) -> int:
    n = 0
    while isinstance(ty, Arrow):
        ty = ty.base
        n += 1
    return n


def dim_ctx(ctx: RawCtx) -> int:
    return max((dim_ty(ty) for _, ty in ctx), default=0)


def vars_tm(tm: RawTerm) -> VarSet:
    if isinstance(tm, Var):
        return frozenset((tm.level,))
    # the index's own variables are bound in its context
    return vars_sub(tm.sub)


def vars_ty(ty: RawType) -> VarSet:
    out: set[int] = set()
    while isinstance(ty, Arrow):
        out |= vars_tm(ty.src)
        out |= vars_tm(ty.tgt)
        ty = ty.base
    return frozenset(out)


def vars_sub(sub: RawSub) -> VarSet:
    out: set[int] = set()
    for _, value in sub:
        out |= vars_tm(value)
    return frozenset(out)


def vars_ctx(ctx: RawCtx) -> VarSet:
    return frozenset(name for name, _ in ctx)


def syn_eq(a: object, b: object) -> bool:
    """Structural equality on any raw sort.

    Coherence indices take part through their own ``__eq__``, which for CaTT
    ignores fullness witnesses.
    """
    return a == b
