"""Judgment engine for globular type theories.

A theory is given by a :class:`TheorySignature`: which objects are indices of
term constructors, and for each index a context ``ctx_of(i)`` and a type
``ty_of(i)``.  The rules are the ones of Glob (``ec``, ``cc``, ``ob``, ``ar``,
``var``, ``es``, ``sc``) plus the single generic rule ``tm``::

    ctx_of(i) ⊢ ty_of(i)     Δ ⊢ γ : ctx_of(i)
    ------------------------------------------
        Δ ⊢ Coh(i, γ) : ty_of(i)[γ]

There is no conversion rule, so the rules are syntax directed: type
inference is complete and checking is inference followed by syntactic
comparison.  Judgments come back as values; a failed check returns a
:class:`~catt.diagnostics.Diagnostic` and never raises.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

from catt.diagnostics import Diagnostic, Rejected
from catt.syntax import (
    OBJ,
    Arrow,
    Coh,
    Obj,
    RawCtx,
    RawSub,
    RawTerm,
    RawType,
    Var,
    apply_sub_ty,
    dim_ctx,
    dim_ty,
)


@dataclass(frozen=True)
class TheorySignature:
    """Parameters of a globular type theory.

    ``admit`` optionally re-validates whatever evidence an index carries
    (for CaTT: the ps derivation and the fullness witness) and returns a
    diagnostic when the index is bogus.  ``wf_dimension`` promises
    ``dim_ctx(ctx_of(i)) <= dim_ty(ty_of(i))`` and has it enforced.

    Indices are compared with their own ``__eq__``/``__hash__``, which must
    agree with ``eq_index``.
    """

    name: str
    is_index: Callable[[Any], bool]
    ctx_of: Callable[[Any], RawCtx]
    ty_of: Callable[[Any], RawType]
    eq_index: Callable[[Any, Any], bool] = operator.eq
    wf_dimension: bool = False
    admit: Optional[Callable[[Any], Optional[Diagnostic]]] = None


def _no_index(_: Any) -> Any:
    raise LookupError("Glob has no term constructors")


GLOB = TheorySignature(
    name="Glob",
    is_index=lambda _: False,
    ctx_of=_no_index,
    ty_of=_no_index,
    wf_dimension=True,
)


def glob_signature() -> TheorySignature:
    return GLOB


@dataclass(frozen=True)
class Judgment:
    """A successful check.  ``inferred`` is set for term judgments only."""

    kind: str  # "ctx" | "ty" | "tm" | "sub"
    subject: Any
    inferred: Optional[RawType] = None


Result = Union[Judgment, Diagnostic]


def _fail(rule: str, kind: str, message: str, **kw) -> Rejected:
    return Rejected(Diagnostic(rule, kind, message, **kw))


class Checker:
    """Type checker for one theory.

    Validation of each index (``ctx_of(i) ⊢ ty_of(i)`` plus the signature's
    extra conditions) is memoized per checker when ``cache`` is set.  Cache
    entries are idempotent, so a checker may be shared between threads.
    """

    def __init__(self, sig: TheorySignature, cache: bool = True):
        self.sig = sig
        self.cache = cache
        self._indices: dict[Any, Optional[Diagnostic]] = {}

    # -- public entry points -------------------------------------------------

    def check_ctx(self, ctx: RawCtx) -> Result:
        try:
            self._ctx(ctx)
        except Rejected as r:
            return r.diag
        return Judgment("ctx", ctx)

    def check_ty(self, ctx: RawCtx, ty: RawType) -> Result:
        try:
            self._ctx(ctx)
            self._ty(ctx, ty)
        except Rejected as r:
            return r.diag
        return Judgment("ty", ty)

    def infer_tm(
        self, ctx: RawCtx, tm: RawTerm, assume_ctx: bool = False
    ) -> Union[RawType, Diagnostic]:
        """Infer the type of ``tm``.  ``assume_ctx`` skips re-validating ``ctx``."""
        try:
            if not assume_ctx:
                self._ctx(ctx)
            return self._tm(ctx, tm)
        except Rejected as r:
            return r.diag

    def check_tm(self, ctx: RawCtx, tm: RawTerm, ty: RawType) -> Result:
        got = self.infer_tm(ctx, tm)
        if isinstance(got, Diagnostic):
            return got
        if got != ty:
            rule = "tm" if isinstance(tm, Coh) else "var"
            return Diagnostic(
                rule, "TypeMismatch", "term does not have the expected type",
                expected=ty, actual=got,
            )
        return Judgment("tm", tm, got)

    def check_sub(
        self, delta: RawCtx, sub: RawSub, gamma: RawCtx, assume_ctx: bool = False
    ) -> Result:
        try:
            if not assume_ctx:
                self._ctx(delta)
                self._ctx(gamma)
            self._sub(delta, sub, gamma)
        except Rejected as r:
            return r.diag
        return Judgment("sub", sub)

    def check_index(self, index: Any) -> Optional[Diagnostic]:
        """Premises of rule ``tm`` that do not involve the substitution."""
        try:
            self._index(index)
        except Rejected as r:
            return r.diag
        return None

    # -- rules; each assumes its context(s) already validated ----------------

    def _ctx(self, ctx: RawCtx) -> None:
        for k, (name, ty) in enumerate(ctx):
            if name != k:
                raise _fail(
                    "cc", "NameOutOfOrder",
                    f"entry {k} declares variable {name}, expected {k}",
                    expected=k, actual=name,
                )
            self._ty(ctx[:k], ty)

    def _ty(self, ctx: RawCtx, ty: RawType) -> None:
        if isinstance(ty, Obj):
            return
        if not isinstance(ty, Arrow):
            raise _fail("ob", "NotAType", f"{ty!r} is not a raw type")
        self._ty(ctx, ty.base)
        for end in (ty.src, ty.tgt):
            got = self._tm(ctx, end)
            if got != ty.base:
                raise _fail(
                    "ar", "EndpointTypeMismatch",
                    "arrow endpoint does not have the arrow's base type",
                    expected=ty.base, actual=got,
                )

    def _tm(self, ctx: RawCtx, tm: RawTerm) -> RawType:
        if isinstance(tm, Var):
            if isinstance(tm.level, int) and 0 <= tm.level < len(ctx):
                return ctx[tm.level][1]
            raise _fail(
                "var", "UnboundVariable",
                f"variable {tm.level} is not declared in a context of length {len(ctx)}",
                actual=tm,
            )
        if not isinstance(tm, Coh):
            raise _fail("var", "NotATerm", f"{tm!r} is not a raw term")
        index = tm.index
        self._index(index)
        ictx = self.sig.ctx_of(index)
        try:
            self._sub(ctx, tm.sub, ictx)
        except Rejected as r:
            raise _fail(
                "tm", "SubstitutionMismatch",
                f"arguments do not form a substitution into the context of {_label(index)}: "
                f"{r.diag.message}",
                expected=r.diag.expected, actual=r.diag.actual,
                details=(("cause", r.diag),),
            ) from None
        return apply_sub_ty(self.sig.ty_of(index), tm.sub)

    def _index(self, index: Any) -> None:
        if not self.sig.is_index(index):
            raise _fail(
                "tm", "UnknownIndex", f"{index!r} is not a term constructor of {self.sig.name}"
            )
        if self.cache and index in self._indices:
            diag = self._indices[index]
        else:
            diag = self._validate_index(index)
            if self.cache:
                self._indices[index] = diag
        if diag is not None:
            raise Rejected(diag)

    def _validate_index(self, index: Any) -> Optional[Diagnostic]:
        sig = self.sig
        if sig.admit is not None:
            diag = sig.admit(index)
            if diag is not None:
                return diag
        ictx, ity = sig.ctx_of(index), sig.ty_of(index)
        try:
            self._ctx(ictx)
            self._ty(ictx, ity)
        except Rejected as r:
            return Diagnostic(
                "tm", "IndexTypeIllFormed",
                f"type of {_label(index)} is not well formed in its context: {r.diag.message}",
                details=(("cause", r.diag),),
            )
        if sig.wf_dimension and dim_ctx(ictx) > dim_ty(ity):
            return Diagnostic(
                "tm", "WfViolation",
                f"context dimension {dim_ctx(ictx)} exceeds type dimension {dim_ty(ity)}",
                expected=dim_ty(ity), actual=dim_ctx(ictx),
            )
        return None

    def _sub(self, delta: RawCtx, sub: RawSub, gamma: RawCtx) -> None:
        if len(sub) != len(gamma):
            raise _fail(
                "sc" if gamma else "es", "LengthMismatch",
                f"substitution has {len(sub)} components, target context has {len(gamma)} entries",
                expected=len(gamma), actual=len(sub),
            )
        for k, ((target, value), (name, ty)) in enumerate(zip(sub, gamma)):
            if target != name:
                raise _fail(
                    "sc", "TargetNameMismatch",
                    f"component {k} targets variable {target}, expected {name}",
                    expected=name, actual=target,
                )
            want = apply_sub_ty(ty, sub[:k])
            got = self._tm(delta, value)
            if got != want:
                raise _fail(
                    "sc", "TypeMismatch",
                    f"component {k} has the wrong type",
                    expected=want, actual=got, details=(("component", k),),
                )


def _label(index: Any) -> str:
    return getattr(index, "label", None) or "coherence"


# -- function-style API (one fresh checker per call) ---------------------------


def check_ctx(sig: TheorySignature, ctx: RawCtx) -> Result:
    return Checker(sig).check_ctx(ctx)


def check_ty(sig: TheorySignature, ctx: RawCtx, ty: RawType) -> Result:
    return Checker(sig).check_ty(ctx, ty)


def infer_tm(sig: TheorySignature, ctx: RawCtx, tm: RawTerm) -> Union[RawType, Diagnostic]:
    return Checker(sig).infer_tm(ctx, tm)


def check_tm(sig: TheorySignature, ctx: RawCtx, tm: RawTerm, ty: RawType) -> Result:
    return Checker(sig).check_tm(ctx, tm, ty)


def check_sub(sig: TheorySignature, delta: RawCtx, sub: RawSub, gamma: RawCtx) -> Result:
    return Checker(sig).check_sub(delta, sub, gamma)


def ok(result: Any) -> bool:
    return not isinstance(result, Diagnostic)


# -- disks, spheres and the type classifier ------------------------------------


def u_arrow(n: int) -> RawType:
    """The universal type of dimension ``n``, living in ``sphere(n)``."""
    ty: RawType = OBJ
    for k in range(n):
        ty = Arrow(ty, Var(2 * k), Var(2 * k + 1))
    return ty


def sphere(n: int) -> RawCtx:
    if n == 0:
        return ()
    d = disk(n - 1)
    return d + ((len(d), u_arrow(n - 1)),)


def disk(n: int) -> RawCtx:
    s = sphere(n)
    return s + ((len(s), u_arrow(n)),)


def classify_ty(sig: TheorySignature, ctx: RawCtx, ty: RawType) -> tuple[int, RawSub]:
    """Return ``(n, γ)`` with ``ctx ⊢ γ : sphere(n)`` and ``u_arrow(n)[γ] == ty``."""
    res = check_ty(sig, ctx, ty)
    if isinstance(res, Diagnostic):
        raise ValueError(f"classify_ty: type is not derivable: {res}")
    return _classify(ty)


def _classify(ty: RawType) -> tuple[int, RawSub]:
    if isinstance(ty, Obj):
        return 0, ()
    n, sub = _classify(ty.base)
    return n + 1, sub + ((2 * n, ty.src), (2 * n + 1, ty.tgt))


def ty_of_sphere_sub(sig: TheorySignature, ctx: RawCtx, n: int, sub: RawSub) -> RawType:
    res = check_sub(sig, ctx, sub, sphere(n))
    if isinstance(res, Diagnostic):
        raise ValueError(f"ty_of_sphere_sub: not a substitution into sphere({n}): {res}")
    return apply_sub_ty(u_arrow(n), sub)
