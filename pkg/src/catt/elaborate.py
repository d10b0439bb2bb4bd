"""Elaboration of surface declarations into kernel syntax.

Telescope variables become De Bruijn levels in declaration order.  An
application ``c(a1, ..., an)`` of a coherence becomes ``Coh(index, γ)`` with
``γ`` the positional substitution; an application of a ``def`` is inlined by
substituting into its body.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from catt.diagnostics import Diagnostic, Rejected, Span
from catt.parser import App, Ident, SArrow, Star, SurfaceDecl, SurfaceTerm, SurfaceType
from catt.rules import Checker
from catt.syntax import Arrow, Coh, OBJ, RawCtx, RawTerm, RawType, Var, apply_sub_tm, apply_sub_ty
from catt.theory import CATT, CohIndex, make_index


@dataclass(frozen=True)
class DefEntry:
    ctx: RawCtx
    body: RawTerm
    ty: RawType


@dataclass(frozen=True)
class Declared:
    kind: str
    name: str
    names: tuple[str, ...]
    value: Union[CohIndex, DefEntry]

    @property
    def ctx(self) -> RawCtx:
        return self.value.ctx

    @property
    def ty(self) -> RawType:
        return self.value.ty


class DeclStore:
    """Checked declarations, in insertion order."""

    def __init__(self, cache: bool = True):
        self.checker = Checker(CATT, cache=cache)
        self.entries: dict[str, Declared] = {}

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> Declared:
        return self.entries[name]

    def __iter__(self):
        return iter(self.entries.values())

    def add(self, decl: SurfaceDecl) -> Union[Declared, Diagnostic]:
        """Elaborate ``decl``; store it unless it is a ``check`` or fails."""
        out = elaborate(self, decl)
        if isinstance(out, Declared) and out.kind != "check":
            self.entries[out.name] = out
        return out


def _err(rule: str, kind: str, message: str, span: Span, **kw) -> Rejected:
    return Rejected(Diagnostic(rule, kind, message, span=span, **kw))


class _Scope:
    def __init__(self, store: DeclStore):
        self.store = store
        self.checker = store.checker
        self.ctx: RawCtx = ()
        self.names: list[str] = []

    def bind(self, name: str, ty: SurfaceType, span: Span) -> None:
        if name in self.names:
            raise _err("cc", "DuplicateName", f"variable {name!r} is bound twice", span)
        raw = self.ty(ty)
        self.ctx += ((len(self.ctx), raw),)
        self.names.append(name)

    def ty(self, ty: SurfaceType) -> RawType:
        if isinstance(ty, Star):
            return OBJ
        src, a = self.tm(ty.src)
        tgt, b = self.tm(ty.tgt)
        if a != b:
            raise _err(
                "ar", "EndpointTypeMismatch",
                "the two sides of '->' do not have the same type",
                ty.span, expected=a, actual=b,
            )
        return Arrow(a, src, tgt)

    def tm(self, tm: SurfaceTerm) -> tuple[RawTerm, RawType]:
        if isinstance(tm, Ident):
            if tm.name in self.names:
                k = self.names.index(tm.name)
                return Var(k), self.ctx[k][1]
            if tm.name in self.store:
                arity = len(self.store[tm.name].ctx)
                raise _err(
                    "sc", "ArityMismatch",
                    f"{tm.name!r} takes {arity} arguments, given 0", tm.span,
                    expected=arity, actual=0,
                )
            raise _err("var", "UnknownName", f"unknown name {tm.name!r}", tm.span)
        return self.app(tm)

    def app(self, tm: App) -> tuple[RawTerm, RawType]:
        if tm.name in self.names:
            raise _err("elab", "NotApplicable", f"variable {tm.name!r} cannot be applied", tm.span)
        if tm.name not in self.store:
            raise _err("var", "UnknownName", f"unknown name {tm.name!r}", tm.span)
        entry = self.store[tm.name]
        if len(tm.args) != len(entry.ctx):
            raise _err(
                "sc", "ArityMismatch",
                f"{tm.name!r} takes {len(entry.ctx)} arguments, given {len(tm.args)}", tm.span,
                expected=len(entry.ctx), actual=len(tm.args),
            )
        sub = tuple((k, self.tm(arg)[0]) for k, arg in enumerate(tm.args))
        value = entry.value
        if isinstance(value, CohIndex):
            got = self.checker.infer_tm(self.ctx, Coh(value, sub), assume_ctx=True)
            if isinstance(got, Diagnostic):
                raise Rejected(_narrow(got, tm))
            return Coh(value, sub), got
        res = self.checker.check_sub(self.ctx, sub, value.ctx, assume_ctx=True)
        if isinstance(res, Diagnostic):
            raise Rejected(_narrow(res, tm))
        return apply_sub_tm(value.body, sub), apply_sub_ty(value.ty, sub)


def _narrow(diag: Diagnostic, app: App) -> Diagnostic:
    """Point a substitution failure at the offending argument when possible."""
    k = diag.detail("cause", diag).detail("component")
    if k is not None:
        return diag.at(app.args[k].span)
    return diag.at(app.span)


def elaborate(store: DeclStore, decl: SurfaceDecl) -> Union[Declared, Diagnostic]:
    try:
        return _elaborate(store, decl)
    except Rejected as r:
        return r.diag.at(decl.span)


def _elaborate(store: DeclStore, decl: SurfaceDecl) -> Declared:
    if decl.name in store:
        raise _err("elab", "DuplicateDecl", f"{decl.name!r} is already declared", decl.span)
    scope = _Scope(store)
    try:
        return _elaborate_in(scope, decl)
    except Rejected as r:
        if r.diag.detail("names") is None:
            r.diag = replace(r.diag, details=r.diag.details + (("names", tuple(scope.names)),))
        raise


def _elaborate_in(scope: _Scope, decl: SurfaceDecl) -> Declared:
    store = scope.store
    for b in decl.telescope:
        scope.bind(b.name, b.ty, b.span)
    ty = scope.ty(decl.result_ty)
    names = tuple(scope.names)
    if decl.kind == "coh":
        index = make_index(scope.ctx, ty, label=decl.name, checker=store.checker)
        if isinstance(index, Diagnostic):
            span = decl.span if index.rule == "ps" else decl.result_ty.span
            raise Rejected(index.at(span))
        return Declared("coh", decl.name, names, index)
    assert decl.body is not None
    body, got = scope.tm(decl.body)
    if got != ty:
        raise _err(
            "tm" if isinstance(body, Coh) else "var", "TypeMismatch",
            "body does not have the declared type", decl.body.span,
            expected=ty, actual=got,
        )
    return Declared(decl.kind, decl.name, names, DefEntry(scope.ctx, body, ty))


def elaborate_all(
    decls: list[SurfaceDecl], store: Optional[DeclStore] = None, max_errors: int = 1
) -> tuple[DeclStore, list[Diagnostic]]:
    """Add ``decls`` in order, stopping after ``max_errors`` failures."""
    store = store if store is not None else DeclStore()
    errors: list[Diagnostic] = []
    for decl in decls:
        out = store.add(decl)
        if isinstance(out, Diagnostic):
            errors.append(out)
            if len(errors) >= max_errors:
                break
    return store, errors
