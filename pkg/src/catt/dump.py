"""Canonical serializations of elaborated declarations, and their readers.

S-expression grammar (ASCII, one declaration per line)::

    ty   := obj | (arrow ty tm tm)
    tm   := (var N) | (coh ctx ty sub)
    ctx  := (ctx (N ty)*)
    sub  := (sub (N tm)*)
    decl := (decl coh NAME ctx ty) | (decl def NAME ctx ty tm) | (decl check NAME ctx ty tm)

A coherence term carries its whole index, so a dump can be re-checked
without the source file.  The JSON mirror encodes every node as
``{"sort", "node", "children"}`` (declarations also carry ``"name"``).
"""

from __future__ import annotations

import json
import re
from typing import Any, Union

from catt.diagnostics import Diagnostic
from catt.elaborate import Declared, DefEntry
from catt.rules import Checker
from catt.syntax import OBJ, Arrow, Coh, Obj, RawCtx, RawSub, RawTerm, RawType, Var
from catt.theory import CATT, CohIndex, make_index

# -- writers -------------------------------------------------------------------


def sexpr(obj: Any) -> str:
    """S-expression of a raw type or term."""
    if isinstance(obj, Obj):
        return "obj"
    if isinstance(obj, Arrow):
        return f"(arrow {sexpr(obj.base)} {sexpr(obj.src)} {sexpr(obj.tgt)})"
    if isinstance(obj, Var):
        return f"(var {obj.level})"
    if isinstance(obj, Coh):
        return f"(coh {sexpr_ctx(obj.index.ctx)} {sexpr(obj.index.ty)} {sexpr_sub(obj.sub)})"
    raise TypeError(f"not raw syntax: {obj!r}")


def sexpr_ctx(ctx: RawCtx) -> str:
    return "(ctx" + "".join(f" ({name} {sexpr(ty)})" for name, ty in ctx) + ")"


def sexpr_sub(sub: RawSub) -> str:
    return "(sub" + "".join(f" ({name} {sexpr(tm)})" for name, tm in sub) + ")"


def sexpr_decl(d: Declared) -> str:
    head = f"(decl {d.kind} {d.name} {sexpr_ctx(d.ctx)} {sexpr(d.ty)}"
    if isinstance(d.value, DefEntry):
        head += f" {sexpr(d.value.body)}"
    return head + ")"


def dump_sexpr(decls: list[Declared]) -> str:
    return "".join(sexpr_decl(d) + "\n" for d in decls)


def _node(sort: str, node: str, children: list) -> dict:
    return {"sort": sort, "node": node, "children": children}


def to_json(obj: Any) -> dict:
    if isinstance(obj, Obj):
        return _node("ty", "obj", [])
    if isinstance(obj, Arrow):
        return _node("ty", "arrow", [to_json(obj.base), to_json(obj.src), to_json(obj.tgt)])
    if isinstance(obj, Var):
        return _node("tm", "var", [obj.level])
    if isinstance(obj, Coh):
        return _node(
            "tm", "coh",
            [ctx_to_json(obj.index.ctx), to_json(obj.index.ty), sub_to_json(obj.sub)],
        )
    raise TypeError(f"not raw syntax: {obj!r}")


def ctx_to_json(ctx: RawCtx) -> dict:
    return _node("ctx", "ctx", [[name, to_json(ty)] for name, ty in ctx])


def sub_to_json(sub: RawSub) -> dict:
    return _node("sub", "sub", [[name, to_json(tm)] for name, tm in sub])


def decl_to_json(d: Declared) -> dict:
    children = [ctx_to_json(d.ctx), to_json(d.ty)]
    if isinstance(d.value, DefEntry):
        children.append(to_json(d.value.body))
    out = _node("decl", d.kind, children)
    out["name"] = d.name
    return out


def dump_json(decls: list[Declared]) -> str:
    return json.dumps([decl_to_json(d) for d in decls], indent=2, ensure_ascii=True) + "\n"


# -- readers -------------------------------------------------------------------


class DumpError(ValueError):
    pass


_ATOM = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _read_sexprs(text: str) -> list:
    stack: list[list] = [[]]
    pos = 0
    while True:
        m = _ATOM.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise DumpError(f"unreadable input at offset {pos}")
            break
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise DumpError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise DumpError("unbalanced '('")
    return stack[0]


def _level(x: Any) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DumpError(f"expected a variable level, got {x!r}")
    if isinstance(x, str):
        if not x.isdigit():
            raise DumpError(f"expected a variable level, got {x!r}")
        return int(x)
    if x < 0:
        raise DumpError(f"negative variable level {x}")
    return x


class _Rebuilder:
    """Turn decoded trees back into raw syntax, re-validating every index."""

    def __init__(self, checker: Checker):
        self.checker = checker
        self.indices: dict[tuple, CohIndex] = {}

    def index(self, ctx: RawCtx, ty: RawType) -> CohIndex:
        key = (ctx, ty)
        if key not in self.indices:
            got = make_index(ctx, ty, checker=self.checker)
            if isinstance(got, Diagnostic):
                raise _Invalid(got)
            self.indices[key] = got
        return self.indices[key]

    # s-expressions

    def s_ty(self, x: Any) -> RawType:
        if x == "obj":
            return OBJ
        if isinstance(x, list) and len(x) == 4 and x[0] == "arrow":
            return Arrow(self.s_ty(x[1]), self.s_tm(x[2]), self.s_tm(x[3]))
        raise DumpError(f"malformed type {x!r}")

    def s_tm(self, x: Any) -> RawTerm:
        if isinstance(x, list) and len(x) == 2 and x[0] == "var":
            return Var(_level(x[1]))
        if isinstance(x, list) and len(x) == 4 and x[0] == "coh":
            return Coh(self.index(self.s_ctx(x[1]), self.s_ty(x[2])), self.s_sub(x[3]))
        raise DumpError(f"malformed term {x!r}")

    def _pairs(self, x: Any, head: str) -> list:
        if not (isinstance(x, list) and x and x[0] == head):
            raise DumpError(f"expected ({head} ...), got {x!r}")
        for pair in x[1:]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DumpError(f"malformed {head} entry {pair!r}")
        return x[1:]

    def s_ctx(self, x: Any) -> RawCtx:
        return tuple((_level(n), self.s_ty(t)) for n, t in self._pairs(x, "ctx"))

    def s_sub(self, x: Any) -> RawSub:
        return tuple((_level(n), self.s_tm(t)) for n, t in self._pairs(x, "sub"))

    # JSON

    def j_node(self, x: Any, sort: str) -> tuple[str, list]:
        if not (isinstance(x, dict) and x.get("sort") == sort and isinstance(x.get("children"), list)):
            raise DumpError(f"expected a {sort} node, got {x!r}")
        return x.get("node"), x["children"]

    def j_ty(self, x: Any) -> RawType:
        node, ch = self.j_node(x, "ty")
        if node == "obj" and not ch:
            return OBJ
        if node == "arrow" and len(ch) == 3:
            return Arrow(self.j_ty(ch[0]), self.j_tm(ch[1]), self.j_tm(ch[2]))
        raise DumpError(f"malformed type node {x!r}")

    def j_tm(self, x: Any) -> RawTerm:
        node, ch = self.j_node(x, "tm")
        if node == "var" and len(ch) == 1:
            return Var(_level(ch[0]))
        if node == "coh" and len(ch) == 3:
            return Coh(self.index(self.j_ctx(ch[0]), self.j_ty(ch[1])), self.j_sub(ch[2]))
        raise DumpError(f"malformed term node {x!r}")

    def _jpairs(self, x: Any, sort: str) -> list:
        _, ch = self.j_node(x, sort)
        for pair in ch:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DumpError(f"malformed {sort} entry {pair!r}")
        return ch

    def j_ctx(self, x: Any) -> RawCtx:
        return tuple((_level(n), self.j_ty(t)) for n, t in self._jpairs(x, "ctx"))

    def j_sub(self, x: Any) -> RawSub:
        return tuple((_level(n), self.j_tm(t)) for n, t in self._jpairs(x, "sub"))

    def declared(self, kind: Any, name: Any, ctx: RawCtx, ty: RawType, body: Any) -> Declared:
        if kind == "coh" and body is None:
            index = make_index(ctx, ty, label=name, checker=self.checker)
            if isinstance(index, Diagnostic):
                raise _Invalid(index)
            return Declared("coh", name, (), index)
        if kind in ("def", "check") and body is not None:
            res = self.checker.check_tm(ctx, body, ty)
            if isinstance(res, Diagnostic):
                raise _Invalid(res)
            return Declared(kind, name, (), DefEntry(ctx, body, ty))
        raise DumpError(f"malformed declaration of kind {kind!r}")


class _Invalid(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


def _load(decode, text: str) -> Union[list[Declared], Diagnostic]:
    try:
        return decode(_Rebuilder(Checker(CATT)), text)
    except _Invalid as e:
        return e.diag
    except (DumpError, json.JSONDecodeError, RecursionError) as e:
        return Diagnostic("parse", "DumpFormatError", str(e))


def _decode_sexpr(rb: _Rebuilder, text: str) -> list[Declared]:
    out = []
    for x in _read_sexprs(text):
        if not (isinstance(x, list) and len(x) in (5, 6) and x[0] == "decl"):
            raise DumpError(f"malformed declaration {x!r}")
        body = rb.s_tm(x[5]) if len(x) == 6 else None
        out.append(rb.declared(x[1], x[2], rb.s_ctx(x[3]), rb.s_ty(x[4]), body))
    return out


def _decode_json(rb: _Rebuilder, text: str) -> list[Declared]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise DumpError("expected a JSON array of declarations")
    out = []
    for x in data:
        kind, ch = rb.j_node(x, "decl")
        if len(ch) not in (2, 3) or not isinstance(x.get("name"), str):
            raise DumpError(f"malformed declaration {x!r}")
        body = rb.j_tm(ch[2]) if len(ch) == 3 else None
        out.append(rb.declared(kind, x["name"], rb.j_ctx(ch[0]), rb.j_ty(ch[1]), body))
    return out


def load_sexpr(text: str) -> Union[list[Declared], Diagnostic]:
    """Read and re-check an s-expression dump."""
    return _load(_decode_sexpr, text)


def load_json(text: str) -> Union[list[Declared], Diagnostic]:
    """Read and re-check a JSON dump."""
    return _load(_decode_json, text)
