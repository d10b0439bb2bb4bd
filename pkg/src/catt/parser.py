"""Surface syntax.

::

    decl      := ("coh" | "def" | "check") ident telescope ":" ty [":=" term]
    telescope := { "(" ident ":" ty ")" }
    ty        := "*" | term "->" term
    term      := ident | ident "(" [term {"," term}] ")"

``#`` starts a comment running to the end of the line.  ``coh`` declarations
have no body; ``def`` and ``check`` require one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from catt.diagnostics import Diagnostic, Rejected, Span

MAX_NESTING = 200

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<define>:=)|(?P<punct>[():,*])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
)
KEYWORDS = ("coh", "def", "check")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span


@dataclass(frozen=True)
class Star:
    span: Span


@dataclass(frozen=True)
class SArrow:
    src: "SurfaceTerm"
    tgt: "SurfaceTerm"
    span: Span


@dataclass(frozen=True)
class Ident:
    name: str
    span: Span


@dataclass(frozen=True)
class App:
    name: str
    args: tuple["SurfaceTerm", ...]
    span: Span


SurfaceType = Union[Star, SArrow]
SurfaceTerm = Union[Ident, App]


@dataclass(frozen=True)
class Binder:
    name: str
    ty: SurfaceType
    span: Span


@dataclass(frozen=True)
class SurfaceDecl:
    kind: str
    name: str
    telescope: tuple[Binder, ...]
    result_ty: SurfaceType
    body: Optional[SurfaceTerm]
    span: Span


def _error(message: str, span: Span) -> Rejected:
    return Rejected(Diagnostic("parse", "ParseError", message, span=span))


def tokenize(source: str, file: Optional[str] = None) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            span = Span(file, line, col, line, col + 1)
            raise _error(f"unexpected character {source[pos]!r}", span)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            if kind == "ident" and text in KEYWORDS:
                kind = "keyword"
            elif kind in ("punct", "arrow", "define"):
                kind = text
            tokens.append(Token(kind, text, Span(file, line, col, line, col + len(text))))
        pos = m.end()
    tokens.append(Token("eof", "", Span(file, line, pos - line_start + 1, line, pos - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise _error(f"expected {what}, found {found}", tok.span)
        return self.next()

    def decls(self) -> list[SurfaceDecl]:
        out = []
        while self.peek.kind != "eof":
            out.append(self.decl())
        return out

    def decl(self) -> SurfaceDecl:
        kw = self.expect("keyword", "'coh', 'def' or 'check'")
        name = self.expect("ident", "a declaration name")
        binders = []
        while self.peek.kind == "(":
            open_ = self.next()
            var = self.expect("ident", "a variable name")
            self.expect(":", "':'")
            ty = self.ty()
            self.expect(")", "')'")
            binders.append(Binder(var.text, ty, _join(open_.span, ty.span)))
        self.expect(":", "':' before the declaration's type")
        ty = self.ty()
        body = None
        if self.peek.kind == ":=":
            define = self.next()
            if kw.text == "coh":
                raise _error("a coherence has no body", define.span)
            body = self.term()
        elif kw.text != "coh":
            raise _error(f"'{kw.text}' needs a body ':= term'", self.peek.span)
        end = (body or ty).span
        return SurfaceDecl(kw.text, name.text, tuple(binders), ty, body, _join(kw.span, end))

    def ty(self) -> SurfaceType:
        if self.peek.kind == "*":
            return Star(self.next().span)
        src = self.term()
        self.expect("->", "'->'")
        tgt = self.term()
        return SArrow(src, tgt, _join(src.span, tgt.span))

    def term(self) -> SurfaceTerm:
        head = self.expect("ident", "a term")
        if self.peek.kind != "(":
            return Ident(head.text, head.span)
        self.next()
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise _error("terms are nested too deeply", head.span)
        args = []
        if self.peek.kind != ")":
            args.append(self.term())
            while self.peek.kind == ",":
                self.next()
                args.append(self.term())
        close = self.expect(")", "',' or ')'")
        self.depth -= 1
        return App(head.text, tuple(args), _join(head.span, close.span))


def _join(a: Span, b: Span) -> Span:
    return Span(a.file, a.line, a.column, b.end_line, b.end_column)


def parse(source: str, file: Optional[str] = None) -> Union[list[SurfaceDecl], Diagnostic]:
    try:
        return _Parser(tokenize(source, file)).decls()
    except Rejected as r:
        return r.diag
