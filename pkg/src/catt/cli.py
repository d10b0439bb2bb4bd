"""Command-line driver: ``catt check``, ``catt dump`` and ``catt explain-ps``.

Exit codes: 0 success, 1 a declaration failed to check, 2 unreadable or
unparsable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence, TextIO

from catt.diagnostics import Diagnostic
from catt.dump import dump_json, dump_sexpr
from catt.elaborate import DeclStore, elaborate_all
from catt.parser import parse
from catt.pretty import show, show_ctx
from catt.ps import is_linear, src_set, tgt_set, triangle_chain, triangle_rel
from catt.syntax import dim_ctx
from catt.theory import Cop, CohIndex

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


def _color(stream: TextIO) -> bool:
    return os.environ.get("CATT_COLOR", "1") != "0" and stream.isatty()


def report(diag: Diagnostic, stream: TextIO) -> None:
    names = diag.detail("names", ())
    where = f"{diag.span}: " if diag.span else ""
    label = "error"
    if _color(stream):
        label = f"\x1b[1;31m{label}\x1b[0m"
    print(f"{where}{label}[{diag.rule}/{diag.kind}]: {diag.message}", file=stream)
    if diag.expected is not None or diag.actual is not None:
        print(f"  expected: {show(diag.expected, names)}", file=stream)
        print(f"  actual:   {show(diag.actual, names)}", file=stream)


def _read(path: str):
    """Read and parse ``path``; returns (declarations, None) or (None, diagnostic)."""
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        return None, Diagnostic("io", "IOError", f"cannot read {path}: {e}")
    decls = parse(source, path)
    if isinstance(decls, Diagnostic):
        return None, decls
    return decls, None


def _load(path: str, cache: bool, max_errors: int):
    """Read, parse and check ``path``; returns (store, errors, exit code)."""
    decls, diag = _read(path)
    if diag is not None:
        return None, [diag], EXIT_INPUT
    store, errors = elaborate_all(decls, DeclStore(cache=cache), max_errors)
    return store, errors, EXIT_CHECK if errors else EXIT_OK


def cmd_check(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    for path in args.files:
        loaded, errors, code = _load(path, not args.no_cache, args.max_errors)
        for diag in errors:
            report(diag, err)
        if code != EXIT_OK:
            return code
        print(f"{path}: {len(loaded.entries)} declarations ok", file=out)
    return EXIT_OK


def cmd_dump(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded, errors, code = _load(args.file, not args.no_cache, args.max_errors)
    for diag in errors:
        report(diag, err)
    if code != EXIT_OK:
        return code
    decls = list(loaded)
    out.write(dump_json(decls) if args.format == "json" else dump_sexpr(decls))
    return EXIT_OK


def explain(name: str, index: CohIndex, names: Sequence[str]) -> list[str]:
    d = index.derivation
    ctx = index.ctx
    rel = triangle_rel(ctx)
    chain = triangle_chain(ctx, rel) if is_linear(ctx, rel) else None
    kind = "operation (Cop)" if isinstance(index.witness, Cop) else "coherence (Ccoh)"
    return [
        f"coh {name}",
        f"  context:   {show_ctx(ctx, names)}",
        f"  moves:     {' '.join(m.value for m in d.moves)}",
        f"  chain:     {' ◃ '.join(names[k] for k in chain) if chain else 'not linear'}",
        f"  dimension: {dim_ctx(ctx)}",
        f"  source:    {show(src_set(d), names)}",
        f"  target:    {show(tgt_set(d), names)}",
        f"  type:      {show(index.ty, names)}",
        f"  fullness:  {kind}",
    ]


def cmd_explain_ps(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    decls, diag = _read(args.file)
    if diag is not None:
        report(diag, err)
        return EXIT_INPUT
    store = DeclStore(cache=not args.no_cache)
    code = EXIT_OK
    for decl in decls:
        got = store.add(decl)
        if isinstance(got, Diagnostic):
            code = EXIT_CHECK
            report(got, err)
            if decl.kind == "coh":
                print(f"coh {decl.name}\n  rejected: [{got.rule}/{got.kind}] {got.message}", file=out)
        elif got.kind == "coh":
            print("\n".join(explain(got.name, got.value, got.names)), file=out)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catt", description="Type checker for CaTT.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-cache", action="store_true", help="disable index memoization")
    common.add_argument(
        "--max-errors", type=int, default=1, metavar="N",
        help="keep checking a file until N declarations have failed (default 1)",
    )
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="check declaration files in order")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_check)
    d = sub.add_parser("dump", parents=[common], help="print elaborated raw syntax")
    d.add_argument("file")
    d.add_argument("--format", choices=("sexpr", "json"), default="sexpr")
    d.set_defaults(func=cmd_dump)
    e = sub.add_parser(
        "explain-ps", parents=[common],
        help="show ps derivations, ◃ chains and boundaries of each coherence",
    )
    e.add_argument("file")
    e.set_defaults(func=cmd_explain_ps)
    return p


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if getattr(args, "max_errors", 1) < 1:
        print("catt: --max-errors must be at least 1", file=err)
        return EXIT_INPUT
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
