"""Enumerators, oracles and random generators shared by the test suite.

Everything here is built by construction from the inference rules and
deliberately avoids the checker's own algorithms (greedy ps recognition,
the type classifier) so that it can serve as an independent oracle.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional

from catt.syntax import OBJ, Arrow, Coh, Obj, Var, apply_sub_ty
from catt.theory import make_index

# -- exhaustive enumeration ----------------------------------------------------


def _dim(ty) -> int:
    return 0 if isinstance(ty, Obj) else 1 + _dim(ty.base)


def glob_contexts(max_len: int, max_dim: int) -> Iterator[tuple]:
    """Every well-formed Glob context with at most ``max_len`` entries."""

    def rec(ctx: tuple) -> Iterator[tuple]:
        yield ctx
        if len(ctx) == max_len:
            return
        by_type: dict = {}
        for name, ty in ctx:
            by_type.setdefault(ty, []).append(name)
        candidates = [OBJ]
        for ty, names in by_type.items():
            if _dim(ty) + 1 <= max_dim:
                candidates += [Arrow(ty, Var(x), Var(y)) for x in names for y in names]
        for ty in candidates:
            yield from rec(ctx + ((len(ctx), ty),))

    return rec(())


def ps_derivations(max_len: int) -> dict[tuple, list[tuple[str, ...]]]:
    """All derivations of ``Γ ⊢ps`` with ``len(Γ) <= max_len``, by forward search.

    Rules: pss starts at ``(0 : *)``; psd moves the focus from ``f : x -> y`` to
    ``y``; pse appends ``ℓ : A`` and ``ℓ+1 : x -> ℓ``; ps accepts at an object.
    """
    found: dict[tuple, list[tuple[str, ...]]] = {}
    stack = [(((0, OBJ),), 0, OBJ, ("start",))]
    while stack:
        ctx, x, ty, moves = stack.pop()
        if isinstance(ty, Obj):
            found.setdefault(ctx, []).append(moves)
        if isinstance(ty, Arrow) and isinstance(ty.tgt, Var):
            stack.append((ctx, ty.tgt.level, ty.base, moves + ("drop",)))
        if len(ctx) + 2 <= max_len:
            n = len(ctx)
            new = Arrow(ty, Var(x), Var(n))
            stack.append((ctx + ((n, ty), (n + 1, new)), n + 1, new, moves + ("extend",)))
    return found


def sphere_subs(ctx: tuple, n: int) -> Iterator[tuple]:
    """Every substitution from a Glob context into the ``n``-sphere.

    Built component by component from the definition of the sphere: the pair
    ``(2k, 2k+1)`` must be two variables of the type picked so far.
    """

    def rec(k: int, base, sub: tuple) -> Iterator[tuple]:
        if k == n:
            yield sub
            return
        same = [name for name, ty in ctx if ty == base]
        for a in same:
            for b in same:
                yield from rec(k + 1, Arrow(base, Var(a), Var(b)), sub + ((2 * k, Var(a)), (2 * k + 1, Var(b))))

    return rec(0, OBJ, ())


# -- standard coherences -------------------------------------------------------


def _disk(n: int) -> tuple:
    ctx = ((0, OBJ),)
    ty = OBJ
    for k in range(n):
        ctx = ctx + ((2 * k + 1, ty), (2 * k + 2, Arrow(ty, Var(2 * k), Var(2 * k + 1))))
        ty = Arrow(ty, Var(2 * k), Var(2 * k + 1))
    return ctx


def _universal(n: int):
    ty = OBJ
    for k in range(n):
        ty = Arrow(ty, Var(2 * k), Var(2 * k + 1))
    return ty


GAMMA_C = ((0, OBJ), (1, OBJ), (2, Arrow(OBJ, Var(0), Var(1))), (3, OBJ), (4, Arrow(OBJ, Var(1), Var(3))))
GAMMA_W = (
    (0, OBJ), (1, OBJ), (2, Arrow(OBJ, Var(0), Var(1))), (3, Arrow(OBJ, Var(0), Var(1))),
    (4, Arrow(Arrow(OBJ, Var(0), Var(1)), Var(2), Var(3))), (5, OBJ), (6, Arrow(OBJ, Var(1), Var(5))),
)
GAMMA_LOOP = ((0, OBJ), (1, Arrow(OBJ, Var(0), Var(0))))

ID = [make_index(_disk(n), Arrow(_universal(n), Var(2 * n), Var(2 * n)), label=f"id{n}") for n in range(4)]
ORACLE_LEN = 7
COMP = make_index(GAMMA_C, Arrow(OBJ, Var(0), Var(3)), label="comp")


def sphere_sub_of(ty) -> tuple:
    """Boundary of a type as a substitution into a sphere (by hand)."""
    parts = []
    while isinstance(ty, Arrow):
        parts.append((ty.src, ty.tgt))
        ty = ty.base
    out = ()
    for k, (s, t) in enumerate(reversed(parts)):
        out += ((2 * k, s), (2 * k + 1, t))
    return out


def id_term(tm, ty):
    n = _dim(ty)
    return Coh(ID[n], sphere_sub_of(ty) + ((2 * n, tm),)), Arrow(ty, tm, tm)


# -- random derivable data -----------------------------------------------------


def term_pool(rng: random.Random, ctx: tuple, rounds: int = 2, cap: int = 40) -> list[tuple]:
    """Derivable ``(term, type)`` pairs in ``ctx``: variables, then identities
    and binary composites of earlier pool members."""
    pool = [(Var(name), ty) for name, ty in ctx]
    for _ in range(rounds):
        new = []
        for tm, ty in pool:
            if _dim(ty) < len(ID) - 1 and rng.random() < 0.3:
                new.append(id_term(tm, ty))
        ones = [(tm, ty) for tm, ty in pool if isinstance(ty, Arrow) and isinstance(ty.base, Obj)]
        for f, fty in ones:
            for g, gty in ones:
                if fty.tgt == gty.src and rng.random() < 0.3:
                    sub = ((0, fty.src), (1, fty.tgt), (2, f), (3, gty.tgt), (4, g))
                    new.append((Coh(COMP, sub), Arrow(OBJ, fty.src, gty.tgt)))
        rng.shuffle(new)
        pool += new[: max(0, cap - len(pool))]
    return pool


def random_ctx(rng: random.Random, length: int, max_dim: int = 2, catt: bool = True) -> tuple:
    ctx: tuple = ()
    while len(ctx) < length:
        if ctx and rng.random() < 0.6:
            pool = term_pool(rng, ctx, rounds=1 if catt else 0, cap=25)
            by_type: dict = {}
            for tm, ty in pool:
                if _dim(ty) < max_dim:
                    by_type.setdefault(ty, []).append(tm)
            base = rng.choice(list(by_type))
            ty = Arrow(base, *_endpoints(rng, by_type[base]))
        else:
            ty = OBJ
        ctx += ((len(ctx), ty),)
    return ctx


def random_type(rng: random.Random, ctx: tuple, pool: Optional[list] = None):
    pool = pool if pool is not None else term_pool(rng, ctx)
    by_type: dict = {}
    for tm, ty in pool:
        by_type.setdefault(ty, []).append(tm)
    if rng.random() < 0.15:
        return OBJ
    base = rng.choice(list(by_type))
    return Arrow(base, *_endpoints(rng, by_type[base]))


def _endpoints(rng: random.Random, terms: list) -> tuple:
    if len(terms) > 1 and rng.random() < 0.7:
        return tuple(rng.sample(terms, 2))
    return rng.choice(terms), rng.choice(terms)


def random_sub(rng: random.Random, delta: tuple, gamma: tuple, pool: Optional[list] = None):
    """A derivable ``delta ⊢ γ : gamma`` or None when the greedy draw gets stuck."""
    pool = pool if pool is not None else term_pool(rng, delta)
    sub: tuple = ()
    for name, ty in gamma:
        want = apply_sub_ty(ty, sub)
        cands = [tm for tm, t in pool if t == want]
        if not cands and isinstance(want, Arrow) and want.src == want.tgt:
            cands = [id_term(want.src, want.base)[0]]
        if not cands:
            return None
        sub += ((name, rng.choice(cands)),)
    return sub


def random_chain(rng: random.Random, lengths: tuple[int, ...], attempts: int = 200):
    """Contexts ``C0, C1, ...`` with substitutions ``C_{k+1} ⊢ s_k : C_k``."""
    for _ in range(attempts):
        ctxs = [random_ctx(rng, lengths[0])]
        subs = []
        for n in lengths[1:]:
            for _ in range(20):
                nxt = random_ctx(rng, n)
                s = random_sub(rng, nxt, ctxs[-1])
                if s is not None:
                    break
            else:
                break
            ctxs.append(nxt)
            subs.append(s)
        else:
            return ctxs, subs
    raise RuntimeError("could not draw a chain of substitutions")
