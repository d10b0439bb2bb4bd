"""CaTT as a globular type theory.

Its term constructors are indexed by pairs ``(Γ, A)`` of a ps-context and a
type that is *full* in it:

* operation (``Cop``): ``A = Arrow(B, t, u)`` where the source set of ``Γ`` is
  exactly ``vars(B) ∪ vars(t)`` and the target set is ``vars(B) ∪ vars(u)``;
* coherence (``Ccoh``): ``vars(A)`` is every variable of ``Γ``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from catt.diagnostics import Diagnostic
from catt.ps import PsDerivation, check_ps, src_set, tgt_set
from catt.rules import Checker, TheorySignature
from catt.syntax import Arrow, RawCtx, RawType, VarSet, dim_ctx, dim_ty, vars_ctx, vars_tm, vars_ty


@dataclass(frozen=True)
class Cop:
    src: VarSet
    tgt: VarSet


@dataclass(frozen=True)
class Ccoh:
    vars: VarSet


FullnessWitness = Union[Cop, Ccoh]


@dataclass(frozen=True, eq=False)
class CohIndex:
    """An inhabitant of the index type: a ps-context, a type, and fullness evidence.

    Equality and hashing look at ``(ctx, ty)`` only; the derivation and the
    witness are determined by them.  ``label`` is a display name.
    """

    ctx: RawCtx
    ty: RawType
    derivation: PsDerivation
    witness: FullnessWitness
    label: Optional[str] = field(default=None)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, CohIndex):
            return NotImplemented
        return self.ctx == other.ctx and self.ty == other.ty

    def __hash__(self) -> int:
        return hash((self.ctx, self.ty))

    def __repr__(self) -> str:
        return f"CohIndex({self.label or '?'}, ctx={self.ctx!r}, ty={self.ty!r})"


def eq_index(i: CohIndex, j: CohIndex) -> bool:
    return i.ctx == j.ctx and i.ty == j.ty


def _not_full(side: str, expected: VarSet, actual: VarSet, message: str) -> Diagnostic:
    missing, extra = expected - actual, actual - expected
    return Diagnostic(
        "fullness", "NotFull",
        f"{message}: missing {sorted(missing)}, extra {sorted(extra)}",
        expected=expected, actual=actual,
        details=(("side", side), ("missing", missing), ("extra", extra)),
    )


def check_fullness(d: PsDerivation, ty: RawType) -> Union[FullnessWitness, Diagnostic]:
    everything = vars_ctx(d.ctx)
    used = vars_ty(ty)
    op_failure = None
    if isinstance(ty, Arrow):
        base = vars_ty(ty.base)
        src, tgt = src_set(d), tgt_set(d)
        lhs, rhs = base | vars_tm(ty.src), base | vars_tm(ty.tgt)
        if src == lhs and tgt == rhs:
            return Cop(src, tgt)
        if src != lhs:
            op_failure = _not_full("source", src, lhs, "source of the type is not the source boundary")
        else:
            op_failure = _not_full("target", tgt, rhs, "target of the type is not the target boundary")
    if everything == used:
        return Ccoh(used)
    if op_failure is not None:
        return op_failure
    return _not_full("coh", everything, used, "type does not use every variable of the context")


def _admit(index: CohIndex) -> Optional[Diagnostic]:
    d = check_ps(index.ctx)
    if isinstance(d, Diagnostic):
        return d
    if d != index.derivation:
        return Diagnostic("ps", "NotPs", "recorded ps derivation does not match the context")
    w = check_fullness(d, index.ty)
    if isinstance(w, Diagnostic):
        return w
    if w != index.witness:
        return Diagnostic("fullness", "NotFull", "recorded fullness witness does not match")
    return None


CATT = TheorySignature(
    name="CaTT",
    is_index=lambda i: isinstance(i, CohIndex),
    ctx_of=lambda i: i.ctx,
    ty_of=lambda i: i.ty,
    eq_index=eq_index,
    wf_dimension=True,
    admit=_admit,
)


def catt_signature() -> TheorySignature:
    return CATT


def make_index(
    ctx: RawCtx,
    ty: RawType,
    label: Optional[str] = None,
    checker: Optional[Checker] = None,
) -> Union[CohIndex, Diagnostic]:
    """Validate ``(ctx, ty)`` and build the corresponding index."""
    d = check_ps(ctx)
    if isinstance(d, Diagnostic):
        return d
    checker = checker or Checker(CATT)
    res = checker.check_ty(ctx, ty)
    if isinstance(res, Diagnostic):
        return res
    w = check_fullness(d, ty)
    if isinstance(w, Diagnostic):
        return w
    if dim_ctx(ctx) > dim_ty(ty):
        return Diagnostic(
            "tm", "WfViolation",
            f"context dimension {dim_ctx(ctx)} exceeds type dimension {dim_ty(ty)}",
            expected=dim_ty(ty), actual=dim_ctx(ctx),
        )
    return CohIndex(ctx, ty, d, w, label)
