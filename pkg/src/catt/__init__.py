"""Type-checker kernel for CaTT and its substrate theory Glob."""

from catt.diagnostics import Diagnostic, Span
from catt.rules import (
    GLOB,
    Checker,
    Judgment,
    TheorySignature,
    check_ctx,
    check_sub,
    check_tm,
    check_ty,
    classify_ty,
    disk,
    glob_signature,
    infer_tm,
    sphere,
    ty_of_sphere_sub,
    u_arrow,
)
from catt.syntax import OBJ, Arrow, Coh, Obj, Var
from catt.theory import CATT, CohIndex, catt_signature, check_fullness, make_index

__version__ = "0.1.0"
