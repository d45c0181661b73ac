"""Exact computations in homotopy categories of modules over bound quiver algebras."""

from .exactlinalg import QQ, Field, Matrix
from .pathalg import Algebra, AlgebraError, Quiver, load_algebra, opposite
from .modrep import (
    Module,
    ModuleMap,
    dual_D,
    injective,
    projective,
    simple,
    stable_hom,
    tau,
    tau_minus,
    transpose,
)
from .homotopy import (
    Certificate,
    ChainMap,
    Complex,
    ComplexError,
    HomSpace,
    cone,
    hom_K,
    homotopy_equivalent,
    is_acyclic,
    is_contractible,
    minimize,
    shift,
    stalk,
)
from .columns import inj_resolve_complex, nakayama, phi, proj_resolve_complex, serre_U, totalize, transpose_column
from .serrear import ar_triangle, end_algebra, i_rho, is_indecomposable, lam, lam_prime, quotient_model, serre_S

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
