"""Exact computations with weak Hopf algebras.

Modules, bottom-up: linalg (exact matrices), moncat (morphisms), dsl (string
diagrams as text), hopf (weak Hopf algebras), modalg (module algebras),
cohomology (Sweedler complex), crossed (weak crossed products) and
equivalence (gauge transformations and classification).
"""
from .errors import WeakHopfError
from .kernels import BACKEND
from .linalg import FieldSpec, Matrix, solve_affine, split_idempotent
from .moncat import Mor, compose, ident, swap, tensor

__all__ = [
    "BACKEND", "FieldSpec", "Matrix", "Mor", "WeakHopfError", "compose", "ident", "solve_affine",
    "split_idempotent", "swap", "tensor",
]
__version__ = "0.1.0"
