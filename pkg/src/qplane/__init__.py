"""Function algebras of the quantum quarter plane and the real quantum plane.

Closed-form algebra (Hopf structure, module actions, twisted Weyl products,
covariant functionals, the glued four-component plane) is cross-checked
against an independent grid oracle.
"""

from .params import DeformationContext, DomainError, make_context, qpow

__version__ = "0.1.0"

__all__ = ["DeformationContext", "DomainError", "make_context", "qpow", "__version__"]
