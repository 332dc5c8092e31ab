"""Exact-arithmetic quadratic/hermitian form theory over computable fields.

Subpackages cover, bottom up: exact field arithmetic with isotropy oracles
(fields, oracle), bilinear/quadratic forms with Witt decomposition and
Pfister machinery (forms), quaternion algebras and quadratic etale
extensions with their canonical involutions (algebras), even hermitian
forms and their trace-form transfer (hermitian), and adjoint-involution
representatives with decision batteries (involutions).  A CLI front end
lives in exactforms.cli.
"""

from .fields import QQ, GF, FunctionField, RationalField, FiniteField

__all__ = ["QQ", "GF", "FunctionField", "RationalField", "FiniteField"]

__version__ = "0.1.0"
