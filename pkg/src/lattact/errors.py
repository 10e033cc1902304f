"""Error taxonomy shared across the package.

Three classes matter to callers (the CLI maps them to exit codes):

- InputError: the caller handed us something malformed (bad matrix shape,
  non-integer entries, unknown fixture name, unreadable file).
- ScopeError: input is well-formed but outside what the algorithms cover
  (wrong signature, unsupported rotation order, non-involution restriction).
- VerificationError: data that was supposed to satisfy a stated property
  exactly fails it (kappa labels inconsistent on a relation, a claimed
  invariant sublattice that is not invariant, a degeneration check failing).
"""

from __future__ import annotations


class LattactError(Exception):
    """Base class for all package errors."""


class InputError(LattactError, ValueError):
    """Malformed or ill-typed input."""


class ScopeError(LattactError):
    """Well-formed input outside the supported domain."""


class VerificationError(LattactError):
    """An exact check that the data was claimed to satisfy failed."""
