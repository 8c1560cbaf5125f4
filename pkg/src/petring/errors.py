"""Shared failure type for theorem-level checks.

A VerificationError means an exact computation contradicted a claimed
invariant (rank, torsion, basis, identity).  It is never caught and
reinterpreted as a warning; the CLI converts it to exit code 1.
"""


class VerificationError(AssertionError):
    pass
