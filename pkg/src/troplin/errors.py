"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Structurally invalid input: wrong sizes, malformed data, broken preconditions."""


class NotAMatroidError(InvalidInputError):
    """Basis family violates the exchange axiom.

    ``witness`` is a triple ``(B1, B2, u)`` with ``u`` in ``B1 - B2`` such that
    no valid exchange element exists in ``B2 - B1``.
    """

    def __init__(self, witness):
        self.witness = witness
        b1, b2, u = witness
        super().__init__(
            f"exchange axiom fails for B1={sorted(b1)}, B2={sorted(b2)}, u={u}"
        )


class LoopyMatroidError(InvalidInputError):
    """Basis family leaves some ground element outside every basis."""

    def __init__(self, loops):
        self.loops = frozenset(loops)
        super().__init__(f"loops detected: {sorted(self.loops)}")


class ResourceLimitError(RuntimeError):
    """A configured budget (piece count, ground set size, ...) was exceeded."""
