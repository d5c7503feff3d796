class HmnetError(Exception):
    pass


class GraphError(HmnetError, ValueError):
    """Invalid graph operation (loop, multi-edge, bad node, bad size)."""


class ParseError(HmnetError):
    pass


class InvalidSpecError(HmnetError, ValueError):
    pass


class NDLError(HmnetError, ValueError):
    """A node degree list violates one of the well-formedness conditions."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition ({condition}): {message}")
        self.condition = condition


class SamplingError(HmnetError):
    pass


class ConstructionError(HmnetError):
    """The random graph creation ran out of iterations; the ndl is abandoned."""

    def __init__(self, message: str, residual: dict[int, int] | None = None):
        super().__init__(message)
        self.residual = residual or {}


class BudgetError(ConstructionError):
    """Protected edges need more degree than a node was prescribed."""
