"""Machine-readable verification reports shared by library and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


def _jsonable(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "tolist"):  # numpy scalar or array
        return _jsonable(x.tolist())
    return x


@dataclass
class VerificationReport:
    """Outcome of one identity or inequality check.

    ``rows`` holds one dict per evaluation point (inputs, both sides,
    residual); ``max_residual`` is compared against ``tolerance`` to set
    ``passed``.  Inequality checks store slacks as residuals with the
    convention that a negative slack beyond tolerance is a failure.
    """

    name: str
    tolerance: float
    max_residual: float = 0.0
    passed: bool = True
    rows: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def add_row(self, residual, **data):
        residual = float(residual)
        self.rows.append({**data, "residual": residual})
        if residual > self.max_residual:
            self.max_residual = residual
        if residual > self.tolerance:
            self.passed = False

    def to_dict(self):
        return _jsonable({
            "name": self.name,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "rows": self.rows,
            "details": self.details,
        })
