"""Predicted-vs-observed bound reports shared by the verifier modules."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class BoundReport:
    """A closed-form prediction next to the measured quantity it must dominate.

    ``passed`` is observed <= predicted + tolerance; ``margin`` is how much
    headroom the prediction left.  ``inputs`` carries a summary of the
    quantities that entered the prediction, for the JSON detail records.
    """

    name: str
    predicted: float
    observed: float
    tolerance: float = 0.0
    inputs: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.predicted - self.observed

    @property
    def passed(self) -> bool:
        return bool(self.observed <= self.predicted + self.tolerance)

    def to_row(self) -> tuple:
        return (self.name, self.predicted, self.observed, self.margin, self.passed)

    def to_json_dict(self) -> dict:
        return {
            "bound": self.name,
            "predicted": self.predicted,
            "observed": self.observed,
            "margin": self.margin,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "inputs": dict(self.inputs),
        }

    def __str__(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return (f"[{state}] {self.name}: observed {self.observed:.6g} "
                f"vs predicted {self.predicted:.6g} (margin {self.margin:.3g})")
