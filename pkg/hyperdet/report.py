"""
Module: hyperdet.report

JSON schemas for hypermatrix input files and command reports, and the human-readable
rendering of reports.

Every exact value is stored as the same string in both renderings: rationals as "p/q" or "p",
polynomials in y as e.g. "y^2 - 1/2*y + 1/12".
"""

import contextlib
import time
import typing

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hyperdet.core import InputError
from hyperdet.grassmann import Hypermatrix
from hyperdet.scalar import ring_for


__all__ = ["HypermatrixFile", "Check", "Report", "load_hypermatrix"]

Scalar = typing.Union[str, int, list[typing.Union[str, int]]]


class HypermatrixFile(BaseModel):
    """{"order": d, "dim": n, "scalar": "rational" | "poly", "entries": [row-major scalars]}"""

    order: int = Field(ge=1)
    dim: int = Field(ge=1)
    scalar: typing.Literal["rational", "poly"] = "rational"
    entries: list[Scalar]

    @model_validator(mode="after")
    def _entry_count(self) -> "HypermatrixFile":
        expected = self.dim**self.order
        if len(self.entries) != expected:
            raise ValueError(
                f"expected {expected} entries for order {self.order}, dim {self.dim}, got {len(self.entries)}"
            )
        return self

    def to_hypermatrix(self) -> Hypermatrix:
        return Hypermatrix(self.order, self.dim, self.entries, ring_for(self.scalar))

    @classmethod
    def from_hypermatrix(cls, tensor: Hypermatrix) -> "HypermatrixFile":
        return cls(
            order=tensor.order,
            dim=tensor.dim,
            scalar=tensor.ring.name,
            entries=[tensor.ring.dump(e) for e in tensor.entries],
        )


def load_hypermatrix(text: str) -> Hypermatrix:
    """
    Parse hypermatrix JSON.

    Raises:
        InputError: On malformed JSON, a wrong entry count or unreadable scalars.
    """
    try:
        model = HypermatrixFile.model_validate_json(text)
    except ValueError as exc:
        raise InputError(f"malformed hypermatrix JSON: {exc}") from exc
    return model.to_hypermatrix()


class Check(BaseModel):
    """One named identity check; serialized with the key "pass" for `passed`."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    lhs: str = ""
    rhs: str = ""


class Report(BaseModel):
    """Outcome of one command: parameters, exact results, identity checks and timings."""

    command: str
    params: dict[str, str] = Field(default_factory=dict)
    results: dict[str, str] = Field(default_factory=dict)
    checks: list[Check] = Field(default_factory=list)
    timing_ms: dict[str, float] = Field(default_factory=dict)
    table: typing.Optional[list[dict[str, typing.Any]]] = None

    @property
    def ok(self) -> bool:
        """True when every recorded check passed (vacuously true without checks)."""
        return all(check.passed for check in self.checks)

    def add_result(self, name: str, value) -> None:
        self.results[name] = str(value)

    def add_check(self, name: str, passed: bool, lhs="", rhs="") -> Check:
        """
        Record a check, storing both sides as their exact string forms.

        Args:
            name (str): Human-readable identity name.
            passed (bool): Whether the two sides agree.
            lhs, rhs: The compared values.

        Returns:
            Check: The recorded check.
        """
        check = Check(name=name, passed=bool(passed), lhs=str(lhs), rhs=str(rhs))
        self.checks.append(check)
        return check

    @contextlib.contextmanager
    def timed(self, name: str):
        """Record the wall-clock time of the block under `name`."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timing_ms[name] = round((time.perf_counter() - start) * 1000.0, 3)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate_json(text)

    def results_frame(self) -> pd.DataFrame:
        """Results with their timings; results that were not timed show an empty ms cell."""
        return pd.DataFrame(
            {
                "name": list(self.results),
                "value": list(self.results.values()),
                "ms": [self.timing_ms.get(name, "") for name in self.results],
            }
        )

    def checks_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [check.model_dump(by_alias=True) for check in self.checks],
            columns=["name", "pass", "lhs", "rhs"],
        )

    def render(self) -> str:
        """Plain-text tables with the same value strings as the JSON form."""
        lines = [f"{self.command}  " + " ".join(f"{k}={v}" for k, v in self.params.items())]
        if self.results:
            lines.append(self.results_frame().to_string(index=False))
        if self.table is not None:
            lines.append(pd.DataFrame(self.table).to_string(index=False))
        if self.checks:
            lines.append(self.checks_frame().to_string(index=False))
            lines.append("all checks passed" if self.ok else "CHECKS FAILED")
        return "\n\n".join(lines) + "\n"
