"""Verification records shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import rat_str

# Emitted with every model report: the h eigenvalue is defined by
# computation, not by the commonly quoted closed form with denominator 2.
LAMBDA_NOTE = (
    "lambda is the computed positive eigenvalue of h, equal to"
    " (beta^2 - alpha^2)/4 for this family; this is the unique value"
    " satisfying lambda^2 = 1 - kappa. The alternative normalization"
    " (beta^2 - alpha^2)/2 sometimes quoted for these models fails that"
    " identity and is not used."
)


@dataclass(frozen=True)
class IdentityRecord:
    """One verified identity: id, pass/fail, witness and residual."""

    identity_id: str
    status: str
    witness_indices: tuple | None = None
    residual: Fraction | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {"identity_id": self.identity_id, "status": self.status}
        if self.witness_indices is not None:
            out["witness_indices"] = list(self.witness_indices)
        out["residual"] = rat_str(self.residual if self.residual is not None else 0)
        return out


def passed_record(identity_id: str) -> IdentityRecord:
    return IdentityRecord(identity_id=identity_id, status="pass", residual=Fraction(0))


def failed_record(identity_id: str, witness, residual) -> IdentityRecord:
    return IdentityRecord(
        identity_id=identity_id,
        status="fail",
        witness_indices=tuple(witness) if witness is not None else None,
        residual=residual,
    )


def all_passed(records) -> bool:
    return all(r.passed for r in records)
