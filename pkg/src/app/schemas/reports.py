from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, root_validator


class BoundedValue(BaseModel):
    """An exact value, or a bound when an enumeration cap was hit"""

    value: int
    exact: bool = True
    bound: Optional[str] = None  # "upper" or "lower" when inexact

    def __str__(self) -> str:
        if self.exact:
            return str(self.value)
        return f"{'<=' if self.bound == 'upper' else '>='}{self.value}"


class WeightEnumerator(BaseModel):
    counts: Dict[int, int]
    complete: bool = True
    enumerated: int

    def min_nonzero_weight(self) -> Optional[int]:
        weights = [w for w, c in self.counts.items() if w > 0 and c > 0]
        return min(weights) if weights else None


class DesignReport(BaseModel):
    n: int
    block_weight: int
    blocks: int
    lam: Optional[int] = Field(None, alias="lambda")
    # (positions, values) of a weight-2 vertex with a deviating count
    counterexample: Optional[Tuple[Tuple[int, int], Tuple[int, int], int]] = None

    class Config:
        allow_population_by_field_name = True

    @property
    def is_design(self) -> bool:
        return self.blocks > 0 and self.lam is not None


class AnalysisReport(BaseModel):
    name: str
    q: int
    n: int
    dim: int
    min_distance: Optional[BoundedValue]
    covering_radius: BoundedValue
    error_capacity: Optional[int]
    weight_enumerator: WeightEnumerator
    perfect: Optional[bool]
    trivial: bool
    coset_leader_weights: Optional[Dict[int, int]] = None


class VerificationReport(BaseModel):
    claim: str
    params: dict
    computed: dict
    expected: dict
    provenance: str
    passed: bool = Field(..., alias="pass")
    exact: bool = True
    millis: int = 0
    bound_claim: bool = False
    expected_failure: bool = False
    note: str = ""

    class Config:
        allow_population_by_field_name = True

    @root_validator(skip_on_failure=True)
    def inexact_reports_do_not_pass(cls, values):
        if values["passed"] and not values["exact"] and not values["bound_claim"]:
            values["passed"] = False
            values["note"] = (values["note"] + "; " if values["note"] else "") + "inexact computation"
        return values

    @property
    def unexpected_failure(self) -> bool:
        return not self.passed and not self.expected_failure

    def record(self, include_timing: bool = True) -> dict:
        exclude = {"bound_claim"} if include_timing else {"bound_claim", "millis"}
        return self.dict(by_alias=True, exclude=exclude)


class ReportBatch(BaseModel):
    version: str
    reports: List[VerificationReport]
