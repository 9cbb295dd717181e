from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, root_validator, validator

from app.services.finite_field import prime_power
from app.utils.exceptions import CodesException

FAMILIES = (
    "projective",
    "affine",
    "unital",
    "ovoid",
    "suzuki",
    "grm",
    "rm",
    "prm",
    "hamming",
    "repetition",
    "dual-repetition",
)


class JobSpec(BaseModel):
    """Parameters of one CLI call, validated before any heavy work starts"""

    subcommand: str = Field(..., description="construct, analyze, verify, reproduce or export")
    family: Optional[str] = Field(None, description="Code or point set family")
    q: Optional[int] = Field(None, description="Alphabet size")
    s: int = Field(1, description="Degree of GF(q^s) over GF(q)")
    t: Optional[int] = Field(None, description="Vector space dimension")
    k: int = Field(1, description="Norm twist")
    l: Optional[int] = Field(None, description="Polynomial degree")
    n: Optional[int] = Field(None, description="Length of the repetition families")
    claim: Optional[str] = Field(None, description="Claim id, reproduction grid id or export target")
    grid: Optional[str] = Field(None, description="Reproduction grid of a report export")
    level: int = Field(2, description="s of the s-neighbour-transitivity check")
    block_weight: Optional[int] = Field(None, description="Codeword weight of the design check")
    expected: Optional[int] = Field(None, description="Expected minimum distance of a min-distance or reed-muller check")
    expected_case: Optional[str] = Field(None, description="Expected case of a theorem-case check")
    expected_lambda: Optional[int] = Field(None, description="Expected lambda of a design check")
    transitive: bool = Field(True, description="Whether a 2nt check expects neighbour-transitivity")
    code_file: Optional[Path] = Field(None, description="Code file to analyze or export")
    output_dir: Optional[Path] = Field(None, description="Directory for written files")
    codeword_cap: Optional[int] = Field(None, description="Codeword enumeration cap")
    vertex_cap: Optional[int] = Field(None, description="Vertex enumeration cap")
    threads: int = Field(1, description="Worker threads")
    json_output: bool = Field(False, description="JSON records instead of text records")

    @validator("family")
    def known_family(cls, value):
        if value is not None and value not in FAMILIES:
            raise ValueError(f"unknown family '{value}', expected one of {', '.join(FAMILIES)}")
        return "ovoid" if value == "suzuki" else value

    @validator("q")
    def prime_power_alphabet(cls, value):
        if value is None:
            return value
        try:
            prime_power(value)
        except CodesException as e:
            raise ValueError(str(e)) from e
        return value

    @validator("s", "k", "threads", "level")
    def positive(cls, value):
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value

    @validator("t")
    def dimension(cls, value):
        if value is not None and value < 2:
            raise ValueError(f"dimension t must be at least 2, got {value}")
        return value

    @validator("l", "codeword_cap", "vertex_cap", "expected", "expected_lambda")
    def non_negative(cls, value):
        if value is not None and value < 0:
            raise ValueError(f"must not be negative, got {value}")
        return value

    @root_validator(skip_on_failure=True)
    def family_parameters(cls, values):
        q, k = values["q"], values["k"]
        if q is not None and k > q - 1:
            raise ValueError(f"the twist k must lie in 1..{q - 1} for q={q}, got {k}")
        builds = values["subcommand"] == "construct" or (
            values["subcommand"] == "export" and values["claim"] in ("pointset", "code", "generators")
        )
        if not builds:
            return values
        family = values["family"]
        if family is None or values["q"] is None:
            raise ValueError("building a code or point set needs --family and --q")
        if family in ("projective", "affine", "grm", "rm", "prm", "hamming") and values["t"] is None:
            raise ValueError(f"the {family} family needs --t")
        if family in ("grm", "rm", "prm") and values["l"] is None:
            raise ValueError(f"the {family} family needs --l")
        if family in ("repetition", "dual-repetition") and values["n"] is None:
            raise ValueError(f"the {family} family needs --n")
        return values

    def claim_params(self) -> dict:
        """Family parameters handed to a claim runner"""
        params = {
            "family": self.family,
            "q": self.q,
            "s": self.s,
            "t": self.t,
            "k": self.k,
            "l": self.l,
            "n": self.n,
            "level": self.level,
            "block_weight": self.block_weight,
            "expected": self.expected,
            "expected_min_distance": self.expected,
            "expected_case": self.expected_case,
            "expected_lambda": self.expected_lambda,
            "transitive": self.transitive,
        }
        return {key: value for key, value in params.items() if value is not None}
