"""Request/response models for the HTTP service.

The CLI builds the same models and calls the same handlers, so the wire
contract and the command line stay in lockstep.  Rationals travel as
"num/den" strings, polynomials in their canonical text form.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Mode = Literal["simple", "multi"]
Measure = Literal["split", "allterm", "twoterm", "kterm"]
Engine = Literal["oracle", "factoring", "both"]


class GraphModel(BaseModel):
    """The graph text object: n, edges with repetition, optional terminals."""

    n: int
    edges: list[tuple[int, int]]
    s: Optional[int] = None
    t: Optional[int] = None


class ComputeRequest(BaseModel):
    graph: GraphModel
    measure: Measure = "split"
    engine: Engine = "factoring"
    s: Optional[int] = None
    t: Optional[int] = None
    k: Optional[list[int]] = None
    max_slots: int = Field(default=22, ge=1)


class ComputeResponse(BaseModel):
    measure: Measure
    n: int
    m: int
    polynomial: str
    nvector: Optional[list[int]] = None
    nvector_start: Optional[int] = None
    cutset_size: Optional[int] = None
    engines_agree: Optional[bool] = None
    note: Optional[str] = None


class CompareSide(BaseModel):
    graph: GraphModel
    s: Optional[int] = None
    t: Optional[int] = None


class CompareRequest(BaseModel):
    first: CompareSide
    second: CompareSide


class CompareResponse(BaseModel):
    relation: Literal["dominates", "dominated_by", "equal", "incomparable"]
    first_wins_at: Optional[str] = None
    second_wins_at: Optional[str] = None
    first_polynomial: str
    second_polynomial: str


class FamilyRequest(BaseModel):
    spec: str


class FamilyResponse(BaseModel):
    tag: str
    params: list[int]
    graph: GraphModel
    stated_counts: dict[str, int]
    closed_form: Optional[str] = None


class EnumerateRequest(BaseModel):
    n: int
    m: int
    mode: Mode = "multi"


class EnumerateResponse(BaseModel):
    count: int
    graphs: list[GraphModel]


class OptimalRequest(BaseModel):
    n: int
    m: int
    mode: Mode = "multi"
    orbit_reduction: bool = True
    workers: int = Field(default=1, ge=1)


class WitnessModel(BaseModel):
    key: str
    graph: GraphModel
    polynomial: str


class RefutationModel(BaseModel):
    candidate_key: str
    beater_key: str
    point: str
    candidate_polynomial: str
    beater_polynomial: str


class OptimalResponse(BaseModel):
    n: int
    m: int
    mode: Mode
    exists: bool
    class_count: int
    polynomial_count: int
    witness: Optional[WitnessModel] = None
    refutations: list[RefutationModel] = []


class VerifyRequest(BaseModel):
    mode: Mode = "multi"
    n_min: int = 2
    n_max: int = 6
    m_min: Optional[int] = None
    m_max: Optional[int] = None
    orbit_reduction: bool = True
    workers: int = Field(default=1, ge=1)


class VerifyRow(BaseModel):
    n: int
    m: int
    exists: bool
    expected: Optional[bool] = None
    agrees: bool


class VerifyResponse(BaseModel):
    mode: Mode
    rows: list[VerifyRow]
    all_match: bool


class PlotRequest(BaseModel):
    graph: GraphModel
    s: Optional[int] = None
    t: Optional[int] = None
    samples: int = Field(default=101, ge=2)


class PlotResponse(BaseModel):
    csv: str
