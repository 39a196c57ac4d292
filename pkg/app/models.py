from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional


class Violation(BaseModel):
    axiom: str
    at: str
    detail: str = ""


class ValidationReport(BaseModel):
    structure: str
    ok: bool = True
    checked: int = 0
    skipped: int = 0
    violations: List[Violation] = Field(default_factory=list)

    def fail(self, axiom: str, at: str, detail: str = "") -> None:
        self.ok = False
        self.violations.append(Violation(axiom=axiom, at=at, detail=detail))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.ok = self.ok and other.ok
        self.checked += other.checked
        self.skipped += other.skipped
        self.violations.extend(other.violations)
        return self


class CompletenessCertificate(BaseModel):
    status: Literal["Complete", "TruncationLimited"] = "Complete"
    bound: Optional[int] = None
    witness: Optional[str] = None

    @property
    def complete(self) -> bool:
        return self.status == "Complete"


class SubspaceReport(BaseModel):
    dim: int
    basis: List[str]
    closed: bool = True
    certificate: Optional[CompletenessCertificate] = None
    label: Optional[str] = None


class CoalgebraDocument(BaseModel):
    field: str = "QQ"
    basis: List[str]
    coproduct: Dict[str, List[List[str]]]
    counit: Dict[str, str]
    name: Optional[str] = None


class HopfDocument(CoalgebraDocument):
    product: Dict[str, Dict[str, List[List[str]]]]
    unit: str
    antipode: Dict[str, List[List[str]]]
    degree: Optional[Dict[str, int]] = None
    truncation: Optional[int] = None


class RunRequest(BaseModel):
    command: str
    builtin: Optional[str] = None
    document: Optional[Dict[str, Any]] = None
    generators: List[str] = Field(default_factory=list)
    params: List[str] = Field(default_factory=list)
    samples: Optional[List[str]] = None
    points: Optional[int] = None
    dim: Optional[int] = None
    side: Literal["left", "right"] = "left"
    trunc: Optional[int] = None
    seed: Optional[int] = None
    budget: Optional[int] = None
    at: Optional[str] = None
    drop: List[str] = Field(default_factory=list)
    summands: List[str] = Field(default_factory=list)
    basis: List[str] = Field(default_factory=list)
    labels: List[str] = Field(default_factory=list)
    require_complete: bool = False


class Report(BaseModel):
    command: str
    structure: str
    ok: bool = True
    data: Dict[str, Any] = Field(default_factory=dict)
    certificate: Optional[CompletenessCertificate] = None
    validation: Optional[ValidationReport] = None
