from typing import Optional

from pydantic import BaseModel, Field


class SolveRequest(BaseModel):
    """Everything a solve run needs besides the circuit text"""
    circuit: str = Field(..., description="Path of the BLIF-lite circuit")
    split: str = Field(..., description="Latch names or k:N")
    flow: str = Field("partitioned", pattern="^(partitioned|monolithic|both)$")
    out: Optional[str] = None
    dot: Optional[str] = None
    emit_split: Optional[str] = None
    xp_out: Optional[str] = None
    node_limit: Optional[int] = Field(None, gt=0)
    subset_limit: Optional[int] = Field(None, gt=0)
    timeout_s: Optional[float] = Field(None, gt=0)
    trim: Optional[bool] = None


class SolveStats(BaseModel):
    name: str
    flow: str
    states: int = Field(..., ge=0)
    explored: int = Field(..., ge=0)
    time_s: float = Field(..., ge=0)
    dcn_edges: int = 0
    dca_edges: int = 0
    deterministic_after_hiding: Optional[bool] = None
    out: Optional[str] = None

    @property
    def empty(self) -> bool:
        return self.states == 0

    def line(self) -> str:
        return f"states={self.states} explored={self.explored} time_s={self.time_s:.3f}"


class VerificationReport(BaseModel):
    name: str
    xp_contained: bool
    composition_contained: bool
    particular_equivalent: bool

    @property
    def all_passed(self) -> bool:
        return self.xp_contained and self.composition_contained and self.particular_equivalent

    def lines(self) -> list:
        def verdict(ok: bool) -> str:
            return "PASS" if ok else "FAIL"

        return [
            f"{verdict(self.xp_contained)} xp_contained (X_p is contained in X)",
            f"{verdict(self.composition_contained)} composition_contained (F.X is contained in S)",
            f"{verdict(self.particular_equivalent)} particular_equivalent (S equals F.X_p)",
        ]
