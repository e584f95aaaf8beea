# fairconf/schemas/report.py
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

REPORT_COLUMNS = [
    "method", "w_eff", "lambda1", "lambda2", "k", "TEP",
    "NCG_mean", "NCG_gap", "NCG_gini", "NEC_mean", "NEC_gap", "NEC_gini", "runtime_ms"
]
_FLOAT_COLUMNS = [
    "w_eff", "lambda1", "lambda2", "TEP",
    "NCG_mean", "NCG_gap", "NCG_gini", "NEC_mean", "NEC_gap", "NEC_gini", "runtime_ms"
]


class MetricsReport(BaseModel):
    """Satisfaction, fairness and efficiency figures of one schedule."""

    ncg: List[float]
    nec: List[float]
    tep: float
    participant_unfairness: float
    speaker_unfairness: float
    ncg_gini: float
    nec_gini: float
    ncg_mean: float
    nec_mean: float
    contiguity: Dict[int, int] = Field(default_factory=dict)
    repetition_gaps: Dict[str, List[float]] = Field(default_factory=dict)
    degenerate_participants: List[str] = Field(default_factory=list)
    degenerate_talks: List[str] = Field(default_factory=list)


class ReportRow(BaseModel):
    """One method / objective setting of a sweep or comparison."""

    model_config = ConfigDict(populate_by_name=True)

    method: str
    w_eff: float
    lambda1: float
    lambda2: float
    k: Optional[int] = None
    TEP: Optional[float] = None
    NCG_mean: Optional[float] = None
    NCG_gap: Optional[float] = None
    NCG_gini: Optional[float] = None
    NEC_mean: Optional[float] = None
    NEC_gap: Optional[float] = None
    NEC_gini: Optional[float] = None
    runtime_ms: Optional[float] = None
    objective_value: Optional[float] = None
    error: Optional[str] = None
    metrics: Optional[MetricsReport] = None

    @classmethod
    def from_metrics(
            cls,
            method: str,
            w_eff: float,
            lambda1: float,
            lambda2: float,
            report: MetricsReport,
            k: Optional[int] = None,
            objective_value: Optional[float] = None,
            runtime_ms: Optional[float] = None
    ) -> "ReportRow":
        return cls(
            method=method,
            w_eff=w_eff,
            lambda1=lambda1,
            lambda2=lambda2,
            k=k,
            TEP=report.tep,
            NCG_mean=report.ncg_mean,
            NCG_gap=report.participant_unfairness,
            NCG_gini=report.ncg_gini,
            NEC_mean=report.nec_mean,
            NEC_gap=report.speaker_unfairness,
            NEC_gini=report.nec_gini,
            runtime_ms=runtime_ms,
            objective_value=objective_value,
            metrics=report
        )


def rows_to_frame(rows: List[ReportRow], decimals: Optional[int] = None) -> pd.DataFrame:
    """
    Flat table of report rows in the fixed column order.

    An error column is appended only when some row failed.
    """
    records = [row.model_dump(exclude={"metrics", "objective_value"}) for row in rows]
    columns = list(REPORT_COLUMNS)
    if any(row.error for row in rows):
        columns.append("error")
    frame = pd.DataFrame.from_records(records, columns=columns)
    frame["k"] = frame["k"].astype("Int64")
    if decimals is not None:
        frame[_FLOAT_COLUMNS] = frame[_FLOAT_COLUMNS].astype(float).round(decimals)
    return frame


class _TableReport(BaseModel):
    rows: List[ReportRow]

    def to_frame(self, decimals: Optional[int] = None) -> pd.DataFrame:
        return rows_to_frame(self.rows, decimals)

    def to_csv(self, path: Optional[Path] = None, decimals: int = 2) -> str:
        """Human CSV with values rounded to `decimals`; written to `path` when given."""
        text = self.to_frame(decimals).to_csv(index=False, float_format=f"%.{decimals}f")
        if path is not None:
            Path(path).write_text(text)
        return text


class SweepReport(_TableReport):
    """Grid rows first, in grid order, then the baseline rows."""

    method: str
    lambda1_grid: List[float]
    lambda2_grid: List[float]
    w_eff: float = 1.0


class ComparisonReport(_TableReport):
    """EM, IAM, PFair, SFair and mFairConf side by side."""


class PriorityGroupRow(BaseModel):
    """Speaker-side figures of one priority group."""

    group: int
    size: int
    nec_gini: float
    nec_mean: float


class PriorityReport(BaseModel):
    """Multi-round schedule summary: participant figures overall, speaker figures per group."""

    sequence: List[int]
    ncg_gini: float
    ncg_mean: float
    groups: List[PriorityGroupRow]
    metrics: MetricsReport
