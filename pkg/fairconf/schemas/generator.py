# fairconf/schemas/generator.py
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from fairconf.core.config import settings


class SlotGridSpec(BaseModel):
    """Back-to-back slots of equal duration."""

    count: int = Field(..., ge=1)
    duration_min: int = Field(..., gt=0)
    start_utc_min: int = 0


class GeneratorSpec(BaseModel):
    """
    Recipe for a synthetic instance.

    kind=uniform uses m, n, l. kind=timezone uses m, n, the slot grid, the
    participant offsets (sampled from a timezone table when omitted) and the
    interest source over a popularity vector (sampled when omitted).
    kind=partition uses `values`. kind=segregated uses m, n, l (10, 10, 15
    when omitted), the profile that differs between the two groups and the
    size of the first group (`split`, m // 2 when omitted). A preset fills
    a timezone or segregated recipe in. The seed defaults to
    FAIRCONF_DEFAULT_SEED.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["uniform", "timezone", "partition", "segregated"] = "uniform"
    preset: Optional[Literal[
        "fatrec",
        "recsys",
        "icml",
        "segregated-availability",
        "segregated-availability-imbalanced",
        "segregated-interest",
        "segregated-interest-imbalanced"
    ]] = None
    m: Optional[int] = Field(None, ge=0)
    n: Optional[int] = Field(None, ge=0)
    l: Optional[int] = Field(None, ge=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    slot_grid: Optional[SlotGridSpec] = None
    offsets: Optional[List[int]] = None
    interest_source: Literal["bernoulli", "normal"] = "bernoulli"
    popularity: Optional[List[float]] = None
    values: Optional[List[int]] = None
    segregate: Literal["availability", "interest"] = "availability"
    split: Optional[int] = Field(None, ge=0)
