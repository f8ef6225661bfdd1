"""
Observation records.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

ObserverType = Literal["active", "passive"]
OBSERVER_TYPES: tuple[ObserverType, ...] = ("active", "passive")

DATASET_COLUMNS = (
    "record_id",
    "scheme_id",
    "participant_id",
    "observer_type",
    "original",
    "guess",
    "login_time_s",
)


class ObservationRecord(BaseModel):
    """One participant's trial: the password shown and the observer's guess."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    record_id: str = Field(min_length=1, description="Row identifier")
    scheme_id: str = Field(min_length=1, description="Scheme the passwords are written in")
    participant_id: str = Field(min_length=1, description="Observer identifier")
    observer_type: ObserverType = Field(description="active (briefed) or passive (incidental)")
    original: str = Field(description="Original password, wire format")
    guess: str = Field(default="", description="Observer's guess, wire format; empty allowed")
    login_time_s: Optional[float] = Field(default=None, ge=0.0, description="Login time in seconds")

    @property
    def group_key(self) -> str:
        return f"{self.scheme_id}/{self.observer_type}"
