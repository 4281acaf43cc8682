import hashlib
import json
from typing import Any, Dict, List, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

REALIZES_COLUMN = "realizes"


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), default=str)


def config_hash(config: Mapping[str, Any]) -> str:
    """sha256 of the canonical JSON of a configuration mapping."""
    return hashlib.sha256(canonical_json(dict(config)).encode("utf-8")).hexdigest()


class TableReport(BaseModel):
    """
    A table of results with the configuration that produced it.

    Every row carries a ``realizes`` entry naming the formula it evaluates
    (e.g. ``kernel.g_real``), so a CSV line can be traced back without the run log.
    """
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Table name, e.g. 'kernel.complex'.")
    columns: List[str]
    rows: List[Dict[str, Any]]
    config: Dict[str, Any] = Field(default_factory=dict)
    config_hash: str
    tolerances: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def rows_match_columns(self) -> "TableReport":
        if REALIZES_COLUMN not in self.columns:
            raise ValueError(f"every table needs a '{REALIZES_COLUMN}' column")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column names must be unique")
        for index, row in enumerate(self.rows):
            if set(row) != set(self.columns):
                raise ValueError(f"row {index} has keys {sorted(row)}, expected {sorted(self.columns)}")
        return self

    @classmethod
    def build(
        cls,
        name: str,
        columns: Sequence[str],
        rows: Sequence[Mapping[str, Any]],
        config: Optional[Mapping[str, Any]] = None,
        tolerances: Optional[Mapping[str, float]] = None,
    ) -> "TableReport":
        config = dict(config or {})
        columns = list(columns)
        if REALIZES_COLUMN not in columns:
            columns.append(REALIZES_COLUMN)
        return cls(
            name=name,
            columns=columns,
            rows=[dict(row) for row in rows],
            config=config,
            config_hash=config_hash(config),
            tolerances=dict(tolerances or {}),
        )
