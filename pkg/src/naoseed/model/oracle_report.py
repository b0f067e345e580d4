from pydantic import BaseModel, ConfigDict

from .grid_spec import OracleResult


class OracleReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: int = 1
    result: OracleResult
    timing_seconds: float = 0.0
