from pydantic import BaseModel, Field

from domain.config.inference import default_threshold, default_samples, default_nms_sigma, default_score_floor, \
    default_max_candidates


class DecodeConfig(BaseModel):
    """
    Settings of the reverse chain and the decoding of its output into action instances
    """
    threshold: float = Field(default=default_threshold, gt=0, lt=1)
    samples: int = Field(default=default_samples, ge=1)
    nms_sigma: float = Field(default=default_nms_sigma, gt=0)
    score_floor: float = Field(default=default_score_floor, ge=0, lt=1)
    max_candidates: int = Field(default=default_max_candidates, ge=1)
