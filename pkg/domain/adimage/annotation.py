from pydantic import BaseModel, Field, model_validator


class AnnotatedInstance(BaseModel):
    """
    One ground truth action, as inclusive frame indices
    """
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    class_id: int = Field(ge=0)


class Annotation(BaseModel):
    """
    The ground truth for one video. Instances are kept sorted by start frame.
    """
    video_id: str
    num_frames: int = Field(ge=0)
    instances: list[AnnotatedInstance] = Field(default_factory=list)

    @model_validator(mode='after')
    def sort_instances(self):
        self.instances = sorted(self.instances, key=lambda instance: (instance.start, instance.end))
        return self
