from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from stsig.base.data_sources import JsonFile


@dataclass
class RunManifest:
    """Everything needed to re-run an experiment command and get the same tables back.

    Args:
        command (str): The CLI command, e.g. `experiment`.
        experiment (str): Experiment name.
        parameters (Dict[str, Any]): Resolved settings after layering defaults, user config and overrides.
        seed (int): Master seed.
        version (str): Package version that produced the run.
        threads (int): Worker threads; results do not depend on it.
        outputs (List[str]): Files written by the run.
        started_at (Optional[str]): ISO-8601 start time.
        wall_clock_s (Optional[float]): Duration, filled in when the run completes.
    """

    command: str
    experiment: str
    parameters: Dict[str, Any]
    seed: int
    version: str
    threads: int = 1
    outputs: List[str] = field(default_factory=list)
    started_at: Optional[str] = None
    wall_clock_s: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "RunManifest":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        assert not unknown, f"Unknown manifest fields: {sorted(unknown)}."
        return cls(**data)

    def write(self, path: Union[str, Path]) -> None:
        JsonFile(path).write(self.to_json())

    @classmethod
    def read(cls, path: Union[str, Path]) -> "RunManifest":
        return cls.from_json(JsonFile(path).read())
