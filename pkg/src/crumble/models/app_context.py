from pathlib import Path

from pydantic import BaseModel

from crumble.models.pyproject_toml import CrumbleConfig, PyprojectToml


class AppContext(BaseModel):
    project_root: Path
    pyproject_toml: PyprojectToml

    @property
    def config(self) -> CrumbleConfig:
        return self.pyproject_toml.tool.crumble

    class Config:
        arbitrary_types_allowed = True
