from .settings import Settings
from .experiment import ExperimentConfig

settings = Settings()

__all__ = ["Settings", "ExperimentConfig", "settings"]
