import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DEFAULT_CONFIG_FILE = Path(__file__).parent / "config.yaml"


class Settings:
    """Application settings loaded from config.yaml and the environment."""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = Path(config_path) if config_path else DEFAULT_CONFIG_FILE
        self.config = self._load_config(self.config_path)

        sieve = self.config.get("sieve", {})
        numerics = self.config.get("numerics", {})
        predictors = self.config.get("predictors", {})
        gcdsum = self.config.get("gcdsum", {})
        output = self.config.get("output", {})
        parallel = self.config.get("parallel", {})
        logging_cfg = self.config.get("logging", {})

        self.sieve_limit = int(sieve.get("limit", 200000))

        self.tolerance = float(numerics.get("tolerance", 0.05))
        self.quad_rel_tol = float(numerics.get("quad_rel_tol", 1e-10))
        self.phi_hat_cutoff = float(numerics.get("phi_hat_cutoff", 12.0))
        self.gaussian_floor = float(numerics.get("gaussian_floor", 1e-16))
        self.renormalize_every = int(numerics.get("renormalize_every", 65536))
        self.pair_budget = float(numerics.get("pair_budget", 5e7))
        self.search_budget = float(numerics.get("search_budget", 1e9))
        self.block_size = int(numerics.get("block_size", 256))

        self.delta = float(predictors.get("delta", 0.005))
        self.eta = float(predictors.get("eta", 0.1))
        self.set_search_budget = int(gcdsum.get("search_budget", 2000))

        self.output_format = output.get("format", "json")
        self.schema_version = int(output.get("schema_version", 1))

        # The only environment input: worker threads
        self.workers_raw = os.getenv("RESONANCE_LAB_THREADS", "").strip() or str(parallel.get("workers", 1))
        self.workers = self._parse_workers(self.workers_raw)

        self.log_level = logging_cfg.get("level", "INFO")
        self.log_file = logging_cfg.get("file") or None

    @staticmethod
    def _parse_workers(raw: str) -> Optional[int]:
        """Worker count, or None when raw is not an integer."""
        try:
            return int(raw)
        except ValueError:
            return None

    @staticmethod
    def _load_config(config_path: Path) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
        with open(config_path, "r") as f:
            return yaml.safe_load(f) or {}

    def validate(self) -> list[str]:
        """Validate settings and return a list of problems."""
        problems = []
        if self.sieve_limit < 2:
            problems.append("sieve.limit must be >= 2")
        if self.tolerance <= 0:
            problems.append("numerics.tolerance must be positive")
        if self.quad_rel_tol < 1e-14:
            problems.append("numerics.quad_rel_tol is below double precision")
        if self.pair_budget <= 0 or self.search_budget <= 0:
            problems.append("work budgets must be positive")
        if self.block_size < 1:
            problems.append("numerics.block_size must be >= 1")
        if not 0 < self.delta < 0.01:
            problems.append("predictors.delta must lie in (0, 1/100)")
        if not 0 < self.eta < 0.5:
            problems.append("predictors.eta must lie in (0, 1/2)")
        if self.output_format not in ("csv", "json"):
            problems.append("output.format must be csv or json")
        if self.workers is None:
            problems.append(
                f"RESONANCE_LAB_THREADS / parallel.workers must be an integer, got {self.workers_raw!r}"
            )
        elif self.workers < 1:
            problems.append("RESONANCE_LAB_THREADS / parallel.workers must be >= 1")
        return problems
