"""Learning run settings loaded from config/learning.yaml"""

import logging
from typing import Any, Dict, Optional

from src.core.base_config import BaseConfig

logger = logging.getLogger("strchc")

LEARNERS = ("sat", "lstar")
TEACHERS = ("exact", "external", "hybrid")


class LearningConfig(BaseConfig):
    """Defaults for every CEGIS run; command-line flags override them"""

    def __init__(self, config_path: str = "config/learning.yaml"):
        super().__init__(config_path, "learning")

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "learner": {
                "kind": "sat",
                "max_states": 16,
                "symmetry_breaking": False,
                "sat_backend": "g4",
            },
            "teacher": {
                "kind": "hybrid",
                "solver_config": None,
                "incremental": True,
                "single_session": False,
            },
            "reachability": {
                "length_slack": 2,
                "depth_cap": 64,
                "node_cap": 1000000,
                "unsafe_search_interval": 8,
                "unsafe_search_window": 10,
            },
            "automata": {
                "subset_cap": 65536,
                "simplify_regex": True,
            },
            "budget": {
                "timeout_seconds": 60,
                "iteration_cap": 500,
            },
            "performance": {
                "max_workers": 1,
            },
            "output": {
                "dump_dir": None,
                "transcript": None,
                "log_file": None,
            },
        }

    @property
    def learner(self) -> str:
        return self.get("learner.kind", "sat")

    @property
    def max_states(self) -> int:
        return self.get("learner.max_states", 16)

    @property
    def symmetry_breaking(self) -> bool:
        return self.get("learner.symmetry_breaking", False)

    @property
    def sat_backend(self) -> str:
        return self.get("learner.sat_backend", "g4")

    @property
    def teacher(self) -> str:
        return self.get("teacher.kind", "hybrid")

    @property
    def solver_config(self) -> Optional[str]:
        return self.get("teacher.solver_config")

    @property
    def incremental(self) -> bool:
        return self.get("teacher.incremental", True)

    @property
    def single_session(self) -> bool:
        return self.get("teacher.single_session", False)

    @property
    def length_slack(self) -> int:
        return self.get("reachability.length_slack", 2)

    @property
    def depth_cap(self) -> int:
        return self.get("reachability.depth_cap", 64)

    @property
    def node_cap(self) -> int:
        return self.get("reachability.node_cap", 1000000)

    @property
    def unsafe_search_interval(self) -> int:
        return self.get("reachability.unsafe_search_interval", 8)

    @property
    def unsafe_search_window(self) -> int:
        return self.get("reachability.unsafe_search_window", 10)

    @property
    def subset_cap(self) -> int:
        return self.get("automata.subset_cap", 65536)

    @property
    def simplify_regex(self) -> bool:
        return self.get("automata.simplify_regex", True)

    @property
    def timeout_seconds(self) -> float:
        return self.get("budget.timeout_seconds", 60)

    @property
    def iteration_cap(self) -> int:
        return self.get("budget.iteration_cap", 500)

    @property
    def max_workers(self) -> int:
        return self.get("performance.max_workers", 1)

    @property
    def dump_dir(self) -> Optional[str]:
        return self.get("output.dump_dir")

    @property
    def transcript(self) -> Optional[str]:
        return self.get("output.transcript")

    @property
    def log_file(self) -> Optional[str]:
        return self.get("output.log_file")

    def validate(self) -> bool:
        if self.learner not in LEARNERS:
            logger.error(f"Unknown learner {self.learner!r}; expected one of {LEARNERS}")
            return False
        if self.teacher not in TEACHERS:
            logger.error(f"Unknown teacher {self.teacher!r}; expected one of {TEACHERS}")
            return False
        for key in ("learner.max_states", "reachability.depth_cap", "reachability.node_cap",
                    "automata.subset_cap", "performance.max_workers"):
            if not isinstance(self.get(key), int) or self.get(key) < 1:
                logger.error(f"{key} must be a positive integer")
                return False
        return True
