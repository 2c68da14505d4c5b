'''
Setup and run zenoprotect scenarios
'''

from .config import ConfigError
from .config import ScenarioConfig
from .config import load
from .config import load_path
from .config import load_scenario
from .config import apply_overrides
from .config import resolve_config
from .run import run_scenario
from .run import emit_figures
from .verify import VerifyReport
from .verify import load_expectations
from .verify import verify

__all__ = ["ConfigError",
           "ScenarioConfig",
           "load",
           "load_path",
           "load_scenario",
           "apply_overrides",
           "resolve_config",
           "run_scenario",
           "emit_figures",
           "VerifyReport",
           "load_expectations",
           "verify"]
