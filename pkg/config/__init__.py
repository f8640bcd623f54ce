from .settings import settings
from .log_setup import configure_logging
from .run_config import RunConfig, load_run_config

__all__ = ["settings", "configure_logging", "RunConfig", "load_run_config"]
