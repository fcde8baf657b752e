from polymellin.config.loader import load_config, parse_config_file, render_config, save_config
from polymellin.config.models import (
    CoamoebaSettings,
    ContinuationSettings,
    DecaySettings,
    GkzSettings,
    LaurentSettings,
    NonvanishingSettings,
    QuadratureSpec,
    ResolvedConfig,
    ToolConfig,
)

__all__ = [
    "CoamoebaSettings",
    "ContinuationSettings",
    "DecaySettings",
    "GkzSettings",
    "LaurentSettings",
    "NonvanishingSettings",
    "QuadratureSpec",
    "ResolvedConfig",
    "ToolConfig",
    "load_config",
    "parse_config_file",
    "render_config",
    "save_config",
]
