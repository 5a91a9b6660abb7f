import os
from typing import Any, Dict, Mapping, Optional

import toml
from pydantic import ValidationError

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.common.config.llm import LLM_API_BASE_ENV, LLM_API_KEY_ENV, LLM_MODEL_ENV
from ontomatch.common.custom_exceptions import ConfigurationError
from ontomatch.common.utilities import build_error_message_list
from ontomatch.domain.gateway_config import GatewayConfig
from ontomatch.domain.run_config import RunConfig

GATEWAY_TABLE = "gateway"
ENVIRONMENT_KEYS = {
    LLM_API_BASE_ENV: "base_url",
    LLM_API_KEY_ENV: "api_key",
    LLM_MODEL_ENV: "model",
}


def _split_settings(settings: Mapping[str, Any]) -> Dict[str, Any]:
    """Moves flat gateway keys into the gateway table."""
    run_keys = set(RunConfig.__fields__) - {GATEWAY_TABLE}
    gateway_keys = set(GatewayConfig.__fields__)
    run: Dict[str, Any] = {}
    gateway: Dict[str, Any] = {}
    unknown = []
    for key, value in settings.items():
        if key == GATEWAY_TABLE:
            if not isinstance(value, dict):
                raise ConfigurationError("The [gateway] entry must be a table")
            gateway.update(value)
        elif key in run_keys:
            run[key] = value
        elif key in gateway_keys:
            gateway[key] = value
        else:
            unknown.append(key)
    if unknown:
        raise ConfigurationError(f"Unknown configuration keys: {sorted(unknown)}")
    run[GATEWAY_TABLE] = gateway
    return run


def read_config_file(path: str, file_adapter: FileAdapter = FileAdapter()) -> Dict[str, Any]:
    try:
        return toml.loads(file_adapter.read_text(path))
    except toml.TomlDecodeError as error:
        raise ConfigurationError(f"The configuration file [{path}] is not valid TOML: {error}")


def load_run_config(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Mapping[str, str] = os.environ,
    file_adapter: FileAdapter = FileAdapter(),
) -> RunConfig:
    """
    Resolves the run configuration.

    Later sources win: built-in defaults, then the TOML file, then the
    LLM_* environment variables, then command-line overrides.
    """
    settings = _split_settings(read_config_file(path, file_adapter) if path else {})
    for variable, key in ENVIRONMENT_KEYS.items():
        if environ.get(variable):
            settings[GATEWAY_TABLE][key] = environ[variable]

    cli_settings = _split_settings(
        {key: value for key, value in (overrides or {}).items() if value is not None}
    )
    settings[GATEWAY_TABLE].update(cli_settings.pop(GATEWAY_TABLE))
    settings.update(cli_settings)

    try:
        return RunConfig.parse_obj(settings)
    except ValidationError as error:
        raise ConfigurationError(
            f"Invalid configuration: {'; '.join(build_error_message_list(error))}"
        )
