import pytest

from ontomatch.application.services.config_service import load_run_config, read_config_file
from ontomatch.common.custom_exceptions import ConfigurationError
from ontomatch.domain.gateway_config import Backend
from ontomatch.domain.run_config import PromptStyle
from test.test_utils import toy_path


class TestLoadRunConfig:
    def test_defaults_without_sources(self):
        config = load_run_config(environ={})

        assert config.anchors_k == 10
        assert config.gateway.backend == Backend.HTTP

    def test_reads_the_toy_file(self):
        config = load_run_config(toy_path("config.toml"), environ={})

        assert (config.seed, config.anchors_k, config.candidates_k) == (7, 4, 3)
        assert config.prompt_style == PromptStyle.BASE
        assert config.gateway.backend == Backend.MOCK
        assert config.gateway.max_concurrent == 2

    def test_flat_gateway_keys_are_accepted(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text('model = "mistral"\nhops = 2\n')

        config = load_run_config(str(path), environ={})

        assert config.gateway.model == "mistral"
        assert config.hops == 2

    def test_environment_overrides_the_file(self):
        config = load_run_config(
            toy_path("config.toml"),
            environ={
                "LLM_MODEL": "from-env",
                "LLM_API_KEY": "secret",
                "LLM_API_BASE": "http://h/v1/",
            },
        )

        assert config.gateway.model == "from-env"
        assert config.gateway.api_key.get_secret_value() == "secret"
        assert config.gateway.base_url == "http://h/v1"

    def test_command_line_overrides_everything(self):
        config = load_run_config(
            toy_path("config.toml"),
            overrides={"seed": 11, "backend": "http", "prompt_style": "patterns", "hops": None},
            environ={"LLM_MODEL": "from-env"},
        )

        assert config.seed == 11
        assert config.hops == 1
        assert config.gateway.backend == Backend.HTTP
        assert config.prompt_style == PromptStyle.PATTERNS
        assert config.gateway.fixtures_path == "data/toy/fixtures.json"

    @pytest.mark.parametrize(
        "content, message",
        [
            ("colour = 3\n", "Unknown configuration keys: \\['colour'\\]"),
            ("anchors_k = 0\n", "anchors_k must be >= 1"),
            ("gateway = 3\n", "must be a table"),
            ("[gateway]\nmax_concurrent = 0\n", "max_concurrent must be >= 1"),
            ("token_budget = 10\n", "token_budget must be >= 256"),
        ],
    )
    def test_invalid_settings(self, tmp_path, content, message):
        path = tmp_path / "run.toml"
        path.write_text(content)

        with pytest.raises(ConfigurationError, match=message):
            load_run_config(str(path), environ={})

    def test_unknown_override(self):
        with pytest.raises(ConfigurationError, match="Unknown configuration keys"):
            load_run_config(overrides={"verbosity": 2}, environ={})


class TestReadConfigFile:
    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("seed = = 3\n")

        with pytest.raises(ConfigurationError, match="not valid TOML"):
            read_config_file(str(path))
