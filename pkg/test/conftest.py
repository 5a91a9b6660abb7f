import pytest
from dotenv import load_dotenv

from ontomatch.common.config.llm import LLM_API_BASE_ENV, LLM_API_KEY_ENV, LLM_MODEL_ENV

try:
    load_dotenv()
except OSError:
    pass


@pytest.fixture(autouse=True)
def isolate_llm_environment(monkeypatch):
    # A developer's .env must not point tests at a live endpoint
    for name in (LLM_API_BASE_ENV, LLM_API_KEY_ENV, LLM_MODEL_ENV):
        monkeypatch.delenv(name, raising=False)
