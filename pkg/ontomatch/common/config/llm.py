import os

# Environment variables consulted when resolving the gateway configuration
LLM_API_BASE_ENV = "LLM_API_BASE"
LLM_API_KEY_ENV = "LLM_API_KEY"
LLM_MODEL_ENV = "LLM_MODEL"

DEFAULT_API_BASE = "http://localhost:8000/v1"
DEFAULT_MODEL = "local-model"
DEFAULT_EMBEDDING_MODEL = os.environ.get("LLM_EMBEDDING_MODEL", "local-embedding-model")

CHAT_COMPLETIONS_PATH = "/chat/completions"
EMBEDDINGS_PATH = "/embeddings"

DEFAULT_MAX_CONCURRENT = 4
DEFAULT_RETRY_LIMIT = 3
DEFAULT_TIMEOUT_SECONDS = 60.0
DEFAULT_BACKOFF_INITIAL_SECONDS = 1.0
DEFAULT_BACKOFF_MAX_SECONDS = 30.0
DEFAULT_MAX_RESPONSE_TOKENS = 2048

RETRYABLE_STATUS_CODES = [429, 500, 502, 503, 504]

MOCK_DEFAULT_FIXTURE_PREFIX = "default:"
