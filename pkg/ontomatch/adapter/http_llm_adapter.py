from typing import Dict, List, Optional

import httpx
import numpy as np

from ontomatch.adapter.llm_backend import LlmBackend
from ontomatch.common.config.llm import (
    CHAT_COMPLETIONS_PATH,
    EMBEDDINGS_PATH,
    RETRYABLE_STATUS_CODES,
)
from ontomatch.common.custom_exceptions import (
    GatewayResponseError,
    GatewayTransportError,
)
from ontomatch.common.logger import AppLogger
from ontomatch.domain.chat import ChatRequest
from ontomatch.domain.gateway_config import GatewayConfig


class HttpLlmAdapter(LlmBackend):
    """Speaks the OpenAI-compatible chat-completion and embedding wire shape."""

    def __init__(self, config: GatewayConfig, client: Optional[httpx.Client] = None):
        self.__config = config
        self.__client = client or httpx.Client(timeout=config.timeout_seconds)

    def complete(self, request: ChatRequest) -> str:
        body = {
            "model": request.model,
            "messages": [
                {"role": message.role, "content": message.content}
                for message in request.messages
            ],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        if request.seed is not None:
            body["seed"] = request.seed

        payload = self._post(CHAT_COMPLETIONS_PATH, body)
        choices = payload.get("choices") or []
        if not choices:
            raise GatewayResponseError("The completion response had no choices")
        content = (choices[0].get("message") or {}).get("content")
        if content is None:
            raise GatewayResponseError("The first choice carried no message content")
        return content

    def embed(self, texts: List[str]) -> List[np.ndarray]:
        payload = self._post(
            EMBEDDINGS_PATH,
            {"model": self.__config.embedding_model, "input": list(texts)},
        )
        data = sorted(payload.get("data") or [], key=lambda item: item.get("index", 0))
        if len(data) != len(texts):
            raise GatewayResponseError(
                f"Expected {len(texts)} embeddings but received {len(data)}"
            )
        return [np.asarray(item["embedding"], dtype=float) for item in data]

    def _headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        api_key = self.__config.api_key.get_secret_value()
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        return headers

    def _post(self, path: str, body: dict) -> dict:
        url = f"{self.__config.base_url}{path}"
        try:
            response = self.__client.post(url, json=body, headers=self._headers())
        except httpx.HTTPError as error:
            AppLogger.warning(f"Transport failure calling {url}: {error}")
            raise GatewayTransportError(f"Transport failure calling {url}: {error}")

        if response.status_code in RETRYABLE_STATUS_CODES:
            raise GatewayTransportError(
                f"{url} answered with retryable status {response.status_code}"
            )
        if not response.is_success:
            raise GatewayResponseError(
                f"{url} answered with status {response.status_code}: {response.text}",
                status_code=response.status_code,
            )
        try:
            return response.json()
        except ValueError:
            raise GatewayResponseError(f"{url} did not return JSON")
