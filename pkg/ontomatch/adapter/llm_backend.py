from typing import List

import numpy as np

from ontomatch.domain.chat import ChatRequest


class LlmBackend:
    """Anything able to answer a chat request and embed texts."""

    def complete(self, request: ChatRequest) -> str:
        raise NotImplementedError

    def embed(self, texts: List[str]) -> List[np.ndarray]:
        raise NotImplementedError
