from typing import List, Optional

from pydantic import BaseModel, validator

from ontomatch.common.utilities import BaseEnum


class ChatRole(BaseEnum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"


class ChatMessage(BaseModel):
    role: ChatRole
    content: str

    class Config:
        use_enum_values = True
        frozen = True

    @validator("content")
    def content_present_for_prompts(cls, value, values):
        if values.get("role") in (ChatRole.SYSTEM.value, ChatRole.USER.value) and (
            not value or not value.strip()
        ):
            raise ValueError("system and user messages need content")
        return value


class ChatRequest(BaseModel):
    messages: List[ChatMessage]
    model: str
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: Optional[int] = None
    # Prompt template name; used for fixture fallback, never sent or hashed
    tag: Optional[str] = None

    @validator("messages")
    def starts_with_system_message(cls, messages):
        if not messages:
            raise ValueError("a chat request needs at least one message")
        if messages[0].role != ChatRole.SYSTEM.value:
            raise ValueError("the first message must have the system role")
        return messages

    @validator("temperature")
    def temperature_not_negative(cls, value):
        if value < 0:
            raise ValueError("temperature must be >= 0")
        return value

    @validator("max_tokens")
    def max_tokens_positive(cls, value):
        if value < 1:
            raise ValueError("max_tokens must be positive")
        return value

    def transcript(self) -> str:
        return "\n".join(f"{message.role}:{message.content}" for message in self.messages)
