from typing import Optional

from pydantic import BaseSettings, Field

from config.default import (
    DEFAULT_ANNOTATION_RETRIES,
    DEFAULT_ANNOTATION_TIMEOUT_MS,
    DEFAULT_GAZETTEER_PATH,
    DEFAULT_RULES_PATH,
)


class Settings(BaseSettings):
    LOG_LEVEL: Optional[str] = Field(None, env="LOG_LEVEL")
    LOG_FILE: Optional[str] = Field(None, env="LOG_FILE")
    ANNOTATION_ENDPOINT: Optional[str] = Field(None, env="ANNOTATION_ENDPOINT")
    ANNOTATION_TIMEOUT_MS: int = Field(DEFAULT_ANNOTATION_TIMEOUT_MS, env="ANNOTATION_TIMEOUT_MS")
    ANNOTATION_RETRIES: int = Field(DEFAULT_ANNOTATION_RETRIES, env="ANNOTATION_RETRIES")
    MAX_WORKERS: Optional[int] = Field(None, env="MAX_WORKERS")
    RULES_PATH: str = Field(str(DEFAULT_RULES_PATH), env="RULES_PATH")
    GAZETTEER_PATH: str = Field(str(DEFAULT_GAZETTEER_PATH), env="GAZETTEER_PATH")
    STRICT: bool = Field(False, env="STRICT")

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False


settings = Settings()
