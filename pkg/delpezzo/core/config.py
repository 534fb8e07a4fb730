"""
Application configuration using pydantic-settings.
"""

from functools import lru_cache
from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Tables
    table_degrees_str: str = "1..5"
    verified_max_degree: int = 5
    table_workers: int = 1

    # Output
    default_format: str = "md"
    json_indent: bool = True
    tables_dir: str = "docs/tables"

    # Logging
    log_level: str = "INFO"

    @property
    def table_degrees(self) -> List[int]:
        """Parse degrees from a range ("1..5") or comma-separated ("1,3,5") string."""
        return parse_degrees(self.table_degrees_str)


def parse_degrees(text: str) -> List[int]:
    """Expand "1..5", "2" or "1,3,5" into a sorted list of distinct degrees."""
    degrees: set[int] = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            low, high = chunk.split("..", 1)
            degrees.update(range(int(low), int(high) + 1))
        else:
            degrees.add(int(chunk))
    if not degrees:
        raise ValueError(f"no degrees in {text!r}")
    return sorted(degrees)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()
