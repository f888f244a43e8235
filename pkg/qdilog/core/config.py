"""
Core configuration settings for the library and command-line interface
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""
    
    # Application Settings
    APP_NAME: str = "qdilog"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "WARNING"
    
    # Numerical defaults
    DEFAULT_PRECISION: int = Field(default=50, ge=15)
    QDILOG_MAX_TERMS: int = Field(default=10_000_000, ge=1)
    MAX_QUADRATURE_NODES: int = Field(default=10_000_000, ge=1)
    RESIDUE_RADIUS: float = Field(default=0.25, gt=0, lt=0.5)
    
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )


# Global settings instance
settings = Settings()
