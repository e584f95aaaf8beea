# fairconf/core/config.py
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Engine settings loaded from environment variables (prefix FAIRCONF_).
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FAIRCONF_",
        case_sensitive=True,
        extra="ignore"
    )

    LOG: str = "info"
    LOG_FORMAT: str = "json"

    LP_TOLERANCE: float = 1e-8
    LP_CERTIFICATE_TOLERANCE: float = 1e-6

    RRFS_ZERO_TOL: float = 1e-9
    RRFS_TIE_TOL: float = 1e-12
    RRFS_LOCAL_SEARCH_PASSES: int = 50

    EXACT_BUDGET: int = 5_000_000
    EXACT_BLOCK_ROWS: int = 1 << 17
    EXACT_TIE_TOL: float = 1e-12

    KMEANS_MAX_ITER: int = 100
    DEFAULT_SEED: int = 7

    REPORT_DECIMALS: int = 2

    @property
    def log_level(self) -> str:
        """Normalize LOG to a logging level name."""
        return self.LOG.strip().upper()


settings = Settings()
