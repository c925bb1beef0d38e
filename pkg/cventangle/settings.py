from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", env_prefix="CVENT_", extra="ignore")

    app_name: str = "cventangle"

    # Nyström discretization
    max_matrix_side: int = Field(default=4001, ge=1)
    start_half_count: int = Field(default=100, ge=1)
    window_std_multiple: float = Field(default=10.0, gt=0)
    tolerance_sigfigs: int = Field(default=5, ge=1, le=12)

    # numeric guards
    negative_eigenvalue_tolerance: float = 1e-10
    boundary_mass_tolerance: float = 1e-10
    hermitian_tolerance: float = 1e-12
    normalization_tolerance: float = 1e-12

    # sweeps / scans (None = cpu count)
    jobs: int | None = Field(default=None, ge=1)
    log_level: str = "WARNING"


settings = Settings()
