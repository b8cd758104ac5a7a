from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="Q0U_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    app_name: str = "Q0u Proof Kernel"
    app_version: str = "0.1.0"
    env: str = "development"
    debug: bool = False

    # Semantics: hard limit on the number of elements of any enumerated domain
    domain_size_cap: int = Field(5000, ge=1)

    # Kernel
    extended_mode: bool = False

    # Validity sweeps and the self-check battery
    max_base: int = Field(2, ge=1)
    selfcheck_iota_bases: list[int] = [1, 2]
    selfcheck_generated_wffs: int = Field(500, ge=1)
    selfcheck_tautology_cases: int = Field(1000, ge=1)
    random_seed: int = 5210


settings = Settings()
