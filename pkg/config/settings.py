from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Enumeration budgets
    SWEEP_TABLE_BUDGET: int = 2 ** 20
    SUPPORT_BUDGET: int = 2 ** 16

    # Brute-force searches (permutations, variable maps)
    CLASSIFIER_MAX_ARITY: int = 6

    # Sweep processing
    MAX_WORKERS: int = 4
    SWEEP_CHUNK_SIZE: int = 256
    DEFAULT_SEED: int = 20100101

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")


settings = Settings()
