from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Search and enumeration budgets; every one can be overridden per call
    NODE_BUDGET: int = 200_000
    TIME_BUDGET: float = 0.0  # seconds, 0 disables the clock
    SET_GROUND_LIMIT: int = 6
    SUBSPACE_GROUND_LIMIT: int = 4
    CONSTRUCTION_LIMIT: int = 4096
    RANDOM_ATTEMPTS: int = 64

    # Re-verify the licensing condition after every fill-up step
    REVERIFY_SATURATION: bool = False

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "BOLLOBAS_"
        extra = "ignore"


settings = Settings()  # Application settings instance
