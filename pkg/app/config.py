from pydantic import BaseModel
import os


class Settings(BaseModel):
    default_trunc: int = int(os.getenv("CODIFF_TRUNC", 6))
    sl2_trunc: int = int(os.getenv("CODIFF_SL2_TRUNC", 6))
    bplus_trunc: int = int(os.getenv("CODIFF_BPLUS_TRUNC", 6))
    slq2_trunc: int = int(os.getenv("CODIFF_SLQ2_TRUNC", 4))
    kappa_trunc: int = int(os.getenv("CODIFF_KAPPA_TRUNC", 4))
    divided_power_trunc: int = int(os.getenv("CODIFF_DIVIDED_POWER_TRUNC", 6))

    seed: int = int(os.getenv("CODIFF_SEED", 20240917))
    probe_budget: int = int(os.getenv("CODIFF_PROBE_BUDGET", 50))
    probe_height: int = int(os.getenv("CODIFF_PROBE_HEIGHT", 3))
    parameter_samples: list[str] = os.getenv("CODIFF_PARAMETER_SAMPLES", "0,1,2,-1").split(",")

    rewrite_step_budget: int = int(os.getenv("CODIFF_REWRITE_BUDGET", 500000))

    progress: bool = os.getenv("CODIFF_PROGRESS", "0") == "1"
    log_level: str = os.getenv("CODIFF_LOG_LEVEL", "INFO")


settings = Settings()
