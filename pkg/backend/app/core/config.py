from pathlib import Path

from pydantic_settings import BaseSettings


BASE_DIR = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    project_name: str = "PrivTrack"
    log_level: str = "WARNING"

    # Artifacts
    output_dir: str = "out"
    templates_dir: str = str(BASE_DIR / "templates")
    svg_canvas: int = 800
    decimal_places: int = 6

    # Iteration caps
    zone_max_periods: int = 64
    oracle_iteration_cap: int = 200
    survival_depth: int = 50
    simulate_horizon: int = 1000

    # Sweeps
    verify_samples: int = 500
    verify_seed: int = 0
    map_resolution: int = 400
    power_resolution: int = 2000

    class Config:
        env_file = ".env"
        env_prefix = "PPTRACK_"


settings = Settings()
