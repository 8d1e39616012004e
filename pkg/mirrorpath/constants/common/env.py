SEED_ENV_KEY: str = "MIRRORPATH_SEED"
DEFAULT_SEED: int = 20240601
