# mastergraph/config.py
import os
from dotenv import load_dotenv

load_dotenv()


class Settings:
    PROJECT_NAME: str = "MasterGraph"
    VERSION: str = "0.1.0"
    API_V1_STR: str = "/api/v1"

    # Параллелизм и лимиты
    THREADS: int = max(1, int(os.getenv("MASTERGRAPH_THREADS", "1")))
    TREE_CAP: int = int(os.getenv("MASTERGRAPH_TREE_CAP", "10"))
    MAX_TREES: int = int(os.getenv("MASTERGRAPH_MAX_TREES", "20000"))
    SIM_CHUNK: int = int(os.getenv("MASTERGRAPH_SIM_CHUNK", "8192"))
    SPECTRAL_MAX_N: int = 200

    LOG_LEVEL: str = os.getenv("MASTERGRAPH_LOG_LEVEL", "INFO")

    # Численные допуски (задаются один раз, используются везде)
    NULLITY_RTOL: float = 1e-9
    KERNEL_RTOL: float = 1e-10
    PROBABILITY_ATOL: float = 1e-9
    SINGULAR_VALUE_ATOL: float = 1e-10
    COLUMN_SUM_ATOL: float = 1e-12

    # Униформизация
    UNIFORMIZATION_FACTOR: float = 1.05
    POISSON_TAIL: float = 1e-12
    RENORMALIZATION_DEFECT: float = 1e-10

    # Порог перехода к логарифмам при перемножении интенсивностей
    LOG_SPACE_THRESHOLD: float = 1e300


settings = Settings()
