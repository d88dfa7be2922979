import os

COERCE_INPUTS: bool = True

COERCION_FAILURE_MSG: str = "Failed to coerce input"
REQUIREMENT_FAILURE_MSG: str = "Requirement constraint failed"

MAX_PERMUTATION_PRODUCTS: int = 10**8
MAX_WEDGE_STATE_BYTES: int = 2 * 1024**3
WEDGE_BYTES_PER_ENTRY: int = 256
MAX_POLY_TERMS: int = 5 * 10**6
AUTO_ORACLE_THRESHOLD: int = 1000

THREADS: int = os.cpu_count() or 1
PARALLEL_MIN_PRODUCTS: int = 10**5

MAX_QUADRATURE_ORDER: int = 64
MAX_QUADRATURE_NODES: int = 10**7
NEWTON_TOL: float = 1e-15
QUADRATURE_RTOL: float = 1e-10
QUADRATURE_ATOL: float = 1e-12

RANDOM_SEED: int = 20240601
RANDOM_EQUIVALENCE_SAMPLES: int = 200
RANDOM_MINOR_SUMMATION_SAMPLES: int = 100
RANDOM_INVARIANCE_SAMPLES: int = 100

DEFAULT_GRID: str = "a=1,2,3;b=1,2,3;k=1,2;n=1,2,3"
