"""Time the closed-form engine against the linear-system oracle.

    python scripts/oracle_timing.py [TRIALS] [SEED]
"""

import sys
import time

import numpy as np

from chiralwg.verify import oracle_equivalence

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
t0 = time.perf_counter()
res = oracle_equivalence(np.random.default_rng(seed), trials)
res.seconds = time.perf_counter() - t0
print(res.line())
