"""
Stress-testing a code on the air
================================

Verification proves a radius; simulation shows what that promise looks
like on actual broadcasts — and what happens the moment the channel is
worse than promised.
"""

import numpy as np

from indexcode import (
    make_field,
    odd_cycle_instance,
    simulate_once,
    trial_campaign,
    verify,
)

F2 = make_field(2)
pent = odd_cycle_instance(2)
L = np.array([
    [1, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 0, 1, 1, 0],
    [1, 1, 0, 0, 0, 1, 1, 1, 0],
    [0, 1, 1, 0, 0, 1, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 0, 1, 1]])
print(f"pentagon, 9 columns, verified at delta=2: "
      f"{verify(pent, F2, L, 2).ok}")

# one run, fully traced
x = np.array([1, 1, 0, 1, 0])
e = np.zeros(9, dtype=np.int64)
e[[2, 7]] = 1
run = simulate_once(pent, F2, L, 2, x, e)
print(f"x={run.x}, error on symbols 3 and 8 -> "
      f"every receiver correct: {run.all_correct}")

# seeded campaign within the promised radius: nothing ever fails,
# and the tally is bit-identical however many workers split the trials
stats = trial_campaign(pent, F2, L, 2, trials=2000, seed=42)
again = trial_campaign(pent, F2, L, 2, trials=2000, seed=42, workers=4)
print(f"\n2000 random trials, weight <= 2: "
      f"{stats.successes}/{stats.trials} decoded everywhere "
      f"(4-worker rerun identical: {stats == again})")

# exhaustive sweep: not sampling, every message against every error
ex = trial_campaign(pent, F2, L, 2, 0, 0, exhaustive=True)
print(f"exhaustive sweep: {ex.successes}/{ex.trials} cases "
      f"({32} messages x {ex.trials // 32} error patterns)")

# push past the radius: weight-3 errors sink at least one receiver, always
w3 = trial_campaign(pent, F2, L, 2, 0, 0, forced_weight=3, exhaustive=True)
print(f"forced weight 3: {w3.successes}/{w3.trials} survive; "
      f"per-receiver failures {w3.failures}")

# chop a column off and the radius-2 promise visibly degrades
L8 = L[:, :8].copy()
broken = trial_campaign(pent, F2, L8, 2, 0, 0, forced_weight=2,
                        exhaustive=True)
print(f"8-column truncation, forced weight 2: "
      f"{broken.successes}/{broken.trials} "
      f"({broken.success_rate:.1%} survive)")
