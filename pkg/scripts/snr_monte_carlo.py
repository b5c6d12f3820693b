"""Speed recovery of fit_wind against jitter level, over many noise seeds.

    python scripts/snr_monte_carlo.py [n_seeds]
"""
import sys
from datetime import datetime

import numpy as np

from twomedia import inversion, optics, sky, synthesis

n_seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 200
site = sky.obninsk()
inst = optics.paper_interferometer()
wind = sky.WindVector.from_degrees(481_500.0, 0.0, 38.84)
epochs = synthesis.default_schedule(sky.epoch_from_local(datetime(1971, 6, 22), 3.0))
peak = synthesis.synthesize_series(wind, site, inst, epochs).a_m.max()

print(f"{'S/N':>6s} {'median |err|':>13s} {'95th pct':>10s} {'within 5%':>10s} {'converged':>10s}")
for snr in (1000, 300, 100, 30, 10):
    errs, conv = [], 0
    for seed in range(n_seeds):
        noisy = synthesis.synthesize_series(wind, site, inst, epochs,
                                            synthesis.NoiseModel(peak / snr, seed))
        fit = inversion.fit_wind(noisy)
        errs.append(abs(fit.wind.speed / wind.speed - 1))
        conv += fit.converged
    errs = np.array(errs)
    print(f"{snr:6d} {np.median(errs):13.2e} {np.percentile(errs, 95):10.2e} "
          f"{np.mean(errs <= 0.05):10.2%} {conv / n_seeds:10.2%}")
