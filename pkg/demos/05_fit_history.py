"""Scoring the model against an observed census table.

Loads the bundled synthetic census sample (CSV with `time_h,census`
columns), interpolates the simulated census onto the observed
timestamps, and reports RMSE/MAE.  A short grid search over mean daily
arrivals shows how the score responds to recalibration.
"""

import numpy as np

from edflow import load_preset, run_scenario
from edflow.fit import compare_history, sample_observed


def main():
    times, census = sample_observed()
    print(f"observed sample: {len(times)} points over "
          f"[{times[0]:.0f}, {times[-1]:.0f}] h, "
          f"census {census.min():.0f}-{census.max():.0f}")

    base = load_preset("baseline")
    report = compare_history(run_scenario(base), times, census)
    print(f"\nbaseline fit: rmse {report.rmse:.2f}  mae {report.mae:.2f}")

    print("\nscaling mean daily arrivals:")
    daily = np.array(base.params.daily_mean_arrivals)
    for scale in (0.9, 0.95, 1.0, 1.05, 1.1):
        params = base.params.with_updates(
            daily_mean_arrivals=tuple(daily * scale))
        spec = base.from_dict({**base.to_dict(), "params": params.to_dict()})
        r = compare_history(run_scenario(spec), times, census)
        marker = "  <- shipped calibration" if scale == 1.0 else ""
        print(f"  x{scale:4.2f}: rmse {r.rmse:6.2f}{marker}")


if __name__ == "__main__":
    main()
