"""What moves the needle: one-at-a-time parameter sweeps.

Reproduces the headline sensitivity story on the stressed scenario:

* lowering the boarder trigger to 7 makes the protocol fire more often,
  trading higher census and boarders for lower occupancy and fewer
  admitted electives;
* the census trigger has no independent effect, because census always
  exceeds the tested thresholds whenever the boarder criterion holds;
* transfer time is the single biggest lever on boarding.
"""

from edflow import load_preset
from edflow.sensitivity import SWEEPABLE, sweep

RANGES = {
    "boarder_trigger": (7.0, 13.0),
    "census_trigger": (48.0, 60.0),
    "total_beds": (400.0, 900.0),
    "bed_assign_time_h": (1.8, 4.0),
    "transfer_time_h": (0.5, 2.5),
    "mean_elective_per_day": (100.0, 200.0),
}


def show(report):
    print(f"\n{report.parameter}  "
          f"({report.input_min:g} / {report.input_base:g} / {report.input_max:g})")
    for name, o in report.outputs.items():
        print(f"  {name:22s} {o.pct_min:+7.2f}%  {o.pct_max:+7.2f}%  "
              f"(diverges at t = {o.divergence_time_h:.1f} h)")


def main():
    spec = load_preset("stressed")
    boarder_effect = {}
    for parameter in SWEEPABLE:
        report = sweep(spec, parameter, *RANGES[parameter])
        show(report)
        o = report.outputs["boarders"]
        boarder_effect[parameter] = max(abs(o.pct_min), abs(o.pct_max))

    ranked = sorted(boarder_effect.items(), key=lambda kv: -kv[1])
    print("\nboarder effect ranking (max |deviation|):")
    for parameter, effect in ranked:
        print(f"  {parameter:22s} {effect:6.2f}%")


if __name__ == "__main__":
    main()
