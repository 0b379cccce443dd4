"""A full Monte Carlo experiment: measured rates against theory bounds.

Runs a seeded experiment, prints what fraction of trials broke the
tightness tolerance or left the pair-angle window, and compares each
rate with its closed-form bound.  Worker processes never change the
numbers; trial i always uses the stream derived from (master_seed, i).
"""

from fusionframes import ExperimentConfig, run_experiment

CONFIG = ExperimentConfig(
    dim=24,
    subspace_dim=3,
    count=64,
    delta=0.45,
    trials=400,
    master_seed=2024,
)


def main():
    rep = run_experiment(CONFIG, workers=4)
    c = rep.config
    print(
        f"N={c.dim} s={c.subspace_dim} K={c.count} delta={c.delta} "
        f"trials={rep.trials_completed} failures={len(rep.failures)}"
    )
    print()
    mean_eps, sd_eps = rep.stats["eps_tight"]
    print(f"eps_tight: mean {mean_eps:.4f}, stddev {sd_eps:.4f}, tolerance {rep.eps_bound:.4f}")
    print(f"{'event':>22}  {'empirical':>10}  {'theory bound':>13}  dominated")
    rows = (
        ("tightness exceeded", rep.tightness_rate, rep.theory_tightness, rep.tightness_dominated),
        ("window missed", rep.window_rate, rep.theory_all_pairs, rep.window_dominated),
    )
    for name, rate, bound, ok in rows:
        shown = f"{bound:.3e}" if bound < 1.0 else f"{bound:.3e} (vacuous)"
        print(f"{name:>22}  {rate:>10.4f}  {shown:>13}  {ok}")
    print(f"{'floor beaten':>22}  {rep.welch_rate:>10.4f}  {'impossible':>13}  {rep.welch_rate == 0.0}")
    print()
    print("at desk scale the closed-form bounds are vacuous (they switch on")
    print("around N ~ 10^4, see bound_landscape.py), so dominance here is")
    print("trivial; the substantive check is that the measured rates are 0.")


if __name__ == "__main__":
    main()
