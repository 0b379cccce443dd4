"""Empirical chi-square tails against their exponential bounds.

The concentration machinery rests on one scalar fact: the normalized
squared norm |g|^2/n of an n-dimensional standard Gaussian stays within
a (1+delta) factor of 1, with both tails bounded by explicit
exponentials.  Here we draw a million values and compare.
"""

from fusionframes import run_chi2_experiment

N, TRIALS, SEED = 100, 1_000_000, 7


def main():
    print(f"chi2_{N}/{N} tails over {TRIALS:,} seeded draws")
    header = (
        f"{'delta':>6}  {'upper rate':>11}  {'upper bound':>11}"
        f"  {'lower rate':>11}  {'lower bound':>11}  dominated"
    )
    print(header)
    for delta in (0.05, 0.1, 0.2, 0.3, 0.5):
        rep = run_chi2_experiment(N, delta, TRIALS, SEED)
        both = rep.upper_dominated and rep.lower_dominated
        print(
            f"{delta:>6.2f}  {rep.upper_rate:>11.5f}  {rep.upper_bound:>11.5f}"
            f"  {rep.lower_rate:>11.5f}  {rep.lower_bound:>11.5f}  {both}"
        )
    print()
    print("the lower tail carries the weaker cubic correction, so its")
    print("bound is looser at every delta; both stay above the data.")


if __name__ == "__main__":
    main()
