"""Where the closed-form failure bounds start to say something.

Every bound is a probability, but below a scale threshold its formula
value exceeds 1 (vacuous) and can even overflow to inf.  This walks the
K axis at fixed N, s, delta and prints the tightness and all-pairs
bounds with their vacuity flags: the guarantees switch on exactly where
the aspect regime condition (total rows outgrowing the ambient
dimension fast enough) starts to hold.
"""

from fusionframes import evaluate_bounds, is_vacuous

N, S, DELTA = 16384, 64, 0.5


def fmt(value):
    flag = " (vacuous)" if is_vacuous(value) else ""
    return f"{value:12.4e}{flag}"


def main():
    print(f"N={N}, s={S}, delta={DELTA}")
    print(
        f"{'K':>7}  {'tightness failure':>28}  {'all-pairs failure':>28}  aspect cond"
    )
    for k in (512, 2048, 8192, 32768, 131072):
        bs = evaluate_bounds(N, S, k, DELTA)
        print(
            f"{k:>7}  {fmt(bs.tightness.total):>28}  {fmt(bs.all_pairs):>28}"
            f"  {bs.regime.ok_aspect}"
        )
    print()
    bs = evaluate_bounds(N, S, 32768, DELTA)
    lo, hi = bs.tightness.frame_lower, bs.tightness.frame_upper
    print(f"at K=32768 the operator spectrum lands in [{lo:.1f}, {hi:.1f}]")
    print(f"with failure probability at most {bs.tightness.total:.3e},")
    print(f"and every normalized pair angle sits in")
    print(f"[{bs.pair.window[0]:.3f}, {bs.pair.window[1]:.3f}]")
    print(f"with failure probability at most {bs.all_pairs:.3e}.")


if __name__ == "__main__":
    main()
