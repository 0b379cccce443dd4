"""Closed-form failure probability bounds for random subspace families.

Every bound is evaluated in log space (``a**b * exp(c)`` becomes
``exp(b*log(a) + c)``), so the exponents never overflow even when the
bound itself is astronomically large or small.  Values are returned
unclamped: a bound above 1 carries no information, and callers can test
that with :func:`is_vacuous` rather than having it silently hidden.

Parameter conventions, shared across the module:

* ``n``   ambient dimension N
* ``s``   subspace dimension
* ``k``   number of subspaces K
* ``m``   number of Gaussian rows, M = K*s for partitioned families
* ``delta``  multiplicative tolerance, usually restricted to (0, 1)
* ``beta``   eigenvalue ratio threshold for the single-sided tails
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import equiangular_window
from .errors import InvalidBetaError, InvalidDeltaError, InvalidDimsError

_LN2 = math.log(2.0)


def _exp(x: float) -> float:
    # math.exp raises on overflow; an astronomically large bound is
    # honestly reported as inf (and is vacuous either way)
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _logaddexp(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    if math.isinf(a):
        return a
    return a + math.log1p(math.exp(b - a))


def _check_positive_int(value: int, name: str) -> int:
    n = int(value)
    if n < 1:
        raise InvalidDimsError(f"{name} must be a positive integer, got {value}")
    return n


def _check_delta_positive(delta: float) -> float:
    d = float(delta)
    if not d > 0.0:
        raise InvalidDeltaError(f"delta must be positive, got {delta}")
    return d


def _check_delta_unit(delta: float) -> float:
    d = float(delta)
    if not 0.0 < d < 1.0:
        raise InvalidDeltaError(f"delta must lie in (0, 1), got {delta}")
    return d


def _check_subspace_dims(s: int, n: int) -> tuple[int, int]:
    s = _check_positive_int(s, "s")
    n = _check_positive_int(n, "n")
    if s > n:
        raise InvalidDimsError(f"need s <= n, got s={s}, n={n}")
    return s, n


def _tail_upper_exponent(n: int, delta: float) -> float:
    return n * (-delta * delta / 4.0 + delta**3 / 6.0)


def _tail_lower_exponent(n: int, delta: float) -> float:
    return n * (-delta * delta / 4.0 + delta**3 / 3.0)


def _log_net(s: int, delta: float) -> float:
    return s * math.log1p(4.0 / delta)


def chi2_upper_tail(n: int, delta: float) -> float:
    """Bound on ``P(chi2_n / n >= 1 + delta)``: ``exp(n*(-d^2/4 + d^3/6))``."""
    n = _check_positive_int(n, "n")
    delta = _check_delta_positive(delta)
    return _exp(_tail_upper_exponent(n, delta))


def chi2_lower_tail(n: int, delta: float) -> float:
    """Bound on ``P(chi2_n / n <= 1/(1+delta))``: ``exp(n*(-d^2/4 + d^3/3))``.

    The lower tail carries the weaker cubic term, so this bound is never
    smaller than :func:`chi2_upper_tail` at the same arguments.
    """
    n = _check_positive_int(n, "n")
    delta = _check_delta_positive(delta)
    return _exp(_tail_lower_exponent(n, delta))


def column_norms_bound(n: int, m: int, delta: float) -> float:
    """Union bound ``2*m*exp(n*(-d^2/4 + d^3/3))`` for m squared norms of
    n-dimensional standard Gaussians each staying within factor ``1+delta``."""
    n = _check_positive_int(n, "n")
    m = _check_positive_int(m, "m")
    delta = _check_delta_positive(delta)
    return _exp(_LN2 + math.log(m) + _tail_lower_exponent(n, delta))


def net_cardinality(s: int, delta: float) -> float:
    """Size bound ``(1 + 4/delta)**s`` of a ``delta/2`` net of the unit
    sphere of an s-dimensional space."""
    s = _check_positive_int(s, "s")
    delta = _check_delta_positive(delta)
    return _exp(_log_net(s, delta))


def riesz_subset_failure(s: int, n: int, delta: float) -> float:
    """Probability bound that ``s`` Gaussian rows in R^n are not a
    ``(1+delta)**3``-stable basis: ``2*(1+4/d)**s * exp(n*(-d^2/4+d^3/3))``."""
    s, n = _check_subspace_dims(s, n)
    delta = _check_delta_unit(delta)
    return _exp(_LN2 + _log_net(s, delta) + _tail_lower_exponent(n, delta))


def riesz_partition_failure(k: int, s: int, n: int, delta: float) -> float:
    """Union of :func:`riesz_subset_failure` over ``k`` disjoint blocks."""
    k = _check_positive_int(k, "k")
    return k * riesz_subset_failure(s, n, delta)


def gaussian_frame_failure(n: int, m: int, delta: float) -> float:
    """Probability bound that an ``m x n`` Gaussian matrix misses the frame
    bound window: ``2*(1+4/d)**n * exp(m*(-d^2/4+d^3/3))``."""
    n = _check_positive_int(n, "n")
    m = _check_positive_int(m, "m")
    delta = _check_delta_unit(delta)
    return _exp(_LN2 + _log_net(n, delta) + _tail_lower_exponent(m, delta))


def delta_to_epsilon_tight(delta: float) -> float:
    """Tightness tolerance ``(1+delta)**6 - 1`` implied by row tolerance delta."""
    delta = _check_delta_positive(delta)
    return (1.0 + delta) ** 6 - 1.0


def delta_to_epsilon_angle(delta: float) -> float:
    """Angle tolerance ``(1+delta)**3 - 1`` implied by row tolerance delta."""
    delta = _check_delta_positive(delta)
    return (1.0 + delta) ** 3 - 1.0


@dataclass(frozen=True)
class TightnessBound:
    """Failure bound for near-tightness of a partitioned Gaussian family.

    With probability at least ``1 - total``, all frame operator
    eigenvalues fall in ``[frame_lower, frame_upper]`` and the measured
    ``epsilon_tight`` stays below ``epsilon_bound = (1+delta)**6 - 1``.
    """

    total: float
    frame_lower: float
    frame_upper: float
    epsilon_bound: float


def tightness_failure(n: int, k: int, s: int, delta: float) -> TightnessBound:
    """Combine frame and block-basis failures for K blocks of s rows in R^n.

    ``total`` is exactly ``gaussian_frame_failure(n, k*s, delta) +
    riesz_partition_failure(k, s, n, delta)``.
    """
    s, n = _check_subspace_dims(s, n)
    k = _check_positive_int(k, "k")
    delta = _check_delta_unit(delta)
    m = k * s
    total = gaussian_frame_failure(n, m, delta) + riesz_partition_failure(k, s, n, delta)
    growth = (1.0 + delta) ** 6
    return TightnessBound(
        total=total,
        frame_lower=m / (n * growth),
        frame_upper=m * growth / n,
        epsilon_bound=growth - 1.0,
    )


def beta_lower_tail(s: int, beta: float) -> float:
    """Bound on ``P(lam_min(G_s) <= beta)`` for the normalized Gram spectrum:
    ``exp(s*(s-1)*log(beta)/2 + s/2 + (1-beta)*s**2/(2*beta))``, 0 < beta < 1."""
    s = _check_positive_int(s, "s")
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise InvalidBetaError(f"the lower tail needs 0 < beta < 1, got {beta}")
    exponent = s * (s - 1) * math.log(beta) / 2.0 + s / 2.0
    exponent += (1.0 - beta) * s * s / (2.0 * beta)
    return _exp(exponent)


def beta_upper_tail(s: int, beta: float) -> float:
    """Bound on ``P(lam_max(G_s) >= beta)`` for the normalized Gram spectrum:
    ``exp(s*(s-1)*log(beta)/2 + s/2 + (1-beta)*s**2/2)``, beta > 1."""
    s = _check_positive_int(s, "s")
    beta = float(beta)
    if not beta > 1.0:
        raise InvalidBetaError(f"the upper tail needs beta > 1, got {beta}")
    exponent = s * (s - 1) * math.log(beta) / 2.0 + s / 2.0
    exponent += (1.0 - beta) * s * s / 2.0
    return _exp(exponent)


def ratio_two_sided(s: int, delta: float) -> float:
    """Single-exponent form covering both Gram spectrum tails at ratio
    ``1+delta``: ``exp((1+d)*s/2 - s*(s-1)*(d^2/2 - d^3/3)/2)``."""
    s = _check_positive_int(s, "s")
    delta = _check_delta_unit(delta)
    exponent = (1.0 + delta) * s / 2.0
    exponent -= s * (s - 1) * (delta * delta / 2.0 - delta**3 / 3.0) / 2.0
    return _exp(exponent)


def proj_mass_failure(s: int, delta: float) -> float:
    """Bound ``2*s*ratio_two_sided(s, delta)`` on a projected Gaussian mass
    deviating by more than factor ``(1+delta)**3`` from its mean."""
    s = _check_positive_int(s, "s")
    return 2.0 * s * ratio_two_sided(s, delta)


@dataclass(frozen=True)
class PairBound:
    """Failure bound for one pair angle, split into its two sources.

    ``r1`` covers the projected-mass deviation, ``r2`` the conditioning
    of the sampled bases; ``window`` is the normalized pair-value range
    guaranteed with probability ``1 - total``.
    """

    r1: float
    r2: float
    window: tuple[float, float]

    @property
    def total(self) -> float:
        return self.r1 + self.r2


def pair_failure(n: int, k: int, s: int, delta: float) -> PairBound:
    """Failure bound for a single pair of a K-block Gaussian family in R^n."""
    s, n = _check_subspace_dims(s, n)
    k = _check_positive_int(k, "k")
    if k < 2:
        raise InvalidDimsError(f"a pair needs k >= 2, got k={k}")
    delta = _check_delta_unit(delta)
    m = k * s
    if n > m:
        raise InvalidDimsError(f"need n <= k*s for pair bounds, got n={n}, k*s={m}")
    r1 = proj_mass_failure(s, delta)
    log_mix = _logaddexp(math.log(m), math.log(k) + _log_net(s, delta))
    term1 = _exp(_LN2 + log_mix + _tail_lower_exponent(n, delta))
    term2 = _exp(_LN2 + _log_net(n, delta) + _tail_lower_exponent(m, delta))
    window = equiangular_window(delta_to_epsilon_angle(delta), n, s)
    return PairBound(r1=r1, r2=term1 + term2, window=window)


def all_pairs_failure(n: int, k: int, s: int, delta: float) -> float:
    """Union of :func:`pair_failure` over all ``k*(k-1)/2`` unordered pairs."""
    bound = pair_failure(n, k, s, delta)
    return bound.total * (k * (k - 1) / 2.0)


@dataclass(frozen=True)
class RegimeCheck:
    """Asymptotic applicability conditions at fixed delta.

    ``ok_logcount`` tests ``3*log(k+1)/n + (s/n)*log(1+4/delta) < rhs``
    (many subspaces, ambient dimension outgrowing ``log k``); while
    ``ok_aspect`` tests ``(n/(k*s))*log(1+4/delta) < rhs`` (total rows
    outgrowing the ambient dimension).  ``rhs = delta^2/4 - delta^3/3``.
    """

    rhs: float
    lhs_logcount: float
    lhs_aspect: float
    ok_logcount: bool
    ok_aspect: bool


def asymptotic_regime(n: int, k: int, s: int, delta: float) -> RegimeCheck:
    """Evaluate both asymptotic conditions; needs ``delta < 3/4``."""
    s, n = _check_subspace_dims(s, n)
    k = _check_positive_int(k, "k")
    delta = _check_delta_unit(delta)
    rhs = delta * delta / 4.0 - delta**3 / 3.0
    if rhs <= 0.0:
        raise InvalidDeltaError(
            f"the exponent rate {rhs:.3e} is not positive; needs delta < 0.75"
        )
    lhs_logcount = 3.0 * math.log(k + 1.0) / n + (s / n) * math.log1p(4.0 / delta)
    lhs_aspect = (n / (k * s)) * math.log1p(4.0 / delta)
    return RegimeCheck(
        rhs=rhs,
        lhs_logcount=lhs_logcount,
        lhs_aspect=lhs_aspect,
        ok_logcount=lhs_logcount < rhs,
        ok_aspect=lhs_aspect < rhs,
    )


def is_vacuous(value: float) -> bool:
    """A probability bound carries information only below 1."""
    return not (value < 1.0)


@dataclass(frozen=True)
class BoundSet:
    """Every closed-form bound evaluated at one parameter point.

    The beta tails are specialized to the two ratios that the two-sided
    form combines: ``beta = 1/(1+delta)`` for the lower tail and
    ``beta = 1+delta`` for the upper.
    """

    dim: int
    subspace_dim: int
    count: int
    rows: int
    delta: float
    chi2_upper: float
    chi2_lower: float
    column_norms: float
    net_points: float
    riesz_subset: float
    riesz_partition: float
    gaussian_frame: float
    tightness: TightnessBound
    beta_lower: float
    beta_upper: float
    ratio_bound: float
    proj_mass: float
    pair: PairBound
    all_pairs: float
    regime: RegimeCheck | None

    def vacuity(self) -> dict[str, bool]:
        """Which probability bounds are vacuous (>= 1) at this point."""
        return {
            "chi2_upper": is_vacuous(self.chi2_upper),
            "chi2_lower": is_vacuous(self.chi2_lower),
            "column_norms": is_vacuous(self.column_norms),
            "riesz_subset": is_vacuous(self.riesz_subset),
            "riesz_partition": is_vacuous(self.riesz_partition),
            "gaussian_frame": is_vacuous(self.gaussian_frame),
            "tightness_total": is_vacuous(self.tightness.total),
            "beta_lower": is_vacuous(self.beta_lower),
            "beta_upper": is_vacuous(self.beta_upper),
            "ratio_bound": is_vacuous(self.ratio_bound),
            "proj_mass": is_vacuous(self.proj_mass),
            "pair_total": is_vacuous(self.pair.total),
            "all_pairs": is_vacuous(self.all_pairs),
        }


def evaluate_bounds(
    n: int, s: int, k: int, delta: float, m: int | None = None
) -> BoundSet:
    """Evaluate the complete bound family at ``(n, s, k, delta)``.

    ``m`` may be passed for explicitness but must equal ``k*s``; the
    partitioned constructions have no other row count.  Requires
    ``k >= 2`` and ``s <= n <= k*s`` so that every member of the family
    is defined.  The regime check is ``None`` for ``delta >= 0.75``
    where its exponent rate is not positive.
    """
    s, n = _check_subspace_dims(s, n)
    k = _check_positive_int(k, "k")
    if k < 2:
        raise InvalidDimsError(f"the bound set needs k >= 2, got k={k}")
    delta = _check_delta_unit(delta)
    if m is None:
        m = k * s
    elif int(m) != k * s:
        raise InvalidDimsError(f"rows must equal k*s = {k * s}, got {m}")
    if n > m:
        raise InvalidDimsError(f"need n <= k*s, got n={n}, k*s={m}")
    try:
        regime = asymptotic_regime(n, k, s, delta)
    except InvalidDeltaError:
        regime = None
    return BoundSet(
        dim=n,
        subspace_dim=s,
        count=k,
        rows=m,
        delta=delta,
        chi2_upper=chi2_upper_tail(n, delta),
        chi2_lower=chi2_lower_tail(n, delta),
        column_norms=column_norms_bound(n, m, delta),
        net_points=net_cardinality(s, delta),
        riesz_subset=riesz_subset_failure(s, n, delta),
        riesz_partition=riesz_partition_failure(k, s, n, delta),
        gaussian_frame=gaussian_frame_failure(n, m, delta),
        tightness=tightness_failure(n, k, s, delta),
        beta_lower=beta_lower_tail(s, 1.0 / (1.0 + delta)),
        beta_upper=beta_upper_tail(s, 1.0 + delta),
        ratio_bound=ratio_two_sided(s, delta),
        proj_mass=proj_mass_failure(s, delta),
        pair=pair_failure(n, k, s, delta),
        all_pairs=all_pairs_failure(n, k, s, delta),
        regime=regime,
    )
