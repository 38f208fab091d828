"""Key-rate assembly and the searches built on it.

All six attacked rate formulas (three attack kinds, two source models)
share one shape:

    rate = q1 * privacy_factor - q_x * f_ec * h(e_x)

where q1 is the single-photon gain credited with privacy amplification,
q_x and e_x are the observed detection rate and QBER paying the
error-correction cost, and the privacy factor encodes how the attack
inflates the phase error.  The no-attack baseline is the same expression
with the uninflated phase error, so an attack evaluated at mu_out = 0
reproduces it bit for bit.
"""

import math
from dataclasses import dataclass

from thabound import attacks
from thabound.attacks import AttackModel
from thabound.channel import (
    ChannelParams,
    LinkObservables,
    SINGLE_PHOTON,
    SourceModel,
    decoy_link,
    single_photon_link,
)
from thabound.numerics import binary_entropy

# Rates below this are reported as zero (and flagged insecure); they are
# beyond physical relevance and keep log-scale plots finite.
RATE_FLOOR = 1e-12

# Fixed search constants, so CLI output is reproducible.
MU_BRACKET_HI = 2.0
MU_REL_TOL = 1e-3
LENGTH_BRACKET_KM = 500.0
LENGTH_TOL_KM = 0.1

CONVEXITY_SLACK = 1e-12


class NoPositiveRateError(ValueError):
    """A search precondition failed: no key even at the easy bracket end."""


@dataclass(frozen=True)
class RateQuery:
    channel: ChannelParams
    source: SourceModel
    attack: AttackModel
    length_km: float

    def __post_init__(self) -> None:
        if self.length_km < 0.0:
            raise ValueError("length_km must be >= 0")


@dataclass(frozen=True)
class RatePoint:
    length_km: float
    rate: float
    secure: bool


@dataclass(frozen=True)
class RateSeries:
    points: tuple[RatePoint, ...]

    def __post_init__(self) -> None:
        for prev, cur in zip(self.points, self.points[1:]):
            if not cur.length_km > prev.length_km:
                raise ValueError("lengths must be strictly increasing")
        for pt in self.points:
            if not pt.secure and pt.rate != 0.0:
                raise ValueError("insecure points must carry rate 0")


def _observables(channel: ChannelParams, source: SourceModel,
                 length_km: float) -> LinkObservables:
    if source.kind == SINGLE_PHOTON:
        return single_photon_link(channel, length_km)
    return decoy_link(channel, length_km, source.s)


def _privacy_factor(obs: LinkObservables, attack: AttackModel) -> float | None:
    """Per-detection privacy term, or None when the bound is vacuous."""
    if attack.kind == attacks.NO_ATTACK:
        return 1.0 - binary_entropy(obs.e1)
    if attack.kind == attacks.GENERAL:
        delta_eff = attacks.effective_imbalance(
            attacks.coin_imbalance(attack.mu_out), obs.y1)
        e_phase = attacks.phase_error_general(obs.e1, delta_eff)
        if e_phase is None:
            return None
        return 1.0 - binary_entropy(e_phase)
    if attack.kind == attacks.PASSIVE:
        e_phase = attacks.phase_error_passive(obs.e1, attack.mu_out)
        return 1.0 - binary_entropy(e_phase)
    if attack.kind == attacks.USD:
        conclusive = attacks.usd_conclusive_fraction(attack.mu_out, obs.y1)
        if conclusive is None:
            return None
        e_phase = attacks.phase_error_passive(obs.e1, attack.mu_out)
        ratio = min(0.5, e_phase / (1.0 - conclusive))
        return (1.0 - conclusive) * (1.0 - binary_entropy(ratio))
    raise ValueError(f"unknown attack kind {attack.kind!r}")


def key_rate(query: RateQuery) -> float:
    """Secure key rate in bits per pulse; never negative."""
    obs = _observables(query.channel, query.source, query.length_km)
    if obs.q1 == 0.0 and obs.q_x == 0.0:
        return 0.0
    privacy = _privacy_factor(obs, query.attack)
    if privacy is None:
        return 0.0
    rate = (obs.q1 * privacy
            - obs.q_x * query.channel.f_ec * binary_entropy(obs.e_x))
    return max(0.0, rate)


def rate_at(channel: ChannelParams, source: SourceModel, attack: AttackModel,
            length_km: float) -> float:
    """Convenience wrapper building the RateQuery in place."""
    return key_rate(RateQuery(channel, source, attack, length_km))


def sweep_distance(channel: ChannelParams, source: SourceModel,
                   attack: AttackModel, l_min: float, l_max: float,
                   step: float) -> RateSeries:
    """Evaluate key_rate on the inclusive grid l_min, l_min+step, ... l_max.

    Rates below RATE_FLOOR are reported as 0 with secure=False.
    """
    if step <= 0.0 or not l_min < l_max or l_min < 0.0:
        raise ValueError("empty sweep grid")
    count = int(math.floor((l_max - l_min) / step + 1e-9))
    points = []
    for i in range(count + 1):
        length = l_min + i * step
        rate = rate_at(channel, source, attack, length)
        if rate < RATE_FLOOR:
            points.append(RatePoint(length, 0.0, False))
        else:
            points.append(RatePoint(length, rate, True))
    return RateSeries(tuple(points))


def mu_out_threshold(channel: ChannelParams, source: SourceModel,
                     attack_kind: str) -> float:
    """Largest mu_out with a positive rate at zero distance.

    Rates are monotone nonincreasing in distance, so the supremum over all
    distances is attained at L = 0; the search therefore runs there.
    Bisection on [0, MU_BRACKET_HI] to relative tolerance MU_REL_TOL.
    """
    if attack_kind == attacks.NO_ATTACK:
        raise ValueError("threshold search needs an attack kind")

    def rate_of(mu: float) -> float:
        return rate_at(channel, source, AttackModel(attack_kind, mu), 0.0)

    if rate_of(0.0) <= 0.0:
        raise NoPositiveRateError("channel yields no key even without leakage")
    lo, hi = 0.0, MU_BRACKET_HI
    if rate_of(hi) > 0.0:
        return hi
    while hi - lo > max(MU_REL_TOL * hi, 1e-15):
        mid = 0.5 * (lo + hi)
        if rate_of(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def max_distance(channel: ChannelParams, source: SourceModel,
                 attack: AttackModel) -> float:
    """Largest distance with a positive rate, to LENGTH_TOL_KM.

    Bisection on [0, LENGTH_BRACKET_KM]; raises NoPositiveRateError when
    there is no key even at zero distance.
    """
    def rate_of(length: float) -> float:
        return rate_at(channel, source, attack, length)

    if rate_of(0.0) <= 0.0:
        raise NoPositiveRateError("no key at zero distance")
    lo, hi = 0.0, LENGTH_BRACKET_KM
    if rate_of(hi) > 0.0:
        return hi
    while hi - lo > LENGTH_TOL_KM:
        mid = 0.5 * (lo + hi)
        if rate_of(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def verify_convexity(channel: ChannelParams, source: SourceModel,
                     attack_kind: str, length_km: float, mu1: float,
                     mu2: float) -> bool:
    """Midpoint convexity of the rate in mu_out.

    True iff rate((mu1+mu2)/2) <= [rate(mu1) + rate(mu2)] / 2 up to a small
    slack.  Convexity is what makes a constant-intensity probe optimal for
    the eavesdropper: splitting the same mean photon number unevenly across
    pulses never hurts her.
    """
    if mu1 < 0.0 or mu2 < 0.0:
        raise ValueError("mu values must be >= 0")
    if attack_kind == attacks.NO_ATTACK:
        if mu1 != 0.0 or mu2 != 0.0:
            raise ValueError("kind 'none' only admits mu = 0")
        return True

    def rate_of(mu: float) -> float:
        return rate_at(channel, source, AttackModel(attack_kind, mu), length_km)

    midpoint = rate_of(0.5 * (mu1 + mu2))
    average = 0.5 * (rate_of(mu1) + rate_of(mu2))
    return midpoint <= average + CONVEXITY_SLACK
