"""Leakage-dependent quantities of each attack model.

The central parameter everywhere is mu_out, the mean photon number of the
probe light an eavesdropper recovers from the transmitter per pulse.  From
it this module derives the basis-dependence imbalance of the emitted
states, its yield-renormalized form, the inflated phase-error rates of the
three attack models, and the conclusive fraction of an intercept-resend
strategy built on unambiguous state discrimination (USD).

Functions that can leave the validity domain of the underlying bound
(renormalized imbalance at or above 1/2, conclusive fraction at or above 1)
return ``None`` as an "insecure" sentinel instead of a number; the key-rate
engine maps that to a zero rate.
"""

import math
from dataclasses import dataclass

NO_ATTACK = "none"
GENERAL = "general"
PASSIVE = "passive"
USD = "usd"
ATTACK_KINDS = (NO_ATTACK, GENERAL, PASSIVE, USD)


@dataclass(frozen=True)
class AttackModel:
    """An attack kind plus the leakage mu_out it is evaluated at.

    Kind ``none`` requires mu_out == 0.  The attack kinds accept any
    mu_out >= 0; with mu_out = 0 they coincide with no attack.
    """

    kind: str
    mu_out: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ATTACK_KINDS:
            raise ValueError(f"unknown attack kind {self.kind!r}")
        if self.mu_out < 0.0:
            raise ValueError("mu_out must be >= 0")
        if self.kind == NO_ATTACK and self.mu_out != 0.0:
            raise ValueError("kind 'none' requires mu_out = 0")


def no_attack() -> AttackModel:
    return AttackModel(NO_ATTACK, 0.0)


def general_tha(mu_out: float) -> AttackModel:
    return AttackModel(GENERAL, mu_out)


def passive_tha(mu_out: float) -> AttackModel:
    return AttackModel(PASSIVE, mu_out)


def usd_tha(mu_out: float) -> AttackModel:
    return AttackModel(USD, mu_out)


def coin_imbalance(mu_out: float) -> float:
    """Basis-dependence imbalance Delta = [1 - exp(-mu) cos(mu)] / 2.

    Computed as [2 sin^2(mu/2) - expm1(-mu) cos(mu)] / 2, the same value
    without the 1 - (1 - x) cancellation, so tiny mu_out keeps full
    precision (Delta ~ mu_out / 2 there).
    """
    if mu_out < 0.0:
        raise ValueError("mu_out must be >= 0")
    half_sin = math.sin(0.5 * mu_out)
    return 0.5 * (2.0 * half_sin * half_sin
                  - math.expm1(-mu_out) * math.cos(mu_out))


def effective_imbalance(delta: float, yield_min: float) -> float | None:
    """Imbalance renormalized by the minimum yield: Delta' = Delta / yield.

    Returns None (insecure) once Delta' reaches 1/2, where the phase-error
    bound becomes vacuous.  Raises if there are no detections at all.
    """
    if yield_min <= 0.0:
        raise ValueError("no detections; rate undefined")
    delta_eff = delta / yield_min
    if delta_eff >= 0.5:
        return None
    return delta_eff


def phase_error_general(e_y: float, delta_eff: float | None) -> float | None:
    """Phase error inflated by a general attack, from the Bloch-sphere bound.

    e' = e + 4 d (1-d) (1-2e) + 4 (1-2d) sqrt(d (1-d) e (1-e)) with
    d = delta_eff, clamped to 1/2 (larger values carry no extra penalty).
    ``None`` propagates and is returned for delta_eff >= 1/2.
    """
    if delta_eff is None or delta_eff >= 0.5:
        return None
    d = delta_eff
    inflated = (e_y
                + 4.0 * d * (1.0 - d) * (1.0 - 2.0 * e_y)
                + 4.0 * (1.0 - 2.0 * d)
                * math.sqrt(d * (1.0 - d) * e_y * (1.0 - e_y)))
    return min(0.5, inflated)


def phase_error_passive(e_y: float, mu_out: float) -> float:
    """Phase error under a passive attack: e' = [1 - (1-2e) exp(-2 mu)] / 2.

    The honest-channel correlation coefficient entering the bound is
    1 - 2 e_y, which makes e' = e_y exact at mu_out = 0.
    """
    if mu_out < 0.0:
        raise ValueError("mu_out must be >= 0")
    if mu_out == 0.0:
        return e_y
    return 0.5 * (1.0 - (1.0 - 2.0 * e_y) * math.exp(-2.0 * mu_out))


def usd_conclusive_fraction(mu_out: float, yield_min: float) -> float | None:
    """Fraction of detected events Eve resolves unambiguously.

    delta = (1 - exp(-2 mu_out)) / yield, from the Ivanovic-Dieks-Peres
    bound on discriminating the probe states, renormalized by the minimum
    yield.  Returns None (insecure) once delta reaches 1.
    """
    if yield_min <= 0.0:
        raise ValueError("no detections; rate undefined")
    delta = -math.expm1(-2.0 * mu_out) / yield_min
    if delta >= 1.0:
        return None
    return delta
