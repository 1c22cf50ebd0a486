"""Rate chain through the untrusted amplify-and-forward relay.

The relay can decode what it forwards, so it doubles as an eavesdropper:
its decodable capacity C_u is subtracted from the destination capacity C_b
to form the secrecy rate C_s = C_b - C_u.  The covert rate objective R_b
equals C_b.  The destination sees the source symbol through the relay's
unit-power scaling, with the relay noise re-amplified and the receiver's
own jamming cancelled (full-duplex self-interference cancellation).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .model import Scenario, relay_scaling


@dataclass(frozen=True)
class AuxCoefficients:
    """Coefficients of the destination-SNR denominator polynomial in h^2.

    den = sigma_b^2 phi_1 + (q + sigma_b^2 phi_2) h^2 + p + sigma_b^2 sigma_u^2 h^4
    """

    phi_1: float
    phi_2: float
    p: float
    q: float


@dataclass(frozen=True)
class RateReport:
    """SNRs and capacities for one scenario; c_s and r_b are derived."""

    gamma_u: float
    gamma_b: float
    c_u: float
    c_b: float
    c_s: float = field(init=False)
    r_b: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_s", self.c_b - self.c_u)
        object.__setattr__(self, "r_b", self.c_b)


def capacity(snr: float) -> float:
    """Shannon capacity log2(1 + snr), bits per channel use."""
    return math.log2(1.0 + snr)


def snr_relay(scenario: Scenario) -> float:
    """SNR of the source signal as decodable by the (eavesdropping) relay.

    gamma_u = P_a |h_ua|^2 / (P_J |h_ub|^2 + sigma_u^2), per-link LOS gains.
    """
    s = scenario
    return s.p_a * s.gain_ua2() / (s.p_j * s.gain_ub2() + s.sigma_u2)


def snr_destination(scenario: Scenario) -> float:
    """End-to-end SNR at the receiver through the relay.

    gamma_b = P_u P_a |h_ub|^2 |h_ua|^2 /
        ((P_u sigma_u^2 + P_J sigma_b^2) |h_ub|^2
         + P_a |h_ua|^2 sigma_b^2 + sigma_b^2 sigma_u^2)

    which is the post-cancellation signal-to-noise ratio after dividing
    out the relay scaling G.
    """
    s = scenario
    g_ua, g_ub = s.gain_ua2(), s.gain_ub2()
    num = s.p_u * s.p_a * g_ub * g_ua
    den = ((s.p_u * s.sigma_u2 + s.p_j * s.sigma_b2) * g_ub
           + s.p_a * g_ua * s.sigma_b2 + s.sigma_b2 * s.sigma_u2)
    return num / den


def aux_coefficients(scenario: Scenario) -> AuxCoefficients:
    """Expand the per-link denominator of :func:`snr_destination` in h^2.

    phi_1 = P_J beta d_a^2 + sigma_u^2 d_a^2 d_b^2
    phi_2 = P_J beta + sigma_u^2 (d_a^2 + d_b^2)
    p     = P_u sigma_u^2 d_a^2 beta + P_a sigma_b^2 d_b^2 beta
    q     = P_u sigma_u^2 beta + P_a sigma_b^2 beta
    """
    s = scenario
    return AuxCoefficients(
        phi_1=s.p_j * s.beta * s.d_a2 + s.sigma_u2 * s.d_a2 * s.d_b2,
        phi_2=s.p_j * s.beta + s.sigma_u2 * (s.d_a2 + s.d_b2),
        p=s.p_u * s.sigma_u2 * s.d_a2 * s.beta + s.p_a * s.sigma_b2 * s.d_b2 * s.beta,
        q=s.p_u * s.sigma_u2 * s.beta + s.p_a * s.sigma_b2 * s.beta,
    )


def snr_destination_expanded(scenario: Scenario,
                             coefficients: AuxCoefficients | None = None) -> float:
    """Destination SNR via the h-polynomial denominator form.

    gamma_b = P_u P_a beta^2 /
        (sigma_b^2 phi_1 + sigma_b^2 h^2 phi_2 + h^2 q + p
         + sigma_b^2 sigma_u^2 h^4)

    Algebraically identical to :func:`snr_destination` with the default
    coefficients; an explicit ``coefficients`` argument lets diagnostics
    probe variant coefficient sets.
    """
    s = scenario
    c = coefficients if coefficients is not None else aux_coefficients(s)
    h2 = s.h * s.h
    den = (s.sigma_b2 * c.phi_1 + s.sigma_b2 * h2 * c.phi_2
           + h2 * c.q + c.p + s.sigma_b2 * s.sigma_u2 * h2 * h2)
    return s.p_u * s.p_a * s.beta * s.beta / den


def rate_report(scenario: Scenario) -> RateReport:
    """Evaluate the full rate chain for one scenario."""
    g_u = snr_relay(scenario)
    g_b = snr_destination(scenario)
    return RateReport(gamma_u=g_u, gamma_b=g_b,
                      c_u=capacity(g_u), c_b=capacity(g_b))


@dataclass(frozen=True)
class DestinationSnrEstimate:
    """Signal-level Monte Carlo summary of the relay chain."""

    snr: float
    forwarded_power: float  # mean |x_u|^2, should be 1 by the scaling choice
    signal_power: float
    noise_power: float


def _complex_normal(rng: np.random.Generator, variance: float, n: int) -> np.ndarray:
    scale = math.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def simulate_destination_snr(scenario: Scenario, n_symbols: int,
                             seed) -> DestinationSnrEstimate:
    """Estimate the destination SNR by pushing symbols through the chain.

    Draws source, jamming, and noise symbols; forms the relay's received
    waveform; scales it by G; and splits the receiver's observation into
    its source-signal and noise components (the receiver's own jamming is
    cancelled).  Independent of the closed forms, so it serves as their
    oracle.
    """
    if not isinstance(n_symbols, (int, np.integer)) or n_symbols < 1:
        raise ConfigError(f"n_symbols must be a positive integer, got {n_symbols!r}")
    s = scenario
    n = int(n_symbols)
    rng = np.random.default_rng(seed)

    x_a = _complex_normal(rng, 1.0, n)
    x_j = _complex_normal(rng, 1.0, n)
    n_u = _complex_normal(rng, s.sigma_u2, n)
    n_b = _complex_normal(rng, s.sigma_b2, n)

    amp_ua = math.sqrt(s.p_a * s.gain_ua2())
    amp_jam = math.sqrt(s.p_j * s.gain_ub2())
    y_u = amp_ua * x_a + amp_jam * x_j + n_u

    g = relay_scaling(s.p_a, s.p_j, s.gain_ua2(), s.gain_ub2(), s.sigma_u2)
    x_u = g * y_u
    forwarded_power = float(np.mean(np.abs(x_u) ** 2))

    amp_ub = math.sqrt(s.p_u * s.gain_ub2())
    signal = amp_ub * g * amp_ua * x_a
    noise = amp_ub * g * n_u + n_b

    signal_power = float(np.mean(np.abs(signal) ** 2))
    noise_power = float(np.mean(np.abs(noise) ** 2))
    return DestinationSnrEstimate(
        snr=signal_power / noise_power,
        forwarded_power=forwarded_power,
        signal_power=signal_power,
        noise_power=noise_power,
    )
