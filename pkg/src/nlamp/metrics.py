"""Figures of merit for amplified states.

Every metric has a definitional implementation on Fock vectors
(fidelity as squared overlap, gain as a quadrature-mean ratio, EIN from
quadrature variances, Fisher information as four times the photon
number variance).  Closed-form expressions for coherent inputs are kept
alongside as fast cross-checks; whenever the two disagree the numeric
path is authoritative (see the verify module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .amplifier import (
    ONE_CYCLE,
    TWO_CYCLE,
    OperatorSeq,
    amplify,
    analytic_norm,
    get_seq,
)
from .errors import (
    NoClosedForm,
    NotNormalized,
    ParityMismatch,
    SingularQuadrature,
    ZeroFisher,
)
from .fock import FockVector, StateSpec, ladder_expectations, make_state
from .optimize import Bracket, maximize_scalar, parabolic_polish

TARGET_FAMILIES = ("coherent", "scs_even", "scs_odd")

# Simpson rule node count for the phase average (design choice: 181
# nodes on [0, pi]; doubling must not move the result by more than 1e-9).
EIN_AVG_NODES = 181


@dataclass(frozen=True)
class MetricRecord:
    """One sweep row for a coherent-input amplification."""

    seq: str
    alpha_i: float
    f_max: float
    alpha_f_opt: float
    gain: float
    ein_0: float
    ein_avg: float
    fisher: float
    dphi: float | None

    def __post_init__(self):
        if not -1e-9 <= self.f_max <= 1.0 + 1e-9:
            raise ValueError(f"fidelity {self.f_max} outside [0, 1]")
        if self.gain <= 0.0:
            raise ValueError("gain must be positive")


def fidelity(psi: FockVector, phi: FockVector) -> float:
    """|<phi|psi>|^2 for two normalized states."""
    for v in (psi, phi):
        if not v.normalized:
            raise NotNormalized("fidelity requires unit-norm states")
    f = abs(fock.inner(phi, psi)) ** 2
    return min(f, 1.0)


def _spec_parity(spec: StateSpec) -> int | None:
    """0 (even), 1 (odd) or None for states without definite parity."""
    if spec.kind in ("scs_even", "squeezed_vacuum"):
        return 0
    if spec.kind in ("scs_odd", "squeezed_one"):
        return 1
    if spec.kind == "number":
        return spec.n % 2
    return None


def _target_spec(family: str, alpha_f: float) -> StateSpec:
    if family == "coherent":
        return fock.coherent(alpha_f)
    return fock.scs(family.removeprefix("scs_"), alpha_f)


def max_fidelity(
    seq: OperatorSeq | str,
    input_spec: StateSpec,
    target_family: str = "coherent",
) -> tuple[float, float]:
    """Maximize fidelity of the amplified input over the target amplitude.

    Returns (f_max, alpha_f_opt).  Raises ParityMismatch when the
    amplified input has definite photon-number parity opposite to the
    target family, in which case the fidelity is identically zero.
    """
    seq = get_seq(seq)
    if target_family not in TARGET_FAMILIES:
        raise ValueError(f"unknown target family {target_family!r}")
    in_parity = _spec_parity(input_spec)
    if target_family != "coherent" and in_parity is not None:
        out_parity = (in_parity + len(seq)) % 2
        want = 0 if target_family == "scs_even" else 1
        if out_parity != want:
            raise ParityMismatch(
                f"{seq.name} maps the input to "
                f"{'odd' if out_parity else 'even'} parity; fidelity with "
                f"the {target_family} family is identically zero"
            )
    psi = make_state(input_spec, reserve=len(seq))
    amp, _ = amplify(seq, psi)
    alpha_i = abs(input_spec.alpha)
    lo = alpha_i if alpha_i > 0 else 0.0
    if target_family == "scs_odd" and lo == 0.0:
        lo = 1e-6
    hi = 6.0 * max(alpha_i, 1.0) + 3.0

    def objective(alpha_f: float) -> float:
        target = make_state(_target_spec(target_family, alpha_f))
        return fidelity(amp, target)

    x_opt, f_opt = maximize_scalar(objective, Bracket(lo, hi, tol_x=1e-8))
    # The objective is locally quadratic in alpha_f^2 but can be flatter
    # than double precision resolves around the argmax (small inputs);
    # one parabola fit in that variable sharpens the optimizer output.
    y = parabolic_polish(
        lambda s: objective(math.sqrt(s)),
        x_opt * x_opt,
        lo * lo,
        hi * hi,
        1e-6 * max(x_opt * x_opt, 1.0),
    )
    x_ref = math.sqrt(y)
    return max(f_opt, objective(x_ref)), x_ref


def gain_coherent(seq: OperatorSeq | str, alpha_i: float, lam: float = 0.0) -> float:
    """Quadrature-mean ratio |<x_lam>_out| / |<x_lam>_in|.

    Independent of lam wherever the denominator is nonzero; for a real
    input amplitude the mean vanishes at lam = pi/2 (mod pi), which
    raises SingularQuadrature.
    """
    if alpha_i <= 0.0:
        raise ValueError("gain ratio needs alpha_i > 0; use analytic_gain for limits")
    if abs(math.cos(lam)) < 1e-12:
        raise SingularQuadrature("quadrature mean vanishes at this phase")
    seq = get_seq(seq)
    psi = make_state(fock.coherent(alpha_i), reserve=len(seq))
    amp, _ = amplify(seq, psi)
    m_out, _ = fock.quadrature_moments(amp, lam)
    m_in, _ = fock.quadrature_moments(psi, lam)
    return abs(m_out) / abs(m_in)


def gain_scs(seq: OperatorSeq | str, parity: str, alpha_i: float) -> float:
    """Amplitude gain of a cat state: fidelity-optimal target over input."""
    if alpha_i <= 0.0:
        raise ValueError("gain ratio needs alpha_i > 0")
    _, alpha_f = max_fidelity(seq, fock.scs(parity, alpha_i), f"scs_{parity}")
    return alpha_f / alpha_i


class _EinProfile:
    """Per-phase EIN of one amplification, from a single state build."""

    def __init__(self, seq: OperatorSeq | str, alpha_i: float):
        seq = get_seq(seq)
        psi = make_state(fock.coherent(alpha_i), reserve=len(seq))
        amp, _ = amplify(seq, psi)
        self._out = ladder_expectations(amp)
        self._in = ladder_expectations(psi)
        if alpha_i > 0.0:
            m_out = math.sqrt(2.0) * self._out[0].real
            m_in = math.sqrt(2.0) * self._in[0].real
            self.gain = abs(m_out) / abs(m_in)
        else:
            # the ratio is singular at alpha_i = 0; closed-form limit
            self.gain = analytic_gain(seq, 0.0)

    @staticmethod
    def _variance(moments, lam: float) -> float:
        exp_a, exp_a2, nbar = moments
        phase = complex(math.cos(lam), -math.sin(lam))
        mean = math.sqrt(2.0) * (exp_a * phase).real
        return (exp_a2 * phase * phase).real + nbar + 0.5 - mean * mean

    def __call__(self, lam: float) -> float:
        var_out = self._variance(self._out, lam)
        var_in = self._variance(self._in, lam)
        return var_out / self.gain**2 - var_in


def ein(seq: OperatorSeq | str, alpha_i: float, lam: float = 0.0) -> float:
    """Equivalent input noise at quadrature phase lam.

    Var_out(x_lam)/g^2 - Var_in(x_lam); the gain is phase-independent
    for the states treated here, so its lam=0 value is used throughout
    (the mean ratio itself is singular at lam = pi/2).
    """
    return _EinProfile(seq, alpha_i)(lam)


def ein_avg(seq: OperatorSeq | str, alpha_i: float, nodes: int = EIN_AVG_NODES) -> float:
    """EIN averaged uniformly over lam in [0, pi), composite Simpson."""
    if nodes < 3 or nodes % 2 == 0:
        raise ValueError("Simpson rule needs an odd node count >= 3")
    profile = _EinProfile(seq, alpha_i)
    lams = np.linspace(0.0, math.pi, nodes)
    vals = np.array([profile(l) for l in lams])
    h = lams[1] - lams[0]
    weights = np.ones(nodes)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    integral = h / 3.0 * float(np.dot(weights, vals))
    return integral / math.pi


def fisher(psi: FockVector) -> float:
    """Quantum Fisher information for phase shifts: 4 Var(n)."""
    _, var = fock.photon_moments(psi)
    return 4.0 * var


def phase_uncertainty(psi: FockVector) -> float:
    """Cramer-Rao phase bound 1/sqrt(F)."""
    f = fisher(psi)
    if f <= 0.0:
        raise ZeroFisher("zero Fisher information (number eigenstate)")
    return 1.0 / math.sqrt(f)


def metric_record(seq: OperatorSeq | str, alpha_i: float) -> MetricRecord:
    """Assemble the full sweep row for one (sequence, amplitude) point."""
    seq = get_seq(seq)
    f_max, alpha_f_opt = max_fidelity(seq, fock.coherent(alpha_i))
    if alpha_i > 0.0:
        gain = gain_coherent(seq, alpha_i)
    else:
        gain = analytic_gain(seq, 0.0)
    profile = _EinProfile(seq, alpha_i)
    amp, _ = amplify(seq, make_state(fock.coherent(alpha_i), reserve=len(seq)))
    fish = fisher(amp)
    dphi = 1.0 / math.sqrt(fish) if fish > 0.0 else None
    return MetricRecord(
        seq=seq.name,
        alpha_i=alpha_i,
        f_max=f_max,
        alpha_f_opt=alpha_f_opt,
        gain=gain,
        ein_0=profile(0.0),
        ein_avg=ein_avg(seq, alpha_i),
        fisher=fish,
        dphi=dphi,
    )


# ----------------------------------------------------------------------
# Closed forms for coherent inputs (cross-checks; numerics are ground
# truth).  All are polynomials in alpha^2 divided by the squared
# normalization polynomial of the sequence.

_GAIN_POLY = {
    "identity": (1.0,),
    "add": (1.0, 2.0),
    "addsub": (1.0, 4.0, 2.0),
    "add2": (1.0, 6.0, 6.0),
    "addsub2": (1.0, 12.0, 38.0, 32.0, 4.0),
    "add4": (1.0, 20.0, 120.0, 240.0, 120.0),
    "addsub_add2": (1.0, 18.0, 96.0, 168.0, 72.0),
    "add2_addsub": (1.0, 14.0, 54.0, 60.0, 12.0),
}


def analytic_gain(seq: OperatorSeq | str, alpha_i: float) -> float:
    """Closed-form amplitude gain (phase-independent, defined at 0)."""
    seq = get_seq(seq)
    if seq.name not in _GAIN_POLY:
        raise NoClosedForm(f"no gain closed form for {seq.name}")
    num = float(np.polyval(_GAIN_POLY[seq.name], alpha_i * alpha_i))
    return num * analytic_norm(seq, alpha_i) ** 2


_FID_FORMS = {
    "addsub": lambda ai, af: (af * ai + 1.0) ** 2,
    "add2": lambda ai, af: af**4,
    "addsub2": lambda ai, af: (ai * ai * af * af + 3.0 * ai * af + 1.0) ** 2,
    "add4": lambda ai, af: af**8,
    "addsub_add2": lambda ai, af: af**4 * (ai * af + 3.0) ** 2,
    "add2_addsub": lambda ai, af: af**4 * (ai * af + 1.0) ** 2,
}


def analytic_fidelity(seq: OperatorSeq | str, alpha_i: float, alpha_f: float) -> float:
    """Closed-form fidelity of the amplified coherent state to |alpha_f>."""
    seq = get_seq(seq)
    if seq.name not in _FID_FORMS:
        raise NoClosedForm(f"no fidelity closed form for {seq.name}")
    n2 = analytic_norm(seq, alpha_i) ** 2
    return n2 * math.exp(-((alpha_f - alpha_i) ** 2)) * _FID_FORMS[seq.name](alpha_i, alpha_f)


# EIN closed forms: pairs (phase-free part, cos(2 lam) coefficient),
# each a polynomial in alpha^2, over a common denominator
# 2 * (gain numerator polynomial)^2; the one-cycle addsub entry also
# divides by its normalization polynomial.

_EIN_TWO_CYCLE = {
    "addsub2": (
        (4.0, 62.0, 382.0, 1101.0, 1554.0, 955.0, 226.0, 15.0),
        (4.0, 52.0, 250.0, 508.0, 450.0, 132.0, 14.0),
        2.0,
    ),
    "add4": (
        (4.0, 104.0, 1104.0, 5952.0, 17376.0, 26496.0, 19584.0, 4608.0),
        (4.0, 96.0, 912.0, 4224.0, 10080.0, 11520.0, 5760.0),
        1.0,
    ),
    "addsub_add2": (
        (6.0, 147.0, 1458.0, 7263.0, 19296.0, 26352.0, 17064.0, 3564.0),
        (6.0, 132.0, 1134.0, 4680.0, 9756.0, 9504.0, 3888.0),
        2.0,
    ),
    "add2_addsub": (
        (6.0, 103.0, 714.0, 2395.0, 4128.0, 3344.0, 1192.0, 124.0),
        (6.0, 92.0, 542.0, 1432.0, 1772.0, 800.0, 144.0),
        2.0,
    ),
}


def analytic_ein(seq: OperatorSeq | str, alpha_i: float, lam: float) -> float:
    """Closed-form EIN where a trusted expression exists.

    Covers the addsub one-cycle form and the four two-cycle forms.  The
    add2 one-cycle expression in circulation is inconsistent with the
    definitional numerics and is only available through
    ein_add2_discrepant_form (see verify).
    """
    seq = get_seq(seq)
    a2 = alpha_i * alpha_i
    c2 = math.cos(2.0 * lam)
    if seq.name == "addsub":
        num = (
            2.0 * a2**3 + 11.0 * a2**2 + 11.0 * a2
            + 2.0 * (a2**2 + 5.0 * a2 + 3.0) * a2 * c2 + 1.0
        )
        n2 = analytic_norm(seq, alpha_i) ** 2
        den = 2.0 * n2 * (a2**2 + 4.0 * a2 + 2.0) ** 2
        return num / den - 2.0 * a2 * math.cos(lam) ** 2 - 0.5
    if seq.name in _EIN_TWO_CYCLE:
        p_free, p_cos, den_scale = _EIN_TWO_CYCLE[seq.name]
        num = float(np.polyval(p_free, a2)) + float(np.polyval(p_cos, a2)) * a2 * c2
        gpoly = float(np.polyval(_GAIN_POLY[seq.name], a2))
        return -num / (den_scale * gpoly**2)
    raise NoClosedForm(f"no trusted EIN closed form for {seq.name}")


def ein_add2_discrepant_form(alpha_i: float, lam: float) -> float:
    """Literal transcription of the published add2 EIN expression.

    Kept only so the verify report can print it next to the numeric
    value: the bracketed normalization factors make it disagree with
    the definitional EIN (the numeric path is authoritative).
    """
    a2 = alpha_i * alpha_i
    two_n = 2.0 * analytic_norm("add2", alpha_i)
    num = two_n**2 * (a2 + 2.0) * (
        a2**2 + (a2 + 6.0) * a2 * math.cos(2.0 * lam) + 6.0 * a2 + 2.0
    ) + 1.0
    den = two_n**4 * (a2**2 + 6.0 * a2 + 6.0) ** 2
    return num / den - 2.0 * a2 * math.cos(lam) ** 2 - 0.5


def analytic_ein_avg(seq: OperatorSeq | str, alpha_i: float) -> float:
    """Phase average of analytic_ein (cos 2lam drops, cos^2 averages to 1/2)."""
    seq = get_seq(seq)
    a2 = alpha_i * alpha_i
    if seq.name == "addsub":
        num = 2.0 * a2**3 + 11.0 * a2**2 + 11.0 * a2 + 1.0
        n2 = analytic_norm(seq, alpha_i) ** 2
        den = 2.0 * n2 * (a2**2 + 4.0 * a2 + 2.0) ** 2
        return num / den - a2 - 0.5
    if seq.name in _EIN_TWO_CYCLE:
        p_free, _, den_scale = _EIN_TWO_CYCLE[seq.name]
        gpoly = float(np.polyval(_GAIN_POLY[seq.name], a2))
        return -float(np.polyval(p_free, a2)) / (den_scale * gpoly**2)
    raise NoClosedForm(f"no trusted EIN closed form for {seq.name}")
