"""Amplification of even and odd superpositions of coherent states.

Both catalog amplifiers (addsub and add2) shift the photon number by 0
or 2, so they preserve the cat parity; the sweep therefore always
targets the matching-parity cat family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import fock, metrics
from .amplifier import OperatorSeq, amplify, get_seq
from .errors import NoClosedForm, OddScsAtZero
from .fock import FockVector, make_state
from .metrics import max_fidelity, phase_uncertainty

SCS_SEQS = ("addsub", "add2")


@dataclass(frozen=True)
class ScsSweepRow:
    """One cat-state sweep point (the quantities of the gain/fidelity/
    phase-uncertainty comparison plots)."""

    parity: str
    alpha_i: float
    seq: str
    f_max: float
    alpha_f_opt: float
    gain_scs: float
    dphi_amplified: float
    dphi_bare: float

    def __post_init__(self):
        if not -1e-9 <= self.f_max <= 1.0 + 1e-9:
            raise ValueError("fidelity outside [0, 1]")
        if self.gain_scs <= 0.0 or self.dphi_amplified <= 0.0 or self.dphi_bare <= 0.0:
            raise ValueError("gain and phase uncertainties must be positive")


def _check_parity(parity: str, alpha: float) -> None:
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if parity == "odd" and alpha == 0.0:
        raise OddScsAtZero("odd cat state is undefined at alpha = 0")


def amplified_scs(seq: OperatorSeq | str, parity: str, alpha_i: float) -> FockVector:
    """Normalized amplified cat state; parity equals the input parity."""
    seq = get_seq(seq)
    if seq.name not in SCS_SEQS:
        raise ValueError(f"cat amplification supports {SCS_SEQS}, not {seq.name}")
    _check_parity(parity, alpha_i)
    psi = make_state(fock.scs(parity, alpha_i), reserve=len(seq))
    state, _ = amplify(seq, psi)
    return state


# Polynomials in alpha^2 entering the cat normalizations: the
# <-alpha|...|alpha> cross term and its exact sum/difference with the
# direct term (never formed by subtraction; tiny at small alpha).
_CROSS = {"addsub": (1.0, -3.0, 1.0), "add2": (1.0, -4.0, 2.0)}
_SUM = {"addsub": (2.0, 0.0, 2.0), "add2": (2.0, 0.0, 4.0)}
_DIFF = {"addsub": (6.0, 0.0), "add2": (8.0, 0.0)}


def _poly(c, a2: float) -> float:
    out = 0.0
    for coef in c:
        out = out * a2 + coef
    return out


def _norm_sq_raw(seq_name: str, parity: str, alpha: float) -> float:
    """Squared normalization of A(|alpha> +/- |-alpha>), without the cat
    normalization: 1 / (2 (direct +/- w cross))."""
    a2 = alpha * alpha
    c = _poly(_CROSS[seq_name], a2)
    omw = -math.expm1(-2.0 * a2)
    if parity == "even":
        den = _poly(_SUM[seq_name], a2) - c * omw
    else:
        den = _poly(_DIFF[seq_name], a2) + c * omw
    return 1.0 / (2.0 * den)


def scs_fidelity_analytic(
    seq: OperatorSeq | str, parity: str, alpha_i: float, alpha_f: float
) -> float:
    """Closed-form fidelity of the amplified cat to the cat of amplitude
    alpha_f (same parity)."""
    seq = get_seq(seq)
    if seq.name not in SCS_SEQS:
        raise NoClosedForm(f"no cat fidelity closed form for {seq.name}")
    _check_parity(parity, alpha_i)
    if parity == "odd" and alpha_f == 0.0:
        raise OddScsAtZero("odd cat state is undefined at alpha = 0")
    n2 = _norm_sq_raw(seq.name, parity, alpha_i)
    x = alpha_f * alpha_i
    if parity == "even":
        den = 1.0 + math.exp(-2.0 * alpha_f * alpha_f)
    else:
        den = -math.expm1(-2.0 * alpha_f * alpha_f)
    if seq.name == "addsub":
        if parity == "even":
            core = math.exp(2.0 * x) * (x + 1.0) - (x - 1.0)
        else:
            core = math.exp(2.0 * x) * (x + 1.0) + (x - 1.0)
        return 2.0 * n2 * math.exp(-((alpha_f + alpha_i) ** 2)) * core**2 / den
    # add2
    s = 1.0 if parity == "even" else -1.0
    core = s * math.exp(-0.5 * (alpha_i + alpha_f) ** 2) + math.exp(
        -0.5 * (alpha_i - alpha_f) ** 2
    )
    return 2.0 * n2 * alpha_f**4 * core**2 / den


def analytic_scs_fisher(seq: OperatorSeq | str, parity: str, alpha: float) -> float:
    """Closed-form Fisher information of the (possibly amplified) cat.

    seq may be identity, addsub or add2; cross-checked against
    4 Var(n) on the constructed state by the verify suite.
    """
    seq = get_seq(seq)
    _check_parity(parity, alpha)
    a2 = alpha * alpha
    a4 = a2 * a2
    if seq.name == "identity":
        e2, e4 = math.exp(2.0 * a2), math.exp(4.0 * a2)
        if parity == "even":
            return 4.0 * a2 * (4.0 * e2 * a2 + e4 - 1.0) / (e2 + 1.0) ** 2
        return 4.0 * a2 * (-4.0 * e2 * a2 + e4 - 1.0) / (e2 - 1.0) ** 2
    if seq.name not in SCS_SEQS:
        raise NoClosedForm(f"no cat Fisher closed form for {seq.name}")
    n2 = _norm_sq_raw(seq.name, parity, alpha)
    sh, ch = math.sinh(a2), math.cosh(a2)
    ea = math.exp(a2)
    if seq.name == "addsub":
        if parity == "even":
            first = 4.0 * (2.0 * a4 + 1.0) * sh + (a4 + 14.0) * a2 * ch
            second = (a4 + 4.0) * alpha * sh + 5.0 * alpha**3 * ch
        else:
            first = (a4 + 14.0) * a2 * sh + 4.0 * (2.0 * a4 + 1.0) * ch
            second = (a4 + 4.0) * alpha * ch + 5.0 * alpha**3 * sh
        bracket = ea * first / n2 - 4.0 * second**2
        return 16.0 * n2 * n2 * math.exp(-2.0 * a2) * a2 * bracket
    # add2
    a8 = a4 * a4
    if parity == "even":
        first = (13.0 * a4 + 46.0) * a2 * sh + (a8 + 46.0 * a4 + 8.0) * ch
        second = (a4 + 14.0) * a2 * sh + 4.0 * (2.0 * a4 + 1.0) * ch
    else:
        first = (13.0 * a4 + 46.0) * a2 * ch + (a8 + 46.0 * a4 + 8.0) * sh
        second = 4.0 * (2.0 * a4 + 1.0) * sh + (a4 + 14.0) * a2 * ch
    bracket = ea * first / n2 - 4.0 * second**2
    return 16.0 * n2 * n2 * math.exp(-2.0 * a2) * bracket


def scs_sweep(
    seq: OperatorSeq | str, parity: str, alpha_grid
) -> list[ScsSweepRow]:
    """One row per input amplitude: best fidelity, gain and the phase
    uncertainties of the amplified and of the bare cat."""
    seq = get_seq(seq)
    rows = []
    for alpha_i in alpha_grid:
        f_max, alpha_f_opt = max_fidelity(seq, fock.scs(parity, alpha_i), f"scs_{parity}")
        amp = amplified_scs(seq, parity, alpha_i)
        bare = make_state(fock.scs(parity, alpha_i))
        rows.append(
            ScsSweepRow(
                parity=parity,
                alpha_i=alpha_i,
                seq=seq.name,
                f_max=f_max,
                alpha_f_opt=alpha_f_opt,
                gain_scs=alpha_f_opt / alpha_i,
                dphi_amplified=phase_uncertainty(amp),
                dphi_bare=phase_uncertainty(bare),
            )
        )
    return rows


def dphi_amplified(seq: OperatorSeq | str, parity: str, alpha_i: float) -> float:
    """Phase uncertainty of the amplified cat (crossover objective)."""
    return phase_uncertainty(amplified_scs(seq, parity, alpha_i))
