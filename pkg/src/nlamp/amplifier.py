"""Amplifier operator sequences and heralded success probabilities.

A sequence is an ordered list of elementary photonic operations, 'add'
(creation) or 'sub' (annihilation), stored in the order they are
applied in time.  In the usual algebraic names the rightmost operator
acts first, so the catalog entry add2_addsub ("two additions after an
addition-subtraction") applies add, sub, add, add.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import NoClosedForm, OddScsAtZero, UnknownSequence, ZeroNorm
from .fock import FockVector, apply_annihilate, apply_create


@dataclass(frozen=True)
class OperatorSeq:
    """Ordered photonic operations; ops[0] is applied first."""

    name: str
    ops: tuple[str, ...]

    def __post_init__(self):
        for op in self.ops:
            if op not in ("add", "sub"):
                raise ValueError(f"unknown op {op!r}")

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def parity_flip(self) -> bool:
        """Each ladder operator shifts n by one, so parity flips per op."""
        return len(self.ops) % 2 == 1


# Application order is time order (reversed algebraic reading).
SEQ_CATALOG: dict[str, OperatorSeq] = {
    "identity": OperatorSeq("identity", ()),
    "add": OperatorSeq("add", ("add",)),
    "addsub": OperatorSeq("addsub", ("add", "sub")),
    "add2": OperatorSeq("add2", ("add", "add")),
    "addsub2": OperatorSeq("addsub2", ("add", "sub", "add", "sub")),
    "add4": OperatorSeq("add4", ("add", "add", "add", "add")),
    # addsub applied after add2
    "addsub_add2": OperatorSeq("addsub_add2", ("add", "add", "add", "sub")),
    # add2 applied after addsub
    "add2_addsub": OperatorSeq("add2_addsub", ("add", "sub", "add", "add")),
}

ONE_CYCLE = ("addsub", "add2")
TWO_CYCLE = ("addsub2", "add4", "addsub_add2", "add2_addsub")

# Pretty operator strings for reports and figure legends.
SEQ_LABELS = {
    "identity": "1",
    "add": "a†",
    "addsub": "a a†",
    "add2": "a†²",
    "addsub2": "(a a†)²",
    "add4": "a†⁴",
    "addsub_add2": "a a† a†²",
    "add2_addsub": "a†² a a†",
}


def get_seq(name: str | OperatorSeq) -> OperatorSeq:
    if isinstance(name, OperatorSeq):
        return name
    try:
        return SEQ_CATALOG[name]
    except KeyError:
        raise UnknownSequence(
            f"unknown sequence {name!r}; known: {', '.join(SEQ_CATALOG)}"
        ) from None


def apply_seq(seq: OperatorSeq | str, psi: FockVector) -> FockVector:
    """Apply the raw (unnormalized) operator product to psi."""
    out = psi
    for op in get_seq(seq).ops:
        out = apply_create(out) if op == "add" else apply_annihilate(out)
    return out


def amplify(seq: OperatorSeq | str, psi: FockVector) -> tuple[FockVector, float]:
    """Normalized amplified state and its normalization factor.

    Returns (A|psi> / ||A|psi>||, 1/||A|psi>||).  For a coherent input
    the factor reproduces the closed-form normalization constants.
    """
    seq = get_seq(seq)
    raw = apply_seq(seq, psi)
    nrm = raw.norm()
    if nrm == 0.0:
        raise ZeroNorm(f"sequence {seq.name} annihilated the state")
    return FockVector(raw.amps / nrm), 1.0 / nrm


# Closed-form squared inverse normalizations N^{-2}(alpha) for coherent
# input, as polynomials in alpha^2 (highest power first).
_NORM_POLY = {
    "identity": (1.0,),
    "add": (1.0, 1.0),
    "addsub": (1.0, 3.0, 1.0),
    "add2": (1.0, 4.0, 2.0),
    "addsub2": (1.0, 10.0, 25.0, 15.0, 1.0),
    "add4": (1.0, 16.0, 72.0, 96.0, 24.0),
    "addsub_add2": (1.0, 15.0, 63.0, 78.0, 18.0),
    "add2_addsub": (1.0, 11.0, 31.0, 22.0, 2.0),
}


def _poly_a2(coeffs, alpha: float) -> float:
    return float(np.polyval(coeffs, alpha * alpha))


def analytic_norm(seq: OperatorSeq | str, alpha: float) -> float:
    """Closed-form normalization factor for a coherent-state input."""
    seq = get_seq(seq)
    if seq.name not in _NORM_POLY:
        raise NoClosedForm(f"no normalization closed form for {seq.name}")
    return 1.0 / math.sqrt(_poly_a2(_NORM_POLY[seq.name], alpha))


# Companion polynomials for the cat-state normalizations: value on the
# cross term <-(alpha)| ... |alpha> (signs of the odd alpha^2 powers flip),
# plus the exact sum/difference with the direct term (the difference is
# tiny at small alpha and must not be formed by subtraction).
_SCS_CROSS_POLY = {
    "addsub": (1.0, -3.0, 1.0),
    "add2": (1.0, -4.0, 2.0),
}
_SCS_SUM_POLY = {
    "addsub": (2.0, 0.0, 2.0),
    "add2": (2.0, 0.0, 4.0),
}
_SCS_DIFF_POLY = {
    "addsub": (6.0, 0.0),
    "add2": (8.0, 0.0),
}


def scs_analytic_norm(seq: OperatorSeq | str, parity: str, alpha: float) -> float:
    """Closed-form normalization factor for an amplified cat state.

    Matches amplify()'s numeric factor on a normalized cat input: the
    direct and cross polynomial terms are combined with the cat-state
    normalization folded in.
    """
    seq = get_seq(seq)
    if seq.name not in _SCS_CROSS_POLY:
        raise NoClosedForm(f"no cat-state normalization closed form for {seq.name}")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if parity == "odd" and alpha == 0.0:
        raise OddScsAtZero("odd cat state is undefined at alpha = 0")
    cross = _poly_a2(_SCS_CROSS_POLY[seq.name], alpha)
    omw = -math.expm1(-2.0 * alpha * alpha)  # 1 - e^{-2 alpha^2}, no cancellation
    if parity == "even":
        dsum = _poly_a2(_SCS_SUM_POLY[seq.name], alpha)
        return math.sqrt((2.0 - omw) / (dsum - cross * omw))
    ddiff = _poly_a2(_SCS_DIFF_POLY[seq.name], alpha)
    return math.sqrt(omw / (ddiff + cross * omw))


@dataclass(frozen=True)
class HeraldParams:
    """Parametric gain and beam-splitter reflectivity for heralding.

    Both must lie in (0, 1); the first-order probability formulas are
    trustworthy only for small values, so a warning flag is set when
    lambda_g > 0.3 or reflectivity > 0.2.
    """

    lambda_g: float
    reflectivity: float

    def __post_init__(self):
        if not (0.0 < self.lambda_g < 1.0):
            raise ValueError("lambda_g must be in (0, 1)")
        if not (0.0 < self.reflectivity < 1.0):
            raise ValueError("reflectivity must be in (0, 1)")

    @property
    def approximation_warning(self) -> bool:
        return self.lambda_g > 0.3 or self.reflectivity > 0.2


def success_probability(
    seq: OperatorSeq | str,
    psi: FockVector,
    params: HeraldParams,
) -> tuple[float, list[float]]:
    """Heralding probability of the whole sequence and of each step.

    Steps are evaluated in application order.  After each heralded step
    the state is renormalized and the mean photon number recomputed, so
    later steps see the updated state; the total is the product of the
    per-step probabilities (chain rule).  A mid-sequence annihilation of
    the state gives total 0 with the remaining steps reported as 0.
    """
    seq = get_seq(seq)
    lam2 = params.lambda_g**2
    refl = params.reflectivity
    state = psi.unit() if not psi.normalized else psi
    per_step: list[float] = []
    total = 1.0
    for i, op in enumerate(seq.ops):
        nbar, _ = fock.photon_moments(state)
        p = lam2 * (nbar + 1.0) if op == "add" else refl * nbar
        per_step.append(p)
        total *= p
        if p == 0.0:
            # annihilated (sub on vacuum): remaining steps cannot herald
            per_step.extend([0.0] * (len(seq.ops) - i - 1))
            return 0.0, per_step
        raw = apply_create(state) if op == "add" else apply_annihilate(state)
        state = FockVector(raw.amps / raw.norm())
    return total, per_step


def first_order_success_probability(
    seq: OperatorSeq | str,
    psi: FockVector,
    params: HeraldParams,
) -> float:
    """First-order estimate with every step rated on the initial state.

    This is the back-of-envelope arithmetic behind the standard quoted
    orders of magnitude; it ignores how heralded steps reshape the
    photon statistics (see success_probability for the updated chain).
    """
    seq = get_seq(seq)
    nbar, _ = fock.photon_moments(psi if psi.normalized else psi.unit())
    lam2 = params.lambda_g**2
    total = 1.0
    for op in seq.ops:
        total *= lam2 * (nbar + 1.0) if op == "add" else params.reflectivity * nbar
    return total
