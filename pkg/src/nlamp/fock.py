"""Truncated number-basis representation of pure bosonic states.

A state is a finite vector of complex amplitudes c_0..c_nmax.  All
constructors guarantee that the truncation tail carries less than
TAIL_TOL probability mass, so overlaps and moments computed here can be
used as the numeric ground truth for every closed-form expression in
the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import CutoffTooSmall, NotNormalized, OddScsAtZero

# Unit-norm tolerance, truncation tail-mass bound, underflow floor.
NORM_TOL = 1e-12
TAIL_TOL = 1e-14
UNDERFLOW = 1e-300

STATE_KINDS = (
    "coherent",
    "scs_even",
    "scs_odd",
    "squeezed_vacuum",
    "squeezed_one",
    "number",
)


@dataclass(frozen=True)
class FockVector:
    """Immutable amplitude vector c_0..c_{n_max} in the number basis."""

    amps: np.ndarray

    def __post_init__(self):
        a = np.array(self.amps, dtype=np.complex128)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("amps must be a non-empty 1-d sequence")
        # underflow hygiene: subnormal-scale amplitudes become exact zeros
        a[np.abs(a) < UNDERFLOW] = 0.0
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @property
    def n_max(self) -> int:
        return self.amps.size - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @property
    def normalized(self) -> bool:
        return abs(np.vdot(self.amps, self.amps).real - 1.0) <= NORM_TOL

    def tail_mass(self) -> float:
        """Probability mass in the two highest slots."""
        return float(np.sum(np.abs(self.amps[-2:]) ** 2))

    def padded(self, n_max: int) -> "FockVector":
        """Zero-pad (or return self) so the vector reaches n_max."""
        if n_max <= self.n_max:
            return self
        out = np.zeros(n_max + 1, dtype=np.complex128)
        out[: self.amps.size] = self.amps
        return FockVector(out)

    def unit(self) -> "FockVector":
        n = self.norm()
        if n == 0.0:
            raise NotNormalized("cannot normalize the zero vector")
        return FockVector(self.amps / n)


@dataclass(frozen=True)
class StateSpec:
    """Declarative description of an input state.

    kind: one of STATE_KINDS; alpha is the (real) coherent amplitude,
    r the squeezing parameter, n the photon number, each used only by
    the kinds that need them.
    """

    kind: str
    alpha: float = 0.0
    r: float = 0.0
    n: int = 0

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise ValueError(f"unknown state kind {self.kind!r}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.r)):
            raise ValueError("alpha and r must be finite")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.kind == "scs_odd" and self.alpha == 0.0:
            raise OddScsAtZero("odd cat state is undefined at alpha = 0")


def coherent(alpha: float) -> StateSpec:
    return StateSpec("coherent", alpha=alpha)


def scs(parity: str, alpha: float) -> StateSpec:
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    return StateSpec(f"scs_{parity}", alpha=alpha)


def squeezed_vacuum(r: float) -> StateSpec:
    return StateSpec("squeezed_vacuum", r=r)


def squeezed_one(r: float) -> StateSpec:
    return StateSpec("squeezed_one", r=r)


def number(n: int) -> StateSpec:
    return StateSpec("number", n=n)


def mean_photons(spec: StateSpec) -> float:
    """Analytic mean photon number of a state spec (used for cutoffs)."""
    a2 = spec.alpha * spec.alpha
    if spec.kind == "coherent":
        return a2
    if spec.kind == "scs_even":
        return a2 * math.tanh(a2) if a2 > 0 else 0.0
    if spec.kind == "scs_odd":
        # alpha**2 * coth(alpha**2), -> 1 as alpha -> 0
        return a2 / math.tanh(a2) if a2 > 0 else 1.0
    s = math.sinh(spec.r)
    if spec.kind == "squeezed_vacuum":
        return s * s
    if spec.kind == "squeezed_one":
        return 1.0 + 3.0 * s * s
    return float(spec.n)


def auto_cutoff(mu: float, reserve: int = 0) -> int:
    """Default truncation index for a state of mean photon number mu.

    Sized for Poisson-like tails; constructors still validate the tail
    and grow the cutoff when the distribution decays more slowly
    (squeezed states have geometric number tails).
    """
    return int(math.ceil(mu + 12.0 * math.sqrt(mu + 1.0) + 20.0)) + reserve


def _coherent_amps(alpha: float, n_max: int) -> np.ndarray:
    """Poisson amplitudes e^{-a^2/2} a^n / sqrt(n!), real alpha."""
    n = np.arange(n_max + 1)
    if alpha == 0.0:
        out = np.zeros(n_max + 1)
        out[0] = 1.0
        return out
    # log-space to survive alpha**n / sqrt(n!) well past n = 170
    log_mag = -0.5 * alpha * alpha + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0)
    amps = np.exp(log_mag)
    if alpha < 0:
        amps = amps * np.where(n % 2 == 0, 1.0, -1.0)
    return amps


def _squeezed_amps(spec: StateSpec, n_max: int) -> np.ndarray:
    """Number-basis series of S(r)|0> or S(r)|1>."""
    r = spec.r
    out = np.zeros(n_max + 1)
    single = spec.kind == "squeezed_one"
    if r == 0.0:
        out[1 if single else 0] = 1.0
        return out
    t = math.tanh(r)
    k = np.arange(n_max // 2 + 1)
    if single:
        # (-tanh r)^k / cosh^{3/2} r * sqrt((2k+1)!) / (2^k k!) on |2k+1>
        log_mag = (
            k * math.log(abs(t))
            - 1.5 * math.log(math.cosh(r))
            + 0.5 * gammaln(2 * k + 2.0)
            - k * math.log(2.0)
            - gammaln(k + 1.0)
        )
        idx = 2 * k + 1
    else:
        log_mag = (
            k * math.log(abs(t))
            - 0.5 * math.log(math.cosh(r))
            + 0.5 * gammaln(2 * k + 1.0)
            - k * math.log(2.0)
            - gammaln(k + 1.0)
        )
        idx = 2 * k
    sign = np.where(k % 2 == 0, 1.0, -1.0) if t > 0 else 1.0
    vals = sign * np.exp(log_mag)
    keep = idx <= n_max
    out[idx[keep]] = vals[keep]
    return out


def _build(spec: StateSpec, n_max: int) -> FockVector:
    if spec.kind == "coherent":
        amps = _coherent_amps(spec.alpha, n_max)
    elif spec.kind in ("scs_even", "scs_odd"):
        a = spec.alpha
        plus = _coherent_amps(a, n_max)
        minus = _coherent_amps(-a, n_max)
        if spec.kind == "scs_even":
            amps = (plus + minus) / math.sqrt(2.0 * (1.0 + math.exp(-2.0 * a * a)))
        else:
            amps = (plus - minus) / math.sqrt(-2.0 * math.expm1(-2.0 * a * a))
    elif spec.kind in ("squeezed_vacuum", "squeezed_one"):
        amps = _squeezed_amps(spec, n_max)
    else:
        amps = np.zeros(n_max + 1)
        amps[spec.n] = 1.0
    return FockVector(amps)


# CLI override for the automatic cutoff; see fixed_cutoff().
_FIXED_NMAX: int | None = None


class fixed_cutoff:
    """Context manager forcing every auto-cutoff make_state to n_max.

    Used by the command-line layer for its --nmax flag; the library
    default (None) keeps the adaptive rule.  Not thread-safe.
    """

    def __init__(self, n_max: int | None):
        self.n_max = n_max

    def __enter__(self):
        global _FIXED_NMAX
        self._saved = _FIXED_NMAX
        _FIXED_NMAX = self.n_max
        return self

    def __exit__(self, *exc):
        global _FIXED_NMAX
        _FIXED_NMAX = self._saved
        return False


def make_state(spec: StateSpec, n_max: int | None = None, reserve: int = 0) -> FockVector:
    """Build a normalized FockVector for the given spec.

    n_max=None selects the automatic cutoff (grown as needed until the
    tail-mass bound holds); a user-supplied cutoff that fails the bound
    raises CutoffTooSmall.  reserve adds head-room slots for ladder
    operators that will be applied afterwards.
    """
    if n_max is None and _FIXED_NMAX is not None:
        n_max = _FIXED_NMAX + reserve
    if n_max is not None:
        if spec.kind == "number" and n_max < spec.n:
            raise CutoffTooSmall(f"n_max={n_max} cannot hold |{spec.n}>")
        psi = _build(spec, n_max)
        if psi.tail_mass() >= TAIL_TOL:
            raise CutoffTooSmall(
                f"tail mass {psi.tail_mass():.3e} at n_max={n_max} "
                f"exceeds {TAIL_TOL:.0e}"
            )
        return psi.unit()

    cut = auto_cutoff(mean_photons(spec), reserve)
    # geometric tails (squeezed states at large r) need more room than
    # the Poisson-style estimate; grow until the tail-mass bound holds
    # with margin so downstream ladder shifts stay clean.
    for _ in range(40):
        psi = _build(spec, cut)
        if psi.tail_mass() < 1e-22:
            return psi.unit()
        cut = int(cut * 1.5) + 8
    raise CutoffTooSmall(f"automatic cutoff failed to converge for {spec}")


def apply_create(psi: FockVector) -> FockVector:
    """Creation operator: c'_{n+1} = sqrt(n+1) c_n, unnormalized.

    The vector length is fixed, so the top amplitude would fall off the
    end; it must be negligible (tail-mass bound) or CutoffTooSmall is
    raised.
    """
    c = psi.amps
    n_top = psi.n_max
    lost = (n_top + 1) * abs(c[-1]) ** 2
    if lost >= TAIL_TOL:
        raise CutoffTooSmall(
            f"create would push {lost:.3e} probability mass past n_max={n_top}"
        )
    out = np.zeros_like(c)
    n = np.arange(n_top, dtype=np.float64)
    out[1:] = np.sqrt(n + 1.0) * c[:-1]
    return FockVector(out)


def apply_annihilate(psi: FockVector) -> FockVector:
    """Annihilation operator: c'_{n-1} = sqrt(n) c_n, unnormalized.

    The zero vector (e.g. from vacuum input) is a legal result.
    """
    c = psi.amps
    out = np.zeros_like(c)
    n = np.arange(1, psi.n_max + 1, dtype=np.float64)
    out[:-1] = np.sqrt(n) * c[1:]
    return FockVector(out)


def inner(psi: FockVector, phi: FockVector) -> complex:
    """<psi|phi>, conjugate-linear in the first argument.

    Vectors of different cutoffs are zero-padded to match.
    """
    n = max(psi.amps.size, phi.amps.size)
    a = psi.padded(n - 1).amps
    b = phi.padded(n - 1).amps
    return complex(np.vdot(a, b))


def _require_normalized(psi: FockVector, who: str) -> None:
    if not psi.normalized:
        raise NotNormalized(f"{who} requires a unit-norm state "
                            f"(norm={psi.norm():.12g})")


def photon_moments(psi: FockVector) -> tuple[float, float]:
    """(mean, variance) of the photon number."""
    _require_normalized(psi, "photon_moments")
    p = np.abs(psi.amps) ** 2
    n = np.arange(psi.amps.size, dtype=np.float64)
    mean = float(np.dot(n, p))
    var = float(np.dot(n * n, p)) - mean * mean
    return mean, max(var, 0.0)


def ladder_expectations(psi: FockVector) -> tuple[complex, complex, float]:
    """(<a>, <a^2>, <n>) for a normalized state."""
    _require_normalized(psi, "ladder_expectations")
    c = psi.amps
    n = np.arange(c.size, dtype=np.float64)
    exp_a = complex(np.sum(np.conj(c[:-1]) * np.sqrt(n[1:]) * c[1:]))
    if c.size > 2:
        fac = np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0))
        exp_a2 = complex(np.sum(np.conj(c[:-2]) * fac * c[2:]))
    else:
        exp_a2 = 0.0 + 0.0j
    nbar = float(np.dot(n, np.abs(c) ** 2))
    return exp_a, exp_a2, nbar


def quadrature_moments(psi: FockVector, lam: float) -> tuple[float, float]:
    """(mean, variance) of x_lam = (a e^{-i lam} + a^dag e^{i lam})/sqrt(2).

    Vacuum variance is 1/2 under this convention.
    """
    exp_a, exp_a2, nbar = ladder_expectations(psi)
    phase = complex(math.cos(lam), -math.sin(lam))
    mean = math.sqrt(2.0) * (exp_a * phase).real
    second = (exp_a2 * phase * phase).real + nbar + 0.5
    return mean, second - mean * mean


def parity_of(psi: FockVector, tol: float = 1e-12) -> str:
    """'even', 'odd', or 'mixed' photon-number parity of the amplitudes."""
    p = np.abs(psi.amps) ** 2
    odd_mass = float(np.sum(p[1::2]))
    even_mass = float(np.sum(p[0::2]))
    if odd_mass <= tol * max(even_mass, 1.0):
        return "even"
    if even_mass <= tol * max(odd_mass, 1.0):
        return "odd"
    return "mixed"
