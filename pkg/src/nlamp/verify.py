"""Oracle suite: every closed form against its definitional numerics.

Each check compares a tabulated closed-form expression with the value
computed directly on Fock vectors.  Checks PASS within the stated
tolerance, known printed-formula discrepancies are reported as WARN
with both values (the numeric value is authoritative), and anything
else is a FAIL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock, metrics, scs, squeezed, wigner
from .amplifier import amplify, analytic_norm, get_seq, scs_analytic_norm
from .fock import make_state
from .optimize import Bracket, find_crossing

ALPHA_GRID = (0.1, 0.5, 1.0, 2.0, 3.0)
ALPHA_GRID_WITH_ZERO = (0.0,) + ALPHA_GRID
TARGET_GRID = (0.3, 1.0, 1.7, 2.5)
LAM_GRID = (0.0, 0.4, 0.9)

COHERENT_SEQS = ("addsub", "add2", "addsub2", "add4", "addsub_add2", "add2_addsub")
ABS_TOL = 1e-8
NORM_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # PASS | WARN | FAIL
    detail: str


def _agree(name: str, worst: float, tol: float, extra: str = "") -> CheckResult:
    status = "PASS" if worst < tol else "FAIL"
    detail = f"max |closed form - numeric| = {worst:.3e} (tol {tol:.0e})"
    if extra:
        detail += "; " + extra
    return CheckResult(name, status, detail)


def check_norms() -> list[CheckResult]:
    out = []
    for s in COHERENT_SEQS + ("add", "identity"):
        seq = get_seq(s)
        worst = 0.0
        for a in ALPHA_GRID_WITH_ZERO:
            psi = make_state(fock.coherent(a), reserve=len(seq))
            _, nf = amplify(seq, psi)
            worst = max(worst, abs(nf - analytic_norm(seq, a)))
        out.append(_agree(f"norm/{s}", worst, NORM_TOL))
    return out


def check_fidelities() -> list[CheckResult]:
    out = []
    for s in COHERENT_SEQS:
        seq = get_seq(s)
        worst = 0.0
        for ai in ALPHA_GRID_WITH_ZERO:
            amp, _ = amplify(seq, make_state(fock.coherent(ai), reserve=len(seq)))
            for af in TARGET_GRID:
                f_num = metrics.fidelity(amp, make_state(fock.coherent(af)))
                worst = max(worst, abs(f_num - metrics.analytic_fidelity(s, ai, af)))
        out.append(_agree(f"fidelity/{s}", worst, ABS_TOL))
    return out


def check_gains() -> list[CheckResult]:
    out = []
    for s in COHERENT_SEQS:
        worst = 0.0
        spread = 0.0
        for a in (1e-4,) + ALPHA_GRID:
            vals = [metrics.gain_coherent(s, a, lam) for lam in LAM_GRID]
            spread = max(spread, max(vals) - min(vals))
            worst = max(worst, abs(vals[0] - metrics.analytic_gain(s, a)))
        out.append(
            _agree(f"gain/{s}", worst, ABS_TOL, f"phase spread {spread:.1e}")
        )
    return out


def check_eins() -> list[CheckResult]:
    out = []
    for s in ("addsub", "addsub2", "add4", "addsub_add2", "add2_addsub"):
        worst = 0.0
        worst_avg = 0.0
        for a in ALPHA_GRID_WITH_ZERO:
            for lam in LAM_GRID:
                worst = max(
                    worst, abs(metrics.ein(s, a, lam) - metrics.analytic_ein(s, a, lam))
                )
            worst_avg = max(
                worst_avg, abs(metrics.ein_avg(s, a) - metrics.analytic_ein_avg(s, a))
            )
        out.append(_agree(f"ein/{s}", worst, ABS_TOL, f"avg diff {worst_avg:.1e}"))
    return out


def check_ein_add2_discrepancy() -> CheckResult:
    rows = []
    for a in (0.0, 1.0, 2.0):
        num = metrics.ein(s := "add2", a, 0.0)
        lit = metrics.ein_add2_discrepant_form(a, 0.0)
        rows.append(f"alpha={a}: numeric={num:.6f} vs closed form={lit:.6f}")
    return CheckResult(
        "ein/add2",
        "WARN",
        "tabulated closed form disagrees with the definitional EIN; numeric "
        "value authoritative. " + "; ".join(rows),
    )


def check_add4_fidelity_transcription() -> CheckResult:
    ai, af = 1.0, 2.0
    n2 = analytic_norm("add4", ai) ** 2
    literal = n2 * ai**8 * math.exp(-((ai - af) ** 2))
    amp, _ = amplify("add4", make_state(fock.coherent(ai), reserve=4))
    num = metrics.fidelity(amp, make_state(fock.coherent(af)))
    return CheckResult(
        "fidelity/add4/transcription",
        "WARN",
        "tabulated form uses the target amplitude to the eighth power; the "
        f"input-amplitude reading fails the oracle (at ai={ai}, af={af}: "
        f"numeric={num:.6f}, input-amplitude reading={literal:.6f})",
    )


def check_small_alpha_gain_attribution() -> CheckResult:
    g_21 = metrics.gain_coherent("add2_addsub", 1e-4)
    g_12 = metrics.gain_coherent("addsub_add2", 1e-4)
    ok = abs(g_21 - 6.0) < 1e-3 and abs(g_12 - 4.0) < 1e-3
    return CheckResult(
        "gain/composite-limits",
        "WARN" if ok else "FAIL",
        f"numeric small-amplitude limits: add2_addsub -> {g_21:.6f}, "
        f"addsub_add2 -> {g_12:.6f}; the swapped attribution (4 and 6) is "
        "rejected by the numerics",
    )


def check_fidelity_ordering() -> CheckResult:
    """The two-cycle fidelity chain holds only above alpha ~ 0.68."""
    order = ("addsub2", "addsub_add2", "add2_addsub", "add4")
    bad_high = []
    for a in np.arange(0.7, 3.01, 0.1):
        f = [metrics.max_fidelity(s, fock.coherent(float(a)))[0] for s in order]
        if not (f[0] > f[1] > f[2] > f[3]):
            bad_high.append(round(float(a), 2))
    sample = 0.25
    f_mid = {
        s: metrics.max_fidelity(s, fock.coherent(sample))[0]
        for s in ("addsub_add2", "add2_addsub")
    }
    if bad_high:
        return CheckResult(
            "fidelity/two-cycle-ordering", "FAIL", f"chain violated at {bad_high}"
        )
    cross = find_crossing(
        lambda a: metrics.max_fidelity("addsub_add2", fock.coherent(a))[0],
        lambda a: metrics.max_fidelity("add2_addsub", fock.coherent(a))[0],
        Bracket(0.3, 1.0, tol_x=1e-4),
        scan=16,
    )
    return CheckResult(
        "fidelity/two-cycle-ordering",
        "WARN",
        "chain addsub2 > addsub_add2 > add2_addsub > add4 holds for alpha >= 0.7, "
        f"but the middle pair is reversed below ~{cross.x:.2f} "
        f"(at alpha={sample}: addsub_add2={f_mid['addsub_add2']:.4f} < "
        f"add2_addsub={f_mid['add2_addsub']:.4f}); numeric ordering authoritative",
    )


def check_scs_norms() -> list[CheckResult]:
    out = []
    for s in ("addsub", "add2"):
        seq = get_seq(s)
        worst = 0.0
        for par in ("even", "odd"):
            for a in (1e-6,) + ALPHA_GRID:
                psi = make_state(fock.scs(par, a), reserve=len(seq))
                _, nf = amplify(seq, psi)
                worst = max(worst, abs(nf - scs_analytic_norm(s, par, a)))
        out.append(_agree(f"scs-norm/{s}", worst, NORM_TOL))
    return out


def check_scs_fidelities() -> list[CheckResult]:
    out = []
    for s in ("addsub", "add2"):
        worst = 0.0
        for par in ("even", "odd"):
            for ai in ALPHA_GRID:
                amp = scs.amplified_scs(s, par, ai)
                for af in TARGET_GRID:
                    f_num = metrics.fidelity(amp, make_state(fock.scs(par, af)))
                    f_an = scs.scs_fidelity_analytic(s, par, ai, af)
                    worst = max(worst, abs(f_num - f_an))
        out.append(_agree(f"scs-fidelity/{s}", worst, ABS_TOL))
    return out


def check_scs_fisher() -> list[CheckResult]:
    out = []
    for s in ("identity", "addsub", "add2"):
        worst = 0.0
        for par in ("even", "odd"):
            for a in ALPHA_GRID:
                if s == "identity":
                    state = make_state(fock.scs(par, a))
                else:
                    state = scs.amplified_scs(s, par, a)
                f_num = metrics.fisher(state)
                f_an = scs.analytic_scs_fisher(s, par, a)
                worst = max(worst, abs(f_num - f_an) / max(abs(f_num), 1e-300))
        out.append(_agree(f"scs-fisher/{s}", worst, ABS_TOL, "relative"))
    return out


def check_squeezed() -> list[CheckResult]:
    out = []
    for s in ("addsub", "add2"):
        worst_n = 0.0
        worst_f = 0.0
        for par in ("even", "odd"):
            for r in (0.0, 0.3, 0.8, 1.5, 2.5):
                spec = fock.squeezed_vacuum(-r) if par == "even" else fock.squeezed_one(-r)
                psi = make_state(spec, reserve=2)
                _, nf = amplify(s, psi)
                worst_n = max(worst_n, abs(nf - squeezed.squeezed_analytic_norm(s, par, r)))
                for af in (0.5, 1.2, 2.1, 2.6):
                    st = squeezed.amplified_squeezed(s, par, r)
                    f_num = metrics.fidelity(st, make_state(fock.scs(par, af)))
                    f_an = squeezed.squeezed_fidelity_analytic(s, par, r, af)
                    worst_f = max(worst_f, abs(f_num - f_an))
        out.append(_agree(f"squeezed-norm/{s}", worst_n, NORM_TOL))
        out.append(_agree(f"squeezed-fidelity/{s}", worst_f, ABS_TOL))
    return out


_WIGNER_POINTS = tuple(
    wigner.PhasePoint(x, y)
    for x in (-0.8, 0.0, 1.1, 2.0, 3.2)
    for y in (-1.5, 0.0, 0.9)
)


def _wigner_state(seq_name: str, a: float):
    seq = get_seq(seq_name)
    psi = make_state(fock.coherent(a), reserve=len(seq))
    return psi if seq_name == "identity" else amplify(seq, psi)[0]


def check_wigner() -> list[CheckResult]:
    fam_seq = {"coherent": "identity", "add1": "add", "addsub": "addsub", "add2": "add2"}
    out = []
    for fam, sname in fam_seq.items():
        worst = 0.0
        for a in (0.0, 1.0, 2.0):
            state = _wigner_state(sname, a)
            for pt in _WIGNER_POINTS:
                w_num = wigner.wigner_numeric(state, pt)
                worst = max(worst, abs(w_num - wigner.wigner_analytic(fam, a, pt)))
        out.append(_agree(f"wigner/{fam}", worst, ABS_TOL))
    return out


def check_wigner_family_attribution() -> CheckResult:
    """The two-operation closed form belongs to the twice-added state."""
    a = 2.0
    pt = wigner.PhasePoint(2.4, 0.5)
    w_form = wigner.wigner_analytic("add2", a, pt)
    w_add2 = wigner.wigner_numeric(_wigner_state("add2", a), pt)
    w_addsub = wigner.wigner_numeric(_wigner_state("addsub", a), pt)
    return CheckResult(
        "wigner/add2-attribution",
        "WARN",
        f"the add2 closed form matches the twice-added state "
        f"(|diff|={abs(w_form - w_add2):.1e}) and not the addsub state "
        f"(form={w_form:.6f} vs addsub numeric={w_addsub:.6f}); the "
        "alternate attribution is rejected",
    )


def run_all() -> list[CheckResult]:
    results: list[CheckResult] = []
    results += check_norms()
    results += check_fidelities()
    results.append(check_add4_fidelity_transcription())
    results += check_gains()
    results.append(check_small_alpha_gain_attribution())
    results += check_eins()
    results.append(check_ein_add2_discrepancy())
    results.append(check_fidelity_ordering())
    results += check_scs_norms()
    results += check_scs_fidelities()
    results += check_scs_fisher()
    results += check_squeezed()
    results += check_wigner()
    results.append(check_wigner_family_attribution())
    return results


def summarize(results: list[CheckResult]) -> tuple[int, int, int]:
    npass = sum(1 for r in results if r.status == "PASS")
    nwarn = sum(1 for r in results if r.status == "WARN")
    nfail = sum(1 for r in results if r.status == "FAIL")
    return npass, nwarn, nfail
