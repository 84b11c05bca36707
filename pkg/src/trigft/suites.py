"""Verification suites: each module's properties run as named cases.

A suite is a list of tasks; a task is a module-level function taking the
resolved config and returning cases, so tasks can run in worker
processes.  Reports sort cases by case_id, which makes them independent of
the schedule.
"""

from __future__ import annotations

import concurrent.futures as cf
import math
import time
from typing import Callable

import numpy as np

from . import quadrature as quad
from . import radial_ft as rft
from . import special_fn as sf
from . import trig_integrals as ti
from .errors import ConvergenceError
from .reporting import ERROR, FAIL, PASS, Case, VerificationReport, error_case, make_case

SUITES = ("special", "trig", "fourier", "harmonic")

# named tolerances; a --tol override replaces every one except the sigma gate
TOLERANCES = {
    "special.beta_form": 1e-12,
    "special.quadrature": 1e-11,
    "special.recurrence": 1e-13,
    "special.values": 1e-13,
    "trig.closed": 1e-10,
    "trig.abs_floor": 1e-12,
    "trig.imag_ratio": 1e-12,
    "trig.mu": 1e-9,
    "trig.mu_integer": 1e-12,
    "trig.symmetry": 1e-6,
    "trig.contrast": 1e-5,
    "trig.rate": 0.05,
    "trig.recurrence_fd": 1e-5,
    "trig.recurrence_closed": 1e-12,
    "trig.homogeneity": 1e-6,
    "fourier.oracle": 1e-9,
    "fourier.subordination_identity": 1e-10,
    "fourier.volume": 1e-10,
    "fourier.laplace": 1e-11,
    "harmonic.poisson": 1e-3,
    "harmonic.stability": 1e-3,
    "harmonic.linearity": 1e-9,
    "harmonic.imag": 1e-6,
    "harmonic.truncation": 1e-6,
    "harmonic.equivariance": 1e-3,
}
MC_SIGMAS = 4.0

TRIG_N = range(9)
TRIG_A = (1.0, 2.0, 5.0)
TRIG_B_FRACTIONS = (0.1, 0.5, 0.9)
TRIG_P_FRACTIONS = (0.5, 1.0, 10.0)
MU_GRID = (0.5, 1.0, 1.5, 2.5, 4.0, 1 + 0.5j, 1 - 0.5j, 2 + 1j)
MU_AB = ((2.0, 1.0), (3.0, 1.0))
SYMMETRY_POINTS = ((0, 4.0, 1.0), (3, 9.0, 4.0), (1, 2.0, 1.0), (2, 5.0, 3.0), (4, 3.0, 1.5), (5, 10.0, 2.0))
SYMMETRY_STEP = 1e-3
RECURRENCE_POINTS = ((2, 3.0, 1.0), (3, 4.0, 1.5), (4, 5.0, 2.0), (5, 6.0, 2.5))
HOMOGENEITY_POINTS = ((0, 2.0, 1.0), (3, 4.0, 1.0), (1, 5.0, 2.0))
LIMIT_A = (1e2, 1e4, 1e6)

FT_DIMS = (1, 2, 3, 4, 5)
FT_A = (0.5, 1.0, 2.0)
FT_T = (0.0, 0.5, 1.0, 3.0)

HARMONIC_FUNCTIONS = ("one", "x1", "x3", "x1x2", "zonal2")
HARMONIC_POINTS = (
    (0.3, 0.0, 0.0),
    (0.2, 0.4, 0.1),
    (0.0, 0.0, 0.5),
    (-0.35, 0.3, -0.35),
    (0.1, -0.5, 0.2),
)
HARMONIC_QUICK_POINTS = 3


def tol_of(cfg: dict, name: str) -> float:
    if cfg.get("tol") is not None:
        return float(cfg["tol"])
    return float(cfg.get("tolerances", {}).get(name, TOLERANCES[name]))


def _guarded(case_id: str, inputs: dict, tolerance: float, fn: Callable[[], list[Case]]) -> list[Case]:
    try:
        return fn()
    except ConvergenceError as exc:
        return [error_case(case_id, inputs, tolerance, f"non-convergence: {exc}")]
    except Exception as exc:  # reported, never silently dropped
        return [error_case(case_id, inputs, tolerance, f"{type(exc).__name__}: {exc}")]


def _require(res, what: str):
    if not res.converged:
        raise ConvergenceError(f"{what} did not converge (error estimate {res.abs_error_estimate:.3g})")
    return res


def _fmt(x) -> str:
    return f"{x:g}"


# ---------------------------------------------------------------------------
# special functions


def task_wallis_beta(cfg) -> list[Case]:
    tol = tol_of(cfg, "special.beta_form")
    cases = []
    for n in range(61):
        w = sf.wallis(n).value
        beta = 2.0**n * sf.beta_fn((n + 1) / 2, (n + 1) / 2)
        cases.append(make_case(f"special/wallis_beta/n={n:02d}", {"n": n}, w, {"beta_form": beta},
                               beta, w, tol))
    return cases


def task_wallis_quadrature(cfg) -> list[Case]:
    tol = tol_of(cfg, "special.quadrature")
    cases = []
    for n in range(21):
        cid = f"special/wallis_quadrature/n={n:02d}"

        def run(n=n, cid=cid):
            w = sf.wallis(n).value
            res = _require(quad.integrate_interval(lambda x: np.sin(x) ** n, 0.0, math.pi), cid)
            return [make_case(cid, {"n": n}, w, {"quadrature": res.value.real}, res.value.real, w, tol)]

        cases += _guarded(cid, {"n": n}, tol, run)
    return cases


def task_wallis_recurrence(cfg) -> list[Case]:
    tol = tol_of(cfg, "special.recurrence")
    cases = []
    for n in range(2, 61):
        w = sf.wallis(n).value
        rec = (n - 1) / n * sf.wallis(n - 2).value
        cases.append(make_case(f"special/wallis_recurrence/n={n:02d}", {"n": n}, w,
                               {"recurrence": rec}, rec, w, tol))
    return cases


def task_special_values(cfg) -> list[Case]:
    tol = tol_of(cfg, "special.values")
    checks = [
        ("double_factorial/k=-1", {"k": -1}, sf.double_factorial(-1), 1),
        ("double_factorial/k=0", {"k": 0}, sf.double_factorial(0), 1),
        ("double_factorial/k=7", {"k": 7}, sf.double_factorial(7), 105),
        ("gamma/x=0.5", {"x": 0.5}, sf.gamma_fn(0.5), math.sqrt(math.pi)),
        ("gamma/x=1", {"x": 1.0}, sf.gamma_fn(1.0), 1.0),
        ("gamma/x=2", {"x": 2.0}, sf.gamma_fn(2.0), 1.0),
        ("beta/x=1,y=1", {"x": 1.0, "y": 1.0}, sf.beta_fn(1.0, 1.0), 1.0),
        ("beta/x=1.5,y=1.5", {"x": 1.5, "y": 1.5}, sf.beta_fn(1.5, 1.5), math.pi / 8),
        ("beta/x=0.5,y=0.5", {"x": 0.5, "y": 0.5}, sf.beta_fn(0.5, 0.5), math.pi),
    ]
    return [
        make_case(f"special/values/{name}", inputs, float(ref), {"computed": float(got)}, float(got),
                  float(ref), tol)
        for name, inputs, got, ref in checks
    ]


# ---------------------------------------------------------------------------
# trigonometric integrals


def _trig_case(cid, spec, tol, floor, imag_tol=None) -> list[Case]:
    closed = ti.closed_form(spec)
    res = _require(ti.trig_quadrature(spec), cid)
    inputs = {"n": spec.order, "a": spec.a, "b": spec.b, "b_kind": spec.b_kind}
    closed_re = closed.real
    cases = [make_case(cid, inputs, closed_re, {"quadrature": res.value.real}, res.value.real,
                       closed_re, tol, floor)]
    if imag_tol is not None:
        im = abs(res.value.imag)
        ratio = im / abs(res.value.real)
        cases.append(Case(cid + "/imag", inputs, 0.0, {"quadrature_imag": res.value.imag}, im, ratio,
                          imag_tol, 0.0, PASS if ratio <= imag_tol else FAIL))
    return cases


def task_trig_grid(cfg, kind: str) -> list[Case]:
    tol = tol_of(cfg, "trig.closed")
    floor = tol_of(cfg, "trig.abs_floor")
    imag_tol = tol_of(cfg, "trig.imag_ratio") if kind == ti.IMAGINARY_P else None
    fractions = TRIG_P_FRACTIONS if kind == ti.IMAGINARY_P else TRIG_B_FRACTIONS
    cases = []
    for n in TRIG_N:
        for a in TRIG_A:
            for frac in fractions:
                b = frac * a
                cid = f"trig/{kind}/n={n}/a={_fmt(a)}/b={_fmt(b)}"
                spec = ti.TrigSpec(n, a, b, kind)
                cases += _guarded(cid, {"n": n, "a": a, "b": b},
                                  tol, lambda cid=cid, spec=spec: _trig_case(cid, spec, tol, floor, imag_tol))
    return cases


def _mu_label(mu) -> str:
    mu = complex(mu)
    return _fmt(mu.real) if mu.imag == 0 else f"{_fmt(mu.real)}{mu.imag:+g}i"


def task_trig_mu(cfg) -> list[Case]:
    tol = tol_of(cfg, "trig.mu")
    cases = []
    for a, b in MU_AB:
        for mu in MU_GRID:
            cid = f"trig/mu/mu={_mu_label(mu)}/a={_fmt(a)}/b={_fmt(b)}"
            inputs = {"mu_re": complex(mu).real, "mu_im": complex(mu).imag, "a": a, "b": b}

            def run(cid=cid, mu=mu, a=a, b=b, inputs=inputs):
                closed = ti.trig_closed_general(mu, a, b)
                res = _require(ti.trig_quadrature(ti.TrigSpec(mu, a, b)), cid)
                d = abs(res.value - closed)
                rel = d / abs(closed)
                return [Case(cid, inputs, closed.real,
                             {"quadrature_re": res.value.real, "quadrature_im": res.value.imag,
                              "closed_im": closed.imag},
                             d, rel, tol, 0.0, PASS if rel <= tol else FAIL)]

            cases += _guarded(cid, inputs, tol, run)
    tol_int = tol_of(cfg, "trig.mu_integer")
    for n in TRIG_N:
        a, b = 2.0, 1.0
        general = ti.trig_closed_general(n + 1, a, b)
        real = ti.trig_closed_real(n, a, b)
        cases.append(make_case(f"trig/mu_integer/n={n}", {"n": n, "a": a, "b": b}, real,
                               {"general": general.real}, general.real, real, tol_int))
    return cases


def task_trig_symmetry(cfg) -> list[Case]:
    tol = tol_of(cfg, "trig.symmetry")
    tol_c = tol_of(cfg, "trig.contrast")
    tol_rate = tol_of(cfg, "trig.rate")
    cases = []
    for n, a, b in SYMMETRY_POINTS:
        base = f"trig/symmetry/n={n}/a={_fmt(a)}/b={_fmt(b)}"
        inputs = {"n": n, "a": a, "b": b, "h": SYMMETRY_STEP}

        def run(n=n, a=a, b=b, base=base, inputs=inputs):
            pr = ti.symmetry_probe(n, a, b, SYMMETRY_STEP)
            F = abs(pr.value)
            out = []
            for label, r in (("q_residual", pr.q_residuals[0]), ("q_richardson", pr.richardson_q)):
                rel = abs(r) / F
                out.append(Case(f"{base}/{label}", inputs, 0.0, {label: r, "F": pr.value}, abs(r), rel,
                                tol, 0.0, PASS if rel <= tol else FAIL))
            exact = -(n + 1) / 2 * pr.value / (a - b)
            out.append(make_case(f"{base}/p_contrast", inputs, exact,
                                 {"p_derivative": pr.p_derivatives[0]}, pr.p_derivatives[0], exact, tol_c))
            out.append(make_case(f"{base}/p_rate", inputs, 4.0, {"p_rate": pr.p_rate}, pr.p_rate, 4.0,
                                 tol_rate))
            return out

        cases += _guarded(base, inputs, tol, run)
    return cases


def task_trig_recurrence(cfg) -> list[Case]:
    tol_fd = tol_of(cfg, "trig.recurrence_fd")
    tol_cl = tol_of(cfg, "trig.recurrence_closed")
    cases = []
    for n, a, b in RECURRENCE_POINTS:
        base = f"trig/recurrence/n={n}/a={_fmt(a)}/b={_fmt(b)}"
        inputs = {"n": n, "a": a, "b": b, "h": SYMMETRY_STEP}

        def run(n=n, a=a, b=b, base=base, inputs=inputs):
            fd = ti.euler_recurrence_sides(n, a, b, SYMMETRY_STEP)
            cl = ti.euler_recurrence_closed(n, a, b)
            return [
                make_case(base + "/finite_difference", inputs, fd.lhs, {"rhs": fd.rhs}, fd.rhs, fd.lhs, tol_fd),
                make_case(base + "/closed_form", inputs, cl.lhs, {"rhs": cl.rhs}, cl.rhs, cl.lhs, tol_cl),
            ]

        cases += _guarded(base, inputs, tol_fd, run)
    return cases


def task_trig_homogeneity(cfg) -> list[Case]:
    tol = tol_of(cfg, "trig.homogeneity")
    cases = []
    for n, a, b in HOMOGENEITY_POINTS:
        cid = f"trig/homogeneity/n={n}/a={_fmt(a)}/b={_fmt(b)}"
        inputs = {"n": n, "a": a, "b": b}

        def run(n=n, a=a, b=b, cid=cid, inputs=inputs):
            slope = ti.homogeneity_exponent(n, a, b)
            want = -(n + 1) / 2
            return [make_case(cid, inputs, want, {"slope": slope}, slope, want, tol, tol)]

        cases += _guarded(cid, inputs, tol, run)
    return cases


def task_trig_limit(cfg) -> list[Case]:
    cases = []
    for n in range(4):
        cid = f"trig/limit/n={n}"
        inputs = {"n": n, "b": 1.0, "a": list(LIMIT_A)}

        def run(n=n, cid=cid, inputs=inputs):
            d = [ti.limit_defect(n, a, 1.0) for a in LIMIT_A]
            rise = max(0.0, d[1] - d[0], d[2] - d[1])
            ok = d[0] > d[1] > d[2]
            return [Case(cid, inputs, sf.wallis(n).value,
                         {f"defect_a={_fmt(a)}": v for a, v in zip(LIMIT_A, d)},
                         rise, rise / d[0] if d[0] else 0.0, 0.0, 0.0, PASS if ok else FAIL,
                         "" if ok else "defects not strictly decreasing")]

        cases += _guarded(cid, inputs, 0.0, run)
    return cases


# ---------------------------------------------------------------------------
# Fourier transform


def task_ft_grid(cfg) -> list[Case]:
    tol = tol_of(cfg, "fourier.oracle")
    cases = []
    for n in FT_DIMS:
        for a in FT_A:
            for t in FT_T:
                p = rft.RadialExpParams(n, a)
                closed = rft.ft_closed(p, t)
                inputs = {"dim": n, "a": a, "tnorm": t}
                for name, fn in (("sphere_reduction", rft.ft_sphere_reduction),
                                 ("subordination", rft.ft_subordination)):
                    cid = f"fourier/{name}/dim={n}/a={_fmt(a)}/t={_fmt(t)}"

                    def run(cid=cid, fn=fn, p=p, t=t, closed=closed, inputs=inputs, name=name):
                        res = _require(fn(p, t), cid)
                        return [make_case(cid, inputs, closed, {name: res.value.real}, res.value.real,
                                          closed, tol)]

                    cases += _guarded(cid, inputs, tol, run)
    return cases


def mc_seed(cfg, index: int) -> int:
    return int(cfg.get("seed", 0)) + index


def task_ft_monte_carlo(cfg) -> list[Case]:
    samples = int(cfg.get("mc_samples", 10**6))
    cases = []
    index = 0
    for n in FT_DIMS:
        for a in FT_A:
            for t in FT_T:
                p = rft.RadialExpParams(n, a)
                closed = rft.ft_closed(p, t)
                tvec = np.zeros(n)
                tvec[0] = t
                seed = mc_seed(cfg, index)
                index += 1
                res = rft.ft_monte_carlo(p, tvec, samples, seed)
                est = res.estimate.real
                gate = max(MC_SIGMAS * res.real_std_error, 4 * math.ulp(closed))
                cid = f"fourier/monte_carlo/dim={n}/a={_fmt(a)}/t={_fmt(t)}"
                inputs = {"dim": n, "a": a, "tnorm": t, "seed": seed, "n_samples": samples}
                case = make_case(cid, inputs, closed,
                                 {"monte_carlo": est, "std_error": res.real_std_error,
                                  "sine_part": res.estimate.imag},
                                 est, closed, 0.0, gate)
                cases.append(case)
    return cases


def task_ft_identities(cfg) -> list[Case]:
    cases = []
    tol = tol_of(cfg, "fourier.subordination_identity")
    for beta in (0.1, 1.0, 10.0):
        cid = f"fourier/subordination_identity/beta={_fmt(beta)}"

        def run(beta=beta, cid=cid):
            res = _require(rft.subordination_identity_check(beta), cid)
            want = math.exp(-beta)
            return [make_case(cid, {"beta": beta}, want, {"quadrature": res.value.real}, res.value.real,
                              want, tol)]

        cases += _guarded(cid, {"beta": beta}, tol, run)
    tol = tol_of(cfg, "fourier.volume")
    for n in FT_DIMS:
        cid = f"fourier/volume/dim={n}"

        def run(n=n, cid=cid):
            p = rft.RadialExpParams(n, 1.0)
            res = _require(rft.ft_volume_check(p), cid)
            want = rft.ft_closed(p, 0.0)
            return [make_case(cid, {"dim": n, "a": 1.0}, want, {"radial_quadrature": res.value.real},
                              res.value.real, want, tol)]

        cases += _guarded(cid, {"dim": n}, tol, run)
    tol = tol_of(cfg, "fourier.laplace")
    for n, s in ((1, 0.0), (2, 0.0), (1, 1.0), (3, 0.7)):
        cid = f"fourier/laplace_factor/n={n}/s={_fmt(s)}"
        inputs = {"n": n, "a": 1.0, "s": s}

        def run(n=n, s=s, cid=cid, inputs=inputs):
            want = rft.radial_laplace_factor(n, 1.0, s)
            res = _require(rft.radial_laplace_quadrature(n, 1.0, s), cid)
            d = abs(res.value - want)
            rel = d / abs(want)
            return [Case(cid, inputs, want.real,
                         {"quadrature_re": res.value.real, "quadrature_im": res.value.imag,
                          "closed_im": want.imag},
                         d, rel, tol, 0.0, PASS if rel <= tol else FAIL)]

        cases += _guarded(cid, inputs, tol, run)
    return cases


# ---------------------------------------------------------------------------
# harmonic superposition


def _harm(cfg):
    from . import harmonic

    return harmonic, float(cfg.get("harmonic_tol", harmonic.DEFAULT_TOL)), float(cfg.get("r_max", harmonic.DEFAULT_R_MAX))


def task_harmonic_calibration(cfg) -> list[Case]:
    h, htol, r_max = _harm(cfg)
    from .harmonic import superposition as hs

    tol = tol_of(cfg, "harmonic.stability")

    def run():
        rep = hs.measure_calibration(htol, r_max)
        out = []
        for p, v in zip(hs.STABILITY_POINTS, rep.stability_values):
            cid = "harmonic/calibration/t=" + ",".join(_fmt(c) for c in p)
            out.append(make_case(cid, {"t": list(p), "f": "one"}, 1.0,
                                 {"superposition": v, "kappa": rep.kappa,
                                  "kappa_ratio_to_printed": rep.ratio_to_printed},
                                 v, 1.0, tol, tol))
        return out

    return _guarded("harmonic/calibration", {}, tol, run)


def task_harmonic_point(cfg, point, functions=HARMONIC_FUNCTIONS) -> list[Case]:
    h, htol, r_max = _harm(cfg)
    tol = tol_of(cfg, "harmonic.poisson")
    label = ",".join(_fmt(c) for c in point)

    def run():
        fs = [h.LIBRARY[name] for name in functions]
        res = h.superposition_many(fs, point, htol, r_max)
        if not res.converged:
            raise ConvergenceError(f"superposition at t = {point} did not converge")
        out = []
        for f, v in zip(fs, res.values):
            ref = h.poisson_value(f, point)
            oracles = {"superposition": v, "poisson": ref}
            if f.extension is not None:
                oracles["exact_extension"] = f.extension(np.asarray(point))
            out.append(make_case(f"harmonic/poisson/f={f.name}/t={label}", {"f": f.name, "t": list(point)},
                                 None, oracles, v, ref, tol, tol))
        return out

    return _guarded(f"harmonic/poisson/t={label}", {"t": list(point)}, tol, run)


LINEARITY_POINT = (0.2, 0.4, 0.1)
LINEARITY_COEFFS = (0.7, -1.3)
PROBE_POINT = (0.3, 0.2, -0.1)
PROBE_TOL = 1e-8


def task_harmonic_linearity(cfg) -> list[Case]:
    h, htol, r_max = _harm(cfg)
    tol = tol_of(cfg, "harmonic.linearity")
    alpha, beta = LINEARITY_COEFFS

    def run():
        f, g = h.LIBRARY["x1"], h.LIBRARY["x2"]
        combo = f.scaled_sum(alpha, g, beta)
        res = h.superposition_many([f, g, combo], LINEARITY_POINT, htol, r_max)
        uf, ug, uc = res.values
        lin = alpha * uf + beta * ug
        return [make_case("harmonic/linearity", {"t": list(LINEARITY_POINT), "alpha": alpha, "beta": beta},
                          None, {"combined": uc, "alpha_uf_plus_beta_ug": lin}, uc, lin, tol)]

    return _guarded("harmonic/linearity", {}, tol, run)


def task_harmonic_cancellation(cfg) -> list[Case]:
    h, _, r_max = _harm(cfg)
    tol_im = tol_of(cfg, "harmonic.imag")
    tol_tr = tol_of(cfg, "harmonic.truncation")

    def run():
        fs = [h.LIBRARY["one"], h.LIBRARY["exp_x1"]]
        base = h.raw_superposition(fs, PROBE_POINT, PROBE_TOL, r_max)
        longer = h.raw_superposition(fs, PROBE_POINT, PROBE_TOL, 2 * r_max)
        if not (base.converged and longer.converged):
            raise ConvergenceError("cancellation probe did not converge")
        out = []
        for f, v, w in zip(fs, base.raw, longer.raw):
            inputs = {"f": f.name, "t": list(PROBE_POINT), "r_max": r_max, "tol": PROBE_TOL}
            ratio = abs(v.imag) / abs(v.real)
            out.append(Case(f"harmonic/imag_suppression/f={f.name}", inputs, None,
                            {"raw_re": v.real, "raw_im": v.imag}, abs(v.imag), ratio, tol_im, 0.0,
                            PASS if ratio <= tol_im else FAIL))
            out.append(make_case(f"harmonic/truncation/f={f.name}", inputs, None,
                                 {"r_max": v.real, "double_r_max": w.real}, w.real, v.real, tol_tr))
        return out

    return _guarded("harmonic/cancellation", {}, tol_im, run)


EQUIVARIANCE_AXIS = (1.0, 2.0, 2.0)
EQUIVARIANCE_POINT = (0.3, -0.2, 0.25)


def task_harmonic_equivariance(cfg) -> list[Case]:
    h, htol, r_max = _harm(cfg)
    from .sphere_geom import align_rotation

    tol = tol_of(cfg, "harmonic.equivariance")

    def run():
        rot = align_rotation(EQUIVARIANCE_AXIS)
        f = h.LIBRARY["exp_x1"]
        t = np.asarray(EQUIVARIANCE_POINT)
        plain = h.superposition_many([f], t, htol, r_max).values[0]
        turned = h.superposition_many([f.rotated(rot)], rot @ t, htol, r_max).values[0]
        return [make_case("harmonic/equivariance/f=exp_x1", {"t": list(EQUIVARIANCE_POINT),
                                                            "axis": list(EQUIVARIANCE_AXIS)},
                          None, {"u_f(t)": plain, "u_rot_f(rot_t)": turned}, turned, plain, tol, tol)]

    return _guarded("harmonic/equivariance", {}, tol, run)


# ---------------------------------------------------------------------------


def suite_tasks(name: str, thorough: bool = False) -> list[tuple]:
    """(callable, extra args) pairs making up a suite."""
    if name == "special":
        return [(task_wallis_beta, ()), (task_wallis_quadrature, ()), (task_wallis_recurrence, ()),
                (task_special_values, ())]
    if name == "trig":
        return [(task_trig_grid, (ti.REAL_B,)), (task_trig_grid, (ti.SQRT_FORM,)),
                (task_trig_grid, (ti.IMAGINARY_P,)), (task_trig_mu, ()), (task_trig_symmetry, ()),
                (task_trig_recurrence, ()), (task_trig_homogeneity, ()), (task_trig_limit, ())]
    if name == "fourier":
        return [(task_ft_grid, ()), (task_ft_monte_carlo, ()), (task_ft_identities, ())]
    if name == "harmonic":
        points = HARMONIC_POINTS if thorough else HARMONIC_POINTS[:HARMONIC_QUICK_POINTS]
        tasks = [(task_harmonic_calibration, ()), (task_harmonic_linearity, ()),
                 (task_harmonic_cancellation, ())]
        tasks += [(task_harmonic_point, (p,)) for p in points]
        if thorough:
            tasks.append((task_harmonic_point, ((0.0, 0.0, 0.0), ("exp_x1",))))
            tasks.append((task_harmonic_equivariance, ()))
        return tasks
    if name == "all":
        return [t for s in SUITES for t in suite_tasks(s, thorough)]
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")


def _run_task(task, cfg):
    fn, args = task
    return fn(cfg, *args)


def run_suite(name: str, cfg: dict, thorough: bool = False, jobs: int = 1) -> VerificationReport:
    tasks = suite_tasks(name, thorough)
    start = time.perf_counter()
    cases: list[Case] = []
    if jobs > 1 and len(tasks) > 1:
        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(_run_task, tasks, [cfg] * len(tasks)):
                cases += result
    else:
        for task in tasks:
            cases += _run_task(task, cfg)
    return VerificationReport(name, cases, time.perf_counter() - start)


__all__ = ["SUITES", "TOLERANCES", "run_suite", "suite_tasks", "ERROR"]
