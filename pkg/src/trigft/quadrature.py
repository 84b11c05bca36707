"""Numerical integration oracles.

Everything here is independent of the closed forms elsewhere in the
package: a globally adaptive Gauss-Kronrod (7/15) integrator for complex
integrands, a semi-infinite variant, nested tensor-product integration on
boxes of dimension <= 4, a box-adaptive cubature driver for vectorized
integrands, and seeded importance-sampling Monte Carlo.

Integrands are called with numpy arrays of abscissae and must return an
array of the same shape (a scalar is broadcast).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NonFiniteIntegrandError

# Kronrod 15-point abscissae on the half range [0, 1] (QUADPACK qk15); the
# Gauss 7-point abscissae are entries 1, 3, 5 and 7.  Kept as strings so the
# multiprecision path gets every published digit.
_XGK = (
    "0.991455371120812639206854697526329",
    "0.949107912342758524526189684047851",
    "0.864864423359769072789712788640926",
    "0.741531185599394439863864773280788",
    "0.586087235467691130294144845693013",
    "0.405845151377397166906606412076961",
    "0.207784955007898467600689403773245",
    "0.000000000000000000000000000000000",
)
_WGK = (
    "0.022935322010529224963732008058970",
    "0.063092092629978553290700663189204",
    "0.104790010322250183839876322541518",
    "0.140653259715525918745189590510238",
    "0.169004726639267902826583426598550",
    "0.190350578064785409913256402421014",
    "0.204432940075298892414161999234649",
    "0.209482141084727828012999174891714",
)
_WG = (
    "0.129484966168869693270611432679082",
    "0.279705391489276667901467771423780",
    "0.381830050505118944950369775488975",
    "0.417959183673469387755102040816327",
)
XGK = np.array([float(v) for v in _XGK])
WGK = np.array([float(v) for v in _WGK])
WG = np.array([float(v) for v in _WG])
# digits available in the constants above
MAX_DPS = 32

# Full 15-point rule on [-1, 1], ascending.
NODES15 = np.concatenate([-XGK[:-1], XGK[::-1]])
WEIGHTS_K15 = np.concatenate([WGK[:-1], WGK[::-1]])
WEIGHTS_G7 = np.zeros(15)
_gauss_idx = [1, 3, 5, 7, 9, 11, 13]
WEIGHTS_G7[_gauss_idx] = np.concatenate([WG[:-1], WG[::-1]])

RULE_POINTS = 15
SUBDIVISION_LIMIT = 2000
DEFAULT_ABS_TOL = 1e-14
DEFAULT_REL_TOL = 1e-12


@dataclass(frozen=True)
class Tolerance:
    """Requested accuracy: met when error <= max(abs_tol, rel_tol * |value|)."""

    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL

    def bound(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


def as_tolerance(tol) -> Tolerance:
    """Normalize ``None``, a float, an ``(abs, rel)`` pair or a Tolerance.

    A bare float is used for both the absolute and the relative part.
    """
    if tol is None:
        return Tolerance()
    if isinstance(tol, Tolerance):
        return tol
    if isinstance(tol, (tuple, list)):
        return Tolerance(float(tol[0]), float(tol[1]))
    return Tolerance(float(tol), float(tol))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_error_estimate: float
    n_evals: int
    converged: bool
    n_intervals: int = 1

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def _evaluate(f, x):
    y = f(x)
    y = np.asarray(y)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise NonFiniteIntegrandError(f"integrand is not finite at x={bad!r}", float(bad))
    return y


def gk15(f, lo: float, hi: float):
    """Apply the 7/15 Gauss-Kronrod pair once on [lo, hi].

    Returns (kronrod value, |kronrod - gauss|).
    """
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center + half * NODES15
    y = _evaluate(f, x)
    if np.iscomplexobj(y):
        # real and imaginary parts summed separately, exactly as a real integrand would be
        re, im = np.ascontiguousarray(y.real), np.ascontiguousarray(y.imag)
        k = complex(half * np.dot(WEIGHTS_K15, re), half * np.dot(WEIGHTS_K15, im))
        g = complex(half * np.dot(WEIGHTS_G7, re), half * np.dot(WEIGHTS_G7, im))
    else:
        k = complex(half * np.dot(WEIGHTS_K15, y))
        g = complex(half * np.dot(WEIGHTS_G7, y))
    return k, abs(k - g)


def _mp_rule(dps):
    import mpmath

    with mpmath.workdps(dps):
        x = [mpmath.mpf(v) for v in _XGK]
        wk = [mpmath.mpf(v) for v in _WGK]
        wg = [mpmath.mpf(v) for v in _WG]
        nodes = [-v for v in x[:-1]] + x[::-1]
        k_weights = wk[:-1] + wk[::-1]
        g_weights = [mpmath.mpf(0)] * 15
        for slot, w in zip(_gauss_idx, wg[:-1] + wg[::-1]):
            g_weights[slot] = w
    return nodes, k_weights, g_weights


def _gk15_mp(f, lo, hi, rule):
    import mpmath

    nodes, k_weights, g_weights = rule
    center = (lo + hi) / 2
    half = (hi - lo) / 2
    y = f([center + half * t for t in nodes])
    for t, v in zip(nodes, y):
        if not mpmath.isfinite(v):
            x_bad = float(center + half * t)
            raise NonFiniteIntegrandError(f"integrand is not finite at x={x_bad!r}", x_bad)
    k = half * mpmath.fsum(w * v for w, v in zip(k_weights, y))
    g = half * mpmath.fsum(w * v for w, v in zip(g_weights, y))
    return mpmath.mpc(k), float(abs(k - g))


def integrate_interval(
    f: Callable,
    lo: float,
    hi: float,
    tol=None,
    limit: int = SUBDIVISION_LIMIT,
    dps: int | None = None,
) -> QuadResult:
    """Globally adaptive Gauss-Kronrod quadrature of ``f`` over [lo, hi].

    The interval with the largest error estimate is bisected until the
    summed estimate meets ``tol`` or ``limit`` intervals exist; the latter
    returns ``converged=False`` instead of raising.

    With ``dps`` set, the same algorithm runs in mpmath arithmetic at that
    many decimal digits (at most MAX_DPS).  ``f`` then receives a list of
    mpf abscissae and returns a list of values.  This is for integrands
    whose value is many orders of magnitude below their L1 norm, where
    double-precision summation cannot resolve the result.
    """
    if dps is not None:
        return _integrate_interval_mp(f, lo, hi, as_tolerance(tol), limit, int(dps))
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise DomainError(f"integrate_interval needs lo < hi, got [{lo}, {hi}]")
    tol = as_tolerance(tol)

    value, err = gk15(f, lo, hi)
    n_evals = RULE_POINTS
    # heap entries: (-err, seq, lo, hi, value, err); seq keeps ordering deterministic
    heap = [(-err, 0, lo, hi, value, err)]
    seq = 1
    stuck = []
    total_value, total_err = value, err
    while total_err > tol.bound(total_value):
        if len(heap) + len(stuck) >= limit or not heap:
            break
        _, _, a, b, v, e = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            stuck.append((a, b, v, e))
            continue
        v1, e1 = gk15(f, a, mid)
        v2, e2 = gk15(f, mid, b)
        n_evals += 2 * RULE_POINTS
        heapq.heappush(heap, (-e1, seq, a, mid, v1, e1))
        heapq.heappush(heap, (-e2, seq + 1, mid, b, v2, e2))
        seq += 2
        total_value += v1 + v2 - v
        total_err += e1 + e2 - e
    # resum to shed drift from the incremental updates
    pieces = [(entry[4], entry[5]) for entry in heap] + [(s[2], s[3]) for s in stuck]
    total_value = complex(
        math.fsum(v.real for v, _ in pieces), math.fsum(v.imag for v, _ in pieces)
    )
    total_err = math.fsum(e for _, e in pieces)
    return QuadResult(
        value=total_value,
        abs_error_estimate=float(total_err),
        n_evals=n_evals,
        converged=bool(total_err <= tol.bound(total_value)),
        n_intervals=len(pieces),
    )


def _integrate_interval_mp(f, lo, hi, tol, limit, dps):
    import mpmath

    if not 15 <= dps <= MAX_DPS:
        raise DomainError(f"dps must lie in [15, {MAX_DPS}], got {dps}")
    with mpmath.workdps(dps):
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        if not lo < hi:
            raise DomainError(f"integrate_interval needs lo < hi, got [{lo}, {hi}]")
        rule = _mp_rule(dps)
        value, err = _gk15_mp(f, lo, hi, rule)
        n_evals = RULE_POINTS
        heap = [(-err, 0, lo, hi, value, err)]
        seq = 1
        total_value, total_err = value, err
        while total_err > tol.bound(complex(total_value)) and len(heap) < limit:
            _, _, a, b, v, e = heapq.heappop(heap)
            mid = (a + b) / 2
            v1, e1 = _gk15_mp(f, a, mid, rule)
            v2, e2 = _gk15_mp(f, mid, b, rule)
            n_evals += 2 * RULE_POINTS
            heapq.heappush(heap, (-e1, seq, a, mid, v1, e1))
            heapq.heappush(heap, (-e2, seq + 1, mid, b, v2, e2))
            seq += 2
            total_value = mpmath.fsum(entry[4] for entry in heap)
            total_err = math.fsum(entry[5] for entry in heap)
        value = complex(total_value)
    return QuadResult(
        value=value,
        abs_error_estimate=float(total_err),
        n_evals=n_evals,
        converged=bool(total_err <= tol.bound(value)),
        n_intervals=len(heap),
    )


def integrate_semi_infinite(f: Callable, tol=None, lo: float = 0.0, scale: float = 1.0,
                            limit: int = SUBDIVISION_LIMIT) -> QuadResult:
    """Integrate ``f`` over (lo, inf).

    Uses u = lo + scale * s / (1 - s), mapping (lo, inf) onto (0, 1).  For
    integrands decaying like exp(-c u) the mapped integrand and all its
    derivatives vanish at s = 1.  The Kronrod nodes are interior, so
    neither u = lo nor s = 1 is ever evaluated.
    """
    if scale <= 0:
        raise DomainError(f"scale must be positive, got {scale}")

    def mapped(s):
        one_minus = 1.0 - s
        u = lo + scale * s / one_minus
        with np.errstate(over="ignore", invalid="ignore"):
            y = np.asarray(f(u)) * (scale / one_minus**2)
        return y

    return integrate_interval(mapped, 0.0, 1.0, tol, limit)


def integrate_tensor(f: Callable, box: Sequence[Sequence[float]], tol=None,
                     limit: int = SUBDIVISION_LIMIT) -> QuadResult:
    """Nested adaptive integration over a box in up to four dimensions.

    ``f`` takes one coordinate argument per dimension.  The last coordinate
    is integrated innermost (vectorized); every outer level is an adaptive
    1D integral whose integrand evaluates the level below point by point.
    Errors compose by summation: each level adds its own estimate to its
    width times the mean estimate reported by the level below.  Adaptive
    refinement concentrates nodes where the inner errors are large, so the
    mean leans conservative without the blow-up of width times the maximum
    when one inner integral dominates.
    """
    box = [(float(lo), float(hi)) for lo, hi in box]
    d = len(box)
    if not 1 <= d <= 4:
        raise DomainError(f"integrate_tensor supports 1 to 4 dimensions, got {d}")
    for lo, hi in box:
        if not lo < hi:
            raise DomainError(f"empty box side [{lo}, {hi}]")
    tol = as_tolerance(tol)
    widths = [hi - lo for lo, hi in box]
    stats = {"n_evals": 0, "converged": True}

    def level(k, outer):
        # share the budget between levels; inner absolute tolerance is per unit outer volume
        outer_volume = math.prod(widths[:k])
        sub_tol = Tolerance(tol.abs_tol / (d * outer_volume), tol.rel_tol / d)
        if k == d - 1:
            def g(x):
                return f(*outer, x)
            res = integrate_interval(g, *box[k], sub_tol, limit)
            stats["n_evals"] += res.n_evals
            stats["converged"] &= res.converged
            return res.value, res.abs_error_estimate

        inner_errs = []

        def g(x):
            out = np.empty(x.shape, dtype=complex)
            for i, xi in enumerate(x):
                out[i], e = level(k + 1, outer + (float(xi),))
                inner_errs.append(e)
            return out

        res = integrate_interval(g, *box[k], sub_tol, limit)
        stats["converged"] &= res.converged
        return res.value, res.abs_error_estimate + widths[k] * math.fsum(inner_errs) / len(inner_errs)

    value, err = level(0, ())
    return QuadResult(
        value=complex(value),
        abs_error_estimate=float(err),
        n_evals=stats["n_evals"],
        converged=bool(stats["converged"] and err <= tol.bound(value)),
    )


# ---------------------------------------------------------------------------
# box-adaptive cubature for vectorized, possibly vector-valued integrands


@dataclass(frozen=True)
class CubatureResult:
    values: np.ndarray
    abs_errors: np.ndarray
    n_evals: int
    n_boxes: int
    converged: bool


def tensor_gk15_rule(f: Callable, lo, hi):
    """Tensor 15^d Kronrod rule on the box [lo, hi] for a vectorized ``f``.

    ``f`` receives d broadcastable coordinate arrays and returns either an
    array of shape (15,)*d or (m,) + (15,)*d for m components.  Returns
    (values (m,), per-dimension errors (m, d), n_evals).  The error along
    dimension j is |K - K_j| where K_j swaps the Kronrod weights of that
    dimension for the embedded Gauss weights.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = lo.size
    half = 0.5 * (hi - lo)
    center = 0.5 * (hi + lo)
    coords = []
    for j in range(d):
        shape = [1] * d
        shape[j] = RULE_POINTS
        coords.append((center[j] + half[j] * NODES15).reshape(shape))
    vals = np.asarray(f(*coords))
    if vals.ndim == d:
        vals = vals[None]
    vals = np.broadcast_to(vals, (vals.shape[0],) + (RULE_POINTS,) * d)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrandError("cubature integrand is not finite", None)
    return contract_tensor_rule(vals, half) + (RULE_POINTS**d,)


def contract_tensor_rule(vals, half):
    """Contract an (m, 15, ..., 15) value grid with Kronrod/Gauss weights."""
    d = vals.ndim - 1
    jac = float(np.prod(half))
    k = vals
    for _ in range(d):
        k = k @ WEIGHTS_K15  # contracts the trailing axis
    k = k * jac
    errs = np.empty((vals.shape[0], d))
    for j in range(d):
        g = vals
        # contract trailing axes one at a time; axis index counts from the last
        for axis in range(d - 1, -1, -1):
            w = WEIGHTS_G7 if axis == j else WEIGHTS_K15
            g = g @ w
        errs[:, j] = np.abs(k - g * jac)
    return k, errs


def cubature_adaptive(rule: Callable, box, tol=None, initial_splits=None,
                      max_boxes: int = 400) -> CubatureResult:
    """Globally adaptive box subdivision driven by a tensor rule.

    ``rule(lo, hi)`` returns (values, per-dimension errors, n_evals) as
    :func:`tensor_gk15_rule` does.  The box whose weighted error is largest
    is bisected along its worst dimension until every component meets
    ``tol`` or ``max_boxes`` is reached (then ``converged=False``).

    ``initial_splits`` optionally lists, per dimension, interior cut points
    used to pre-partition the box.
    """
    tol = as_tolerance(tol)
    box = np.asarray(box, dtype=float)
    d = box.shape[0]
    cuts = []
    for j in range(d):
        pts = [box[j, 0]]
        if initial_splits and initial_splits[j]:
            pts += [float(c) for c in initial_splits[j]]
        pts.append(box[j, 1])
        cuts.append(pts)
    starts = [()]
    for j in range(d):
        starts = [s + ((cuts[j][i], cuts[j][i + 1]),) for s in starts for i in range(len(cuts[j]) - 1)]

    entries = []
    n_evals = 0
    for sides in starts:
        lo = np.array([a for a, _ in sides])
        hi = np.array([b for _, b in sides])
        v, e, n = rule(lo, hi)
        n_evals += n
        entries.append([lo, hi, v, e])

    def totals():
        vals = sum(en[2] for en in entries)
        errs = sum(en[3].sum(axis=1) for en in entries)
        return vals, errs

    vals, errs = totals()
    weights = 1.0 / np.array([tol.bound(v) for v in vals])
    heap = []
    for idx, en in enumerate(entries):
        heapq.heappush(heap, (-float(en[3].sum(axis=1) @ weights), idx))
    converged = False
    while True:
        bounds = np.array([tol.bound(v) for v in vals])
        if np.all(errs <= bounds):
            converged = True
            break
        if len(entries) >= max_boxes or not heap:
            break
        _, idx = heapq.heappop(heap)
        lo, hi, v, e = entries[idx]
        j = int(np.argmax(weights @ e))
        mid = 0.5 * (lo[j] + hi[j])
        hi_left = hi.copy()
        hi_left[j] = mid
        lo_right = lo.copy()
        lo_right[j] = mid
        vl, el, nl = rule(lo, hi_left)
        vr, er, nr = rule(lo_right, hi)
        n_evals += nl + nr
        entries[idx] = [lo, hi_left, vl, el]
        entries.append([lo_right, hi, vr, er])
        vals = vals - v + vl + vr
        errs = errs - e.sum(axis=1) + el.sum(axis=1) + er.sum(axis=1)
        heapq.heappush(heap, (-float(el.sum(axis=1) @ weights), idx))
        heapq.heappush(heap, (-float(er.sum(axis=1) @ weights), len(entries) - 1))
    vals, errs = totals()
    return CubatureResult(
        values=np.asarray(vals, dtype=complex),
        abs_errors=np.asarray(errs, dtype=float),
        n_evals=n_evals,
        n_boxes=len(entries),
        converged=converged,
    )


# ---------------------------------------------------------------------------
# Monte Carlo

MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class McResult:
    estimate: complex
    std_error: float
    n_samples: int
    seed: int
    real_std_error: float = 0.0
    imag_std_error: float = 0.0

    def scaled(self, factor: float) -> "McResult":
        factor = abs(float(factor))
        return McResult(
            self.estimate * factor, self.std_error * factor, self.n_samples, self.seed,
            self.real_std_error * factor, self.imag_std_error * factor,
        )


class ExponentialRadialSampler:
    """Density proportional to exp(-rate |x|) on R^dim.

    Radius ~ Gamma(shape=dim, rate), direction uniform on the unit sphere
    from normalized Gaussian vectors (a random sign when dim == 1).
    """

    def __init__(self, dim: int, rate: float):
        if dim < 1 or rate <= 0:
            raise DomainError(f"need dim >= 1 and rate > 0, got {dim}, {rate}")
        self.dim = int(dim)
        self.rate = float(rate)
        # integral of exp(-rate |x|) over R^dim = area(S^{dim-1}) (dim-1)! / rate^dim
        area = 2 * math.pi ** (dim / 2) / math.gamma(dim / 2)
        self.normalizer = area * math.factorial(dim - 1) / self.rate**dim

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        radius = rng.gamma(self.dim, 1.0 / self.rate, size)
        direction = rng.standard_normal((size, self.dim))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        return direction * radius[:, None]

    def density(self, x: np.ndarray) -> np.ndarray:
        return np.exp(-self.rate * np.linalg.norm(x, axis=-1)) / self.normalizer


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    # one PCG64 substream per (seed, chunk index): chunk results do not depend on scheduling
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def _merge(stats, chunk):
    # Chan et al. pairwise merge of (count, mean, M2)
    n_a, mean_a, m2_a = stats
    n_b = chunk.size
    mean_b = chunk.mean()
    m2_b = float(np.sum((chunk - mean_b) ** 2))
    n = n_a + n_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (n_b / n)
    m2 = m2_a + m2_b + delta * delta * (n_a * n_b / n)
    return n, mean, m2


def monte_carlo_nd(f: Callable | None, sampler, n_samples: int, seed: int,
                   ratio: Callable | None = None) -> McResult:
    """Importance-sampling estimate of the integral of ``f`` over R^n.

    Samples come from ``sampler`` in fixed-size chunks, chunk k drawing from
    the PCG64 substream seeded by (seed, k), so the estimate is bitwise
    reproducible for a given (seed, n_samples).  Pass ``ratio`` instead of
    ``f`` when f / density is known in closed form.
    """
    if (f is None) == (ratio is None):
        raise ValueError("pass exactly one of f and ratio")
    if n_samples < 1:
        raise DomainError(f"n_samples must be positive, got {n_samples}")
    if ratio is None:
        def ratio(x):
            return f(x) / sampler.density(x)

    re_stats = (0, 0.0, 0.0)
    im_stats = (0, 0.0, 0.0)
    done = 0
    chunk_index = 0
    while done < n_samples:
        size = min(MC_CHUNK, n_samples - done)
        x = sampler.sample(_chunk_rng(seed, chunk_index), size)
        w = np.asarray(ratio(x))
        w = np.broadcast_to(w, (size,))
        finite = np.isfinite(w)
        if not np.all(finite):
            bad = done + int(np.argmin(finite))
            raise NonFiniteIntegrandError(f"non-finite Monte Carlo sample at index {bad}", bad)
        re_stats = _merge(re_stats, np.real(w).astype(float))
        im_stats = _merge(im_stats, np.imag(w).astype(float) if np.iscomplexobj(w) else np.zeros(size))
        done += size
        chunk_index += 1

    n = n_samples
    var_re = re_stats[2] / (n - 1) if n > 1 else 0.0
    var_im = im_stats[2] / (n - 1) if n > 1 else 0.0
    return McResult(
        estimate=complex(re_stats[1], im_stats[1]),
        std_error=math.sqrt((var_re + var_im) / n),
        n_samples=n,
        seed=int(seed),
        real_std_error=math.sqrt(var_re / n),
        imag_std_error=math.sqrt(var_im / n),
    )
