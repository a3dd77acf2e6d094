"""Graph closure of the pencil map and chart-local tameness checks.

The blown-up total space is represented implicitly: a point of the graph
closure is a base point of P^n x P^n together with a fiber value [t, s]
subject to the incidence equation t * incidence = s * weighted, with the
whole projective line allowed over the base locus.  All smoothness and
criticality checks are chart-local, in the affine charts x_i = y_j = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartBoundary, InternalCheckFailed
from .linalg import ONE, ZERO, QMatrix, as_fraction, format_fraction
from .multipoly import MultiPoly
from .orbit import BiPoint, PencilForms, Spectrum, build_forms, sample_locus_points


@dataclass(frozen=True)
class GraphPoint:
    """Base point plus projective fiber value [t, s], fiber canonicalized
    like pencil values: (t, 1) when s != 0, else (1, 0)."""

    base: BiPoint
    fiber: tuple

    def __post_init__(self):
        t, s = (as_fraction(v) for v in self.fiber)
        if t == 0 and s == 0:
            raise ValueError("fiber coordinates cannot both vanish")
        fiber = (t / s, ONE) if s != 0 else (ONE, ZERO)
        object.__setattr__(self, "fiber", fiber)


def graph_contains(forms: PencilForms, point: GraphPoint) -> bool:
    """Membership in the graph closure: t * incidence(base) = s * weighted(base).

    Off the base locus this pins the fiber to the pencil value; over the base
    locus both sides vanish, so the whole exceptional line is accepted.
    """
    coords = point.base.coords()
    t, s = point.fiber
    return t * forms.incidence.evaluate(coords) == s * forms.weighted.evaluate(coords)


@dataclass(frozen=True)
class ChartPotential:
    """Local potential numerator/denominator in the chart x_i = y_j = 1.

    Chart variables are X_t (t != i) followed by Y_t (t != j), each block in
    increasing index order, 2n variables in total.
    """

    n: int
    i: int
    j: int
    numerator: MultiPoly
    denominator: MultiPoly


def chart_potential(spectrum: Spectrum, i, j) -> ChartPotential:
    n = spectrum.n
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"chart indices ({i}, {j}) out of range for n = {n}")
    nv = 2 * n
    x_slot = {t: pos for pos, t in enumerate(t for t in range(n + 1) if t != i)}
    y_slot = {t: n + pos for pos, t in enumerate(t for t in range(n + 1) if t != j)}
    numerator = MultiPoly.zero(nv)
    denominator = MultiPoly.zero(nv)
    for t in range(n + 1):
        exps = [0] * nv
        if t != i:
            exps[x_slot[t]] += 1
        if t != j:
            exps[y_slot[t]] += 1
        numerator = numerator + MultiPoly.monomial(nv, spectrum.diag[t], exps)
        denominator = denominator + MultiPoly.monomial(nv, 1, exps)
    return ChartPotential(n, i, j, numerator, denominator)


def chart_coordinates(point: BiPoint, i, j):
    """Affine coordinates of the point in the chart x_i = y_j = 1."""
    if point.x[i] == 0 or point.y[j] == 0:
        raise ValueError(f"point is outside the chart ({i}, {j})")
    xs = [point.x[t] / point.x[i] for t in range(len(point.x)) if t != i]
    ys = [point.y[t] / point.y[j] for t in range(len(point.y)) if t != j]
    return tuple(xs + ys)


def gradient_and_hessian(chart: ChartPotential, coords):
    """Exact gradient and Hessian of numerator/denominator at the point.

    Quotient rule evaluated pointwise; signals ChartBoundary when the
    denominator vanishes.  Returns (gradient, hessian, nondegenerate).
    """
    coords = tuple(as_fraction(v) for v in coords)
    num, den = chart.numerator, chart.denominator
    nv = num.nvars
    v0 = den.evaluate(coords)
    if v0 == 0:
        raise ChartBoundary("denominator vanishes at the requested point")
    u0 = num.evaluate(coords)
    du = [num.partial(k) for k in range(nv)]
    dv = [den.partial(k) for k in range(nv)]
    u1 = [p.evaluate(coords) for p in du]
    v1 = [p.evaluate(coords) for p in dv]
    grad = tuple((u1[k] * v0 - u0 * v1[k]) / v0**2 for k in range(nv))
    hess = [[ZERO] * nv for _ in range(nv)]
    for k in range(nv):
        for l in range(k, nv):
            ukl = du[k].partial(l).evaluate(coords)
            vkl = dv[k].partial(l).evaluate(coords)
            val = (
                ukl / v0
                - (u1[k] * v1[l] + u1[l] * v1[k]) / v0**2
                + 2 * u0 * v1[k] * v1[l] / v0**3
                - u0 * vkl / v0**2
            )
            hess[k][l] = hess[l][k] = val
    hessian = QMatrix(hess, cols=nv)
    return grad, hessian, hessian.det() != 0


def chart_pencil_rank(chart: ChartPotential, coords) -> int:
    """Rank of the differentials of the two local pencil generators."""
    coords = tuple(as_fraction(v) for v in coords)
    nv = chart.numerator.nvars
    rows = [
        [chart.numerator.partial(k).evaluate(coords) for k in range(nv)],
        [chart.denominator.partial(k).evaluate(coords) for k in range(nv)],
    ]
    return QMatrix(rows, cols=nv).rank()


def no_critical_on_exceptional(spectrum: Spectrum, seed=0, count=50) -> dict:
    """Certificate that the extended potential is submersive along the
    exceptional fibers: at seeded base-locus points the local generators have
    independent differentials (rank 2), which makes the blown-up map smooth
    over those points.  Vacuous for n = 1, where the sampler finds no points.
    """
    n = spectrum.n
    if n < 2:
        return {
            "status": "vacuous",
            "n": n,
            "seed": seed,
            "count": 0,
            "samples": [],
            "ranks": [],
            "discrepancies": [],
            "all_rank_two": True,
            "note": "no exceptional locus to sample for n = 1",
        }
    charts = {}
    samples = []
    ranks = []
    for pt in sample_locus_points(spectrum, "base", seed=seed, count=count):
        i = next(t for t, v in enumerate(pt.x) if v != 0)
        j = next(t for t, v in enumerate(pt.y) if v != 0)
        if (i, j) not in charts:
            charts[i, j] = chart_potential(spectrum, i, j)
        chart = charts[i, j]
        coords = chart_coordinates(pt, i, j)
        if chart.numerator.evaluate(coords) != 0 or chart.denominator.evaluate(coords) != 0:
            raise InternalCheckFailed("base-locus sample left the locus in the chart")
        rank = chart_pencil_rank(chart, coords)
        samples.append({"point": pt.to_json(), "chart": [i, j], "rank": rank})
        ranks.append(rank)
    return {
        "status": "ok",
        "n": n,
        "seed": seed,
        "count": len(samples),
        "samples": samples,
        "ranks": ranks,
        "discrepancies": [s for s in samples if s["rank"] != 2],
        "all_rank_two": all(r == 2 for r in ranks),
    }


def hessian_certificates(spectrum: Spectrum) -> list:
    """Gradient/Hessian data at each critical point, in its diagonal chart."""
    n = spectrum.n
    origin = (ZERO,) * (2 * n)
    out = []
    for i in range(n + 1):
        chart = chart_potential(spectrum, i, i)
        grad, hessian, nondeg = gradient_and_hessian(chart, origin)
        out.append(
            {
                "index": i,
                "value": format_fraction(spectrum.diag[i]),
                "chart": [i, i],
                "gradient_zero": all(g == 0 for g in grad),
                "hessian_det": format_fraction(hessian.det()),
                "nondegenerate": nondeg,
            }
        )
    return out


@dataclass(frozen=True)
class DivisorClass:
    """Class (a, b; e) on the two hyperplane pullbacks and the exceptional divisor."""

    h1: int
    h2: int
    e: int

    def __add__(self, other):
        return DivisorClass(self.h1 + other.h1, self.h2 + other.h2, self.e + other.e)

    def to_list(self):
        return [self.h1, self.h2, self.e]


def divisor_report(n) -> dict:
    """Divisor-class bookkeeping on the blown-up space.

    Blow-up adjunction along the smooth codimension-2 center gives
    -K = (n+1, n+1; -1); the boundary is the strict transform of the
    incidence divisor plus the exceptional divisor, total class (1, 1; 0).
    The two disagree for every n; the report flags that discrepancy instead
    of adjusting either side.  For n = 1 the sampler treats the center as
    empty, so no blow-up happens and the e-coefficients are zero.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n >= 2:
        minus_canonical = DivisorClass(n + 1, n + 1, -1)
        strict_transform = DivisorClass(1, 1, -1)
        exceptional = DivisorClass(0, 0, 1)
    else:
        minus_canonical = DivisorClass(2, 2, 0)
        strict_transform = DivisorClass(1, 1, 0)
        exceptional = DivisorClass(0, 0, 0)
    boundary = strict_transform + exceptional
    match = boundary == minus_canonical
    report = {
        "n": n,
        "anticanonical": minus_canonical.to_list(),
        "strict_transform": strict_transform.to_list(),
        "exceptional": exceptional.to_list(),
        "boundary": boundary.to_list(),
        "pole_divisor": {"class": strict_transform.to_list(), "multiplicity": 1},
        "anticanonical_match": match,
    }
    if not match:
        report["discrepancy"] = {
            "kind": "boundary-not-anticanonical",
            "boundary": boundary.to_list(),
            "anticanonical": minus_canonical.to_list(),
            "note": (
                "open question: the boundary divisor class does not equal the "
                "anticanonical class, yet the tameness checks below all pass; "
                "reported as found, not repaired"
            ),
        }
    return report
