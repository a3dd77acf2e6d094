"""The three Landau-Ginzburg Hodge-number diamonds and their cross-checks.

For the minimal-orbit models the relative cohomology sits in the single
middle degree and the monodromy logarithm at infinity is trivial (no critical
points over the exceptional locus or on the fiber at infinity), so all three
diamonds collapse to the single entry n+1 at (n, n).  The h-diamond reads
graded pieces of monodromy weight filtrations on relative cohomology, the
i-diamond counts twist-local contributions of nondegenerate critical points,
and the f-diamond equals the h-diamond by the equality route; the report
checks the anti-diagonal sum identity and entrywise equality, and carries the
open-question findings (boundary class, growth condition at infinity) verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import divisor_report, hessian_certificates, no_critical_on_exceptional
from .errors import DegenerateCriticalPoint, InternalCheckFailed
from .hodge import BLOWUP_RULE, CohomologyProfile, relative_profile
from .linalg import QMatrix, as_fraction, format_fraction
from .orbit import Spectrum, critical_points
from .weights import nilpotent_op, weight_filtration

GROWTH_PASS = "pass"
GROWTH_FAIL = "strict-failure"
GROWTH_VACUOUS = "vacuous"


@dataclass
class RelativeData:
    """Relative cohomology with a nilpotent operator per nonzero degree.

    dim_y is the complex dimension of the total space (2n for the minimal
    orbit); each operator must satisfy N^(degree+1) = 0.
    """

    dim_y: int
    profile: CohomologyProfile

    def __post_init__(self):
        ops = self.profile.operators or {}
        for degree, dim in self.profile.dims.items():
            if dim <= 0:
                continue
            if degree not in ops:
                raise ValueError(f"degree {degree} has dimension {dim} but no operator")
            matrix = ops[degree]
            if matrix.rows != dim or matrix.cols != dim:
                raise ValueError(
                    f"operator at degree {degree} is {matrix.rows}x{matrix.cols}, want {dim}x{dim}"
                )
            if nilpotent_op(matrix).index > degree:
                raise ValueError(
                    f"operator at degree {degree} violates the nilpotency bound N^(d+1) = 0"
                )

    def dim(self, degree):
        return self.profile.dim(degree)

    def operator(self, degree) -> QMatrix:
        return (self.profile.operators or {})[degree]


def lg_relative_data(n, dims) -> RelativeData:
    """Relative data for the minimal-orbit model: trivial operator everywhere
    (no critical points at infinity), on the supplied profile."""
    operators = {degree: QMatrix.zero(d, d) for degree, d in dims.items() if d > 0}
    return RelativeData(2 * n, CohomologyProfile(dict(dims), operators))


@dataclass
class KKPDiamond:
    """One of the three diamond families: entries (p, q) -> positive integer."""

    kind: str
    dim_y: int
    entries: dict
    notes: list = field(default_factory=list)

    def antidiagonal_sums(self):
        out = {}
        for (p, q), value in self.entries.items():
            out[p + q] = out.get(p + q, 0) + value
        return out

    def to_json(self):
        return {f"({p},{q})": v for (p, q), v in sorted(self.entries.items())}


def growth_at_infinity_check(data: RelativeData) -> dict:
    """Per-degree report on the growth condition for the operator at infinity:
    in degree D+a it asks N^(D-|a|) != 0 and N^(D-|a|+1) = 0.  Degrees with no
    cohomology are vacuous; failures are reported, never patched."""
    D = data.dim_y
    per_degree = []
    verdicts = set()
    for degree in range(0, 2 * D + 1):
        a = degree - D
        dim = data.dim(degree)
        if dim == 0:
            per_degree.append({"a": a, "degree": degree, "status": GROWTH_VACUOUS})
            continue
        power = D - abs(a)
        matrix = data.operator(degree)
        nonzero_holds = power >= 0 and not (matrix**power).is_zero()
        vanishing_holds = power < 0 or (matrix ** (power + 1)).is_zero()
        status = GROWTH_PASS if (nonzero_holds and vanishing_holds) else GROWTH_FAIL
        verdicts.add(status)
        per_degree.append(
            {
                "a": a,
                "degree": degree,
                "dim": dim,
                "required_nonzero_power": power,
                "nonzero_holds": nonzero_holds,
                "vanishing_holds": vanishing_holds,
                "status": status,
            }
        )
    if GROWTH_FAIL in verdicts:
        verdict = GROWTH_FAIL
    elif GROWTH_PASS in verdicts:
        verdict = GROWTH_PASS
    else:
        verdict = GROWTH_VACUOUS
    return {"verdict": verdict, "per_degree": per_degree}


def h_diamond(data: RelativeData) -> KKPDiamond:
    """Diamond of graded dimensions of monodromy weight filtrations.

    For p, q in [0, D] with a = p - q, the entry at (p, D - q) reads the
    graded piece of weight 2(D-p) (a >= 0, center D-a) or 2(D-q) (a < 0,
    center D+a) of the filtration of the operator on degree D+a.
    """
    D = data.dim_y
    entries = {}
    cache = {}
    for p in range(D + 1):
        for q in range(D + 1):
            a = p - q
            degree = D + a
            if data.dim(degree) == 0:
                continue
            center = D - a if a >= 0 else D + a
            weight = 2 * (D - p) if a >= 0 else 2 * (D - q)
            key = (degree, center)
            if key not in cache:
                cache[key] = weight_filtration(data.operator(degree), center)
            graded = cache[key].graded_dims()
            value = graded[weight] if 0 <= weight < len(graded) else 0
            if value:
                entries[p, D - q] = value
    return KKPDiamond("h", D, entries)


@dataclass(frozen=True)
class MorsePoint:
    value: Fraction
    multiplicity: int
    nondegenerate: bool


def i_diamond(morse, dim_y) -> KKPDiamond:
    """Twist-local count: each nondegenerate critical point is a sum-of-squares
    model whose loop monodromy is a single twist with logarithm [[0,1],[0,0]],
    a one-step filtration contributing one unit at the middle entry."""
    if dim_y % 2:
        raise ValueError(f"the total space dimension must be even, got {dim_y}")
    half = dim_y // 2
    total = 0
    rationale = []
    for point in morse:
        if not point.nondegenerate:
            raise DegenerateCriticalPoint(
                f"critical value {format_fraction(as_fraction(point.value))} is degenerate; "
                "the twist-local count does not apply"
            )
        total += point.multiplicity
        rationale.append(
            {
                "value": format_fraction(as_fraction(point.value)),
                "multiplicity": point.multiplicity,
                "local_model": "z_1^2 + ... + z_%d^2" % dim_y,
                "twist_log": [[0, 1], [0, 0]],
                "filtration_steps": 1,
                "contributes_at": [half, half],
            }
        )
    entries = {(half, half): total} if total else {}
    return KKPDiamond("i", dim_y, entries, notes=rationale)


def f_diamond(h: KKPDiamond) -> KKPDiamond:
    """Copy of the h-diamond under the equality route (dimensions of the Hodge
    graded pieces of the relative cohomology), recorded as such rather than
    recomputed from logarithmic forms."""
    return KKPDiamond(
        "f",
        h.dim_y,
        dict(h.entries),
        notes=["by the equality theorem with the h-diamond, not by direct sheaf computation"],
    )


def sum_identity_holds(diamond: KKPDiamond, dims) -> bool:
    """Anti-diagonal sums of the diamond match the relative profile in every degree."""
    sums = diamond.antidiagonal_sums()
    for m in range(0, 2 * diamond.dim_y + 1):
        if sums.get(m, 0) != dims.get(m, 0):
            return False
    return True


def kkp_report(spectrum: Spectrum, seed=0, exceptional_samples=50, operators=None) -> dict:
    """Full pipeline: critical structure, tameness certificates, relative
    profile, the three diamonds, and every cross-check, as one JSON-ready
    report.  `operators` optionally overrides the operator at infinity per
    degree (exploratory hook); the default is the trivial operator, justified
    by the absence of critical points over the exceptional locus.
    """
    n = spectrum.n
    D = 2 * n
    crit = critical_points(spectrum)
    hessians = hessian_certificates(spectrum)
    morse = [
        MorsePoint(value, 1, cert["nondegenerate"])
        for (_, value), cert in zip(crit, hessians)
    ]
    exceptional = no_critical_on_exceptional(spectrum, seed=seed, count=exceptional_samples)
    relative = relative_profile(n)
    dims = dict(relative.dims)
    if operators is None:
        data = lg_relative_data(n, dims)
    else:
        data = RelativeData(D, CohomologyProfile(dims, dict(operators)))

    h = h_diamond(data)
    i = i_diamond(morse, D)
    f = f_diamond(h)
    growth = growth_at_infinity_check(data)
    divisors = divisor_report(n)

    equality = h.entries == f.entries == i.entries
    sum_identity = all(sum_identity_holds(d, dims) for d in (h, f, i))
    center_value = h.entries.get((n, n), 0)
    center_unique = set(h.entries) == {(n, n)} if h.entries else False

    failures = []
    if not all(cert["nondegenerate"] for cert in hessians):
        failures.append("a critical point has a degenerate second-order model")
    if exceptional["status"] == "ok" and not exceptional["all_rank_two"]:
        failures.append("an exceptional-locus sample has dependent differentials")
    if not relative.unique:
        failures.append("the relative profile chase was ambiguous")
    if not equality:
        failures.append("the three diamonds differ")
    if not sum_identity:
        failures.append("an anti-diagonal sum disagrees with the relative profile")
    if not center_unique or center_value != n + 1:
        failures.append(
            f"expected the single entry {n + 1} at ({n}, {n}), found {h.to_json()}"
        )

    discrepancies = list(relative.fiber.discrepancies)
    if not divisors["anticanonical_match"]:
        discrepancies.append(divisors["discrepancy"])
    if growth["verdict"] == GROWTH_FAIL:
        discrepancies.append(
            {
                "kind": "growth-at-infinity",
                "verdict": GROWTH_FAIL,
                "note": (
                    "open question: with the trivial operator at infinity the "
                    "growth condition fails strictly at a = 0, yet the diamond "
                    "definitions are applied to these models regardless; "
                    "reported verbatim, not reinterpreted"
                ),
            }
        )
    discrepancies.append({"kind": "imported-fact", "note": BLOWUP_RULE})
    for fact in relative.imported_facts:
        discrepancies.append({"kind": "imported-fact", "note": fact})

    return {
        "n": n,
        "lambda": [format_fraction(v) for v in spectrum.diag],
        "seed": seed,
        "critical_values": [format_fraction(v) for _, v in crit],
        "tameness": {
            "critical_count": len(crit),
            "hessians": hessians,
            "exceptional": {
                "status": exceptional["status"],
                "count": exceptional["count"],
                "all_rank_two": exceptional["all_rank_two"],
            },
        },
        "profile": {str(m): d for m, d in sorted(dims.items())},
        "diamonds": {"h": h.to_json(), "f": f.to_json(), "i": i.to_json()},
        "checks": {
            "sum_identity": sum_identity,
            "equality": equality,
            "center_value": center_value,
        },
        "fano_type": growth["verdict"],
        "growth_at_infinity": growth,
        "divisor_classes": divisors,
        "discrepancies": discrepancies,
        "status": "PASS" if not failures else "FAILED",
        "first_failure": failures[0] if failures else None,
    }


def render_diamond(diamond: KKPDiamond) -> str:
    """Collapsed text rendering: corners and edge entries are zero, the single
    middle row carries the center value."""
    n_half = diamond.dim_y // 2
    center = str(diamond.entries.get((n_half, n_half), 0))
    middle = f"0 ... {center} ... 0"
    width = len(middle)
    rows = [
        "0",
        "0     0",
        ":",
        middle,
        ":",
        "0     0",
        "0",
    ]
    return "\n".join(row.center(width).rstrip() for row in rows)
