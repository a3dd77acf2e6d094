"""Monodromy weight filtrations of nilpotent operators.

Given a nilpotent N with N^{m+1} = 0, there is a unique increasing filtration
W_0 <= ... <= W_{2m} centered at m with N W_i <= W_{i-2} and N^l inducing
isomorphisms between the graded pieces at m+l and m-l.  The construction here
is the standard recursion on the nilpotency index, carried out entirely with
subspaces of the original ambient space (quotients are handled through
preimages), so every step is exact and the axioms are directly checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisViolated, InternalCheckFailed, NotNilpotent, NotUnipotent
from .linalg import QMatrix, Subspace


@dataclass(frozen=True)
class NilpotentOp:
    """Square matrix with its nilpotency index k: N^{k+1} = 0 and N^k != 0."""

    matrix: QMatrix
    index: int


def nilpotent_op(matrix: QMatrix) -> NilpotentOp:
    if not matrix.is_square():
        raise NotNilpotent("nilpotency is only defined for square matrices")
    n = matrix.rows
    power = QMatrix.identity(n)
    for k in range(1, n + 1):
        power = power * matrix
        if power.is_zero():
            return NilpotentOp(matrix, k - 1)
    raise NotNilpotent(
        f"matrix is not nilpotent: its {n}-th power is nonzero, and a nilpotent "
        f"{n}x{n} matrix must vanish by that power"
    )


def _coerce_op(op) -> NilpotentOp:
    return op if isinstance(op, NilpotentOp) else nilpotent_op(op)


def log_unipotent(matrix: QMatrix) -> NilpotentOp:
    """Logarithm of a unipotent matrix by the finite series, verified against
    the finite exponential series so that exp(log T) = T holds exactly."""
    if not matrix.is_square():
        raise NotUnipotent("unipotency is only defined for square matrices")
    n = matrix.rows
    shifted = matrix - QMatrix.identity(n)
    try:
        shifted_op = nilpotent_op(shifted)
    except NotNilpotent as exc:
        raise NotUnipotent(f"matrix minus the identity is not nilpotent: {exc}") from exc
    log = QMatrix.zero(n, n)
    power = QMatrix.identity(n)
    for j in range(1, shifted_op.index + 1):
        power = power * shifted
        log = log + power.scale(Fraction((-1) ** (j + 1), j))
    result = _coerce_op(log)
    if _exp_nilpotent(result) != matrix:
        raise InternalCheckFailed("finite exp of the finite log did not return the input")
    return result


def _exp_nilpotent(op: NilpotentOp) -> QMatrix:
    n = op.matrix.rows
    total = QMatrix.identity(n)
    power = QMatrix.identity(n)
    factorial = 1
    for j in range(1, op.index + 1):
        power = power * op.matrix
        factorial *= j
        total = total + power.scale(Fraction(1, factorial))
    return total


@dataclass(frozen=True)
class WeightFiltration:
    """Increasing chain W_0 <= ... <= W_{2 * center} of exact subspaces."""

    center: int
    spaces: tuple

    def space(self, i) -> Subspace:
        """W_i with the usual conventions below 0 and above 2 * center."""
        if i < 0:
            return Subspace.zero(self.spaces[0].ambient)
        if i >= len(self.spaces):
            return self.spaces[-1]
        return self.spaces[i]

    def graded_dims(self):
        """Dimension of each graded piece, indexed by weight 0..2*center."""
        dims = []
        prev = 0
        for sub in self.spaces:
            dims.append(sub.dim - prev)
            prev = sub.dim
        return tuple(dims)

    def to_json(self):
        return {
            "center": self.center,
            "spaces": [sub.to_json() for sub in self.spaces],
            "graded_dims": list(self.graded_dims()),
        }


def weight_filtration(op, center) -> WeightFiltration:
    """The monodromy weight filtration of a nilpotent operator centered at m.

    Standing hypothesis N^{m+1} = 0 (nilpotency index <= m); violations raise
    HypothesisViolated.  Recursion: with index k, the top and bottom rungs are
    ker N^k and im N^k, and the middle is the filtration of the operator
    induced between them, computed here with original-ambient subspaces via
    image, preimage, sum and intersection.
    """
    op = _coerce_op(op)
    m = int(center)
    if m < 0:
        raise HypothesisViolated(f"center must be nonnegative, got {m}")
    if op.index > m:
        raise HypothesisViolated(
            f"nilpotency index {op.index} exceeds the center {m}: the hypothesis "
            f"N^(center+1) = 0 fails"
        )
    dim = op.matrix.rows
    full = Subspace.full(dim)
    zero = Subspace.zero(dim)
    rungs = {}
    if op.index == 0:
        rungs[m] = full
        if m >= 1:
            rungs[m - 1] = zero
    else:
        powers = _power_table(op.matrix, op.index)
        top, bottom = full, zero
        for e in range(op.index, 0, -1):
            power = powers[e]
            kernel_e = top.intersect(bottom.preimage(power))
            image_e = top.map_by(power).sum_with(bottom)
            rungs[m + e] = top
            rungs[m + e - 1] = kernel_e
            rungs[m - e] = image_e
            if m - e - 1 >= 0:
                rungs[m - e - 1] = bottom
            top, bottom = kernel_e, image_e
    chain = []
    for i in range(2 * m + 1):
        if i in rungs:
            chain.append(rungs[i])
        elif i > m + op.index:
            chain.append(full)
        else:
            chain.append(zero)
    return WeightFiltration(m, tuple(chain))


def _power_table(matrix: QMatrix, top):
    powers = [QMatrix.identity(matrix.rows)]
    for _ in range(top):
        powers.append(powers[-1] * matrix)
    return powers


def check_filtration_axioms(op, filtration: WeightFiltration) -> dict:
    """Certificate that a filtration satisfies the two defining axioms.

    Checks, by exact linear algebra: the chain is increasing and exhausts the
    space; N W_i <= W_{i-2}; and for every l >= 0 the map induced by N^l from
    the graded piece at m+l to the one at m-l has zero kernel and full image.
    """
    op = _coerce_op(op)
    m = filtration.center
    dim = op.matrix.rows
    violations = []

    for i in range(1, 2 * m + 1):
        if not filtration.space(i - 1).is_subspace_of(filtration.space(i)):
            violations.append(("chain", i))
    if filtration.space(2 * m) != Subspace.full(dim):
        violations.append(("exhausts", 2 * m))

    for i in range(2 * m + 1):
        space = filtration.space(i)
        target = filtration.space(i - 2)
        for r in range(space.dim):
            if not target.contains(op.matrix.apply(space.basis.row(r))):
                violations.append(("shift-by-two", i))
                break

    powers = _power_table(op.matrix, min(m, op.index + 1))
    for l in range(m + 1):
        upper = filtration.space(m + l)
        upper_prev = filtration.space(m + l - 1)
        lower = filtration.space(m - l)
        lower_prev = filtration.space(m - l - 1)
        if upper.dim - upper_prev.dim != lower.dim - lower_prev.dim:
            violations.append(("graded-dims", l))
            continue
        if upper.dim == upper_prev.dim and lower.dim == lower_prev.dim:
            continue  # both graded pieces vanish
        power = powers[l] if l < len(powers) else QMatrix.zero(dim, dim)
        kernel = upper.intersect(lower_prev.preimage(power))
        if not kernel.is_subspace_of(upper_prev):
            violations.append(("graded-injective", l))
        if upper.map_by(power).sum_with(lower_prev) != lower:
            violations.append(("graded-surjective", l))

    return {
        "ok": not violations,
        "first_violation": list(violations[0]) if violations else None,
        "violations": [list(v) for v in violations],
        "levels_checked": m + 1,
    }


def jordan_graded_dims(op, center):
    """Independent oracle for the graded dimensions, bypassing the recursion.

    Jordan block sizes are read off the rank sequence of powers; a block of
    size s contributes one dimension to each weight m+s-1, m+s-3, ..., m-s+1.
    """
    op = _coerce_op(op)
    m = int(center)
    if op.index > m:
        raise HypothesisViolated(
            f"nilpotency index {op.index} exceeds the center {m}"
        )
    dim = op.matrix.rows
    powers = _power_table(op.matrix, op.index + 1)
    ranks = [dim] + [powers[j].rank() for j in range(1, op.index + 2)]
    ranks.append(0)
    dims = [0] * (2 * m + 1)
    for size in range(1, op.index + 2):
        count = ranks[size - 1] - 2 * ranks[size] + ranks[size + 1]
        for t in range(size):
            dims[m + size - 1 - 2 * t] += count
    return tuple(dims)
