"""Sparse multivariate polynomials over Q.

Terms map exponent vectors to nonzero Fraction coefficients.  The canonical
term order used for serialization is graded lexicographic (total degree
first, then the exponent vector), fixed once so output is bit-stable.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch
from .linalg import ZERO, as_fraction, format_fraction


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatch(f"exponent vector {exps} has wrong length, want {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = as_fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: as_fraction(value)})

    @classmethod
    def variable(cls, nvars, index):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, nvars, coeff, exps):
        return cls(nvars, {tuple(exps): as_fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(self.sorted_terms())))

    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, ZERO) + coeff
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c = as_fraction(other)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly(self.nvars, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def partial(self, var):
        """Exact formal partial derivative with respect to variable `var`."""
        if not 0 <= var < self.nvars:
            raise DimensionMismatch(f"variable index {var} out of range for {self.nvars} variables")
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[var]
            if e:
                lowered = list(exps)
                lowered[var] = e - 1
                out[tuple(lowered)] = coeff * e
        return MultiPoly(self.nvars, out)

    def evaluate(self, values):
        vals = [as_fraction(v) for v in values]
        if len(vals) != self.nvars:
            raise DimensionMismatch(f"got {len(vals)} values for {self.nvars} variables")
        total = ZERO
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(vals, exps):
                if e:
                    prod *= v**e
            total += prod
        return total

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_json(self):
        return [[format_fraction(c), list(e)] for e, c in self.sorted_terms()]

    def __repr__(self):
        if self.is_zero():
            return "MultiPoly(0)"
        bits = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(f"v{i}^{e}" if e > 1 else f"v{i}" for i, e in enumerate(exps) if e)
            bits.append(format_fraction(coeff) + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(bits) + ")"


def poly_partial(poly, var):
    """Free-function form of the exact partial derivative."""
    return poly.partial(var)
