"""Forward-mode automatic differentiation with (nestable) dual numbers.

A ``DualScalar`` carries a value and a tuple of partial derivatives with
respect to ``d`` seeded inputs. Values and partials may themselves be dual
numbers of a lower nesting level, which is how Newton solves differentiate
residuals that already contain an AD gradient (e.g. Legendre transforms).

Levels keep perturbations apart: in a binary operation the operand with the
higher level owns the perturbation and the other one is treated as a constant.
"""

import math
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from ..utils.errors import DomainError


class DualScalar:
    """Value plus partial derivatives; immutable after construction."""

    __slots__ = ('value', 'partials', 'level')
    # numpy must hand binary operations back to us instead of broadcasting
    __array_ufunc__ = None

    def __init__(self, value, partials: Sequence, level: int = 1):
        self.value = value
        self.partials = tuple(partials)
        self.level = level

    def __repr__(self):
        return f"DualScalar({self.value!r}, {self.partials!r}, level={self.level})"

    def __float__(self):
        return real(self)

    # Arithmetic

    def _like(self, value, partials):
        return DualScalar(value, partials, self.level)

    def __add__(self, other):
        lo = level_of(other)
        if lo < self.level:
            return self._like(self.value + other, self.partials)
        if lo == self.level:
            return self._like(self.value + other.value,
                              [a + b for a, b in zip(self.partials, other.partials)])
        return other.__radd__(self)

    def __radd__(self, other):
        return self._like(other + self.value, self.partials)

    def __sub__(self, other):
        lo = level_of(other)
        if lo < self.level:
            return self._like(self.value - other, self.partials)
        if lo == self.level:
            return self._like(self.value - other.value,
                              [a - b for a, b in zip(self.partials, other.partials)])
        return other.__rsub__(self)

    def __rsub__(self, other):
        return self._like(other - self.value, [-a for a in self.partials])

    def __mul__(self, other):
        lo = level_of(other)
        if lo < self.level:
            return self._like(self.value * other, [a * other for a in self.partials])
        if lo == self.level:
            return self._like(self.value * other.value,
                              [a * other.value + self.value * b
                               for a, b in zip(self.partials, other.partials)])
        return other.__rmul__(self)

    def __rmul__(self, other):
        return self._like(other * self.value, [other * a for a in self.partials])

    def __truediv__(self, other):
        lo = level_of(other)
        if lo < self.level:
            return self._like(self.value / other, [a / other for a in self.partials])
        if lo == self.level:
            denom = other.value * other.value
            return self._like(self.value / other.value,
                              [(a * other.value - self.value * b) / denom
                               for a, b in zip(self.partials, other.partials)])
        return other.__rtruediv__(self)

    def __rtruediv__(self, other):
        denom = self.value * self.value
        return self._like(other / self.value, [-(other * a) / denom for a in self.partials])

    def __pow__(self, exponent):
        lo = level_of(exponent)
        if lo < self.level:
            if _is_integral(exponent) and real(exponent) == 0:
                return self._like(1.0, [0.0 * a for a in self.partials])
            if real(self.value) < 0 and not _is_integral(exponent):
                raise DomainError("Non-integer power of a negative base")
            scale = exponent * power(self.value, exponent - 1)
            return self._like(power(self.value, exponent), [scale * a for a in self.partials])
        if lo == self.level:
            return exp(exponent * log(self))
        return exponent.__rpow__(self)

    def __rpow__(self, base):
        return exp(self * log(base))

    def __neg__(self):
        return self._like(-self.value, [-a for a in self.partials])

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if real(self) < 0 else self

    # Comparisons use the value only

    def __eq__(self, other):
        return real(self) == real(other)

    def __ne__(self, other):
        return real(self) != real(other)

    def __lt__(self, other):
        return real(self) < real(other)

    def __le__(self, other):
        return real(self) <= real(other)

    def __gt__(self, other):
        return real(self) > real(other)

    def __ge__(self, other):
        return real(self) >= real(other)

    __hash__ = None


Scalar = Union[float, DualScalar]


def level_of(x) -> int:
    return x.level if isinstance(x, DualScalar) else 0


def real(x) -> float:
    """Innermost real value of a (possibly nested) scalar."""
    while isinstance(x, DualScalar):
        x = x.value
    return float(x)


def _is_integral(x) -> bool:
    value = real(x)
    return math.isfinite(value) and float(value).is_integer()


# Elementary functions, generic over floats and dual numbers

def power(base, exponent):
    if isinstance(base, DualScalar) or isinstance(exponent, DualScalar):
        if not isinstance(base, DualScalar):
            return exponent.__rpow__(base)
        return base ** exponent
    base, exponent = float(base), float(exponent)
    if base < 0 and not exponent.is_integer():
        raise DomainError("Non-integer power of a negative base")
    if base == 0 and exponent < 0:
        return math.inf
    return base ** exponent


def sin(x):
    if isinstance(x, DualScalar):
        c = cos(x.value)
        return x._like(sin(x.value), [c * a for a in x.partials])
    return math.sin(x)


def cos(x):
    if isinstance(x, DualScalar):
        s = sin(x.value)
        return x._like(cos(x.value), [-(s * a) for a in x.partials])
    return math.cos(x)


def tan(x):
    if isinstance(x, DualScalar):
        t = tan(x.value)
        slope = 1.0 + t * t
        return x._like(t, [slope * a for a in x.partials])
    return math.tan(x)


def exp(x):
    if isinstance(x, DualScalar):
        e = exp(x.value)
        return x._like(e, [e * a for a in x.partials])
    return math.exp(x)


def log(x):
    if real(x) <= 0:
        raise DomainError(f"log of non-positive value {real(x)}")
    if isinstance(x, DualScalar):
        return x._like(log(x.value), [a / x.value for a in x.partials])
    return math.log(x)


def sqrt(x):
    if real(x) < 0:
        raise DomainError(f"sqrt of negative value {real(x)}")
    if isinstance(x, DualScalar):
        s = sqrt(x.value)
        if real(s) == 0:
            if any(real(a) != 0 for a in x.partials):
                raise DomainError("sqrt is not differentiable at 0")
            return x._like(s, x.partials)
        return x._like(s, [a / (2.0 * s) for a in x.partials])
    return math.sqrt(x)


# Derivative drivers

def derivatives(func: Callable, x: Sequence, context: Sequence = ()) -> Tuple[List, List[List]]:
    """Values and Jacobian rows of ``func`` at ``x`` (generic, nest-safe).

    ``func`` receives a list of scalars and returns a scalar or a sequence of
    scalars. Entries of ``x`` may be dual numbers of an outer level; so may the
    scalars ``func`` closes over, which must be passed as ``context`` so the new
    perturbation is nested above them.
    """
    x = list(x)
    d = len(x)
    lvl = 1 + max((level_of(v) for v in list(x) + list(context)), default=0)
    seeds = [DualScalar(v, [1.0 if j == i else 0.0 for j in range(d)], lvl)
             for i, v in enumerate(x)]
    out = func(seeds)
    if isinstance(out, DualScalar) or np.isscalar(out):
        out = [out]
    values, rows = [], []
    for y in out:
        if level_of(y) == lvl:
            values.append(y.value)
            rows.append(list(y.partials))
        else:
            values.append(y)
            rows.append([0.0] * d)
    return values, rows


def gradient(func: Callable, x: Sequence, context: Sequence = ()) -> Tuple[Scalar, List]:
    """Value and gradient of a scalar function (generic, nest-safe)."""
    values, rows = derivatives(func, x, context)
    return values[0], rows[0]


def jacobian(func: Callable, x: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """Float residual vector and Jacobian matrix of ``func`` at a real point."""
    values, rows = derivatives(func, [float(v) for v in x])
    F = np.array([real(v) for v in values], dtype=float)
    J = np.array([[real(a) for a in row] for row in rows], dtype=float).reshape(len(values), len(x))
    return F, J


def evaluate(func: Callable, x: Sequence[float]) -> np.ndarray:
    """Plain real evaluation of a vector-valued function."""
    out = func([float(v) for v in x])
    if isinstance(out, DualScalar) or np.isscalar(out):
        out = [out]
    return np.array([real(v) for v in out], dtype=float)
