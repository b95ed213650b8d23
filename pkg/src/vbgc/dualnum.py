"""Forward-mode derivative-carrying scalars.

A DualScalar holds a value and a fixed-length tuple of partials keyed to
a declared variable list; every arithmetic operation applies the product
and chain rules exactly in floating point.  The slots may themselves hold
DualScalars, which is how mixed second derivatives (flow parameter inside
a base-point derivative, curvature of numerically differentiated
connections) are computed: nest one first-order layer per independent
differentiation.
"""

from __future__ import annotations

import math


class DualScalar:
    __slots__ = ("value", "partials")

    def __init__(self, value, partials):
        self.value = value
        self.partials = tuple(partials)

    # -- helpers -------------------------------------------------------

    @staticmethod
    def variable(value, index: int, nvars: int) -> "DualScalar":
        return DualScalar(value, tuple(1.0 if i == index else 0.0 for i in range(nvars)))

    @staticmethod
    def constant(value, nvars: int) -> "DualScalar":
        return DualScalar(value, (0.0,) * nvars)

    def __repr__(self) -> str:
        return f"DualScalar({self.value!r}, {self.partials!r})"

    # -- arithmetic ------------------------------------------------------

    def _match(self, other):
        if isinstance(other, DualScalar):
            if len(other.partials) != len(self.partials):
                raise ValueError("dual scalars carry different variable lists")
            return other
        return None

    def __add__(self, other):
        o = self._match(other)
        if o is None:
            return DualScalar(self.value + other, self.partials)
        return DualScalar(
            self.value + o.value,
            tuple(a + b for a, b in zip(self.partials, o.partials)),
        )

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, tuple(-a for a in self.partials))

    def __sub__(self, other):
        return self + (-other if isinstance(other, DualScalar) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._match(other)
        if o is None:
            return DualScalar(self.value * other, tuple(a * other for a in self.partials))
        return DualScalar(
            self.value * o.value,
            tuple(
                a * o.value + self.value * b
                for a, b in zip(self.partials, o.partials)
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._match(other)
        if o is None:
            inv = 1.0 / other
            return DualScalar(self.value * inv, tuple(a * inv for a in self.partials))
        iv = 1.0 / o.value if not isinstance(o.value, DualScalar) else o.value ** (-1)
        val = self.value * iv
        return DualScalar(
            val,
            tuple(
                (a - val * b) * iv for a, b in zip(self.partials, o.partials)
            ),
        )

    def __rtruediv__(self, other):
        iv = self.value ** (-1) if isinstance(self.value, DualScalar) else 1.0 / self.value
        val = other * iv
        return DualScalar(val, tuple(-val * iv * b for b in self.partials))

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("dual scalars support integer powers only")
        if n == 0:
            return DualScalar(self.value * 0 + 1.0, tuple(a * 0.0 for a in self.partials))
        base = self.value ** (n - 1)
        return DualScalar(
            base * self.value, tuple(n * base * a for a in self.partials)
        )


def value_of(x) -> float:
    """Descend nested duals to the underlying float value."""
    while isinstance(x, DualScalar):
        x = x.value
    return float(x)


def partial(x, index: int):
    """Partial at the outermost level; 0.0 for plain numbers."""
    if isinstance(x, DualScalar):
        return x.partials[index]
    return 0.0


def dsin(x):
    if isinstance(x, DualScalar):
        c = dcos(x.value)
        return DualScalar(dsin(x.value), tuple(c * p for p in x.partials))
    return math.sin(x)


def dcos(x):
    if isinstance(x, DualScalar):
        s = dsin(x.value)
        return DualScalar(dcos(x.value), tuple(-s * p for p in x.partials))
    return math.cos(x)


def dexp(x):
    if isinstance(x, DualScalar):
        e = dexp(x.value)
        return DualScalar(e, tuple(e * p for p in x.partials))
    return math.exp(x)
