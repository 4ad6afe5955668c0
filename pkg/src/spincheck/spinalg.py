"""Two-spin Pauli algebra on the 16-dimensional basis sigma1_a sigma2_b.

Basis labels are pairs (a, b) with a, b in 0..3 (0 = identity slot).
Structure constants come from the per-slot Pauli rule
sigma_a sigma_b = delta_ab + i eps_abc sigma_c; the explicit 4x4
matrices below provide an independent cross-check.
"""

from __future__ import annotations

from .gauss import GRat, GR_ZERO, GR_ONE, GR_I
from .geomring import GeomScalar

LABELS = tuple((a, b) for a in range(4) for b in range(4))
IDENTITY_LABEL = (0, 0)

_MI = GRat(0, -1)

# sigma_a * sigma_c -> (unit, label) for one slot
_SLOT = {}
for _a in range(4):
    _SLOT[(0, _a)] = (GR_ONE, _a)
    _SLOT[(_a, 0)] = (GR_ONE, _a)
for _a in range(1, 4):
    _SLOT[(_a, _a)] = (GR_ONE, 0)
for _a, _b, _c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
    _SLOT[(_a, _b)] = (GR_I, _c)
    _SLOT[(_b, _a)] = (_MI, _c)


def slot_product(a, c):
    return _SLOT[(a, c)]


def label_product(l1, l2):
    """(unit, label) for the product of two basis elements."""
    u1, a = slot_product(l1[0], l2[0])
    u2, b = slot_product(l1[1], l2[1])
    return u1 * u2, (a, b)


class TwoSpinMatrix:
    """Sparse element of the two-spin algebra with GeomScalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for label, g in coeffs.items():
                if g.num:
                    c[label] = g
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("TwoSpinMatrix is immutable")

    @staticmethod
    def zero():
        return _M_ZERO

    @staticmethod
    def identity():
        return _M_ID

    @staticmethod
    def basis(label, coeff=None):
        return TwoSpinMatrix({label: coeff if coeff is not None else GeomScalar.one()})

    @staticmethod
    def from_scalar(g):
        return TwoSpinMatrix({IDENTITY_LABEL: g})

    def is_zero(self):
        return all(g.is_zero() for g in self.coeffs.values())

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        out = dict(self.coeffs)
        for label, g in other.coeffs.items():
            got = out.get(label)
            tot = g if got is None else got + g
            if tot.num:
                out[label] = tot
            else:
                out.pop(label, None)
        return TwoSpinMatrix(out)

    def __neg__(self):
        return TwoSpinMatrix({l: -g for l, g in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        acc = {}
        for l1, g1 in self.coeffs.items():
            for l2, g2 in other.coeffs.items():
                unit, label = label_product(l1, l2)
                g = (g1 * g2).mul_grat(unit)
                got = acc.get(label)
                if got is None:
                    acc[label] = [g]
                else:
                    got.append(g)
        return TwoSpinMatrix({l: v[0].sum_many(v) for l, v in acc.items()})

    def scale(self, g):
        return TwoSpinMatrix({l: c * g for l, c in self.coeffs.items()})

    def scale_grat(self, u):
        return TwoSpinMatrix({l: c.mul_grat(u) for l, c in self.coeffs.items()})

    def adjoint(self):
        """Basis elements are Hermitian; conjugate the coefficients."""
        return TwoSpinMatrix({l: c.conjugate() for l, c in self.coeffs.items()})

    def map_coeffs(self, fn):
        return TwoSpinMatrix({l: fn(c) for l, c in self.coeffs.items()})

    def partial(self, axis):
        return TwoSpinMatrix({l: c.partial(axis) for l, c in self.coeffs.items()})

    def entries(self):
        """4x4 array of GeomScalar entries of the realized matrix."""
        out = [[GeomScalar.zero() for _ in range(4)] for _ in range(4)]
        for label, g in self.coeffs.items():
            m = realize_label(label)
            for i in range(4):
                for j in range(4):
                    u = m[i][j]
                    if not u.is_zero():
                        out[i][j] = out[i][j] + g.mul_grat(u)
        return out

    def realize(self, funcs=None, consts=None):
        """Explicit 4x4 matrix of GRat entries after bindings."""
        out = [[GR_ZERO for _ in range(4)] for _ in range(4)]
        for label, g in self.coeffs.items():
            val = g.substitute(funcs=funcs, consts=consts)
            if not val.is_number():
                raise ValueError("unbound symbols remain in realization")
            v = val.as_grat()
            m = realize_label(label)
            for i in range(4):
                for j in range(4):
                    out[i][j] = out[i][j] + v * m[i][j]
        return out

    def __eq__(self, other):
        if not isinstance(other, TwoSpinMatrix):
            return NotImplemented
        if self.coeffs == other.coeffs:
            return True
        return (self - other).is_zero()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for label in sorted(self.coeffs):
            bits.append(f"[{label_name(label)}]*({self.coeffs[label]!r})")
        return " + ".join(bits)


_M_ZERO = TwoSpinMatrix({})
_M_ID = TwoSpinMatrix({IDENTITY_LABEL: GeomScalar.one()})


def label_name(label):
    names = ("1", "x", "y", "z")
    a, b = label
    if label == IDENTITY_LABEL:
        return "I"
    parts = []
    if a:
        parts.append(f"s1{names[a]}")
    if b:
        parts.append(f"s2{names[b]}")
    return "*".join(parts)


# ---- explicit 4x4 realization ----

def _m(rows):
    return tuple(tuple(v if isinstance(v, GRat) else GRat(v) for v in row)
                 for row in rows)


_I = GR_I
_NI = _MI

SIGMA1 = {
    1: _m([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    2: _m([[0, 0, _NI, 0], [0, 0, 0, _NI], [_I, 0, 0, 0], [0, _I, 0, 0]]),
    3: _m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]),
}
SIGMA2 = {
    1: _m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    2: _m([[0, _NI, 0, 0], [_I, 0, 0, 0], [0, 0, 0, _NI], [0, 0, _I, 0]]),
    3: _m([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
}
IDENTITY4 = _m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(4)), GR_ZERO)
                       for j in range(4)) for i in range(4))


_REALIZED = {}


def realize_label(label):
    m = _REALIZED.get(label)
    if m is None:
        a, b = label
        ma = SIGMA1[a] if a else IDENTITY4
        mb = SIGMA2[b] if b else IDENTITY4
        m = mat_mul(ma, mb)
        _REALIZED[label] = m
    return m


# ---- frequently used matrices ----

def sigma1(axis):
    return TwoSpinMatrix.basis((axis, 0))


def sigma2(axis):
    return TwoSpinMatrix.basis((0, axis))


def sigma_dot_sigma():
    """(sigma1, sigma2)."""
    out = TwoSpinMatrix.zero()
    for a in range(1, 4):
        out = out + TwoSpinMatrix.basis((a, a))
    return out


def sigma1_dot_x():
    """(sigma1, x) as a position-dependent matrix."""
    out = TwoSpinMatrix.zero()
    for a in range(1, 4):
        out = out + TwoSpinMatrix.basis((a, 0), GeomScalar.coordinate(a - 1))
    return out


def sigma2_dot_x():
    out = TwoSpinMatrix.zero()
    for a in range(1, 4):
        out = out + TwoSpinMatrix.basis((0, a), GeomScalar.coordinate(a - 1))
    return out
