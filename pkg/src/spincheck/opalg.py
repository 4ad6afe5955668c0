"""Normal-ordered matrix differential operators.

An Operator stores, for each derivative monomial d_x^a d_y^b d_z^c, the
TwoSpinMatrix coefficient standing to its LEFT.  Composition commutes
derivatives past coefficients with the Leibniz rule, so stored form is
always normal-ordered; re-normalizing is the identity by construction.
"""

from __future__ import annotations

from math import comb

from .gauss import GRat
from .geomring import GeomScalar
from .spinalg import TwoSpinMatrix, label_product, sigma1, sigma2

_D0 = (0, 0, 0)


class Operator:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for d, m in terms.items():
                if m.coeffs:
                    t[d] = m
        object.__setattr__(self, "terms", t)

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    # ---- constructors ----
    @staticmethod
    def zero():
        return _OP_ZERO

    @staticmethod
    def identity():
        return Operator({_D0: TwoSpinMatrix.identity()})

    @staticmethod
    def from_matrix(m):
        """Multiplication operator."""
        return Operator({_D0: m})

    @staticmethod
    def from_scalar(g):
        return Operator({_D0: TwoSpinMatrix.from_scalar(g)})

    @staticmethod
    def derivative(axis):
        d = [0, 0, 0]
        idx = axis if axis in (0, 1, 2) else {"x": 0, "y": 1, "z": 2}[axis]
        d[idx] = 1
        return Operator({tuple(d): TwoSpinMatrix.identity()})

    # ---- structure ----
    def is_zero(self):
        return all(m.is_zero() for m in self.terms.values())

    def __bool__(self):
        return not self.is_zero()

    def order(self):
        return max((sum(d) for d in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for d, m in other.terms.items():
            got = out.get(d)
            tot = m if got is None else got + m
            if tot.coeffs:
                out[d] = tot
            else:
                out.pop(d, None)
        return Operator(out)

    def __neg__(self):
        return Operator({d: -m for d, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, g):
        return Operator({d: m.scale(g) for d, m in self.terms.items()})

    def scale_grat(self, u):
        return Operator({d: m.scale_grat(u) for d, m in self.terms.items()})

    # ---- composition ----
    def __mul__(self, other):
        return self.compose(other)

    def compose(self, other):
        """Normal-ordered product self . other."""
        if not self.terms or not other.terms:
            return _OP_ZERO
        mx = [0, 0, 0]
        for da in self.terms:
            for i in range(3):
                if da[i] > mx[i]:
                    mx[i] = da[i]
        acc = {}
        for db, mb in other.terms.items():
            for shift, dmat in _derivative_table(mb, mx):
                for da, ma in self.terms.items():
                    if shift[0] > da[0] or shift[1] > da[1] or shift[2] > da[2]:
                        continue
                    cco = comb(da[0], shift[0]) * comb(da[1], shift[1]) \
                        * comb(da[2], shift[2])
                    d = (da[0] - shift[0] + db[0],
                         da[1] - shift[1] + db[1],
                         da[2] - shift[2] + db[2])
                    factor = GRat(cco)
                    for l1, g1 in ma.coeffs.items():
                        for l2, g2 in dmat.coeffs.items():
                            unit, lab = label_product(l1, l2)
                            g = (g1 * g2).mul_grat(
                                unit if cco == 1 else unit * factor)
                            key = (d, lab)
                            got = acc.get(key)
                            if got is None:
                                acc[key] = [g]
                            else:
                                got.append(g)
        terms = {}
        for (d, lab), lst in acc.items():
            tot = lst[0].sum_many(lst)
            if tot.num:
                terms.setdefault(d, {})[lab] = tot
        return Operator({d: TwoSpinMatrix(m) for d, m in terms.items()})

    def commutator(self, other):
        return self.compose(other) - other.compose(self)

    def adjoint(self):
        """Formal adjoint: x self-adjoint, d -> -d, i -> -i, order reversed."""
        out = Operator.zero()
        for d, m in self.terms.items():
            sign = GRat((-1) ** sum(d))
            out = out + Operator({d: TwoSpinMatrix.identity().scale_grat(sign)}) \
                .compose(Operator.from_matrix(m.adjoint()))
        return out

    def apply_matrix(self, fn):
        return Operator({d: fn(m) for d, m in self.terms.items()})

    def substitute(self, funcs=None, consts=None):
        return Operator({d: m.map_coeffs(lambda g: g.substitute(funcs, consts))
                         for d, m in self.terms.items()})

    def coefficient(self, d, label):
        m = self.terms.get(tuple(d))
        if m is None:
            return GeomScalar.zero()
        return m.coeffs.get(tuple(label), GeomScalar.zero())

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        if self.terms == other.terms:
            return True
        return (self - other).is_zero()

    def pruned(self):
        """Drop coefficients that are zero in canonical form."""
        out = {}
        for d, m in self.terms.items():
            mm = {l: g for l, g in m.coeffs.items() if not g.is_zero()}
            if mm:
                out[d] = TwoSpinMatrix(mm)
        return Operator(out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                      reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for d, m in self.sorted_terms():
            dtxt = "".join(f"d{ax}^{e}" if e > 1 else f"d{ax}"
                           for ax, e in zip("xyz", d) if e)
            bits.append(f"({m!r})" + (f".{dtxt}" if dtxt else ""))
        return " + ".join(bits)


_OP_ZERO = Operator({})


def _derivative_table(m, upto):
    """All (shift, d^shift m) with shift <= upto componentwise, m != 0."""
    results = [((0, 0, 0), m)]
    for axis in range(3):
        nxt = []
        for shift, mat in results:
            cur = mat
            s = shift
            nxt.append((s, cur))
            for _ in range(upto[axis]):
                cur = cur.partial(axis)
                if not cur.coeffs:
                    break
                s = (s[0] + (axis == 0), s[1] + (axis == 1), s[2] + (axis == 2))
                nxt.append((s, cur))
        results = nxt
    return results


# ---- canonical generators ----

def momentum(axis):
    """p = -i hbar d."""
    g = GeomScalar.const("hbar").mul_grat(GRat(0, -1))
    return Operator.derivative(axis).apply_matrix(
        lambda m: m.scale(g))


def angular(axis):
    """L1 = i hbar (z d_y - y d_z) and cyclic."""
    i, j, k = {0: (0, 1, 2), 1: (1, 2, 0), 2: (2, 0, 1),
               "x": (0, 1, 2), "y": (1, 2, 0), "z": (2, 0, 1)}[axis]
    ih = GeomScalar.const("hbar").mul_grat(GRat(0, 1))
    zj = GeomScalar.coordinate(k)
    yk = GeomScalar.coordinate(j)
    return Operator({
        _shift(j): TwoSpinMatrix.from_scalar(ih * zj),
        _shift(k): TwoSpinMatrix.from_scalar(-(ih * yk)),
    })


def _shift(axis):
    d = [0, 0, 0]
    d[axis] = 1
    return tuple(d)


def laplacian():
    out = Operator.zero()
    for ax in range(3):
        d = [0, 0, 0]
        d[ax] = 2
        out = out + Operator({tuple(d): TwoSpinMatrix.identity()})
    return out


def x_dot_p():
    out = Operator.zero()
    for ax in range(3):
        out = out + Operator.from_scalar(GeomScalar.coordinate(ax)) \
            .compose(momentum(ax))
    return out


def sigma_dot_p(slot):
    mk = sigma1 if slot == 1 else sigma2
    out = Operator.zero()
    for a in range(1, 4):
        out = out + Operator.from_matrix(mk(a)).compose(momentum(a - 1))
    return out


def sigma_dot_L(slot):
    mk = sigma1 if slot == 1 else sigma2
    out = Operator.zero()
    for a in range(1, 4):
        out = out + Operator.from_matrix(mk(a)).compose(angular(a - 1))
    return out


def symmetrize_first_order(coeff, axis):
    """(1/2){c, p_axis} = c p_axis - (i hbar / 2) (d_axis c).

    coeff is a TwoSpinMatrix-valued function of position; momentum factors
    of order two or higher have no symmetric first-order form here.
    """
    if not isinstance(coeff, TwoSpinMatrix):
        raise TypeError("coefficient must be a TwoSpinMatrix")
    from fractions import Fraction
    correction = coeff.partial(axis).scale(
        GeomScalar.const("hbar")).scale_grat(GRat(0, Fraction(-1, 2)))
    return Operator.from_matrix(coeff).compose(momentum(axis)) \
        + Operator.from_matrix(correction)
