"""Exact commutative coefficient ring over x, y, z.

Elements are sums of terms

    coeff * (consts) * x^a y^b z^c * r^dr * w^dw / (s^m q^n)

with per-term denominator exponents, where

    s = x^2 + y^2 + z^2,        r^2 = s,
    q = 2 + alpha7*hbar^2*s,    w^2 = q.

Coefficients are Gaussian rationals held as reduced integer triples
(a, b, d) meaning (a + b i)/d; no floating point enters any ring
operation.  Arithmetic is kept loose (terms combine only on identical
keys); the unique canonical form - one common denominator s^M q^N with a
numerator divisible by neither - is computed lazily and cached, and is
what zero tests, equality, hashing and printing use.  eps^2 reduces to 1
on sight and atom exponents stay 0 or 1 throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .gauss import GRat, GR_ZERO

# Admissible symbol names.
CONSTANT_NAMES = frozenset(
    ["hbar", "eps", "beta", "beta1", "beta2"]
    + [f"alpha{i}" for i in range(1, 27)]
    + [f"c{i}" for i in range(1, 20)]
)
FUNCTION_NAMES = frozenset([f"V{i}" for i in range(6)] + [f"f{i}" for i in range(1, 11)])

_XYZ0 = (0, 0, 0)
# term key: (xyz, rf, wf, sm, qn, consts, fs)
_UNIT_KEY = (_XYZ0, 0, 0, 0, 0, (), ())

# ---- raw coefficient arithmetic: (a, b, d) = (a + b i)/d, d > 0, reduced ----


def _craw(a, b, d):
    if d < 0:
        a, b, d = -a, -b, -d
    if d != 1:
        g = gcd(gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
    return (a, b, d)


def _cmul(u, v):
    a1, b1, d1 = u
    a2, b2, d2 = v
    return _craw(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


def _cadd(u, v):
    a1, b1, d1 = u
    a2, b2, d2 = v
    if d1 == d2:
        return _craw(a1 + a2, b1 + b2, d1)
    return _craw(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)


def _cneg(u):
    return (-u[0], -u[1], u[2])


def _from_grat(c):
    return _craw(c.a, c.b, c.d)


def _to_grat(u):
    return GRat(_raw=u)


def _merge_pows(t1, t2, negate=False):
    """Merge two sorted (name, exp) tuples; eps exponents reduce mod 2."""
    if not t2:
        return t1
    if not t1 and not negate:
        return t2
    out = []
    i, j, n1, n2 = 0, 0, len(t1), len(t2)
    while i < n1 or j < n2:
        if j >= n2 or (i < n1 and t1[i][0] < t2[j][0]):
            name, e = t1[i]
            i += 1
        elif i >= n1 or t2[j][0] < t1[i][0]:
            name, e = t2[j]
            e = -e if negate else e
            j += 1
        else:
            name = t1[i][0]
            e = t1[i][1] + (-t2[j][1] if negate else t2[j][1])
            i += 1
            j += 1
        if name == "eps":
            e &= 1
        if e:
            out.append((name, e))
    return tuple(out)


_MERGE_CACHE = {}


def _merge_cached(t1, t2):
    if not t2:
        return t1
    if not t1:
        return t2
    key = (t1, t2)
    got = _MERGE_CACHE.get(key)
    if got is None:
        got = _merge_pows(t1, t2)
        _MERGE_CACHE[key] = got
    return got


def _scale_pows(t, k):
    out = []
    for name, e in t:
        ee = e * k
        if name == "eps":
            ee &= 1
        if ee:
            out.append((name, ee))
    return tuple(out)


def _term_order(key):
    xyz, rf, wf, sm, qn, consts, fs = key
    return (xyz[0] + xyz[1] + xyz[2], xyz, rf, wf, fs, consts, sm, qn)


_A7H2 = (("alpha7", 1), ("hbar", 2))

# s and q as 5-key polynomials (xyz, rf, wf, consts, fs) used during
# canonicalization and expansion.
_S5 = {
    ((2, 0, 0), 0, 0, (), ()): (1, 0, 1),
    ((0, 2, 0), 0, 0, (), ()): (1, 0, 1),
    ((0, 0, 2), 0, 0, (), ()): (1, 0, 1),
}
_Q5 = {
    (_XYZ0, 0, 0, (), ()): (2, 0, 1),
    ((2, 0, 0), 0, 0, _A7H2, ()): (1, 0, 1),
    ((0, 2, 0), 0, 0, _A7H2, ()): (1, 0, 1),
    ((0, 0, 2), 0, 0, _A7H2, ()): (1, 0, 1),
}


def _poly_mul5(a, b):
    """Product of 5-key numerator dicts; atoms must not overflow here."""
    out = {}
    for ka, ca in a.items():
        x1, r1, w1, c1, f1 = ka
        a1, b1, d1 = ca
        for kb, cb in b.items():
            x2, r2, w2, c2, f2 = kb
            k = ((x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2]), r1 + r2,
                 w1 + w2, _merge_cached(c1, c2), _merge_cached(f1, f2))
            c = _craw(a1 * cb[0] - b1 * cb[1], a1 * cb[1] + b1 * cb[0],
                      d1 * cb[2])
            v = out.get(k)
            v = c if v is None else _cadd(v, c)
            if v[0] == 0 and v[1] == 0:
                out.pop(k, None)
            else:
                out[k] = v
    return out


# ---- divisibility of 5-key numerators by s and q ----

_P3 = [1]
_P4 = [1]
_P5 = [1]
_P2 = [1]


def _pow_table(table, base, n):
    while len(table) <= n:
        table.append(table[-1] * base)
    return table[n]


def _rot_i(c, m):
    rot = c & 3
    if rot == 0:
        return m, 0
    if rot == 1:
        return 0, m
    if rot == 2:
        return -m, 0
    return 0, -m


def _any_bucket_nonzero(acc):
    for bucket in acc.values():
        if len(bucket) == 1:
            (vals,) = bucket.values()
            if vals[0] or vals[1]:
                return True
            continue
        ell = lcm(*bucket.keys())
        if sum(v[0] * (ell // d) for d, v in bucket.items()) \
                or sum(v[1] * (ell // d) for d, v in bucket.items()):
            return True
    return False


def _s_cone_nonzero(num):
    """True when the numerator provably is NOT divisible by s.

    Evaluates (x, y, z) = (3, 4, 5i), a Gaussian point on the cone s = 0
    (where also r = 0); anything divisible by s must vanish there.
    """
    acc = {}
    for (xyz, rf, wf, consts, fs), co in num.items():
        if rf:
            continue
        m = _pow_table(_P3, 3, xyz[0]) * _pow_table(_P4, 4, xyz[1]) \
            * _pow_table(_P5, 5, xyz[2])
        vre, vim = _rot_i(xyz[2], m)
        a, b, d = co
        bucket = acc.setdefault((wf, consts, fs), {})
        got = bucket.get(d)
        pre, pim = a * vre - b * vim, a * vim + b * vre
        if got is None:
            bucket[d] = [pre, pim]
        else:
            got[0] += pre
            got[1] += pim
    return _any_bucket_nonzero(acc)


def _q_cone_nonzero(num):
    """True when the numerator provably is NOT divisible by q.

    Uses the ring map alpha7 -> 1, hbar -> 1, (x, y, z) -> (1, 1, 2i),
    under which q -> 0; anything divisible by q must map to zero.
    """
    acc = {}
    for (xyz, rf, wf, consts, fs), co in num.items():
        m = _pow_table(_P2, 2, xyz[2])
        vre, vim = _rot_i(xyz[2], m)
        kept = tuple((n, e) for n, e in consts if n not in ("alpha7", "hbar"))
        a, b, d = co
        bucket = acc.setdefault((rf, wf, kept, fs), {})
        got = bucket.get(d)
        pre, pim = a * vre - b * vim, a * vim + b * vre
        if got is None:
            bucket[d] = [pre, pim]
        else:
            got[0] += pre
            got[1] += pim
    return _any_bucket_nonzero(acc)


def _divide_s(num):
    """Exact division of a 5-key numerator by s; None when not divisible.

    Processes x-degree levels downward (lex order, leading term x^2); the
    divisor is monic there, so no coefficient division is needed.
    """
    if _s_cone_nonzero(num):
        return None
    levels = {}
    for k, c in num.items():
        levels.setdefault(k[0][0], {})[k] = c
    quo = {}
    for a in range(max(levels), -1, -1):
        bucket = levels.get(a)
        if not bucket:
            continue
        if a < 2:
            if any(c[0] or c[1] for c in bucket.values()):
                return None
            continue
        la = a - 2
        lower = levels.setdefault(la, {})
        for k, c in bucket.items():
            if c[0] == 0 and c[1] == 0:
                continue
            xyz, rf, wf, consts, fs = k
            tkey = ((la, xyz[1], xyz[2]), rf, wf, consts, fs)
            got = quo.get(tkey)
            quo[tkey] = c if got is None else _cadd(got, c)
            nc = _cneg(c)
            for k2 in (((la, xyz[1] + 2, xyz[2]), rf, wf, consts, fs),
                       ((la, xyz[1], xyz[2] + 2), rf, wf, consts, fs)):
                got = lower.get(k2)
                lower[k2] = nc if got is None else _cadd(got, nc)
    return {k: c for k, c in quo.items() if c[0] or c[1]}


def _divide_q(num):
    """Exact division of a 5-key numerator by q; None when not divisible."""
    if _q_cone_nonzero(num):
        return None
    levels = {}
    for k, c in num.items():
        levels.setdefault(k[0][0], {})[k] = c
    quo = {}
    for a in range(max(levels), -1, -1):
        bucket = levels.get(a)
        if not bucket:
            continue
        if a < 2:
            if any(c[0] or c[1] for c in bucket.values()):
                return None
            continue
        la = a - 2
        lower = levels.setdefault(la, {})
        for k, c in bucket.items():
            if c[0] == 0 and c[1] == 0:
                continue
            xyz, rf, wf, consts, fs = k
            tconsts = _merge_pows(consts, _A7H2, negate=True)
            tkey = ((la, xyz[1], xyz[2]), rf, wf, tconsts, fs)
            got = quo.get(tkey)
            quo[tkey] = c if got is None else _cadd(got, c)
            tc2 = _craw(-2 * c[0], -2 * c[1], c[2])
            got = lower.get(tkey)
            lower[tkey] = tc2 if got is None else _cadd(got, tc2)
            nc = _cneg(c)
            for k2 in (((la, xyz[1] + 2, xyz[2]), rf, wf, consts, fs),
                       ((la, xyz[1], xyz[2] + 2), rf, wf, consts, fs)):
                got = lower.get(k2)
                lower[k2] = nc if got is None else _cadd(got, nc)
    return {k: c for k, c in quo.items() if c[0] or c[1]}


def _canonicalize(num):
    """Loose 7-key dict -> (5-key numerator, M, N) in lowest terms."""
    if not num:
        return {}, 0, 0
    groups = {}
    M = N = 0
    for k, c in num.items():
        if c[0] == 0 and c[1] == 0:
            continue
        sm, qn = k[3], k[4]
        if sm > M:
            M = sm
        if qn > N:
            N = qn
        groups.setdefault((sm, qn), {})[(k[0], k[1], k[2], k[5], k[6])] = c
    acc = {}
    for (sm, qn), poly in groups.items():
        for _ in range(M - sm):
            poly = _poly_mul5(poly, _S5)
        for _ in range(N - qn):
            poly = _poly_mul5(poly, _Q5)
        for k, c in poly.items():
            got = acc.get(k)
            v = c if got is None else _cadd(got, c)
            if v[0] == 0 and v[1] == 0:
                acc.pop(k, None)
            else:
                acc[k] = v
    while M > 0 and acc:
        if any(k[0][0] + k[0][1] + k[0][2] < 2 for k in acc):
            break
        quo = _divide_s(acc)
        if quo is None:
            break
        acc, M = quo, M - 1
    while N > 0 and acc:
        quo = _divide_q(acc)
        if quo is None:
            break
        acc, N = quo, N - 1
    if not acc:
        return {}, 0, 0
    return acc, M, N


def _term_mul7(out, k1, k2, coeff):
    """Accumulate coeff * k1 * k2 into the loose dict out."""
    x1, r1, w1, m1, n1, c1, f1 = k1
    x2, r2, w2, m2, n2, c2, f2 = k2
    xyz = (x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2])
    rf, wf = r1 + r2, w1 + w2
    sm, qn = m1 + m2, n1 + n2
    consts = _merge_cached(c1, c2)
    fs = _merge_cached(f1, f2)
    if rf == 2:
        if sm > 0:
            rf, sm = 0, sm - 1
    if wf == 2:
        if qn > 0:
            wf, qn = 0, qn - 1
    if rf < 2 and wf < 2:
        k = (xyz, rf, wf, sm, qn, consts, fs)
        got = out.get(k)
        v = coeff if got is None else _cadd(got, coeff)
        if v[0] == 0 and v[1] == 0:
            out.pop(k, None)
        else:
            out[k] = v
        return
    # expand leftover atom squares into polynomials
    base = {(xyz, rf & 1, wf & 1, consts, fs): coeff}
    if rf == 2:
        base = _poly_mul5(base, _S5)
    if wf == 2:
        base = _poly_mul5(base, _Q5)
    for (x5, r5, w5, c5, f5), c in base.items():
        k = (x5, r5, w5, sm, qn, c5, f5)
        got = out.get(k)
        v = c if got is None else _cadd(got, c)
        if v[0] == 0 and v[1] == 0:
            out.pop(k, None)
        else:
            out[k] = v


def _add_into(acc, num, negate=False):
    for k, c in num.items():
        v = acc.get(k)
        cc = _cneg(c) if negate else c
        v = cc if v is None else _cadd(v, cc)
        if v[0] == 0 and v[1] == 0:
            acc.pop(k, None)
        else:
            acc[k] = v


class GeomScalar:
    """Ring element; loose term dict with cached canonical form."""

    __slots__ = ("num", "_canon")

    def __init__(self, num=None):
        object.__setattr__(self, "num", num or {})
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("GeomScalar is immutable")

    def canonical(self):
        """(5-key numerator dict, M, N) with the common denominator s^M q^N."""
        c = self._canon
        if c is None:
            c = _canonicalize(self.num)
            object.__setattr__(self, "_canon", c)
        return c

    # ---- constructors ----
    @staticmethod
    def zero():
        return _ZERO

    @staticmethod
    def one():
        return _ONE

    @staticmethod
    def from_grat(c):
        if c.is_zero():
            return _ZERO
        return GeomScalar({_UNIT_KEY: _from_grat(c)})

    @staticmethod
    def integer(n):
        if n == 0:
            return _ZERO
        return GeomScalar({_UNIT_KEY: (n, 0, 1)})

    @staticmethod
    def rational(p, q=1):
        return GeomScalar.from_grat(GRat(Fraction(p, q)))

    @staticmethod
    def imag_unit():
        return GeomScalar({_UNIT_KEY: (0, 1, 1)})

    @staticmethod
    def coordinate(axis):
        e = [0, 0, 0]
        e[_axis_index(axis)] = 1
        return GeomScalar({(tuple(e), 0, 0, 0, 0, (), ()): (1, 0, 1)})

    @staticmethod
    def atom_r():
        return GeomScalar({(_XYZ0, 1, 0, 0, 0, (), ()): (1, 0, 1)})

    @staticmethod
    def atom_w():
        return GeomScalar({(_XYZ0, 0, 1, 0, 0, (), ()): (1, 0, 1)})

    @staticmethod
    def const(name, exp=1):
        if name not in CONSTANT_NAMES:
            raise ValueError(f"unknown constant {name!r}")
        if name == "eps":
            exp &= 1
            if exp == 0:
                return _ONE
        return GeomScalar({(_XYZ0, 0, 0, 0, 0, ((name, exp),), ()): (1, 0, 1)})

    @staticmethod
    def func(name, order=0):
        if name not in FUNCTION_NAMES:
            raise ValueError(f"unknown function symbol {name!r}")
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        return GeomScalar({(_XYZ0, 0, 0, 0, 0, (), (((name, order), 1),)):
                           (1, 0, 1)})

    @staticmethod
    def s_power(m):
        """s^m for any integer m (s = x^2+y^2+z^2)."""
        if m >= 0:
            out = _ONE
            for _ in range(m):
                out = out * _S
            return out
        return GeomScalar({(_XYZ0, 0, 0, -m, 0, (), ()): (1, 0, 1)})

    @staticmethod
    def q_power(n):
        if n >= 0:
            out = _ONE
            for _ in range(n):
                out = out * _Q
            return out
        return GeomScalar({(_XYZ0, 0, 0, 0, -n, (), ()): (1, 0, 1)})

    # ---- ring operations ----
    def is_zero(self):
        if not self.num:
            return True
        return not self.canonical()[0]

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if not self.num:
            return other
        if not other.num:
            return self
        acc = dict(self.num)
        _add_into(acc, other.num)
        return GeomScalar(acc)

    @staticmethod
    def sum_many(elems):
        acc = {}
        for e in elems:
            _add_into(acc, e.num)
        return GeomScalar(acc)

    def __neg__(self):
        return GeomScalar({k: _cneg(c) for k, c in self.num.items()})

    def __sub__(self, other):
        if not other.num:
            return self
        acc = dict(self.num)
        _add_into(acc, other.num, negate=True)
        return GeomScalar(acc)

    def __mul__(self, other):
        if not self.num or not other.num:
            return _ZERO
        out = {}
        for ka, ca in self.num.items():
            for kb, cb in other.num.items():
                _term_mul7(out, ka, kb,
                           _craw(ca[0] * cb[0] - ca[1] * cb[1],
                                 ca[0] * cb[1] + ca[1] * cb[0],
                                 ca[2] * cb[2]))
        return GeomScalar(out)

    def mul_grat(self, c):
        if c.is_zero() or not self.num:
            return _ZERO
        raw = _from_grat(c)
        return GeomScalar({k: _cmul(v, raw) for k, v in self.num.items()})

    def __pow__(self, k):
        if k < 0:
            return self.invert() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GeomScalar({k: (c[0], -c[1], c[2]) for k, c in self.num.items()})

    # ---- inversion and division ----
    def invert(self):
        """Inverse, defined for monomial-like elements only.

        The element must reduce to t * s^a * q^b with t a single term that
        has no x/y/z part and no function symbols; r and w invert via
        r^-1 = r/s, w^-1 = w/q.
        """
        num, M, N = self.canonical()
        if not num:
            raise ZeroDivisionError("inverse of zero")
        a = b = 0
        while len(num) > 1:
            quo = _divide_s(num)
            if quo is not None:
                num, a = quo, a + 1
                continue
            quo = _divide_q(num)
            if quo is not None:
                num, b = quo, b + 1
                continue
            raise ValueError("division only by monomial-like denominators")
        (key, coeff), = num.items()
        xyz, rf, wf, consts, fs = key
        if xyz != _XYZ0:
            raise ValueError("division by bare x/y/z is not representable")
        if fs:
            raise ValueError("division by function symbols is not representable")
        ca, cb, cd = coeff
        n2 = ca * ca + cb * cb
        if n2 == 0:
            raise ZeroDivisionError("inverse of zero")
        sm, qn = rf + a - M, wf + b - N
        out = GeomScalar({(_XYZ0, rf, wf, max(sm, 0), max(qn, 0),
                           _scale_pows(consts, -1), ()):
                          _craw(ca * cd, -cb * cd, n2)})
        if sm < 0:
            out = out * GeomScalar.s_power(-sm)
        if qn < 0:
            out = out * GeomScalar.q_power(-qn)
        return out

    def __truediv__(self, other):
        return self * other.invert()

    # ---- calculus ----
    def partial(self, axis):
        """Exact partial derivative along x, y or z."""
        i = _axis_index(axis)
        if not self.num:
            return _ZERO
        out = {}
        for key, c in self.num.items():
            xyz, rf, wf, sm, qn, consts, fs = key
            if xyz[i] > 0:
                nx = list(xyz)
                nx[i] -= 1
                k2 = (tuple(nx), rf, wf, sm, qn, consts, fs)
                cc = _craw(c[0] * xyz[i], c[1] * xyz[i], c[2])
                got = out.get(k2)
                v = cc if got is None else _cadd(got, cc)
                if v[0] or v[1]:
                    out[k2] = v
                else:
                    out.pop(k2, None)
            nx = list(xyz)
            nx[i] += 1
            xkey = tuple(nx)
            pieces = []
            if rf == 1:
                pieces.append(((xkey, 1, wf, sm + 1, qn, consts, fs), c))
            if wf == 1:
                pieces.append(((xkey, rf, 1, sm, qn + 1,
                                _merge_cached(consts, _A7H2), fs), c))
            if sm:
                pieces.append(((xkey, rf, wf, sm + 1, qn, consts, fs),
                               _craw(-2 * sm * c[0], -2 * sm * c[1], c[2])))
            if qn:
                pieces.append(((xkey, rf, wf, sm, qn + 1,
                                _merge_cached(consts, _A7H2), fs),
                               _craw(-2 * qn * c[0], -2 * qn * c[1], c[2])))
            for (name, order), e in fs:
                fd = dict(fs)
                fd[(name, order)] -= 1
                if fd[(name, order)] == 0:
                    del fd[(name, order)]
                fd[(name, order + 1)] = fd.get((name, order + 1), 0) + 1
                nfs = tuple(sorted(fd.items()))
                ce = _craw(c[0] * e, c[1] * e, c[2])
                if rf == 1:
                    # r * r = s cancels the chain-rule 1/s
                    pieces.append(((xkey, 0, wf, sm, qn, consts, nfs), ce))
                else:
                    pieces.append(((xkey, 1, wf, sm + 1, qn, consts, nfs), ce))
            for k2, cc in pieces:
                got = out.get(k2)
                v = cc if got is None else _cadd(got, cc)
                if v[0] or v[1]:
                    out[k2] = v
                else:
                    out.pop(k2, None)
        return GeomScalar(out)

    def radial_derivative(self):
        """d/dr for radial elements: (x . grad) / r."""
        g = _ZERO
        for ax in range(3):
            g = g + GeomScalar.coordinate(ax) * self.partial(ax)
        return g * _R_OVER_S

    # ---- substitution ----
    def substitute(self, funcs=None, consts=None):
        """Eliminate bound function symbols / constants.

        funcs maps base names (order 0) to radial GeomScalars; derivatives
        of bound symbols are derived via the radial chain rule.  consts
        maps constant names to GRat values.
        """
        funcs = funcs or {}
        consts = consts or {}
        if not funcs and not consts:
            return self
        for name in funcs:
            if name not in FUNCTION_NAMES:
                raise ValueError(f"cannot bind unknown function {name!r}")
        if any(n in ("alpha7", "hbar") for n in consts) and self._mentions_q():
            raise ValueError("cannot bind alpha7/hbar while w or q is present")
        dcache = {name: {0: g} for name, g in funcs.items()}

        def dfunc(name, order):
            cache = dcache[name]
            top = max(cache)
            while top < order:
                cache[top + 1] = cache[top].radial_derivative()
                top += 1
            return cache[order]

        out = _ZERO
        for key, c in self.num.items():
            xyz, rf, wf, sm, qn, cons, fs = key
            cg = _to_grat(c)
            kept_consts = []
            for name, e in cons:
                if name in consts:
                    v = consts[name]
                    if not isinstance(v, GRat):
                        raise TypeError("constant bindings must be GRat values")
                    cg = cg * v ** e
                else:
                    kept_consts.append((name, e))
            kept_fs = []
            factors = []
            for (name, order), e in fs:
                if name in funcs:
                    factors.append(dfunc(name, order) ** e)
                else:
                    kept_fs.append(((name, order), e))
            if cg.is_zero():
                continue
            term = GeomScalar({(xyz, rf, wf, sm, qn, tuple(kept_consts),
                                tuple(kept_fs)): _from_grat(cg)})
            for f in factors:
                term = term * f
            out = out + term
        return out

    def _mentions_q(self):
        return any(k[2] or k[4] for k in self.num)

    # ---- queries ----
    def is_radial(self):
        """True iff the element depends on position through r alone."""
        for i, j in ((0, 1), (1, 2)):
            t = GeomScalar.coordinate(i) * self.partial(j) \
                - GeomScalar.coordinate(j) * self.partial(i)
            if not t.is_zero():
                return False
        return True

    def is_number(self):
        num, M, N = self.canonical()
        if not num:
            return True
        if len(num) != 1 or M or N:
            return False
        (key, _), = num.items()
        return key == (_XYZ0, 0, 0, (), ())

    def as_grat(self):
        num, _M, _N = self.canonical()
        if not num:
            return GR_ZERO
        if not self.is_number():
            raise ValueError("not a pure number")
        return _to_grat(num[(_XYZ0, 0, 0, (), ())])

    def function_names(self):
        names = set()
        for key in self.num:
            for (name, _), _e in key[6]:
                names.add(name)
        return names

    def constant_names(self):
        names = set()
        for key in self.num:
            for name, _e in key[5]:
                names.add(name)
            if key[2] or key[4]:
                names.update(("alpha7", "hbar"))
        return names

    def max_function_order(self, name):
        best = -1
        for key in self.num:
            for (nm, order), _e in key[6]:
                if nm == name:
                    best = max(best, order)
        return best

    # ---- numeric evaluation ----
    def evaluate(self, point, const_values):
        """Floating evaluation at a point; all constants must be bound.

        Evaluates the canonical form, so exact cancellations never reach
        floating point.
        """
        import math
        x, y, z = (float(v) for v in point)
        s = x * x + y * y + z * z
        if s == 0:
            raise ValueError("evaluation at the origin is undefined")
        cv = dict(const_values)
        qv = 2.0 + cv.get("alpha7", 0.0) * cv.get("hbar", 0.0) ** 2 * s
        if qv < 0:
            raise ValueError("q < 0 at this binding")
        rv, wv = math.sqrt(s), math.sqrt(qv)
        coords = (x, y, z)
        num, m, n = self.canonical()
        total = 0j
        for (xyz, rf, wf, consts, fs), c in num.items():
            if fs:
                raise ValueError("free function symbols remain")
            v = complex(c[0] / c[2], c[1] / c[2])
            for i in range(3):
                if xyz[i]:
                    v *= coords[i] ** xyz[i]
            if rf:
                v *= rv
            if wf:
                v *= wv
            for name, e in consts:
                if name not in cv:
                    raise ValueError(f"unbound constant {name!r}")
                v *= cv[name] ** e
            total += v
        if m:
            total /= s ** m
        if n:
            total /= qv ** n
        return total

    # ---- identity ----
    def _frozen(self):
        num, M, N = self.canonical()
        items = tuple(sorted(num.items(), key=lambda kv: _term_order5(kv[0])))
        return (items, M, N)

    def __eq__(self, other):
        if not isinstance(other, GeomScalar):
            return NotImplemented
        if self.num == other.num:
            return True
        return self._frozen() == other._frozen()

    def __hash__(self):
        return hash(self._frozen())

    def sorted_terms(self):
        """Canonical 5-key terms, descending, plus the (M, N) denominators."""
        num, M, N = self.canonical()
        terms = sorted(num.items(), key=lambda kv: _term_order5(kv[0]),
                       reverse=True)
        return terms, M, N

    def leading(self):
        """(5-key, GRat coefficient) of the canonical leading term."""
        num, _M, _N = self.canonical()
        key = max(num, key=_term_order5)
        return key, _to_grat(num[key])

    def term_count(self):
        return len(self.canonical()[0])

    def __repr__(self):
        from .minilang import format_scalar
        return format_scalar(self)


def _term_order5(key):
    xyz, rf, wf, consts, fs = key
    return (xyz[0] + xyz[1] + xyz[2], xyz, rf, wf, fs, consts)


def _axis_index(axis):
    if axis in (0, 1, 2):
        return axis
    try:
        return {"x": 0, "y": 1, "z": 2}[axis]
    except KeyError:
        raise ValueError(f"bad axis {axis!r}") from None


_ZERO = GeomScalar({})
_ONE = GeomScalar({_UNIT_KEY: (1, 0, 1)})
_S = GeomScalar({((2, 0, 0), 0, 0, 0, 0, (), ()): (1, 0, 1),
                 ((0, 2, 0), 0, 0, 0, 0, (), ()): (1, 0, 1),
                 ((0, 0, 2), 0, 0, 0, 0, (), ()): (1, 0, 1)})
_Q = GeomScalar({(_XYZ0, 0, 0, 0, 0, (), ()): (2, 0, 1),
                 ((2, 0, 0), 0, 0, 0, 0, _A7H2, ()): (1, 0, 1),
                 ((0, 2, 0), 0, 0, 0, 0, _A7H2, ()): (1, 0, 1),
                 ((0, 0, 2), 0, 0, 0, 0, _A7H2, ()): (1, 0, 1)})
_R_OVER_S = GeomScalar({(_XYZ0, 1, 0, 1, 0, (), ()): (1, 0, 1)})

# Convenient shared values.
ZERO = _ZERO
ONE = _ONE
S = _S
Q = _Q
X = GeomScalar.coordinate(0)
Y = GeomScalar.coordinate(1)
Z = GeomScalar.coordinate(2)
R = GeomScalar.atom_r()
W = GeomScalar.atom_w()
I_UNIT = GeomScalar.imag_unit()
HBAR = GeomScalar.const("hbar")
EPS = GeomScalar.const("eps")
