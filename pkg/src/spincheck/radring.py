"""Auxiliary ring for the determining-equation derivation.

FreeScalar is a commutative ring of Laurent polynomials in an explicit
radial power t (= r) over xyz monomials, constants and function symbols,
WITHOUT the relation t^2 = x^2+y^2+z^2.  Radial content produced by
chain rules stays in t; x, y, z appear only through the operators'
vector structure, which is how the radial constraint system is
presented.  Full sums x^2+y^2+z^2 arising structurally are collapsed
into t^2 level by level at extraction time (see determining).

This ring exists purely so the extracted radial equations keep their
displayed shape; entry verification always runs in the exact geometric
ring.
"""

from __future__ import annotations

from .geomring import (CONSTANT_NAMES, FUNCTION_NAMES, _cadd, _cmul,
                       _cneg, _craw, _from_grat, _merge_cached)

_XYZ0 = (0, 0, 0)
_UNIT = (_XYZ0, 0, (), ())


class FreeScalar:
    """Term dict (xyz, t_exp, consts, fs) -> raw Gaussian-rational coeff."""

    __slots__ = ("num",)

    def __init__(self, num=None):
        object.__setattr__(self, "num", num or {})

    def __setattr__(self, name, value):
        raise AttributeError("FreeScalar is immutable")

    @staticmethod
    def zero():
        return _F_ZERO

    @staticmethod
    def one():
        return _F_ONE

    @staticmethod
    def integer(n):
        if n == 0:
            return _F_ZERO
        return FreeScalar({_UNIT: (n, 0, 1)})

    @staticmethod
    def from_grat(c):
        if c.is_zero():
            return _F_ZERO
        return FreeScalar({_UNIT: _from_grat(c)})

    @staticmethod
    def imag_unit():
        return FreeScalar({_UNIT: (0, 1, 1)})

    @staticmethod
    def coordinate(axis):
        e = [0, 0, 0]
        e[axis if axis in (0, 1, 2) else "xyz".index(axis)] = 1
        return FreeScalar({(tuple(e), 0, (), ()): (1, 0, 1)})

    @staticmethod
    def t_power(k):
        return FreeScalar({(_XYZ0, k, (), ()): (1, 0, 1)})

    @staticmethod
    def const(name, exp=1):
        if name not in CONSTANT_NAMES:
            raise ValueError(f"unknown constant {name!r}")
        if name == "eps":
            exp &= 1
            if exp == 0:
                return _F_ONE
        return FreeScalar({(_XYZ0, 0, ((name, exp),), ()): (1, 0, 1)})

    @staticmethod
    def func(name, order=0):
        if name not in FUNCTION_NAMES:
            raise ValueError(f"unknown function symbol {name!r}")
        return FreeScalar({(_XYZ0, 0, (), (((name, order), 1),)): (1, 0, 1)})

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if not self.num:
            return other
        if not other.num:
            return self
        acc = dict(self.num)
        for k, c in other.num.items():
            got = acc.get(k)
            v = c if got is None else _cadd(got, c)
            if v[0] or v[1]:
                acc[k] = v
            else:
                acc.pop(k, None)
        return FreeScalar(acc)

    @staticmethod
    def sum_many(elems):
        acc = {}
        for e in elems:
            for k, c in e.num.items():
                got = acc.get(k)
                v = c if got is None else _cadd(got, c)
                if v[0] or v[1]:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        return FreeScalar(acc)

    def __neg__(self):
        return FreeScalar({k: _cneg(c) for k, c in self.num.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.num or not other.num:
            return _F_ZERO
        out = {}
        for (x1, t1, c1, f1), ca in self.num.items():
            for (x2, t2, c2, f2), cb in other.num.items():
                k = ((x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2]), t1 + t2,
                     _merge_cached(c1, c2), _merge_cached(f1, f2))
                c = _cmul(ca, cb)
                got = out.get(k)
                v = c if got is None else _cadd(got, c)
                if v[0] or v[1]:
                    out[k] = v
                else:
                    out.pop(k, None)
        return FreeScalar(out)

    def mul_grat(self, c):
        if c.is_zero() or not self.num:
            return _F_ZERO
        raw = _from_grat(c)
        return FreeScalar({k: _cmul(v, raw) for k, v in self.num.items()})

    def conjugate(self):
        return FreeScalar({k: (c[0], -c[1], c[2]) for k, c in self.num.items()})

    def partial(self, axis):
        i = axis if axis in (0, 1, 2) else "xyz".index(axis)
        out = {}

        def put(k, c):
            got = out.get(k)
            v = c if got is None else _cadd(got, c)
            if v[0] or v[1]:
                out[k] = v
            else:
                out.pop(k, None)

        for (xyz, t, consts, fs), c in self.num.items():
            if xyz[i] > 0:
                nx = list(xyz)
                nx[i] -= 1
                put((tuple(nx), t, consts, fs),
                    _craw(c[0] * xyz[i], c[1] * xyz[i], c[2]))
            nx = list(xyz)
            nx[i] += 1
            xkey = tuple(nx)
            if t:
                put((xkey, t - 2, consts, fs),
                    _craw(c[0] * t, c[1] * t, c[2]))
            for (name, order), e in fs:
                fd = dict(fs)
                fd[(name, order)] -= 1
                if fd[(name, order)] == 0:
                    del fd[(name, order)]
                fd[(name, order + 1)] = fd.get((name, order + 1), 0) + 1
                put((xkey, t - 1, consts, tuple(sorted(fd.items()))),
                    _craw(c[0] * e, c[1] * e, c[2]))
        return FreeScalar(out)

    def substitute(self, funcs=None, consts=None):
        funcs = funcs or {}
        if consts:
            raise NotImplementedError("constant bindings stay symbolic here")
        if not funcs:
            return self
        dcache = {name: {0: g} for name, g in funcs.items()}

        def dfunc(name, order):
            cache = dcache[name]
            top = max(cache)
            while top < order:
                nxt = FreeScalar.zero()
                for ax in range(3):
                    nxt = nxt + FreeScalar.coordinate(ax) \
                        * cache[top].partial(ax)
                cache[top + 1] = nxt * FreeScalar.t_power(-1)
                top += 1
            return cache[order]

        out = _F_ZERO
        for (xyz, t, consts_, fs), c in self.num.items():
            kept = []
            factors = []
            for (name, order), e in fs:
                if name in funcs:
                    f = dfunc(name, order)
                    for _ in range(e):
                        factors.append(f)
                else:
                    kept.append(((name, order), e))
            term = FreeScalar({(xyz, t, consts_, tuple(kept)): c})
            for f in factors:
                term = term * f
            out = out + term
        return out


_F_ZERO = FreeScalar({})
_F_ONE = FreeScalar({_UNIT: (1, 0, 1)})


def collapse_radial(num):
    """Rewrite full x^2+y^2+z^2 sums into t^2.

    Works sector by sector: within one radial level t and one
    (constants, function-symbols) content class, an xyz polynomial that
    is exactly divisible by s moves up to level t+2.  Image-preserving
    under t^2 = s; returns a dict with no collapsible sector left.
    """
    levels = {}
    for (xyz, t, consts, fs), c in num.items():
        levels.setdefault(t, {}).setdefault((consts, fs), {})[xyz] = c
    changed = True
    while changed:
        changed = False
        for t in sorted(levels):
            sectors = levels.get(t)
            if not sectors:
                continue
            for ckey in list(sectors):
                poly = sectors.get(ckey)
                if not poly:
                    continue
                quo = _sector_divide_s(poly)
                if quo is None:
                    continue
                del sectors[ckey]
                upper = levels.setdefault(t + 2, {}).setdefault(ckey, {})
                for xyz, c in quo.items():
                    got = upper.get(xyz)
                    v = c if got is None else _cadd(got, c)
                    if v[0] or v[1]:
                        upper[xyz] = v
                    else:
                        upper.pop(xyz, None)
                changed = True
    out = {}
    for t, sectors in levels.items():
        for (consts, fs), poly in sectors.items():
            for xyz, c in poly.items():
                if c[0] or c[1]:
                    out[(xyz, t, consts, fs)] = c
    return out


def _sector_divide_s(poly):
    """Exact division of {xyz: coeff} by s, or None."""
    levels = {}
    for xyz, c in poly.items():
        levels.setdefault(xyz[0], {})[xyz] = c
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
        for xyz, c in bucket.items():
            if c[0] == 0 and c[1] == 0:
                continue
            tkey = (la, xyz[1], xyz[2])
            got = quo.get(tkey)
            quo[tkey] = c if got is None else _cadd(got, c)
            nc = _cneg(c)
            for k2 in ((la, xyz[1] + 2, xyz[2]), (la, xyz[1], xyz[2] + 2)):
                got = lower.get(k2)
                lower[k2] = nc if got is None else _cadd(got, nc)
    return {k: c for k, c in quo.items() if c[0] or c[1]}
