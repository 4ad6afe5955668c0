"""Parser and printer for the radial expression mini-language.

Grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-'? base ('^' '-'? integer)?
    base   := integer | name "'"* | 'sqrt' '(' expr ')' | '(' expr ')'

Names cover the constants, the function symbols V0..V5 / f1..f10 (primes
denote radial derivatives), the coordinates x, y, z, the radius r and the
imaginary unit i.  The only admitted radical is
sqrt(2+alpha7*hbar^2*r^2).  Parse -> print -> parse is a fixed point.
"""

from __future__ import annotations

from .gauss import GRat
from .geomring import CONSTANT_NAMES, FUNCTION_NAMES, GeomScalar, Q, W


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.items.append(("int", text[i:j], i))
                i = j
            elif ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                while j < n and text[j] == "'":
                    j += 1
                self.items.append(("name", text[i:j], i))
                i = j
            elif ch in "+-*/^()":
                self.items.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.k = 0

    def peek(self):
        return self.items[self.k] if self.k < len(self.items) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok


def parse_scalar(text):
    """Parse a mini-language expression into a GeomScalar."""
    toks = _Tokens(text)
    value = _expr(toks)
    tok = toks.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return value


def _expr(toks):
    value = _term(toks)
    while toks.peek()[0] in ("+", "-"):
        op = toks.next()[0]
        rhs = _term(toks)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(toks):
    value = _factor(toks)
    while toks.peek()[0] in ("*", "/"):
        op = toks.next()[0]
        rhs = _factor(toks)
        if op == "*":
            value = value * rhs
        else:
            pos = toks.peek()[2]
            try:
                value = value / rhs
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), pos) from None
    return value


def _factor(toks):
    neg = False
    while toks.peek()[0] == "-":
        toks.next()
        neg = not neg
    value = _base(toks)
    if toks.peek()[0] == "^":
        toks.next()
        esign = 1
        if toks.peek()[0] == "-":
            toks.next()
            esign = -1
        tok = toks.expect("int")
        try:
            value = value ** (esign * int(tok[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), tok[2]) from None
    return -value if neg else value


def _base(toks):
    tok = toks.next()
    kind, text, pos = tok
    if kind == "int":
        return GeomScalar.integer(int(text))
    if kind == "(":
        value = _expr(toks)
        toks.expect(")")
        return value
    if kind == "name":
        primes = len(text) - len(text.rstrip("'"))
        name = text[: len(text) - primes] if primes else text
        if name == "sqrt":
            if primes:
                raise ParseError("sqrt takes no primes", pos)
            toks.expect("(")
            arg = _expr(toks)
            toks.expect(")")
            if arg != Q:
                raise ParseError(
                    "inadmissible radical: sqrt argument must be "
                    "2+alpha7*hbar^2*r^2", pos)
            return W
        if primes and name not in FUNCTION_NAMES:
            raise ParseError(f"{name!r} cannot carry derivatives", pos)
        if name in FUNCTION_NAMES:
            return GeomScalar.func(name, primes)
        if name in CONSTANT_NAMES:
            return GeomScalar.const(name)
        if name == "r":
            return GeomScalar.atom_r()
        if name == "i":
            return GeomScalar.imag_unit()
        if name in ("x", "y", "z"):
            return GeomScalar.coordinate(name)
        raise ParseError(f"unknown name {name!r}", pos)
    raise ParseError(f"unexpected token {text!r}", pos)


# ---- printing ----

_SQRT_TEXT = "sqrt(2+alpha7*hbar^2*r^2)"


def _format_frac(f):
    return str(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coeff_parts(c):
    """(sign, text or None) for a GRat; None text means bare 1."""
    re, im = c.re, c.im
    if im == 0:
        sign = "-" if re < 0 else "+"
        mag = abs(re)
        return sign, None if mag == 1 else _format_frac(mag)
    if re == 0:
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        return sign, "i" if mag == 1 else f"{_format_frac(mag)}*i"
    sign = "-" if re < 0 else "+"
    a, b = (abs(re), -im) if re < 0 else (re, im)
    inner = f"{_format_frac(a)}{'+' if b > 0 else '-'}{_format_frac(abs(b))}*i"
    return sign, f"({inner})"


def _pow_text(base, e):
    if e == 1:
        return base
    return f"{base}^{e}" if e > 0 else f"{base}^-{-e}"


def format_scalar(e):
    """Canonical text form; parses back to the same element."""
    terms, m, n = e.sorted_terms()
    if not terms:
        return "0"
    out = []
    for key, c in terms:
        xyz, rf, wf, consts, fs = key
        sign, ctext = _coeff_parts(GRat(_raw=c))
        parts = [] if ctext is None else [ctext]
        for name, ex in consts:
            parts.append(_pow_text(name, ex))
        for var, ex in zip("xyz", xyz):
            if ex:
                parts.append(_pow_text(var, ex))
        re_ = rf - 2 * m
        if re_:
            parts.append(_pow_text("r", re_))
        we_ = wf - 2 * n
        if we_:
            parts.append(_pow_text(_SQRT_TEXT, we_))
        for (name, order), ex in fs:
            parts.append(_pow_text(name + "'" * order, ex))
        body = "*".join(parts) if parts else "1"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
