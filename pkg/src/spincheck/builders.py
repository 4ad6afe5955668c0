"""Constructors for every named operator the engine verifies.

Displayed operators are transcribed verbatim; where verification later
shows a displayed form cannot commute, a separately named repaired
variant encodes the minimal fix (see catalog.KNOWN_DISCREPANCIES), and
the verbatim form is kept so the discrepancy is reported, not hidden.
"""

from __future__ import annotations

from fractions import Fraction

from .gauss import GRat
from .geomring import GeomScalar, ZERO
from .minilang import parse_scalar
from .opalg import (Operator, angular, laplacian, momentum, sigma_dot_L,
                    sigma_dot_p, symmetrize_first_order, x_dot_p)
from .spinalg import (TwoSpinMatrix, realize_label, sigma1, sigma2,
                      sigma_dot_sigma, sigma1_dot_x, sigma2_dot_x)

POTENTIAL_NAMES = tuple(f"V{i}" for i in range(6))
WEIGHT_NAMES = tuple(f"f{i}" for i in range(1, 11))

_HALF = GRat(Fraction(1, 2))


def _p(text):
    return parse_scalar(text)


class PotentialSpec:
    """Assignment for V0..V5; symbolic slots stay formal function symbols."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        full = {}
        entries = entries or {}
        for name in POTENTIAL_NAMES:
            g = entries.get(name)
            if g is None:
                g = GeomScalar.func(name)
            if not isinstance(g, GeomScalar):
                raise TypeError(f"potential {name} must be a GeomScalar")
            if not g.is_radial():
                raise ValueError(f"potential {name} is not radial")
            full[name] = g
        extra = set(entries) - set(POTENTIAL_NAMES)
        if extra:
            raise ValueError(f"unknown potential slots {sorted(extra)}")
        object.__setattr__(self, "entries", full)

    def __setattr__(self, name, value):
        raise AttributeError("PotentialSpec is immutable")

    @staticmethod
    def symbolic():
        return PotentialSpec({})

    def substituted(self, funcs=None, consts=None):
        return PotentialSpec({n: g.substitute(funcs, consts)
                              for n, g in self.entries.items()})

    def __getitem__(self, name):
        return self.entries[name]


class GeneralScalarSpec:
    """Assignment for the weights f1..f10 of the general scalar operator."""

    __slots__ = ("entries",)

    def __init__(self, entries=None, default_zero=False):
        full = {}
        entries = entries or {}
        for name in WEIGHT_NAMES:
            g = entries.get(name)
            if g is None:
                g = ZERO if default_zero else GeomScalar.func(name)
            if not isinstance(g, GeomScalar):
                raise TypeError(f"weight {name} must be a GeomScalar")
            if not g.is_radial():
                raise ValueError(f"weight {name} is not radial")
            full[name] = g
        extra = set(entries) - set(WEIGHT_NAMES)
        if extra:
            raise ValueError(f"unknown weight slots {sorted(extra)}")
        object.__setattr__(self, "entries", full)

    def __setattr__(self, name, value):
        raise AttributeError("GeneralScalarSpec is immutable")

    @staticmethod
    def symbolic():
        return GeneralScalarSpec({})

    def __getitem__(self, name):
        return self.entries[name]


# ---- elementary matrices ----

def m_identity():
    return TwoSpinMatrix.identity()


def m_sigma_sigma():
    return sigma_dot_sigma()


def m_xx():
    """(sigma1, x)(sigma2, x)."""
    return sigma1_dot_x() * sigma2_dot_x()


def _angular_coefficients(slot):
    """Matrix coefficient of p_k in (sigma_slot, L), for k = 0, 1, 2."""
    mk = sigma1 if slot == 1 else sigma2
    x, y, z = (GeomScalar.coordinate(i) for i in range(3))
    return (
        mk(2).scale(z) - mk(3).scale(y),
        mk(3).scale(x) - mk(1).scale(z),
        mk(1).scale(y) - mk(2).scale(x),
    )


# ---- the ten scalar constructs ----

def momentum_decomposition(j):
    """(multiplication matrix or None, [(coefficient matrix, axis), ...])."""
    x = [GeomScalar.coordinate(i) for i in range(3)]
    if j == 1:
        return m_identity(), []
    if j == 2:
        return None, [(TwoSpinMatrix.identity().scale(x[k]), k) for k in range(3)]
    if j == 3:
        return m_sigma_sigma(), []
    if j == 4:
        return m_xx(), []
    if j == 5:
        s1x = sigma1_dot_x()
        return None, [(s1x * sigma2(k + 1), k) for k in range(3)]
    if j == 6:
        s2x = sigma2_dot_x()
        return None, [(s2x * sigma1(k + 1), k) for k in range(3)]
    if j == 7:
        ss = m_sigma_sigma()
        return None, [(ss.scale(x[k]), k) for k in range(3)]
    if j in (8, 9):
        return None, list(zip(_angular_coefficients(1 if j == 8 else 2),
                              range(3)))
    if j == 10:
        mxx = m_xx()
        return None, [(mxx.scale(x[k]), k) for k in range(3)]
    raise ValueError(f"scalar construct index out of range: {j}")


def build_scalar_basis(j):
    """The unsymmetrized construct S_j as displayed."""
    mult, moms = momentum_decomposition(j)
    out = Operator.from_matrix(mult) if mult is not None else Operator.zero()
    for coeff, axis in moms:
        out = out + Operator.from_matrix(coeff).compose(momentum(axis))
    return out


def build_general_scalar(spec):
    """Weyl-symmetrized sum of the weighted constructs.

    Each momentum coefficient c p_k becomes (1/2){c, p_k}; pure
    multiplication parts pass through unchanged.
    """
    if not isinstance(spec, GeneralScalarSpec):
        spec = GeneralScalarSpec(spec)
    out = Operator.zero()
    for j in range(1, 11):
        f = spec[f"f{j}"]
        if f.is_zero():
            continue
        mult, moms = momentum_decomposition(j)
        if mult is not None:
            out = out + Operator.from_matrix(mult.scale(f))
        for coeff, axis in moms:
            out = out + symmetrize_first_order(coeff.scale(f), axis)
    return out


def printed_general_scalar(spec=None):
    """The general scalar operator exactly as displayed (symbolic weights).

    Transcribed literally, including the bare f5'+f6' in the
    (sigma1,x)(sigma2,x) coefficient.
    """
    if spec is None:
        spec = GeneralScalarSpec.symbolic()
    f = {j: spec[f"f{j}"] for j in range(1, 11)}
    fp = {}
    for j in (2, 5, 6, 7, 10):
        fp[j] = _weight_derivative(spec, j)
    ih2 = _p("i*hbar/2")
    r = GeomScalar.atom_r()
    out = Operator.from_scalar(f[1] - ih2 * (r * fp[2] + _p("3") * f[2]))
    first = TwoSpinMatrix.identity().scale(f[2]) \
        + m_sigma_sigma().scale(f[7]) + m_xx().scale(f[10])
    out = out + Operator.from_matrix(first).compose(x_dot_p())
    out = out + Operator.from_matrix(m_sigma_sigma().scale(
        f[3] - ih2 * (f[5] + f[6] + r * fp[7] + _p("3") * f[7])))
    out = out + Operator.from_matrix(m_xx().scale(
        f[4] - ih2 * (fp[5] + fp[6] + r * fp[10] + _p("5") * f[10])))
    out = out + Operator.from_matrix(sigma1_dot_x().scale(f[5])) \
        .compose(sigma_dot_p(2))
    out = out + Operator.from_matrix(sigma2_dot_x().scale(f[6])) \
        .compose(sigma_dot_p(1))
    out = out + Operator.from_scalar(f[8]).compose(sigma_dot_L(1))
    out = out + Operator.from_scalar(f[9]).compose(sigma_dot_L(2))
    return out


def _weight_derivative(spec, j):
    g = spec[f"f{j}"]
    return g.radial_derivative()


# ---- the Hamiltonian ----

def build_hamiltonian(spec):
    """-(hbar^2/2) Lap + V0 + (V1/2)(s1+s2, L) + V2 (s1,s2) + V3 (x,s1)(x,s2)
    + V4 (s1,p)(s2,p) + (V5/2)[(s1,L)(s2,L) + (s2,L)(s1,L)],
    with every radial weight standing to the left as displayed."""
    if not isinstance(spec, PotentialSpec):
        spec = PotentialSpec(spec)
    v = spec.entries
    hh = _p("hbar^2/2")
    out = laplacian().apply_matrix(lambda m: m.scale(-hh))
    out = out + Operator.from_scalar(v["V0"])
    sL = sigma_dot_L(1) + sigma_dot_L(2)
    out = out + Operator.from_scalar(v["V1"].mul_grat(_HALF)).compose(sL)
    out = out + Operator.from_matrix(m_sigma_sigma().scale(v["V2"]))
    out = out + Operator.from_matrix(m_xx().scale(v["V3"]))
    out = out + Operator.from_scalar(v["V4"]).compose(
        sigma_dot_p(1).compose(sigma_dot_p(2)))
    ll = sigma_dot_L(1).compose(sigma_dot_L(2)) \
        + sigma_dot_L(2).compose(sigma_dot_L(1))
    out = out + Operator.from_scalar(v["V5"].mul_grat(_HALF)).compose(ll)
    return out


# ---- displayed integrals ----

def _mult(matrix, scalar_text=None):
    if scalar_text is not None:
        matrix = matrix.scale(_p(scalar_text))
    return Operator.from_matrix(matrix)


def _sxp(slot_x, slot_p):
    mx = sigma1_dot_x() if slot_x == 1 else sigma2_dot_x()
    return Operator.from_matrix(mx).compose(sigma_dot_p(slot_p))


def _spin_total(axis):
    """S_axis = (sigma1 + sigma2)/2."""
    return (sigma1(axis) + sigma2(axis)).scale_grat(_HALF)


def _s_dot_x():
    out = TwoSpinMatrix.zero()
    for a in range(1, 4):
        out = out + _spin_total(a).scale(GeomScalar.coordinate(a - 1))
    return out


def _gauge_momentum(i):
    """P_i = p_i - (2 hbar / r^2) eps_ikl x_k S_l."""
    mat = TwoSpinMatrix.zero()
    for k in range(1, 4):
        for l in range(1, 4):
            e = _levi(i, k, l)
            if e == 0:
                continue
            mat = mat + _spin_total(l).scale(
                GeomScalar.coordinate(k - 1)).scale_grat(GRat(e))
    return momentum(i - 1) - Operator.from_matrix(
        mat.scale(_p("2*hbar/r^2")))


def _levi(i, j, k):
    if (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        return 1
    if (i, j, k) in ((3, 2, 1), (1, 3, 2), (2, 1, 3)):
        return -1
    return 0


def gauge_J(i):
    """J_i = L_i + hbar S_i."""
    return angular(i - 1) + Operator.from_matrix(
        _spin_total(i).scale(GeomScalar.const("hbar")))


def gauge_S(i):
    """S_i = -hbar S_i + (2 hbar / r^2) x_i (S, x)."""
    mat = _spin_total(i).scale(_p("-hbar")) + _s_dot_x().scale(
        _p("2*hbar/r^2") * GeomScalar.coordinate(i - 1))
    return Operator.from_matrix(mat)


def gauge_P(i):
    return _gauge_momentum(i)


INTEGRAL_IDS = tuple([f"Y{i}" for i in range(1, 23)]
                     + [f"J{i}" for i in (1, 2, 3)]
                     + [f"S{i}" for i in (1, 2, 3)]
                     + [f"P{i}" for i in (1, 2, 3)]
                     + ["trivial_id", "trivial_sigma"])


def build_integral(ident):
    """The displayed integral of motion, transcribed verbatim."""
    xp = x_dot_p()
    ss = m_sigma_sigma()
    mxx = m_xx()
    if ident == "Y1":
        return sigma_dot_L(2)
    if ident == "Y2":
        return sigma_dot_L(1)
    if ident == "Y3":
        return _mult(mxx, "1/r^2").compose(-xp + Operator.from_scalar(
            _p("3*i*hbar/2"))) + _sxp(2, 1)
    if ident == "Y4":
        return Operator.from_scalar(_p("-i*hbar/r")) \
            + _mult(TwoSpinMatrix.identity() + ss, "1/r").compose(xp) \
            + _mult(mxx, "2/r^3").compose(-xp + Operator.from_scalar(_p("i*hbar"))) \
            + _mult(ss, "-i*hbar/(2*r)")
    if ident == "Y4v":
        return Operator.from_scalar(_p("-i*hbar/r")) \
            + _mult(TwoSpinMatrix.identity() + ss, "1/r").compose(xp) \
            + _mult(mxx, "2/r^3").compose(-xp + Operator.from_scalar(_p("i*hbar"))) \
            + _mult(ss, "-i*hbar/r")
    if ident == "Y5":
        return _sxp(1, 2) + _sxp(2, 1) + _mult(mxx, "1/r^2").compose(
            xp.scale_grat(GRat(-2)) + Operator.from_scalar(_p("3*i*hbar")))
    if ident == "Y6":
        return _mult(mxx, "1/r^2")
    if ident == "Y7":
        return sigma_dot_L(1) + sigma_dot_L(2)
    if ident == "Y8":
        return sigma_dot_L(1) - sigma_dot_L(2)
    if ident == "Y9":
        return _sxp(1, 2) - _sxp(2, 1)
    if ident == "Y10":
        return sigma_dot_L(2) - _mult(mxx, "beta/r^2")
    if ident == "Y11":
        return sigma_dot_L(1) - _mult(mxx, "beta/r^2")
    if ident == "Y12":
        return sigma_dot_L(1) + sigma_dot_L(2) - _mult(mxx, "2*beta/r^2")
    if ident == "Y13":
        return sigma_dot_L(2) - _mult(mxx, "hbar/(2*r^2)")
    if ident == "Y14":
        return sigma_dot_L(1) - _mult(mxx, "hbar/(2*r^2)")
    if ident == "Y15":
        return Operator.from_scalar(_p("-i*hbar/r")) \
            + _mult(TwoSpinMatrix.identity() - ss, "1/r").compose(xp) \
            + _mult(ss, "i*hbar/r")
    if ident in ("Y16", "Y16v"):
        w = "sqrt(2+alpha7*hbar^2*r^2)"
        mid = "4+2*r" if ident == "Y16" else "6"
        return _mult(mxx, f"(1+eps*{w})/r^3").compose(xp) \
            + _mult(ss, f"eps*i*hbar*{w}/(2*r)") \
            + _mult(mxx, f"-eps*i*hbar*({mid}+2*eps*{w}+3*alpha7*hbar^2*r^2)"
                         f"/(2*r^3*{w})") \
            + Operator.from_scalar(_p(f"-eps*{w}/(2*r)")).compose(
                _sxp(1, 2) + _sxp(2, 1))
    if ident == "Y17":
        return sigma_dot_L(1) + sigma_dot_L(2) - _mult(mxx, "hbar/r^2")
    if ident == "Y18":
        return build_integral("Y16").scale_grat(GRat(4)) + build_integral("Y15")
    if ident == "Y18v":
        return build_integral("Y16v").scale_grat(GRat(4)) + build_integral("Y15")
    if ident == "Y19":
        return sigma_dot_L(2) - _mult(mxx, "hbar/(6*r^2)")
    if ident == "Y19v":
        return sigma_dot_L(2) + _mult(mxx, "hbar/(6*r^2)")
    if ident == "Y20":
        return sigma_dot_L(1) - _mult(mxx, "hbar/(6*r^2)")
    if ident == "Y20v":
        return sigma_dot_L(1) + _mult(mxx, "hbar/(6*r^2)")
    if ident in ("Y21", "Y22"):
        f1 = GeomScalar.func("f1")
        one_minus = TwoSpinMatrix.identity() - ss
        if ident == "Y22":
            return Operator.from_matrix(one_minus.scale(f1))
        f7 = GeomScalar.func("f7")
        f7p = GeomScalar.func("f7", 1)
        inner = Operator.from_scalar(
            f1 + _p("i*hbar/2") * (GeomScalar.atom_r() * f7p + _p("3") * f7)) \
            - Operator.from_scalar(f7).compose(xp)
        return Operator.from_matrix(one_minus).compose(inner)
    if ident in ("J1", "J2", "J3"):
        return gauge_J(int(ident[1]))
    if ident in ("S1", "S2", "S3"):
        return gauge_S(int(ident[1]))
    if ident in ("P1", "P2", "P3"):
        return gauge_P(int(ident[1]))
    if ident == "trivial_id":
        return Operator.identity()
    if ident == "trivial_sigma":
        return Operator.from_matrix(ss)
    raise ValueError(f"unknown integral id {ident!r}")


# ---- gauge transformation matrix ----

def build_gauge_matrix():
    """The solved gauge matrix U in Cartesian form.

    e^{2i phi} sin^2 t = (x+iy)^2/s, cos^2 t = z^2/s,
    e^{i phi} cos t sin t = (x+iy) z / s, sin^2 t = (x^2+y^2)/s.
    """
    x, y, z = (GeomScalar.coordinate(i) for i in range(3))
    i_ = GeomScalar.imag_unit()
    xpy = x + i_ * y
    xmy = x - i_ * y
    sinv = GeomScalar.s_power(-1)
    z2 = z * z * sinv
    pp = xpy * xpy * sinv
    mm = xmy * xmy * sinv
    pz = xpy * z * sinv
    mz = xmy * z * sinv
    s2 = (x * x + y * y) * sinv
    entries = [
        [pp, -pz, -pz, z2],
        [pz, s2, -z2, -mz],
        [pz, -z2, s2, -mz],
        [z2, mz, mz, mm],
    ]
    return matrix_from_entries(entries)


def matrix_from_entries(entries):
    """Decompose an explicit 4x4 array of GeomScalars over the spin basis."""
    quarter = GRat(Fraction(1, 4))
    coeffs = {}
    for a in range(4):
        for b in range(4):
            e4 = realize_label((a, b))
            acc = ZERO
            for i in range(4):
                for j in range(4):
                    u = e4[i][j]
                    if not u.is_zero():
                        acc = acc + entries[j][i].mul_grat(u)
            acc = acc.mul_grat(quarter)
            if not acc.is_zero():
                coeffs[(a, b)] = acc
    m = TwoSpinMatrix(coeffs)
    return m


def gauge_conjugated_scalar_hamiltonian():
    """U^dagger (-(hbar^2/2) Lap + V0) U, computed operator-exactly."""
    u = build_gauge_matrix()
    h0 = build_hamiltonian(PotentialSpec({
        "V1": ZERO, "V2": ZERO, "V3": ZERO, "V4": ZERO, "V5": ZERO}))
    return Operator.from_matrix(u.adjoint()).compose(h0).compose(
        Operator.from_matrix(u))


def gauge_induced_spec():
    """The displayed gauge-induced potential set, with V0 symbolic."""
    return PotentialSpec({
        "V0": GeomScalar.func("V0") + _p("2*hbar^2/r^2"),
        "V1": _p("2*hbar/r^2"),
        "V2": _p("hbar^2/r^2"),
        "V3": _p("-hbar^2/r^4"),
        "V4": ZERO,
        "V5": ZERO,
    })
