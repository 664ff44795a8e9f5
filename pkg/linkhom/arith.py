"""Exact scalars on sympy's polynomial domains.

QQ is the rational field, POLY = QQ[t] holds the entries of a chain and
QQT = QQ(t) the scalars of the generic fiber. Values are the domains' own
elements (PythonMPQ/mpq, PolyElement, FracElement); this module only adds
the textual forms, evaluation at a point and rational-root extraction.
"""
import re
from tokenize import TokenError

from sympy import Symbol, integer_nthroot
from sympy.parsing.sympy_parser import (parse_expr, standard_transformations,
                                        implicit_multiplication_application, convert_xor)
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from .errors import BothZero, ZeroDenominator, PoleAtPoint

t_symbol = Symbol('t')
POLY = QQ[t_symbol]
QQT = QQ.frac_field(t_symbol)
T = POLY.gens[0]

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')
_POLY_TEXT_RE = re.compile(r'^[\dt\s+\-*/^()]*$')
_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_rational(text):
    """Parse "p/q" or "p". Anything else (decimals, exponents) is rejected."""
    mo = _RATIONAL_RE.match(text)
    if not mo:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(mo.group(1))
    den = int(mo.group(2)) if mo.group(2) is not None else 1
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {text!r}")
    return QQ(num, den)


def format_rational(q):
    q = QQ.convert(q)
    num, den = QQ.numer(q), QQ.denom(q)
    return str(num) if den == 1 else f"{num}/{den}"


def degree(p):
    # -1 for the zero polynomial
    return p.degree() if p else -1


def poly_coeffs(p):
    """Ascending coefficients of p with trailing zeros stripped."""
    cs = [QQ.zero] * (degree(p) + 1)
    for (k,), c in p.terms():
        cs[k] = c
    return cs


def poly_from_coeffs(coeffs):
    return POLY.ring.from_dict({(k,): QQ.convert(c) for k, c in enumerate(coeffs) if c})


def format_poly(p):
    return str(p).replace('**', '^')


def poly_eval(p, a):
    return POLY.convert(p)(QQ.convert(a))


def poly_gcd(p, q):
    p, q = POLY.convert(p), POLY.convert(q)
    if not p and not q:
        raise BothZero("gcd of two zero polynomials")
    return p.gcd(q).monic()


def rational_roots(p):
    """Distinct rational roots of a nonzero p (ascending) and the cofactor
    left after dividing out every linear factor."""
    p = POLY.convert(p)
    if not p:
        raise ValueError("the zero polynomial has every point as a root")
    _, factors = p.factor_list()
    roots = []
    rest = p
    for f, k in factors:
        if f.degree() == 1:
            roots.append(-f.coeff(1) / f.LC)
            rest = rest.exquo(f ** k)
    return sorted(roots), rest


def poly_sqrt(p):
    """h with h*h == p and positive leading coefficient, or None."""
    p = POLY.convert(p)
    if not p:
        return p
    c, factors = p.factor_list()
    if c < 0 or any(k % 2 for _, k in factors):
        return None
    num, exact_num = integer_nthroot(int(QQ.numer(c)), 2)
    den, exact_den = integer_nthroot(int(QQ.denom(c)), 2)
    if not (exact_num and exact_den):
        return None
    h = POLY.convert(QQ(num, den))
    for f, k in factors:
        h *= f ** (k // 2)
    return h if h.LC > 0 else -h


def ratfunc_reduce(num, den):
    num, den = POLY.convert(num), POLY.convert(den)
    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    return QQT.convert(num) / QQT.convert(den)


def ratfunc_parts(f):
    """(num, den) of f in lowest terms with den monic."""
    f = QQT.convert(f)
    lc = f.denom.LC
    return f.numer.quo_ground(lc), f.denom.monic()


def ratfunc_eval_at(f, a):
    f, a = QQT.convert(f), QQ.convert(a)
    d = f.denom(a)
    if not d:
        raise PoleAtPoint(format_poly(f), format_rational(a))
    return f.numer(a) / d


def parse_poly(text):
    """A polynomial in t written the way people type it ("t^2 - 1/2*t + 3",
    "2t", "-1"). Decimals and other variables are rejected."""
    if not text.strip():
        raise ValueError("empty polynomial")
    if not _POLY_TEXT_RE.match(text):
        raise ValueError(f"unexpected character in polynomial {text!r}")
    try:
        expr = parse_expr(text, local_dict={'t': t_symbol}, transformations=_TRANSFORMS)
        return POLY.from_sympy(expr)
    except (SyntaxError, TokenError, TypeError, ValueError, ZeroDivisionError, CoercionFailed) as e:
        raise ValueError(f"not a polynomial in t: {text!r}") from e
