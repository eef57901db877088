"""Exact scalar arithmetic: rationals, one quadratic extension Q(sqrt d),
multivariate polynomials and rational functions over them.

Every scalar value is kept in a canonical form that is unique across the
whole tower: a QuadScalar with zero irrational part collapses to Fraction,
a constant polynomial collapses to its coefficient, and a rational function
with unit denominator collapses to a polynomial.  Equality of values is
therefore equality of canonical representatives.

Monomials are sparse tuples ((name, exponent), ...) sorted by name; the
display order of terms is graded lexicographic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DenominatorVanishes, DivisionByZero, UnboundVariable

Rational = Fraction

_SQUAREFREE_CACHE = {}


def _is_squarefree(d):
    if d in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[d]
    ok = d > 1
    k = 2
    n = d
    while ok and k * k <= n:
        if n % (k * k) == 0:
            ok = False
        k += 1
    _SQUAREFREE_CACHE[d] = ok
    return ok


class QuadScalar:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        if not _is_squarefree(d):
            raise ValueError(f"d={d} must be a square-free integer > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _check(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise ValueError(f"mixed quadratic extensions sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return quad(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return quad(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            # only possible for a = b = 0 when d is square-free
            raise DivisionByZero("inverse of zero in Q(sqrt d)")
        return quad(self.a / n, -self.b / n, self.d)

    def conjugate(self):
        return quad(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return format_scalar(self)


def quad(a, b, d):
    """Canonical element of Q(sqrt d): collapses to Fraction when b = 0."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return QuadScalar(a, b, d)


def sqrt_d(d):
    return QuadScalar(0, 1, d)


# ---------------------------------------------------------------------------
# monomials


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1len, n2len = len(m1), len(m2)
    while i < n1len and j < n2len:
        a = m1[i]
        b = m2[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_divides(m1, m2):
    """Whether monomial m1 divides m2."""
    d2 = dict(m2)
    return all(d2.get(n, 0) >= e for n, e in m1)


def _mono_div(m2, m1):
    out = dict(m2)
    for name, e in m1:
        out[name] = out.get(name, 0) - e
    return tuple(sorted((n, e) for n, e in out.items() if e))


def _mono_key(m):
    """Graded lex key; SMALLER key = LARGER monomial (use min for leading).

    Degree dominates; ties broken lexicographically with alphabetically
    earlier names more significant and higher exponents larger.
    """
    deg = sum(e for _, e in m)
    return (-deg, tuple((n, -e) for n, e in m))


class PolyScalar:
    """Multivariate polynomial with Fraction or QuadScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        # terms: dict monomial -> nonzero coefficient; () is the constant term
        self.terms = terms

    @staticmethod
    def variable(name):
        return PolyScalar({((name, 1),): Fraction(1)})

    @staticmethod
    def const(c):
        c = _as_coeff(c)
        return PolyScalar({(): c} if c != 0 else {})

    def variables(self):
        out = set()
        for m in self.terms:
            for name, _ in m:
                out.add(name)
        return out

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        m = min(self.terms, key=_mono_key)
        return m, self.terms[m]

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        return self.terms.get((), Fraction(0))

    def _coerce(self, other):
        if isinstance(other, PolyScalar):
            return other
        if isinstance(other, (int, Fraction, QuadScalar)):
            return PolyScalar.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return _poly_canon(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        get = out.get
        oterms = list(o.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in oterms:
                m = _mono_mul(m1, m2)
                s = get(m, 0) + c1 * c2
                out[m] = s
        return _poly_canon({m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return inverse(self) ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadScalar)):
            if other == 0:
                raise DivisionByZero("polynomial divided by zero scalar")
            inv = 1 / Fraction(other) if isinstance(other, (int, Fraction)) else other.inverse()
            return _poly_canon({m: c * inv for m, c in self.terms.items()})
        if isinstance(other, PolyScalar):
            return ratio(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ratio(o, self)

    def __eq__(self, other):
        if isinstance(other, PolyScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadScalar)):
            if not self.terms:
                return other == 0
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_const():
            return hash(self.const_value())
        return hash(tuple(sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return format_scalar(self)


def _as_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def _poly_canon(terms):
    """Collapse constants back down the tower."""
    if not terms:
        return Fraction(0)
    if len(terms) == 1 and () in terms:
        return terms[()]
    return PolyScalar(terms)


def as_poly(s):
    """View any polynomial-or-below scalar as a PolyScalar."""
    if isinstance(s, PolyScalar):
        return s
    if isinstance(s, (int, Fraction, QuadScalar)):
        return PolyScalar.const(s)
    raise TypeError(f"not a polynomial scalar: {s!r}")


def variable(name):
    return PolyScalar.variable(name)


# ---------------------------------------------------------------------------
# polynomial gcd (recursive primitive PRS on the graded-lex greatest variable)


def poly_divexact(p, q):
    """Exact division of polynomials; raises if q does not divide p."""
    p = as_poly(p)
    q = as_poly(q)
    if not q.terms:
        raise DivisionByZero("exact division by zero polynomial")
    out = {}
    rem = dict(p.terms)
    qm, qc = q.leading()
    qc_inv = 1 / qc if isinstance(qc, Fraction) else qc.inverse()
    while rem:
        m = min(rem, key=_mono_key)
        c = rem[m]
        if not _mono_divides(qm, m):
            raise ValueError("inexact polynomial division")
        fm = _mono_div(m, qm)
        fc = c * qc_inv
        out[fm] = out.get(fm, 0) + fc
        for m2, c2 in q.terms.items():
            mm = _mono_mul(fm, m2)
            s = rem.get(mm, 0) - fc * c2
            if s == 0:
                rem.pop(mm, None)
            else:
                rem[mm] = s
    return _poly_canon({m: c for m, c in out.items() if c != 0})


def _poly_in_var(p, x):
    """Coefficients of p as a polynomial in x: dict exp -> PolyScalar-ish."""
    coeffs = {}
    for m, c in p.terms.items():
        e = dict(m).get(x, 0)
        rest = tuple((n, k) for n, k in m if n != x)
        cur = coeffs.setdefault(e, {})
        cur[rest] = cur.get(rest, 0) + c
    return {e: _poly_canon({m: c for m, c in t.items() if c != 0}) for e, t in coeffs.items()}


def _from_var_coeffs(coeffs, x):
    out = {}
    for e, c in coeffs.items():
        for m, cc in as_poly(c).terms.items():
            mm = _mono_mul(m, ((x, e),) if e else ())
            out[mm] = out.get(mm, 0) + cc
    return _poly_canon({m: c for m, c in out.items() if c != 0})


def _content_in_var(p, x):
    """gcd of the x-coefficients of p (a polynomial in the other variables)."""
    g = Fraction(0)
    for c in _poly_in_var(p, x).values():
        g = poly_gcd(g, c)
        if as_poly(g).is_const() and not is_zero(g):
            return Fraction(1)
    return g


def _pseudo_rem(p, q, x):
    """Standard pseudo-remainder: lc(q)^(deg p - deg q + 1) p mod q in x."""
    pc = _poly_in_var(p, x)
    qc = _poly_in_var(q, x)
    dq = max(qc)
    dp = max(pc) if pc else -1
    if dp < dq:
        return p
    lead_q = qc[dq]
    r = {e: as_poly(c) for e, c in pc.items()}
    for _ in range(dp - dq + 1):
        if not r:
            break
        dr = max(r)
        if dr < dq:
            # multiply the rest through to keep the standard normalisation
            r = {e: as_poly(c * lead_q) for e, c in r.items()}
            continue
        lead_r = r[dr]
        newr = {}
        for e, c in r.items():
            newr[e] = as_poly(c * lead_q)
        for e, c in qc.items():
            ee = e + dr - dq
            s = newr.get(ee, Fraction(0)) - lead_r * c
            newr[ee] = s
        r = {e: as_poly(c) for e, c in newr.items() if not is_zero(c)}
    if not r:
        return Fraction(0)
    return _from_var_coeffs(r, x)


def _int_normalize(p):
    """Scale a polynomial by a positive rational so the coefficients become
    content-free integers (a unit multiple; cheap Fraction-size control)."""
    p = as_poly(p)
    if not p.terms:
        return p
    den = 1
    num_gcd = 0
    for c in p.terms.values():
        if not isinstance(c, Fraction):
            return p  # quadratic-field coefficients: skip
        den = den * c.denominator // gcd(den, c.denominator)
    for c in p.terms.values():
        num_gcd = gcd(num_gcd, abs((c * den).numerator))
    if num_gcd == 0:
        return p
    scale = Fraction(den, num_gcd)
    if scale == 1:
        return p
    return as_poly(p * scale)


def poly_gcd(p, q):
    """gcd in K[x1..xn] via the subresultant PRS, leading coefficient 1."""
    p = as_poly(p)
    q = as_poly(q)
    if not p.terms:
        return _monic(q) if q.terms else Fraction(0)
    if not q.terms:
        return _monic(p)
    if p.is_const() or q.is_const():
        return Fraction(1)
    if not (p.variables() & q.variables()):
        return Fraction(1)
    if p.terms == q.terms:
        return _monic(p)
    x = sorted(p.variables() | q.variables())[-1]
    if x not in p.variables():
        return poly_gcd(p, _content_in_var(q, x))
    if x not in q.variables():
        return poly_gcd(_content_in_var(p, x), q)
    cp = _content_in_var(p, x)
    cq = _content_in_var(q, x)
    cont = poly_gcd(cp, cq)
    a = _int_normalize(as_poly(poly_divexact(p, cp)) if cp != 1 else p)
    b = _int_normalize(as_poly(poly_divexact(q, cq)) if cq != 1 else q)

    def deg_x(f):
        coeffs = _poly_in_var(f, x)
        return max(coeffs) if x in f.variables() else 0

    def lead_x(f):
        coeffs = _poly_in_var(f, x)
        return as_poly(coeffs[max(coeffs)])

    if deg_x(a) < deg_x(b):
        a, b = b, a
    g = PolyScalar.const(1)
    h = PolyScalar.const(1)
    while True:
        delta = deg_x(a) - deg_x(b)
        r = _pseudo_rem(a, b, x)
        if is_zero(r):
            break
        r = as_poly(r)
        if x not in r.variables():
            # gcd of the primitive parts is trivial in x
            return _monic(as_poly(cont)) if isinstance(cont, PolyScalar) else Fraction(1)
        divisor = as_poly(g * h**delta)
        a, b = b, _int_normalize(as_poly(poly_divexact(r, divisor)))
        g = lead_x(a)
        if delta >= 1:
            h = as_poly(poly_divexact(as_poly(g**delta), as_poly(h ** (delta - 1)))) if delta > 1 else g
        h = as_poly(h)
        g = as_poly(g)
    # primitive part of the last nonzero remainder times the content gcd
    bb = as_poly(b)
    cb = _content_in_var(bb, x)
    prim = as_poly(poly_divexact(bb, cb)) if cb != 1 else bb
    return _monic(as_poly(_monic(prim) * cont))


def _monic(p):
    p = as_poly(p)
    if not p.terms:
        return Fraction(0)
    _, c = p.leading()
    return p / c


class RatScalar:
    """Quotient of two polynomials, gcd-reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        # use ratio() to construct reduced values
        self.num = num
        self.den = den

    def variables(self):
        return as_poly(self.num).variables() | as_poly(self.den).variables()

    def _coerce(self, other):
        if isinstance(other, RatScalar):
            return other
        if isinstance(other, (int, Fraction, QuadScalar, PolyScalar)):
            return RatScalar(as_poly(other), PolyScalar.const(1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ratio(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if as_poly(g).is_const():
            num = self.num * o.den + o.num * self.den
            den = self.den * o.den
            # denominators are coprime, so only content can cancel
            return _ratio_coprime(num, den)
        db = as_poly(poly_divexact(self.den, g))
        dd = as_poly(poly_divexact(o.den, g))
        return ratio(self.num * dd + o.num * db, self.den * dd)

    __radd__ = __add__

    def __neg__(self):
        return RatScalar(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # cross-cancel: inputs are reduced, so only num/other-den pairs share factors
        a, b = self.num, self.den
        c, d = o.num, o.den
        g1 = poly_gcd(a, d)
        if not as_poly(g1).is_const():
            a = as_poly(poly_divexact(a, g1))
            d = as_poly(poly_divexact(d, g1))
        g2 = poly_gcd(c, b)
        if not as_poly(g2).is_const():
            c = as_poly(poly_divexact(c, g2))
            b = as_poly(poly_divexact(b, g2))
        return _ratio_coprime(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if as_poly(o.num) == 0:
            raise DivisionByZero("division by zero rational function")
        return self * ratio(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if n < 0:
            return (1 / self) ** (-n)
        out = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RatScalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, QuadScalar, PolyScalar)):
            # reduced nontrivial denominator never equals a polynomial
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(as_poly(self.num).terms)

    def __repr__(self):
        return format_scalar(self)


def ratio(num, den):
    """Canonical fraction of polynomials; collapses when the denominator is a unit."""
    num = as_poly(num)
    den = as_poly(den)
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return Fraction(0)
    if den.is_const():
        return _down(num / den.const_value())
    g = poly_gcd(num, den)
    if not (as_poly(g).is_const()):
        num = as_poly(poly_divexact(num, g))
        den = as_poly(poly_divexact(den, g))
    return _ratio_coprime(num, den)


def _ratio_coprime(num, den):
    """Normalise a fraction whose num/den are already coprime."""
    num = as_poly(num)
    den = as_poly(den)
    if not num.terms:
        return Fraction(0)
    if den.is_const():
        return _down(num / den.const_value())
    _, lc = den.leading()
    num = as_poly(num / lc)
    den = as_poly(den / lc)
    return RatScalar(num, den)


def _down(s):
    """Collapse a PolyScalar that is constant."""
    if isinstance(s, PolyScalar) and s.is_const():
        return s.const_value()
    return s


def inverse(s):
    """Multiplicative inverse of any nonzero scalar."""
    if isinstance(s, int):
        s = Fraction(s)
    if isinstance(s, Fraction):
        if s == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / s
    if isinstance(s, QuadScalar):
        return s.inverse()
    if isinstance(s, PolyScalar):
        return ratio(PolyScalar.const(1), s)
    if isinstance(s, RatScalar):
        return ratio(s.den, s.num)
    raise TypeError(f"not a scalar: {s!r}")


def is_zero(s):
    if isinstance(s, (int, Fraction)):
        return s == 0
    return not bool(s)


def scalar_level(s):
    if isinstance(s, (int, Fraction)):
        return 0
    if isinstance(s, QuadScalar):
        return 1
    if isinstance(s, PolyScalar):
        return 2
    if isinstance(s, RatScalar):
        return 3
    raise TypeError(f"not a scalar: {s!r}")


# ---------------------------------------------------------------------------
# substitution


def substitute(p, bindings):
    """Exact evaluation of a PolyScalar or RatScalar at the given bindings.

    Every indeterminate of p must be bound; the denominator must not vanish.
    Plain field scalars pass through unchanged.
    """
    if isinstance(p, (int, Fraction, QuadScalar)):
        return p
    if isinstance(p, BasedFrac):
        num = substitute(p.num, bindings)
        den = Fraction(1)
        for b, k in zip(p.bases, p.exp):
            if k:
                bv = substitute(b, bindings)
                if is_zero(bv):
                    raise DenominatorVanishes("a declared-invertible base vanishes at the given point")
                den = den * bv**k
        return _generic_div(num, den)
    if isinstance(p, RatScalar):
        num = substitute(p.num, bindings)
        den = substitute(p.den, bindings)
        if is_zero(den):
            raise DenominatorVanishes(f"denominator {format_scalar(p.den)} vanishes at the given point")
        return _generic_div(num, den)
    p = as_poly(p)
    missing = sorted(v for v in p.variables() if v not in bindings)
    if missing:
        raise UnboundVariable(f"unbound indeterminates: {', '.join(missing)}")
    total = Fraction(0)
    for m, c in p.terms.items():
        term = c
        for name, e in m:
            v = bindings[name]
            for _ in range(e):
                term = term * v
        total = total + term
    return total


def subs_partial(p, bindings):
    """Substitute only the bound variables, leaving the others symbolic."""
    if isinstance(p, (int, Fraction, QuadScalar)):
        return p
    if isinstance(p, RatScalar):
        num = subs_partial(p.num, bindings)
        den = subs_partial(p.den, bindings)
        if is_zero(den):
            raise DenominatorVanishes(f"denominator {format_scalar(p.den)} vanishes at the given point")
        return _generic_div(num, den)
    p = as_poly(p)
    total = Fraction(0)
    for m, c in p.terms.items():
        term = c
        for name, e in m:
            v = bindings.get(name, PolyScalar.variable(name))
            for _ in range(e):
                term = term * v
        total = total + term
    return total


def _generic_div(a, b):
    if is_zero(b):
        raise DivisionByZero("division by zero scalar")
    lev = max(scalar_level(a), scalar_level(b))
    if lev <= 1:
        return a * inverse(b)
    if lev == 2:
        return ratio(as_poly(a), as_poly(b))
    a = a if isinstance(a, RatScalar) else RatScalar(as_poly(a), PolyScalar.const(1))
    return a / b


# ---------------------------------------------------------------------------
# parsing and formatting


def format_scalar(s):
    if isinstance(s, int):
        s = Fraction(s)
    if isinstance(s, Fraction):
        return str(s)
    if isinstance(s, QuadScalar):
        parts = []
        if s.a != 0:
            parts.append(str(s.a))
        if s.b != 0:
            coef = "" if s.b == 1 else ("-" if s.b == -1 else f"{s.b}*")
            term = f"{coef}sqrt({s.d})"
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts) if parts else "0"
    if isinstance(s, PolyScalar):
        if not s.terms:
            return "0"
        items = sorted(s.terms.items(), key=lambda t: _mono_key(t[0]))
        chunks = []
        for m, c in items:
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            cs = format_scalar(c)
            needs_paren = isinstance(c, QuadScalar) and c.a != 0 and c.b != 0
            if mono:
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = f"-{mono}"
                elif needs_paren:
                    body = f"({cs})*{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            if chunks and not body.startswith("-"):
                chunks.append("+" + body)
            else:
                chunks.append(body)
        return "".join(chunks)
    if isinstance(s, RatScalar):
        return f"({format_scalar(s.num)})/({format_scalar(s.den)})"
    raise TypeError(f"not a scalar: {s!r}")


class _Parser:
    """Recursive-descent parser for scalar text: +, -, *, /, ^, sqrt(d), names."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"scalar parse error at {self.pos}: {msg} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        c = self.peek()
        neg = False
        if c in "+-":
            self.pos += 1
            neg = c == "-"
        val = self.term()
        if neg:
            val = -val
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                val = val + self.term()
            elif c == "-":
                self.pos += 1
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.power()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                val = val * self.power()
            elif c == "/":
                self.pos += 1
                val = _generic_div(val, self.power())
            else:
                return val

    def power(self):
        val = self.atom()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                self.pos += 1
                neg = True
            e = self.integer()
            if neg:
                return inverse(val) ** e
            return val**e
        return val

    def integer(self):
        start = self.pos
        self.peek()
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer")
        return int(self.text[start : self.pos])

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            val = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return val
        if c.isdigit():
            return Fraction(self.integer())
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start : self.pos]
            if name == "sqrt":
                if self.peek() != "(":
                    self.error("expected '(' after sqrt")
                self.pos += 1
                d = self.integer()
                if self.peek() != ")":
                    self.error("expected ')'")
                self.pos += 1
                return sqrt_d(d)
            return PolyScalar.variable(name)
        self.error("unexpected character")


def parse_scalar(text):
    """Parse "p/q", "p/q+r/s*sqrt(d)" or polynomial text like "3/2*x^2*y - 1"."""
    p = _Parser(text)
    val = p.expr()
    if p.peek():
        p.error("trailing input")
    return val


class BasedFrac:
    """Fraction whose denominator is a product of powers of fixed base
    polynomials.

    Used for family verification where every division is by a declared
    invertible factor: no gcd is ever computed, addition brings terms to
    the componentwise-max exponent vector, and zero testing is numerator
    vanishing.  bases is a shared tuple of nonzero scalars.
    """

    __slots__ = ("num", "exp", "bases")

    def __init__(self, num, exp, bases):
        self.num = num
        self.exp = tuple(exp)
        self.bases = bases

    @staticmethod
    def const(c, bases):
        return BasedFrac(c, (0,) * len(bases), bases)

    def _coerce(self, other):
        if isinstance(other, BasedFrac):
            if other.bases is not self.bases and other.bases != self.bases:
                raise ValueError("mixed denominator bases")
            return other
        if isinstance(other, (int, Fraction, QuadScalar, PolyScalar, RatScalar)):
            return BasedFrac.const(other, self.bases)
        return None

    def _lift(self, exp):
        num = self.num
        for b, k, k2 in zip(self.bases, self.exp, exp):
            for _ in range(k2 - k):
                num = num * b
        return num

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.exp == self.exp:
            return BasedFrac(self.num + o.num, self.exp, self.bases)
        exp = tuple(max(a, b) for a, b in zip(self.exp, o.exp))
        return BasedFrac(self._lift(exp) + o._lift(exp), exp, self.bases)

    __radd__ = __add__

    def __neg__(self):
        return BasedFrac(-self.num, self.exp, self.bases)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if is_zero(self.num) or is_zero(o.num):
            return BasedFrac(Fraction(0), (0,) * len(self.bases), self.bases)
        return BasedFrac(self.num * o.num, tuple(a + b for a, b in zip(self.exp, o.exp)), self.bases)

    __rmul__ = __mul__

    def div_base(self, idx, power=1):
        """Divide by bases[idx]**power."""
        exp = list(self.exp)
        exp[idx] += power
        return BasedFrac(self.num, exp, self.bases)

    def __bool__(self):
        return not is_zero(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return is_zero(self.num)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return is_zero((self - o).num)

    def __hash__(self):
        return hash((str(self.num), self.exp))

    def variables(self):
        out = set()
        for s in (self.num,) + tuple(self.bases):
            if isinstance(s, (PolyScalar, RatScalar)):
                out |= s.variables()
        return out

    def to_ratio(self):
        den = Fraction(1)
        for b, k in zip(self.bases, self.exp):
            for _ in range(k):
                den = den * b
        return _generic_div(self.num, den)

    def __repr__(self):
        return f"BasedFrac({format_scalar(self.num) if not isinstance(self.num, BasedFrac) else self.num}, exp={self.exp})"
