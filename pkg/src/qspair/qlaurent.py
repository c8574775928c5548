"""Exact scalar arithmetic: Laurent polynomials in q and their quotient field.

Every scalar in the package is a :class:`LaurentPoly` (an element of
Z[q,q^-1] or Q[q,q^-1], stored sparsely) or a :class:`RationalFn` (a reduced
quotient of two Laurent polynomials).  Values are immutable after
construction and all operations are pure, so they may be shared freely
between concurrent workers.

q-combinatorics (quantum integers, factorials, binomials) and the bar map
q -> q^-1 live here as well.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]
ScalarLike = Union["LaurentPoly", "RationalFn", int, Fraction]


def _norm_coeff(c: Coeff) -> Coeff:
    """Collapse Fractions with denominator 1 to int so equality is structural."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """A Laurent polynomial sum c_e * q^e, stored as {exponent: coefficient}.

    Canonical form: no stored coefficient is zero, integral coefficients are
    stored as int.  Equality and hashing are structural on the canonical form.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | Iterable[tuple[int, Coeff]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d: dict[int, Coeff] = {}
        for e, c in items:
            if c:
                e = int(e)
                s = d.get(e, 0) + c
                if s:
                    d[e] = s
                else:
                    del d[e]
        self.coeffs = {e: _norm_coeff(c) for e, c in d.items()}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(c: Coeff) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(e: int, c: Coeff = 1) -> "LaurentPoly":
        return LaurentPoly({e: c})

    @staticmethod
    def q_power(e: int) -> "LaurentPoly":
        return LaurentPoly({e: 1})

    @staticmethod
    def coerce(x: ScalarLike) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == LaurentPoly.const(other).coeffs
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: ScalarLike):
        if isinstance(other, RationalFn):
            return RationalFn.coerce(self) + other
        other = LaurentPoly.coerce(other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        out._hash = None
        return out

    def __sub__(self, other: ScalarLike):
        if isinstance(other, RationalFn):
            return RationalFn.coerce(self) - other
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: ScalarLike):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: ScalarLike):
        if isinstance(other, RationalFn):
            return RationalFn.coerce(self) * other
        other = LaurentPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        if len(b) == 1:
            (e2, c2), = b.items()
            return LaurentPoly({e + e2: c * c2 for e, c in a.items()})
        if len(a) == 1:
            (e1, c1), = a.items()
            return LaurentPoly({e1 + e: c1 * c for e, c in b.items()})
        d: dict[int, Coeff] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s:
                    d[e] = s
                else:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: _norm_coeff(c) for e, c in d.items()}
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of LaurentPoly are not defined; use RationalFn")
        acc, base = _ONE, self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __truediv__(self, other: ScalarLike) -> "RationalFn":
        return RationalFn.coerce(self) / other

    def __rtruediv__(self, other: ScalarLike) -> "RationalFn":
        return RationalFn.coerce(other) / self

    # -- specific maps -----------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def eval_at(self, q0: Union[int, Fraction]) -> Union[int, Fraction]:
        """Evaluate at a nonzero rational point (used for q=1 specializations)."""
        if q0 == 0:
            raise ZeroDivisionError("Laurent polynomial at q=0")
        total: Union[int, Fraction] = 0
        for e, c in self.coeffs.items():
            total += c * (Fraction(q0) ** e if e < 0 else q0 ** e)
        return _norm_coeff(Fraction(total)) if isinstance(total, Fraction) else total

    def abs_one_norm(self) -> Fraction:
        """Sum of absolute values of the coefficients (coefficient-size bound)."""
        return sum((abs(Fraction(c)) for c in self.coeffs.values()), Fraction(0))

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises NonExactDivision if the remainder is nonzero."""
        q, r = _divmod_poly(self, other)
        if not r.is_zero():
            raise NonExactDivision(f"{self} is not divisible by {other}")
        return q

    def in_z_q(self) -> bool:
        """True if all exponents are >= 1 and coefficients integral (q Z[q])."""
        return all(e >= 1 and isinstance(c, int) for e, c in self.coeffs.items())

    def in_z_qinv(self) -> bool:
        """True if all exponents are <= -1 and coefficients integral."""
        return all(e <= -1 and isinstance(c, int) for e, c in self.coeffs.items())

    def is_integral(self) -> bool:
        """True if all coefficients are integers (element of Z[q,q^-1])."""
        return all(isinstance(c, int) for c in self.coeffs.values())

    def terms_sorted(self) -> list[tuple[int, Coeff]]:
        return sorted(self.coeffs.items())

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """JSON object mapping exponent strings to rational strings."""
        return {str(e): str(c) for e, c in sorted(self.coeffs.items())}

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "LaurentPoly":
        return LaurentPoly({int(e): Fraction(c) for e, c in obj.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms_sorted():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(parts).replace("+ -", "- ")


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


class NonExactDivision(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _divmod_poly(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division with remainder after clearing q-powers (b nonzero)."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero LaurentPoly")
    if a.is_zero():
        return _ZERO, _ZERO
    # Shift both to ordinary polynomials in q.
    sa, sb = a.min_exp(), b.min_exp()
    da = {e - sa: c for e, c in a.coeffs.items()}
    db = {e - sb: c for e, c in b.coeffs.items()}
    deg_b = max(db)
    lead_b = db[deg_b]
    quot: dict[int, Coeff] = {}
    rem = dict(da)
    while rem and max(rem) >= deg_b:
        deg_r = max(rem)
        factor = _norm_coeff(Fraction(rem[deg_r]) / Fraction(lead_b))
        shift = deg_r - deg_b
        quot[shift] = factor
        for e, c in db.items():
            t = _norm_coeff(Fraction(rem.get(e + shift, 0)) - Fraction(factor) * Fraction(c))
            if t:
                rem[e + shift] = t
            else:
                rem.pop(e + shift, None)
    q = LaurentPoly({e + sa - sb: c for e, c in quot.items()})
    r = LaurentPoly({e + sa: c for e, c in rem.items()})
    return q, r


def _content_primitive(p: LaurentPoly) -> tuple[Fraction, dict[int, int]]:
    """Write p = content * primitive with integer primitive coefficients.

    The primitive part is shifted so its lowest exponent is 0, and its
    lowest coefficient is positive (fixed sign convention).
    """
    if p.is_zero():
        return Fraction(0), {}
    s = p.min_exp()
    fracs = {e - s: Fraction(c) for e, c in p.coeffs.items()}
    from math import gcd

    num_gcd = 0
    den_lcm = 1
    for f in fracs.values():
        num_gcd = gcd(num_gcd, abs(f.numerator))
        den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
    content = Fraction(num_gcd, den_lcm)
    prim = {e: int(f / content) for e, f in fracs.items()}
    if prim[0] < 0:
        prim = {e: -c for e, c in prim.items()}
        content = -content
    return content, prim


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic-free gcd: primitive part with positive lowest coefficient."""
    if a.is_zero():
        _, pb = _content_primitive(b)
        return LaurentPoly(pb)
    if b.is_zero():
        _, pa = _content_primitive(a)
        return LaurentPoly(pa)
    _, pa = _content_primitive(a)
    _, pb = _content_primitive(b)
    x, y = LaurentPoly(pa), LaurentPoly(pb)
    while not y.is_zero():
        _, r = _divmod_poly(x, y)
        x, y = y, r
    _, px = _content_primitive(x)
    return LaurentPoly(px)


class RationalFn:
    """A reduced fraction of Laurent polynomials.

    Invariant: the pair (num, den) is reduced by the polynomial gcd, the
    denominator is an integer-primitive polynomial with lowest exponent 0
    and positive lowest coefficient.  Embeds LaurentPoly via den = 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ScalarLike, den: ScalarLike = 1, *, _reduced: bool = False):
        n = LaurentPoly.coerce(num)
        d = LaurentPoly.coerce(den)
        if d.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        if not _reduced:
            n, d = _reduce(n, d)
        self.num = n
        self.den = d
        self._hash = None

    @staticmethod
    def zero() -> "RationalFn":
        return RationalFn(_ZERO, _ONE, _reduced=True)

    @staticmethod
    def one() -> "RationalFn":
        return RationalFn(_ONE, _ONE, _reduced=True)

    @staticmethod
    def coerce(x: ScalarLike) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return RationalFn(LaurentPoly.coerce(x), _ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            o = LaurentPoly.coerce(other)
            return self.num == o * self.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: ScalarLike) -> "RationalFn":
        o = RationalFn.coerce(other)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other: ScalarLike) -> "RationalFn":
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other: ScalarLike) -> "RationalFn":
        return RationalFn.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "RationalFn":
        o = RationalFn.coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return RationalFn.zero()
        # Cross-reduce before multiplying to keep intermediates small.
        a = RationalFn(self.num, o.den)
        b = RationalFn(o.num, self.den)
        return RationalFn(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "RationalFn":
        o = RationalFn.coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero RationalFn")
        return self * RationalFn(o.den, o.num)

    def __rtruediv__(self, other: ScalarLike) -> "RationalFn":
        return RationalFn.coerce(other) / self

    def inv(self) -> "RationalFn":
        return RationalFn.one() / self

    def __pow__(self, n: int) -> "RationalFn":
        if n < 0:
            return self.inv() ** (-n)
        acc, base = RationalFn.one(), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def bar(self) -> "RationalFn":
        """Substitute q -> q^-1 in numerator and denominator, renormalize."""
        return RationalFn(self.num.bar(), self.den.bar())

    def eval_at(self, q0):
        d = self.den.eval_at(q0)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={q0}")
        return _norm_coeff(Fraction(self.num.eval_at(q0), d) if d != 1 else Fraction(self.num.eval_at(q0)))

    def as_laurent(self) -> LaurentPoly:
        """Return the numerator if the denominator is 1; error otherwise."""
        if self.den.is_one():
            return self.num
        q, r = _divmod_poly(self.num, self.den)
        if r.is_zero():
            return q
        raise NonExactDivision(f"{self!r} is not a Laurent polynomial")

    def is_laurent(self) -> bool:
        if self.den.is_one():
            return True
        _, r = _divmod_poly(self.num, self.den)
        return r.is_zero()

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _reduce(n: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if n.is_zero():
        return _ZERO, _ONE
    g = poly_gcd(n, d)
    if not g.is_one():
        n = n.divexact(g)
        d = d.divexact(g)
    # Normalize: denominator primitive-integer with positive lowest coefficient.
    cd, pd = _content_primitive(d)
    d_norm = LaurentPoly(pd)
    shift = d.min_exp()
    n = n * LaurentPoly.monomial(-shift, Fraction(1) / cd)
    return n, d_norm


# -- q-combinatorics -------------------------------------------------------


def bar(p: ScalarLike) -> ScalarLike:
    """bar(p): the substitution q -> q^-1 (anti-linear over Q(q), here on scalars)."""
    if isinstance(p, RationalFn):
        return p.bar()
    return LaurentPoly.coerce(p).bar()


def qint(a: int) -> LaurentPoly:
    """The quantum integer [a] = (q^a - q^-a)/(q - q^-1); [-a] = -[a]."""
    if a == 0:
        return _ZERO
    if a < 0:
        return -qint(-a)
    return LaurentPoly({a - 1 - 2 * k: 1 for k in range(a)})


def qfact(a: int) -> LaurentPoly:
    """The quantum factorial [a]! = [1][2]...[a]."""
    if a < 0:
        raise ValueError("qfact of a negative integer")
    acc = _ONE
    for k in range(2, a + 1):
        acc = acc * qint(k)
    return acc


def qbinom(a: int, b: int) -> LaurentPoly:
    """The quantum binomial [a]!/([b]![a-b]!) for 0 <= b <= a (exact division)."""
    if not 0 <= b <= a:
        raise ValueError(f"qbinom({a},{b}) requires 0 <= b <= a")
    num = _ONE
    for k in range(a - b + 1, a + 1):
        num = num * qint(k)
    return num.divexact(qfact(b))


#: (q^-1 - q)^-1, the value of the bilinear form on a matching generator pair.
def qq_inv() -> RationalFn:
    return RationalFn(_ONE, LaurentPoly({-1: 1, 1: -1}))


#: q^-1 - q as a Laurent polynomial.
QQ = LaurentPoly({-1: 1, 1: -1})
