"""Exact coefficient fields and sparse multivariate polynomial arithmetic.

Coefficients live in an exact field: arbitrary-precision rationals
(`fractions.Fraction`) or a prime field whose elements are canonical
integers in ``[0, p)``.  A polynomial is an immutable sparse map from
exponent tuples to nonzero coefficients over a fixed ambient variable
count ``y1 .. yn``, so equal polynomials always have identical term maps.

The canonical monomial order throughout is graded reverse lexicographic;
gcds, lcms and reduced-fraction denominators are normalized to leading
coefficient 1 under that order.  The gcd works by content/primitive-part
recursion down to a subresultant remainder sequence in the last active
variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

#: Degree of the zero polynomial.
MINUS_INFINITY = float("-inf")

Monomial = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Exact arithmetic on raw coefficient values."""

    zero: object
    one: object

    def normalize(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_negative(self, a) -> bool:
        """Whether ``a`` prints with a leading minus sign."""
        return False

    def parse(self, text: str):
        """Scalar from a string: an integer or ``num/den``."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.normalize(Fraction(int(num), int(den)))
        return self.normalize(int(text))

    def format(self, a) -> str:
        return str(a)


class RationalField(Field):
    """The rationals; values are `fractions.Fraction` in lowest terms."""

    zero = Fraction(0)
    one = Fraction(1)

    def normalize(self, value):
        if isinstance(value, float):
            raise TypeError("floating-point coefficients are not supported")
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_negative(self, a) -> bool:
        return a < 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


#: Shared rational-field descriptor.
QQ = RationalField()


class PrimeField(Field):
    """Integers modulo a prime ``p``; values are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"modulus {p!r} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def normalize(self, value):
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# Monomials: plain exponent tuples, one entry per variable.

def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """Whether the monomial with exponents ``a`` divides the one with ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    quo = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in quo):
        raise ValueError(f"monomial {b} does not divide {a}")
    return quo


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def grevlex_key(m: Monomial):
    """Sort key: larger key = larger monomial under graded reverse lex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return tuple(m)


class Polynomial:
    """Sparse multivariate polynomial with exact coefficients.

    Instances are immutable after construction; all arithmetic returns new
    canonical polynomials (no zero coefficients stored, the zero polynomial
    has an empty term map).
    """

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: Field, terms=None):
        cleaned = {}
        if terms:
            for mono, coeff in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise ValueError(
                        f"exponent tuple {mono} invalid for {nvars} variables")
                coeff = field.normalize(coeff)
                if coeff != field.zero:
                    cleaned[mono] = coeff
        self.nvars = nvars
        self.field = field
        self.terms = cleaned

    @classmethod
    def _raw(cls, nvars: int, field: Field, terms: dict) -> "Polynomial":
        # internal fast path: terms must already be canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int, field: Field) -> "Polynomial":
        return cls._raw(nvars, field, {})

    @classmethod
    def one(cls, nvars: int, field: Field) -> "Polynomial":
        return cls.constant(field.one, nvars, field)

    @classmethod
    def constant(cls, value, nvars: int, field: Field) -> "Polynomial":
        v = field.normalize(value)
        if v == field.zero:
            return cls._raw(nvars, field, {})
        return cls._raw(nvars, field, {(0,) * nvars: v})

    @classmethod
    def variable(cls, index: int, nvars: int, field: Field) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for n={nvars}")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, field, {mono: field.one})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == self.field.one

    def total_degree(self):
        """Max total degree of the stored terms; MINUS_INFINITY for zero."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int):
        if not self.terms:
            return MINUS_INFINITY
        return max(m[var] for m in self.terms)

    def is_homogeneous(self) -> bool:
        """Whether all terms share one total degree (vacuously true for 0)."""
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self):
        """Common term degree; MINUS_INFINITY for zero, None if inhomogeneous."""
        degrees = {sum(m) for m in self.terms}
        if not degrees:
            return MINUS_INFINITY
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def active_variables(self) -> set:
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(i)
        return used

    def leading_term(self, key=grevlex_key):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=key)
        return mono, self.terms[mono]

    def leading_monomial(self, key=grevlex_key) -> Monomial:
        return self.leading_term(key)[0]

    def leading_coefficient(self, key=grevlex_key):
        return self.leading_term(key)[1]

    def sorted_terms(self, key=grevlex_key, reverse=True):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def coefficient_of(self, mono) -> object:
        return self.terms.get(tuple(mono), self.field.zero)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"ambient mismatch: {self.nvars} vs {other.nvars} variables")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def _coerce(self, value) -> Optional["Polynomial"]:
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.constant(value, self.nvars, self.field)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        field = self.field
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            if acc is None:
                out[mono] = coeff
            else:
                s = field.add(acc, coeff)
                if s == field.zero:
                    del out[mono]
                else:
                    out[mono] = s
        return Polynomial._raw(self.nvars, field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(
            self.nvars, self.field,
            {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = mul(c1, c2)
                acc = out.get(m)
                if acc is None:
                    out[m] = c
                else:
                    s = add(acc, c)
                    if s == zero:
                        del out[m]
                    else:
                        out[m] = s
        return Polynomial._raw(self.nvars, field, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "Polynomial":
        field = self.field
        v = field.normalize(value)
        if v == field.zero:
            return Polynomial._raw(self.nvars, field, {})
        mul = field.mul
        return Polynomial._raw(
            self.nvars, field, {m: mul(c, v) for m, c in self.terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.nvars, self.field)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            coerced = self._coerce(other)
            if coerced is None:
                return NotImplemented
            other = coerced
        return (self.nvars == other.nvars and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    # -- evaluation and variable reindexing ---------------------------------

    def evaluate(self, point: Sequence):
        """Exact value of the polynomial at a point of the coefficient field."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}")
        field = self.field
        values = [field.normalize(v) for v in point]
        total = field.zero
        for mono, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(mono):
                for _ in range(e):
                    term = field.mul(term, values[i])
            total = field.add(total, term)
        return total

    def extend(self, nvars: int) -> "Polynomial":
        """Same polynomial viewed in a larger ambient ring (new vars appended)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the ambient variable count")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return Polynomial._raw(
            nvars, self.field, {m + pad: c for m, c in self.terms.items()})

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def format_polynomial(p: Polynomial, key=grevlex_key) -> str:
    """Canonical string form: terms descending under the monomial order."""
    if p.is_zero():
        return "0"
    field = p.field
    pieces = []
    for mono, coeff in p.sorted_terms(key=key):
        negative = field.is_negative(coeff)
        magnitude = field.neg(coeff) if negative else coeff
        factors = [f"y{i + 1}" + (f"^{e}" if e > 1 else "")
                   for i, e in enumerate(mono) if e]
        if not factors:
            body = field.format(magnitude)
        elif magnitude == field.one:
            body = "*".join(factors)
        else:
            body = field.format(magnitude) + "*" + "*".join(factors)
        pieces.append((negative, body))
    first_neg, first_body = pieces[0]
    out = ("-" if first_neg else "") + first_body
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


def coordinate_vector(nvars: int, field: Field) -> tuple:
    """The vector whose i-th component is the variable ``y_{i+1}``."""
    return tuple(Polynomial.variable(i, nvars, field) for i in range(nvars))


# ---------------------------------------------------------------------------
# Exact division, gcd, lcm.

def try_exact_div(a: Polynomial, b: Polynomial) -> Optional[Polynomial]:
    """Quotient ``a / b`` when ``b`` divides ``a`` exactly, else None."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    a._check(b)
    if a.is_zero():
        return a
    field = a.field
    blm, blc = b.leading_term()
    work = dict(a.terms)
    quotient: dict = {}
    while work:
        lm = max(work, key=grevlex_key)
        if not monomial_divides(blm, lm):
            return None
        shift = monomial_div(lm, blm)
        factor = field.div(work[lm], blc)
        quotient[shift] = factor
        for gm, gc in b.terms.items():
            m = monomial_mul(gm, shift)
            c = field.sub(work.get(m, field.zero), field.mul(factor, gc))
            if c == field.zero:
                work.pop(m, None)
            else:
                work[m] = c
    return Polynomial._raw(a.nvars, field, quotient)


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    quo = try_exact_div(a, b)
    if quo is None:
        raise ValueError("division is not exact")
    return quo


def divides(b: Polynomial, a: Polynomial) -> bool:
    """Whether ``b`` divides ``a`` exactly."""
    return try_exact_div(a, b) is not None


def monic(p: Polynomial, key=grevlex_key) -> Polynomial:
    """Normalize leading coefficient to 1; the zero polynomial stays zero."""
    if p.is_zero():
        return p
    lc = p.leading_coefficient(key)
    if lc == p.field.one:
        return p
    return p.scale(p.field.inv(lc))


# Dense univariate layer used by the subresultant PRS.  A polynomial in one
# chosen variable is a coefficient list in *descending* degree (index 0 is
# the leading coefficient); coefficients are polynomials free of that
# variable.

def _coeffs_in(p: Polynomial, var: int) -> list:
    deg = max(m[var] for m in p.terms) if p.terms else 0
    buckets: list = [dict() for _ in range(deg + 1)]
    for mono, coeff in p.terms.items():
        reduced = mono[:var] + (0,) + mono[var + 1:]
        buckets[deg - mono[var]][reduced] = coeff
    return [Polynomial._raw(p.nvars, p.field, b) for b in buckets]


def _from_coeffs(coeffs: list, var: int, nvars: int, field: Field) -> Polynomial:
    deg = len(coeffs) - 1
    terms: dict = {}
    for i, c in enumerate(coeffs):
        e = deg - i
        for mono, coeff in c.terms.items():
            terms[mono[:var] + (e,) + mono[var + 1:]] = coeff
    return Polynomial._raw(nvars, field, terms)


def _uni_strip(f: list) -> list:
    i = 0
    while i < len(f) and f[i].is_zero():
        i += 1
    return f[i:]


def _uni_sub(f: list, g: list) -> list:
    n = max(len(f), len(g))
    pad_f = n - len(f)
    pad_g = n - len(g)
    out = []
    for i in range(n):
        fi = f[i - pad_f] if i >= pad_f else None
        gi = g[i - pad_g] if i >= pad_g else None
        if fi is None:
            out.append(-gi)
        elif gi is None:
            out.append(fi)
        else:
            out.append(fi - gi)
    return _uni_strip(out)


def _uni_prem(f: list, g: list) -> list:
    """Pseudo-remainder of dense descending coefficient lists (g nonzero)."""
    df = len(f) - 1
    dg = len(g) - 1
    if df < dg:
        return list(f)
    zero = Polynomial.zero(g[0].nvars, g[0].field)
    r = list(f)
    dr = df
    n = df - dg + 1
    lc_g = g[0]
    while True:
        lc_r = r[0]
        j = dr - dg
        n -= 1
        scaled_r = [c * lc_g for c in r]
        scaled_g = [c * lc_r for c in g] + [zero] * j
        r = _uni_sub(scaled_r, scaled_g)
        dr = len(r) - 1
        if dr < dg:
            break
    mult = lc_g ** n
    if mult.is_one():
        return r
    return [c * mult for c in r]


def _subresultant_prs(f: list, g: list) -> list:
    """Subresultant PRS of dense descending lists; deg f >= deg g >= 0."""
    nvars, field = f[0].nvars, f[0].field
    one = Polynomial.one(nvars, field)
    n = len(f) - 1
    m = len(g) - 1
    prs = [list(f), list(g)]
    d = n - m
    b = one if (d + 1) % 2 == 0 else -one
    h = _uni_prem(f, g)
    h = [x * b for x in h]
    lc = g[0]
    c = -(lc ** d)
    while h:
        k = len(h) - 1
        prs.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * (c ** d)
        h = _uni_prem(f, g)
        h = [exact_div(x, b) for x in h]
        lc = g[0]
        if d > 1:
            c = exact_div((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
    return prs


def _fold_gcd(polys) -> Polynomial:
    acc = None
    for p in polys:
        acc = p if acc is None else poly_gcd(acc, p)
        if acc.is_one():
            return acc
    return monic(acc)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized to leading coefficient 1."""
    a._check(b)
    if a.is_zero():
        return monic(b)
    if b.is_zero():
        return monic(a)
    if a.is_constant() or b.is_constant():
        return Polynomial.one(a.nvars, a.field)
    if a.terms == b.terms or monic(a) == monic(b):
        return monic(a)
    var = max(a.active_variables() | b.active_variables())
    fa = _coeffs_in(a, var)
    fb = _coeffs_in(b, var)
    ca = _fold_gcd(fa)
    cb = _fold_gcd(fb)
    pa = [exact_div(c, ca) for c in fa]
    pb = [exact_div(c, cb) for c in fb]
    cont = poly_gcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    last = _subresultant_prs(pa, pb)[-1]
    if len(last) == 1:
        return monic(cont)
    content_last = _fold_gcd(last)
    primitive = _from_coeffs([exact_div(c, content_last) for c in last],
                             var, a.nvars, a.field)
    return monic(cont * primitive)


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    """Least common multiple (both inputs nonzero), leading coefficient 1."""
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm of the zero polynomial is undefined")
    return monic(exact_div(a * b, poly_gcd(a, b)))


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of polynomials; build reduced values via `reduce_fraction`."""

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __str__(self):
        if self.denominator.is_one():
            return format_polynomial(self.numerator)
        return (f"({format_polynomial(self.numerator)}) / "
                f"({format_polynomial(self.denominator)})")


def reduce_fraction(h: Polynomial, k: Polynomial) -> RationalFunction:
    """Reduced form of ``h / k``: coprime parts, monic denominator.

    A zero numerator yields denominator 1.
    """
    if k.is_zero():
        raise ZeroDivisionError("zero denominator")
    h._check(k)
    if h.is_zero():
        return RationalFunction(h, Polynomial.one(h.nvars, h.field))
    g = poly_gcd(h, k)
    num = exact_div(h, g)
    den = exact_div(k, g)
    lc = den.leading_coefficient()
    if lc != h.field.one:
        inv = h.field.inv(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return RationalFunction(num, den)
