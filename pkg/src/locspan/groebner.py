"""Buchberger's algorithm, reduced Groebner bases, and ideal/radical membership.

The S-pair loop uses the product and chain criteria with the normal
selection strategy (smallest lcm degree first, ties by index pair), and the
final basis is inter-reduced and monic, hence canonical for the ideal and
order.  Radical membership adjoins a fresh last variable ``t`` and tests
whether 1 lies in ``I + <1 - t*f>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactalg import (
    Field,
    Polynomial,
    grevlex_key,
    lex_key,
    monic,
    monomial_degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a fixed number of variables."""

    nvars: int
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def key(self):
        return grevlex_key if self.kind == "grevlex" else lex_key


def _default_order(p: Polynomial) -> MonomialOrder:
    return MonomialOrder(p.nvars)


def normal_form(f: Polynomial, divisors: Sequence[Polynomial],
                order: Optional[MonomialOrder] = None) -> Polynomial:
    """Remainder of multivariate division of ``f`` by the listed divisors.

    Divisors are tried in list order, so the result is deterministic; no
    term of the result is divisible by any divisor's leading term.
    """
    if order is None:
        order = _default_order(f)
    key = order.key
    field = f.field
    table = [(g, *g.leading_term(key)) for g in divisors if not g.is_zero()]
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        lm = max(work, key=key)
        lc = work[lm]
        for g, glm, glc in table:
            if monomial_divides(glm, lm):
                shift = monomial_div(lm, glm)
                factor = field.div(lc, glc)
                for gm, gc in g.terms.items():
                    m = monomial_mul(gm, shift)
                    c = field.sub(work.get(m, field.zero), field.mul(factor, gc))
                    if c == field.zero:
                        work.pop(m, None)
                    else:
                        work[m] = c
                break
        else:
            remainder[lm] = lc
            del work[lm]
    return Polynomial._raw(f.nvars, field, remainder)


def s_polynomial(f: Polynomial, g: Polynomial,
                 order: Optional[MonomialOrder] = None) -> Polynomial:
    """The S-polynomial, with both leading terms scaled to cancel."""
    if order is None:
        order = _default_order(f)
    key = order.key
    flm, flc = f.leading_term(key)
    glm, glc = g.leading_term(key)
    lcm = monomial_lcm(flm, glm)
    field = f.field
    mf = Polynomial._raw(f.nvars, field,
                         {monomial_div(lcm, flm): field.inv(flc)})
    mg = Polynomial._raw(g.nvars, field,
                         {monomial_div(lcm, glm): field.inv(glc)})
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; canonical for its ideal and order."""

    polys: tuple
    order: MonomialOrder

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def contains_one(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.polys)


def buchberger(generators: Iterable[Polynomial],
               order: Optional[MonomialOrder] = None,
               nvars: Optional[int] = None,
               field: Optional[Field] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by the generators."""
    gens = [monic(g) for g in generators if not g.is_zero()]
    if not gens:
        if order is None:
            if nvars is None or field is None:
                raise ValueError("empty generating set needs nvars and order data")
            order = MonomialOrder(nvars)
        return GroebnerBasis((), order)
    if order is None:
        order = _default_order(gens[0])
    key = order.key

    basis = []
    lms = []
    for g in gens:
        if g not in basis:
            basis.append(g)
            lms.append(g.leading_monomial(key))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_rank(pair):
        i, j = pair
        return (monomial_degree(monomial_lcm(lms[i], lms[j])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        lcm = monomial_lcm(lms[i], lms[j])
        if lcm == monomial_mul(lms[i], lms[j]):
            continue  # product criterion: coprime leading monomials
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(lms[k], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True  # chain criterion: both side pairs handled
                    break
        if skip:
            continue
        remainder = normal_form(s_polynomial(basis[i], basis[j], order),
                                basis, order)
        if remainder.is_zero():
            continue
        remainder = monic(remainder, key)
        basis.append(remainder)
        lms.append(remainder.leading_monomial(key))
        new = len(basis) - 1
        pairs.update((k, new) for k in range(new))

    # minimalize: drop elements whose leading monomial another one divides
    order_by_lm = sorted(range(len(basis)), key=lambda i: key(lms[i]))
    kept = []
    for i in order_by_lm:
        if not any(monomial_divides(lms[k], lms[i]) for k in kept):
            kept.append(i)
    reduced = [basis[i] for i in kept]

    # inter-reduce to the unique reduced basis (iterate to a fixpoint)
    changed = True
    while changed:
        changed = False
        for i in range(len(reduced)):
            others = reduced[:i] + reduced[i + 1:]
            r = monic(normal_form(reduced[i], others, order), key)
            if r != reduced[i]:
                reduced[i] = r
                changed = True

    reduced.sort(key=lambda g: key(g.leading_monomial(key)), reverse=True)
    return GroebnerBasis(tuple(reduced), order)


class Ideal:
    """An ideal given by generators; zero generators are dropped."""

    def __init__(self, generators: Iterable[Polynomial],
                 nvars: Optional[int] = None, field: Optional[Field] = None):
        gens = tuple(g for g in generators if not g.is_zero())
        if gens:
            nvars = gens[0].nvars if nvars is None else nvars
            field = gens[0].field if field is None else field
            for g in gens:
                if g.nvars != nvars or g.field != field:
                    raise ValueError("generators live in different rings")
        elif nvars is None or field is None:
            raise ValueError("the zero ideal needs explicit nvars and field")
        self.generators = gens
        self.nvars = nvars
        self.field = field
        self._groebner: Optional[GroebnerBasis] = None

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        """Reduced Groebner basis; the default (grevlex) run is cached."""
        if order is None or order == MonomialOrder(self.nvars):
            if self._groebner is None:
                self._groebner = buchberger(
                    self.generators, MonomialOrder(self.nvars),
                    nvars=self.nvars, field=self.field)
            return self._groebner
        return buchberger(self.generators, order, nvars=self.nvars,
                          field=self.field)

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal<{inside}>"


def ideal_membership(f: Polynomial, ideal: Ideal) -> bool:
    """Whether ``f`` lies in the ideal (normal form against the basis is 0)."""
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    return ideal.groebner().contains(f)


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    """Whether some power of ``f`` lies in the ideal.

    Decided by adjoining a fresh last variable ``t`` and testing whether 1
    lies in ``I + <1 - t*f>``; membership of ``f`` or ``f^2`` is checked
    first as a fast path.
    """
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    gb = ideal.groebner()
    if gb.contains(f):
        return True
    if gb.contains(f * f):
        return True
    ext = f.nvars + 1
    t = Polynomial.variable(f.nvars, ext, f.field)
    one = Polynomial.one(ext, f.field)
    lifted = [g.extend(ext) for g in gb.polys]
    lifted.append(one - t * f.extend(ext))
    result = buchberger(lifted, MonomialOrder(ext))
    return result.contains_one()
