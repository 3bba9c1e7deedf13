"""Sparse Laurent polynomials over Q, and formal fractions of them.

Monomials are canonical tuples of (variable, exponent) pairs; exponents may
be negative.  These model regular and rational functions on torus charts:
the vanishing order of a function along the divisor {var = 0} is the minimal
exponent of var, and restriction to that divisor keeps the lowest-order part.
"""

from __future__ import annotations

import re
from fractions import Fraction

from stratval.errors import ChartError, SchemaError

Monomial = tuple[tuple[str, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        e2 = d.get(v, 0) + e
        if e2:
            d[v] = e2
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


class LaurentPoly:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({(): Fraction(c)})

    @staticmethod
    def var(name: str, exp: int = 1) -> "LaurentPoly":
        if exp == 0:
            return LaurentPoly.const(1)
        return LaurentPoly({((name, exp),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, Fraction(0)) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return LaurentPoly(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = d.get(m, Fraction(0)) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return LaurentPoly(d)

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly({m: c * co for m, co in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use LaurentFraction")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def min_exponent(self, var: str) -> int:
        """Least exponent of var over all terms; the vanishing order along {var=0}."""
        if not self.terms:
            raise ChartError("min_exponent of the zero polynomial")
        return min(dict(m).get(var, 0) for m in self.terms)

    def divide_by_power(self, var: str, k: int) -> "LaurentPoly":
        """Multiply by var**(-k); exact in the Laurent ring."""
        if k == 0:
            return self
        shift: Monomial = ((var, -k),)
        return LaurentPoly({_mono_mul(m, shift): c for m, c in self.terms.items()})

    def set_zero(self, var: str) -> "LaurentPoly":
        """Restrict to the divisor {var = 0}: drop terms with positive var-exponent
        and erase var from the rest.  Requires min_exponent(var) >= 0."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = dict(m).get(var, 0)
            if e < 0:
                raise ChartError(f"set_zero({var}): negative exponent {e} present")
            if e == 0:
                out[m] = c
        return LaurentPoly(out)

    def lowest_part(self, var: str) -> "LaurentPoly":
        """The terms where var attains its minimal exponent, with var erased."""
        k = self.min_exponent(var)
        out = {}
        for m, c in self.terms.items():
            if dict(m).get(var, 0) == k:
                out[_mono_mul(m, ((var, -k),))] = c
        return LaurentPoly(out)

    def total_degree_parts(self) -> dict[int, "LaurentPoly"]:
        """Split into homogeneous parts by total degree (sum of exponents)."""
        parts: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = sum(e for _, e in m)
            parts.setdefault(d, {})[m] = c
        return {d: LaurentPoly(t) for d, t in parts.items()}

    def weighted_degree_parts(self, weights: dict[str, int]) -> dict[int, "LaurentPoly"]:
        parts: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = sum(e * weights[v] for v, e in m)
            parts.setdefault(d, {})[m] = c
        return {d: LaurentPoly(t) for d, t in parts.items()}

    def substitute(self, table: dict[str, "LaurentPoly"]) -> "LaurentPoly":
        """Map each variable through table (missing names are an error).
        Exponents must be nonnegative for substituted variables."""
        total = LaurentPoly.zero()
        for m, c in self.terms.items():
            term = LaurentPoly.const(c)
            for v, e in m:
                if v not in table:
                    raise SchemaError(f"unknown variable {v!r} in substitution")
                if e < 0:
                    raise SchemaError(f"negative exponent on {v!r} cannot be substituted")
                term = term * (table[v] ** e)
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            factors = [f"{v}^{e}" if e != 1 else v for v, e in m]
            if not factors:
                bits.append(str(c))
            elif c == 1:
                bits.append("*".join(factors))
            elif c == -1:
                bits.append("-" + "*".join(factors))
            else:
                bits.append(str(c) + "*" + "*".join(factors))
        s = " + ".join(bits).replace("+ -", "- ")
        return s

    __repr__ = __str__


_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<coef>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)"
    r"(?:\^(?P<exp>-?\d+))?|(?P<mul>\*))"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse sums of signed monomials like '3*a^2*b^-1 - x14 + 1/2'."""
    pos = 0
    total = LaurentPoly.zero()
    sign = 1
    coef: Fraction | None = None
    mono: dict[str, int] = {}
    pending = False

    def flush():
        nonlocal sign, coef, mono, pending, total
        if not pending:
            return
        if coef is None and not mono:
            raise SchemaError(f"dangling sign in {text!r}")
        c = Fraction(sign) * (coef if coef is not None else Fraction(1))
        m = tuple(sorted((v, e) for v, e in mono.items() if e))
        total = total + LaurentPoly({m: c})
        sign, coef, mono, pending = 1, None, {}, False

    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise SchemaError(f"cannot parse expression at ...{text[pos:pos + 20]!r}")
        pos = mt.end()
        if mt.group("sign"):
            flush()
            sign = -1 if mt.group("sign") == "-" else 1
            pending = True
        elif mt.group("coef"):
            if coef is not None:
                raise SchemaError(f"two coefficients in one term: {text!r}")
            coef = Fraction(mt.group("coef"))
            pending = True
        elif mt.group("var"):
            v = mt.group("var")
            e = int(mt.group("exp") or 1)
            mono[v] = mono.get(v, 0) + e
            pending = True
        # '*' separators carry no content
    flush()
    if not text.strip():
        raise SchemaError("empty expression")
    return total


class LaurentFraction:
    """Formal quotient num/den of Laurent polynomials; den is never zero.

    The valuation recursion produces genuine rational functions; keeping them
    as unreduced pairs avoids multivariate division entirely.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: LaurentPoly) -> "LaurentFraction":
        return LaurentFraction(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other: "LaurentFraction") -> "LaurentFraction":
        return LaurentFraction(self.num * other.num, self.den * other.den)

    def mul_poly(self, p: LaurentPoly) -> "LaurentFraction":
        return LaurentFraction(self.num * p, self.den)

    def div_poly(self, p: LaurentPoly) -> "LaurentFraction":
        if p.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return LaurentFraction(self.num, self.den * p)

    def __pow__(self, n: int) -> "LaurentFraction":
        if n < 0:
            return LaurentFraction(self.den, self.num) ** (-n)
        return LaurentFraction(self.num**n, self.den**n)

    def min_exponent(self, var: str) -> int:
        """Vanishing order along {var = 0}: exact because the Laurent ring is a
        domain, so orders of num and den subtract."""
        if self.is_zero():
            raise ChartError("vanishing order of the zero function")
        return self.num.min_exponent(var) - self.den.min_exponent(var)

    def restrict(self, var: str) -> "LaurentFraction":
        """Restriction to the divisor {var = 0}, defined when min_exponent == 0:
        keep the lowest var-order parts of num and den."""
        if self.min_exponent(var) != 0:
            raise ChartError(
                f"restriction to {{{var}=0}} of a function with nonzero order"
            )
        return LaurentFraction(self.num.lowest_part(var), self.den.lowest_part(var))

    def as_constant(self) -> Fraction:
        """Value when num and den are both constants."""
        nt, dt = self.num.terms, self.den.terms
        if set(nt) | set(dt) > {()}:
            raise ChartError("fraction is not constant")
        return nt.get((), Fraction(0)) / dt[()]

    def __str__(self) -> str:
        if self.den == LaurentPoly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__
