"""Exact scalars: polynomials in a formal weight parameter over the rationals.

Every coefficient in the library lives in Q[l], where ``l`` is the weight of the
Rota-Baxter structure.  Keeping the weight formal through all operadic layers
means a single computation certifies every specialization; the weight is only
ever evaluated at a rational number at the boundary to concrete algebras.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

RationalLike = Union[int, str, Fraction]

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "LAMBDA",
    "scalar_add",
    "scalar_mul",
    "scalar_eval",
    "parse_rational",
    "render_rational",
]


def parse_rational(text: RationalLike) -> Fraction:
    """Accept ``p``, ``p/q`` or an int/Fraction and return an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"not a rational: {text!r}")


def render_rational(value: Fraction) -> str:
    # "p" for integers, "p/q" otherwise; the sign stays on the numerator.
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class Scalar:
    """An element of Q[l], stored as sorted ``(exponent, coefficient)`` pairs.

    The representation is canonical: exponents strictly increasing, no zero
    coefficients.  Construct via :meth:`from_terms` (or the module constants
    and factories) so the invariant always holds; arithmetic preserves it.
    """

    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_terms(terms: Iterable[tuple[int, RationalLike]] | Mapping[int, RationalLike]) -> "Scalar":
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, Fraction] = {}
        for exp, coeff in terms:
            if exp < 0:
                raise ValueError("negative weight exponent")
            c = parse_rational(coeff)
            if c:
                acc[exp] = acc.get(exp, Fraction(0)) + c
        return Scalar(tuple(sorted((e, c) for e, c in acc.items() if c)))

    @staticmethod
    def rational(value: RationalLike) -> "Scalar":
        c = parse_rational(value)
        return Scalar(((0, c),)) if c else ZERO

    @staticmethod
    def weight(power: int = 1, coeff: RationalLike = 1) -> "Scalar":
        """``coeff * l**power``."""
        return Scalar.from_terms([(power, coeff)])

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = dict(self.terms)
        for exp, coeff in other.terms:
            s = acc.get(exp, Fraction(0)) + coeff
            if s:
                acc[exp] = s
            else:
                acc.pop(exp, None)
        return Scalar(tuple(sorted(acc.items())))

    def __neg__(self) -> "Scalar":
        return Scalar(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Scalar | RationalLike") -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar.rational(other)
        if not self.terms or not other.terms:
            return ZERO
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                s = acc.get(e, Fraction(0)) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    del acc[e]
        return Scalar(tuple(sorted(acc.items())))

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Scalar":
        if power < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(power):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    def constant_value(self) -> Fraction:
        """The value in Q, for scalars with no weight dependence."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"scalar {self.render()!r} depends on the formal weight")
        return self.terms[0][1]

    def evaluate(self, weight: RationalLike) -> Fraction:
        lam = parse_rational(weight)
        return sum((c * lam**e for e, c in self.terms), Fraction(0))

    # -- text form ---------------------------------------------------------

    def render(self) -> str:
        """Human/serialization form, e.g. ``"2 - 3/2*l + l^2"``; zero is ``"0"``."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.terms:
            if exp == 0:
                body = render_rational(abs(coeff))
            else:
                var = "l" if exp == 1 else f"l^{exp}"
                body = var if abs(coeff) == 1 else f"{render_rational(abs(coeff))}*{var}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.render()

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of :meth:`render`; also accepts ``**`` and spaces freely."""
        s = text.replace("**", "^").strip()
        if not s:
            raise ValueError("empty scalar")
        if s == "0":
            return ZERO
        term_re = re.compile(
            r"""(?P<sign>[+-])?\s*
                (?: (?P<coeff>\d+(?:/\d+)?) \s* (?:\*\s*(?P<var1>l(?:\^(?P<exp1>\d+))?))?
                  | (?P<var2>l(?:\^(?P<exp2>\d+))?) )
                \s*""",
            re.VERBOSE,
        )
        pos = 0
        terms: list[tuple[int, Fraction]] = []
        first = True
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse scalar {text!r} at {s[pos:]!r}")
            sign = m.group("sign")
            if sign is None and not first:
                raise ValueError(f"missing +/- between terms in {text!r}")
            factor = Fraction(-1 if sign == "-" else 1)
            if m.group("coeff") is not None:
                factor *= Fraction(m.group("coeff"))
                var, exp = m.group("var1"), m.group("exp1")
            else:
                var, exp = m.group("var2"), m.group("exp2")
            degree = 0
            if var is not None:
                degree = int(exp) if exp is not None else 1
            terms.append((degree, factor))
            pos = m.end()
            first = False
        return Scalar.from_terms(terms)


ZERO = Scalar(())
ONE = Scalar(((0, Fraction(1)),))
LAMBDA = Scalar(((1, Fraction(1)),))


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_eval(a: Scalar, weight: RationalLike) -> Fraction:
    return a.evaluate(weight)
