"""Sparse Laurent polynomials with integer coefficients.

Exponents are stored as integer numerators over a fixed ``denominator``
so that the Jones polynomial, which lives in ``Z[t^(1/4), t^(-1/4)]`` for
arbitrary diagrams, can be represented without fractional exponents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPolynomial:
    """An integer Laurent polynomial in a single variable.

    ``terms`` maps exponent numerators to coefficients; zero coefficients
    are dropped on construction.  Two polynomials compare equal only if
    they share the same ``denominator``.
    """

    __slots__ = ("_terms", "denominator", "variable")

    def __init__(
        self,
        terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
        denominator: int = 1,
        variable: str = "A",
    ):
        if denominator < 1:
            raise ValueError("denominator must be positive")
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self.denominator = denominator
        self.variable = variable

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, denominator: int = 1, variable: str = "A"):
        return cls({exponent: coefficient}, denominator, variable)

    @classmethod
    def one(cls, denominator: int = 1, variable: str = "A"):
        return cls({0: 1}, denominator, variable)

    # -- container protocol -------------------------------------------------
    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "LaurentPolynomial"):
        if self.denominator != other.denominator:
            raise ValueError("exponent denominators differ")

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.denominator, self.variable)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc, self.denominator, self.variable)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.denominator, self.variable)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc, self.denominator, self.variable)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = LaurentPolynomial.one(self.denominator, self.variable)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``x^(k / denominator)``."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.denominator, self.variable)

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute ``x -> x^-1``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()}, self.denominator, self.variable)

    def rescale(self, factor: int, denominator: int | None = None, variable: str | None = None):
        """Substitute ``x -> y^factor`` and re-express over ``denominator``."""
        return LaurentPolynomial(
            {e * factor: c for e, c in self._terms.items()},
            self.denominator if denominator is None else denominator,
            self.variable if variable is None else variable,
        )

    def __call__(self, value):
        """Evaluate at ``value`` (numeric; ``value`` is the base variable)."""
        total = 0
        for e, c in self._terms.items():
            power = Fraction(e, self.denominator)
            if power.denominator == 1:
                total += c * value ** int(power)
            else:
                total += c * value ** float(power)
        return total

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.denominator == other.denominator and self._terms == other._terms

    def __hash__(self):
        return hash((self.denominator, tuple(self.items())))

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {"denominator": self.denominator, "terms": [[e, c] for e, c in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping, variable: str = "A") -> "LaurentPolynomial":
        return cls([(e, c) for e, c in data["terms"]], int(data.get("denominator", 1)), variable)

    def __repr__(self):
        return f"LaurentPolynomial({dict(self.items())!r}, denominator={self.denominator})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            power = Fraction(e, self.denominator)
            if power == 0:
                mono = ""
            elif power == 1:
                mono = self.variable
            elif power.denominator == 1:
                mono = f"{self.variable}^{power.numerator}"
            else:
                mono = f"{self.variable}^({power})"
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]
