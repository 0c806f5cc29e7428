"""Exact coefficient arithmetic.

Every coefficient appearing in the deformed-sphere computations is an
integer combination of monomials in two formal unimodular symbols
``L`` and ``M`` (two independent deformation parameters on the unit
circle).  Conjugation of a unimodular number is inversion, so the star
operation on coefficients simply negates all exponents.

Scalars are integer-coefficient Laurent polynomials in (L, M), stored
as a canonical map from exponent pairs to nonzero integers.  No
division is ever performed; anything that would need rational
coefficients is rejected by construction.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentScalar:
    """An integer-coefficient Laurent polynomial in the symbols L and M.

    Immutable and canonical: zero coefficients are never stored, so two
    scalars are equal iff their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    e = (int(exps[0]), int(exps[1]))
                    c = clean.get(e, 0) + int(coeff)
                    if c:
                        clean[e] = c
                    elif e in clean:
                        del clean[e]
        self._terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls({(0, 0): 1})

    @classmethod
    def integer(cls, n: int) -> "LaurentScalar":
        return cls({(0, 0): n})

    @classmethod
    def monomial(cls, coeff: int = 1, e_l: int = 0, e_m: int = 0) -> "LaurentScalar":
        return cls({(e_l, e_m): coeff})

    @classmethod
    def lam(cls, power: int = 1) -> "LaurentScalar":
        """The first deformation symbol L raised to an integer power."""
        return cls({(power, 0): 1})

    @classmethod
    def lam2(cls, power: int = 1) -> "LaurentScalar":
        """The second deformation symbol M raised to an integer power."""
        return cls({(0, power): 1})

    # -- queries -----------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, 0): 1}

    def is_unit_monomial(self) -> bool:
        """True iff the scalar is a single term with coefficient +-1.

        These are exactly the scalars that may appear as commutation
        coefficients, since they are invertible in the integer Laurent
        ring.
        """
        if len(self._terms) != 1:
            return False
        return abs(next(iter(self._terms.values()))) == 1

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return LaurentScalar(out)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentScalar({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (l1, m1), c1 in self._terms.items():
            for (l2, m2), c2 in other._terms.items():
                e = (l1 + l2, m1 + m2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return LaurentScalar(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, power: int) -> "LaurentScalar":
        if power < 0:
            return self.inverse() ** (-power)
        out = LaurentScalar.one()
        base = self
        p = power
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out

    def inverse(self) -> "LaurentScalar":
        """Inverse of a unit monomial; anything else has none."""
        if not self.is_unit_monomial():
            raise ValueError("only unit monomials are invertible: %r" % self)
        ((e_l, e_m), c), = self._terms.items()
        return LaurentScalar({(-e_l, -e_m): c})

    def star(self) -> "LaurentScalar":
        """Conjugation: exponents negate, integer coefficients stay."""
        return LaurentScalar({(-l, -m): c for (l, m), c in self._terms.items()})

    # -- protocol ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return "LaurentScalar(%s)" % render_scalar(self)


def render_scalar(x: LaurentScalar) -> str:
    """Canonical text form, e.g. ``2*L^-1*M^3 + 1``."""
    if x.is_zero():
        return "0"
    pieces = []
    for (e_l, e_m) in sorted(x.terms, reverse=True):
        c = x.terms[(e_l, e_m)]
        factors = []
        if e_l:
            factors.append("L" if e_l == 1 else "L^%d" % e_l)
        if e_m:
            factors.append("M" if e_m == 1 else "M^%d" % e_m)
        if not factors:
            body = str(abs(c))
        else:
            body = "*".join(factors)
            if abs(c) != 1:
                body = "%d*%s" % (abs(c), body)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


ZERO = LaurentScalar.zero()
ONE = LaurentScalar.one()


def binomial(n: int, k: int) -> int:
    """Binomial coefficient as an exact integer (0 outside range)."""
    if k < 0 or k > n:
        return 0
    import math

    return math.comb(n, k)
