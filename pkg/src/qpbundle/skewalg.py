"""Presented q-commutation *-algebras with deterministic normal forms.

An algebra here is given by finitely many generators g_1 < ... < g_k,
a table of unit-monomial coefficients q_ij (i > j) encoding

    g_i g_j = q_ij g_j g_i,

an involutive star pairing on generators, and finitely many oriented
inhomogeneous rewrite rules whose left sides are normal-ordered
monomials (for the deformed 3-sphere: b b* -> 1 - a a*).

Monomials are exponent vectors over the generator order.  A word is
normalized in two stages: q-sorting into an exponent vector (picking up
a unit-monomial coefficient from the inversions), then exhaustive rule
rewriting.  Rules are required to be strictly decreasing in a graded
order that is invariant under multiplication, which makes the
rewriting terminate; confluence is certified empirically by
``check_local_confluence`` up to a degree bound.

The monomial order: compare total degree first, then the *reversed*
exponent tuple lexicographically.  Reversal puts weight on the later
generators, so with the order a < a* < b < b* the mixed pair b b*
outranks a a* and the sphere rule is a valid reduction.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .scalar import LaurentScalar, ONE, render_scalar

Monomial = tuple[int, ...]


def monomial_key(m: Monomial) -> tuple:
    """Sort key realizing the graded order described in the module doc."""
    return (sum(m), tuple(reversed(m)))


def _divides(lhs: Monomial, m: Monomial) -> bool:
    return all(l <= e for l, e in zip(lhs, m))


class PresentationError(ValueError):
    """Raised when presentation data violates a structural invariant."""


class AlgebraPresentation:
    """Generators, q-commutation table, star pairing and rewrite rules.

    Immutable after construction.  All element arithmetic is routed
    through this object so elements of different presentations can
    never be silently mixed.
    """

    def __init__(
        self,
        generators: Sequence[str],
        star_pairs: Mapping[str, str],
        commutation: Mapping[tuple[str, str], LaurentScalar],
        reductions: Sequence[tuple[Sequence[str], Mapping[Monomial, LaurentScalar]]] = (),
        name: str = "",
    ):
        self.generators = tuple(generators)
        self.name = name or "+".join(self.generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        self.index = {g: i for i, g in enumerate(self.generators)}
        k = len(self.generators)

        # star involution on generator indices
        star: dict[str, str] = {}
        for g, h in star_pairs.items():
            star[g] = h
            star[h] = g
        for g in self.generators:
            if g not in star:
                raise PresentationError("generator %r has no star partner" % g)
            if star[star[g]] != g:
                raise PresentationError("star pairing is not an involution at %r" % g)
            if star[g] not in self.index:
                raise PresentationError("star partner %r is not a generator" % star[g])
        self.star_map = star
        self._star_idx = tuple(self.index[star[g]] for g in self.generators)

        # full q matrix; q[i][j] for i>j is taken from the table, the
        # rest is forced by consistency
        q = [[ONE for _ in range(k)] for _ in range(k)]
        for (gi, gj), val in commutation.items():
            i, j = self.index[gi], self.index[gj]
            if i <= j:
                raise PresentationError(
                    "commutation entries must be given for later*earlier pairs, got (%s,%s)" % (gi, gj)
                )
            if not val.is_unit_monomial():
                raise PresentationError(
                    "commutation coefficient for (%s,%s) is not a unit monomial: %s"
                    % (gi, gj, render_scalar(val))
                )
            q[i][j] = val
            q[j][i] = val.inverse()
        self.q = tuple(tuple(row) for row in q)

        # oriented rewrite rules
        rules: list[tuple[Monomial, dict[Monomial, LaurentScalar]]] = []
        for lhs_word, rhs in reductions:
            lhs = self._word_vector(lhs_word)
            rhs_terms = {tuple(m): c for m, c in rhs.items() if not c.is_zero()}
            lk = monomial_key(lhs)
            for m in rhs_terms:
                if len(m) != k:
                    raise PresentationError("rule right side has wrong arity")
                if monomial_key(m) >= lk:
                    raise PresentationError(
                        "rule %s is not decreasing: right-side monomial %s is not smaller"
                        % (self.render_monomial(lhs), self.render_monomial(m))
                    )
            rules.append((lhs, rhs_terms))
        self.reductions = tuple(rules)
        for lhs, rhs_terms in self.reductions:
            for m in rhs_terms:
                if self._first_rule(m) is not None:
                    raise PresentationError(
                        "rule right side %s is itself reducible" % self.render_monomial(m)
                    )

    # -- basic helpers -------------------------------------------------

    def _word_vector(self, word: Sequence[str]) -> Monomial:
        """Exponent vector of a word that is already normal-ordered."""
        v = [0] * len(self.generators)
        last = -1
        for g in word:
            if g not in self.index:
                raise PresentationError("unknown generator %r" % g)
            i = self.index[g]
            if i < last:
                raise PresentationError(
                    "rule left side %r is not normal-ordered" % (tuple(word),)
                )
            last = i
            v[i] += 1
        return tuple(v)

    def one_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def sort_factor(self, left: Monomial, right: Monomial) -> LaurentScalar:
        """Coefficient picked up when the concatenation left*right is
        q-sorted into the exponent vector left+right.

        Every letter g_j from the right block moves past every letter
        g_i of the left block with i > j, contributing q_ij once per
        crossing pair.
        """
        f = ONE
        for i in range(len(left)):
            if not left[i]:
                continue
            for j in range(i):
                if right[j]:
                    f = f * (self.q[i][j] ** (left[i] * right[j]))
        return f

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[LaurentScalar, Monomial]:
        return self.sort_factor(a, b), tuple(x + y for x, y in zip(a, b))

    def _first_rule(self, m: Monomial):
        for idx, (lhs, _) in enumerate(self.reductions):
            if _divides(lhs, m):
                return idx
        return None

    # -- normal forms ----------------------------------------------------

    def reduce_terms(self, terms: Mapping[Monomial, LaurentScalar]) -> dict[Monomial, LaurentScalar]:
        """Exhaustively rewrite a map of q-sorted monomials to coefficients."""
        out: dict[Monomial, LaurentScalar] = {}
        stack = [(m, c) for m, c in terms.items() if not c.is_zero()]
        while stack:
            m, c = stack.pop()
            ridx = self._first_rule(m)
            if ridx is None:
                s = out.get(m, LaurentScalar.zero()) + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
                continue
            lhs, rhs = self.reductions[ridx]
            rest = tuple(e - l for e, l in zip(m, lhs))
            # m, as an ordered word, equals sort_factor(lhs, rest)^-1
            # times the concatenation lhs*rest, so rewriting lhs gives
            # that inverse factor times rhs*rest.
            base = c * self.sort_factor(lhs, rest).inverse()
            for rm, rc in rhs.items():
                f, prod = self.mono_mul(rm, rest)
                stack.append((prod, base * rc * f))
        return out

    def normal_form(self, word: Sequence[str], coeff: LaurentScalar = ONE) -> "AlgebraElement":
        """Normal form of a single coefficient*word product."""
        v = [0] * len(self.generators)
        c = coeff
        # insert letters left to right; each new letter g_j crosses the
        # tail of letters g_i already placed with i > j
        for g in word:
            if g not in self.index:
                raise PresentationError(
                    "unknown generator %r (algebra %s)" % (g, self.name)
                )
            j = self.index[g]
            for i in range(j + 1, len(v)):
                if v[i]:
                    c = c * (self.q[i][j] ** v[i])
            v[j] += 1
        return AlgebraElement(self, self.reduce_terms({tuple(v): c}))

    # -- element constructors ---------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.one_monomial(): ONE})

    def gen(self, name: str) -> "AlgebraElement":
        return self.normal_form([name])

    def element(self, terms: Mapping[Monomial, LaurentScalar]) -> "AlgebraElement":
        return AlgebraElement(self, self.reduce_terms(terms))

    # -- operations on elements ---------------------------------------------

    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.presentation is not self or y.presentation is not self:
            raise PresentationError("elements of a different presentation")
        raw: dict[Monomial, LaurentScalar] = {}
        for mx, cx in x.terms.items():
            for my, cy in y.terms.items():
                f, prod = self.mono_mul(mx, my)
                s = raw.get(prod, LaurentScalar.zero()) + cx * cy * f
                if s.is_zero():
                    raw.pop(prod, None)
                else:
                    raw[prod] = s
        return AlgebraElement(self, self.reduce_terms(raw))

    def star(self, x: "AlgebraElement") -> "AlgebraElement":
        if x.presentation is not self:
            raise PresentationError("element of a different presentation")
        out = self.zero()
        for m, c in x.terms.items():
            word: list[str] = []
            for i in range(len(m) - 1, -1, -1):
                word.extend([self.generators[self._star_idx[i]]] * m[i])
            out = out + self.normal_form(word, c.star())
        return out

    def star_monomial(self, m: Monomial) -> tuple[LaurentScalar, Monomial]:
        """Star of a single monomial: (coefficient, normal monomial).

        Star pairs of generators always commute up to a unit monomial
        here, so the star of a monomial is again a single monomial.
        """
        word: list[str] = []
        for i in range(len(m) - 1, -1, -1):
            word.extend([self.generators[self._star_idx[i]]] * m[i])
        el = self.normal_form(word)
        if len(el.terms) != 1:
            # possible when a rewrite rule fires; fall back to element form
            raise PresentationError("monomial star is not a monomial")
        ((mm, cc),) = el.terms.items()
        return cc, mm

    def equal(self, x: "AlgebraElement", y: "AlgebraElement") -> bool:
        if x.presentation is not self or y.presentation is not self:
            raise PresentationError("elements of a different presentation")
        return x.terms == y.terms

    # -- enumeration --------------------------------------------------------

    def monomials_up_to(self, degree: int, reduced_only: bool = True) -> list[Monomial]:
        """All exponent vectors of total degree <= degree, smallest first.

        With ``reduced_only`` the reducible vectors (those divisible by
        a rule left side) are skipped, which enumerates the monomial
        basis of the quotient.
        """
        k = len(self.generators)
        out = []
        for total in range(degree + 1):
            for m in _compositions(total, k):
                if reduced_only and self._first_rule(m) is not None:
                    continue
                out.append(m)
        return out

    # -- rendering ------------------------------------------------------------

    def render_monomial(self, m: Monomial) -> str:
        if not any(m):
            return "1"
        parts = []
        for g, e in zip(self.generators, m):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append("%s^%d" % (g, e))
        return " ".join(parts)

    def __repr__(self) -> str:
        return "AlgebraPresentation(%s: %s)" % (self.name, ", ".join(self.generators))


def _compositions(total: int, k: int) -> Iterable[Monomial]:
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


class AlgebraElement:
    """A normal-form linear combination of monomials.

    Value-semantic; arithmetic delegates to the owning presentation.
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: AlgebraPresentation, terms: dict[Monomial, LaurentScalar]):
        self.presentation = presentation
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal total degree of a monomial (zero element has -1)."""
        return max((sum(m) for m in self.terms), default=-1)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if other.presentation is not self.presentation:
            raise PresentationError("elements of different presentations")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, LaurentScalar.zero()) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return AlgebraElement(self.presentation, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.presentation, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.presentation.mul(self, other)
        if isinstance(other, (LaurentScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int) -> "AlgebraElement":
        if power < 0:
            raise ValueError("negative powers are not defined here")
        out = self.presentation.one()
        for _ in range(power):
            out = out * self
        return out

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = LaurentScalar.integer(c)
        return AlgebraElement(self.presentation, {m: x * c for m, x in self.terms.items()})

    def star(self) -> "AlgebraElement":
        return self.presentation.star(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.presentation is other.presentation and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.presentation), frozenset((m, c) for m, c in self.terms.items())))

    def __repr__(self) -> str:
        return "<%s>" % render_element(self)


def render_element(x: AlgebraElement) -> str:
    """Deterministic text form, monomials in increasing order."""
    if not x.terms:
        return "0"
    pieces = []
    for m in sorted(x.terms, key=monomial_key):
        c = x.terms[m]
        word = x.presentation.render_monomial(m)
        neg = False
        cterms = c.terms
        if len(cterms) == 1:
            ((exps, ic),) = cterms.items()
            if ic < 0:
                neg = True
                c = -c
        if c.is_one():
            body = word
        else:
            cs = render_scalar(c)
            if len(c.terms) > 1:
                cs = "(%s)" % cs
            body = cs if word == "1" else "%s %s" % (cs, word)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


def tensor_presentation(
    p1: AlgebraPresentation, p2: AlgebraPresentation, name: str = ""
) -> AlgebraPresentation:
    """Slot-wise tensor product: generators from different slots commute.

    Generator name spaces must already be disjoint; the factors keep
    their own commutation tables and rewrite rules.
    """
    clash = set(p1.generators) & set(p2.generators)
    if clash:
        raise PresentationError("generator name collision: %s" % sorted(clash))
    gens = p1.generators + p2.generators
    star = {}
    star.update({g: p1.star_map[g] for g in p1.generators})
    star.update({g: p2.star_map[g] for g in p2.generators})
    comm: dict[tuple[str, str], LaurentScalar] = {}
    for i in range(len(p1.generators)):
        for j in range(i):
            comm[(p1.generators[i], p1.generators[j])] = p1.q[i][j]
    for i in range(len(p2.generators)):
        for j in range(i):
            comm[(p2.generators[i], p2.generators[j])] = p2.q[i][j]
    # cross-slot pairs commute; the q matrix default of 1 handles them
    k1 = len(p1.generators)
    reductions = []
    for lhs, rhs in p1.reductions:
        word = _vector_word(p1, lhs)
        rhs_ext = {m + (0,) * len(p2.generators): c for m, c in rhs.items()}
        reductions.append((word, rhs_ext))
    for lhs, rhs in p2.reductions:
        word = _vector_word(p2, lhs)
        rhs_ext = {(0,) * k1 + m: c for m, c in rhs.items()}
        reductions.append((word, rhs_ext))
    return AlgebraPresentation(
        gens, star, comm, reductions, name=name or "%s(x)%s" % (p1.name, p2.name)
    )


def _vector_word(p: AlgebraPresentation, m: Monomial) -> list[str]:
    word: list[str] = []
    for g, e in zip(p.generators, m):
        word.extend([g] * e)
    return word


class ConfluenceReport:
    """Outcome of the local-confluence scan."""

    def __init__(self, degree_bound: int):
        self.degree_bound = degree_bound
        self.checked = 0
        self.divergences: list[tuple[Monomial, str]] = []

    @property
    def ok(self) -> bool:
        return not self.divergences


def check_local_confluence(p: AlgebraPresentation, degree_bound: int) -> ConfluenceReport:
    """Check that all single-step rewrite choices rejoin.

    For every exponent vector up to the bound and every rule that
    applies to it, perform that one step and then fully normalize; all
    resulting elements must agree.  Divergences are reported, not
    raised, so that deliberately broken presentations can be examined.
    """
    if degree_bound < 2:
        raise ValueError("degree bound must be at least 2")
    report = ConfluenceReport(degree_bound)
    k = len(p.generators)
    for total in range(degree_bound + 1):
        for m in _compositions(total, k):
            results = []
            for lhs, rhs in p.reductions:
                if not _divides(lhs, m):
                    continue
                rest = tuple(e - l for e, l in zip(m, lhs))
                base = p.sort_factor(lhs, rest).inverse()
                raw: dict[Monomial, LaurentScalar] = {}
                for rm, rc in rhs.items():
                    f, prod = p.mono_mul(rm, rest)
                    s = raw.get(prod, LaurentScalar.zero()) + base * rc * f
                    raw[prod] = s
                results.append(AlgebraElement(p, p.reduce_terms(raw)))
            if results:
                report.checked += 1
                first = results[0]
                for other in results[1:]:
                    if other != first:
                        report.divergences.append(
                            (
                                m,
                                "%s vs %s" % (render_element(first), render_element(other)),
                            )
                        )
                        break
    return report
