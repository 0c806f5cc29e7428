"""The circle coalgebra, coactions as gradings, and mixed tensor spaces.

Both the structure Hopf algebra and the coacting coalgebra are fixed to
the group algebra of the integers: basis of grouplikes u^n, with

    Delta(u^n) = u^n (x) u^n,   eps(u^n) = 1,   S(u^n) = u^-n.

A coaction by this Hopf algebra on a presented algebra is the same
thing as an integer grading on its generators, extended additively to
monomials.  Right and left coactions are stored together in a
``CoactionSpec``; star generators must carry opposite degrees since the
grouplike generator is unitary.

``TensorElement`` is the workhorse for everything tensor-shaped in the
verification suites: P(x)P, P(x)C, H(x)P(x)P, (A(x)P)(x)(A(x)P) and so
on.  Shapes are explicit and checked on every operation; algebra slots
hold normal-form monomials of a named presentation, coalgebra slots
hold grouplike indices.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .scalar import LaurentScalar, ONE, render_scalar
from .skewalg import (
    AlgebraElement,
    AlgebraPresentation,
    Monomial,
    PresentationError,
    monomial_key,
)


class GroupCoalgebraElement:
    """Linear combination of grouplikes u^n with scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, LaurentScalar] | None = None):
        self.terms: dict[int, LaurentScalar] = {}
        if terms:
            for n, c in terms.items():
                if not c.is_zero():
                    self.terms[int(n)] = c

    @classmethod
    def grouplike(cls, n: int) -> "GroupCoalgebraElement":
        return cls({n: ONE})

    @classmethod
    def zero(cls) -> "GroupCoalgebraElement":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupCoalgebraElement") -> "GroupCoalgebraElement":
        out = dict(self.terms)
        for n, c in other.terms.items():
            s = out.get(n, LaurentScalar.zero()) + c
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
        return GroupCoalgebraElement(out)

    def __mul__(self, other):
        if isinstance(other, GroupCoalgebraElement):
            out: dict[int, LaurentScalar] = {}
            for n, c in self.terms.items():
                for m, d in other.terms.items():
                    s = out.get(n + m, LaurentScalar.zero()) + c * d
                    if s.is_zero():
                        out.pop(n + m, None)
                    else:
                        out[n + m] = s
            return GroupCoalgebraElement(out)
        if isinstance(other, (LaurentScalar, int)):
            if isinstance(other, int):
                other = LaurentScalar.integer(other)
            return GroupCoalgebraElement({n: c * other for n, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupCoalgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "<0>"
        bits = []
        for n in sorted(self.terms):
            c = render_scalar(self.terms[n])
            u = "u^%d" % n if n else "1"
            bits.append("%s %s" % (c, u) if c != "1" else u)
        return "<%s>" % " + ".join(bits)


def comultiply(x: GroupCoalgebraElement) -> "TensorElement":
    """Delta, landing in the coalgebra-coalgebra tensor square."""
    shape = (coalg_slot(), coalg_slot())
    return TensorElement(shape, {(n, n): c for n, c in x.terms.items()})


def counit(x: GroupCoalgebraElement) -> LaurentScalar:
    total = LaurentScalar.zero()
    for c in x.terms.values():
        total = total + c
    return total


def antipode(x: GroupCoalgebraElement) -> GroupCoalgebraElement:
    return GroupCoalgebraElement({-n: c for n, c in x.terms.items()})


def coseparability_retraction(t: "TensorElement") -> GroupCoalgebraElement:
    """The bicolinear retraction of comultiplication.

    On grouplikes it keeps the diagonal, u^m (x) u^n -> delta_{m,n} u^n,
    and kills everything off it.
    """
    if t.shape != (coalg_slot(), coalg_slot()):
        raise ShapeError("retraction expects a coalgebra-coalgebra tensor")
    out: dict[int, LaurentScalar] = {}
    for (m, n), c in t.terms.items():
        if m == n:
            s = out.get(n, LaurentScalar.zero()) + c
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
    return GroupCoalgebraElement(out)


class CoactionSpec:
    """Integer gradings on the generators of one presented algebra.

    ``right`` holds the degrees of the right coaction (m -> m (x)
    u^deg), ``left`` those of the left coaction (m -> u^deg (x) m);
    either may be absent.  Monomial degrees are sums of generator
    degrees, so coactions are automatically algebra maps; the
    generator-level data must satisfy two laws checked here:

    * star partners carry opposite degrees (unitarity of u);
    * every rewrite rule is homogeneous, otherwise the grading would
      not descend to the quotient.

    ``unit_left_degree`` and ``unit_right_degree`` shift the degree of
    every monomial on the given side and exist purely as
    fault-injection knobs: any nonzero value breaks the comodule unit
    law (and multiplicativity) and must be flagged by the checkers.
    """

    def __init__(
        self,
        presentation: AlgebraPresentation,
        right: Mapping[str, int] | None = None,
        left: Mapping[str, int] | None = None,
        unit_left_degree: int = 0,
        unit_right_degree: int = 0,
    ):
        self.presentation = presentation
        self.right = dict(right) if right is not None else None
        self.left = dict(left) if left is not None else None
        self.unit_left_degree = unit_left_degree
        self.unit_right_degree = unit_right_degree
        for table, label in ((self.right, "right"), (self.left, "left")):
            if table is None:
                continue
            for g in presentation.generators:
                if g not in table:
                    raise PresentationError("%s degree missing for %r" % (label, g))
                if table[g] != -table[presentation.star_map[g]]:
                    raise PresentationError(
                        "%s degrees of %r and its star are not opposite" % (label, g)
                    )
            for lhs, rhs in presentation.reductions:
                d = self._vec_degree(table, lhs)
                for m in rhs:
                    if self._vec_degree(table, m) != d:
                        raise PresentationError(
                            "rewrite rule %s is not homogeneous for the %s grading"
                            % (presentation.render_monomial(lhs), label)
                        )

    def _vec_degree(self, table: Mapping[str, int], m: Monomial) -> int:
        return sum(e * table[g] for g, e in zip(self.presentation.generators, m) if e)

    def right_degree(self, m: Monomial) -> int:
        if self.right is None:
            raise PresentationError("no right coaction declared")
        return self._vec_degree(self.right, m) + self.unit_right_degree

    def left_degree(self, m: Monomial) -> int:
        if self.left is None:
            raise PresentationError("no left coaction declared")
        return self._vec_degree(self.left, m) + self.unit_left_degree

    def has_right(self) -> bool:
        return self.right is not None

    def has_left(self) -> bool:
        return self.left is not None


# -- tensor shapes ------------------------------------------------------------


class ShapeError(ValueError):
    """Tensor operands with mismatched or unexpected shapes."""


_COALG = ("coalg", None)


def coalg_slot():
    return _COALG


def alg_slot(p: AlgebraPresentation):
    return ("alg", p)


class TensorElement:
    """Exact element of a tensor space with explicit slot structure.

    ``shape`` is a tuple of slot descriptors; keys of ``terms`` are
    tuples with one entry per slot: a monomial for an algebra slot, an
    integer grouplike index for a coalgebra slot.  Algebra-slot entries
    are required to be irreducible, which all constructors below
    guarantee by building through the presentation's normal form.
    """

    __slots__ = ("shape", "terms")

    def __init__(self, shape, terms: Mapping[tuple, LaurentScalar] | None = None):
        self.shape = tuple(shape)
        self.terms: dict[tuple, LaurentScalar] = {}
        if terms:
            for key, c in terms.items():
                if c.is_zero():
                    continue
                k = tuple(key)
                if len(k) != len(self.shape):
                    raise ShapeError("key arity does not match shape")
                s = self.terms.get(k, LaurentScalar.zero()) + c
                if s.is_zero():
                    self.terms.pop(k, None)
                else:
                    self.terms[k] = s

    @classmethod
    def zero(cls, shape) -> "TensorElement":
        return cls(shape, {})

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same_shape(self, other: "TensorElement"):
        if self.shape != other.shape:
            raise ShapeError("tensor shapes differ")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_same_shape(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, LaurentScalar.zero()) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TensorElement(self.shape, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.shape, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if isinstance(c, int):
            c = LaurentScalar.integer(c)
        return TensorElement(self.shape, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return "<tensor %s>" % render_tensor(self)


def tensor_of(factors: Sequence) -> TensorElement:
    """Tensor product of elements: AlgebraElement or GroupCoalgebraElement
    per slot, fully expanded and canonicalized."""
    shape = []
    slot_terms = []
    for f in factors:
        if isinstance(f, AlgebraElement):
            shape.append(alg_slot(f.presentation))
            slot_terms.append(list(f.terms.items()))
        elif isinstance(f, GroupCoalgebraElement):
            shape.append(coalg_slot())
            slot_terms.append(list(f.terms.items()))
        else:
            raise ShapeError("cannot place %r in a tensor slot" % type(f))
    out: dict[tuple, LaurentScalar] = {}
    keys: list[tuple] = [()]
    coeffs: list[LaurentScalar] = [ONE]
    for entries in slot_terms:
        keys, coeffs, old_k, old_c = [], [], keys, coeffs
        for k, c in zip(old_k, old_c):
            for key, cc in entries:
                keys.append(k + (key,))
                coeffs.append(c * cc)
    for k, c in zip(keys, coeffs):
        s = out.get(k, LaurentScalar.zero()) + c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return TensorElement(tuple(shape), out)


def tensor_concat(x: TensorElement, y: TensorElement) -> TensorElement:
    """Side-by-side tensor product: shapes concatenate, coefficients
    multiply pairwise."""
    shape = x.shape + y.shape
    out: dict[tuple, LaurentScalar] = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            k = kx + ky
            s = out.get(k, LaurentScalar.zero()) + cx * cy
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
    return TensorElement(shape, out)


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    """Slot-wise product of two tensors of identical shape."""
    if x.shape != y.shape:
        raise ShapeError("tensor shapes differ")
    out = TensorElement.zero(x.shape)
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            factors = []
            for slot, a, b in zip(x.shape, kx, ky):
                kind, pres = slot
                if kind == "alg":
                    f, prod = pres.mono_mul(a, b)
                    factors.append(pres.element({prod: f}))
                else:
                    factors.append(GroupCoalgebraElement.grouplike(a + b))
            piece = tensor_of(factors).scale(cx * cy)
            out = out + piece
    return out


def tensor_apply(t: TensorElement, slot: int, f: Callable) -> TensorElement:
    """Apply a linear slot map to one slot and splice the result.

    ``f`` receives the slot's key (monomial or grouplike index) and
    must return an AlgebraElement, a GroupCoalgebraElement, or a
    TensorElement; the returned shape replaces the chosen slot (the
    same way for every term, which is checked).
    """
    if not 0 <= slot < len(t.shape):
        raise ShapeError("slot index out of range")
    out_terms: dict[tuple, LaurentScalar] = {}
    out_shape = None
    for key, c in t.terms.items():
        img = f(key[slot])
        if isinstance(img, (AlgebraElement, GroupCoalgebraElement)):
            img = tensor_of([img])
        new_shape = t.shape[:slot] + img.shape + t.shape[slot + 1 :]
        if out_shape is None:
            out_shape = new_shape
        elif out_shape != new_shape:
            raise ShapeError("slot map is not shape-uniform")
        for ikey, ic in img.terms.items():
            nk = key[:slot] + ikey + key[slot + 1 :]
            s = out_terms.get(nk, LaurentScalar.zero()) + c * ic
            if s.is_zero():
                out_terms.pop(nk, None)
            else:
                out_terms[nk] = s
    if out_shape is None:
        # empty input: the best shape guess is to drop the slot
        out_shape = t.shape[:slot] + t.shape[slot + 1 :]
    return TensorElement(out_shape, out_terms)


# -- coactions ---------------------------------------------------------------


def right_coact(spec: CoactionSpec, x: AlgebraElement) -> TensorElement:
    """m -> m (x) u^deg per monomial, extended linearly."""
    if x.presentation is not spec.presentation:
        raise PresentationError("element does not belong to the coaction's algebra")
    shape = (alg_slot(spec.presentation), coalg_slot())
    return TensorElement(
        shape, {(m, spec.right_degree(m)): c for m, c in x.terms.items()}
    )


def left_coact(spec: CoactionSpec, x: AlgebraElement) -> TensorElement:
    """m -> u^deg (x) m per monomial, extended linearly."""
    if x.presentation is not spec.presentation:
        raise PresentationError("element does not belong to the coaction's algebra")
    shape = (coalg_slot(), alg_slot(spec.presentation))
    return TensorElement(
        shape, {(spec.left_degree(m), m): c for m, c in x.terms.items()}
    )


def check_bicomodule(spec: CoactionSpec, degree_bound: int = 3):
    """Both coactions commute and the unit is trivially covariant.

    Verifies (H (x) rho) o lrho = (lrho (x) C) o rho on all monomials
    up to the bound, and that the left coaction of 1 is u^0 (x) 1.
    Returns a list of CheckResult entries.
    """
    from .report import CheckResult

    p = spec.presentation
    results = []
    ok = True
    detail = ""
    for m in p.monomials_up_to(degree_bound):
        el = p.element({m: ONE})
        lhs = tensor_apply(left_coact(spec, el), 1, lambda mm: right_coact(spec, p.element({mm: ONE})))
        rhs = tensor_apply(right_coact(spec, el), 0, lambda mm: left_coact(spec, p.element({mm: ONE})))
        if lhs != rhs:
            ok = False
            detail = "coactions do not commute on %s" % p.render_monomial(m)
            break
    results.append(
        CheckResult("comodule", "bicomodule-commute", "bicomodule-commute",
                    "pass" if ok else "fail", detail)
    )
    unit = left_coact(spec, p.one())
    expected = TensorElement((coalg_slot(), alg_slot(p)), {(0, p.one_monomial()): ONE})
    ok = unit == expected
    results.append(
        CheckResult(
            "comodule", "unit-covariant", "unit-covariant",
            "pass" if ok else "fail",
            "" if ok else "left coaction of 1 is not u^0 (x) 1",
        )
    )
    return results


def render_tensor(t: TensorElement) -> str:
    """Deterministic text form: terms like ``c (x | y | u^n)``."""
    if not t.terms:
        return "0"

    def slot_str(slot, key):
        kind, pres = slot
        if kind == "alg":
            return pres.render_monomial(key)
        return "u^%d" % key if key else "u^0"

    def key_order(key):
        bits = []
        for slot, k in zip(t.shape, key):
            if slot[0] == "alg":
                bits.append(monomial_key(k))
            else:
                bits.append((k,))
        return tuple(bits)

    pieces = []
    for key in sorted(t.terms, key=key_order):
        c = t.terms[key]
        body = "(" + " | ".join(slot_str(s, k) for s, k in zip(t.shape, key)) + ")"
        neg = False
        if len(c.terms) == 1 and next(iter(c.terms.values())) < 0:
            neg = True
            c = -c
        if not c.is_one():
            cs = render_scalar(c)
            if len(c.terms) > 1:
                cs = "(%s)" % cs
            body = "%s %s" % (cs, body)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)
