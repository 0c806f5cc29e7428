"""Cotensor products of graded comodule algebras and entwining maps.

Given an algebra A with a right grading by the structure group and an
algebra P with a matching left grading, the cotensor product lives
inside the slot-wise tensor algebra A(x)P as the span of the balanced
monomials: right degree of the A-part equal to left degree of the
P-part.  Because both coactions are diagonal on monomials this is a
per-monomial predicate, and the cotensor is closed under products
whenever both factors are comodule algebras.

Entwining maps between the circle coalgebra and a graded algebra all
take the degree-shift form u^m (x) p -> p (x) u^{m+d(p)}; the class
below accepts an arbitrary shift function so that deliberately broken
maps can be run through the axiom checker.
"""

from __future__ import annotations

from typing import Callable

from .scalar import LaurentScalar, ONE
from .skewalg import (
    AlgebraElement,
    AlgebraPresentation,
    Monomial,
    PresentationError,
    monomial_key,
    tensor_presentation,
)
from .comodule import (
    CoactionSpec,
    GroupCoalgebraElement,
    ShapeError,
    TensorElement,
    alg_slot,
    coalg_slot,
    comultiply,
    counit,
    left_coact,
    right_coact,
    tensor_apply,
    tensor_of,
)
from .report import CheckResult


class CotensorAlgebra:
    """The balanced subalgebra of A(x)P for one shared circle grading.

    ``left_spec`` grades A on the right, ``right_spec`` grades P on the
    left (both by the same structure group); ``right_spec`` may also
    carry a second, right grading, which then induces the right
    coaction of the cotensor algebra through its P slot.
    """

    def __init__(self, left_spec: CoactionSpec, right_spec: CoactionSpec, name: str = ""):
        if not left_spec.has_right():
            raise PresentationError("left factor needs a right grading")
        if not right_spec.has_left():
            raise PresentationError("right factor needs a left grading")
        self.left_spec = left_spec
        self.right_spec = right_spec
        self.ambient = tensor_presentation(
            left_spec.presentation, right_spec.presentation, name=name
        )
        self.split_at = len(left_spec.presentation.generators)
        if right_spec.has_right():
            table = {g: 0 for g in left_spec.presentation.generators}
            table.update(
                {g: right_spec.right[g] for g in right_spec.presentation.generators}
            )
            self.induced_right = CoactionSpec(
                self.ambient,
                right=table,
                unit_right_degree=right_spec.unit_right_degree,
            )
        else:
            self.induced_right = None

    # -- monomial plumbing -------------------------------------------------

    def split(self, m: Monomial) -> tuple[Monomial, Monomial]:
        return m[: self.split_at], m[self.split_at :]

    def balance_defect(self, m: Monomial) -> int:
        """Right degree of the A-part minus left degree of the P-part."""
        ma, mp = self.split(m)
        return self.left_spec.right_degree(ma) - self.right_spec.left_degree(mp)

    def is_member_monomial(self, m: Monomial) -> bool:
        return self.balance_defect(m) == 0

    def membership(self, x: AlgebraElement) -> bool:
        """True iff every monomial of x is balanced."""
        if x.presentation is not self.ambient:
            raise PresentationError("element is not in the ambient tensor algebra")
        return all(self.is_member_monomial(m) for m in x.terms)

    def violations(self, x: AlgebraElement) -> list[Monomial]:
        if x.presentation is not self.ambient:
            raise PresentationError("element is not in the ambient tensor algebra")
        return [m for m in x.terms if not self.is_member_monomial(m)]

    # -- element builders ----------------------------------------------------

    def pair(self, a: AlgebraElement, p: AlgebraElement) -> AlgebraElement:
        """The element a(x)p of the ambient algebra."""
        if a.presentation is not self.left_spec.presentation:
            raise PresentationError("first factor from the wrong algebra")
        if p.presentation is not self.right_spec.presentation:
            raise PresentationError("second factor from the wrong algebra")
        raw = {}
        for ma, ca in a.terms.items():
            for mp, cp in p.terms.items():
                raw[ma + mp] = ca * cp
        return self.ambient.element(raw)

    def embed_left(self, a: AlgebraElement) -> AlgebraElement:
        return self.pair(a, self.right_spec.presentation.one())

    def embed_right(self, p: AlgebraElement) -> AlgebraElement:
        return self.pair(self.left_spec.presentation.one(), p)

    # -- enumeration -----------------------------------------------------------

    def generators_up_to(self, degree: int) -> list[AlgebraElement]:
        """Balanced monomials with each slot of total degree <= degree.

        Enumerated by bidegree, smallest first; spans the cotensor in
        that range since membership is monomial-wise.
        """
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        out = []
        left_monos = self.left_spec.presentation.monomials_up_to(degree)
        right_monos = self.right_spec.presentation.monomials_up_to(degree)
        for ma in left_monos:
            for mp in right_monos:
                m = ma + mp
                if self.is_member_monomial(m):
                    out.append(m)
        out.sort(key=monomial_key)
        return [self.ambient.element({m: ONE}) for m in out]

    def coinvariant_monomials(self, degree: int) -> list[Monomial]:
        """Balanced monomials of right degree zero, slot degrees <= degree."""
        if self.induced_right is None:
            raise PresentationError("no right grading on the second factor")
        monos = []
        for el in self.generators_up_to(degree):
            (m,) = el.terms
            if self.induced_right.right_degree(m) == 0:
                monos.append(m)
        return monos

    def entwining(self) -> "EntwiningMap":
        """The lifted entwining of the ambient algebra.

        Shifts by the induced right degree, which only sees the P slot.
        """
        if self.induced_right is None:
            raise PresentationError("no right grading on the second factor")
        return EntwiningMap(
            self.ambient, self.induced_right.right_degree, name="lifted"
        )


def coinvariants_basis(source, degree: int) -> list[AlgebraElement]:
    """Basis monomials of the right-degree-zero subspace up to a bound.

    ``source`` is either a CoactionSpec with a right grading (bound on
    total degree) or a CotensorAlgebra (bound applied per slot).
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if isinstance(source, CotensorAlgebra):
        return [
            source.ambient.element({m: ONE})
            for m in source.coinvariant_monomials(degree)
        ]
    if isinstance(source, CoactionSpec):
        p = source.presentation
        return [
            p.element({m: ONE})
            for m in p.monomials_up_to(degree)
            if source.right_degree(m) == 0
        ]
    raise TypeError("expected a CoactionSpec or CotensorAlgebra")


# -- entwining ----------------------------------------------------------------


class EntwiningMap:
    """u^m (x) p -> p (x) u^{m + shift(p)} on one presented algebra.

    ``shift_fn`` maps normal monomials to integers; the canonical
    entwining of a graded algebra uses its right degree.  The inverse
    defaults to the negated shift, matching the closed inverse formula
    for the canonical map; pass ``inverse_shift_fn`` to break it.
    ``left_degree_fn`` is the left grading used by the colinearity
    check, when one exists.
    """

    def __init__(
        self,
        presentation: AlgebraPresentation,
        shift_fn: Callable[[Monomial], int],
        inverse_shift_fn: Callable[[Monomial], int] | None = None,
        left_degree_fn: Callable[[Monomial], int] | None = None,
        name: str = "",
    ):
        self.presentation = presentation
        self.shift_fn = shift_fn
        self.inverse_shift_fn = inverse_shift_fn or (lambda m: -shift_fn(m))
        self.left_degree_fn = left_degree_fn
        self.name = name

    def __repr__(self) -> str:
        return "<entwining %s on %s>" % (self.name or "map", self.presentation.name)


def canonical_entwining(spec: CoactionSpec) -> EntwiningMap:
    """The entwining induced by a right grading: shift by right degree."""
    if not spec.has_right():
        raise PresentationError("canonical entwining needs a right grading")
    return EntwiningMap(
        spec.presentation,
        spec.right_degree,
        left_degree_fn=spec.left_degree if spec.has_left() else None,
        name="canonical",
    )


def entwine(emap: EntwiningMap, t: TensorElement) -> TensorElement:
    """Apply the map to a coalgebra-algebra tensor."""
    expected = (coalg_slot(), alg_slot(emap.presentation))
    if t.shape != expected:
        raise ShapeError("entwining expects a coalgebra (x) algebra tensor")
    out = {}
    for (idx, m), c in t.terms.items():
        key = (m, idx + emap.shift_fn(m))
        out[key] = out.get(key, LaurentScalar.zero()) + c
    return TensorElement((alg_slot(emap.presentation), coalg_slot()), out)


def entwine_inverse(emap: EntwiningMap, t: TensorElement) -> TensorElement:
    """Apply the inverse map to an algebra-coalgebra tensor."""
    expected = (alg_slot(emap.presentation), coalg_slot())
    if t.shape != expected:
        raise ShapeError("inverse entwining expects an algebra (x) coalgebra tensor")
    out = {}
    for (m, idx), c in t.terms.items():
        key = (idx + emap.inverse_shift_fn(m), m)
        out[key] = out.get(key, LaurentScalar.zero()) + c
    return TensorElement((coalg_slot(), alg_slot(emap.presentation)), out)


def entwine_at(emap: EntwiningMap, t: TensorElement, slot: int) -> TensorElement:
    """Entwine the adjacent pair (coalgebra at slot, algebra at slot+1)
    inside a longer tensor, leaving the other slots alone."""
    if not (
        0 <= slot < len(t.shape) - 1
        and t.shape[slot] == coalg_slot()
        and t.shape[slot + 1] == alg_slot(emap.presentation)
    ):
        raise ShapeError("no coalgebra/algebra pair at slot %d" % slot)
    shape = t.shape[:slot] + (alg_slot(emap.presentation), coalg_slot()) + t.shape[slot + 2 :]
    out = {}
    for key, c in t.terms.items():
        idx, m = key[slot], key[slot + 1]
        nk = key[:slot] + (m, idx + emap.shift_fn(m)) + key[slot + 2 :]
        out[nk] = out.get(nk, LaurentScalar.zero()) + c
    return TensorElement(shape, out)


def multiply_adjacent(t: TensorElement, slot: int) -> TensorElement:
    """Multiply two adjacent algebra slots of the same presentation."""
    if not (
        0 <= slot < len(t.shape) - 1
        and t.shape[slot][0] == "alg"
        and t.shape[slot] == t.shape[slot + 1]
    ):
        raise ShapeError("no matching algebra pair at slot %d" % slot)
    pres = t.shape[slot][1]
    shape = t.shape[:slot] + (alg_slot(pres),) + t.shape[slot + 2 :]
    out = TensorElement.zero(shape)
    for key, c in t.terms.items():
        f, prod = pres.mono_mul(key[slot], key[slot + 1])
        el = pres.element({prod: f})
        piece = {}
        for m, cc in el.terms.items():
            nk = key[:slot] + (m,) + key[slot + 2 :]
            piece[nk] = c * cc
        out = out + TensorElement(shape, piece)
    return out


# -- axiom checkers ------------------------------------------------------------


_GROUPLIKE_WINDOW = (-2, -1, 0, 1, 2)


def _monomial_sample(p: AlgebraPresentation, degree_bound: int, monomial_filter):
    monos = p.monomials_up_to(degree_bound)
    if monomial_filter is not None:
        monos = [m for m in monos if monomial_filter(m)]
    return monos


def _monomial_pairs(p: AlgebraPresentation, degree_bound: int, monomial_filter=None):
    monos = _monomial_sample(p, degree_bound, monomial_filter)
    for x in monos:
        dx = sum(x)
        for y in monos:
            if dx + sum(y) <= degree_bound:
                yield x, y


def check_entwining_axioms(
    emap: EntwiningMap, degree_bound: int, monomial_filter=None
) -> list[CheckResult]:
    """Verify the four entwining axioms, invertibility, and (when a left
    grading is attached) colinearity over the left coaction.

    Product-type axioms run over monomial pairs of combined degree up
    to the bound and a small window of grouplike indices.  The optional
    ``monomial_filter`` restricts the sample to a subalgebra's monomial
    basis (for the lifted map, the balanced monomials).
    """
    p = emap.presentation
    suite = "entwining"
    results = []

    def record(check_id, ok, detail=""):
        results.append(
            CheckResult(suite, check_id, check_id, "pass" if ok else "fail", detail)
        )

    # multiplicativity: entwine after multiplying equals entwining past
    # each factor in turn
    ok, detail = True, ""
    for x, y in _monomial_pairs(p, degree_bound, monomial_filter):
        xel = p.element({x: ONE})
        yel = p.element({y: ONE})
        prod = p.mul(xel, yel)
        for n in _GROUPLIKE_WINDOW:
            u = GroupCoalgebraElement.grouplike(n)
            lhs = entwine(emap, tensor_of([u, prod]))
            step = entwine(emap, tensor_of([u, xel]))  # x (x) u^{n+s(x)}
            rhs = tensor_apply(
                step, 1, lambda k: entwine(emap, tensor_of([GroupCoalgebraElement.grouplike(k), yel]))
            )
            rhs = multiply_adjacent(rhs, 0)
            if lhs != rhs:
                ok = False
                detail = "fails on %s, %s at u^%d" % (
                    p.render_monomial(x),
                    p.render_monomial(y),
                    n,
                )
                break
        if not ok:
            break
    record("multiplicative", ok, detail)

    # unit: entwining past 1 only moves the grouplike across
    ok, detail = True, ""
    for n in _GROUPLIKE_WINDOW:
        u = GroupCoalgebraElement.grouplike(n)
        img = entwine(emap, tensor_of([u, p.one()]))
        if img != tensor_of([p.one(), u]):
            ok = False
            detail = "unit fails at u^%d" % n
            break
    record("unit", ok, detail)

    # comultiplicativity: comultiply before or after entwining
    ok, detail = True, ""
    for m in _monomial_sample(p, degree_bound, monomial_filter):
        el = p.element({m: ONE})
        for n in _GROUPLIKE_WINDOW:
            u = GroupCoalgebraElement.grouplike(n)
            lhs = tensor_apply(
                entwine(emap, tensor_of([u, el])),
                1,
                lambda k: comultiply(GroupCoalgebraElement.grouplike(k)),
            )
            both = tensor_of([u, u, el])
            both = entwine_at(emap, both, 1)
            both = entwine_at(emap, both, 0)
            if lhs != both:
                ok = False
                detail = "fails on %s at u^%d" % (p.render_monomial(m), n)
                break
        if not ok:
            break
    record("comultiplicative", ok, detail)

    # counit: collapsing the coalgebra leg recovers the algebra element
    ok, detail = True, ""
    for m in _monomial_sample(p, degree_bound, monomial_filter):
        el = p.element({m: ONE})
        for n in _GROUPLIKE_WINDOW:
            u = GroupCoalgebraElement.grouplike(n)
            img = entwine(emap, tensor_of([u, el]))
            # the slot map returns an empty-shape tensor so the coalgebra
            # leg is dropped instead of replaced
            collapsed = tensor_apply(
                img,
                1,
                lambda k: TensorElement((), {(): counit(GroupCoalgebraElement.grouplike(k))}),
            )
            if collapsed != tensor_of([el]):
                ok = False
                detail = "fails on %s at u^%d" % (p.render_monomial(m), n)
                break
        if not ok:
            break
    record("counit", ok, detail)

    # round trips
    ok, detail = True, ""
    for m in _monomial_sample(p, degree_bound, monomial_filter):
        el = p.element({m: ONE})
        for n in _GROUPLIKE_WINDOW:
            u = GroupCoalgebraElement.grouplike(n)
            cp = tensor_of([u, el])
            if entwine_inverse(emap, entwine(emap, cp)) != cp:
                ok = False
                detail = "inverse round trip fails on %s" % p.render_monomial(m)
                break
            pc = tensor_of([el, u])
            if entwine(emap, entwine_inverse(emap, pc)) != pc:
                ok = False
                detail = "forward round trip fails on %s" % p.render_monomial(m)
                break
        if not ok:
            break
    record("invertible", ok, detail)

    # colinearity over the left coaction, when there is one: entwining
    # first or coacting first give the same picture in H (x) P (x) C
    if emap.left_degree_fn is not None:
        ok, detail = True, ""
        for m in _monomial_sample(p, degree_bound, monomial_filter):
            el = p.element({m: ONE})
            for n in _GROUPLIKE_WINDOW:
                u = GroupCoalgebraElement.grouplike(n)
                coact_first = TensorElement(
                    (coalg_slot(), coalg_slot(), alg_slot(p)),
                    {(emap.left_degree_fn(mm), n, mm): c for mm, c in el.terms.items()},
                )
                coact_first = entwine_at(emap, coact_first, 1)
                entwine_first = tensor_apply(
                    entwine(emap, tensor_of([u, el])),
                    0,
                    lambda mm: TensorElement(
                        (coalg_slot(), alg_slot(p)),
                        {(emap.left_degree_fn(mm), mm): ONE},
                    ),
                )
                if coact_first != entwine_first:
                    ok = False
                    detail = "fails on %s at u^%d" % (p.render_monomial(m), n)
                    break
            if not ok:
                break
        record("h-colinear", ok, detail)

    return results


def check_entwined_module(
    emap: EntwiningMap, spec: CoactionSpec, degree_bound: int, monomial_filter=None
) -> list[CheckResult]:
    """The right coaction is an entwined module structure over the map.

    Verifies the product law rho(xy) = x_(0) psi(x_(1) (x) y) on
    monomial pairs and the base-point condition rho(p) = psi(u^0 (x) p).
    """
    if spec.presentation is not emap.presentation:
        raise PresentationError("coaction and entwining live on different algebras")
    p = spec.presentation
    results = []

    ok, detail = True, ""
    for x, y in _monomial_pairs(p, degree_bound, monomial_filter):
        xel = p.element({x: ONE})
        yel = p.element({y: ONE})
        lhs = right_coact(spec, p.mul(xel, yel))
        rhs = tensor_apply(
            right_coact(spec, xel),
            1,
            lambda k: entwine(emap, tensor_of([GroupCoalgebraElement.grouplike(k), yel])),
        )
        rhs = multiply_adjacent(rhs, 0)
        if lhs != rhs:
            ok = False
            detail = "fails on %s, %s" % (p.render_monomial(x), p.render_monomial(y))
            break
    results.append(
        CheckResult("entwining", "module-law", "module-law", "pass" if ok else "fail", detail)
    )

    ok, detail = True, ""
    for m in _monomial_sample(p, degree_bound, monomial_filter):
        el = p.element({m: ONE})
        base = entwine(emap, tensor_of([GroupCoalgebraElement.grouplike(0), el]))
        if base != right_coact(spec, el):
            ok = False
            detail = "fails on %s" % p.render_monomial(m)
            break
    results.append(
        CheckResult("entwining", "copointed", "copointed", "pass" if ok else "fail", detail)
    )
    return results
