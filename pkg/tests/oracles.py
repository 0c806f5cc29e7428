"""Hand-rolled reference implementations used to cross-check the engine.

Everything here is deliberately independent of the qpbundle internals.
Words are tuples of generator names, scalars are bare exponent-to-
coefficient maps, and normalization is leftmost single-step rewriting
run to a fixpoint.  The engine instead q-sorts exponent vectors in one
pass and then applies oriented rules, so agreement between the two is
a meaningful consistency check rather than a tautology.

The only engine types these helpers touch are the public term maps, in
the converters at the bottom, which exist so tests can compare results.
"""

from __future__ import annotations

import math

# scalars: {(L_exponent, M_exponent): integer coefficient}, no zeros


def s_clean(s):
    return {e: c for e, c in s.items() if c}


def s_one():
    return {(0, 0): 1}


def s_int(k):
    return {(0, 0): k} if k else {}


def s_add(x, y):
    out = dict(x)
    for e, c in y.items():
        out[e] = out.get(e, 0) + c
    return s_clean(out)


def s_mul(x, y):
    out = {}
    for (i1, j1), c1 in x.items():
        for (i2, j2), c2 in y.items():
            e = (i1 + i2, j1 + j2)
            out[e] = out.get(e, 0) + c1 * c2
    return s_clean(out)


def s_canon(s):
    """Hashable canonical image of a scalar map."""
    return tuple(sorted(s_clean(s).items()))


class WordSphere:
    """String-rewriting model of one quantum-sphere presentation.

    ``names`` lists the four generators in engine order: a generator,
    its star, a second generator, its star.  ``symbol`` picks which
    slot of the scalar exponent pair the deformation parameter lives
    in (0 for the first algebra's, 1 for the second's).
    """

    def __init__(self, names=("a", "a'", "b", "b'"), symbol=0):
        self.names = tuple(names)
        self.pos = {g: i for i, g in enumerate(self.names)}
        self.symbol = symbol
        # q-factors by generator position, as the exponent of the
        # deformation parameter picked up when the later generator
        # moves left past the earlier one
        exps = {
            (1, 0): 0,
            (2, 0): -1,
            (2, 1): 1,
            (3, 0): 1,
            (3, 1): -1,
            (3, 2): 0,
        }
        self.q_exp = exps

    def _param(self, e):
        if e == 0:
            return s_one()
        key = (e, 0) if self.symbol == 0 else (0, e)
        return {key: 1}

    def _first_step(self, word):
        """Leftmost applicable rewrite, or None if the word is normal.

        A step is a list of (scalar factor, replacement word) pairs.
        """
        n = self.names
        for i in range(len(word) - 1):
            g, h = word[i], word[i + 1]
            gi, hi = self.pos[g], self.pos[h]
            if (gi, hi) == (2, 3):
                # the sphere relation: h h* -> 1 - g g*
                head, tail = word[:i], word[i + 2 :]
                return [
                    (s_one(), head + tail),
                    (s_int(-1), head + (n[0], n[1]) + tail),
                ]
            if gi > hi:
                swapped = word[:i] + (h, g) + word[i + 2 :]
                return [(self._param(self.q_exp[(gi, hi)]), swapped)]
        return None

    def nf(self, terms):
        """Fixpoint of single-step rewriting on a word-to-scalar map."""
        done = {}
        work = [(w, dict(c)) for w, c in terms.items()]
        while work:
            word, coeff = work.pop()
            step = self._first_step(word)
            if step is None:
                acc = s_add(done.get(word, {}), coeff)
                if acc:
                    done[word] = acc
                elif word in done:
                    del done[word]
            else:
                for factor, new_word in step:
                    work.append((new_word, s_mul(coeff, factor)))
        return done

    def nf_word(self, word, coeff=None):
        return self.nf({tuple(word): coeff or s_one()})

    def star_word(self, word):
        """Reverse the word and swap each letter with its star partner."""
        flip = {0: 1, 1: 0, 2: 3, 3: 2}
        return tuple(self.names[flip[self.pos[g]]] for g in reversed(word))

    def vector(self, word):
        return tuple(word.count(g) for g in self.names)

    def element(self, terms):
        """Canonical exponent-vector form of a word-to-scalar map."""
        out = {}
        for word, coeff in self.nf(terms).items():
            v = self.vector(word)
            acc = s_add(out.get(v, {}), coeff)
            if acc:
                out[v] = acc
            elif v in out:
                del out[v]
        return {v: s_canon(c) for v, c in out.items()}

    # -- connection form ------------------------------------------------

    def ell(self, n):
        """Reference value of the sphere connection at index n.

        Computed by the product recursion from the two explicit seeds,
        never from the closed binomial form the engine implements:
        each step multiplies first legs left-to-right and second legs
        right-to-left.
        """
        g, gs, h, hs = self.names
        if n == 0:
            terms = {((), ()): s_one()}
        else:
            seed = (
                {((gs,), (g,)): s_one(), ((hs,), (h,)): s_one()}
                if n > 0
                else {((g,), (gs,)): s_one(), ((h,), (hs,)): s_one()}
            )
            terms = seed
            for _ in range(abs(n) - 1):
                terms = self._splice(terms, seed)
        return self._tensor_canon(terms)

    def _splice(self, old, new):
        out = {}
        for (x, y), c1 in old.items():
            for (s, t), c2 in new.items():
                key = (x + s, t + y)
                acc = s_add(out.get(key, {}), s_mul(c1, c2))
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return out

    def _tensor_canon(self, terms):
        out = {}
        for (w1, w2), c in terms.items():
            for u1, c1 in self.nf_word(w1).items():
                for u2, c2 in self.nf_word(w2).items():
                    key = (self.vector(u1), self.vector(u2))
                    acc = s_add(out.get(key, {}), s_mul(c, s_mul(c1, c2)))
                    if acc:
                        out[key] = acc
                    elif key in out:
                        del out[key]
        return {k: s_canon(c) for k, c in out.items()}

    def ell_closed(self, n):
        """The binomial closed form, written out independently.

        Pins the explicit sum-over-binomials shape against the seed
        recursion above; the engine is not involved at all.
        """
        g, gs, h, hs = self.names
        out = {}
        k = abs(n)
        for m in range(k + 1):
            c = s_int(math.comb(k, m))
            if n >= 0:
                left = (hs,) * m + (gs,) * (k - m)
                right = (g,) * (k - m) + (h,) * m
            else:
                left = (h,) * m + (g,) * (k - m)
                right = (gs,) * (k - m) + (hs,) * m
            key = (left, right)
            out[key] = s_add(out.get(key, {}), c)
        return self._tensor_canon(out)


# -- converters from engine values to the plain forms above ------------------


def plain_scalar(sc):
    return tuple(sorted(sc.terms.items()))


def plain_element(el):
    return {m: plain_scalar(c) for m, c in el.terms.items()}


def plain_tensor2(t):
    """Two-algebra-slot tensor as a plain pair-keyed map."""
    if len(t.shape) != 2:
        raise ValueError("expected a two-slot tensor")
    return {k: plain_scalar(c) for k, c in t.terms.items()}
