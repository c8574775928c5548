"""Natural modules, their restricted duals, mixed tensor spaces and q-wedges.

A mixed tensor space is described by a rank and a 0/1 sequence b: factor k is
the natural module V when b_k = 0 and its restricted dual W when b_k = 1.
Standard monomials are indexed by tuples of doubled module indices.  Actions
of the Chevalley generators go through the iterated coproduct; coideal
generators act through the embedding of the coideal subalgebra.

Single-factor actions (doubled indices):

* on V:  E_i v = [a = i+1/2] v_{a-1},  F_i v = [a = i-1/2] v_{a+1},
  K_i v = q^(alpha_i, eps_a) v;
* on W:  E_i w = [a = i-1/2] w_{a+1},  F_i w = [a = i+1/2] w_{a-1},
  K_i w = q^-(alpha_i, eps_a) w.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

from .falg import FElement, Word
from .qlaurent import LaurentPoly, RationalFn
from .rootdata import ODD, RankData, Weight

Scalar = Union[LaurentPoly, RationalFn]
Idx = tuple[int, ...]

IOTA = "iota"
JOTA = "jota"


class MixedSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    """A mixed tensor space descriptor: rank data plus the 0/1 factor sequence."""

    rank: RankData
    b: tuple[int, ...]

    @staticmethod
    def tensor_v(rank: RankData, m: int) -> "Space":
        return Space(rank, (0,) * m)

    @property
    def factors(self) -> int:
        return len(self.b)

    def is_dual(self, k: int) -> bool:
        return self.b[k] == 1

    def basis_indices(self) -> list[Idx]:
        mods = self.rank.module_indices()
        return [tuple(t) for t in itertools.product(mods, repeat=self.factors)]

    def weight_of(self, f: Idx) -> Weight:
        w = Weight()
        for k, a2 in enumerate(f):
            w = w + Weight({a2: -1 if self.b[k] else 1})
        return w

    def left(self, split: int) -> "Space":
        return Space(self.rank, self.b[:split])

    def right(self, split: int) -> "Space":
        return Space(self.rank, self.b[split:])

    def validate_index(self, f: Idx):
        if len(f) != self.factors:
            raise MixedSpaceError(f"index length {len(f)} != {self.factors}")
        for a2 in f:
            if not self.rank.contains_module_index(a2):
                raise MixedSpaceError(f"module index {a2}/2 outside rank")


class TensorVector:
    """A sparse vector over the standard monomial basis of one mixed space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: Mapping[Idx, Scalar] | Iterable[tuple[Idx, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Idx, Scalar] = {}
        for f, c in items:
            if c:
                f = tuple(f)
                cur = d.get(f)
                s = c if cur is None else cur + c
                if s:
                    d[f] = s
                else:
                    d.pop(f, None)
        self.space = space
        self.terms = d

    @staticmethod
    def monomial(space: Space, f: Idx, coeff: Scalar | int = 1) -> "TensorVector":
        space.validate_index(tuple(f))
        return TensorVector(space, {tuple(f): LaurentPoly.coerce(coeff) if isinstance(coeff, int) else coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        if self.space != other.space:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(RationalFn.coerce(c) == RationalFn.coerce(other.terms[f]) for f, c in self.terms.items())

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if self.space != other.space:
            raise MixedSpaceError("adding vectors from different spaces")
        d = dict(self.terms)
        for f, c in other.terms.items():
            cur = d.get(f)
            s = c if cur is None else cur + c
            if s:
                d[f] = s
            else:
                d.pop(f, None)
        return TensorVector(self.space, d)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorVector":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        if not c:
            return TensorVector(self.space)
        return TensorVector(self.space, {f: v * c for f, v in self.terms.items()})

    def map_coeff(self, fn) -> "TensorVector":
        return TensorVector(self.space, {f: fn(c) for f, c in self.terms.items()})

    def bar_coeffs(self) -> "TensorVector":
        return self.map_coeff(lambda c: c.bar())

    def coeff(self, f: Idx):
        return self.terms.get(tuple(f), LaurentPoly.zero())

    def as_laurent(self) -> "TensorVector":
        """Force all coefficients into Z[q,q^-1] (raises on failure)."""
        return self.map_coeff(lambda c: c.as_laurent() if isinstance(c, RationalFn) else c)

    def to_json(self) -> dict:
        terms = []
        for f in sorted(self.terms):
            c = RationalFn.coerce(self.terms[f])
            poly = c.num.to_json() if c.den.is_one() else {"num": c.num.to_json(), "den": c.den.to_json()}
            terms.append({"f": list(f), "poly": poly})
        return {"b": "".join(map(str, self.space.b)), "rank": self.space.rank.r,
                "parity": self.space.rank.parity, "terms": terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorVector(0)"
        return " + ".join(f"({c!r})*M{list(f)}" for f, c in sorted(self.terms.items()))


# -- single-factor actions ---------------------------------------------------


def _k_exponent(i2: int, a2: int, dual: bool) -> int:
    e = (1 if a2 == i2 - 1 else 0) - (1 if a2 == i2 + 1 else 0)
    return -e if dual else e


def _act_e_factor(i2: int, a2: int, dual: bool) -> int | None:
    if dual:
        return a2 + 2 if a2 == i2 - 1 else None
    return a2 - 2 if a2 == i2 + 1 else None


def _act_f_factor(i2: int, a2: int, dual: bool) -> int | None:
    if dual:
        return a2 - 2 if a2 == i2 + 1 else None
    return a2 + 2 if a2 == i2 - 1 else None


# -- iterated-coproduct actions ----------------------------------------------


def act_E(i2: int, v: TensorVector) -> TensorVector:
    sp = v.space
    if not sp.rank.contains_root(i2):
        raise IndexError(f"root index {i2}/2 outside rank")
    out: dict[Idx, Scalar] = {}
    for f, c in v.terms.items():
        kexp = [_k_exponent(i2, a2, sp.is_dual(k)) for k, a2 in enumerate(f)]
        tail = 0  # running sum of K-exponents strictly right of p
        for p in range(sp.factors - 1, -1, -1):
            new_a2 = _act_e_factor(i2, f[p], sp.is_dual(p))
            if new_a2 is not None and sp.rank.contains_module_index(new_a2):
                g = f[:p] + (new_a2,) + f[p + 1:]
                coeff = c * LaurentPoly.q_power(-tail)
                cur = out.get(g)
                s = coeff if cur is None else cur + coeff
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
            tail += kexp[p]
    return TensorVector(sp, out)


def act_F(i2: int, v: TensorVector) -> TensorVector:
    sp = v.space
    if not sp.rank.contains_root(i2):
        raise IndexError(f"root index {i2}/2 outside rank")
    out: dict[Idx, Scalar] = {}
    for f, c in v.terms.items():
        head = 0  # running sum of K-exponents strictly left of p
        for p in range(sp.factors):
            new_a2 = _act_f_factor(i2, f[p], sp.is_dual(p))
            if new_a2 is not None and sp.rank.contains_module_index(new_a2):
                g = f[:p] + (new_a2,) + f[p + 1:]
                coeff = c * LaurentPoly.q_power(head)
                cur = out.get(g)
                s = coeff if cur is None else cur + coeff
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
            head += _k_exponent(i2, f[p], sp.is_dual(p))
    return TensorVector(sp, out)


def act_K(i2: int, v: TensorVector, sign: int = 1) -> TensorVector:
    sp = v.space
    if not sp.rank.contains_root(i2):
        raise IndexError(f"root index {i2}/2 outside rank")
    out: dict[Idx, Scalar] = {}
    for f, c in v.terms.items():
        e = sum(_k_exponent(i2, a2, sp.is_dual(k)) for k, a2 in enumerate(f))
        out[f] = c * LaurentPoly.q_power(sign * e)
    return TensorVector(sp, out)


def act_fword(word: Word, v: TensorVector) -> TensorVector:
    """Apply a product of F-letters (leftmost letter acts last)."""
    for i2 in reversed(word):
        v = act_F(i2, v)
        if v.is_zero():
            return v
    return v


def act_eword(word: Word, v: TensorVector) -> TensorVector:
    for i2 in reversed(word):
        v = act_E(i2, v)
        if v.is_zero():
            return v
    return v


def act_felement(x: FElement, v: TensorVector) -> TensorVector:
    acc = TensorVector(v.space)
    for w, c in x.terms.items():
        t = act_fword(w, v)
        if not t.is_zero():
            acc = acc + t.scale(c)
    return acc


def act_eelement(x: FElement, v: TensorVector) -> TensorVector:
    """Apply an element whose words are read in the raising generators."""
    acc = TensorVector(v.space)
    for w, c in x.terms.items():
        t = act_eword(w, v)
        if not t.is_zero():
            acc = acc + t.scale(c)
    return acc


# -- coideal generators -------------------------------------------------------

CoidealGen = tuple
CoidealWord = tuple[CoidealGen, ...]


def coideal_generators(pair: str, rank: RankData) -> list[CoidealGen]:
    """All generators of the coideal algebra for this pair kind and rank."""
    gens: list[CoidealGen] = []
    pos = rank.positive_root_indices()
    if pair == IOTA:
        if rank.parity != ODD:
            raise ValueError("the iota pair needs odd parity")
        gens.append(("t",))
    elif pair == JOTA:
        if rank.parity == ODD:
            raise ValueError("the jota pair needs even parity")
    else:
        raise ValueError(f"unknown pair kind {pair!r}")
    for i2 in pos:
        gens.append(("e", i2))
        gens.append(("f", i2))
        gens.append(("k", i2, 1))
        gens.append(("k", i2, -1))
    return gens


def act_coideal(pair: str, gen: CoidealGen, v: TensorVector) -> TensorVector:
    """Action of one coideal generator through the embedding into the big algebra."""
    kind = gen[0]
    if kind == "t":
        if pair != IOTA:
            raise ValueError("generator t exists only for the iota pair")
        # E_0 + q F_0 K_0^-1 + K_0^-1
        out = act_E(0, v)
        out = out + act_F(0, act_K(0, v, -1)).scale(LaurentPoly.q_power(1))
        out = out + act_K(0, v, -1)
        return out
    if kind == "e":
        i2 = gen[1]
        #  E_i + K_i^-1 F_{-i}
        return act_E(i2, v) + act_K(i2, act_F(-i2, v), -1)
    if kind == "f":
        i2 = gen[1]
        #  F_i K_{-i}^-1 + E_{-i}
        return act_F(i2, act_K(-i2, v, -1)) + act_E(-i2, v)
    if kind == "k":
        i2, e = gen[1], gen[2]
        #  (K_i K_{-i}^-1)^e
        return act_K(-i2, act_K(i2, v, e), -e)
    raise ValueError(f"unknown coideal generator {gen!r}")


def act_coideal_word(pair: str, word: CoidealWord, v: TensorVector) -> TensorVector:
    for gen in reversed(word):
        v = act_coideal(pair, gen, v)
        if v.is_zero():
            return v
    return v


def coideal_word_bar(word: CoidealWord) -> CoidealWord:
    """The bar involution on generator words: fixes e, f, t; inverts k."""
    return tuple(("k", g[1], -g[2]) if g[0] == "k" else g for g in word)


def coideal_word_counit(word: CoidealWord):
    """epsilon on a generator word: e, f map to 0; t and k to 1."""
    for g in word:
        if g[0] in ("e", "f"):
            return LaurentPoly.zero()
    return LaurentPoly.one()


# -- type-A Hecke action used by the q-wedge construction ---------------------


def act_hecke_typeA(v: TensorVector, a: int) -> TensorVector:
    """Right action of the type-A generator H_a (1-based position) on factor pair (a, a+1).

    Both factors must be of the same kind.  On dual pairs the comparison is
    reversed, which is what commuting with the big-algebra action forces.
    """
    sp = v.space
    if not 1 <= a <= sp.factors - 1:
        raise IndexError(f"H_{a} out of range")
    if sp.b[a - 1] != sp.b[a]:
        raise MixedSpaceError("type-A Hecke generator across mixed factors")
    dual = sp.is_dual(a - 1)
    qinv = LaurentPoly.q_power(-1)
    qq = LaurentPoly({-1: 1, 1: -1})
    out = TensorVector(sp)
    for f, c in v.terms.items():
        x, y = f[a - 1], f[a]
        swapped = f[:a - 1] + (y, x) + f[a + 1:]
        if x == y:
            out = out + TensorVector(sp, {f: c * qinv})
        else:
            ascending = x < y if not dual else x > y
            if ascending:
                out = out + TensorVector(sp, {swapped: c})
            else:
                out = out + TensorVector(sp, {swapped: c, f: c * qq})
    return out


def skew_symmetrizer(v: TensorVector) -> TensorVector:
    """Right action of sum over S_k of (-q)^(l(w)-l(w0)) H_w."""
    k = v.space.factors
    out = TensorVector(v.space)
    w0len = k * (k - 1) // 2
    for perm_word, length in _permutation_words(k):
        t = v
        for a in perm_word:
            t = act_hecke_typeA(t, a)
        out = out + t.scale(_neg_q_power(length - w0len))
    return out


def _neg_q_power(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e, 1 if e % 2 == 0 else -1)


def _permutation_words(k: int) -> list[tuple[tuple[int, ...], int]]:
    """One reduced word per element of S_k, with its length."""
    out = []
    for perm in itertools.permutations(range(k)):
        word = []
        arr = list(perm)
        # sort arr with adjacent transpositions, recording them (gives a reduced word)
        changed = True
        while changed:
            changed = False
            for a in range(k - 1):
                if arr[a] > arr[a + 1]:
                    arr[a], arr[a + 1] = arr[a + 1], arr[a]
                    word.append(a + 1)
                    changed = True
        # word sorts perm to identity; reversed word builds perm from identity
        out.append((tuple(reversed(word)), len(word)))
    return out


class NotInWedgeImage(ValueError):
    pass


def wedge_embed(space: Space, f: Idx) -> TensorVector:
    """Embed a wedge index into the tensor power through the skew-symmetrizer.

    ``f`` must be strictly decreasing for V-factors and strictly increasing
    for W-factors; the embedded vector is M_{f.w0} L_{w0}.
    """
    f = tuple(f)
    _check_wedge_index(space, f)
    rev = tuple(reversed(f))
    return skew_symmetrizer(TensorVector.monomial(space, rev))


def _check_wedge_index(space: Space, f: Idx):
    if any(space.b[0] != bi for bi in space.b):
        raise MixedSpaceError("wedge factors must be all-V or all-W")
    dual = space.is_dual(0)
    for x, y in zip(f, f[1:]):
        ok = x > y if not dual else x < y
        if not ok:
            raise NotInWedgeImage(f"index {f} is not strictly {'increasing' if dual else 'decreasing'}")


def wedge_project(v: TensorVector) -> dict[Idx, Scalar]:
    """Expand a vector lying in the embedded wedge in the wedge basis.

    Raises NotInWedgeImage if the vector is not in the image of the
    skew-symmetrizer.
    """
    sp = v.space
    dual = sp.is_dual(0) if sp.factors else False
    remaining = v
    out: dict[Idx, Scalar] = {}
    while not remaining.is_zero():
        # pick the sorted (wedge-shaped) index with a nonzero coefficient
        target = None
        for f in remaining.terms:
            srt = tuple(sorted(f, reverse=not dual))
            if srt == f and len(set(f)) == len(f):
                target = f
                break
        if target is None:
            raise NotInWedgeImage("vector outside the embedded wedge")
        c = remaining.terms[target]
        out[target] = c
        remaining = remaining - wedge_embed(sp, target).scale(c)
    return out
