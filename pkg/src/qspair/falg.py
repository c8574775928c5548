"""The algebra on the negative Chevalley generators and its bilinear form.

Elements are linear combinations of words in the generators F_i (letters are
doubled root indices).  The module provides the twisted derivations peeling
letters from either side, the symmetric bilinear form whose radical is the
Serre ideal, quantum Serre relators, and weight-graded bases selected from
Kostant partitions, with exact Gram data for expanding arbitrary elements
modulo the radical.

Pairings of two words of height h always lie in (q^-1 - q)^-h Z[q,q^-1]; the
integer Laurent part is what gets computed and cached ("normalized pairing").
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .linalg import SingularMatrixError, lu_solve_many
from .qlaurent import LaurentPoly, RationalFn, qq_inv
from .rootdata import RankData, Weight, simple_root, weight_from_root_coords

Word = tuple[int, ...]
Scalar = Union[LaurentPoly, RationalFn, int, Fraction]


def cartan(i2: int, j2: int) -> int:
    """(alpha_i, alpha_j) for doubled indices: 2, -1 or 0."""
    d = abs(i2 - j2)
    if d == 0:
        return 2
    if d == 2:
        return -1
    return 0


def word_weight(w: Word) -> Weight:
    out = Weight()
    for i2 in w:
        out = out + simple_root(i2)
    return out


def word_root_coords(w: Word) -> dict[int, int]:
    d: dict[int, int] = {}
    for i2 in w:
        d[i2] = d.get(i2, 0) + 1
    return d


class FElement:
    """A finite linear combination of words, with Laurent or rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Word, Scalar] = {}
        for w, c in items:
            w = tuple(w)
            c = _coerce_scalar(c)
            if _nonzero(c):
                cur = d.get(w)
                s = c if cur is None else cur + c
                if _nonzero(s):
                    d[w] = s
                else:
                    d.pop(w, None)
        self.terms = d

    @staticmethod
    def zero() -> "FElement":
        return FElement()

    @staticmethod
    def one() -> "FElement":
        return FElement({(): LaurentPoly.one()})

    @staticmethod
    def generator(i2: int) -> "FElement":
        return FElement({(i2,): LaurentPoly.one()})

    @staticmethod
    def from_word(w: Word, coeff: Scalar = 1) -> "FElement":
        return FElement({tuple(w): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, FElement) and self.terms == other.terms

    def __add__(self, other: "FElement") -> "FElement":
        d = dict(self.terms)
        for w, c in other.terms.items():
            cur = d.get(w)
            s = c if cur is None else cur + c
            if _nonzero(s):
                d[w] = s
            else:
                d.pop(w, None)
        out = FElement.__new__(FElement)
        out.terms = d
        return out

    def __neg__(self) -> "FElement":
        out = FElement.__new__(FElement)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "FElement") -> "FElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "FElement":
        c = _coerce_scalar(c)
        if not _nonzero(c):
            return FElement()
        out = FElement.__new__(FElement)
        out.terms = {w: v * c for w, v in self.terms.items()}
        return out

    def __mul__(self, other: "FElement") -> "FElement":
        d: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                cur = d.get(w)
                s = c if cur is None else cur + c
                if _nonzero(s):
                    d[w] = s
                else:
                    d.pop(w, None)
        out = FElement.__new__(FElement)
        out.terms = d
        return out

    def weight(self) -> Weight | None:
        """The common weight of all words, or None for 0 / inhomogeneous input."""
        wt = None
        for w in self.terms:
            x = word_weight(w)
            if wt is None:
                wt = x
            elif wt != x:
                return None
        return wt

    def height(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def map_coeff(self, fn) -> "FElement":
        return FElement({w: fn(c) for w, c in self.terms.items()})

    def bar_coeffs(self) -> "FElement":
        """Bar the coefficients; words (products of generators) are bar-fixed."""
        return self.map_coeff(lambda c: c.bar() if isinstance(c, (LaurentPoly, RationalFn)) else c)

    def to_json(self) -> list[dict]:
        out = []
        for w in sorted(self.terms):
            c = self.terms[w]
            c = RationalFn.coerce(c)
            entry = {"word": list(w), "poly": c.num.to_json()} if c.den.is_one() else {
                "word": list(w), "poly": {"num": c.num.to_json(), "den": c.den.to_json()}}
            out.append(entry)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "FElement(0)"
        bits = [f"({c!r})*F{list(w)}" for w, c in sorted(self.terms.items())]
        return " + ".join(bits)


def _coerce_scalar(c: Scalar):
    if isinstance(c, (LaurentPoly, RationalFn)):
        return c
    return LaurentPoly.const(c)


def _nonzero(c) -> bool:
    return bool(c)


# -- twisted derivations ----------------------------------------------------


def r_map_word(i2: int, w: Word) -> list[tuple[Word, int]]:
    """r_i on a word: [(word minus one occurrence, exponent of q)], suffix-twisted."""
    out = []
    for p, letter in enumerate(w):
        if letter == i2:
            e = sum(cartan(i2, w[k]) for k in range(p + 1, len(w)))
            out.append((w[:p] + w[p + 1:], e))
    return out


def l_map_word(i2: int, w: Word) -> list[tuple[Word, int]]:
    """The left-sided derivation on a word, prefix-twisted."""
    out = []
    for p, letter in enumerate(w):
        if letter == i2:
            e = sum(cartan(i2, w[k]) for k in range(p))
            out.append((w[:p] + w[p + 1:], e))
    return out


def r_map(i2: int, x: FElement) -> FElement:
    """r_i extended linearly to elements (kills constants, r_i(F_j) = delta_ij)."""
    acc = FElement()
    for w, c in x.terms.items():
        for sub, e in r_map_word(i2, w):
            acc = acc + FElement({sub: c * LaurentPoly.q_power(e)})
    return acc


def l_map(i2: int, x: FElement) -> FElement:
    acc = FElement()
    for w, c in x.terms.items():
        for sub, e in l_map_word(i2, w):
            acc = acc + FElement({sub: c * LaurentPoly.q_power(e)})
    return acc


# -- bilinear form ----------------------------------------------------------

_pair_cache: dict[tuple[Word, Word], LaurentPoly] = {}


def pair_norm(w1: Word, w2: Word) -> LaurentPoly:
    """Normalized pairing: (w1, w2) = (q^-1 - q)^-h * pair_norm(w1, w2).

    Nonzero only for words of equal content; values in Z[q,q^-1].
    """
    if len(w1) != len(w2):
        return LaurentPoly.zero()
    if not w1:
        return LaurentPoly.one()
    key = (w1, w2)
    hit = _pair_cache.get(key)
    if hit is not None:
        return hit
    i2 = w1[0]
    rest = w1[1:]
    acc = LaurentPoly.zero()
    for sub, e in l_map_word(i2, w2):
        p = pair_norm(rest, sub)
        if p:
            acc = acc + LaurentPoly.q_power(e) * p
    _pair_cache[key] = acc
    return acc


def pair_norm_with_element(w: Word, y: FElement):
    """Sum of y's coefficients against pair_norm(w, -); scalar output."""
    acc: Scalar = LaurentPoly.zero()
    for w2, c in y.terms.items():
        p = pair_norm(w, w2)
        if p:
            acc = acc + c * p
    return acc


def bilinear_form(x: FElement, y: FElement) -> RationalFn:
    """Lusztig-style bilinear form on homogeneous elements.

    Zero when the weights differ; (F_i, F_j) = delta_ij (q^-1 - q)^-1 and the
    two letter-peeling adjunctions extend it to all words.
    """
    if x.is_zero() or y.is_zero():
        return RationalFn.zero()
    acc = RationalFn.zero()
    heights = {len(w) for w in x.terms} | {len(w) for w in y.terms}
    if len(heights) != 1:
        raise ValueError("bilinear_form requires homogeneous arguments")
    h = heights.pop()
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            p = pair_norm(w1, w2)
            if p:
                acc = acc + RationalFn.coerce(c1 * c2) * p
    return acc * qq_inv() ** h if h else acc


# -- Serre relators ---------------------------------------------------------


def serre_relator(i2: int, j2: int) -> FElement:
    """The quantum Serre relator S_ij for i != j."""
    if i2 == j2:
        raise ValueError("Serre relator needs distinct indices")
    fi = FElement.generator(i2)
    fj = FElement.generator(j2)
    if abs(i2 - j2) == 2:
        two = LaurentPoly({1: 1, -1: 1})
        return fi * fi * fj + fj * fi * fi - (fi * fj * fi).scale(two)
    return fi * fj - fj * fi


# -- Kostant combinatorics and weight bases ----------------------------------


def positive_intervals(rank: RankData) -> list[tuple[int, ...]]:
    """Positive roots of the type-A system as ascending runs of root indices."""
    idx = rank.root_indices()
    out = []
    n = len(idx)
    for lo in range(n):
        for hi in range(lo, n):
            out.append(tuple(idx[lo:hi + 1]))
    return out


def _root_coord_vec(rank: RankData, mu: Weight) -> tuple[int, ...] | None:
    from .rootdata import decompose_in_simples

    dec = decompose_in_simples(rank, mu)
    if dec is None or any(c < 0 for c in dec.values()):
        return None
    return tuple(dec.get(i2, 0) for i2 in rank.root_indices())


def kostant_partitions(rank: RankData, mu: Weight) -> list[tuple[tuple[int, ...], ...]]:
    """All multisets of positive-root intervals summing to mu (deterministic order)."""
    cvec = _root_coord_vec(rank, mu)
    if cvec is None:
        return []
    idx = rank.root_indices()
    pos = {i2: p for p, i2 in enumerate(idx)}
    intervals = positive_intervals(rank)
    # Descending lexicographic so partitions come out with parts sorted.
    intervals.sort(reverse=True)

    out: list[tuple[tuple[int, ...], ...]] = []

    def rec(remaining: tuple[int, ...], start: int, acc: list[tuple[int, ...]]):
        if not any(remaining):
            out.append(tuple(acc))
            return
        for k in range(start, len(intervals)):
            itv = intervals[k]
            ok = True
            for i2 in itv:
                if remaining[pos[i2]] <= 0:
                    ok = False
                    break
            if not ok:
                continue
            nxt = list(remaining)
            for i2 in itv:
                nxt[pos[i2]] -= 1
            acc.append(itv)
            rec(tuple(nxt), k, acc)
            acc.pop()

    rec(cvec, 0, [])
    return out


def kostant_count(rank: RankData, mu: Weight) -> int:
    """Brute-force count of N-decompositions of mu into positive roots."""
    return len(kostant_partitions(rank, mu))


def good_words(rank: RankData, mu: Weight) -> list[Word]:
    """The deterministic basis words of weight mu, one per Kostant partition.

    Each positive-root interval contributes its ascending run; the runs of a
    partition are concatenated in non-increasing lexicographic order.
    """
    words = []
    for partition in kostant_partitions(rank, mu):
        parts = sorted(partition, reverse=True)
        w: Word = ()
        for itv in parts:
            w = w + itv
        words.append(w)
    words.sort()
    return words


def all_words_of_weight(rank: RankData, mu: Weight) -> list[Word]:
    """Every word with letter content mu (multiset permutations, sorted)."""
    cvec = _root_coord_vec(rank, mu)
    if cvec is None:
        return []
    letters = []
    for i2, c in zip(rank.root_indices(), cvec):
        letters.extend([i2] * c)
    return sorted(set(itertools.permutations(letters)))


class WeightBasis:
    """Chosen basis words of one weight with exact Gram data.

    ``gram_norm`` is the integer-Laurent matrix of normalized pairings of the
    basis words; the true Gram matrix is (q^-1 - q)^-h times it.
    """

    def __init__(self, rank: RankData, mu: Weight):
        self.rank = rank
        self.mu = mu
        self.words: list[Word] = good_words(rank, mu)
        self.height = sum(_root_coord_vec(rank, mu) or ())
        self.index = {w: k for k, w in enumerate(self.words)}
        k = len(self.words)
        self.gram_norm = [[pair_norm(self.words[i], self.words[j]) for j in range(k)] for i in range(k)]
        self._lu = None

    @property
    def dim(self) -> int:
        return len(self.words)

    def _factorization(self):
        if self._lu is None:
            from .linalg import ExactLU
            self._lu = ExactLU(self.gram_norm)
        return self._lu

    def solve_norm(self, columns: list[list]) -> list[list[RationalFn]]:
        """Solve gram_norm * x = column for each column, exactly."""
        if not self.words:
            if any(any(RationalFn.coerce(v) for v in col) for col in columns):
                raise SingularMatrixError("nonzero pairing data at an empty weight")
            return [[] for _ in columns]
        lu = self._factorization()
        return [lu.solve(col) for col in columns]

    def expand(self, x: FElement) -> list[RationalFn]:
        """Coefficients of x in the basis, modulo the radical of the form."""
        col = [pair_norm_with_element(b, x) for b in self.words]
        return self.solve_norm([col])[0]

    def element_from_coeffs(self, coeffs) -> FElement:
        acc = FElement()
        for c, w in zip(coeffs, self.words):
            c = RationalFn.coerce(c)
            if c:
                acc = acc + FElement({w: c})
        return acc

    def dual_basis(self) -> list[FElement]:
        """Elements d_j with (b_i, d_j) = delta_ij exactly."""
        k = self.dim
        unit_cols = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for i in range(k)] for j in range(k)]
        sols = self.solve_norm(unit_cols)
        scale = qq_inv() ** self.height if self.height else RationalFn.one()
        out = []
        for j in range(k):
            acc = FElement()
            for i in range(k):
                c = sols[j][i] / scale if self.height else sols[j][i]
                if c:
                    acc = acc + FElement({self.words[i]: c})
            out.append(acc)
        return out


_basis_cache: dict[tuple[RankData, Weight], WeightBasis] = {}


def weight_basis(rank: RankData, mu: Weight) -> WeightBasis:
    """Cached WeightBasis; concurrent duplicate construction is idempotent."""
    key = (rank, mu)
    wb = _basis_cache.get(key)
    if wb is None:
        wb = WeightBasis(rank, mu)
        _basis_cache[key] = wb
    return wb


def dual_basis(wb: WeightBasis) -> list[FElement]:
    return wb.dual_basis()


# -- full Gram-rank certification (dim f_mu versus Kostant count) ------------


class GramRankFailure(AssertionError):
    pass


def _eval_shifted(p: LaurentPoly, q0: int, shift: int, powers: dict[int, int]) -> int:
    total = 0
    for e, c in p.coeffs.items():
        ee = e + shift
        pw = powers.get(ee)
        if pw is None:
            pw = q0 ** ee
            powers[ee] = pw
        total += c * pw
    return total


def certify_gram_rank(rank: RankData, max_height: int, on_weight=None) -> dict:
    """Certify rank(full Gram of all words of weight mu) == Kostant count.

    Runs over every mu with 1 <= ht(mu) <= max_height.  The lower bound comes
    from an invertible minor on the chosen basis words; the upper bound from
    showing every one-letter extension of a lower basis row stays in the span
    of the basis rows.  Zero tests on integer Laurent vectors are done by a
    single large-integer evaluation above a proven coefficient bound, which
    is exact.

    Returns a report dict; raises GramRankFailure on any mismatch.
    """
    roots = rank.root_indices()
    checked = 0
    # layer[w] = full normalized pairing vector of w against all words of its
    # weight, as {word: LaurentPoly}.  Layers are built height by height.
    prev_layer: dict[Word, dict[Word, LaurentPoly]] = {(): {(): LaurentPoly.one()}}
    prev_basis: dict[tuple[int, ...], list[Word]] = {(): [()]}

    def content_of(w: Word) -> tuple[int, ...]:
        d = word_root_coords(w)
        return tuple(d.get(i2, 0) for i2 in roots)

    def weight_vectors(words: list[Word]) -> dict[Word, dict[Word, LaurentPoly]]:
        out: dict[Word, dict[Word, LaurentPoly]] = {}
        for w in words:
            vec: dict[Word, LaurentPoly] = {}
            for p in range(len(w)):
                j2 = w[p]
                e = sum(cartan(j2, w[k]) for k in range(p))
                sub = w[:p] + w[p + 1:]
                subvec = prev_layer[sub]
                mono = LaurentPoly.q_power(e)
                for w1, val in subvec.items():
                    key = (j2,) + w1
                    cur = vec.get(key)
                    t = mono * val if cur is None else cur + mono * val
                    if t:
                        vec[key] = t
                    else:
                        vec.pop(key, None)
            out[w] = vec
        return out

    for h in range(1, max_height + 1):
        keep_layer = h < max_height  # the final layer is only needed per weight
        layer: dict[Word, dict[Word, LaurentPoly]] = {}
        basis_by_weight: dict[tuple[int, ...], list[Word]] = {}
        for cvec in _compositions(len(roots), h):
            mu = weight_from_root_coords({i2: c for i2, c in zip(roots, cvec)})
            words = all_words_of_weight(rank, mu)
            vectors = weight_vectors(words)
            basis = good_words(rank, mu)
            basis_by_weight[cvec] = basis
            _certify_one_weight(rank, cvec, words, basis, vectors, prev_basis, roots)
            checked += 1
            if on_weight:
                on_weight(mu, len(basis), len(words))
            if keep_layer:
                layer.update(vectors)
        prev_layer = layer
        prev_basis = basis_by_weight
    return {"rank": rank.r, "parity": rank.parity, "max_height": max_height, "weights_checked": checked}


def _compositions(nparts: int, total: int):
    if nparts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(nparts - 1, total - first):
            yield (first,) + rest


def _certify_one_weight(rank, cvec, words, basis, layer, prev_basis, roots):
    kost = len(basis)
    nwords = len(words)
    if kost > nwords:
        raise GramRankFailure(f"more basis words than words at {cvec}")
    # Candidate rows: one-letter extensions of the lower-height basis words.
    candidates: list[Word] = []
    seen = set(basis)
    for p, j2 in enumerate(roots):
        if cvec[p] == 0:
            continue
        sub_cvec = cvec[:p] + (cvec[p] - 1,) + cvec[p + 1:]
        for b in prev_basis.get(sub_cvec, ()):
            w = (j2,) + b
            if w not in seen:
                seen.add(w)
                candidates.append(w)
    if kost == 0:
        if any(layer[w] for w in words):
            raise GramRankFailure(f"nonzero pairings at Kostant-count-0 weight {cvec}")
        return
    word_index = {w: i for i, w in enumerate(words)}
    # Exponent window and coefficient bound for the digit-argument zero test.
    min_exp = 0
    norm_bound = Fraction(0)
    for w in basis + candidates:
        for val in layer[w].values():
            if val:
                min_exp = min(min_exp, val.min_exp())
                n = val.abs_one_norm()
                if n > norm_bound:
                    norm_bound = n
    shift = -min_exp
    gram_rows = [layer[b] for b in basis]
    # Hadamard-style bound on Cramer numerators and the determinant.
    row_sums = []
    for b in basis:
        s = sum((v.abs_one_norm() for v in layer[b].values()), Fraction(0))
        row_sums.append(max(s, Fraction(1)))
    b_det = Fraction(1)
    for s in row_sums:
        b_det *= s + norm_bound
    cbound = int(b_det * norm_bound * (kost + 1)) + 2
    q0 = max(cbound, 3)
    powers: dict[int, int] = {}

    def vec_eval(w: Word) -> list[int]:
        vec = layer[w]
        return [_eval_shifted(vec[x], q0, shift, powers) if x in vec else 0 for x in words]

    basis_eval = [vec_eval(b) for b in basis]
    gram0 = [[basis_eval[j][word_index[basis[i]]] for j in range(kost)] for i in range(kost)]
    det0, inv_rows = _fraction_lu(gram0)
    if det0 == 0:
        raise GramRankFailure(f"basis Gram singular at specialization, weight {cvec}")
    for u in candidates:
        ueval = vec_eval(u)
        p0 = [ueval[word_index[b]] for b in basis]
        x_scaled = _solve_scaled(inv_rows, p0, det0)  # det0 * c, integer entries
        for pos in range(nwords):
            lhs = det0 * ueval[pos]
            rhs = 0
            for k in range(kost):
                if x_scaled[k]:
                    rhs += x_scaled[k] * basis_eval[k][pos]
            if lhs != rhs:
                raise GramRankFailure(
                    f"rank exceeds Kostant count at weight {cvec}: word {u} independent")


def _fraction_lu(m: list[list[int]]):
    """Exact inverse data for an integer matrix: (det, adjugate rows)."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0, None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            det = -det
        det *= a[col][col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                g = a[r][col]
                a[r] = [a[r][c] - g * a[col][c] for c in range(n)]
                inv[r] = [inv[r][c] - g * inv[col][c] for c in range(n)]
    det_int = int(det) if det.denominator == 1 else det
    return det_int, inv


def _solve_scaled(inv_rows, rhs: list[int], det) -> list[int]:
    n = len(rhs)
    out = []
    for i in range(n):
        acc = Fraction(0)
        for j in range(n):
            if rhs[j]:
                acc += inv_rows[i][j] * rhs[j]
        v = acc * det
        if v.denominator != 1:
            raise GramRankFailure("non-integer Cramer data (internal error)")
        out.append(int(v))
    return out
