"""Index sets, weights, the diagram involution and the quotient lattice.

Two families of rank data share one representation:

* odd parity, rank r: simple roots indexed by the 2r+1 integers -r..r and
  the natural module indexed by the 2r+2 half-integers -r-1/2 .. r+1/2;
* even parity, rank r: simple roots indexed by the 2r half-integers strictly
  between -r and r, and the natural module indexed by the 2r+1 integers
  -r..r.

All indices are stored doubled (2a instead of a) so both integral and
half-integral index sets live in plain int keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

ODD = "odd"
EVEN = "even"


@dataclass(frozen=True)
class RankData:
    """Rank and parity; provides the simple-root and module index sets (doubled)."""

    r: int
    parity: str = ODD

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("rank must be nonnegative")
        if self.parity not in (ODD, EVEN):
            raise ValueError(f"parity must be {ODD!r} or {EVEN!r}")
        if self.parity == EVEN and self.r == 0:
            raise ValueError("even parity needs rank >= 1 (empty root set otherwise)")

    @property
    def node_count(self) -> int:
        return 2 * self.r + 1 if self.parity == ODD else 2 * self.r

    def root_indices(self) -> list[int]:
        """Doubled simple-root indices, ascending."""
        if self.parity == ODD:
            return [2 * i for i in range(-self.r, self.r + 1)]
        return [2 * i + 1 for i in range(-self.r, self.r)]

    def module_indices(self) -> list[int]:
        """Doubled module indices, ascending."""
        if self.parity == ODD:
            return [2 * a + 1 for a in range(-self.r - 1, self.r + 1)]
        return [2 * a for a in range(-self.r, self.r + 1)]

    def contains_root(self, i2: int) -> bool:
        lo = -2 * self.r if self.parity == ODD else -2 * self.r + 1
        return lo <= i2 <= -lo and (i2 - lo) % 2 == 0

    def contains_module_index(self, a2: int) -> bool:
        lo = -2 * self.r - 1 if self.parity == ODD else -2 * self.r
        return lo <= a2 <= -lo and (a2 - lo) % 2 == 0

    def positive_root_indices(self) -> list[int]:
        return [i for i in self.root_indices() if i > 0]


class Weight:
    """A sparse integral weight: finite map from doubled module index to int."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        d: dict[int, int] = {}
        for a2, c in items:
            if c:
                d[int(a2)] = d.get(int(a2), 0) + int(c)
                if not d[int(a2)]:
                    del d[int(a2)]
        self.coords = d
        self._hash = None

    @staticmethod
    def zero() -> "Weight":
        return Weight()

    @staticmethod
    def eps(a2: int) -> "Weight":
        """The unit weight supported on doubled module index a2."""
        return Weight({a2: 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coords.items()))
        return self._hash

    def __add__(self, other: "Weight") -> "Weight":
        d = dict(self.coords)
        for k, v in other.coords.items():
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        w = Weight.__new__(Weight)
        w.coords = d
        w._hash = None
        return w

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        w = Weight.__new__(Weight)
        w.coords = {k: -v for k, v in self.coords.items()}
        w._hash = None
        return w

    def __rmul__(self, n: int) -> "Weight":
        if not n:
            return Weight()
        w = Weight.__new__(Weight)
        w.coords = {k: n * v for k, v in self.coords.items()}
        w._hash = None
        return w

    def is_zero(self) -> bool:
        return not self.coords

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in sorted(self.coords.items())}

    @staticmethod
    def from_json(obj: Mapping[str, int]) -> "Weight":
        return Weight({int(k): int(v) for k, v in obj.items()})

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"{v}*e({k}/2)" for k, v in sorted(self.coords.items())).replace("+ -", "- ")


def pairing(mu: Weight, nu: Weight) -> int:
    """The standard bilinear pairing with (eps_a, eps_b) = delta_ab."""
    small, big = (mu.coords, nu.coords) if len(mu.coords) <= len(nu.coords) else (nu.coords, mu.coords)
    return sum(v * big.get(k, 0) for k, v in small.items())


def simple_root(i2: int) -> Weight:
    """alpha_i = eps_{i-1/2} - eps_{i+1/2}, with i given doubled."""
    return Weight({i2 - 1: 1, i2 + 1: -1})


def height_functional(w: Weight) -> int:
    """A linear functional taking value 1 on every simple root.

    Doubled bookkeeping: h(eps_a) = -a, so h(alpha_i) = 1.  For mu in the
    root lattice this is the usual height.
    """
    total = -sum(a2 * c for a2, c in w.coords.items())
    if total % 2:
        raise ValueError(f"{w!r} is not in the root lattice halves")
    return total // 2


def theta(rank: RankData, w: Weight) -> Weight:
    """The diagram involution: theta(eps_a) = -eps_{-a}; sends alpha_i to alpha_{-i}."""
    for a2 in w.coords:
        if not rank.contains_module_index(a2):
            raise IndexError(f"module index {a2}/2 outside rank {rank}")
    return Weight({-a2: -c for a2, c in w.coords.items()})


def theta_unchecked(w: Weight) -> Weight:
    return Weight({-a2: -c for a2, c in w.coords.items()})


def is_theta_fixed(w: Weight) -> bool:
    return theta_unchecked(w) == w


class ThetaClass:
    """A coset of the weight lattice modulo theta-fixed weights.

    Canonical representative: the theta-antisymmetrization w - theta(w),
    which is symmetric in a <-> -a and therefore determined by its
    coordinates at nonnegative doubled indices; those are what is stored.
    """

    __slots__ = ("key",)

    def __init__(self, key: tuple[tuple[int, int], ...]):
        self.key = key

    def __eq__(self, other) -> bool:
        return isinstance(other, ThetaClass) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_zero(self) -> bool:
        return not self.key

    def __add__(self, other: "ThetaClass") -> "ThetaClass":
        d = dict(self.key)
        for k, v in other.key:
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                del d[k]
        return ThetaClass(tuple(sorted(d.items())))

    def __neg__(self) -> "ThetaClass":
        return ThetaClass(tuple((k, -v) for k, v in self.key))

    def __sub__(self, other: "ThetaClass") -> "ThetaClass":
        return self + (-other)

    def __repr__(self) -> str:
        return f"ThetaClass{self.key}"


def theta_class(w: Weight) -> ThetaClass:
    """The image of w in the quotient by theta-fixed weights.

    Two weights have the same class iff their difference is theta-fixed.
    """
    v = w - theta_unchecked(w)
    return ThetaClass(tuple(sorted((a2, c) for a2, c in v.coords.items() if a2 >= 0)))


def decompose_in_simples(rank: RankData, w: Weight) -> dict[int, int] | None:
    """Write w as an integer combination of the rank's simple roots, or None.

    Returns {doubled root index: coefficient}; unique when it exists.
    """
    coords = dict(w.coords)
    out: dict[int, int] = {}
    # alpha_i = eps_{i-1/2} - eps_{i+1/2}; peel coefficients from the lowest
    # module index upward.
    roots = rank.root_indices()
    acc = 0
    mods = rank.module_indices()
    for pos, a2 in enumerate(mods[:-1]):
        acc += coords.pop(a2, 0)
        i2 = a2 + 1
        if acc:
            out[i2] = acc
    acc += coords.pop(mods[-1], 0)
    if coords or acc != 0:
        return None
    for i2 in out:
        if i2 not in roots:
            return None
    return out


def in_positive_root_cone(rank: RankData, w: Weight) -> bool:
    """True iff w is an N-combination of the rank's simple roots."""
    dec = decompose_in_simples(rank, w)
    return dec is not None and all(c >= 0 for c in dec.values())


def order_preceq(rank: RankData, mu: Weight, nu: Weight) -> bool:
    """Partial order: mu <= nu iff same theta-class and nu - mu in N Pi."""
    if theta_class(mu) != theta_class(nu):
        return False
    return in_positive_root_cone(rank, nu - mu)


def weight_from_root_coords(coeffs: Mapping[int, int]) -> Weight:
    """Build sum c_i alpha_i from {doubled root index: c}."""
    w = Weight()
    for i2, c in coeffs.items():
        w = w + c * simple_root(i2)
    return w
