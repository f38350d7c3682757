"""Dice distributions under the two control models.

The Smith-Scott (SS) model mixes a fair roll with a perfect on-axis roll of
two axis-set dice.  The Wong-Shackleford (WS) model keeps the fair joint law
but shifts probability from double pitches to zero pitches of a full dice set
``(a, b, c, d)``.

Every distribution function accepts either a float ``theta`` (returns float
arrays) or a :class:`fractions.Fraction` (returns object arrays of exact
rationals).  The exact path backs the golden tests.
"""

from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

FACES = (1, 2, 3, 4, 5, 6)
TOTALS = tuple(range(2, 13))
POINTS = (4, 5, 6, 8, 9, 10)


class Model(str, Enum):
    SS = "ss"
    WS = "ws"

    @classmethod
    def parse(cls, value: "Model | str") -> "Model":
        if isinstance(value, Model):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown model {value!r}; expected 'ss' or 'ws'") from None


class AxisSet(str, Enum):
    """Axis set of a single die; the two excluded faces are opposite."""

    A = "A"
    B = "B"
    C = "C"

    @property
    def faces(self) -> tuple[int, ...]:
        return _AXIS_FACES[self.value]


_AXIS_FACES = {"A": (2, 3, 4, 5), "B": (1, 3, 4, 6), "C": (1, 2, 5, 6)}


class PairSet(str, Enum):
    """Unordered pair of axis sets, stored in canonical A<B<C order."""

    AA = "AA"
    AB = "AB"
    AC = "AC"
    BB = "BB"
    BC = "BC"
    CC = "CC"

    @classmethod
    def parse(cls, value: "PairSet | str") -> "PairSet":
        if isinstance(value, PairSet):
            return value
        text = "".join(sorted(str(value).upper()))
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown pair set {value!r}") from None

    @property
    def left(self) -> AxisSet:
        return AxisSet(self.value[0])

    @property
    def right(self) -> AxisSet:
        return AxisSet(self.value[1])


class FullSet(NamedTuple):
    """Top/front faces of the left die (a, b) and of the right die (c, d)."""

    a: int
    b: int
    c: int
    d: int

    @property
    def is_valid(self) -> bool:
        return (
            all(f in FACES for f in self)
            and self.b not in (self.a, 7 - self.a)
            and self.d not in (self.c, 7 - self.c)
        )

    def __str__(self) -> str:
        return "".join(map(str, self))

    @classmethod
    def parse(cls, value: "FullSet | str | Sequence[int]") -> "FullSet":
        if isinstance(value, str):
            digits = [int(ch) for ch in value if ch.isdigit()]
        else:
            digits = [int(v) for v in value]
        if len(digits) != 4:
            raise ValueError(f"a dice set needs four faces, got {value!r}")
        fs = cls(*digits)
        _require_full_set(fs)
        return fs


SEVENS_SET = FullSet(1, 5, 6, 2)
HARDWAYS_SET = FullSet(2, 4, 2, 4)

# optimal strategies: come-out set and set used for each point
SS_COME_OUT = PairSet.AA
SS_POINT_SET = {4: PairSet.AC, 10: PairSet.AC, 5: PairSet.AC, 9: PairSet.AC,
                6: PairSet.AB, 8: PairSet.AB}
WS_COME_OUT = SEVENS_SET
WS_POINT_SET = {p: HARDWAYS_SET for p in POINTS}


def _require_full_set(fs: FullSet) -> None:
    if not fs.is_valid:
        raise ValueError(f"{tuple(fs)} is not a valid dice set")


def _scalars(theta):
    """Validate theta and return (theta, one, dtype) for exact or float mode."""
    if isinstance(theta, Fraction):
        one, dtype = Fraction(1), object
    else:
        theta, one, dtype = float(theta), 1.0, float
    if not 0 <= theta <= 1:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    return theta, one, dtype


def fair_total_pmf(exact: bool = False) -> np.ndarray:
    """Triangle (6 - |x - 7|)/36 over totals 2..12."""
    if exact:
        return np.array([Fraction(6 - abs(x - 7), 36) for x in TOTALS], dtype=object)
    return np.array([(6 - abs(x - 7)) / 36 for x in TOTALS])


def _uniform_square(left: Sequence[int], right: Sequence[int], one) -> np.ndarray:
    p = np.zeros((6, 6), dtype=object if isinstance(one, Fraction) else float)
    if isinstance(one, Fraction):
        p[:] = Fraction(0)
    w = one / (len(left) * len(right))
    for x in left:
        for y in right:
            p[x - 1, y - 1] = w
    return p


def joint_pmf_ss(pair: PairSet | str, theta) -> np.ndarray:
    """6x6 joint law of (left die, right die); entry [x-1, y-1]."""
    pair = PairSet.parse(pair)
    theta, one, _ = _scalars(theta)
    fair = _uniform_square(FACES, FACES, one)
    control = _uniform_square(pair.left.faces, pair.right.faces, one)
    return (one - theta) * fair + theta * control


def total_from_joint(joint: np.ndarray) -> np.ndarray:
    """Sum a 6x6 joint law over anti-diagonals to get the law of the total."""
    out = [joint[0, 0] * 0 for _ in TOTALS]
    for x in range(6):
        for y in range(6):
            out[x + y] = out[x + y] + joint[x, y]
    return np.array(out, dtype=joint.dtype)


def perfect_control_pmf(pair: PairSet | str, exact: bool = False) -> np.ndarray:
    """Convolution of the two uniform axis-set laws (theta = 1)."""
    pair = PairSet.parse(pair)
    one = Fraction(1) if exact else 1.0
    return total_from_joint(_uniform_square(pair.left.faces, pair.right.faces, one))


def total_pmf_ss(pair: PairSet | str, theta) -> np.ndarray:
    theta, one, _ = _scalars(theta)
    exact = isinstance(one, Fraction)
    return (one - theta) * fair_total_pmf(exact) + theta * perfect_control_pmf(pair, exact)


def zero_pitch_totals(fs: FullSet) -> tuple[int, int, int, int]:
    a, b, c, d = fs
    return (a + c, b + d, 14 - a - c, 14 - b - d)


def double_pitch_totals(fs: FullSet) -> tuple[int, int, int, int]:
    a, b, c, d = fs
    return (a + 7 - c, b + 7 - d, 7 - a + c, 7 - b + d)


def joint_pmf_ws(fs: FullSet | str | Sequence[int], theta) -> np.ndarray:
    fs = FullSet.parse(fs)
    theta, one, dtype = _scalars(theta)
    p = np.full((6, 6), one / 36, dtype=dtype)
    a, b, c, d = fs
    zero = [(a, c), (b, d), (7 - a, 7 - c), (7 - b, 7 - d)]
    double = [(a, 7 - c), (b, 7 - d), (7 - a, c), (7 - b, d)]
    for x, y in zero:
        p[x - 1, y - 1] += theta / 36
    for x, y in double:
        p[x - 1, y - 1] -= theta / 36
    return p


def total_pmf_ws(fs: FullSet | str | Sequence[int], theta) -> np.ndarray:
    """Fair triangle plus theta/36 per zero-pitch hit, minus per double-pitch hit."""
    fs = FullSet.parse(fs)
    theta, one, _ = _scalars(theta)
    p = fair_total_pmf(isinstance(one, Fraction))
    for x in zero_pitch_totals(fs):
        p[x - 2] += theta / 36
    for x in double_pitch_totals(fs):
        p[x - 2] -= theta / 36
    return p


def total_pmf(model: Model | str, dice_set, theta) -> np.ndarray:
    if Model.parse(model) is Model.SS:
        return total_pmf_ss(dice_set, theta)
    return total_pmf_ws(dice_set, theta)


def come_out_pmf(model: Model | str, theta) -> np.ndarray:
    model = Model.parse(model)
    if model is Model.SS:
        return total_pmf_ss(SS_COME_OUT, theta)
    return total_pmf_ws(WS_COME_OUT, theta)


def point_set(model: Model | str, point: int):
    if point not in POINTS:
        raise ValueError(f"{point} is not a point number")
    return (SS_POINT_SET if Model.parse(model) is Model.SS else WS_POINT_SET)[point]


def point_make_probability(model: Model | str, point: int, dice_set, theta):
    """P(point before 7) on point rolls thrown with ``dice_set``."""
    if point not in POINTS:
        raise ValueError(f"{point} is not a point number")
    p = total_pmf(model, dice_set, theta)
    return p[point - 2] / (p[point - 2] + p[7 - 2])


def come_out_win_probability(model: Model | str, theta, come_out=None):
    """Pass-line win probability with the optimal point sets.

    ``come_out`` overrides the come-out set (used by the optimality audit).
    """
    model = Model.parse(model)
    p = total_pmf(model, come_out if come_out is not None else
                  (SS_COME_OUT if model is Model.SS else WS_COME_OUT), theta)
    win = p[7 - 2] + p[11 - 2]
    for x in POINTS:
        win = win + p[x - 2] * point_make_probability(model, x, point_set(model, x), theta)
    return win


def expected_gain_by_enumeration(model: Model | str, theta):
    """Pass-line expected gain assembled from the dice-total laws."""
    return 2 * come_out_win_probability(model, theta) - 1


def _gain_numerator(model: Model, theta):
    if model is Model.SS:
        return 448 - 10064 * theta + 72 * theta**2 + 68 * theta**3 - theta**4
    return 21 - 682 * theta + 361 * theta**2 - 42 * theta**3


def _gain_denominator(model: Model, theta):
    if model is Model.SS:
        return 72 * (10 - theta) * (44 + theta)
    return 27 * (5 - 2 * theta) * (11 - 3 * theta)


def expected_gain(model: Model | str, theta):
    """Closed-form expected gain of a one-unit pass-line bet."""
    model = Model.parse(model)
    theta, _, _ = _scalars(theta)
    return -_gain_numerator(model, theta) / _gain_denominator(model, theta)


def break_even_theta(model: Model | str) -> float:
    """Control level at which the pass-line bet is fair."""
    model = Model.parse(model)
    return brentq(lambda t: _gain_numerator(model, t), 0.0, 0.5, xtol=1e-15, rtol=1e-15)


# --- dice-set combinatorics -------------------------------------------------

def enumerate_dice_sets() -> list[FullSet]:
    """All 576 dice sets in lexicographic order."""
    out = []
    for a, b, c, d in itertools.product(FACES, repeat=4):
        fs = FullSet(a, b, c, d)
        if fs.is_valid:
            out.append(fs)
    return out


def sigma1(s: FullSet) -> FullSet:
    """Rotation about the axis."""
    a, b, c, d = s
    return FullSet(b, 7 - a, d, 7 - c)


def sigma2(s: FullSet) -> FullSet:
    """Axis reversal."""
    a, b, c, d = s
    return FullSet(c, 7 - d, a, 7 - b)


def sigma3(s: FullSet) -> FullSet:
    """Interchange of the dice."""
    a, b, c, d = s
    return FullSet(c, d, a, b)


def sigma4(s: FullSet) -> FullSet:
    """Rotation of the left die only."""
    a, b, c, d = s
    return FullSet(b, 7 - a, c, d)


def sigma5(s: FullSet) -> FullSet:
    """Reversal of the left die only."""
    a, b, c, d = s
    return FullSet(a, 7 - b, c, d)


GENERATORS = {
    "wong": (sigma1, sigma2, sigma3),
    "axis": (sigma1, sigma2, sigma3, sigma4, sigma5),
}


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _generator_permutations(generators: str) -> list[tuple[int, ...]]:
    try:
        gens = GENERATORS[generators]
    except KeyError:
        raise ValueError(f"unknown generator family {generators!r}") from None
    space = enumerate_dice_sets()
    index = {s: i for i, s in enumerate(space)}
    return [tuple(index[g(s)] for s in space) for g in gens]


def orbit_partition(generators: str = "wong") -> list[list[FullSet]]:
    """Orbits of the dice sets under the group generated by the chosen sigmas.

    Orbits are returned sorted, each led by its lexicographically first set.
    """
    space = enumerate_dice_sets()
    uf = _UnionFind(len(space))
    for perm in _generator_permutations(generators):
        for i, j in enumerate(perm):
            uf.union(i, j)
    orbits: dict[int, list[FullSet]] = {}
    for i, s in enumerate(space):
        orbits.setdefault(uf.find(i), []).append(s)
    return sorted(orbits.values())


def group_elements(generators: str = "wong") -> list[tuple[int, ...]]:
    """Close the generator permutations under composition."""
    gens = _generator_permutations(generators)
    identity = tuple(range(len(gens[0])))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[i] for i in g)
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return sorted(seen)


def burnside_count(generators: str = "wong") -> tuple[int, int, int]:
    """Return (sum of fixed-point counts, group order, orbit count)."""
    group = group_elements(generators)
    fixed = sum(sum(1 for i, j in enumerate(g) if i == j) for g in group)
    if fixed % len(group):
        raise ArithmeticError("Burnside sum not divisible by the group order")
    return fixed, len(group), fixed // len(group)
