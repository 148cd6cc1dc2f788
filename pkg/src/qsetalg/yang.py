"""Rotation algebras on six directions and their Heisenberg-type contraction.

Take gamma matrices for six directions of signature (p6, q6) and form the 15
quadratic generators M(a, b) = gamma_a gamma_b / 2. Splitting the directions
as four "spacetime" slots mu = 1..4 plus two auxiliary slots 5, 6 groups the
generators into

    rotations  L(mu, nu)            6    weight 0
    coordinates x(mu) = M(5, mu)    4    weight 1/2
    momenta     p(mu) = M(6, mu)    4    weight 1/2
    center      z     = M(6, 5)     1    weight 1

The bracket of a coordinate with a momentum lands on z with coefficient
eta(mu) delta(mu, nu) and carries contraction exponent zero, so it survives
the weighted limit; coordinate-coordinate and momentum-momentum brackets close
on rotations with exponent one and decay like eps. The limit is the
rotations-plus-Heisenberg algebra: z central, commuting coordinates, commuting
momenta, canonical pairing intact, Killing form degenerate.

The same mechanism in miniature: three directions, signature arranged so that
(x, p, z) close as the symmetric triple [q,p] = r, [p,r] = q, [q,r] = p. The
2x2 toy built here reproduces the catalog triple's structure constants
exactly.

Physical scales ride along as unit tags (symbol -> exponent maps, never
floats): coordinates carry xbar * N^{-1/2}, momenta ebar * N^{-1/2}, and the
surviving pairing therefore carries xbar * ebar / N, the action quantum of
the contracted theory.

accumulate_coordinate() treats one direction's coordinate as a sum of n
commuting two-level steps (Kronecker sum). Each step has spectrum {+1, -1}
(spacelike, symmetric step) or {+i, -i} (timelike, antisymmetric step, the i
kept in the unit tag), so the total has the binomial spectrum
{n - 2j with multiplicity C(n, j)}; the eigenvalues accumulate in integer
rungs around zero instead of filling a continuum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import linalg
from .cliff import build_gammas
from .liecore import (
    ContractionFamily,
    ContractionError,
    MatrixAlgebra,
    StructureConstants,
    scaled_basis,
)

# ---------------------------------------------------------------------------
# unit tags


class UnitTag:
    """Multiplicative unit bookkeeping: a map symbol -> rational exponent.

    Tags multiply and divide; they never turn into numbers. The point is to
    keep statements like "the pairing scale is xbar*ebar/N" exact and visible
    instead of burying them in floating-point prefactors.
    """

    __slots__ = ("_exps",)

    def __init__(self, exps=None):
        clean = {}
        for sym, e in (exps or {}).items():
            e = Fraction(e)
            if e:
                clean[str(sym)] = e
        self._exps = dict(sorted(clean.items()))

    @classmethod
    def one(cls) -> "UnitTag":
        return cls()

    @classmethod
    def single(cls, sym: str, exp=1) -> "UnitTag":
        return cls({sym: exp})

    def exponents(self) -> dict:
        return dict(self._exps)

    def __mul__(self, other: "UnitTag") -> "UnitTag":
        out = dict(self._exps)
        for s, e in other._exps.items():
            out[s] = out.get(s, Fraction(0)) + e
        return UnitTag(out)

    def __truediv__(self, other: "UnitTag") -> "UnitTag":
        out = dict(self._exps)
        for s, e in other._exps.items():
            out[s] = out.get(s, Fraction(0)) - e
        return UnitTag(out)

    def __pow__(self, k) -> "UnitTag":
        k = Fraction(k)
        return UnitTag({s: e * k for s, e in self._exps.items()})

    def __eq__(self, other):
        return isinstance(other, UnitTag) and self._exps == other._exps

    def __hash__(self):
        return hash(tuple(self._exps.items()))

    def is_one(self) -> bool:
        return not self._exps

    def __str__(self):
        if not self._exps:
            return "1"
        bits = []
        for s, e in self._exps.items():
            if e == 1:
                bits.append(s)
            else:
                bits.append(f"{s}^{e}")
        return "*".join(bits)

    def __repr__(self):
        return f"UnitTag({self})"


def unit_tags() -> dict:
    """Scales carried by the contracted generators: coordinates and momenta
    shrink like N^{-1/2}, so their surviving pairing carries the 1/N action
    quantum."""
    coord = UnitTag({"xbar": 1, "N": Fraction(-1, 2)})
    mom = UnitTag({"ebar": 1, "N": Fraction(-1, 2)})
    return {
        "coordinate": coord,
        "momentum": mom,
        "action": coord * mom,
    }


# ---------------------------------------------------------------------------
# toy frame: three directions, 2x2 matrices

# gamma indices (in a (2,1) set) assigned to the three toy directions, chosen
# so the direction metric comes out (-1, +1, +1) and the triple closes
# symmetrically.
TOY_GAMMA_ORDER = (3, 1, 2)


def toy_frame() -> MatrixAlgebra:
    """2x2 realization of the symmetric triple: (q, p, r) with [q,p] = r,
    [p,r] = q, [q,r] = p, built from quadratic elements of a (2,1) gamma set."""
    gs = build_gammas(2, 1)
    s = TOY_GAMMA_ORDER
    q = gs.spin_generator(s[2], s[0])
    p = gs.spin_generator(s[2], s[1])
    r = gs.spin_generator(s[1], s[0])
    return MatrixAlgebra("toy", (q, p, r), labels=("q", "p", "r"))


# ---------------------------------------------------------------------------
# full frame: six directions, 15 generators

PRESETS = {
    # six-direction signature -> (gamma signature to build, indices to take)
    "4-2": ((4, 4), (1, 2, 3, 4, 5, 6)),
    "3-3": ((4, 4), (1, 2, 3, 5, 6, 7)),
    "5-1": ((5, 1), (1, 2, 3, 4, 5, 6)),
}


class YangFrame:
    """The 15-generator rotation algebra on six directions with the
    rotations/coordinates/momenta/center split and contraction weights."""

    def __init__(self, preset: str):
        if preset not in PRESETS:
            raise ValueError(
                f"unknown preset {preset!r}; choose from {sorted(PRESETS)}"
            )
        (gp, gq), picks = PRESETS[preset]
        gs = build_gammas(gp, gq)
        self.preset = preset
        self.gamma_set = gs
        self.direction_index = tuple(picks)
        self.eta6 = tuple(gs.eta_entry(i) for i in picks)
        self.eta_mu = self.eta6[:4]

        def M(a, b):
            # a, b are 1-based direction slots; map through to gamma indices
            return gs.spin_generator(picks[a - 1], picks[b - 1])

        mats = []
        labels = []
        self.rot_slots = []
        self.x_slots = []
        self.p_slots = []
        for mu in range(1, 5):
            for nu in range(mu + 1, 5):
                self.rot_slots.append(len(mats))
                mats.append(M(mu, nu))
                labels.append(f"L{mu}{nu}")
        for mu in range(1, 5):
            self.x_slots.append(len(mats))
            mats.append(M(5, mu))
            labels.append(f"x{mu}")
        for mu in range(1, 5):
            self.p_slots.append(len(mats))
            mats.append(M(6, mu))
            labels.append(f"p{mu}")
        self.z_slot = len(mats)
        mats.append(M(6, 5))
        labels.append("z")

        self.algebra = MatrixAlgebra(f"yang-{preset}", mats, labels=labels)
        self.weights = (
            (Fraction(0),) * 6
            + (Fraction(1, 2),) * 8
            + (Fraction(1),)
        )
        self.tags = unit_tags()

    @property
    def labels(self):
        return self.algebra.labels

    def structure_constants(self) -> StructureConstants:
        return self.algebra.structure_constants()

    def family(self) -> ContractionFamily:
        return ContractionFamily(self.structure_constants(), self.weights)

    def mu_signature(self) -> tuple:
        plus = sum(1 for e in self.eta_mu if e > 0)
        return (plus, 4 - plus)

    def __repr__(self):
        return (
            f"YangFrame({self.preset!r}, eta6={self.eta6}, "
            f"matrices {self.gamma_set.dim}x{self.gamma_set.dim})"
        )


def build_yang(preset: str = "4-2") -> YangFrame:
    return YangFrame(preset)


@dataclass(frozen=True)
class HpTarget:
    """Contracted structure constants plus the invariants that make the limit
    a rotations-plus-Heisenberg algebra."""

    constants: StructureConstants
    central_charge: bool
    coordinates_commute: bool
    momenta_commute: bool
    heisenberg_pairing: bool
    killing_degenerate: bool

    def all_hold(self) -> bool:
        return (
            self.central_charge
            and self.coordinates_commute
            and self.momenta_commute
            and self.heisenberg_pairing
            and self.killing_degenerate
        )


def contract_to_hp(frame: YangFrame):
    """Run the weighted contraction and certify the limit. Returns
    (family, HpTarget)."""
    fam = frame.family()
    lim = fam.limit()
    n = lim.dim
    zs = frame.z_slot

    central = all(
        not lim.c[zs][j][k] for j in range(n) for k in range(n)
    )
    xx = all(
        not lim.c[i][j][k]
        for i in frame.x_slots
        for j in frame.x_slots
        for k in range(n)
    )
    pp = all(
        not lim.c[i][j][k]
        for i in frame.p_slots
        for j in frame.p_slots
        for k in range(n)
    )
    pairing = True
    for a, i in enumerate(frame.x_slots):
        for b, j in enumerate(frame.p_slots):
            want = Fraction(frame.eta_mu[a]) if a == b else Fraction(0)
            for k in range(n):
                expect = want if k == zs else Fraction(0)
                if lim.c[i][j][k] != expect:
                    pairing = False
    degenerate = lim.killing_det() == 0
    return fam, HpTarget(lim, central, xx, pp, pairing, degenerate)


@dataclass(frozen=True)
class DefectReport:
    """How far the eps-scaled generators are from satisfying the limit table."""

    eps: Fraction
    worst: Fraction
    by_pair: tuple  # ((label_i, label_j, max-abs entry as Fraction), ...)


def gauge_defect(frame: YangFrame, eps_sqrt) -> DefectReport:
    """D_ij = [X_i(eps), X_j(eps)] - sum_k c-limit_ijk X_k(eps), exactly.

    eps_sqrt is the exact square root of eps, so half-integer weights stay
    rational. The worst entry decays linearly in eps: the decaying brackets
    all carry exponent one onto weight-zero rotations.
    """
    eps_sqrt = Fraction(eps_sqrt)
    sc = frame.structure_constants()
    lim = ContractionFamily(sc, frame.weights).limit()
    xs = scaled_basis(frame.algebra.basis, frame.weights, eps_sqrt)
    n = len(xs)
    rows = []
    worst = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            d = linalg.commutator(xs[i], xs[j])
            for k in range(n):
                ck = lim.c[i][j][k]
                if ck:
                    d = linalg.msub(d, linalg.smul(ck, xs[k]))
            m = linalg.max_abs(d)
            if m:
                rows.append((frame.labels[i], frame.labels[j], m))
            worst = max(worst, m)
    return DefectReport(eps_sqrt * eps_sqrt, worst, tuple(rows))


# ---------------------------------------------------------------------------
# coordinate accumulation: Kronecker sums of two-level steps

_STEP_PLUS = np.array([[0, 1], [1, 0]], dtype=np.int64)
_STEP_MINUS = np.array([[0, 1], [-1, 0]], dtype=np.int64)

_MAX_STEPS = 12

ACCUMULATION_PRESETS = {
    # direction label -> step square, per direction
    "penrose": (("s1", 1), ("s2", 1), ("s3", 1)),
    "feynman": (("s1", 1), ("s2", 1), ("s3", 1), ("t", -1)),
}


@dataclass(frozen=True)
class AccumulationResult:
    steps: int
    square: int
    unit: UnitTag
    spectrum: tuple  # ((integer level, multiplicity), ...) descending level

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.spectrum)


def step_matrix(square: int) -> np.ndarray:
    if square == 1:
        return _STEP_PLUS.copy()
    if square == -1:
        return _STEP_MINUS.copy()
    raise ValueError("step square must be +1 or -1")


def total_matrix(n: int, square: int) -> np.ndarray:
    """Kronecker sum of n identical two-level steps; dimension 2**n."""
    if not 1 <= n <= _MAX_STEPS:
        raise ValueError(f"steps must lie in 1..{_MAX_STEPS}")
    s = step_matrix(square)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.int64)
    for k in range(n):
        left = np.eye(1 << k, dtype=np.int64)
        right = np.eye(1 << (n - k - 1), dtype=np.int64)
        out += np.kron(np.kron(left, s), right)
    return out


def accumulate_coordinate(n: int, square: int = 1, step_unit: str = "lstep") -> AccumulationResult:
    """Spectrum of a coordinate built from n two-level steps.

    Commuting steps with spectrum {+1, -1} (times i for square == -1) add up
    to levels n - 2j, j = 0..n, each with multiplicity C(n, j). The result
    records the integer levels; the unit tag carries the step length and, for
    timelike steps, the factor i.
    """
    if not 1 <= n <= _MAX_STEPS:
        raise ValueError(f"steps must lie in 1..{_MAX_STEPS}")
    if square not in (1, -1):
        raise ValueError("step square must be +1 or -1")
    unit = UnitTag.single(step_unit)
    if square == -1:
        unit = unit * UnitTag.single("i")
    spectrum = tuple((n - 2 * j, comb(n, j)) for j in range(n + 1))
    return AccumulationResult(n, square, unit, spectrum)


def accumulate_preset(name: str, n: int) -> dict:
    """Run accumulate_coordinate for every direction of a named frame."""
    if name not in ACCUMULATION_PRESETS:
        raise ValueError(
            f"unknown accumulation preset {name!r}; choose from "
            f"{sorted(ACCUMULATION_PRESETS)}"
        )
    return {
        label: accumulate_coordinate(n, square)
        for label, square in ACCUMULATION_PRESETS[name]
    }
