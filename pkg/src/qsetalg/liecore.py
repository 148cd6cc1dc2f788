"""Exact Lie-algebra machinery: structure constants, Killing forms, gradings,
and one-parameter contractions.

A MatrixAlgebra is a basis of exact rational matrices assumed (and verified)
to close under commutators. Structure constants are extracted by solving
linear systems over the rationals, so closure failures are detected exactly
rather than hidden under a least-squares fit; a float refit is available as an
independent cross-check, not as the source of truth.

Contractions follow the graded-rescaling pattern: assign each basis element a
weight w_i, scale x_i -> eps^{w_i} x_i, and watch

    c_ijk(eps) = eps^(w_i + w_j - w_k) * c_ijk

as eps -> 0. Nonzero constants with negative exponent diverge (rejected),
zero-exponent ones survive, positive ones decay. The limit is again a Lie
algebra (Jacobi holds at every eps, hence in the limit) but usually a
non-isomorphic, non-semisimple one; killing_det of the limit going to zero
while the original is nonzero is the signature of a genuine contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .linalg import ColumnSolver, LinalgError, RationalSpan


class LieError(Exception):
    pass


class ClosureError(LieError):
    """A commutator left the span of the basis."""


class ContractionError(LieError):
    """Divergent or ill-posed contraction request."""


class MatrixAlgebra:
    """Lie algebra presented by an independent basis of rational matrices."""

    def __init__(self, name: str, basis, labels=None):
        mats = tuple(linalg.mat(b) if not isinstance(b, tuple) else b for b in basis)
        if not mats:
            raise ValueError("empty basis")
        d = linalg.shape(mats[0])[0]
        for m in mats:
            if linalg.shape(m) != (d, d):
                raise ValueError("basis matrices must be square and same size")
        span = RationalSpan(d * d)
        for m in mats:
            if not span.add(linalg.flatten(m)):
                raise ValueError(f"basis of {name} is linearly dependent")
        self.name = name
        self.basis = mats
        self.matrix_dim = d
        self.labels = tuple(labels) if labels else tuple(
            f"x{i+1}" for i in range(len(mats))
        )
        if len(self.labels) != len(mats):
            raise ValueError("one label per basis element")
        self._sc = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket(self, a, b):
        return linalg.commutator(a, b)

    def structure_constants(self) -> "StructureConstants":
        if self._sc is None:
            self._sc = StructureConstants.from_matrices(
                self.basis, name=self.name, labels=self.labels
            )
        return self._sc

    def __repr__(self):
        return f"MatrixAlgebra({self.name!r}, dim={self.dim}, matrices {self.matrix_dim}x{self.matrix_dim})"


class StructureConstants:
    """c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k, all Fractions."""

    def __init__(self, c, name: str = "", labels=None):
        self.c = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in c
        )
        n = len(self.c)
        for plane in self.c:
            if len(plane) != n or any(len(row) != n for row in plane):
                raise ValueError("structure constants must be n x n x n")
        self.name = name
        self.labels = tuple(labels) if labels else tuple(f"x{i+1}" for i in range(n))

    @property
    def dim(self) -> int:
        return len(self.c)

    @classmethod
    def from_matrices(cls, basis, name="", labels=None) -> "StructureConstants":
        n = len(basis)
        cols = [linalg.flatten(m) for m in basis]
        try:
            solver = ColumnSolver(cols)
        except LinalgError as e:
            raise ValueError(f"basis is degenerate: {e}") from None
        zero = Fraction(0)
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                comm = linalg.commutator(basis[i], basis[j])
                try:
                    coords, residual = solver.solve(linalg.flatten(comm))
                except LinalgError:
                    raise ClosureError(
                        f"[{i},{j}] leaves the span of the basis"
                    ) from None
                if residual != 0:
                    raise ClosureError(f"[{i},{j}] leaves the span of the basis")
                for k in range(n):
                    c[i][j][k] = coords[k]
                    c[j][i][k] = -coords[k]
        return cls(c, name=name, labels=labels)

    def bracket_coords(self, u, v):
        """Coordinates of [u, v] for coordinate vectors u, v."""
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            ui = u[i]
            if not ui:
                continue
            for j in range(n):
                vj = v[j]
                if not vj:
                    continue
                row = self.c[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += ui * vj * row[k]
        return tuple(out)

    def antisymmetry_defect(self) -> Fraction:
        worst = Fraction(0)
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    worst = max(worst, abs(self.c[i][j][k] + self.c[j][i][k]))
        return worst

    def jacobi_defect(self) -> Fraction:
        """max |[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]| coordinate."""
        n = self.dim
        worst = Fraction(0)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        s = Fraction(0)
                        for m in range(n):
                            s += self.c[i][j][m] * self.c[m][k][l]
                            s += self.c[j][k][m] * self.c[m][i][l]
                            s += self.c[k][i][m] * self.c[m][j][l]
                        worst = max(worst, abs(s))
        return worst

    def ad(self, i: int):
        """Matrix of ad(x_i) in the basis: (ad_i)[l][m] = c[i][m][l]."""
        n = self.dim
        return tuple(
            tuple(self.c[i][m][l] for m in range(n)) for l in range(n)
        )

    def killing_form(self):
        """K[i][j] = trace(ad x_i . ad x_j), exact."""
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                s = Fraction(0)
                for l in range(n):
                    for m in range(n):
                        s += self.c[i][m][l] * self.c[j][l][m]
                row.append(s)
            rows.append(tuple(row))
        return tuple(rows)

    def killing_det(self) -> Fraction:
        return linalg.det(self.killing_form())

    def is_semisimple(self) -> bool:
        return self.killing_det() != 0

    def _series_vanishes(self, derived: bool) -> bool:
        """Descending series test. Each term is an ideal inside the previous
        one, so a step that fails to drop the dimension has stabilized; a
        strict drop can happen at most dim times."""
        n = self.dim
        basis_vecs = [
            tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))
            for i in range(n)
        ]
        current = basis_vecs
        prev_dim = n
        for _ in range(n + 1):
            span = RationalSpan(n)
            vecs = []
            left = current if derived else basis_vecs
            for u in left:
                for v in current:
                    w = self.bracket_coords(u, v)
                    if any(w) and span.add(w):
                        vecs.append(w)
            if not vecs:
                return True
            if len(vecs) == prev_dim:
                return False
            prev_dim = len(vecs)
            current = vecs
        return False

    def is_nilpotent(self) -> bool:
        return self._series_vanishes(derived=False)

    def is_solvable(self) -> bool:
        return self._series_vanishes(derived=True)

    def is_abelian(self) -> bool:
        return all(
            not self.c[i][j][k]
            for i in range(self.dim)
            for j in range(self.dim)
            for k in range(self.dim)
        )

    def classify(self) -> str:
        if self.is_abelian():
            return "abelian"
        if self.is_semisimple():
            return "semisimple"
        if self.is_nilpotent():
            return "nilpotent"
        if self.is_solvable():
            return "solvable"
        return "non-semisimple (mixed)"

    def nonzero(self):
        """Sorted (i, j, k, c) with i < j and c != 0."""
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self.c[i][j][k]:
                        out.append((i, j, k, self.c[i][j][k]))
        return out

    def __repr__(self):
        return f"StructureConstants({self.name!r}, dim={self.dim})"


class ContractionFamily:
    """Weighted rescaling x_i -> eps^{w_i} x_i of a structure-constant table."""

    def __init__(self, sc: StructureConstants, weights):
        self.sc = sc
        self.weights = tuple(Fraction(w) for w in weights)
        if len(self.weights) != sc.dim:
            raise ContractionError("one weight per basis element")
        for i, j, k, _ in sc.nonzero():
            if self.exponent(i, j, k) < 0:
                raise ContractionError(
                    f"constant ({self.sc.labels[i]},{self.sc.labels[j]})->"
                    f"{self.sc.labels[k]} diverges: exponent "
                    f"{self.exponent(i, j, k)} < 0"
                )

    def exponent(self, i: int, j: int, k: int) -> Fraction:
        return self.weights[i] + self.weights[j] - self.weights[k]

    def surviving(self):
        return [t for t in self.sc.nonzero() if self.exponent(t[0], t[1], t[2]) == 0]

    def decaying(self):
        return [
            (i, j, k, c, self.exponent(i, j, k))
            for i, j, k, c in self.sc.nonzero()
            if self.exponent(i, j, k) > 0
        ]

    def at(self, eps: Fraction) -> StructureConstants:
        """Exact table at a finite parameter value; exponents must be integers."""
        eps = Fraction(eps)
        n = self.sc.dim
        zero = Fraction(0)
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    v = self.sc.c[i][j][k]
                    if not v:
                        continue
                    e = self.exponent(i, j, k)
                    if e.denominator != 1:
                        raise ContractionError(
                            f"exponent {e} is not an integer; evaluate with a "
                            f"rational square root of eps instead"
                        )
                    c[i][j][k] = v * eps ** int(e)
        return StructureConstants(
            c, name=f"{self.sc.name}@eps={eps}", labels=self.sc.labels
        )

    def limit(self) -> StructureConstants:
        n = self.sc.dim
        zero = Fraction(0)
        c = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, v in self.sc.nonzero():
            if self.exponent(i, j, k) == 0:
                c[i][j][k] = v
                c[j][i][k] = -v
        return StructureConstants(
            c, name=f"{self.sc.name}->limit", labels=self.sc.labels
        )

    def describe(self):
        """(label_i, label_j, label_k, constant, exponent) rows, sorted."""
        out = []
        for i, j, k, v in self.sc.nonzero():
            out.append(
                (
                    self.sc.labels[i],
                    self.sc.labels[j],
                    self.sc.labels[k],
                    v,
                    self.exponent(i, j, k),
                )
            )
        return out


def scaled_basis(basis, weights, eps_sqrt: Fraction):
    """Rescale basis matrices by eps^{w_i}, with eps = eps_sqrt**2 so that
    half-integer weights stay exact."""
    eps_sqrt = Fraction(eps_sqrt)
    out = []
    for m, w in zip(basis, weights):
        w = Fraction(w)
        two_w = 2 * w
        if two_w.denominator != 1:
            raise ContractionError("weights must be integers or half-integers")
        out.append(linalg.smul(eps_sqrt ** int(two_w), m))
    return tuple(out)


def numeric_contraction_check(
    algebra: MatrixAlgebra, weights, eps: float
) -> float:
    """Re-derive the structure constants of the eps-scaled basis in float
    arithmetic via least squares and compare against the exact family.

    Returns the largest relative deviation over all (i, j) brackets, where the
    denominator is max(1, |exact coordinate vector|_inf). Independent of the
    exact path: uses numpy only.
    """
    sc = algebra.structure_constants()
    fam = ContractionFamily(sc, weights)
    n = algebra.dim
    ws = [float(w) for w in fam.weights]
    mats = [np.array(linalg.to_float(m)) * (eps ** w) for m, w in zip(algebra.basis, ws)]
    cols = np.stack([m.reshape(-1) for m in mats], axis=1)
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords, *_ = np.linalg.lstsq(cols, comm.reshape(-1), rcond=None)
            exact = np.array(
                [
                    float(sc.c[i][j][k]) * eps ** (ws[i] + ws[j] - ws[k])
                    for k in range(n)
                ]
            )
            scale = max(1.0, float(np.abs(exact).max()))
            worst = max(worst, float(np.abs(coords - exact).max()) / scale)
    return worst


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    algebra: MatrixAlgebra
    weights: tuple | None
    note: str


def rotation3() -> MatrixAlgebra:
    """so(3): (L_a)_bc = -epsilon_abc, [L1, L2] = L3 cyclically."""
    z = Fraction(0)
    o = Fraction(1)
    l1 = ((z, z, z), (z, z, -o), (z, o, z))
    l2 = ((z, z, o), (z, z, z), (-o, z, z))
    l3 = ((z, -o, z), (o, z, z), (z, z, z))
    return MatrixAlgebra("so3", (l1, l2, l3), labels=("L1", "L2", "L3"))


def heisenberg3() -> MatrixAlgebra:
    """Strictly upper-triangular 3x3: [P, Q] = Z, Z central, Killing form 0."""
    z = Fraction(0)
    o = Fraction(1)
    p = ((z, o, z), (z, z, z), (z, z, z))
    q = ((z, z, z), (z, z, o), (z, z, z))
    c = ((z, z, o), (z, z, z), (z, z, z))
    return MatrixAlgebra("h1", (p, q, c), labels=("P", "Q", "Z"))


def ladder_matrices(steps: int):
    """Raising/lowering pair on steps+1 levels: A e_k = (steps-k) e_{k+1},
    B e_k = k e_{k-1}; then [A, B] is diagonal with entries 2k - steps."""
    if steps < 1:
        raise ValueError("need at least two levels")
    d = steps + 1
    z = Fraction(0)
    a = [[z] * d for _ in range(d)]
    b = [[z] * d for _ in range(d)]
    for k in range(d):
        if k + 1 < d:
            a[k + 1][k] = Fraction(steps - k)
        if k - 1 >= 0:
            b[k - 1][k] = Fraction(k)
    return linalg.mat(a), linalg.mat(b)


def boost_triple(steps: int = 2) -> MatrixAlgebra:
    """so(2,1) in the symmetric presentation [q,p] = r, [p,r] = q, [q,r] = p,
    realized rationally on steps+1 levels as (q, p, r) =
    ([A,B]/2, (A-B)/2, (A+B)/2) for the ladder pair (A, B)."""
    a, b = ladder_matrices(steps)
    half = Fraction(1, 2)
    q = linalg.smul(half, linalg.commutator(a, b))
    p = linalg.smul(half, linalg.msub(a, b))
    r = linalg.smul(half, linalg.madd(a, b))
    return MatrixAlgebra("so21", (q, p, r), labels=("q", "p", "r"))


def rotation_boost6() -> MatrixAlgebra:
    """so(4) split into three rotations and three boosts (last coordinate)."""
    from .cliff import build_gammas

    gs = build_gammas(4, 0)
    rot = [gs.spin_generator(1, 2), gs.spin_generator(1, 3), gs.spin_generator(2, 3)]
    boost = [gs.spin_generator(1, 4), gs.spin_generator(2, 4), gs.spin_generator(3, 4)]
    return MatrixAlgebra(
        "so4",
        rot + boost,
        labels=("r12", "r13", "r23", "b1", "b2", "b3"),
    )


def catalog() -> dict:
    half = Fraction(1, 2)
    return {
        "so3": CatalogEntry("so3", rotation3(), None, "compact rotations"),
        "h1": CatalogEntry("h1", heisenberg3(), None, "nilpotent; Killing form vanishes"),
        "so21": CatalogEntry(
            "so21",
            boost_triple(),
            (half, half, Fraction(1)),
            "symmetric triple; contracts onto h1",
        ),
        "so4": CatalogEntry(
            "so4",
            rotation_boost6(),
            (Fraction(0),) * 3 + (Fraction(1),) * 3,
            "rotations kept, boosts decay: contracts onto iso(3)",
        ),
    }
