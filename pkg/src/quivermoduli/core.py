"""Quivers, dimension vectors, stabilities and their bilinear algebra.

A quiver is a finite directed multigraph, stored as an arrow-multiplicity
matrix over an ordered vertex set. Dimension vectors are nonnegative
integer vectors on the vertices, stabilities are integer covectors, and
the homological bilinear form

    form(d, e) = sum_i d_i e_i - sum_{arrows i->j} d_i e_j

drives everything downstream. All arithmetic is exact: rationals are
fractions.Fraction, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import BoxGuardExceeded, InternalCheckError, PreconditionError

#: Default cap on the number of cells a box enumeration may visit.
DEFAULT_MAX_BOX = 10**6


@dataclass(frozen=True)
class DimVector:
    """Nonnegative integer vector indexed by the vertices of a quiver."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if any(c < 0 for c in coords):
            raise ValueError(f"dimension vector must be nonnegative, got {coords}")
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    @property
    def total(self) -> int:
        return sum(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _match(self, other: "DimVector") -> None:
        if len(self.coords) != len(other.coords):
            raise ValueError("dimension vectors of different lengths")

    def leq(self, other: "DimVector") -> bool:
        """Componentwise comparison; this is a partial order."""
        self._match(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __add__(self, other: "DimVector") -> "DimVector":
        self._match(other)
        return DimVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DimVector") -> "DimVector":
        self._match(other)
        return DimVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k: int) -> "DimVector":
        return DimVector(tuple(k * c for c in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Stability:
    """Integer covector on the vertices, evaluated on dimension vectors."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    @property
    def is_zero(self) -> bool:
        return not any(self.weights)

    def __call__(self, d: DimVector) -> int:
        if len(self.weights) != len(d):
            raise ValueError("stability and dimension vector of different lengths")
        return sum(w * c for w, c in zip(self.weights, d.coords))

    def __add__(self, other: "Stability") -> "Stability":
        if len(self.weights) != len(other.weights):
            raise ValueError("stabilities of different lengths")
        return Stability(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __neg__(self) -> "Stability":
        return Stability(tuple(-w for w in self.weights))

    def __rmul__(self, k: int) -> "Stability":
        return Stability(tuple(k * w for w in self.weights))

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class Quiver:
    """Finite quiver: ordered vertex names plus an arrow-multiplicity matrix.

    Entry ``arrows[i][j]`` counts arrows from vertex i to vertex j; diagonal
    entries are loops.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        arrows = tuple(tuple(int(a) for a in row) for row in self.arrows)
        n = len(vertices)
        if len(set(vertices)) != n:
            raise ValueError("vertex names must be unique")
        if len(arrows) != n or any(len(row) != n for row in arrows):
            raise ValueError("arrow matrix must be square with side = number of vertices")
        if any(a < 0 for row in arrows for a in row):
            raise ValueError("arrow multiplicities must be nonnegative")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)

    @classmethod
    def from_matrix(cls, arrows, vertices=None) -> "Quiver":
        rows = tuple(tuple(row) for row in arrows)
        if vertices is None:
            vertices = tuple(f"v{i}" for i in range(len(rows)))
        return cls(tuple(vertices), rows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def is_symmetric(self) -> bool:
        return all(
            self.arrows[i][j] == self.arrows[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def unit(self, i: int) -> DimVector:
        return DimVector(tuple(1 if k == i else 0 for k in range(self.n)))

    def zero_vector(self) -> DimVector:
        return DimVector((0,) * self.n)

    def _check(self, d) -> None:
        if len(d) != self.n:
            raise ValueError("vector length does not match the quiver")

    def euler_form(self, d: DimVector, e: DimVector) -> int:
        """Bilinear form sum_i d_i e_i - sum_{arrows i->j} d_i e_j."""
        self._check(d)
        self._check(e)
        lin = sum(a * b for a, b in zip(d, e))
        arr = sum(
            self.arrows[i][j] * d[i] * e[j]
            for i in range(self.n)
            for j in range(self.n)
            if self.arrows[i][j]
        )
        return lin - arr

    def antisym_form(self, d: DimVector, e: DimVector) -> int:
        """Antisymmetrization euler_form(d, e) - euler_form(e, d)."""
        return self.euler_form(d, e) - self.euler_form(e, d)

    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of the form on unit vectors: delta_ij - arrows[i][j]."""
        return tuple(
            tuple((1 if i == j else 0) - self.arrows[i][j] for j in range(self.n))
            for i in range(self.n)
        )

    def skew_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of the antisymmetrized form: arrows[j][i] - arrows[i][j]."""
        return tuple(
            tuple(self.arrows[j][i] - self.arrows[i][j] for j in range(self.n))
            for i in range(self.n)
        )

    def __str__(self) -> str:
        return f"quiver on {self.n} vertices ({', '.join(self.vertices)})"


# ---------------------------------------------------------------------------
# box enumeration


def box_size(d: DimVector) -> int:
    size = 1
    for c in d:
        size *= c + 1
    return size


def check_box(d: DimVector, max_box: int = DEFAULT_MAX_BOX) -> None:
    size = box_size(d)
    if size > max_box:
        raise BoxGuardExceeded(size, max_box)


def box_iter(d: DimVector):
    """All vectors 0 <= e <= d in ascending lexicographic order."""
    for combo in product(*(range(c + 1) for c in d.coords)):
        yield DimVector(combo)


# ---------------------------------------------------------------------------
# slopes, coprimality, normalization


def slope(theta: Stability, d: DimVector) -> Fraction:
    """Stability weight of d divided by its total dimension."""
    if d.is_zero:
        raise ValueError("slope of the zero dimension vector is undefined")
    return Fraction(theta(d), d.total)


def is_indivisible(d: DimVector) -> bool:
    """True when the coordinates of d have greatest common divisor 1."""
    if d.is_zero:
        raise ValueError("zero dimension vector")
    g = 0
    for c in d:
        g = gcd(g, c)
    return g == 1


def is_coprime(theta: Stability, d: DimVector, max_box: int = DEFAULT_MAX_BOX) -> bool:
    """True when no proper nonzero e <= d has the same weight as d.

    Checked by enumerating the full box [0, d].
    """
    if d.is_zero:
        raise ValueError("zero dimension vector")
    check_box(d, max_box)
    target = theta(d)
    for e in box_iter(d):
        if e.is_zero or e == d:
            continue
        if theta(e) == target:
            return False
    return True


def normalize_stability(theta: Stability, d: DimVector) -> Stability:
    """A stability vanishing on d that induces the same semistability order.

    Returns theta unchanged when theta(d) = 0; otherwise returns
    total(d) * theta - theta(d) * dim, where dim is the all-ones covector.
    Slopes transform by mu -> total(d) * mu - theta(d), which preserves
    every slope comparison.
    """
    if d.is_zero:
        raise ValueError("zero dimension vector")
    value = theta(d)
    if value == 0:
        return theta
    t = d.total
    return Stability(tuple(t * w - value for w in theta.weights))


def moduli_dim(q: Quiver, d: DimVector) -> int:
    """Expected dimension 1 - form(d, d) of the stable moduli space.

    Only meaningful when stable representations of dimension vector d
    exist; nonemptiness is not checked here.
    """
    return 1 - q.euler_form(d, d)


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals


def _rational_rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def skew_rank(q: Quiver) -> int:
    """Rank over the rationals of the antisymmetrized form; always even."""
    rows = [[Fraction(x) for x in row] for row in q.skew_matrix()]
    if not rows:
        return 0
    return _rational_rank(rows)


def _kernel_basis(theta: Stability) -> list[tuple[int, ...]]:
    """Integer basis of the rational kernel of a single covector.

    For theta = 0 the kernel is everything and the unit vectors are
    returned; otherwise the basis vectors theta_p e_i - theta_i e_p for
    i != p, where p is the first index with nonzero weight. This is the
    one-row case of fraction-free elimination.
    """
    n = len(theta)
    nonzero = [i for i in range(n) if theta[i] != 0]
    if not nonzero:
        return [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    p = nonzero[0]
    basis = []
    for i in range(n):
        if i == p:
            continue
        vec = [0] * n
        vec[i] = theta[p]
        vec[p] = -theta[i]
        basis.append(tuple(vec))
    return basis


def _skew_value(skew, a, b) -> int:
    return sum(skew[i][j] * a[i] * b[j] for i in range(len(a)) for j in range(len(b)))


def symmetric_on_kernel(q: Quiver, theta: Stability) -> bool:
    """Whether the bilinear form is symmetric on the kernel of theta.

    Computes an exact rational basis of {x : theta(x) = 0} and checks that
    the antisymmetrized form vanishes on all basis pairs.
    """
    q._check(theta)
    skew = q.skew_matrix()
    basis = _kernel_basis(theta)
    for a in basis:
        for b in basis:
            if _skew_value(skew, a, b) != 0:
                return False
    return True


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _gcd_combination(weights: tuple[int, ...]) -> tuple[int, list[int]]:
    """gcd g of the weights and an integer vector x with sum x_i w_i = g."""
    g = 0
    coeffs = [0] * len(weights)
    for i, w in enumerate(weights):
        g2, s, t = _ext_gcd(g, w)
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = g2
    return g, coeffs


def eta_factorization(q: Quiver, theta: Stability) -> tuple[Fraction, ...]:
    """Covector eta splitting the antisymmetrized form through theta.

    Returns rational weights eta with

        antisym_form(d, e) = eta(d) * theta(e) - theta(d) * eta(e)

    for all d, e, which exists exactly when the form is symmetric on the
    kernel of theta. Built from a kernel basis extended by a vector v with
    (theta / gcd)(v) = 1, giving eta(x) = {x, v} / gcd; the result is then
    reduced modulo theta so that the weight at theta's first nonzero
    position is zero, which makes it canonical. The identity fixes eta up
    to adding rational multiples of theta only, so no integer rescaling is
    applied; weights stay exact rationals.
    """
    q._check(theta)
    if not symmetric_on_kernel(q, theta):
        raise PreconditionError(
            "form is not symmetric on the kernel of the stability; no factorization exists"
        )
    n = q.n
    if theta.is_zero:
        # symmetric_on_kernel already forced the whole skew form to vanish
        return (Fraction(0),) * n
    skew = q.skew_matrix()
    g, v = _gcd_combination(theta.weights)
    eta = [Fraction(sum(skew[i][j] * v[j] for j in range(n)), g) for i in range(n)]
    p = next(i for i in range(n) if theta[i] != 0)
    scale = eta[p] / theta[p]
    eta = [x - scale * w for x, w in zip(eta, theta.weights)]
    for i in range(n):
        for j in range(n):
            if skew[i][j] != eta[i] * theta[j] - theta[i] * eta[j]:
                raise InternalCheckError("factorization identity failed on unit vectors")
    return tuple(eta)
