"""Builders for the catalog of example families.

Each family returns the quiver, dimension vector, stability and (when
the family fixes one) a deformed stability. The families cover classical
quotients: determinantal varieties of square matrices, ordered point
configurations in projective space, adjoint quotients by Levi subgroups,
graded linear maps up to block base change, rank-one matrix varieties,
and the one-dimensional-vertices construction that makes any moduli
problem toric.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

from .core import DimVector, Quiver, Stability
from .strata import LunaType, local_quiver


class QuiverSetup(NamedTuple):
    quiver: Quiver
    dim_vector: DimVector
    stability: Stability
    deformed: Stability | None


def determinantal(m: int, r: int) -> QuiverSetup:
    """Two vertices, m arrows each way; quotient = m x m matrices of rank <= r.

    Dimension vector (1, r), trivial stability, deformed stability
    (r, -1), valid for 1 <= r <= m.
    """
    m, r = int(m), int(r)
    if not 1 <= r <= m:
        raise ValueError("determinantal needs 1 <= r <= m")
    quiver = Quiver(("i", "j"), ((0, m), (m, 0)))
    return QuiverSetup(
        quiver,
        DimVector((1, r)),
        Stability((0, 0)),
        Stability((r, -1)),
    )


def point_configurations(m: int, d: int) -> QuiverSetup:
    """Star quiver with m sources; quotient = ordered m-tuples of points in P^(d-1).

    Dimension vector (1, ..., 1, d), the symmetric stability
    d * sum(sources) - m * sink, and the deformed stability
    (d^2 + d, d^2, ..., d^2, -(m d + 1)) breaking the symmetry at the
    first source. Needs m >= 1 and d >= 2.
    """
    m, d = int(m), int(d)
    if m < 1 or d < 2:
        raise ValueError("point_configurations needs m >= 1 and d >= 2")
    vertices = tuple(f"i{k + 1}" for k in range(m)) + ("j",)
    arrows = [[0] * (m + 1) for _ in range(m + 1)]
    for k in range(m):
        arrows[k][m] = 1
    theta = Stability((d,) * m + (-m,))
    deformed = Stability((d * d + d,) + (d * d,) * (m - 1) + (-(m * d + 1),))
    return QuiverSetup(
        Quiver(vertices, tuple(tuple(row) for row in arrows)),
        DimVector((1,) * m + (d,)),
        theta,
        deformed,
    )


def levi_adjoint(*dims: int) -> QuiverSetup:
    """Complete quiver with loops; quotient of square matrices by a Levi.

    A single argument l means l vertices with the all-ones dimension
    vector (the torus case), and comes with the deformed stability
    (l - 1, -1, ..., -1). Several arguments are taken as the block sizes
    themselves; no deformed stability is attached then.
    """
    if len(dims) == 1:
        l = int(dims[0])
        if l < 1:
            raise ValueError("levi_adjoint needs at least one vertex")
        coords = (1,) * l
        deformed = Stability((l - 1,) + (-1,) * (l - 1)) if l > 1 else Stability((0,))
    else:
        coords = tuple(int(x) for x in dims)
        if not coords or any(c < 1 for c in coords):
            raise ValueError("block sizes must be positive")
        l = len(coords)
        deformed = None
    vertices = tuple(f"i{p + 1}" for p in range(l))
    arrows = tuple(tuple(1 for _ in range(l)) for _ in range(l))
    return QuiverSetup(
        Quiver(vertices, arrows),
        DimVector(coords),
        Stability((0,) * l),
        deformed,
    )


def complete_bipartite(source_dims: Sequence[int], sink_dims: Sequence[int]) -> QuiverSetup:
    """Complete bipartite quiver; graded linear maps up to block base change.

    Stability gives every source the total sink dimension and every sink
    minus the total source dimension, which vanishes on the dimension
    vector. No preferred deformed stability.
    """
    vs = tuple(int(x) for x in source_dims)
    ws = tuple(int(x) for x in sink_dims)
    if not vs or not ws or any(c < 1 for c in vs + ws):
        raise ValueError("block dimensions must be positive")
    k, l = len(vs), len(ws)
    vertices = tuple(f"i{p + 1}" for p in range(k)) + tuple(f"j{qq + 1}" for qq in range(l))
    arrows = [[0] * (k + l) for _ in range(k + l)]
    for p in range(k):
        for qq in range(l):
            arrows[p][k + qq] = 1
    dim_v = sum(vs)
    dim_w = sum(ws)
    theta = Stability((dim_w,) * k + (-dim_v,) * l)
    return QuiverSetup(
        Quiver(vertices, tuple(tuple(row) for row in arrows)),
        DimVector(vs + ws),
        theta,
        None,
    )


def kronecker_general(m: int, n: int) -> QuiverSetup:
    """Two vertices, m arrows one way and n the other, d = (1, 1).

    The quotient is the variety of m x n matrices of rank at most one;
    trivial stability with deformed stability (1, -1).
    """
    m, n = int(m), int(n)
    if m < 0 or n < 0:
        raise ValueError("arrow counts must be nonnegative")
    quiver = Quiver(("i", "j"), ((0, m), (n, 0)))
    return QuiverSetup(quiver, DimVector((1, 1)), Stability((0, 0)), Stability((1, -1)))


#: CLI-addressable families: name -> (builder over an integer list, parameter doc).
FAMILIES = {
    "determinantal": (
        lambda params: determinantal(*params),
        "m,r with 1 <= r <= m",
    ),
    "points": (
        lambda params: point_configurations(*params),
        "m,d with m >= 1 and d >= 2",
    ),
    "levi_adjoint": (
        lambda params: levi_adjoint(*params),
        "l (torus case, all-ones), or block sizes d1,...,dl",
    ),
    "bipartite": (
        lambda params: _bipartite_from_params(params),
        "k,l,v1,...,vk,w1,...,wl (block counts then block sizes)",
    ),
    "kronecker_general": (
        lambda params: kronecker_general(*params),
        "m,n (arrow counts in the two directions)",
    ),
}


def _bipartite_from_params(params: Sequence[int]) -> QuiverSetup:
    params = [int(x) for x in params]
    if len(params) < 2:
        raise ValueError("bipartite needs k,l followed by k + l block sizes")
    k, l = params[0], params[1]
    if len(params) != 2 + k + l:
        raise ValueError(f"bipartite with k={k}, l={l} needs exactly {k + l} block sizes")
    return complete_bipartite(params[2 : 2 + k], params[2 + k :])


def build_example(family: str, params: Sequence[int]) -> QuiverSetup:
    """Build a catalog example from its family name and integer parameters.

    The one-dimensional-vertices construction is not an integer-list
    family; apply abelianized_quiver to any setup (the command line
    exposes this as a flag).
    """
    if family not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ValueError(f"unknown example family {family!r}; known families: {known}")
    builder, _ = FAMILIES[family]
    return builder(list(params))


def abelianized_quiver(
    q: Quiver, d: DimVector, theta: Stability
) -> tuple[Quiver, DimVector, Stability]:
    """Split every vertex into d_i copies, replicating arrows between copies.

    The new quiver has vertices i_k for k = 1..d_i, one arrow i_k -> j_l
    for every arrow i -> j and every pair of copies, the all-ones
    dimension vector and the stability repeating theta(i) on every copy.
    Moduli spaces for the result are toric.
    """
    q._check(d)
    if d.is_zero:
        raise ValueError("zero dimension vector")
    index: list[tuple[int, int]] = []
    names: list[str] = []
    for i in range(q.n):
        for k in range(d[i]):
            index.append((i, k))
            names.append(f"{q.vertices[i]}_{k + 1}")
    size = len(index)
    arrows = [[0] * size for _ in range(size)]
    for a, (i, _) in enumerate(index):
        for b, (j, _) in enumerate(index):
            arrows[a][b] = q.arrows[i][j]
    weights = tuple(theta[i] for i, _ in index)
    return (
        Quiver(tuple(names), tuple(tuple(row) for row in arrows)),
        DimVector((1,) * size),
        Stability(weights),
    )


# ---------------------------------------------------------------------------
# point configurations: local data of a decomposition type


@dataclass(frozen=True)
class MarkedPartition:
    """Partition of a positive integer with one distinguished part."""

    parts: tuple[int, ...]
    marked: int

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("parts must be positive integers")
        if not 0 <= self.marked < len(parts):
            raise ValueError("marked index out of range")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)


def _point_config_parts(m: int, d: int, lam: MarkedPartition) -> list[DimVector]:
    g = gcd(d, m)
    if lam.total != g:
        raise ValueError(f"marked partition must sum to gcd(d, m) = {g}")
    e = d // g
    n = m // g
    # consecutive blocks of sources, the marked part first
    order = [lam.marked] + [i for i in range(len(lam.parts)) if i != lam.marked]
    parts: list[DimVector] = []
    start = 0
    for idx in order:
        lam_k = lam.parts[idx]
        width = n * lam_k
        coords = [0] * (m + 1)
        for src in range(start, start + width):
            coords[src] = 1
        coords[m] = e * lam_k
        parts.append(DimVector(tuple(coords)))
        start += width
    return parts


def point_config_local_data(
    m: int, d: int, lam: MarkedPartition
) -> tuple[Quiver, DimVector, Stability]:
    """Local quiver of the point-configuration stratum of a marked partition.

    The decomposition type groups the sources into consecutive blocks of
    sizes (m / g) * part, with the marked part first (it contains the
    distinguished source that the deformed stability favors), and gives
    the sink (d / g) * part in each summand. The local data is computed
    from the general decomposition-type construction, not from a closed
    form; see point_config_closed_form for the cross-check.
    """
    m, d = int(m), int(d)
    if m < 1 or d < 2:
        raise ValueError("needs m >= 1 and d >= 2")
    setup = point_configurations(m, d)
    parts = _point_config_parts(m, d, lam)
    xi = LunaType(tuple((p, 1) for p in parts))
    return local_quiver(setup.quiver, xi, setup.deformed)


def point_config_closed_form(m: int, d: int, lam: MarkedPartition) -> dict:
    """Closed-form cross-check for point_config_local_data.

    With g = gcd(d, m), e = d/g, n = m/g, the construction gives
    e*(n - e)*part_p*part_q arrows between distinct local vertices and
    stability d - e*part on the marked vertex, -e*part on the others.
    The sign-flipped arrow count e*(e - n)*part_p*part_q is reported as
    well: it is negative exactly when n > e, so it cannot be an arrow
    count in that regime, and the comparison flags match accordingly.
    """
    m, d = int(m), int(d)
    quiver, dim, stab = point_config_local_data(m, d, lam)
    g = gcd(d, m)
    e = d // g
    n = m // g
    parts_in_order = [lam.parts[lam.marked]] + [
        p for i, p in enumerate(lam.parts) if i != lam.marked
    ]
    s = len(parts_in_order)
    offdiag = [
        [e * (n - e) * parts_in_order[p] * parts_in_order[qq] if p != qq else None for qq in range(s)]
        for p in range(s)
    ]
    offdiag_alt = [
        [e * (e - n) * parts_in_order[p] * parts_in_order[qq] if p != qq else None for qq in range(s)]
        for p in range(s)
    ]
    stab_expected = [d - e * parts_in_order[0]] + [-e * p for p in parts_in_order[1:]]
    offdiag_matches = all(
        quiver.arrows[p][qq] == offdiag[p][qq]
        for p in range(s)
        for qq in range(s)
        if p != qq
    )
    alt_matches = all(
        quiver.arrows[p][qq] == offdiag_alt[p][qq]
        for p in range(s)
        for qq in range(s)
        if p != qq
    )
    return {
        "arrows": quiver.arrows,
        "stability": tuple(stab.weights),
        "offdiag_closed_form": offdiag,
        "offdiag_matches": offdiag_matches,
        "offdiag_alternate_sign": offdiag_alt,
        "alternate_sign_matches": alt_matches,
        "stability_closed_form": tuple(stab_expected),
        "stability_matches": tuple(stab.weights) == tuple(stab_expected),
    }


# ---------------------------------------------------------------------------
# rank-one matrices: exact smallness in closed form


@dataclass(frozen=True)
class RankOneSmallness:
    """Exact fibre and codimension data for the rank-one matrix family."""

    m: int
    n: int
    fiber_dim: int
    stratum_codim: int
    small: bool
    note: str


def rank_one_smallness_report(m: int, n: int) -> RankOneSmallness:
    """Exact smallness verdict for rank <= 1 matrices in M_{m x n}.

    For the two-vertex quiver with m and n arrows, d = (1, 1) and deformed
    stability (1, -1), the fibre over the cone point is a projective space
    of dimension m - 1 while the matrix variety has dimension m + n - 1.
    The desingularization is small exactly when m <= n.
    """
    m, n = int(m), int(n)
    if m < 1 or n < 1:
        raise ValueError("needs m, n >= 1")
    fiber = m - 1
    codim = m + n - 1
    small = 2 * fiber < codim
    assert small == (m <= n)
    note = "small (m <= n)" if small else "not small (m > n)"
    return RankOneSmallness(m, n, fiber, codim, small, note)
