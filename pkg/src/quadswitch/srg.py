"""The graph on non-quadric points of PG(n,2) and exact SRG verification.

Vertices are the points off the quadric in canonical order; two vertices are
adjacent iff the line joining them is external (all three of x, y, x+y off
the quadric).  Adjacency rows are bit-packed ints, so common-neighbour
counts are popcounts of row ANDs and the whole strong-regularity identity
A^2 = kI + lam*A + mu*(J - I - A) is checked exactly over the integers.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .gf2geom import PARABOLIC, GeometryError, QuadraticForm, nonquadric_points


class NotStronglyRegular(ValueError):
    """Raised with a witness when the SRG identity fails."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Graph:
    """Immutable graph with geometric vertex labels.

    labels[i] is the point represented by vertex i (strictly increasing);
    rows[i] is the adjacency bitmask of vertex i (bit j = edge ij).
    """

    labels: tuple[int, ...]
    rows: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.labels)

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def neighbors(self, i: int) -> list[int]:
        r = self.rows[i]
        return [j for j in range(self.v) if (r >> j) & 1]

    def index_of(self, point: int) -> int:
        """Vertex index of a point label (labels are sorted)."""
        i = bisect.bisect_left(self.labels, point)
        if i == len(self.labels) or self.labels[i] != point:
            raise KeyError(f"point {point} is not a vertex")
        return i

    def check_well_formed(self) -> None:
        v = self.v
        if list(self.labels) != sorted(set(self.labels)):
            raise ValueError("labels must be strictly increasing")
        for i, r in enumerate(self.rows):
            if r >> v:
                raise ValueError(f"row {i} has bits beyond the vertex count")
            if (r >> i) & 1:
                raise ValueError(f"vertex {i} has a loop")
            for j in range(v):
                if ((r >> j) & 1) != ((self.rows[j] >> i) & 1):
                    raise ValueError(f"adjacency not symmetric at ({i},{j})")


def build_gamma(form: QuadraticForm) -> Graph:
    """Graph on the non-quadric points, adjacency = joining line is external."""
    if form.kind == PARABOLIC or form.n % 2 == 0 or form.n < 5:
        raise GeometryError(
            "the external-line graph needs an elliptic or hyperbolic quadric with odd n >= 5"
        )
    labels = nonquadric_points(form)
    index = {p: i for i, p in enumerate(labels)}
    zeros = form.zero_mask
    v = len(labels)
    rows = [0] * v
    for i in range(v):
        x = labels[i]
        for j in range(i + 1, v):
            if not (zeros >> (x ^ labels[j])) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(tuple(labels), tuple(rows))


@dataclass(frozen=True)
class SrgParams:
    """Strongly-regular parameters with the derived spectral data.

    r, s, f, g are None when the eigenvalues are irrational (conference
    graphs); every graph in this package has an integral spectrum.
    """

    v: int
    k: int
    lam: int
    mu: int
    r: int | None = None
    s: int | None = None
    f: int | None = None
    g: int | None = None

    def basic(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def _spectral(v: int, k: int, lam: int, mu: int):
    """Integer eigenvalues and multiplicities of an SRG, or Nones."""
    disc = (lam - mu) * (lam - mu) + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root != disc or (lam - mu + root) % 2 != 0:
        return None, None, None, None
    r = (lam - mu + root) // 2
    s = (lam - mu - root) // 2
    if r == s:
        return None, None, None, None
    fr_num = -(v - 1) * s - k
    gr_num = (v - 1) * r + k
    if fr_num % (r - s) or gr_num % (r - s):
        return None, None, None, None
    return r, s, fr_num // (r - s), gr_num // (r - s)


def verify_srg(g: Graph) -> SrgParams:
    """Exact strong-regularity check; returns the parameters or raises.

    Verifies that every vertex has degree k and every pair of distinct
    vertices has lam (adjacent) or mu (non-adjacent) common neighbours.
    """
    v = g.v
    if v < 2:
        raise NotStronglyRegular("need at least two vertices")
    k = g.rows[0].bit_count()
    for i in range(1, v):
        if g.rows[i].bit_count() != k:
            raise NotStronglyRegular(
                f"not regular: deg({0}) = {k} but deg({i}) = {g.rows[i].bit_count()}",
                witness=(0, i),
            )
    if k == 0 or k == v - 1:
        raise NotStronglyRegular("complete and empty graphs are excluded")

    lam = mu = None
    for i in range(v):
        ri = g.rows[i]
        for j in range(i + 1, v):
            common = (ri & g.rows[j]).bit_count()
            if (ri >> j) & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    raise NotStronglyRegular(
                        f"adjacent pair ({i},{j}) has {common} common neighbours, expected {lam}",
                        witness=(i, j),
                    )
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    raise NotStronglyRegular(
                        f"non-adjacent pair ({i},{j}) has {common} common neighbours, expected {mu}",
                        witness=(i, j),
                    )
    if lam is None or mu is None:
        raise NotStronglyRegular("graph is disconnected from one of the pair classes")
    if k * (k - lam - 1) != (v - k - 1) * mu:
        raise NotStronglyRegular("parameter identity k(k-lam-1) = (v-k-1)mu fails")
    r, s, f, gg = _spectral(v, k, lam, mu)
    if r is not None:
        if 1 + f + gg != v or k + f * r + gg * s != 0:
            raise NotStronglyRegular("spectral multiplicities are inconsistent")
    return SrgParams(v, k, lam, mu, r, s, f, gg)


def expected_params(n: int, kind: str) -> SrgParams:
    """Closed-form parameters of the quadric graph, including the spectrum."""
    if n % 2 == 0 or n < 5:
        raise GeometryError(f"quadric graphs need odd n >= 5, got n={n}")
    h = 1 << ((n - 1) // 2)  # 2^((n-1)/2)
    hh = h >> 1  # 2^((n-3)/2)
    third = ((1 << (n + 1)) - 4) // 3
    other = ((1 << n) + 1) // 3
    if kind == "elliptic":
        return SrgParams(
            v=(1 << n) + h,
            k=(1 << (n - 1)) + h,
            lam=(1 << (n - 2)) + hh,
            mu=(1 << (n - 2)) + h,
            r=hh,
            s=-h,
            f=third,
            g=other + h,
        )
    if kind == "hyperbolic":
        return SrgParams(
            v=(1 << n) - h,
            k=(1 << (n - 1)) - h,
            lam=(1 << (n - 2)) - hh,
            mu=(1 << (n - 2)) - h,
            r=h,
            s=-hh,
            f=other - h,
            g=third,
        )
    raise GeometryError(f"no parameter table for kind {kind!r}")
