"""Builders for the digital images under study.

Every builder returns a NamedComplex: the image plus a dictionary of named
vertex subsets (poles, levels, lateral edges, faces, boundary, ...).  The
pyramid family lives in Z^3 under c_3 with apex U = (0, 0, n); cones and
suspensions are abstract (their fresh poles carry labels but no coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .graph import DigitalImage
from .lattice import Point, c1_boundary


@dataclass(frozen=True)
class NamedComplex:
    """A constructed image together with its named vertex subsets."""

    image: DigitalImage
    named_sets: Dict[str, FrozenSet[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, members in self.named_sets.items():
            for x in members:
                self.image.check_vertex(x)

    def set_named(self, name: str) -> FrozenSet[int]:
        if name not in self.named_sets:
            raise KeyError(f"no named set {name!r}")
        return self.named_sets[name]


def _from_points(
    points: Iterable[Sequence[int]], u: int
) -> Tuple[DigitalImage, Dict[Point, int]]:
    pts = sorted(tuple(int(c) for c in p) for p in points)
    image = DigitalImage.from_points(pts, u=u)
    return image, {p: i for i, p in enumerate(pts)}


def _ids(index: Dict[Point, int], points: Iterable[Point]) -> FrozenSet[int]:
    return frozenset(index[p] for p in points)


def _boundary_set(index: Dict[Point, int], d: int) -> FrozenSet[int]:
    return frozenset(index[p] for p in c1_boundary(index.keys(), d))


def interval(a: int, b: int) -> NamedComplex:
    """The digital interval [a, b]_Z with c_1 adjacency."""
    if a > b:
        raise ValueError(f"require a <= b, got [{a}, {b}]")
    image, index = _from_points([(k,) for k in range(a, b + 1)], u=1)
    return NamedComplex(
        image,
        {
            "corners": _ids(index, [(a,), (b,)]),
            "Bd": _boundary_set(index, 1),
        },
    )


def box(extents: Sequence[int], u: int) -> NamedComplex:
    """The box Prod_i [0, m_i]_Z with c_u adjacency, corners and Bd named."""
    if not extents or any(m < 1 for m in extents):
        raise ValueError("extents must be positive integers")
    d = len(extents)
    if not 1 <= u <= d:
        raise ValueError(f"require 1 <= u <= {d}, got u={u}")
    points = list(product(*[range(m + 1) for m in extents]))
    image, index = _from_points(points, u=u)
    corners = _ids(index, product(*[(0, m) for m in extents]))
    return NamedComplex(image, {"corners": corners, "Bd": _boundary_set(index, d)})


def simple_closed_curve(m: int) -> NamedComplex:
    """An abstract digital simple closed curve on m vertices (m >= 4)."""
    if m < 4:
        raise ValueError(
            "a simple closed curve needs at least 4 points for its "
            "neighborhood condition to hold with distinct neighbors"
        )
    edges = [(i, (i + 1) % m) for i in range(m)]
    return NamedComplex(DigitalImage(m, edges), {})


def cone(base: DigitalImage) -> NamedComplex:
    """The cone over base: one fresh apex U adjacent to every base vertex."""
    if base.n == 0:
        raise ValueError("cone requires a nonempty base")
    n = base.n
    edges = list(base.edges) + [(x, n) for x in range(n)]
    image = DigitalImage(
        n + 1,
        edges,
        coords=base.coords + (None,),
        labels=base.labels + ("U",),
    )
    return NamedComplex(
        image, {"U": frozenset({n}), "X_base": frozenset(range(n))}
    )


def suspension(base: DigitalImage) -> NamedComplex:
    """The suspension over base: fresh non-adjacent poles U and L, each
    adjacent to every base vertex."""
    if base.n == 0:
        raise ValueError("suspension requires a nonempty base")
    n = base.n
    edges = list(base.edges) + [(x, n) for x in range(n)] + [(x, n + 1) for x in range(n)]
    image = DigitalImage(
        n + 2,
        edges,
        coords=base.coords + (None, None),
        labels=base.labels + ("U", "L"),
    )
    return NamedComplex(
        image,
        {
            "U": frozenset({n}),
            "L": frozenset({n + 1}),
            "X_base": frozenset(range(n)),
        },
    )


# -- pyramid family ---------------------------------------------------------


def _shell_level(i: int, z: int) -> List[Point]:
    """The square ring of side 2i centered on the z-axis at height z."""
    if i == 0:
        return [(0, 0, z)]
    ring = set()
    for a in range(-i, i + 1):
        ring.update({(a, -i, z), (a, i, z), (-i, a, z), (i, a, z)})
    return sorted(ring)


def _solid_level(i: int, z: int) -> List[Point]:
    return [(a, b, z) for a in range(-i, i + 1) for b in range(-i, i + 1)]


def _pyramid_named(index: Dict[Point, int], n: int) -> Dict[str, FrozenSet[int]]:
    """Named subsets shared by the pyramid family (upper half only)."""
    named: Dict[str, FrozenSet[int]] = {}
    named["U"] = _ids(index, [(0, 0, n)])
    for i in range(n + 1):
        z = n - i
        level = [p for p in _shell_level(i, z) if p in index]
        named[f"T_{i}"] = _ids(index, level)
        named[f"T_{i}_prime"] = _ids(
            index, [p for p in [(-i, -i, z), (i, -i, z), (i, i, z), (-i, i, z)] if p in index]
        )
    named["LR"] = _ids(index, [(-i, -i, n - i) for i in range(n + 1)])
    named["LF"] = _ids(index, [(i, -i, n - i) for i in range(n + 1)])
    named["RF"] = _ids(index, [(i, i, n - i) for i in range(n + 1)])
    named["RR"] = _ids(index, [(-i, i, n - i) for i in range(n + 1)])
    named["BL"] = _ids(index, [(a, -n, 0) for a in range(-n, n + 1)])
    named["BF"] = _ids(index, [(n, b, 0) for b in range(-n, n + 1)])
    named["BR"] = _ids(index, [(a, n, 0) for a in range(-n, n + 1)])
    named["BB"] = _ids(index, [(-n, b, 0) for b in range(-n, n + 1)])
    # Faces are the digital triangles bounded by one base edge and two
    # lateral edges; shared lateral edges belong to both adjacent faces.
    named["L"] = _ids(
        index, [(a, -i, n - i) for i in range(n + 1) for a in range(-i, i + 1)]
    )
    named["F"] = _ids(
        index, [(i, b, n - i) for i in range(n + 1) for b in range(-i, i + 1)]
    )
    named["R"] = _ids(
        index, [(a, i, n - i) for i in range(n + 1) for a in range(-i, i + 1)]
    )
    named["B"] = _ids(
        index, [(-i, b, n - i) for i in range(n + 1) for b in range(-i, i + 1)]
    )
    return named


def pyramid(n: int) -> NamedComplex:
    """The hollow pyramid: union of square rings T_i at heights n-i, c_3."""
    if n < 1:
        raise ValueError("pyramid requires n >= 1")
    points: List[Point] = []
    for i in range(n + 1):
        points.extend(_shell_level(i, n - i))
    image, index = _from_points(points, u=3)
    named = _pyramid_named(index, n)
    named["Bd"] = _boundary_set(index, 3)
    return NamedComplex(image, named)


def solid_pyramid(n: int) -> NamedComplex:
    """The solid pyramid: union of filled squares W_i at heights n-i, c_3."""
    if n < 1:
        raise ValueError("solid pyramid requires n >= 1")
    points: List[Point] = []
    for i in range(n + 1):
        points.extend(_solid_level(i, n - i))
    image, index = _from_points(points, u=3)
    named = _pyramid_named(index, n)
    for i in range(n + 1):
        named[f"W_{i}"] = _ids(index, _solid_level(i, n - i))
    named["Bd"] = _boundary_set(index, 3)
    return NamedComplex(image, named)


def _mirrored(points: Iterable[Point]) -> List[Point]:
    return [(a, b, -c) for (a, b, c) in points]


def bipyramid(n: int) -> NamedComplex:
    """Two hollow pyramids glued along the base ring T_n, with poles U, L."""
    if n < 1:
        raise ValueError("bipyramid requires n >= 1")
    upper: List[Point] = []
    for i in range(n + 1):
        upper.extend(_shell_level(i, n - i))
    points = sorted(set(upper) | set(_mirrored(upper)))
    image, index = _from_points(points, u=3)
    named = {
        "U": _ids(index, [(0, 0, n)]),
        "L": _ids(index, [(0, 0, -n)]),
        f"T_{n}": _ids(index, _shell_level(n, 0)),
        "upper": _ids(index, upper),
        "lower": _ids(index, _mirrored(upper)),
        "Bd": _boundary_set(index, 3),
    }
    return NamedComplex(image, named)


def solid_bipyramid(n: int) -> NamedComplex:
    """Two solid pyramids glued along the base square W_n, with poles U, L."""
    if n < 1:
        raise ValueError("solid bipyramid requires n >= 1")
    upper: List[Point] = []
    for i in range(n + 1):
        upper.extend(_solid_level(i, n - i))
    points = sorted(set(upper) | set(_mirrored(upper)))
    image, index = _from_points(points, u=3)
    named = {
        "U": _ids(index, [(0, 0, n)]),
        "L": _ids(index, [(0, 0, -n)]),
        f"T_{n}": _ids(index, _shell_level(n, 0)),
        f"W_{n}": _ids(index, _solid_level(n, 0)),
        "upper": _ids(index, upper),
        "lower": _ids(index, _mirrored(upper)),
        "Bd": _boundary_set(index, 3),
    }
    return NamedComplex(image, named)


def satisfies_not_small(image: DigitalImage) -> bool:
    """True iff no vertex's closed neighborhood covers the whole image."""
    full = (1 << image.n) - 1
    return all(
        image.closed_neighborhood_bits(x) != full for x in range(image.n)
    ) if image.n else True
