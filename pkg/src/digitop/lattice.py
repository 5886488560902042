"""Points of Z^d, the c_u adjacency family, and the c_1 boundary operator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Set, Tuple

Point = Tuple[int, ...]

# Construction guard: coordinates this small can never overflow the
# difference arithmetic used by adjacency tests.
MAX_COORD = 2**30


class DimensionMismatchError(ValueError):
    """Raised when two points (or a point and an image) disagree on dimension."""


def check_point(p: Sequence[int], d: int | None = None) -> Point:
    """Validate and normalize a lattice point to a tuple of ints."""
    pt = tuple(int(c) for c in p)
    if d is not None and len(pt) != d:
        raise DimensionMismatchError(f"expected dimension {d}, got point {pt!r}")
    if any(abs(c) > MAX_COORD for c in pt):
        raise ValueError(f"coordinate magnitude exceeds {MAX_COORD}: {pt!r}")
    return pt


@dataclass(frozen=True)
class CuSpec:
    """The c_u adjacency relation on Z^d (1 <= u <= d)."""

    u: int
    d: int

    def __post_init__(self) -> None:
        if not 1 <= self.u <= self.d:
            raise ValueError(f"require 1 <= u <= d, got u={self.u}, d={self.d}")


def cu_adjacent(p: Sequence[int], q: Sequence[int], u: int | CuSpec) -> bool:
    """True iff p != q, every coordinate differs by 0 or 1, and the number of
    coordinates differing by 1 is between 1 and u."""
    if isinstance(u, CuSpec):
        d: int | None = u.d
        u = u.u
    else:
        d = None
    pt = check_point(p, d)
    qt = check_point(q, d)
    if len(pt) != len(qt):
        raise DimensionMismatchError(f"points {pt!r} and {qt!r} differ in dimension")
    if not 1 <= u <= len(pt):
        raise ValueError(f"require 1 <= u <= {len(pt)}, got u={u}")
    changed = 0
    for a, b in zip(pt, qt):
        diff = abs(a - b)
        if diff == 1:
            changed += 1
        elif diff != 0:
            return False
    return 1 <= changed <= u


def projection(p: Sequence[int], i: int) -> int:
    """The i-th coordinate of p, 1-based."""
    pt = check_point(p)
    if not 1 <= i <= len(pt):
        raise IndexError(f"projection index {i} out of range for dimension {len(pt)}")
    return pt[i - 1]


def c1_neighbors(p: Point) -> Iterator[Point]:
    """The 2d lattice points c_1-adjacent to p."""
    for i, c in enumerate(p):
        yield p[:i] + (c - 1,) + p[i + 1 :]
        yield p[:i] + (c + 1,) + p[i + 1 :]


def c1_boundary(points: Iterable[Sequence[int]], d: int) -> Set[Point]:
    """Members of the set having a c_1-neighbor in Z^d outside the set."""
    pts = {check_point(p, d) for p in points}
    return {p for p in pts if any(q not in pts for q in c1_neighbors(p))}
