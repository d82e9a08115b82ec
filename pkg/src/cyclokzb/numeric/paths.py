"""Polyline integration paths with tangential endpoint data."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TangentData:
    """Tangential base-point datum at one end of a path.

    ``direction`` is the tangent vector (None picks the adjacent-vertex
    default); ``regularized`` marks the endpoint as a tangential base
    point at which divergent iterated integrals may be regularized.
    """

    direction: complex | None = None
    regularized: bool = False


@dataclass(frozen=True)
class PathSpec:
    """A piecewise-linear path with optional tangential data at the ends."""

    vertices: tuple
    start: TangentData | None = None
    end: TangentData | None = None

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("a path needs at least two vertices")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def start_anchor(self):
        return self.vertices[0]

    @property
    def end_anchor(self):
        return self.vertices[-1]

    def start_direction(self):
        if self.start is not None and self.start.direction is not None:
            return self.start.direction
        return None  # adjacent-vertex default, resolved by the integrator

    def end_direction(self):
        if self.end is not None and self.end.direction is not None:
            return self.end.direction
        return None

    def start_regularized(self) -> bool:
        return self.start is not None and self.start.regularized

    def end_regularized(self) -> bool:
        return self.end is not None and self.end.regularized

    def reversed(self) -> "PathSpec":
        return PathSpec(self.vertices[::-1], start=self.end, end=self.start)

    def subpath(self, i: int, j: int) -> "PathSpec":
        """Vertices i..j inclusive; tangential data survives only at cut ends."""
        verts = self.vertices[i : j + 1]
        return PathSpec(
            verts,
            start=self.start if i == 0 else None,
            end=self.end if j == len(self.vertices) - 1 else None,
        )


def dch_path() -> PathSpec:
    """The straight path from 1 to 0 with unit tangential data at both ends."""
    return PathSpec(
        (1, 0),
        start=TangentData(-1, regularized=True),
        end=TangentData(1, regularized=True),
    )
