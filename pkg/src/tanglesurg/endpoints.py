"""The four boundary points of a tangle and the dihedral symmetries acting on them."""

from __future__ import annotations

from enum import Enum


class EndpointLabel(str, Enum):
    NW = "NW"
    NE = "NE"
    SW = "SW"
    SE = "SE"

    @property
    def coords(self) -> tuple[int, int]:
        return _COORDS[self]

    @classmethod
    def at(cls, x: int, y: int) -> "EndpointLabel":
        return _BY_COORDS[(x, y)]

    def __str__(self):
        return self.value


_COORDS = {
    EndpointLabel.NW: (-1, 1),
    EndpointLabel.NE: (1, 1),
    EndpointLabel.SW: (-1, -1),
    EndpointLabel.SE: (1, -1),
}
_BY_COORDS = {v: k for k, v in _COORDS.items()}

# canonical order used whenever endpoints must be enumerated deterministically
ENDPOINTS = (EndpointLabel.NW, EndpointLabel.NE, EndpointLabel.SW, EndpointLabel.SE)
# counterclockwise order around the boundary square
CYCLIC = (EndpointLabel.NE, EndpointLabel.NW, EndpointLabel.SW, EndpointLabel.SE)
TOP = frozenset({EndpointLabel.NW, EndpointLabel.NE})


def as_label(value) -> EndpointLabel:
    if isinstance(value, EndpointLabel):
        return value
    return EndpointLabel(str(value).upper())


def apply_linear(matrix, label: EndpointLabel) -> EndpointLabel:
    """Image of ``label`` under the integer 2x2 ``matrix`` acting on its coordinates."""
    (a, b), (c, d) = matrix
    x, y = label.coords
    return EndpointLabel.at(a * x + b * y, c * x + d * y)


ROTATE_CCW = ((0, -1), (1, 0))  # (x, y) -> (-y, x)
REFLECT_Y_AXIS = ((-1, 0), (0, 1))  # (x, y) -> (-x, y)
