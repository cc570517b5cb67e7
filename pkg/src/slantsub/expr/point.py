from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElem


@dataclass(frozen=True)
class Point:
    """Chart coordinates tagged with an evaluation mode.

    ``exact`` points hold Fractions (or FieldElems) and evaluate to exact
    field elements; ``float`` points evaluate in IEEE double.
    """

    coords: tuple
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.mode == "exact":
            coords = tuple(
                x if isinstance(x, (Fraction, FieldElem)) else Fraction(x) for x in self.coords
            )
        else:
            coords = tuple(float(x) for x in self.coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def exact(cls, *coords) -> "Point":
        return cls(tuple(coords), "exact")

    def to_float(self) -> "Point":
        return Point(tuple(float(x) for x in self.coords), "float")

    def shifted(self, axis: int, h: float) -> "Point":
        c = list(self.to_float().coords)
        c[axis] += h
        return Point(tuple(c), "float")

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"
