"""
Closed disks in the complex plane.

A disk D = {z : |z - m| <= R} with m = alpha + i*beta is the enclosure
object produced by every estimate in the engine.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np


class ComplexValue(NamedTuple):
    """Finite complex literal, as accepted from files and the command line."""

    re: float
    im: float

    @classmethod
    def parse(cls, text: str) -> "ComplexValue":
        parts = text.split(",")
        if len(parts) == 1:
            parts.append("0")
        if len(parts) != 2:
            raise ValueError(f"Complex literal must be 're,im', got {text!r}")
        value = cls(float(parts[0]), float(parts[1]))
        if not (math.isfinite(value.re) and math.isfinite(value.im)):
            raise ValueError(f"Complex literal is not finite: {text!r}")
        return value

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        center = complex(self.center)
        if not (math.isfinite(center.real) and math.isfinite(center.imag)):
            raise ValueError(f"Disk center must be finite, got {self.center}")
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise ValueError(f"Disk radius must be finite and >= 0, got {self.radius}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def alpha(self) -> float:
        return self.center.real

    @property
    def beta(self) -> float:
        return self.center.imag

    @property
    def top(self) -> float:
        """beta + R, highest imaginary part on the disk."""
        return self.beta + self.radius

    @property
    def bottom(self) -> float:
        """beta - R, lowest imaginary part on the disk."""
        return self.beta - self.radius

    def boundary(self, n: int = 64) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * theta)


def disk_contains(d: Disk, z: complex, tol: float = 0.0) -> bool:
    if not math.isfinite(tol):
        raise ValueError(f"tol must be finite, got {tol}")
    return abs(complex(z) - d.center) <= d.radius + tol


def disk_contains_disk(outer: Disk, inner: Disk, tol: float = 0.0) -> bool:
    return abs(outer.center - inner.center) + inner.radius <= outer.radius + tol


def lens_radius(d1: Disk, d2: Disk) -> float:
    """
    Radius of the smallest disk enclosing d1 ∩ d2.

    Raises ValueError when the disks do not intersect.
    """
    d = abs(d1.center - d2.center)
    r1, r2 = d1.radius, d2.radius
    if d > r1 + r2:
        raise ValueError(f"Disks do not intersect (distance {d:.6g} > {r1 + r2:.6g})")
    if d <= abs(r1 - r2) or d == 0.0:
        return min(r1, r2)
    # a: signed distance from d1's center to the common chord
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    if a < 0.0:
        return r1
    if d - a < 0.0:
        return r2
    return math.sqrt(max(r1 * r1 - a * a, 0.0))


def _in_lens(z: np.ndarray, lens: Tuple[Disk, Disk]) -> np.ndarray:
    d1, d2 = lens
    return (np.abs(z - d1.center) <= d1.radius) & (np.abs(z - d2.center) <= d2.radius)


def lens_overlap_fraction(lens_a: Tuple[Disk, Disk], lens_b: Tuple[Disk, Disk],
                          samples: int = 200) -> float:
    """
    Area of (A ∩ B) / area of (A ∪ B) for two lenses, by sampling a regular
    grid over the bounding box of the smaller disk of each lens.
    """
    boxes = []
    for lens in (lens_a, lens_b):
        small = min(lens, key=lambda disk: disk.radius)
        boxes.append((small.alpha - small.radius, small.alpha + small.radius,
                      small.beta - small.radius, small.beta + small.radius))
    x_lo = min(b[0] for b in boxes)
    x_hi = max(b[1] for b in boxes)
    y_lo = min(b[2] for b in boxes)
    y_hi = max(b[3] for b in boxes)
    xs = np.linspace(x_lo, x_hi, samples)
    ys = np.linspace(y_lo, y_hi, samples)
    X, Y = np.meshgrid(xs, ys)
    z = X + 1j * Y
    in_a = _in_lens(z, lens_a)
    in_b = _in_lens(z, lens_b)
    union = np.count_nonzero(in_a | in_b)
    if union == 0:
        return 0.0
    return float(np.count_nonzero(in_a & in_b)) / float(union)
