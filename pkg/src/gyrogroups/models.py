"""Continuous gyrogroups: Möbius addition on the disk and ball, Einstein addition.

All operations accept single points or batches (leading axes broadcast).
Disk points are complex numbers; ball points are real arrays whose last axis
holds the coordinates. Equality is an absolute per-coordinate tolerance owned
by the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import GyrogroupOps
from .errors import DomainError, PreconditionError, SingularityError

__all__ = [
    "EinsteinBall",
    "ModelConfig",
    "MobiusBall",
    "MobiusDisk",
    "SuiteReport",
    "axiom_suite",
    "disk_to_plane",
    "einstein_add",
    "gamma_factor",
    "model_gyr",
    "mobius_ball_add",
    "mobius_disk_add",
    "mobius_disk_gyr",
    "plane_to_disk",
    "sample_points",
]

_SINGULAR = 1e-15


def _as_complex(z) -> np.ndarray | complex:
    if isinstance(z, (tuple, list)) and len(z) == 2 and not isinstance(z[0], (tuple, list)):
        return complex(z[0], z[1])
    return z


def _check_disk(*points) -> None:
    for z in points:
        if np.any(np.abs(z) >= 1.0):
            raise DomainError("point lies on or outside the unit circle")


def _check_ball(radius: float, *points) -> None:
    for v in points:
        if np.any(np.linalg.norm(v, axis=-1) >= radius):
            raise DomainError(f"point lies on or outside the ball of radius {radius}")


def _check_dims(u, v) -> None:
    if np.shape(u)[-1] != np.shape(v)[-1]:
        raise PreconditionError(f"dimension mismatch: {np.shape(u)[-1]} vs {np.shape(v)[-1]}")


def mobius_disk_add(a, b):
    """``(a + b) / (1 + conj(a) b)`` on the open unit disk."""
    a, b = _as_complex(a), _as_complex(b)
    _check_disk(a, b)
    s = a + b
    # 1 + conj(a) b rewritten so no O(1) terms cancel when b is close to -a
    den = (1 - np.abs(a) ** 2) + np.conj(a) * s
    if np.any(np.abs(den) < _SINGULAR):
        raise SingularityError("Möbius denominator vanishes")
    return s / den


def mobius_disk_gyr(a, b, z):
    """Closed-form Möbius gyration ``(1 + a conj(b)) / (1 + conj(a) b) * z``."""
    a, b, z = _as_complex(a), _as_complex(b), _as_complex(z)
    _check_disk(a, b, z)
    den = 1 + np.conj(a) * b
    if np.any(np.abs(den) < _SINGULAR):
        raise SingularityError("Möbius denominator vanishes")
    return (1 + a * np.conj(b)) / den * z


def mobius_ball_add(u, v):
    """Möbius addition in the open unit ball of R^d."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    _check_dims(u, v)
    _check_ball(1.0, u, v)
    # With w = u + v: 1 + 2<u,v> + |v|^2 = |w|^2 + (1 - |u|^2) and
    # 1 + 2<u,v> + |u|^2|v|^2 = |w|^2 + (1 - |u|^2)(1 - |v|^2); every term is
    # nonnegative, so nothing cancels near u = -v.
    w = u + v
    ww = np.sum(w * w, axis=-1, keepdims=True)
    du = 1 - np.sum(u * u, axis=-1, keepdims=True)
    dv = 1 - np.sum(v * v, axis=-1, keepdims=True)
    den = ww + du * dv
    if np.any(np.abs(den) < _SINGULAR):
        raise SingularityError("Möbius denominator vanishes")
    return (ww * u + du * w) / den


def gamma_factor(u, c: float = 1.0):
    """Lorentz factor ``1 / sqrt(1 - |u|^2 / c^2)``."""
    u = np.asarray(u, dtype=float)
    _check_ball(c, u)
    return 1.0 / np.sqrt(1.0 - np.sum(u * u, axis=-1) / c**2)


def einstein_add(u, v, c: float = 1.0):
    """Einstein velocity addition in the ball of radius ``c``."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    _check_dims(u, v)
    _check_ball(c, u, v)
    g = gamma_factor(u, c)[..., None]
    # Same rearrangement as for Möbius addition, with w = u + v:
    #   1 + <u,v>/c^2 = (|w|^2/c^2 + (1 - |u|^2/c^2) + (1 - |v|^2/c^2)) / 2
    #   u + v/g + g/(1+g) <u,v> u/c^2 = w + g/((1+g) c^2) (<u,w> u - |u|^2 w)
    w = u + v
    uu = np.sum(u * u, axis=-1, keepdims=True)
    ww = np.sum(w * w, axis=-1, keepdims=True)
    vv = np.sum(v * v, axis=-1, keepdims=True)
    den = (ww / c**2 + (1 - uu / c**2) + (1 - vv / c**2)) / 2
    if np.any(np.abs(den) < _SINGULAR):
        raise SingularityError("Einstein denominator vanishes")
    uw = np.sum(u * w, axis=-1, keepdims=True)
    return (w + (g / ((1 + g) * c**2)) * (uw * u - uu * w)) / den


def disk_to_plane(z) -> np.ndarray:
    z = np.asarray(z)
    return np.stack([z.real, z.imag], axis=-1)


def plane_to_disk(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v[..., 0] + 1j * v[..., 1]


@dataclass(frozen=True)
class ModelConfig:
    """Dimension, carrier radius and absolute comparison tolerance of a model."""

    dimension: int
    radius: float
    tolerance: float

    def __post_init__(self):
        if self.dimension < 1:
            raise PreconditionError("dimension must be at least 1")
        if not self.radius > 0:
            raise PreconditionError("radius must be positive")
        if not self.tolerance > 0:
            raise PreconditionError("tolerance must be positive")


class _Model(GyrogroupOps):
    name = "model"
    # Samples are drawn with norm at most sample_fraction * radius.
    sample_fraction = 0.9

    def __init__(self, config: ModelConfig):
        self.config = config

    @property
    def tolerance(self) -> float:
        return self.config.tolerance

    @property
    def radius(self) -> float:
        return self.config.radius

    def neg(self, a):
        return -a

    def deviation(self, a, b):
        """Largest absolute coordinate difference (per point for batches)."""
        return np.max(np.abs(self._coords(a) - self._coords(b)), axis=-1)

    def eq(self, a, b) -> bool:
        return bool(np.all(self.deviation(a, b) <= self.tolerance))

    def norm(self, a):
        return np.linalg.norm(self._coords(a), axis=-1)

    def _coords(self, a) -> np.ndarray:
        return np.asarray(a, dtype=float)

    def sample(self, rng: np.random.Generator, k: int, fraction: float | None = None):
        return sample_points(self, rng, k, fraction)


class MobiusDisk(_Model):
    name = "mobius-disk"

    def __init__(self, tolerance: float = 1e-12):
        super().__init__(ModelConfig(dimension=2, radius=1.0, tolerance=tolerance))

    def identity(self):
        return 0j

    def add(self, a, b):
        return mobius_disk_add(a, b)

    def closed_form_gyr(self, a, b, z):
        return mobius_disk_gyr(a, b, z)

    def _coords(self, a) -> np.ndarray:
        return disk_to_plane(a)

    def from_coords(self, v):
        return plane_to_disk(v)


class MobiusBall(_Model):
    name = "mobius-ball"

    def __init__(self, dimension: int = 3, tolerance: float = 1e-12):
        super().__init__(ModelConfig(dimension=dimension, radius=1.0, tolerance=tolerance))

    def identity(self):
        return np.zeros(self.config.dimension)

    def add(self, a, b):
        return mobius_ball_add(a, b)

    def from_coords(self, v):
        return np.asarray(v, dtype=float)


class EinsteinBall(_Model):
    name = "einstein"
    sample_fraction = 0.99

    def __init__(self, dimension: int = 3, c: float = 1.0, tolerance: float = 1e-9):
        super().__init__(ModelConfig(dimension=dimension, radius=c, tolerance=tolerance))

    @property
    def c(self) -> float:
        return self.config.radius

    def identity(self):
        return np.zeros(self.config.dimension)

    def add(self, a, b):
        return einstein_add(a, b, self.c)

    def gamma(self, a):
        return gamma_factor(a, self.c)

    def from_coords(self, v):
        return np.asarray(v, dtype=float)


def model_gyr(model: GyrogroupOps, a, b, z):
    """Gyration of a model computed through the gyrator identity."""
    return model.gyr(a, b, z)


def sample_points(model: _Model, rng: np.random.Generator, k: int, fraction: float | None = None):
    """``k`` points with uniform direction and norm uniform in ``[0, fraction * radius]``."""
    fraction = model.sample_fraction if fraction is None else fraction
    if not 0 < fraction < 1:
        raise PreconditionError("sampling fraction must lie in (0, 1)")
    d = model.config.dimension
    direction = rng.standard_normal((k, d))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    r = rng.uniform(0.0, fraction * model.radius, size=(k, 1))
    return model.from_coords(direction * r)


@dataclass
class SuiteReport:
    """Largest deviation per law over a seeded batch of random triples."""

    model: str
    samples: int
    seed: int
    tolerance: float
    sample_fraction: float
    max_deviation: dict[str, float] = field(default_factory=dict)
    closure_margin: float = float("nan")
    # not an axiom: gyrations of these models are rotations, so norms should be kept
    gyration_norm_drift: float = float("nan")

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.max_deviation.values()) and self.closure_margin > 0

    def failures(self) -> list[str]:
        return [k for k, v in self.max_deviation.items() if v > self.tolerance]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "sample_fraction": self.sample_fraction,
            "passed": self.passed,
            "max_deviation": dict(self.max_deviation),
            "closure_margin": self.closure_margin,
            "gyration_norm_drift": self.gyration_norm_drift,
        }


def axiom_suite(model: _Model, samples: int = 10_000, seed: int = 0, fraction: float | None = None) -> SuiteReport:
    """Check the gyrogroup laws of a model on ``samples`` random triples.

    Laws: left identity, left inverse, left gyroassociativity, the left loop
    property (both gyrations applied to a fresh point), gyrations preserving
    the operation, left cancellation and gyrocommutativity. For the disk the
    gyrator-identity gyration is also compared with the closed form.
    """
    if samples < 1:
        raise PreconditionError("need at least one sample")
    fraction = model.sample_fraction if fraction is None else fraction
    rng = np.random.default_rng(seed)
    a, b, c, z = (sample_points(model, rng, samples, fraction) for _ in range(4))
    add, neg, gyr, dev = model.add, model.neg, model.gyr, model.deviation
    zero = model.identity()

    ab = add(a, b)
    g_abz = gyr(a, b, z)
    report = SuiteReport(model.name, samples, seed, model.tolerance, fraction)
    laws = {
        "left_identity": dev(add(zero, a), a),
        "left_inverse": dev(add(neg(a), a), zero),
        "left_gyroassociativity": dev(add(a, add(b, c)), add(ab, gyr(a, b, c))),
        "left_loop": dev(g_abz, gyr(ab, b, z)),
        "gyration_automorphism": dev(gyr(a, b, add(c, z)), add(gyr(a, b, c), g_abz)),
        "left_cancellation": dev(add(neg(a), ab), b),
        "gyrocommutativity": dev(ab, gyr(a, b, add(b, a))),
    }
    if isinstance(model, MobiusDisk):
        laws["closed_form_gyration"] = dev(g_abz, model.closed_form_gyr(a, b, z))
    report.max_deviation = {k: float(np.max(v)) for k, v in laws.items()}
    outputs = [ab, add(b, a), g_abz]
    report.closure_margin = float(min(model.radius - np.max(model.norm(x)) for x in outputs))
    report.gyration_norm_drift = float(np.max(np.abs(model.norm(g_abz) - model.norm(z))))
    return report
