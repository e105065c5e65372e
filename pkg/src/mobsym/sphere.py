"""Points of the Riemann sphere and Mobius maps acting on them.

Points are stored in homogeneous coordinates so that infinity is an ordinary
point; maps are 2x2 complex matrices normalized to determinant one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AnchorNotFixed, DegenerateInput, IdentityMap, NotFiniteOrder

TOL = 1e-9
MAX_ORDER = 60
# rational-angle recovery window; distinct angles 2*pi*q/p with p <= 60
# are separated by more than 1e-3, so this leaves a wide margin
ANGLE_TOL = 1e-6


def _canon(a: complex, b: complex, tol: float = TOL) -> tuple[complex, complex]:
    a, b = complex(a), complex(b)
    nrm = math.hypot(abs(a), abs(b))
    if nrm == 0.0 or not math.isfinite(nrm):
        raise DegenerateInput("homogeneous pair (0, 0) is not a point")
    if abs(b) / nrm >= tol:
        return a / b, 1.0 + 0j
    return 1.0 + 0j, 0j


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """A point a/b of the Riemann sphere; b == 0 is infinity."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = _canon(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, x) -> "SpherePoint":
        """Coerce a complex number, "inf", math.inf or a SpherePoint."""
        if isinstance(x, SpherePoint):
            return x
        if isinstance(x, str):
            if x.strip().lower() in ("inf", "infinity", "oo"):
                return cls(1, 0)
            return cls(complex(x.replace(" ", "")), 1)
        z = complex(x)
        if cmath.isinf(z):
            return cls(1, 0)
        if cmath.isnan(z):
            raise DegenerateInput("NaN is not a point")
        return cls(z, 1)

    @property
    def is_inf(self) -> bool:
        return self.b == 0

    @property
    def value(self) -> complex:
        return complex(math.inf, 0) if self.is_inf else self.a

    def hom(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)

    def dist(self, other: "SpherePoint") -> float:
        return chordal(self, other)

    def close(self, other, tol: float = TOL) -> bool:
        return chordal(self, SpherePoint.of(other)) < tol

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            try:
                other = SpherePoint.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return chordal(self, other) < TOL

    __hash__ = None

    def __repr__(self):
        if self.is_inf:
            return "SpherePoint(inf)"
        return f"SpherePoint({self.a:.12g})"


INF = SpherePoint(1, 0)


def chordal(p: SpherePoint, q: SpherePoint) -> float:
    num = abs(p.a * q.b - q.a * p.b)
    return num / (math.hypot(abs(p.a), abs(p.b)) * math.hypot(abs(q.a), abs(q.b)))


def hom_array(points) -> np.ndarray:
    """(n, 2) array of unit-norm homogeneous coordinates."""
    h = np.array([SpherePoint.of(z).hom() for z in points], dtype=complex).reshape(-1, 2)
    return h / np.linalg.norm(h, axis=1, keepdims=True)


def hom_to_xyz(h: np.ndarray) -> np.ndarray:
    """Stereographic image on the unit sphere; euclidean distance = 2 * chordal."""
    h = np.asarray(h, dtype=complex).reshape(-1, 2)
    a, b = h[:, 0], h[:, 1]
    s = np.abs(a) ** 2 + np.abs(b) ** 2
    ab = a * np.conj(b)
    return np.stack([2 * ab.real / s, 2 * ab.imag / s, (np.abs(a) ** 2 - np.abs(b) ** 2) / s], axis=1)


def _normalize(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=complex).reshape(2, 2)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det == 0 or not np.isfinite(det):
        raise DegenerateInput("singular matrix is not a Mobius map")
    m = m / cmath.sqrt(det)
    # sign convention: first entry of largest modulus gets positive real part
    flat = m.ravel()
    mags = np.abs(flat)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    e = flat[k]
    if e.real < 0 or (e.real == 0 and e.imag < 0):
        m = -m
    return m


class MobiusMap:
    """Element of PSL(2, C), z -> (a z + b) / (c z + d)."""

    __slots__ = ("m",)

    def __init__(self, m):
        mat = _normalize(m)
        mat.setflags(write=False)
        object.__setattr__(self, "m", mat)

    def __setattr__(self, name, value):
        raise AttributeError("MobiusMap is immutable")

    @classmethod
    def from_coeffs(cls, a, b, c, d) -> "MobiusMap":
        return cls([[a, b], [c, d]])

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(np.eye(2))

    @classmethod
    def rotation(cls, angle: float) -> "MobiusMap":
        """z -> exp(i angle) z."""
        return cls([[cmath.exp(1j * angle), 0], [0, 1]])

    def __call__(self, z):
        return apply(self, z)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def inverse(self) -> "MobiusMap":
        return inverse(self)

    def trace(self) -> complex:
        return complex(self.m[0, 0] + self.m[1, 1])

    def is_identity(self, tol: float = TOL) -> bool:
        return mobius_equal(self, _ID, tol)

    def power(self, k: int) -> "MobiusMap":
        if k < 0:
            return inverse(self).power(-k)
        return MobiusMap(np.linalg.matrix_power(self.m, k))

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return mobius_equal(self, other, TOL)

    __hash__ = None

    def __repr__(self):
        (a, b), (c, d) = self.m
        return f"MobiusMap([[{a:.6g}, {b:.6g}], [{c:.6g}, {d:.6g}]])"


_ID = MobiusMap(np.eye(2))


def apply(f: MobiusMap, z) -> SpherePoint:
    v = f.m @ SpherePoint.of(z).hom()
    return SpherePoint(v[0], v[1])


def apply_hom(f: MobiusMap, h: np.ndarray) -> np.ndarray:
    """Apply to an (n, 2) homogeneous array; rows renormalized to unit norm."""
    out = np.asarray(h, dtype=complex).reshape(-1, 2) @ f.m.T
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def compose(f: MobiusMap, g: MobiusMap) -> MobiusMap:
    """f after g."""
    return MobiusMap(f.m @ g.m)


def inverse(f: MobiusMap) -> MobiusMap:
    (a, b), (c, d) = f.m
    return MobiusMap([[d, -b], [-c, a]])


def mobius_equal(f: MobiusMap, g: MobiusMap, tol: float = TOL) -> bool:
    return min(np.linalg.norm(f.m - g.m), np.linalg.norm(f.m + g.m)) < tol


def _to_standard(p1: np.ndarray, p2: np.ndarray, p3: np.ndarray) -> np.ndarray:
    """Matrix sending homogeneous p1, p2, p3 to 0, 1, infinity."""

    def lin(v, p):
        return v[0] * p[1] - v[1] * p[0]

    k3, k1 = lin(p2, p3), lin(p2, p1)
    return np.array([[k3 * p1[1], -k3 * p1[0]], [k1 * p3[1], -k1 * p3[0]]], dtype=complex)


def _check_distinct(pts, tol):
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal(pts[i], pts[j]) < tol:
                raise DegenerateInput(f"points {i} and {j} coincide", [(i, j)])


def mobius_from_triple(src, dst, tol: float = TOL) -> MobiusMap:
    """The unique map sending src[k] to dst[k] for k = 0, 1, 2."""
    src = [SpherePoint.of(z) for z in src]
    dst = [SpherePoint.of(z) for z in dst]
    _check_distinct(src, tol)
    _check_distinct(dst, tol)
    a = _to_standard(*(p.hom() for p in src))
    b = _to_standard(*(p.hom() for p in dst))
    badj = np.array([[b[1, 1], -b[0, 1]], [-b[1, 0], b[0, 0]]])
    return MobiusMap(badj @ a)


def cross_ratio(z1, z2, z3, z4, tol: float = TOL) -> SpherePoint:
    """Image of z3 under the map sending (z1, z2, z4) to (0, 1, infinity)."""
    pts = [SpherePoint.of(z) for z in (z1, z2, z3, z4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal(pts[i], pts[j]) < tol:
                raise DegenerateInput(f"points {i} and {j} coincide", [(i, j)])
    t = _to_standard(pts[0].hom(), pts[1].hom(), pts[3].hom())
    v = t @ pts[2].hom()
    return SpherePoint(v[0], v[1])


def fixed_points(f: MobiusMap, tol: float = TOL) -> list[SpherePoint]:
    """Fixed points: two for non-parabolic maps, one for parabolic ones."""
    if f.is_identity(tol):
        raise IdentityMap("the identity fixes every point")
    (a, b), (c, d) = f.m
    tr = a + d
    if abs(tr * tr - 4) < tol:
        # parabolic: double root of c z^2 + (d - a) z - b
        if abs(c) < tol:
            return [INF]
        return [SpherePoint(a - d, 2 * c)]
    _, vecs = np.linalg.eig(f.m)
    pts = [SpherePoint(vecs[0, k], vecs[1, k]) for k in range(2)]
    return sorted(pts, key=_sort_key)


def _sort_key(p: SpherePoint):
    return (p.is_inf, round(p.a.real, 9), round(p.a.imag, 9))


@dataclass(frozen=True)
class RotationData:
    order_p: int
    q: int
    anchor: SpherePoint
    other_fixed: SpherePoint


def multiplier(f: MobiusMap, z0) -> complex:
    """Derivative of f at its fixed point z0 (chart-independent)."""
    v = SpherePoint.of(z0).hom()
    v = v / np.linalg.norm(v)
    mu = np.vdot(v, f.m @ v)
    return complex(1 / (mu * mu))


def _rational_angle(theta: float, max_order: int) -> tuple[int, int]:
    x = (theta / (2 * math.pi)) % 1.0
    fr = Fraction(x).limit_denominator(max_order)
    if abs(float(fr) - x) * 2 * math.pi > ANGLE_TOL and abs(float(fr) - x - 1) * 2 * math.pi > ANGLE_TOL:
        raise NotFiniteOrder(f"rotation angle {theta!r} is not a rational multiple of 2*pi")
    p, q = fr.denominator, fr.numerator % fr.denominator
    return p, q


def rotation_data(f: MobiusMap, anchor, tol: float = TOL, max_order: int = MAX_ORDER) -> RotationData:
    anchor = SpherePoint.of(anchor)
    fps = fixed_points(f, tol)
    if len(fps) == 1:
        raise NotFiniteOrder("parabolic element has infinite order")
    d = [chordal(anchor, p) for p in fps]
    k = int(np.argmin(d))
    if d[k] >= tol:
        raise AnchorNotFixed(f"{anchor!r} is not a fixed point")
    mult = multiplier(f, fps[k])
    if abs(abs(mult) - 1) > ANGLE_TOL:
        raise NotFiniteOrder("element is loxodromic")
    p, q = _rational_angle(cmath.phase(mult), max_order)
    return RotationData(p, q, fps[k], fps[1 - k])
