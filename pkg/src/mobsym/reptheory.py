"""Characters of the tangent representation at a configuration and their
decomposition into multiplicity vectors.

Two independent routes compute the character of each stabilizer element:
the fixed-point formulas (element_character) and the trace of the numeric
Jacobian of g_sigma (character_from_jacobian).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .classify import GroupType, conjugacy_classes, element_angle, group_type
from .errors import (
    InconsistentCensus,
    InconsistentContext,
    InvalidLabel,
    NonIntegralMultiplicity,
    NotInvariant,
    NotInvariantUnderGroup,
    NotStabilizerElement,
    TrivialStabilizer,
)
from .moduli import jacobian, lambda_config, lambda_from_config, restricted_trace
from .orbits import POLY_PARTS, OrbitLabel, orbit_decomposition, parse_label
from .sphere import MobiusMap, SpherePoint, _sort_key, apply, chordal, fixed_points, multiplier, rotation_data
from .stabilizer import PointConfig, SymmetryGroup, as_config, compute_stabilizer, permutation_of

ROUND_GATE = 1e-6
SQRT5 = math.sqrt(5.0)
GOLD_P = (1 + SQRT5) / 2
GOLD_M = (1 - SQRT5) / 2


# ---------------------------------------------------------------- characters


def _fixed_in(f: MobiusMap, alpha: PointConfig) -> list[SpherePoint]:
    return [p for p in fixed_points(f, alpha.tol) if alpha.index_of(p, max(alpha.tol, 1e-8)) >= 0]


def element_character(f: MobiusMap, alpha) -> complex:
    """Character of the tangent representation at one stabilizer element,
    from the number of its fixed points lying in alpha."""
    alpha = as_config(alpha)
    try:
        permutation_of(f, alpha, max(alpha.tol, 1e-8))
    except NotInvariant as e:
        raise NotStabilizerElement("map does not preserve the configuration") from e
    if f.is_identity(1e-8):
        return complex(alpha.n - 3)
    inside = _fixed_in(f, alpha)
    if len(inside) == 2:
        return -1 + 0j
    if len(inside) == 1:
        rd = rotation_data(f, inside[0], 1e-7)
        return -1 - cmath.exp(-2j * math.pi * rd.q / rd.order_p)
    rd = rotation_data(f, fixed_points(f)[0], 1e-7)
    return complex(-1 - 2 * math.cos(2 * math.pi * rd.q / rd.order_p))


@dataclass
class Chart:
    """Moduli coordinates of a configuration: alpha[order[k]] sits at position k."""

    lam: np.ndarray
    psi: MobiusMap
    order: list[int]

    def sigma(self, perm) -> tuple[int, ...]:
        """Permutation on alpha indices, transported to moduli positions."""
        pos = {a: k for k, a in enumerate(self.order)}
        return tuple(pos[perm[a]] for a in self.order)


def chart_of(alpha) -> Chart:
    alpha = as_config(alpha)
    lam, psi, order = lambda_from_config(alpha, spread=True)
    return Chart(lam, psi, order)


def character_from_jacobian(perm, chart: Chart, h: float = 1e-5) -> tuple[complex, complex, float]:
    """(trace, restricted trace, Cauchy-Riemann residual) of J_sigma at the chart point."""
    sigma = chart.sigma(perm)
    if len(chart.lam) == 0:
        return 0j, 0j, 0.0
    J = jacobian(chart.lam, sigma, h)
    return J.trace, restricted_trace(J, sigma), J.cr_residual


# ---------------------------------------------------------------- tables


@dataclass
class CharacterTable:
    type: GroupType
    rows: np.ndarray  # rows[i, c] = chi^(i+1) on class K^(c+1)
    class_sizes: list[int]

    @property
    def dims(self) -> list[int]:
        return [int(round(x.real)) for x in self.rows[:, self._identity_col]]

    @property
    def _identity_col(self) -> int:
        return identity_column(self.type)

    def inner(self, i: int, j: int) -> complex:
        w = np.array(self.class_sizes, dtype=float)
        return complex(np.sum(w * self.rows[i] * np.conj(self.rows[j])) / self.type.order)


def identity_column(gt: GroupType) -> int:
    """0-based column of the identity class."""
    if gt.kind == "Dihedral":
        return (gt.p - 1) // 2 if gt.p % 2 else gt.p // 2
    if gt.kind == "Cyclic":
        return gt.p - 1
    return 0


def character_table(gt: GroupType) -> CharacterTable:
    k = gt.kind
    if k == "Icosahedral":
        rows = [[1, 1, 1, 1, 1], [4, -1, -1, 1, 0], [5, 0, 0, -1, 1],
                [3, GOLD_P, GOLD_M, 0, -1], [3, GOLD_M, GOLD_P, 0, -1]]
        sizes = [1, 12, 12, 20, 15]
    elif k == "Octahedral":
        rows = [[1, 1, 1, 1, 1], [1, -1, 1, 1, -1], [3, -1, 0, -1, 1], [3, 1, 0, -1, -1], [2, 0, -1, 2, 0]]
        sizes = [1, 6, 8, 3, 6]
    elif k == "Tetrahedral":
        w = cmath.exp(2j * math.pi / 3)
        rows = [[1, 1, 1, 1], [1, 1, w, w * w], [1, 1, w * w, w], [3, -1, 0, 0]]
        sizes = [1, 3, 4, 4]
    elif k == "Dihedral" and gt.p % 2:
        p = gt.p
        h = (p - 1) // 2
        rows = [[2 * math.cos(2 * math.pi * c * l / p) for c in range(1, h + 1)] + [2, 0] for l in range(1, h + 1)]
        rows += [[1] * (h + 2), [1] * (h + 1) + [-1]]
        sizes = [2] * h + [1, p]
    elif k == "Dihedral":
        p = gt.p
        h = p // 2
        rows = [[2 * math.cos(2 * math.pi * c * l / p) for c in range(1, h + 1)] + [2, 0, 0] for l in range(1, h)]
        rows += [[1] * (h + 3), [1] * (h + 1) + [-1, -1],
                 [(-1) ** c for c in range(1, h + 1)] + [1, 1, -1],
                 [(-1) ** c for c in range(1, h + 1)] + [1, -1, 1]]
        sizes = [2] * (h - 1) + [1, 1, h, h]
    elif k == "Cyclic":
        p = gt.p
        w = cmath.exp(2j * math.pi / p)
        rows = [[w ** (c * l) for c in range(1, p + 1)] for l in range(1, p + 1)]
        sizes = [1] * p
    else:
        raise InvalidLabel(f"no character table for {gt}")
    return CharacterTable(gt, np.array(rows, dtype=complex), sizes)


# ---------------------------------------------------------------- labels


@dataclass
class OrbitTypeReading:
    """Orbit-type label with the pinning data the class conventions need.

    ``pole`` is the axis pair of the rotation subgroup (dihedral only);
    ``anchor`` the group-fixed point in alpha (cyclic 1+mC only);
    ``distinguished`` the lone size-4 orbit (tetrahedral F-types only).
    ``others`` holds every other consistent reading (D_2 only); they are
    reported as ``alternates`` when no reading is preferred.
    """

    type: GroupType
    label: OrbitLabel
    pole: tuple[SpherePoint, SpherePoint] | None = None
    anchor: SpherePoint | None = None
    distinguished: PointConfig | None = None
    alternates: list["OrbitTypeReading"] = field(default_factory=list)
    others: list["OrbitTypeReading"] = field(default_factory=list, repr=False)

    @property
    def m(self) -> int:
        return self.label.m

    def __str__(self):
        return str(self.label)


_POLY_SIZES = {
    "Icosahedral": {12: "F", 20: "V", 30: "E"},
    "Octahedral": {6: "F", 8: "V", 12: "E"},
}


def _axis(f: MobiusMap):
    a, b = fixed_points(f)
    return (a, b)


def orbit_type_label(alpha, G: SymmetryGroup, gt: GroupType | None = None) -> OrbitTypeReading:
    """Label alpha by which orbits of G it contains."""
    alpha = as_config(alpha)
    gt = gt or group_type(G)
    if G.order == 1:
        raise TrivialStabilizer("trivial group has no orbit types")
    try:
        orbs = orbit_decomposition(G, alpha)
    except NotInvariantUnderGroup as e:
        raise InconsistentCensus(str(e)) from e
    N = G.order
    sizes = [o.n for o in orbs]
    free = sizes.count(N)
    short = [o for o in orbs if o.n != N]
    k = gt.kind
    if k in _POLY_SIZES:
        names = _POLY_SIZES[k]
        if any(o.n not in names for o in short) or len({o.n for o in short}) != len(short):
            raise InconsistentCensus(f"orbit sizes {sizes} do not fit {gt}")
        parts = POLY_PARTS[frozenset(names[o.n] for o in short)]
        m = free - 1 if not parts else free
        return OrbitTypeReading(gt, OrbitLabel("polyhedral", parts, m))
    if k == "Tetrahedral":
        fours = [o for o in short if o.n == 4]
        sixes = [o for o in short if o.n == 6]
        if len(fours) + len(sixes) != len(short) or len(sixes) > 1 or len(fours) > 2:
            raise InconsistentCensus(f"orbit sizes {sizes} do not fit {gt}")
        parts = {0: "", 1: "F", 2: "FV"}[len(fours)] + ("E" if sixes else "")
        parts = {"E": "E", "FE": "FE", "FVE": "FVE"}.get(parts, parts)
        m = free - 1 if not parts else free
        dist = fours[0] if len(fours) == 1 else None
        return OrbitTypeReading(gt, OrbitLabel("polyhedral", parts, m), distinguished=dist)
    if k == "Dihedral":
        return _dihedral_reading(alpha, G, gt, orbs)
    if k == "Cyclic":
        ones = [o for o in short if o.n == 1]
        if len(ones) != len(short) or len(ones) > 2:
            raise InconsistentCensus(f"orbit sizes {sizes} do not fit {gt}")
        parts = {0: "", 1: "1", 2: "2"}[len(ones)]
        anchor = ones[0][0] if len(ones) == 1 else None
        return OrbitTypeReading(gt, OrbitLabel("cyclic", parts, free), anchor=anchor)
    raise InconsistentCensus(f"no orbit labels for {gt}")


def _dihedral_reading(alpha, G, gt, orbs) -> OrbitTypeReading:
    p, N = gt.p, G.order
    free = sum(1 for o in orbs if o.n == N)
    short = [o for o in orbs if o.n != N]
    if any(o.n not in (2, p) for o in short):
        raise InconsistentCensus(f"orbit sizes {[o.n for o in orbs]} do not fit {gt}")
    if p > 2:
        rot = next(i for i, k in enumerate(G.orders) if k == p)
        pole = _axis(G.elements[rot])
        poles_in = [o for o in short if o.n == 2]
        ps = [o for o in short if o.n == p]
        if len(poles_in) > 1 or len(ps) > 2:
            raise InconsistentCensus("too many short orbits")
        lab = OrbitLabel("dihedral", {0: "", 1: "A", 2: "AB"}[len(ps)], free, bool(poles_in))
        return OrbitTypeReading(gt, lab, pole=pole)
    # D_2: each involution's axis can serve as the pole
    axes = [_axis(G.elements[i]) for i in range(1, 4)]
    inside = [any(o.n == 2 and o.index_of(ax[0]) >= 0 for o in short) for ax in axes]
    readings = []
    for j, ax in enumerate(axes):
        n_in = sum(inside[i] for i in range(3) if i != j)
        lab = OrbitLabel("dihedral", {0: "", 1: "A", 2: "AB"}[n_in], free, inside[j])
        readings.append(OrbitTypeReading(gt, lab, pole=ax))
    outside = [j for j in range(3) if not inside[j]]
    if len(outside) == 1:
        primary = outside[0]
    elif len(outside) == 2:
        primary = next(j for j in range(3) if inside[j])
    else:
        primary = 0
    main = readings[primary]
    others, seen = [], {str(main.label)}
    for j, r in enumerate(readings):
        if j != primary and str(r.label) not in seen:
            seen.add(str(r.label))
            others.append(r)
    if len(outside) != 1:
        main.alternates = others
    main.others = others
    return main


def all_readings(alpha, G: SymmetryGroup, gt: GroupType | None = None) -> list[OrbitTypeReading]:
    """The primary reading followed by every other consistent one (D_2 only
    has more than one: any involution axis can serve as the pole)."""
    main = orbit_type_label(alpha, G, gt)
    return [main] + main.others


# ---------------------------------------------------------------- class conventions


@dataclass
class ClassLabelContext:
    """Everything needed to place each group element in a table column.

    ``flip`` swaps the pair of classes the published convention leaves free
    (tetrahedral non-F types, even dihedral non-A types, cyclic types other
    than 1+mC); it is rejected where the convention is pinned.
    """

    type: GroupType
    reading: OrbitTypeReading
    alpha: PointConfig
    flip: bool = False

    @property
    def label(self) -> OrbitLabel:
        return self.reading.label

    @property
    def ambiguous(self) -> bool:
        k, parts = self.type.kind, self.label.parts
        if k == "Tetrahedral":
            return parts not in ("F", "FE")
        if k == "Dihedral":
            return self.type.p % 2 == 0 and parts != "A"
        if k == "Cyclic":
            return parts != "1"
        return False

    def describe(self) -> str:
        k = self.type.kind
        if k == "Tetrahedral":
            if not self.ambiguous:
                return "K3 = order-3 elements with multiplier e^(2 pi i/3) at their fixed point in the lone size-4 orbit"
            return "K3/K4 order-3 classes assigned arbitrarily" + (" (flipped)" if self.flip else "")
        if k == "Dihedral" and self.type.p % 2 == 0:
            if not self.ambiguous:
                return "K^((p+4)/2) = involutions with two fixed points in the configuration"
            return "the two reflection classes assigned arbitrarily" + (" (flipped)" if self.flip else "")
        if k == "Cyclic":
            if not self.ambiguous:
                return "K^(k) = rho^k, rho with multiplier e^(2 pi i/p) at the fixed point in the configuration"
            return "K^(k) = rho^k for a rotation rho by 2 pi/p" + (" (inverse generator)" if self.flip else "")
        return "classes determined by rotation angle"


def build_context(alpha, G: SymmetryGroup, gt: GroupType | None = None,
                  reading: OrbitTypeReading | None = None, flip: bool = False) -> ClassLabelContext:
    alpha = as_config(alpha)
    gt = gt or group_type(G)
    reading = reading or orbit_type_label(alpha, G, gt)
    ctx = ClassLabelContext(gt, reading, alpha, flip)
    if flip and not ctx.ambiguous:
        raise InconsistentContext(f"the class convention for {reading.label} is pinned")
    return ctx


def _fixes_pair(f: MobiusMap, pair) -> bool:
    return all(chordal(apply(f, z), z) < 1e-7 for z in pair)


def class_indices(G: SymmetryGroup, ctx: ClassLabelContext) -> list[int]:
    """1-based table column for every element of G."""
    gt = ctx.type
    if gt.order != G.order:
        raise InconsistentContext(f"group of order {G.order} is not {gt}")
    n = G.order
    orders = G.orders
    angle = [element_angle(G, i) for i in range(n)]
    k = gt.kind
    out = [0] * n
    if k == "Icosahedral":
        lut = {(1, 0): 1, (5, 1): 2, (5, 2): 3, (3, 1): 4, (2, 1): 5}
        out = [lut[a] for a in angle]
    elif k == "Octahedral":
        t = G.table
        squares = {int(t[i, i]) for i in range(n) if orders[i] == 4}
        for i in range(n):
            out[i] = {1: 1, 4: 2, 3: 3}.get(orders[i], 4 if i in squares else 5)
    elif k == "Tetrahedral":
        out = _tetra_classes(G, ctx, orders)
    elif k == "Dihedral":
        out = _dihedral_classes(G, ctx, orders, angle)
    elif k == "Cyclic":
        out = _cyclic_classes(G, ctx)
    else:
        raise InconsistentContext(f"no classes for {gt}")
    return out


def _tetra_classes(G, ctx, orders):
    n = G.order
    out = [1 if orders[i] == 1 else 2 if orders[i] == 2 else 0 for i in range(n)]
    if not ctx.ambiguous:
        dist = ctx.reading.distinguished
        if dist is None:
            raise InconsistentContext("F-type reading without a distinguished orbit")
        w = cmath.exp(2j * math.pi / 3)
        for i in range(n):
            if orders[i] != 3:
                continue
            fp = next(p for p in fixed_points(G.elements[i]) if dist.index_of(p, 1e-7) >= 0)
            mu = multiplier(G.elements[i], fp)
            out[i] = 3 if abs(mu - w) < 1e-6 else 4
        return out
    cls = [c for c in conjugacy_classes(G).classes if orders[c[0]] == 3]
    first, second = (cls[1], cls[0]) if ctx.flip else (cls[0], cls[1])
    for i in first:
        out[i] = 3
    for i in second:
        out[i] = 4
    return out


def _dihedral_classes(G, ctx, orders, angle):
    p = ctx.type.p
    n = G.order
    pole = ctx.reading.pole
    if pole is None:
        raise InconsistentContext("dihedral reading without a pole")
    rotation = [i == 0 or _fixes_pair(G.elements[i], pole) for i in range(n)]
    if sum(rotation) != p:
        raise InconsistentContext("pole does not match the rotation subgroup")
    out = [0] * n
    ident = (p + 1) // 2 if p % 2 else (p + 2) // 2
    for i in range(n):
        if i == 0:
            out[i] = ident
        elif rotation[i]:
            d, q = angle[i]
            out[i] = q * p // d
    refl = [i for i in range(n) if not rotation[i]]
    if p % 2:
        for i in refl:
            out[i] = (p + 3) // 2
        return out
    # two reflection classes: conjugacy by the rotations
    t, inv = G.table, G.inverse_index
    first = sorted({int(t[t[g, refl[0]], inv[g]]) for g in range(n)})
    second = [i for i in refl if i not in first]
    if ctx.ambiguous:
        if ctx.flip:
            first, second = second, first
    else:
        alpha = ctx.alpha
        two = [len(_fixed_in(G.elements[i], alpha)) == 2 for i in refl]
        sel = {i for i, ok in zip(refl, two) if ok}
        if set(first) != sel and set(second) != sel:
            raise InconsistentContext("reflections with two fixed points in alpha do not form a class")
        if set(first) != sel:
            first, second = second, first
    for i in first:
        out[i] = (p + 4) // 2
    for i in second:
        out[i] = (p + 6) // 2
    return out


def _cyclic_classes(G, ctx):
    p = ctx.type.p
    n = G.order
    w = cmath.exp(2j * math.pi / p)
    if ctx.ambiguous:
        gen = next(i for i in range(n) if G.orders[i] == p)
        fps = sorted(fixed_points(G.elements[gen]), key=_sort_key)
        anchor = fps[1] if ctx.flip else fps[0]
    else:
        anchor = ctx.reading.anchor
        if anchor is None:
            raise InconsistentContext("1+mC reading without its fixed point")
    rho = None
    for i in range(1, n):
        if abs(multiplier(G.elements[i], anchor) - w) < 1e-6:
            rho = i
            break
    if rho is None:
        raise InconsistentContext("no generator with multiplier e^(2 pi i/p) at the anchor")
    out = [0] * n
    x = rho
    for k in range(1, p + 1):
        out[x] = k
        x = int(G.table[rho, x])
    return out


def class_index(f: MobiusMap, G: SymmetryGroup, ctx: ClassLabelContext) -> int:
    i = G.find(f)
    if i < 0:
        raise InconsistentContext("element is not in the group")
    return class_indices(G, ctx)[i]


# ---------------------------------------------------------------- decomposition


@dataclass
class MultiplicityResult:
    vector: tuple[int, ...]
    context: ClassLabelContext
    raw: np.ndarray
    group: SymmetryGroup

    @property
    def label(self) -> OrbitLabel:
        return self.context.label


def decompose(chars, classes, gt: GroupType, n_points: int | None = None) -> tuple[tuple[int, ...], np.ndarray]:
    """Inner products with each irreducible character, rounded behind a gate."""
    table = character_table(gt)
    N = len(chars)
    if N != gt.order:
        raise InconsistentContext(f"{N} characters for a group of order {gt.order}")
    raw = np.empty(len(table.rows), dtype=complex)
    for r, row in enumerate(table.rows):
        terms = [chars[g] * np.conj(row[classes[g] - 1]) for g in range(N)]
        raw[r] = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)) / N
    rounded = np.round(raw.real)
    err = np.max(np.abs(raw - rounded)) if len(raw) else 0.0
    if err > ROUND_GATE or (rounded < 0).any():
        raise NonIntegralMultiplicity(f"inner products {np.round(raw, 8).tolist()} are not nonnegative integers")
    vec = tuple(int(x) for x in rounded)
    if n_points is not None:
        dims = table.dims
        if sum(a * d for a, d in zip(vec, dims)) != n_points - 3:
            raise NonIntegralMultiplicity(f"vector {vec} has the wrong dimension for {n_points} points")
    return vec, raw


def config_multiplicity(alpha, G: SymmetryGroup | None = None, gt: GroupType | None = None,
                        reading: OrbitTypeReading | None = None, flip: bool = False,
                        source: str = "formula") -> MultiplicityResult:
    """Multiplicity vector of the tangent representation at alpha, over G
    (the full stabilizer by default, or any subgroup preserving alpha).
    ``source`` selects the character route: "formula" or "jacobian"."""
    alpha = as_config(alpha)
    G = G if G is not None else compute_stabilizer(alpha)
    if G.order == 1:
        raise TrivialStabilizer("the stabilizer is trivial")
    ctx = build_context(alpha, G, gt, reading, flip)
    classes = class_indices(G, ctx)
    if source == "formula":
        chars = [element_character(f, alpha) for f in G.elements]
    elif source == "jacobian":
        chart = chart_of(alpha)
        chars = []
        for f in G.elements:
            perm = permutation_of(f, alpha, max(alpha.tol, 1e-8))
            chars.append(character_from_jacobian(perm, chart)[0])
    else:
        raise ValueError(f"unknown character source {source!r}")
    vec, raw = decompose(chars, classes, ctx.type, alpha.n)
    return MultiplicityResult(vec, ctx, raw, G)


def multiplicity_vector(lam, flip: bool = False) -> MultiplicityResult:
    """Multiplicity vector at lambda in K_n, characters from the fixed-point formulas."""
    return config_multiplicity(lambda_config(lam), flip=flip)


def multiplicity_from_jacobian(lam, flip: bool = False) -> MultiplicityResult:
    """Same decomposition with characters read off numeric Jacobian traces."""
    return config_multiplicity(lambda_config(lam), flip=flip, source="jacobian")


def reading_vectors(alpha, G: SymmetryGroup | None = None) -> list[tuple[str, tuple[int, ...]]]:
    """Vector under the primary label reading and each alternate one."""
    alpha = as_config(alpha)
    G = G if G is not None else compute_stabilizer(alpha)
    out = []
    for r in all_readings(alpha, G):
        res = config_multiplicity(alpha, G, reading=replace(r, alternates=[]))
        out.append((str(r.label), res.vector))
    return out


# ---------------------------------------------------------------- closed forms

_ICO = {
    "F": lambda m: (m, 1 + 4 * m, 1 + 5 * m, 3 * m, 3 * m),
    "V": lambda m: (m, 1 + 4 * m, 2 + 5 * m, 3 * m, 1 + 3 * m),
    "E": lambda m: (m, 2 + 4 * m, 2 + 5 * m, 1 + 3 * m, 2 + 3 * m),
    "FV": lambda m: (m, 2 + 4 * m, 3 + 5 * m, 1 + 3 * m, 1 + 3 * m),
    "VE": lambda m: (m, 3 + 4 * m, 4 + 5 * m, 2 + 3 * m, 3 + 3 * m),
    "EF": lambda m: (m, 3 + 4 * m, 3 + 5 * m, 2 + 3 * m, 2 + 3 * m),
    "FVE": lambda m: (m, 4 + 4 * m, 5 + 5 * m, 3 + 3 * m, 3 + 3 * m),
    "": lambda m: (1 + m, 4 + 4 * m, 5 + 5 * m, 2 + 3 * m, 3 + 3 * m),
}
_OCT = {
    "F": lambda m: (m, m, 1 + 3 * m, 3 * m, 2 * m),
    "V": lambda m: (m, m, 1 + 3 * m, 3 * m, 1 + 2 * m),
    "E": lambda m: (m, 1 + m, 1 + 3 * m, 1 + 3 * m, 1 + 2 * m),
    "FV": lambda m: (m, m, 2 + 3 * m, 1 + 3 * m, 1 + 2 * m),
    "VE": lambda m: (m, 1 + m, 2 + 3 * m, 2 + 3 * m, 2 + 2 * m),
    "EF": lambda m: (m, 1 + m, 2 + 3 * m, 2 + 3 * m, 1 + 2 * m),
    "FVE": lambda m: (m, 1 + m, 3 + 3 * m, 3 + 3 * m, 2 + 2 * m),
    "": lambda m: (1 + m, 1 + m, 3 + 3 * m, 2 + 3 * m, 2 + 2 * m),
}
_TET = {
    "F": lambda m: (m, 1 + m, m, 3 * m),
    "E": lambda m: (m, m, m, 1 + 3 * m),
    "FV": lambda m: (m, 1 + m, 1 + m, 1 + 3 * m),
    "FE": lambda m: (m, 1 + m, m, 2 + 3 * m),
    "FVE": lambda m: (m, 1 + m, 1 + m, 3 + 3 * m),
    "": lambda m: (1 + m, 1 + m, 1 + m, 2 + 3 * m),
}
# printed tetrahedral (1+m)B vector; fails the dimension sum, see _TET[""]
PRINTED_LITERAL = {("Tetrahedral", "(1+m)B"): lambda m: (m, 1 + m, 1 + m, 2 + 3 * m)}


def _dihedral_odd(p, tpl, m):
    h = (p - 1) // 2
    head, rest, a, b = {
        "mC": (2 * m - 1, 2 * m, m, m - 1),
        "A+mC": (2 * m, 2 * m + 1, m, m),
        "AB+mC": (2 * m + 1, 2 * m + 2, m, m + 1),
        "2+mC": (2 * m, 2 * m, m, m - 1),
        "A+2+mC": (2 * m + 1, 2 * m + 1, m, m),
        "AB+2+mC": (2 * m + 2, 2 * m + 2, m, m + 1),
    }[tpl]
    return (head,) + (rest,) * (h - 1) + (a, b)


def _dihedral_even(p, tpl, m):
    if p == 2:
        return {
            "mC": (m, m - 1, m - 1, m - 1),
            "A+mC": (m, m, m - 1, m),
            "AB+mC": (m, m + 1, m, m),
            "2+mC": (m, m - 1, m, m),
            "A+2+mC": (m, m, m, m + 1),
            "AB+2+mC": (m, m + 1, m + 1, m + 1),
        }[tpl]
    h = p // 2 - 1
    head, rest, tail = {
        "mC": (2 * m - 1, 2 * m, (m, m - 1, m, m)),
        "A+mC": (2 * m, 2 * m + 1, (m, m, m, m + 1)),
        "AB+mC": (2 * m + 1, 2 * m + 2, (m, m + 1, m + 1, m + 1)),
        "2+mC": (2 * m, 2 * m, (m, m - 1, m, m)),
        "A+2+mC": (2 * m + 1, 2 * m + 1, (m, m, m, m + 1)),
        "AB+2+mC": (2 * m + 2, 2 * m + 2, (m, m + 1, m + 1, m + 1)),
    }[tpl]
    return (head,) + (rest,) * (h - 1) + tail


def _cyclic(p, tpl, m):
    if tpl == "mC":
        if p == 2:
            return (m - 2, m - 1)
        if p == 3:
            return (m - 1, m - 1, m - 1)
        return (m - 1,) + (m,) * (p - 3) + (m - 1, m - 1)
    if tpl == "1+mC":
        return (m,) * (p - 2) + (m - 1, m - 1)
    return (m,) * (p - 1) + (m - 1,)


def closed_form_multvec(gt: GroupType, label, m: int | None = None) -> tuple[int, ...]:
    """Published multiplicity vector for an orbit type (tetrahedral (1+m)B corrected)."""
    if isinstance(gt, str):
        gt = GroupType.parse(gt)
    lab = label if isinstance(label, OrbitLabel) else parse_label(gt, label, m)
    m = lab.m
    k = gt.kind
    if k == "Icosahedral":
        return _ICO[lab.parts](m)
    if k == "Octahedral":
        return _OCT[lab.parts](m)
    if k == "Tetrahedral":
        return _TET[lab.parts](m)
    if k == "Dihedral":
        return (_dihedral_odd if gt.p % 2 else _dihedral_even)(gt.p, lab.template, m)
    if k == "Cyclic":
        return _cyclic(gt.p, lab.template, m)
    raise InvalidLabel(f"no closed form for {gt}")
