"""Explicit classification of 4, 5 and 6 point configurations.

The stabilizer is computed first and decides the case; a normalizing map
psi onto the case's normal form is then constructed and checked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .classify import GroupType, group_type
from .errors import DegenerateInput, DegenerateLambda, MobsymError
from .reptheory import config_multiplicity, reading_vectors
from .sphere import INF, TOL, MobiusMap, SpherePoint, apply, cross_ratio, fixed_points, mobius_from_triple
from .stabilizer import PointConfig, as_config, compute_stabilizer

SPECIAL_TOL = 1e-7
W3 = cmath.exp(2j * math.pi / 3)
W5 = cmath.exp(2j * math.pi / 5)
W6 = cmath.exp(1j * math.pi / 3)
S3, S5, S2 = math.sqrt(3), math.sqrt(5), math.sqrt(2)

NORMAL_FORMS = {
    "roots5": [W5**k for k in range(5)],
    "Z4": [0, 1, 1j, -1, -1j],
    "D3": [0, INF, 1, W3, W3 * W3],
    "roots6": [W6**k for k in range(6)],
    "Z5": [0, 1, W5, W5**2, W5**3, W5**4],
    "S4": [0, INF, 1, 1j, -1, -1j],
}

STATED_VECTORS = {
    5: {"1": (0, 1, 0, 0), "2": (1, 1, 0, 0), "3": (1, 0, 0), "4(d)": (1, 1)},
    6: {"1": (0, 1, 0, 0, 0, 1), "2": (1, 1, 1, 0, 0), "3": (0, 0, 1, 0, 0), "4(c)": (1, 1, 0),
        "5(d)i": (1, 0, 1, 1), "5(d)ii": (1, 2)},
}


@dataclass
class SmallCaseReport:
    n: int
    case: str
    type: GroupType
    order: int
    psi: MobiusMap | None = None
    params: dict = field(default_factory=dict)
    vector: tuple | None = None
    computed: tuple | None = None
    label: str | None = None
    notes: list[str] = field(default_factory=list)
    alternates: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def path(self) -> str:
        return f"n={self.n}, case {self.case}"


def _close(a, b, tol=SPECIAL_TOL) -> bool:
    return abs(complex(a) - complex(b)) < tol * max(1.0, abs(complex(b)))


# ---------------------------------------------------------------- n = 4


def cross_ratio_orbit(lam, tol: float = SPECIAL_TOL) -> list[complex]:
    """The six values lam takes under relabeling four points, deduplicated."""
    lam = complex(lam)
    if not cmath.isfinite(lam) or abs(lam) < tol or abs(lam - 1) < tol:
        raise DegenerateLambda(f"cross-ratio {lam} is degenerate")
    vals = [lam, 1 - lam, 1 / lam, lam / (lam - 1), (lam - 1) / lam, 1 / (1 - lam)]
    out: list[complex] = []
    for v in vals:
        if all(not _close(v, u, tol) for u in out):
            out.append(v)
    return out


def classify4(alpha, tol: float = TOL) -> SmallCaseReport:
    alpha = as_config(alpha, tol)
    if alpha.n != 4:
        raise DegenerateInput(f"expected 4 points, got {alpha.n}")
    z = alpha.points
    lam = cross_ratio(z[0], z[1], z[2], z[3]).value
    psi = mobius_from_triple([z[0], z[1], z[3]], [0, 1, INF])
    if any(_close(lam, s) for s in (2, 0.5, -1)):
        gt, case = GroupType("Dihedral", 4), "lambda in {2, 1/2, -1}"
    elif any(_close(lam, s) for s in ((1 + S3 * 1j) / 2, (1 - S3 * 1j) / 2)):
        gt, case = GroupType("Tetrahedral"), "lambda = (1 +- sqrt3 i)/2"
    else:
        gt, case = GroupType("Dihedral", 2), "generic lambda"
    G = compute_stabilizer(alpha, tol)
    rep = SmallCaseReport(4, case, gt, gt.order, psi, {"lambda": lam})
    actual = group_type(G)
    if actual != gt:
        rep.notes.append(f"cross-ratio rule says {gt}, stabilizer says {actual}")
    res = config_multiplicity(alpha, G)
    rep.computed, rep.label = res.vector, str(res.label)
    return rep


# ---------------------------------------------------------------- normal forms


def find_normalizer(alpha, target, tol: float = 1e-7) -> MobiusMap | None:
    """A Mobius map taking alpha onto the target set, or None."""
    alpha = as_config(alpha)
    tgt = PointConfig(target)
    if tgt.n != alpha.n:
        return None
    src = [alpha[0], alpha[1], alpha[2]]
    for t in permutations(range(tgt.n), 3):
        psi = mobius_from_triple(src, [tgt[i] for i in t])
        img = PointConfig([apply(psi, p) for p in alpha], tol)
        if tgt.same_set(img, tol):
            return psi
    return None


def _involution_chart(f: MobiusMap, alpha: PointConfig, first_fixed=None, x=None):
    """psi with psi f psi^-1 = -z, sending first_fixed to 0 and x (default: some
    point of alpha off the axis) to 1."""
    fps = fixed_points(f)
    if first_fixed is not None:
        fps.sort(key=lambda p: p.dist(first_fixed))
    if x is None:
        x = next(p for p in alpha if min(p.dist(q) for q in fps) > 1e-6)
    return mobius_from_triple([fps[0], x, fps[1]], [0, 1, INF])


def route_a5(a, tol: float = SPECIAL_TOL) -> str:
    """Case of {0, 1, -1, a, -a} from the special-value list."""
    if any(_close(a, s, tol) for s in (S5 + 2, -S5 - 2, S5 - 2, 2 - S5)):
        return "1"
    if any(_close(a, s, tol) for s in (1j, -1j)):
        return "2"
    if any(_close(a, s, tol) for s in (S3 * 1j, -S3 * 1j, 1j / S3, -1j / S3)):
        return "3"
    return "4(d)"


def _routes(n, gt: GroupType) -> str:
    key = (gt.kind, gt.p)
    table5 = {("Dihedral", 5): "1", ("Cyclic", 4): "2", ("Dihedral", 3): "3", ("Cyclic", 2): "4(d)", ("Trivial", 0): "5"}
    table6 = {("Dihedral", 6): "1", ("Cyclic", 5): "2", ("Octahedral", 0): "3", ("Dihedral", 3): "4(c)",
              ("Dihedral", 2): "5(d)i", ("Cyclic", 2): "5(d)ii", ("Trivial", 0): "6"}
    table = table5 if n == 5 else table6
    if key not in table:
        raise MobsymError(f"{gt} does not occur for {n} points")
    return table[key]


def _finish(rep: SmallCaseReport, alpha, G):
    if G.order > 1:
        res = config_multiplicity(alpha, G)
        rep.computed, rep.label = res.vector, str(res.label)
    rep.vector = STATED_VECTORS[rep.n].get(rep.case)
    return rep


def classify5(alpha, tol: float = TOL) -> SmallCaseReport:
    alpha = as_config(alpha, tol)
    if alpha.n != 5:
        raise DegenerateInput(f"expected 5 points, got {alpha.n}")
    G = compute_stabilizer(alpha, tol)
    gt = group_type(G)
    case = _routes(5, gt)
    rep = SmallCaseReport(5, case, gt, G.order)
    form = {"1": "roots5", "2": "Z4", "3": "D3"}.get(case)
    if form:
        rep.psi = find_normalizer(alpha, NORMAL_FORMS[form])
    elif case == "4(d)":
        f = G.elements[1]
        z0 = next(p for p in fixed_points(f) if alpha.index_of(p, 1e-7) >= 0)
        psi = _involution_chart(f, alpha, z0)
        img = [apply(psi, p).value for p in alpha]
        a = next(v for v in img if not (_close(v, 0) or _close(v, 1) or _close(v, -1)))
        rep.psi, rep.params = psi, {"a": a}
        if route_a5(a) != "4(d)":
            rep.notes.append(f"a = {a} is a special value but the stabilizer is {gt}")
    return _finish(rep, alpha, G)


# ---------------------------------------------------------------- n = 6


def cubic_condition(a, b) -> complex:
    """a^2 b + a b^2 + a^2 - 6ab + b^2 + a + b; zero exactly on the hidden D_3 family."""
    return a * a * b + a * b * b + a * a - 6 * a * b + b * b + a + b


def cubic_partner(a) -> list[complex]:
    """Both b solving cubic_condition(a, b) = 0."""
    a = complex(a)
    return [complex(r) for r in np.roots([a + 1, a * a - 6 * a + 1, a * a + a])]


_D3_UPGRADES = {
    "1": [cmath.sqrt(W3) * W3**j for j in range(3)],
    "3": [-(2 + S3) * W3**j for j in range(3)],
}
_PM_SETS = {
    "1": [(7 - 4 * S3, 2 - S3), (2 - S3, 2 + S3), (2 + S3, 7 + 4 * S3)],
    "3": [((S2 - 1) * 1j, (S2 + 1) * 1j), (3 - 2 * S2, (S2 - 1) * 1j), (3 + 2 * S2, (S2 + 1) * 1j)],
}


def route_a6(a, tol: float = SPECIAL_TOL) -> str:
    """Case of {1, w, w^2, a, aw, aw^2}."""
    for case, vals in _D3_UPGRADES.items():
        if any(_close(a, v, tol) or _close(1 / complex(a), v, tol) for v in vals):
            return case
    return "4(c)"


def route_ab6(a, b, tol: float = SPECIAL_TOL) -> str:
    """Case of {+-1, +-a, +-b}."""
    a, b = complex(a), complex(b)
    for case, pairs in _PM_SETS.items():
        for x, y in pairs:
            for u, v in ((a, b), (b, a)):
                if (_close(u, x, tol) or _close(u, -x, tol)) and (_close(v, y, tol) or _close(v, -y, tol)):
                    return case
    reps = [(s * a, t * b) for s in (1, -1) for t in (1, -1)]
    if any(abs(cubic_condition(u, v)) < tol * max(1.0, abs(u) ** 3, abs(v) ** 3) for u, v in reps):
        return "4(c)"
    if _close(a * b, 1, tol) or _close(a * b, -1, tol):
        return "5(d)i"
    return "5(d)ii"


def classify6(alpha, tol: float = TOL) -> SmallCaseReport:
    alpha = as_config(alpha, tol)
    if alpha.n != 6:
        raise DegenerateInput(f"expected 6 points, got {alpha.n}")
    G = compute_stabilizer(alpha, tol)
    gt = group_type(G)
    case = _routes(6, gt)
    rep = SmallCaseReport(6, case, gt, G.order)
    form = {"1": "roots6", "2": "Z5", "3": "S4"}.get(case)
    if form:
        rep.psi = find_normalizer(alpha, NORMAL_FORMS[form])
    elif case == "4(c)":
        rho = next(i for i, k in enumerate(G.orders) if k == 3)
        fps = fixed_points(G.elements[rho])
        x = alpha[0]
        psi = mobius_from_triple([fps[0], x, fps[1]], [0, 1, INF])
        img = [apply(psi, p).value for p in alpha]
        cands = [v for v in img if not any(_close(v, W3**j) for j in range(3))]
        a = max(cands, key=abs)
        if abs(a) < 1 - 1e-12:
            psi = mobius_from_triple([fps[1], x, fps[0]], [0, 1, INF])
            img = [apply(psi, p).value for p in alpha]
            cands = [v for v in img if not any(_close(v, W3**j) for j in range(3))]
            a = max(cands, key=abs)
        rep.psi, rep.params = psi, {"a": a}
        if route_a6(a) != "4(c)":
            rep.notes.append(f"a = {a} is a special value but the stabilizer is {gt}")
    elif case in ("5(d)i", "5(d)ii"):
        # an involution with no fixed point in alpha becomes z -> -z
        outside = [i for i in range(1, G.order)
                   if all(alpha.index_of(p, 1e-7) < 0 for p in fixed_points(G.elements[i]))]
        f = G.elements[outside[0]]
        # for the Klein group, put the axis of the involution fixing two points at +-1
        x = None
        for i in range(1, G.order):
            inside = [p for p in fixed_points(G.elements[i]) if alpha.index_of(p, 1e-7) >= 0]
            if len(inside) == 2:
                x = inside[0]
        psi = _involution_chart(f, alpha, x=x)
        img = [apply(psi, p).value for p in alpha]
        rest = [v for v in img if not (_close(v, 1) or _close(v, -1))]
        a = rest[0]
        b = next(v for v in rest if not (_close(v, a) or _close(v, -a)))
        rep.psi, rep.params = psi, {"a": a, "b": b, "ab": a * b}
        if route_ab6(a, b) != case:
            rep.notes.append(f"(a, b) = ({a}, {b}) routes to {route_ab6(a, b)} but the stabilizer is {gt}")
    rep = _finish(rep, alpha, G)
    if case == "5(d)i":
        rep.notes.append("vector reported under the 2+mC reading of the Klein four-group")
        rep.alternates = reading_vectors(alpha, G)[1:]
    return rep


def classify(alpha, tol: float = TOL) -> SmallCaseReport:
    alpha = as_config(alpha, tol)
    fn = {4: classify4, 5: classify5, 6: classify6}.get(alpha.n)
    if fn is None:
        raise DegenerateInput(f"small-case trees cover 4, 5 or 6 points, not {alpha.n}")
    return fn(alpha, tol)
