"""Standard models of the finite Mobius groups, orbits, and witness configurations."""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .classify import GroupType, group_type
from .errors import (
    ClosureFailure,
    InvalidLabel,
    InvalidRecipe,
    NotInvariantUnderGroup,
    SeedOnExceptionalOrbit,
)
from .sphere import (
    TOL,
    MobiusMap,
    SpherePoint,
    _sort_key,
    apply,
    apply_hom,
    chordal,
    compose,
    fixed_points,
    mobius_from_triple,
)
from .stabilizer import PointConfig, SymmetryGroup, as_config, compute_stabilizer, is_invariant

SQRT2 = math.sqrt(2.0)
W3 = cmath.exp(2j * math.pi / 3)


# ---------------------------------------------------------------- labels

POLY_PARTS = {
    frozenset(): "", frozenset("F"): "F", frozenset("V"): "V", frozenset("E"): "E",
    frozenset("FV"): "FV", frozenset("VE"): "VE", frozenset("EF"): "EF", frozenset("FVE"): "FVE",
}


@dataclass(frozen=True)
class OrbitLabel:
    """Orbit-type label.

    ``parts`` names the exceptional orbits present: polyhedral "F", "FV", ...;
    dihedral "", "A", "AB" with ``pole`` for {0, inf}; cyclic "", "1", "2".
    ``m`` counts generic orbits beyond the leading one in the (1+m)B name.
    """

    family: str
    parts: str
    m: int
    pole: bool = False

    @property
    def template(self) -> str:
        if self.family == "polyhedral":
            return f"{self.parts}+mB" if self.parts else "(1+m)B"
        if self.family == "dihedral":
            head = [x for x in (self.parts, "2" if self.pole else "") if x]
            return "+".join(head + ["mC"])
        return f"{self.parts}+mC" if self.parts else "mC"

    def __str__(self):
        t = self.template
        return t.replace("m", str(self.m))

    @property
    def free_orbits(self) -> int:
        return self.m + 1 if (self.family == "polyhedral" and not self.parts) else self.m


def family_of(gt: GroupType) -> str:
    if gt.kind in ("Icosahedral", "Octahedral", "Tetrahedral"):
        return "polyhedral"
    if gt.kind == "Dihedral":
        return "dihedral"
    if gt.kind == "Cyclic":
        return "cyclic"
    raise InvalidLabel(f"no orbit labels for {gt}")


def parse_label(gt: GroupType, label: str, m: int | None = None) -> OrbitLabel:
    """Parse "F+mB", "F+2B", "(1+m)B", "A+2+0C", "1+mC", "2C", or bare "F", "A+2"."""
    fam = family_of(gt)
    s = label.replace(" ", "")
    mm = re.fullmatch(r"\(1\+(m|\d+)\)B", s)
    if mm:
        if fam != "polyhedral":
            raise InvalidLabel(f"{label!r} is a polyhedral label")
        return _finish(gt, OrbitLabel(fam, "", _m(mm.group(1), m)))
    toks = s.split("+") if s else []
    tail = None
    if toks and re.fullmatch(r"(m|\d+)[BC]", toks[-1]):
        tail = toks.pop()
        if (tail[-1] == "B") != (fam == "polyhedral"):
            raise InvalidLabel(f"{label!r} does not fit {gt}")
        mval = _m(tail[:-1], m)
    else:
        if m is None:
            raise InvalidLabel(f"{label!r} needs an explicit m")
        mval = m
    if fam == "polyhedral":
        if len(toks) != 1 or not toks[0] or set(toks[0]) - set("FVE") or len(set(toks[0])) != len(toks[0]):
            raise InvalidLabel(f"bad polyhedral label {label!r}")
        return _finish(gt, OrbitLabel(fam, POLY_PARTS[frozenset(toks[0])], mval))
    if fam == "dihedral":
        pole = "2" in toks
        rest = [t for t in toks if t != "2"]
        if len(rest) > 1 or (rest and rest[0] not in ("A", "AB")) or toks.count("2") > 1:
            raise InvalidLabel(f"bad dihedral label {label!r}")
        return _finish(gt, OrbitLabel(fam, rest[0] if rest else "", mval, pole))
    if len(toks) > 1 or (toks and toks[0] not in ("1", "2")):
        raise InvalidLabel(f"bad cyclic label {label!r}")
    return _finish(gt, OrbitLabel(fam, toks[0] if toks else "", mval))


def _m(tok: str, m: int | None) -> int:
    if tok == "m":
        if m is None:
            raise InvalidLabel("label uses m but no value was given")
        return int(m)
    v = int(tok)
    if m is not None and int(m) != v:
        raise InvalidLabel(f"label says m={v} but m={m} was given")
    return v


def _finish(gt: GroupType, lab: OrbitLabel) -> OrbitLabel:
    if lab.m < 0:
        raise InvalidLabel("m must be nonnegative")
    if gt.kind == "Tetrahedral":
        # the two size-4 orbits are interchangeable; a lone one is called F
        parts = {"V": "F", "VE": "FE", "EF": "FE"}.get(lab.parts, lab.parts)
        lab = OrbitLabel(lab.family, parts, lab.m)
    return lab


def label_domain_min(gt: GroupType, lab: OrbitLabel) -> int:
    """Smallest m allowed for the label in the published type lists."""
    if gt.kind in ("Icosahedral", "Octahedral"):
        return 0
    if gt.kind == "Tetrahedral":
        return {"F": 1, "E": 1, "FV": 1, "FE": 0, "FVE": 1, "": 0}[lab.parts]
    if gt.kind == "Dihedral":
        return 0 if (lab.parts == "A") else 1
    return 1


def labels_for(gt: GroupType) -> list[str]:
    if gt.kind in ("Icosahedral", "Octahedral"):
        return ["F+mB", "V+mB", "E+mB", "FV+mB", "VE+mB", "EF+mB", "FVE+mB", "(1+m)B"]
    if gt.kind == "Tetrahedral":
        return ["F+mB", "E+mB", "FV+mB", "FE+mB", "FVE+mB", "(1+m)B"]
    if gt.kind == "Dihedral":
        return ["mC", "A+mC", "AB+mC", "2+mC", "A+2+mC", "AB+2+mC"]
    return ["mC", "1+mC", "2+mC"]


# ---------------------------------------------------------------- groups


@dataclass
class StandardGroup:
    type: GroupType
    generators: list[MobiusMap]
    group: SymmetryGroup


def closure(generators, expected: int | None = None, tol: float = 1e-8) -> SymmetryGroup:
    """All products of the generators, breadth first."""
    elements = [MobiusMap.identity()]
    stack = np.array([elements[0].m])
    frontier = [elements[0]]
    budget = 10 * expected * max(1, len(generators)) if expected else 10**5
    products = 0
    while frontier:
        nxt = []
        for f in frontier:
            for g in generators:
                h = compose(g, f)
                products += 1
                if products > budget:
                    raise ClosureFailure("closure did not stabilize within the product budget")
                d = np.minimum(np.linalg.norm(stack - h.m, axis=(1, 2)), np.linalg.norm(stack + h.m, axis=(1, 2)))
                if d.min() >= tol:
                    elements.append(h)
                    stack = np.concatenate([stack, h.m[None]])
                    nxt.append(h)
        frontier = nxt
    if expected is not None and len(elements) != expected:
        raise ClosureFailure(f"closure has order {len(elements)}, expected {expected}")
    return SymmetryGroup(elements, tol=1e-8)


def icosahedral_vertices() -> list[SpherePoint]:
    """{0, inf} and the ten roots of z^10 + 11 z^5 - 1 (polished)."""
    coeffs = np.zeros(11, dtype=complex)
    coeffs[0], coeffs[5], coeffs[10] = 1, 11, -1
    comp = np.zeros((10, 10), dtype=complex)
    comp[0, :] = -coeffs[1:] / coeffs[0]
    comp[1:, :-1] = np.eye(9)
    roots = np.linalg.eigvals(comp)
    for _ in range(4):
        roots = roots - (roots**10 + 11 * roots**5 - 1) / (10 * roots**9 + 55 * roots**4)
    assert np.max(np.abs(roots**10 + 11 * roots**5 - 1)) < 1e-12
    return [SpherePoint.of(0), SpherePoint.of("inf")] + [SpherePoint.of(r) for r in roots]


def _icosahedral_generators() -> list[MobiusMap]:
    rot = MobiusMap.rotation(2 * math.pi / 5)
    flip = MobiusMap.from_coeffs(0, -1, 1, 0)
    verts = icosahedral_vertices()
    cfg = PointConfig(verts)
    zero = verts[0]
    near = sorted((v for v in verts[2:] if abs(v.a) < 1), key=lambda v: cmath.phase(v.a))
    for v1, v2 in permutations(near, 2):
        t = mobius_from_triple([zero, v1, v2], [v1, v2, zero])
        if t.power(3).is_identity(1e-8) and is_invariant(t, cfg, 1e-8):
            return [rot, flip, t]
    raise ClosureFailure("no order-3 symmetry of the vertex set found")


def standard_generators(gt: GroupType) -> list[MobiusMap]:
    k = gt.kind
    if k == "Cyclic":
        return [MobiusMap.rotation(2 * math.pi / gt.p)]
    if k == "Dihedral":
        return [MobiusMap.rotation(2 * math.pi / gt.p), MobiusMap.from_coeffs(0, 1, 1, 0)]
    if k == "Tetrahedral":
        return [MobiusMap.rotation(2 * math.pi / 3), MobiusMap.from_coeffs(-1, SQRT2, SQRT2, 1)]
    if k == "Octahedral":
        return [MobiusMap.rotation(math.pi / 2), MobiusMap.from_coeffs(1j, 1, 1, 1j)]
    if k == "Icosahedral":
        return _icosahedral_generators()
    raise InvalidRecipe("the trivial group has no standard model")


_STD_CACHE: dict[GroupType, StandardGroup] = {}


def standard_group(gt: GroupType) -> StandardGroup:
    if isinstance(gt, str):
        gt = GroupType.parse(gt)
    if gt not in _STD_CACHE:
        gens = standard_generators(gt)
        _STD_CACHE[gt] = StandardGroup(gt, gens, closure(gens, gt.order))
    return _STD_CACHE[gt]


# ---------------------------------------------------------------- orbits


def _dedup(points, tol):
    out = []
    for p in points:
        if all(chordal(p, q) >= tol for q in out):
            out.append(p)
    return out


def orbit(G: SymmetryGroup, z, tol: float = TOL) -> PointConfig:
    z = SpherePoint.of(z)
    return PointConfig(_dedup([apply(g, z) for g in G.elements], max(tol, 1e-8)), tol)


def orbit_decomposition(G: SymmetryGroup, alpha, tol: float = TOL) -> list[PointConfig]:
    alpha = as_config(alpha, tol)
    imgs = []
    for g in G.elements:
        idx = alpha.match_hom(apply_hom(g, alpha.hom), max(tol, 1e-8))
        if (idx < 0).any():
            raise NotInvariantUnderGroup("configuration is not a union of orbits")
        imgs.append(idx)
    seen, parts = set(), []
    for k in range(alpha.n):
        if k in seen:
            continue
        members = sorted({int(idx[k]) for idx in imgs})
        seen.update(members)
        parts.append(PointConfig([alpha[i] for i in members], tol))
    return parts


@dataclass
class ExceptionalOrbits:
    type: GroupType
    orbits: dict[str, PointConfig]

    def sizes(self) -> list[int]:
        return sorted(o.n for o in self.orbits.values())

    def all_points(self) -> list[SpherePoint]:
        return [p for o in self.orbits.values() for p in o]


def _fixed_orbits(G: SymmetryGroup, tol):
    pts = []
    for g in G.elements[1:]:
        pts.extend(fixed_points(g, tol))
    pts = _dedup(sorted(pts, key=_sort_key), 1e-7)
    out = []
    for p in pts:
        if any(any(chordal(p, q) < 1e-7 for q in o) for o in out):
            continue
        out.append(orbit(G, p, tol))
    return out


def exceptional_orbits(G: SymmetryGroup, tol: float = TOL) -> ExceptionalOrbits:
    gt = group_type(G)
    orbs = _fixed_orbits(G, tol)
    labeled: dict[str, PointConfig] = {}
    if gt.kind in ("Icosahedral", "Octahedral"):
        names = {12: "F", 20: "V", 30: "E"} if gt.kind == "Icosahedral" else {6: "F", 8: "V", 12: "E"}
        for o in orbs:
            labeled[names[o.n]] = o
    elif gt.kind == "Tetrahedral":
        fours = [o for o in orbs if o.n == 4]
        fours.sort(key=lambda o: (o.index_of(0) < 0,))
        labeled["F"], labeled["V"] = fours
        labeled["E"] = next(o for o in orbs if o.n == 6)
    elif gt.kind == "Dihedral":
        p = gt.p
        rot = [i for i, k in enumerate(G.orders) if k == p and p > 2]
        if rot:
            fp = fixed_points(G.elements[rot[0]], tol)
            pole = next(o for o in orbs if o.index_of(fp[0]) >= 0)
        else:
            pole = next((o for o in orbs if o.index_of(0) >= 0), orbs[0])
        labeled["pole"] = pole
        rest = [o for o in orbs if o is not pole]
        rest.sort(key=lambda o: (o.index_of(1) < 0,))
        labeled["A"], labeled["B"] = rest
    elif gt.kind == "Cyclic":
        labeled["S"], labeled["N"] = [o for o in orbs]
    return ExceptionalOrbits(gt, labeled)


# ---------------------------------------------------------------- witnesses


def _wanted_orbits(lab: OrbitLabel) -> list[str]:
    if lab.family == "polyhedral":
        return list(lab.parts)
    if lab.family == "dihedral":
        return list(lab.parts) + (["pole"] if lab.pole else [])
    return {"": [], "1": ["S"], "2": ["S", "N"]}[lab.parts]


def default_seeds(gt: GroupType, count: int, rng=None) -> list[complex]:
    """Deterministic generic seed points."""
    rng = np.random.default_rng(12345) if rng is None else rng
    out = []
    while len(out) < count:
        r = 0.35 + 0.5 * rng.random()
        th = 2 * math.pi * rng.random()
        out.append(r * cmath.exp(1j * th))
    return out


def build_config(gt, label: str, seeds=None, m: int | None = None, tol: float = TOL,
                 check: bool = True) -> PointConfig:
    """Union of the named exceptional orbits of the standard model and the
    orbits of the seeds. Missing seeds are filled with generic points."""
    if isinstance(gt, str):
        gt = GroupType.parse(gt)
    if gt.kind == "Trivial":
        raise InvalidRecipe("no witnesses for the trivial group")
    seeds = list(seeds or [])
    if m is None and re.search(r"m", label) and seeds:
        m = len(seeds) - (1 if label.replace(" ", "").startswith("(1+") else 0)
    try:
        lab = parse_label(gt, label, m)
    except InvalidLabel as e:
        raise InvalidRecipe(str(e)) from e
    if lab.m < label_domain_min(gt, lab):
        raise InvalidRecipe(f"{lab.template} requires m >= {label_domain_min(gt, lab)} for {gt}")
    need = lab.free_orbits
    if len(seeds) > need:
        raise InvalidRecipe(f"{len(seeds)} seeds given but {lab} has {need} generic orbits")
    seeds = seeds + default_seeds(gt, need - len(seeds))
    std = standard_group(gt)
    exc = exceptional_orbits(std.group)
    pts: list[SpherePoint] = []
    for name in _wanted_orbits(lab):
        pts.extend(exc.orbits[name])
    special = exc.all_points()
    for s in seeds:
        s = SpherePoint.of(s)
        if min(chordal(s, q) for q in special) < 10 * tol:
            raise SeedOnExceptionalOrbit(f"seed {s!r} lies on an exceptional orbit")
        o = orbit(std.group, s, tol)
        if o.n != gt.order:
            raise SeedOnExceptionalOrbit(f"seed {s!r} has a short orbit")
        if any(min(chordal(p, q) for q in pts) < 10 * tol for p in o) if pts else False:
            raise InvalidRecipe(f"seed {s!r} repeats an orbit already present")
        pts.extend(o)
    if len(pts) < 3:
        raise InvalidRecipe(f"{lab} for {gt} has only {len(pts)} points")
    cfg = PointConfig(pts, tol)
    if check and lab.free_orbits == 0:
        order = compute_stabilizer(cfg, tol).order
        if order != gt.order:
            raise InvalidRecipe(f"{lab} for {gt} has a larger symmetry group (order {order})")
    return cfg


# ---------------------------------------------------------------- subgroups


def tetrahedral_subgroup(gt) -> SymmetryGroup:
    """A tetrahedral subgroup of the standard octahedral or icosahedral model.

    In the octahedral group it is generated by the order-3 elements; in the
    icosahedral group it is the normalizer of a Klein four-subgroup.
    """
    if isinstance(gt, str):
        gt = GroupType.parse(gt)
    G = standard_group(gt).group
    T = G.table
    orders = G.orders
    if gt.kind == "Octahedral":
        gens = [G.elements[i] for i in range(G.order) if orders[i] == 3]
        return closure(gens, 12)
    if gt.kind != "Icosahedral":
        raise InvalidRecipe(f"{gt} has no tetrahedral subgroup")
    a = next(i for i in range(G.order) if orders[i] == 2)
    b = next(i for i in range(G.order) if orders[i] == 2 and i != a and T[a, i] == T[i, a])
    klein = {0, a, b, int(T[a, b])}
    inv = G.inverse_index
    keep = [g for g in range(G.order) if {int(T[T[g, k], inv[g]]) for k in klein} == klein]
    if len(keep) != 12:
        raise ClosureFailure(f"Klein normalizer has order {len(keep)}, expected 12")
    return SymmetryGroup([G.elements[g] for g in keep], tol=1e-8)


def split_orbit(H: SymmetryGroup, points, tol: float = 1e-8) -> list[PointConfig]:
    """Orbits of the subgroup H on an H-invariant point set."""
    return orbit_decomposition(H, points, tol)
