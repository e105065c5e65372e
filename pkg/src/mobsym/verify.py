"""Reproduction suites: each returns a list of named checks with pass/fail
and a small JSON-friendly detail record."""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .classify import GroupType, group_type
from .errors import InvalidRecipe, MobsymError
from .moduli import (
    all_reps,
    check_kn,
    f_sigma,
    g_sigma,
    g_sigma_closed_form,
    perm_mul,
    rep_perm,
)
from .orbits import (
    build_config,
    default_seeds,
    exceptional_orbits,
    label_domain_min,
    labels_for,
    orbit,
    parse_label,
    split_orbit,
    standard_group,
    tetrahedral_subgroup,
)
from .reptheory import (
    chart_of,
    character_from_jacobian,
    character_table,
    closed_form_multvec,
    config_multiplicity,
    element_character,
    orbit_type_label,
    reading_vectors,
)
from .smallcases import (
    NORMAL_FORMS,
    STATED_VECTORS,
    W3,
    _D3_UPGRADES,
    _PM_SETS,
    classify4,
    classify5,
    classify6,
    cubic_partner,
    route_a5,
)
from .sphere import TOL, MobiusMap, apply, mobius_equal
from .stabilizer import PointConfig, compute_stabilizer, group_equal, permutation_of

S3, S5 = math.sqrt(3), math.sqrt(5)


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "check": self.name, "ok": self.ok, **self.detail}


def _rng(seed: int = 2024) -> np.random.Generator:
    return np.random.default_rng(seed)


def _family_types() -> list[GroupType]:
    out = [GroupType("Icosahedral"), GroupType("Octahedral"), GroupType("Tetrahedral")]
    out += [GroupType("Dihedral", p) for p in range(2, 7)]
    out += [GroupType("Cyclic", p) for p in range(2, 6)]
    return out


def _stab(points, tol):
    cfg = PointConfig(points, tol)
    G = compute_stabilizer(cfg, tol)
    return cfg, G, group_type(G)


# ---------------------------------------------------------------- n = 4, 5, 6


def suite_n4(tol: float = TOL) -> list[Check]:
    out = []
    cases = [(l, GroupType("Dihedral", 4)) for l in (2, 0.5, -1)]
    cases += [(l, GroupType("Tetrahedral")) for l in ((1 + S3 * 1j) / 2, (1 - S3 * 1j) / 2)]
    rng = _rng(4)
    while len(cases) < 25:
        lam = complex(rng.normal(), rng.normal()) * 2
        if min(abs(lam - s) for s in (0, 1, 2, 0.5, -1, (1 + S3 * 1j) / 2, (1 - S3 * 1j) / 2)) > 0.05:
            cases.append((lam, GroupType("Dihedral", 2)))
    for lam, want in cases:
        _, G, gt = _stab([0, 1, "inf", lam], tol)
        rep = classify4([0, 1, "inf", lam], tol)
        ok = gt == want and G.order == want.order and rep.type == want and not rep.notes
        out.append(Check("n4", f"lambda={lam:.6g}", ok, {"order": G.order, "type": str(gt)}))
    return out


def _row(suite, name, rep, want_type, want_vec, want_case=None) -> Check:
    ok = rep.type == want_type and rep.computed == tuple(want_vec)
    if want_case is not None:
        ok = ok and rep.case == want_case
    if rep.vector is not None:
        ok = ok and rep.vector == rep.computed
    return Check(suite, name, ok, {"case": rep.path, "type": str(rep.type), "vector": list(rep.computed or ())})


def suite_n5(tol: float = TOL) -> list[Check]:
    D5, Z4, D3, Z2 = (GroupType("Dihedral", 5), GroupType("Cyclic", 4), GroupType("Dihedral", 3),
                      GroupType("Cyclic", 2))
    out = [
        _row("n5", "5th roots", classify5(NORMAL_FORMS["roots5"], tol), D5, (0, 1, 0, 0), "1"),
        _row("n5", "{0,1,i,-1,-i}", classify5(NORMAL_FORMS["Z4"], tol), Z4, (1, 1, 0, 0), "2"),
        _row("n5", "{0,inf,1,w,w^2}", classify5(NORMAL_FORMS["D3"], tol), D3, (1, 0, 0), "3"),
    ]
    for a in (3j, 2 + 1j, 0.5 - 0.7j, -1.3 + 0.2j):
        out.append(_row("n5", f"a={a}", classify5([0, 1, -1, a, -a], tol), Z2, (1, 1), "4(d)"))
    by_case = {"1": (D5, (0, 1, 0, 0)), "2": (Z4, (1, 1, 0, 0)), "3": (D3, (1, 0, 0))}
    for a in (S5 + 2, -S5 - 2, S5 - 2, 2 - S5, 1j, -1j, S3 * 1j, -S3 * 1j, 1j / S3, -1j / S3):
        case = route_a5(a)
        gt, vec = by_case[case]
        out.append(_row("n5", f"special a={a:.6g}", classify5([0, 1, -1, a, -a], tol), gt, vec, case))
    return out


def suite_n6(tol: float = TOL) -> list[Check]:
    D6, Z5, S4, D3, K4, Z2 = (GroupType("Dihedral", 6), GroupType("Cyclic", 5), GroupType("Octahedral"),
                              GroupType("Dihedral", 3), GroupType("Dihedral", 2), GroupType("Cyclic", 2))
    out = [
        _row("n6", "6th roots", classify6(NORMAL_FORMS["roots6"], tol), D6, (0, 1, 0, 0, 0, 1), "1"),
        _row("n6", "{0,1,w,..,w^4}", classify6(NORMAL_FORMS["Z5"], tol), Z5, (1, 1, 1, 0, 0), "2"),
        _row("n6", "{0,inf,1,i,-1,-i}", classify6(NORMAL_FORMS["S4"], tol), S4, (0, 0, 1, 0, 0), "3"),
    ]
    for a in (2 + 1j, 0.4 + 0.3j, -3 + 0.5j):
        pts = [1, W3, W3 * W3, a, a * W3, a * W3 * W3]
        out.append(_row("n6", f"D3 branch a={a}", classify6(pts, tol), D3, (1, 1, 0), "4(c)"))
    for a, b in ((2, 0.5), (3j, 1j / 3), (0.6 + 0.8j, -1 / (0.6 + 0.8j)), (2 + 1j, 1 / (2 + 1j))):
        out.append(_row("n6", f"ab=+-1 a={a}", classify6([1, -1, a, -a, b, -b], tol), K4, (1, 0, 1, 1), "5(d)i"))
    for a, b in ((0.5, 1.5j), (2 + 1j, -0.3 + 0.9j), (3, 0.2 + 0.1j)):
        out.append(_row("n6", f"generic a={a}, b={b}", classify6([1, -1, a, -a, b, -b], tol), Z2, (1, 2), "5(d)ii"))
    by_case = {"1": (D6, STATED_VECTORS[6]["1"]), "3": (S4, STATED_VECTORS[6]["3"])}
    for case, vals in _D3_UPGRADES.items():
        for a in vals:
            pts = [1, W3, W3 * W3, a, a * W3, a * W3 * W3]
            gt, vec = by_case[case]
            out.append(_row("n6", f"D3 special a={a:.6g}", classify6(pts, tol), gt, vec, case))
    for case, pairs in _PM_SETS.items():
        for a, b in pairs:
            gt, vec = by_case[case]
            out.append(_row("n6", f"+-set ({a:.6g}, {b:.6g})", classify6([1, -1, a, -a, b, -b], tol),
                            gt, vec, case))
    rng = _rng(6)
    worst, count = None, 0
    while count < 20:
        a = complex(rng.normal(), rng.normal())
        for b in cubic_partner(a):
            pts = [1, -1, a, -a, b, -b]
            if min(abs(x - y) for i, x in enumerate(pts) for y in pts[i + 1:]) < 1e-3:
                continue
            _, G, gt = _stab(pts, 1e-8)
            count += 1
            if G.order < 6 or gt.kind not in ("Dihedral", "Octahedral"):
                worst = (a, b, str(gt))
    out.append(Check("n6", "cubic condition gives order >= 6", worst is None, {"samples": count}))
    return out


# ---------------------------------------------------------------- orbits


_CENSUS = {"Icosahedral": [12, 20, 30], "Octahedral": [6, 8, 12], "Tetrahedral": [4, 4, 6]}


def suite_orbits(tol: float = TOL) -> list[Check]:
    out = []
    for gt in _family_types() + [GroupType("Dihedral", 7), GroupType("Cyclic", 6)]:
        G = standard_group(gt).group
        sizes = exceptional_orbits(G, tol).sizes()
        if gt.kind in _CENSUS:
            want = _CENSUS[gt.kind]
        elif gt.kind == "Dihedral":
            want = sorted([2, gt.p, gt.p])
        else:
            want = [1, 1]
        generic = [orbit(G, s, tol).n for s in default_seeds(gt, 5, _rng(gt.order))]
        ok = sizes == want and all(k == gt.order for k in generic)
        out.append(Check("orbits", str(gt), ok, {"exceptional": sizes, "generic": generic}))
    return out


def suite_decomposition(tol: float = TOL) -> list[Check]:
    """Exceptional orbits of I and O split into orbits of an aligned tetrahedral subgroup."""
    expect = {
        "Icosahedral": {"V": ["F", "V", None], "F": [None], "E": ["E", None, None]},
        "Octahedral": {"V": ["F", "V"], "F": ["E"], "E": [None]},
    }
    out = []
    for kind, table in expect.items():
        gt = GroupType(kind)
        T = tetrahedral_subgroup(gt)
        tex = exceptional_orbits(T, tol)
        big = exceptional_orbits(standard_group(gt).group, tol)
        for name, want in table.items():
            parts = split_orbit(T, big.orbits[name], 1e-8)
            got = []
            for p in parts:
                hit = [k for k, o in tex.orbits.items() if o.same_set(p, 1e-8)]
                got.append(hit[0] if hit else (None if p.n == 12 else f"size {p.n}"))
            ok = sorted(got, key=str) == sorted(want, key=str)
            out.append(Check("decomposition", f"{name}_{kind[0]}", ok, {"pieces": [str(g) for g in got]}))
        seed = default_seeds(gt, 1, _rng(7))[0]
        pieces = split_orbit(T, orbit(standard_group(gt).group, seed, tol), 1e-8)
        k = gt.order // 12
        ok = len(pieces) == k and all(p.n == 12 for p in pieces)
        out.append(Check("decomposition", f"B_{kind[0]}(X) splits into {k} T-orbits", ok,
                         {"pieces": [p.n for p in pieces]}))
    return out


# ---------------------------------------------------------------- characters


def character_samples(max_n: int = 14) -> list[tuple[str, PointConfig]]:
    """Invariant configurations of every family with at most max_n points."""
    out = []
    for gt in _family_types():
        for label in labels_for(gt):
            for m in (0, 1, 2):
                try:
                    lab = parse_label(gt, label, m)
                    if m < label_domain_min(gt, lab):
                        continue
                    cfg = build_config(gt, label, m=m, check=False)
                except InvalidRecipe:
                    continue
                if 5 <= cfg.n <= max_n:
                    out.append((f"{gt} {lab}", cfg))
    return out


def character_pairs(max_n: int = 14):
    """(name, element index, formula character, Jacobian trace, restricted trace, CR residual)."""
    rows = []
    for name, cfg in character_samples(max_n):
        G = compute_stabilizer(cfg)
        chart = chart_of(cfg)
        for i, f in enumerate(G.elements):
            chi = element_character(f, cfg)
            tr, rtr, cr = character_from_jacobian(G.perms[i], chart)
            rows.append((name, i, chi, tr, rtr, cr))
    return rows


def suite_characters(tol: float = TOL, rows=None) -> list[Check]:
    rows = character_pairs() if rows is None else rows
    err = max(abs(r[2] - r[3]) for r in rows)
    cr = max(r[5] for r in rows)
    names = {r[0].split()[0] for r in rows}
    fams = {n.split("(")[0] for n in names}
    return [
        Check("characters", "sample size", len(rows) >= 200 and len(fams) == 5,
              {"elements": len(rows), "families": sorted(fams)}),
        Check("characters", "formula vs Jacobian trace", err < 1e-6, {"max_error": err}),
        Check("characters", "Cauchy-Riemann residual", cr < 1e-6, {"max_residual": cr}),
    ]


def suite_sparsity(tol: float = TOL, rows=None) -> list[Check]:
    rows = character_pairs() if rows is None else rows
    err = max(abs(r[3] - r[4]) for r in rows)
    return [Check("sparsity", "restricted trace equals trace", err < 1e-6,
                  {"elements": len(rows), "max_error": err})]


# ---------------------------------------------------------------- tables


def table_vector(gt: GroupType, label: str, m: int, tol: float = TOL):
    """(cfg, requested label, computed vector, stabilizer order) for a recipe.

    When the recipe's true stabilizer is larger than gt the tangent character
    is restricted to the standard copy of gt."""
    cfg = build_config(gt, label, m=m, tol=tol, check=False)
    lab = parse_label(gt, label, m)
    G = compute_stabilizer(cfg, tol)
    if G.order == gt.order:
        vecs = dict(reading_vectors(cfg, G))
        if group_type(G) != gt:
            return cfg, lab, None, G.order
    else:
        vecs = dict(reading_vectors(cfg, standard_group(gt).group))
    return cfg, lab, vecs.get(str(lab)), G.order


def suite_multvec_tables(tol: float = TOL, types=None, ms=(0, 1, 2), ico_ms=None) -> list[Check]:
    out = []
    for gt in types or _family_types():
        dims = character_table(gt).dims
        for label in labels_for(gt):
            for m in (ico_ms if (ico_ms is not None and gt.kind == "Icosahedral") else ms):
                lab = parse_label(gt, label, m)
                if m < label_domain_min(gt, lab):
                    continue
                want = closed_form_multvec(gt, lab)
                try:
                    cfg, lab, vec, order = table_vector(gt, label, m, tol)
                except InvalidRecipe as e:
                    # fewer than three points: not a configuration
                    out.append(Check("multvec-tables", f"{gt} {lab}", True, {"skipped": str(e)}))
                    continue
                dim_ok = sum(a * d for a, d in zip(want, dims)) == cfg.n - 3
                ok = vec == want and dim_ok
                out.append(Check("multvec-tables", f"{gt} {lab}", ok,
                                 {"n": cfg.n, "vector": list(vec) if vec else None, "closed_form": list(want),
                                  "stabilizer_order": order}))
    return out


# ---------------------------------------------------------------- invariance


def random_mobius(rng: np.random.Generator, max_cond: float = 8.0) -> MobiusMap:
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if np.linalg.cond(m) < max_cond:
            return MobiusMap(m)


def mixed_configurations() -> list[tuple[str, list]]:
    return [
        ("5th roots", NORMAL_FORMS["roots5"]),
        ("Z4", NORMAL_FORMS["Z4"]),
        ("D3", NORMAL_FORMS["D3"]),
        ("S4", NORMAL_FORMS["S4"]),
        ("K4", [1, -1, 2, -2, 0.5, -0.5]),
        ("Z2", [1, -1, 0.5, -0.5, 1.5j, -1.5j]),
        ("Z3 witness", [0, 1, W3, W3 * W3, 2, 2 * W3, 2 * W3 * W3]),
        ("T FE+0B", build_config("Tetrahedral", "FE+0B").points),
        ("D4 A+1C", build_config("Dihedral(4)", "A+1C").points),
        ("I F+0B", build_config("Icosahedral", "F+0B").points),
    ]


def _signature(points, tol):
    cfg, G, gt = _stab(points, tol)
    res = config_multiplicity(cfg, G)
    return str(gt), str(res.label), res.vector


def suite_conjugation(tol: float = TOL, trials: int = 50) -> list[Check]:
    rng = _rng(8)
    out = []
    for name, pts in mixed_configurations():
        base = _signature(pts, tol)
        bad = 0
        for _ in range(trials):
            psi = random_mobius(rng)
            try:
                sig = _signature([apply(psi, p) for p in pts], 1e-8)
            except MobsymError:
                sig = None
            bad += sig != base
        out.append(Check("conjugation", name, bad == 0,
                         {"type": base[0], "label": base[1], "vector": list(base[2]), "failures": bad}))
    return out


# ---------------------------------------------------------------- corollaries


def suite_corollaries(tol: float = TOL) -> list[Check]:
    out = []
    for kind in ("Icosahedral", "Octahedral"):
        gt = GroupType(kind)
        seeds = default_seeds(gt, 2, _rng(9))
        pairs = [
            (build_config(gt, "F+0B"), build_config(gt, "V+0B")),
            (build_config(gt, "E+0B"), build_config(gt, "(1+0)B", seeds=seeds[:1])),
            (build_config(gt, "(1+0)B", seeds=seeds[:1]), build_config(gt, "(1+0)B", seeds=seeds[1:])),
        ]
        for a, b in pairs:
            va = config_multiplicity(a)
            vb = config_multiplicity(b)
            u = PointConfig(list(a) + list(b))
            vu = config_multiplicity(u)
            want = tuple(x + y + (1 if k == 3 else 0) for k, (x, y) in enumerate(zip(va.vector, vb.vector)))
            name = f"{kind} {va.label} + {vb.label} = {vu.label}"
            out.append(Check("corollaries", name, vu.vector == want,
                             {"union": list(vu.vector), "expected": list(want), "n": u.n}))
    return out


# ---------------------------------------------------------------- witnesses


def suite_witnesses(tol: float = TOL) -> list[Check]:
    pts = [0, 1, W3, W3 * W3, 2, 2 * W3, 2 * W3 * W3]
    _, G, gt = _stab(pts, tol)
    out = [Check("witnesses", "{0,1,w,w^2,2,2w,2w^2}", gt == GroupType("Cyclic", 3) and G.order == 3,
                 {"order": G.order, "type": str(gt)})]
    recipes = [("Icosahedral", "F+0B"), ("Octahedral", "F+0B"), ("Tetrahedral", "F+1B"),
               ("Dihedral(5)", "A+0C"), ("Dihedral(4)", "2+1C"), ("Cyclic(4)", "1+1C"), ("Cyclic(3)", "1+2C")]
    for t, label in recipes:
        want = GroupType.parse(t)
        cfg = build_config(want, label)
        G = compute_stabilizer(cfg, tol)
        same = group_equal(G, standard_group(want).group)
        out.append(Check("witnesses", f"{want} {label}", group_type(G) == want and same,
                         {"order": G.order, "type": str(group_type(G))}))
    return out


# ---------------------------------------------------------------- action laws


def random_lambda(rng: np.random.Generator, n: int, sep: float = 0.15) -> np.ndarray:
    while True:
        lam = (rng.normal(size=n - 3) + 1j * rng.normal(size=n - 3)) * 1.5
        pts = np.concatenate([[0, 1], lam])
        d = np.abs(pts[:, None] - pts[None, :]) + np.eye(len(pts)) * 10
        if d.min() > sep:
            return lam


def suite_action(tol: float = TOL, samples: int = 1000) -> list[Check]:
    rng = _rng(11)
    law = cocycle = 0.0
    for _ in range(samples):
        n = int(rng.integers(5, 10))
        lam = random_lambda(rng, n)
        sigma = tuple(int(x) for x in rng.permutation(n))
        pi = tuple(int(x) for x in rng.permutation(n))
        try:
            mid = g_sigma(lam, sigma)
            lhs = g_sigma(mid, pi)
            rhs = g_sigma(lam, perm_mul(pi, sigma))
            fl = f_sigma(mid, pi) @ f_sigma(lam, sigma)
            fr = f_sigma(lam, perm_mul(pi, sigma))
        except MobsymError:
            continue
        scale = max(1.0, float(np.max(np.abs(rhs))))
        law = max(law, float(np.max(np.abs(lhs - rhs))) / scale)
        cocycle = max(cocycle, 0.0 if mobius_equal(fl, fr, 1e-8) else 1.0)
    closed = 0.0
    for n in range(4, 9):
        lam = random_lambda(rng, n)
        for rep in all_reps(n):
            v = tuple(int(x) for x in rng.permutation(3)) + tuple(3 + int(x) for x in rng.permutation(n - 3))
            for v in (None, v):
                gen = g_sigma(lam, perm_mul(rep_perm(n, rep), v) if v else rep_perm(n, rep))
                cf = g_sigma_closed_form(lam, rep, v)
                closed = max(closed, float(np.max(np.abs(gen - cf))) / max(1.0, float(np.max(np.abs(gen))))
                              if len(gen) else 0.0)
    return [
        Check("action", "g_pi o g_sigma = g_{pi sigma}", law < 1e-8, {"max_error": law}),
        Check("action", "f_sigma cocycle", cocycle == 0.0, {}),
        Check("action", "closed forms match generic g_sigma", closed < 1e-9, {"max_error": closed}),
    ]


# ---------------------------------------------------------------- registry


SUITES = {
    "n4": suite_n4,
    "n5": suite_n5,
    "n6": suite_n6,
    "orbits": suite_orbits,
    "decomposition": suite_decomposition,
    "characters": suite_characters,
    "sparsity": suite_sparsity,
    "multvec-tables": suite_multvec_tables,
    "conjugation": suite_conjugation,
    "corollaries": suite_corollaries,
    "witnesses": suite_witnesses,
    "action": suite_action,
}


def run_suite(name: str, tol: float = TOL) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](tol)
