import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import W3, W5, mobius_maps
from mobsym.classify import GroupType
from mobsym.errors import InconsistentContext, InvalidRecipe, NotStabilizerElement, TrivialStabilizer
from mobsym.moduli import lambda_from_config
from mobsym.orbits import build_config, label_domain_min, labels_for, parse_label, standard_group
from mobsym.reptheory import (
    PRINTED_LITERAL,
    build_context,
    character_table,
    chart_of,
    character_from_jacobian,
    class_index,
    closed_form_multvec,
    config_multiplicity,
    element_character,
    multiplicity_from_jacobian,
    multiplicity_vector,
    orbit_type_label,
    reading_vectors,
)
from mobsym.sphere import INF, MobiusMap, apply
from mobsym.stabilizer import PointConfig, compute_stabilizer

I, O, T = GroupType("Icosahedral"), GroupType("Octahedral"), GroupType("Tetrahedral")
TABLE_TYPES = ([I, O, T] + [GroupType("Dihedral", p) for p in range(2, 9)]
               + [GroupType("Cyclic", p) for p in range(2, 8)])
GOLD = (1 + math.sqrt(5)) / 2

ROOTS5 = [W5**k for k in range(5)]
OCT6 = [0, INF, 1, 1j, -1, -1j]
EXAMPLES = [
    (ROOTS5, "Dihedral(5)", "A+0C", (0, 1, 0, 0)),
    ([0, 1, 1j, -1, -1j], "Cyclic(4)", "1+1C", (1, 1, 0, 0)),
    ([0, INF, 1, W3, W3 * W3], "Dihedral(3)", "A+2+0C", (1, 0, 0)),
    ([0, 1, -1, 3j, -3j], "Cyclic(2)", "1+2C", (1, 1)),
    ([cmath.exp(1j * math.pi * k / 3) for k in range(6)], "Dihedral(6)", "A+0C", (0, 1, 0, 0, 0, 1)),
    ([0, 1] + [W5**k for k in range(1, 5)], "Cyclic(5)", "1+1C", (1, 1, 1, 0, 0)),
    (OCT6, "Octahedral", "F+0B", (0, 0, 1, 0, 0)),
    ([1, W3, W3 * W3, 2 + 1j, (2 + 1j) * W3, (2 + 1j) * W3 * W3], "Dihedral(3)", "1C", (1, 1, 0)),
    ([1, -1, 2, -2, 0.5, -0.5], "Dihedral(2)", "2+1C", (1, 0, 1, 1)),
    ([1, -1, 0.5, -0.5, 1.5j, -1.5j], "Cyclic(2)", "3C", (1, 2)),
    ([0, INF] + ROOTS5, "Dihedral(5)", "A+2+0C", (1, 1, 0, 0)),
]


@pytest.mark.parametrize("gt", TABLE_TYPES, ids=str)
def test_character_table_orthogonality(gt):
    tab = character_table(gt)
    k = len(tab.rows)
    assert k == len(tab.class_sizes) and sum(tab.class_sizes) == gt.order
    gram = np.array([[tab.inner(i, j) for j in range(k)] for i in range(k)])
    assert np.abs(gram - np.eye(k)).max() < 1e-10
    assert sum(d * d for d in tab.dims) == gt.order


def test_character_table_entries():
    assert character_table(I).rows[3, 1] == pytest.approx(GOLD)
    assert character_table(O).rows[4, 3] == pytest.approx(2)
    p = 5
    rows = character_table(GroupType("Cyclic", p)).rows
    w = cmath.exp(2j * math.pi / p)
    for l in range(1, p + 1):
        for k in range(1, p + 1):
            assert rows[l - 1, k - 1] == pytest.approx(w ** (k * l))


def fixed_in(f, alpha):
    from mobsym.sphere import fixed_points

    return [q for q in fixed_points(f) if alpha.index_of(q, 1e-8) >= 0]


def test_element_character_examples():
    alpha = PointConfig([0, 1, 1j, -1, -1j, INF, 2, -2, 2j, -2j])
    G = compute_stabilizer(alpha)
    for i, f in enumerate(G.elements[1:], 1):
        chi = element_character(f, alpha)
        k = len(fixed_in(f, alpha))
        if k == 2:
            assert chi == pytest.approx(-1)
        elif G.orders[i] == 2 and k == 1:
            assert chi == pytest.approx(0)
        elif G.orders[i] == 2 and k == 0:
            assert chi == pytest.approx(1)
    assert element_character(MobiusMap.identity(), alpha) == pytest.approx(alpha.n - 3)
    with pytest.raises(NotStabilizerElement):
        element_character(MobiusMap.rotation(0.1), alpha)


def test_class_index_examples():
    icfg = build_config(I, "F", m=0)
    G = compute_stabilizer(icfg)
    ctx = build_context(icfg, G)
    assert class_index(G.elements[0], G, ctx) == 1
    four_pi_5 = [f for f in G.elements if abs(f.trace().real) == pytest.approx(2 * math.cos(2 * math.pi / 5))]
    # trace of a rotation by theta is +-2 cos(theta/2); angle 4 pi/5 has |trace| = 2 cos(2 pi/5)
    assert {class_index(f, G, ctx) for f in four_pi_5} == {3}
    dcfg = build_config(GroupType("Dihedral", 4), "A+1C")
    D = compute_stabilizer(dcfg)
    dctx = build_context(dcfg, D)
    inv2 = [f for i, f in enumerate(D.elements) if D.orders[i] == 2 and len(fixed_in(f, dcfg)) == 2]
    assert inv2 and {class_index(f, D, dctx) for f in inv2} == {4}


@pytest.mark.parametrize("pts,gt,label,vec", EXAMPLES, ids=[e[2] + " " + e[1] for e in EXAMPLES])
def test_published_small_vectors(pts, gt, label, vec):
    res = config_multiplicity(pts)
    assert str(res.context.type) == gt
    assert str(res.label) == label
    assert res.vector == vec
    jac = config_multiplicity(pts, source="jacobian")
    assert jac.vector == vec


def test_multiplicity_vector_from_lambda():
    for pts, _, _, vec in EXAMPLES[:4]:
        lam, _, _ = lambda_from_config(PointConfig(pts))
        assert multiplicity_vector(lam).vector == vec
        assert multiplicity_from_jacobian(lam).vector == vec
    with pytest.raises(TrivialStabilizer):
        multiplicity_vector([2 + 1j, -3, 0.5j])


def test_orbit_type_label_examples():
    z4 = PointConfig([0, 1, 1j, -1, -1j])
    r = orbit_type_label(z4, compute_stabilizer(z4))
    assert (r.label.template, r.m) == ("1+mC", 1)
    d5 = PointConfig([0, INF] + ROOTS5)
    assert str(orbit_type_label(d5, compute_stabilizer(d5)).label) == "A+2+0C"
    o = PointConfig(OCT6)
    assert str(orbit_type_label(o, compute_stabilizer(o)).label) == "F+0B"


def test_klein_readings():
    alpha = PointConfig([1, -1, 2, -2, 0.5, -0.5])
    got = dict(reading_vectors(alpha))
    assert got == {"2+1C": (1, 0, 1, 1), "A+1C": (1, 1, 0, 1)}
    r = orbit_type_label(alpha, compute_stabilizer(alpha))
    assert str(r.label) == "2+1C" and [str(a.label) for a in r.alternates] == ["A+1C"]
    # a unique involution axis outside alpha is the pole
    ab = build_config(GroupType("Dihedral", 2), "AB+1C")
    r = orbit_type_label(ab, compute_stabilizer(ab))
    assert str(r.label) == "AB+1C" and not r.alternates


def test_closed_form_examples():
    assert closed_form_multvec(I, "F+mB", 0) == (0, 1, 1, 0, 0)
    assert closed_form_multvec(O, "(1+m)B", 0) == (1, 1, 3, 2, 2)
    for p in (3, 4, 5, 6):
        assert closed_form_multvec(GroupType("Cyclic", p), "2+mC", 1) == (1,) * (p - 1) + (0,)


@pytest.mark.parametrize("gt", TABLE_TYPES, ids=str)
def test_closed_form_dimension_sum(gt):
    dims = character_table(gt).dims
    for label in labels_for(gt):
        for m in range(0, 5):
            lab = parse_label(gt, label, m)
            if m < label_domain_min(gt, lab):
                continue
            try:
                cfg_n = build_config(gt, label, m=m, check=False).n
            except InvalidRecipe:
                continue  # fewer than three points
            vec = closed_form_multvec(gt, lab)
            assert sum(a * d for a, d in zip(vec, dims)) + 3 == cfg_n, (label, m)


def test_tetrahedral_literal_fails_dimension_sum():
    dims = character_table(T).dims
    for m in range(4):
        n = 12 * (m + 1)
        lit = PRINTED_LITERAL[("Tetrahedral", "(1+m)B")](m)
        assert sum(a * d for a, d in zip(lit, dims)) != n - 3
        fixed = closed_form_multvec(T, "(1+m)B", m)
        assert sum(a * d for a, d in zip(fixed, dims)) == n - 3


FLIPPABLE = [
    (T, "E+1B"), (T, "FV+1B"), (T, "(1+m)B"),
    (GroupType("Dihedral", 4), "2+1C"), (GroupType("Dihedral", 4), "AB+1C"), (GroupType("Dihedral", 6), "mC"),
    (GroupType("Cyclic", 3), "2+3C"), (GroupType("Cyclic", 4), "mC"), (GroupType("Cyclic", 5), "2+3C"),
]


@pytest.mark.parametrize("gt,label", FLIPPABLE, ids=[f"{g} {l}" for g, l in FLIPPABLE])
def test_convention_independence(gt, label):
    m = 3 if gt.kind == "Cyclic" else 1
    cfg = build_config(gt, label, m=None if "m" not in label else m)
    G = compute_stabilizer(cfg)
    a = config_multiplicity(cfg, G)
    b = config_multiplicity(cfg, G, flip=True)
    assert a.context.ambiguous
    assert a.vector == b.vector


def test_flip_rejected_when_pinned():
    cfg = build_config(GroupType("Cyclic", 4), "1+1C")
    with pytest.raises(InconsistentContext):
        config_multiplicity(cfg, flip=True)


@settings(max_examples=20)
@given(mobius_maps(max_cond=6), st.sampled_from(EXAMPLES))
def test_conjugation_invariance(psi, ex):
    pts, gt, label, vec = ex
    moved = [apply(psi, p) for p in PointConfig(pts)]
    res = config_multiplicity(PointConfig(moved, 1e-8))
    assert (str(res.context.type), str(res.label), res.vector) == (gt, label, vec)


@pytest.mark.parametrize("pts", [e[0] for e in EXAMPLES] + [build_config(T, "FE+0B").points])
def test_formula_matches_jacobian_elementwise(pts):
    alpha = PointConfig(pts)
    G = compute_stabilizer(alpha)
    chart = chart_of(alpha)
    for i, f in enumerate(G.elements):
        tr, rtr, cr = character_from_jacobian(G.perms[i], chart)
        assert abs(element_character(f, alpha) - tr) < 1e-6
        assert abs(rtr - tr) < 1e-6
        assert cr < 1e-5


def test_union_adds_regular_slot():
    a = build_config(O, "F+0B")
    b = build_config(O, "V+0B")
    u = PointConfig(list(a) + list(b))
    va, vb, vu = (config_multiplicity(x).vector for x in (a, b, u))
    assert vu == tuple(x + y + (k == 3) for k, (x, y) in enumerate(zip(va, vb)))
