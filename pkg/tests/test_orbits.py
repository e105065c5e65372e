import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import W3, W5
from mobsym.classify import GroupType, group_type
from mobsym.errors import InvalidLabel, InvalidRecipe, NotInvariantUnderGroup, SeedOnExceptionalOrbit
from mobsym.orbits import (
    build_config,
    exceptional_orbits,
    label_domain_min,
    labels_for,
    orbit,
    orbit_decomposition,
    parse_label,
    split_orbit,
    standard_group,
    tetrahedral_subgroup,
)
from mobsym.sphere import INF, SpherePoint, apply, chordal
from mobsym.stabilizer import PointConfig, SymmetryGroup, compute_stabilizer, group_equal, is_invariant
from mobsym.sphere import MobiusMap

I, O, T = GroupType("Icosahedral"), GroupType("Octahedral"), GroupType("Tetrahedral")


def test_standard_group_examples():
    assert standard_group(GroupType("Dihedral", 5)).group.order == 10
    assert exceptional_orbits(standard_group(T).group).sizes() == [4, 4, 6]
    assert exceptional_orbits(standard_group(I).group).sizes() == [12, 20, 30]
    assert exceptional_orbits(standard_group(O).group).sizes() == [6, 8, 12]


def test_standard_generators_as_stated():
    gens = standard_group(T).generators
    z = 0.3 + 0.2j
    assert apply(gens[1], z).value == pytest.approx((math.sqrt(2) - z) / (math.sqrt(2) * z + 1))
    gens = standard_group(O).generators
    assert apply(gens[1], z).value == pytest.approx((1j * z + 1) / (z + 1j))


def test_orbit_examples():
    G = standard_group(GroupType("Cyclic", 5)).group
    assert orbit(G, 0).n == 1
    D = standard_group(GroupType("Dihedral", 7)).group
    A = orbit(D, 1)
    assert A.same_set(PointConfig([cmath.exp(2j * math.pi * k / 7) for k in range(7)]))
    assert orbit(standard_group(I).group, 0.31 + 0.17j).n == 60


def test_orbit_decomposition_examples():
    G = standard_group(GroupType("Cyclic", 4)).group
    parts = orbit_decomposition(G, [0, 1, 1j, -1, -1j])
    assert sorted(p.n for p in parts) == [1, 4]
    triv = SymmetryGroup([MobiusMap.identity()])
    assert [p.n for p in orbit_decomposition(triv, [0, 1, 2])] == [1, 1, 1]
    with pytest.raises(NotInvariantUnderGroup):
        orbit_decomposition(G, [0, 1, 2])


def test_exceptional_orbit_examples():
    ex = exceptional_orbits(standard_group(GroupType("Cyclic", 6)).group)
    assert {str(o[0]) for o in ex.orbits.values()} == {str(SpherePoint.of(0)), str(INF)}
    ex = exceptional_orbits(standard_group(GroupType("Dihedral", 2)).group)
    want = [PointConfig([0, INF]), PointConfig([1, -1]), PointConfig([1j, -1j])]
    assert all(any(o.same_set(w) for o in ex.orbits.values()) for w in want)


def test_build_config_examples():
    cfg = build_config(I, "F", m=0)
    assert cfg.n == 12 and compute_stabilizer(cfg).order == 60
    roots = np.roots([1, 0, 0, 0, 0, 11, 0, 0, 0, 0, -1])
    assert cfg.same_set(PointConfig([0, INF] + list(roots)), 1e-8)
    cfg = build_config(GroupType("Dihedral", 5), "A+2", m=0)
    assert cfg.same_set(PointConfig([0, INF] + [W5**k for k in range(5)]))
    cfg = build_config(GroupType("Cyclic", 3), "1+2C", seeds=[1, 2])
    assert cfg.same_set(PointConfig([0, 1, W3, W3 * W3, 2, 2 * W3, 2 * W3 * W3]))
    with pytest.raises(InvalidRecipe):
        build_config(T, "F", m=0)
    with pytest.raises(SeedOnExceptionalOrbit):
        build_config(GroupType("Dihedral", 4), "A+1C", seeds=[1j])
    with pytest.raises(InvalidRecipe):
        build_config(GroupType("Dihedral", 4), "A+1C", seeds=[0.3, 0.4j])


def test_parse_label():
    lab = parse_label(I, "F+mB", 2)
    assert str(lab) == "F+2B" and lab.free_orbits == 2
    assert parse_label(I, "(1+m)B", 0).free_orbits == 1
    assert str(parse_label(T, "VE+1B")) == "FE+1B"
    assert str(parse_label(GroupType("Dihedral", 5), "A+2+mC", 0)) == "A+2+0C"
    assert str(parse_label(GroupType("Cyclic", 3), "1+2C")) == "1+2C"
    for bad in ("B+mC", "X+mB", "F+mC"):
        with pytest.raises(InvalidLabel):
            parse_label(GroupType("Dihedral", 5) if bad.endswith("C") else I, bad, 1)


ALL = ([I, O, T] + [GroupType("Dihedral", p) for p in (2, 3, 4, 5)]
       + [GroupType("Cyclic", p) for p in (2, 3, 4)])


@pytest.mark.parametrize("gt", ALL, ids=str)
def test_witnesses_have_exact_stabilizer(gt):
    """Recipes with enough generic orbits reproduce exactly the standard
    group (cyclic ones need three, or two extra symmetries may appear)."""
    std = standard_group(gt).group
    for label in labels_for(gt):
        lab = parse_label(gt, label, 0)
        m = max(3 if gt.kind == "Cyclic" else 2, label_domain_min(gt, lab))
        cfg = build_config(gt, label, m=m)
        for g in std.elements:
            assert is_invariant(g, cfg, 1e-8)
        G = compute_stabilizer(cfg)
        assert group_type(G) == gt, label
        assert group_equal(G, std)


@settings(max_examples=25)
@given(st.sampled_from(ALL), st.floats(0.05, 3), st.floats(0, 2 * math.pi))
def test_orbit_stabilizer(gt, r, th):
    G = standard_group(gt).group
    z = SpherePoint.of(r * cmath.exp(1j * th))
    stab = sum(1 for g in G.elements if chordal(apply(g, z), z) < 1e-8)
    assert orbit(G, z).n * stab == G.order


def test_tetrahedral_subgroups():
    for gt in (I, O):
        H = tetrahedral_subgroup(gt)
        assert group_type(H) == T
        G = standard_group(gt).group
        assert all(G.find(h) >= 0 for h in H.elements)


def _restricted_pieces(big, sub):
    T_ex = exceptional_orbits(sub)
    out = []
    for name, o in exceptional_orbits(big).orbits.items():
        parts = split_orbit(sub, o)
        names = sorted(next((k for k, q in T_ex.orbits.items() if q.same_set(p, 1e-8)), f"B{p.n}") for p in parts)
        out.append((name, names))
    return dict(out)


def test_icosahedral_splits_into_tetrahedral_orbits():
    pieces = _restricted_pieces(standard_group(I).group, tetrahedral_subgroup(I))
    assert pieces == {"V": ["B12", "F", "V"], "F": ["B12"], "E": ["B12", "B12", "E"]}


def test_octahedral_splits_into_tetrahedral_orbits():
    pieces = _restricted_pieces(standard_group(O).group, tetrahedral_subgroup(O))
    assert pieces == {"V": ["F", "V"], "F": ["E"], "E": ["B12"]}


@pytest.mark.parametrize("n,k", [(3, 2), (2, 3), (4, 2), (3, 3)])
def test_dihedral_refinement(n, k):
    """The p*n-th roots of unity split under D_n into A_n, possibly B_n, and
    generic orbits of size 2n."""
    D = standard_group(GroupType("Dihedral", n)).group
    pts = [cmath.exp(2j * math.pi * j / (n * k)) for j in range(n * k)]
    sizes = sorted(p.n for p in orbit_decomposition(D, pts))
    want = [n] + ([n] if k % 2 == 0 else []) + [2 * n] * ((k - 1) // 2)
    assert sizes == sorted(want)
