import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import W3, W5
from mobsym.classify import GroupType, group_type
from mobsym.errors import DegenerateInput, DegenerateLambda
from mobsym.smallcases import (
    NORMAL_FORMS,
    classify,
    classify4,
    classify5,
    classify6,
    cross_ratio_orbit,
    cubic_condition,
    cubic_partner,
    route_a5,
)
from mobsym.sphere import INF, MobiusMap, apply
from mobsym.stabilizer import PointConfig, compute_stabilizer

S3, S5 = math.sqrt(3), math.sqrt(5)
D5, Z4, D3, Z2 = GroupType("Dihedral", 5), GroupType("Cyclic", 4), GroupType("Dihedral", 3), GroupType("Cyclic", 2)


def as_set(values):
    return sorted((round(v.real, 9), round(v.imag, 9)) for v in values)


def test_cross_ratio_orbit_examples():
    assert as_set(cross_ratio_orbit(2)) == as_set([2, -1, 0.5])
    assert len(cross_ratio_orbit((1 + S3 * 1j) / 2)) == 2
    orb = cross_ratio_orbit(3)
    assert len(orb) == 6
    assert all(abs(a - b) > 1e-6 for i, a in enumerate(orb) for b in orb[i + 1:])
    for bad in (0, 1):
        with pytest.raises(DegenerateLambda):
            cross_ratio_orbit(bad)


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_cross_ratio_orbit_sizes(lam):
    special3 = [2, 0.5, -1]
    special2 = [(1 + S3 * 1j) / 2, (1 - S3 * 1j) / 2]
    if min(abs(lam), abs(lam - 1)) < 1e-3 or min(abs(lam - s) for s in special3 + special2) < 1e-3:
        return
    assert len(cross_ratio_orbit(lam)) == 6


def test_classify4_examples():
    assert classify4([0, 1, INF, 2]).type == GroupType("Dihedral", 4)
    assert classify4([0, 1, INF, (1 + S3 * 1j) / 2]).type == GroupType("Tetrahedral")
    rep = classify4([0, 1, INF, 5])
    assert rep.type == GroupType("Dihedral", 2) and not rep.notes
    with pytest.raises(DegenerateInput):
        classify4([0, 1, 2])


def test_classify5_examples():
    rep = classify5([W5**k for k in range(5)])
    assert (rep.case, rep.type, rep.vector) == ("1", D5, (0, 1, 0, 0))
    rep = classify5([0, 1, -1, 3j, -3j])
    assert (rep.case, rep.type, rep.vector, rep.computed) == ("4(d)", Z2, (1, 1), (1, 1))
    assert abs(abs(rep.params["a"]) - 3) < 1e-9 or abs(abs(rep.params["a"]) - 1 / 3) < 1e-9
    rep = classify5([0, 1, -1, S3 * 1j, -S3 * 1j])
    assert (rep.case, rep.type, rep.vector) == ("3", D3, (1, 0, 0))
    assert classify5([0, 1, 2.3 + 0.7j, -5, 0.1j]).case == "5"


MOVE = MobiusMap.from_coeffs(1, 2j, 0.5, 3)


def _image_is(psi, alpha, target):
    return PointConfig([apply(psi, p) for p in alpha], 1e-8).same_set(PointConfig(target), 1e-7)


def test_normalizing_maps():
    for name, cls in (("roots5", classify5), ("Z4", classify5), ("D3", classify5),
                      ("roots6", classify6), ("Z5", classify6), ("S4", classify6)):
        pts = NORMAL_FORMS[name]
        moved = [apply(MOVE, p) for p in pts]
        rep = cls(moved, 1e-8)
        assert rep.psi is not None and _image_is(rep.psi, PointConfig(moved, 1e-8), pts)
    rep = classify5([0, 1, -1, 2 + 1j, -2 - 1j])
    a = rep.params["a"]
    assert _image_is(rep.psi, PointConfig([0, 1, -1, 2 + 1j, -2 - 1j]), [0, 1, -1, a, -a])


def test_classify6_examples():
    rep = classify6([cmath.exp(1j * math.pi * k / 3) for k in range(6)])
    assert (rep.case, rep.vector) == ("1", (0, 1, 0, 0, 0, 1))
    rep = classify6([0, 1] + [W5**k for k in range(1, 5)])
    assert (rep.case, rep.type, rep.vector) == ("2", GroupType("Cyclic", 5), (1, 1, 1, 0, 0))
    rep = classify6([1, -1, 2, -2, 0.5, -0.5])
    assert rep.path == "n=6, case 5(d)i"
    assert (rep.type, rep.vector, rep.computed) == (GroupType("Dihedral", 2), (1, 0, 1, 1), (1, 0, 1, 1))
    assert rep.params["ab"] == pytest.approx(1) or rep.params["ab"] == pytest.approx(-1)
    assert rep.alternates == [("A+1C", (1, 1, 0, 1))]
    rep = classify6([1, -1, 0.5, -0.5, 1.5j, -1.5j])
    assert (rep.case, rep.vector, rep.computed) == ("5(d)ii", (1, 2), (1, 2))
    rep = classify6([1, W3, W3 * W3, 2, 2 * W3, 2 * W3 * W3])
    assert (rep.case, rep.computed) == ("4(c)", (1, 1, 0))
    assert abs(rep.params["a"]) >= 1


def test_classify_dispatch():
    assert classify([0, 1, INF, 3]).n == 4
    with pytest.raises(DegenerateInput):
        classify([0, 1, 2, 3, 4, 5, 6])


@settings(max_examples=30)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=6, max_size=6),
       st.integers(5, 6))
def test_type_agrees_with_stabilizer(zs, n):
    pts = zs[:n]
    if min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:]) < 0.05:
        return
    rep = (classify5 if n == 5 else classify6)(pts)
    assert rep.type == group_type(compute_stabilizer(pts))


def test_special_value_sweep():
    """Z_2 exactly off the special set, the upgraded group on it."""
    special = {S5 + 2: D5, -S5 - 2: D5, S5 - 2: D5, 2 - S5: D5, 1j: Z4, -1j: Z4,
               S3 * 1j: D3, -S3 * 1j: D3, 1j / S3: D3, -1j / S3: D3}
    for a, want in special.items():
        assert classify5([0, 1, -1, a, -a]).type == want
        assert route_a5(a) != "4(d)"
    grid = [complex(x, y) for x in np.linspace(-4.3, 4.3, 23) for y in np.linspace(-4.1, 4.1, 21)]
    for a in grid:
        if min(abs(a - s) for s in list(special) + [0, 1, -1]) < 1e-3:
            continue
        if min(abs(a * s - t) for s in (1, -1) for t in (0, 1, -1)) < 0.05:
            continue
        rep = classify5([0, 1, -1, a, -a])
        assert rep.type == Z2, a
        assert route_a5(a) == "4(d)"


def test_cubic_condition_gives_d3():
    rng = np.random.default_rng(22)
    done = 0
    while done < 100:
        a = complex(rng.normal(), rng.normal())
        for b in cubic_partner(a):
            assert abs(cubic_condition(a, b)) < 1e-9 * max(1, abs(a) ** 3, abs(b) ** 3)
            pts = [1, -1, a, -a, b, -b]
            if min(abs(x - y) for i, x in enumerate(pts) for y in pts[i + 1:]) < 1e-3:
                continue
            G = compute_stabilizer(pts, 1e-8)
            assert G.order >= 6 and group_type(G).kind in ("Dihedral", "Octahedral")
            done += 1
