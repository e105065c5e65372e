"""Full Mobius symmetry group of a finite point set by triple enumeration."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateInput, InfiniteStabilizer, NotInvariant, ToleranceBreakdown
from .sphere import (
    TOL,
    MobiusMap,
    SpherePoint,
    _sort_key,
    _to_standard,
    apply_hom,
    hom_array,
    hom_to_xyz,
    mobius_equal,
    rotation_data,
)


class PointConfig:
    """Finite set of distinct points of the sphere.

    Points are sorted lexicographically on canonical coordinates unless
    ``keep_order`` is set (the moduli coordinates need the order 0, 1, inf, ...).
    """

    def __init__(self, points: Iterable, tol: float = TOL, keep_order: bool = False):
        pts = [SpherePoint.of(z) for z in points]
        if not pts:
            raise DegenerateInput("empty configuration")
        if not keep_order:
            pts.sort(key=_sort_key)
        self.points: tuple[SpherePoint, ...] = tuple(pts)
        self.tol = tol
        self.hom = hom_array(pts)
        self.xyz = hom_to_xyz(self.hom)
        self.tree = cKDTree(self.xyz)
        pairs = sorted(self.tree.query_pairs(2 * tol))
        if pairs:
            raise DegenerateInput(f"duplicate points at indices {pairs}", pairs)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def __repr__(self):
        return f"PointConfig({list(self.points)!r})"

    def values(self) -> list[complex]:
        return [p.value for p in self.points]

    def match_hom(self, h: np.ndarray, tol: float | None = None) -> np.ndarray:
        """Index of the point within tol of each row of h, or -1."""
        tol = self.tol if tol is None else tol
        d, idx = self.tree.query(hom_to_xyz(h), k=1, distance_upper_bound=2 * tol, workers=-1)
        idx = np.asarray(idx, dtype=int)
        idx[~(np.asarray(d) < 2 * tol)] = -1
        return idx

    def index_of(self, z, tol: float | None = None) -> int:
        return int(self.match_hom(hom_array([z]), tol)[0])

    def same_set(self, other: "PointConfig", tol: float | None = None) -> bool:
        if other.n != self.n:
            return False
        idx = self.match_hom(other.hom, tol)
        return bool((idx >= 0).all() and len(set(idx.tolist())) == self.n)


def as_config(alpha, tol: float = TOL) -> PointConfig:
    return alpha if isinstance(alpha, PointConfig) else PointConfig(alpha, tol)


def _image_indices(f: MobiusMap, alpha: PointConfig, tol: float) -> np.ndarray | None:
    idx = alpha.match_hom(apply_hom(f, alpha.hom), tol)
    if (idx < 0).any() or len(np.unique(idx)) != alpha.n:
        return None
    return idx


def is_invariant(f: MobiusMap, alpha, tol: float = TOL) -> bool:
    return _image_indices(f, as_config(alpha, tol), tol) is not None


def permutation_of(f: MobiusMap, alpha, tol: float = TOL) -> tuple[int, ...]:
    """sigma (0-based) with f(z_k) = z_sigma(k)."""
    idx = _image_indices(f, as_config(alpha, tol), tol)
    if idx is None:
        raise NotInvariant("map does not permute the configuration")
    return tuple(int(i) for i in idx)


def element_order(f: MobiusMap, tol: float = TOL) -> int:
    if f.is_identity(tol):
        return 1
    rd = rotation_data(f, _any_fixed(f, tol), tol)
    return rd.order_p


def _any_fixed(f, tol):
    from .sphere import fixed_points

    return fixed_points(f, tol)[0]


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen, lens = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        k, c = s, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            c += 1
        lens.append(c)
    return tuple(sorted(lens, reverse=True))


class SymmetryGroup:
    """Finite group of Mobius maps; identity first.

    ``perms`` holds the permutation of each element on ``config`` when the
    group was computed as a stabilizer.
    """

    def __init__(self, elements: Sequence[MobiusMap], perms=None, config: PointConfig | None = None,
                 tol: float = TOL):
        self.elements: tuple[MobiusMap, ...] = tuple(elements)
        self.perms = None if perms is None else tuple(tuple(p) for p in perms)
        self.config = config
        self.tol = tol

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def _stack(self):
        return np.array([g.m for g in self.elements])

    def find(self, f: MobiusMap, tol: float | None = None) -> int:
        """Index of f in the group, or -1."""
        tol = self.tol * 100 if tol is None else tol
        ms = self._stack()
        d = np.minimum(np.linalg.norm(ms - f.m, axis=(1, 2)), np.linalg.norm(ms + f.m, axis=(1, 2)))
        k = int(np.argmin(d))
        return k if d[k] < tol else -1

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table: table[i, j] = index of elements[i] o elements[j]."""
        n = self.order
        t = np.empty((n, n), dtype=int)
        if self.perms is not None:
            lookup = {p: k for k, p in enumerate(self.perms)}
            for i, p in enumerate(self.perms):
                for j, q in enumerate(self.perms):
                    t[i, j] = lookup[tuple(p[x] for x in q)]
            return t
        ms = self._stack()
        scale = np.maximum(1.0, np.linalg.norm(ms, axis=(1, 2)))
        for i in range(n):
            prods = np.einsum("ab,kbc->kac", ms[i], ms)
            for j in range(n):
                pm = prods[j] / np.sqrt(np.linalg.det(prods[j]))
                d = np.minimum(np.linalg.norm(ms - pm, axis=(1, 2)), np.linalg.norm(ms + pm, axis=(1, 2))) / scale
                k = int(np.argmin(d))
                if d[k] > 1e-6:
                    raise ToleranceBreakdown("product of two elements is not in the group")
                t[i, j] = k
        return t

    @cached_property
    def inverse_index(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        t = self.table
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = t[i, x]
                k += 1
            out.append(k)
        return tuple(out)

    def conjugate(self, psi: MobiusMap) -> "SymmetryGroup":
        """{psi g psi^-1}; permutations kept when the config is transported too."""
        from .sphere import compose, inverse

        pinv = inverse(psi)
        els = [compose(psi, compose(g, pinv)) for g in self.elements]
        return SymmetryGroup(els, None, None, self.tol)


def _candidate_maps(anchor: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Matrices sending the anchor triple to each target triple (vectorized)."""
    t_src = _to_standard(*anchor)
    w1, w2, w3 = targets[:, 0], targets[:, 1], targets[:, 2]
    # columns beta*w3 (image of inf) and alpha*w1 (image of 0) summing to w2
    det = w3[:, 0] * w1[:, 1] - w3[:, 1] * w1[:, 0]
    beta = (w2[:, 0] * w1[:, 1] - w2[:, 1] * w1[:, 0]) / det
    alpha = (w3[:, 0] * w2[:, 1] - w3[:, 1] * w2[:, 0]) / det
    s = np.empty((len(targets), 2, 2), dtype=complex)
    s[:, :, 0] = beta[:, None] * w3
    s[:, :, 1] = alpha[:, None] * w1
    return s @ t_src


def compute_stabilizer(alpha, tol: float = TOL) -> SymmetryGroup:
    """All Mobius maps preserving alpha, found by sending the first three
    points to every ordered triple of distinct points."""
    alpha = as_config(alpha, tol)
    n = alpha.n
    if n <= 2:
        raise InfiniteStabilizer(f"a set of {n} points has an infinite stabilizer")
    h = alpha.hom
    anchor = h[:3]
    probe = h[3:min(n, 5)]
    jj, kk = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    jj, kk = jj.ravel(), kk.ravel()
    found = []
    for i in range(n):
        keep = (jj != kk) & (jj != i) & (kk != i)
        j, k = jj[keep], kk[keep]
        targets = np.stack([np.broadcast_to(h[i], (len(j), 2)), h[j], h[k]], axis=1)
        mats = _candidate_maps(anchor, targets)
        ok = np.ones(len(j), dtype=bool)
        for z in probe:
            img = mats @ z
            img /= np.linalg.norm(img, axis=1, keepdims=True)
            ok &= alpha.match_hom(img, tol) >= 0
        for m in mats[ok]:
            f = MobiusMap(m)
            idx = _image_indices(f, alpha, tol)
            if idx is not None:
                found.append((tuple(int(x) for x in idx), f))
    found.sort(key=lambda pf: (pf[0] != tuple(range(n)), pf[0]))
    perms = [p for p, _ in found]
    elements = [f for _, f in found]
    if len(set(perms)) != len(perms):
        raise ToleranceBreakdown("two candidate maps induce the same permutation")
    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            d = min(np.linalg.norm(elements[a].m - elements[b].m), np.linalg.norm(elements[a].m + elements[b].m))
            if d < 10 * tol:
                raise ToleranceBreakdown("candidate maps within 10*tol of each other")
    pset = set(perms)
    for p in perms:
        for q in perms:
            if tuple(p[x] for x in q) not in pset:
                raise ToleranceBreakdown("candidate set is not closed under composition")
    return SymmetryGroup(elements, perms, alpha, tol)


def rotation_of(f: MobiusMap, tol: float = TOL):
    """Rotation data anchored at the first fixed point (canonical order)."""
    return rotation_data(f, _any_fixed(f, tol), tol)


def group_equal(g1: SymmetryGroup, g2: SymmetryGroup, tol: float = 1e-7) -> bool:
    if g1.order != g2.order:
        return False
    return all(any(mobius_equal(f, g, tol) for g in g2.elements) for f in g1.elements)
