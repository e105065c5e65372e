"""Coordinates on the configuration space: K_n, the maps f_sigma and g_sigma.

A point lambda = (l_1, ..., l_{n-3}) stands for the ordered configuration
z_1 = 0, z_2 = 1, z_3 = inf, z_{i+3} = l_i.  Permutations are 0-based tuples
with perm[k] = sigma(k); products are composition, (pi * sigma)(k) = pi(sigma(k)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import NotInKn, StepTooLarge, UnsupportedSigma
from .sphere import INF, TOL, MobiusMap, _to_standard, apply, chordal, mobius_from_triple
from .stabilizer import PointConfig, as_config, compute_stabilizer

KN_TOL = 1e-7
FD_STEP = 1e-5

Perm = tuple


def perm_mul(pi: Sequence[int], sigma: Sequence[int]) -> Perm:
    return tuple(pi[s] for s in sigma)


def perm_inv(sigma: Sequence[int]) -> Perm:
    out = [0] * len(sigma)
    for k, s in enumerate(sigma):
        out[s] = k
    return tuple(out)


def perm_from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation of {0..n-1} from 1-based cycles, e.g. (1, 4), (2, 5)."""
    out = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            out[a - 1] = b - 1
    return tuple(out)


def check_kn(lam, tol: float = KN_TOL) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex).ravel()
    if not np.all(np.isfinite(lam)):
        raise NotInKn("coordinates must be finite")
    for i, x in enumerate(lam):
        if abs(x) < tol or abs(x - 1) < tol:
            raise NotInKn(f"coordinate {i + 1} = {x} hits 0 or 1")
    for i, j in combinations(range(len(lam)), 2):
        if abs(lam[i] - lam[j]) < tol:
            raise NotInKn(f"coordinates {i + 1} and {j + 1} coincide")
    return lam


def _points(lam: np.ndarray) -> np.ndarray:
    """Homogeneous coordinates of (0, 1, inf, lam...)."""
    h = np.empty((len(lam) + 3, 2), dtype=complex)
    h[0], h[1], h[2] = (0, 1), (1, 1), (1, 0)
    h[3:, 0], h[3:, 1] = lam, 1
    return h


def lambda_config(lam, tol: float = TOL) -> PointConfig:
    lam = check_kn(lam)
    return PointConfig([0, 1, INF] + list(lam), tol, keep_order=True)


def lambda_from_config(alpha, triple: Sequence[int] | None = None, spread: bool = False):
    """Moduli coordinates of an unordered configuration.

    Returns (lam, psi, order) where psi sends the chosen triple to (0, 1, inf)
    and order lists the point indices in moduli order.  With ``spread`` the
    triple is picked to be well separated (better conditioned Jacobians).
    """
    alpha = as_config(alpha)
    n = alpha.n
    if triple is None:
        triple = _spread_triple(alpha) if spread else (0, 1, 2)
    i1, i2, i3 = triple
    psi = mobius_from_triple([alpha[i1], alpha[i2], alpha[i3]], [0, 1, INF])
    order = [i1, i2, i3] + [k for k in range(n) if k not in triple]
    lam = np.array([apply(psi, alpha[k]).value for k in order[3:]], dtype=complex)
    return lam, psi, order


def _spread_triple(alpha: PointConfig) -> tuple[int, int, int]:
    n = alpha.n
    d = np.array([[chordal(alpha[i], alpha[j]) for j in range(n)] for i in range(n)])
    i1 = 0
    i3 = int(np.argmax(d[i1]))
    i2 = int(np.argmax(np.minimum(d[i1], d[i3])))
    return (i1, i2, i3)


def _check_perm(sigma, n):
    if sorted(sigma) != list(range(n)):
        raise UnsupportedSigma(f"{sigma} is not a permutation of {n} points")


def f_sigma(lam, sigma: Sequence[int]) -> MobiusMap:
    """Map sending z_{sigma^-1(1)}, z_{sigma^-1(2)}, z_{sigma^-1(3)} to 0, 1, inf."""
    lam = check_kn(lam)
    h = _points(lam)
    _check_perm(sigma, len(h))
    inv = perm_inv(sigma)
    return MobiusMap(_to_standard(h[inv[0]], h[inv[1]], h[inv[2]]))


def _g_raw(lam: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    h = _points(lam)
    inv = perm_inv(sigma)
    m = _to_standard(h[inv[0]], h[inv[1]], h[inv[2]])
    img = h[list(inv[3:])] @ m.T
    return img[:, 0] / img[:, 1]


def g_sigma(lam, sigma: Sequence[int]) -> np.ndarray:
    """g_sigma^(i)(lam) = f_sigma(z_{sigma^-1(i+3)})."""
    lam = check_kn(lam)
    _check_perm(sigma, len(lam) + 3)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _g_raw(lam, sigma)
    return check_kn(out)


# ---------------------------------------------------------------- closed forms

_H = {
    "id": lambda x: x,
    "1-x": lambda x: 1 - x,
    "1/x": lambda x: 1 / x,
    "x/(x-1)": lambda x: x / (x - 1),
    "(x-1)/x": lambda x: (x - 1) / x,
    "1/(1-x)": lambda x: 1 / (1 - x),
}
# images of (0, 1, inf) under each anharmonic map
_H_ON_STD = {
    "id": (0, 1, 2), "1-x": (1, 0, 2), "1/x": (2, 1, 0),
    "x/(x-1)": (0, 2, 1), "(x-1)/x": (2, 0, 1), "1/(1-x)": (1, 2, 0),
}


def _closed_rep(lam: np.ndarray, rep: tuple) -> np.ndarray:
    kind, idx = rep[0], [int(x) for x in rep[1:]]
    out = lam.astype(complex).copy()
    x = lam

    def L(p):
        return lam[p - 4]

    if kind == "e":
        return out
    if kind == "1":
        (p,) = idx
        P = L(p)
        out = (x - P) / (1 - P)
        out[p - 4] = -P / (1 - P)
    elif kind == "2":
        (p,) = idx
        P = L(p)
        out = x / P
        out[p - 4] = 1 / P
    elif kind == "3":
        (p,) = idx
        P = L(p)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = x * (1 - P) / (x - P)
        out[p - 4] = 1 - P
    elif kind == "12":
        p, q = idx
        P, Q = L(p), L(q)
        out = (x - P) / (Q - P)
        out[p - 4] = -P / (Q - P)
        out[q - 4] = (1 - P) / (Q - P)
    elif kind == "23":
        p, q = idx
        P, Q = L(p), L(q)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (P - Q) * x / (P * (x - Q))
        out[p - 4] = (P - Q) / (P * (1 - Q))
        out[q - 4] = (P - Q) / P
    elif kind == "31":
        p, q = idx
        P, Q = L(p), L(q)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (P - 1) * (x - Q) / ((Q - 1) * (x - P))
        out[p - 4] = (P - 1) / (Q - 1)
        out[q - 4] = (P - 1) * Q / ((Q - 1) * P)
    elif kind == "123":
        p, q, r = idx
        P, Q, R = L(p), L(q), L(r)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (Q - R) * (x - P) / ((Q - P) * (x - R))
        out[p - 4] = (Q - R) * P / ((Q - P) * R)
        out[q - 4] = (Q - R) * (1 - P) / ((Q - P) * (1 - R))
        out[r - 4] = (Q - R) / (Q - P)
    else:
        raise UnsupportedSigma(f"unknown coset representative {rep!r}")
    return out


def rep_perm(n: int, rep: tuple) -> Perm:
    """Permutation of a coset representative: ("1", p) is (1,p), ("12", p, q) is
    (1,p)(2,q), ("23", p, q) is (2,p)(3,q), ("31", p, q) is (3,p)(1,q),
    ("123", p, q, r) is (1,p)(2,q)(3,r); indices 1-based."""
    kind, idx = rep[0], [int(x) for x in rep[1:]]
    heads = {"e": [], "1": [1], "2": [2], "3": [3], "12": [1, 2], "23": [2, 3], "31": [3, 1], "123": [1, 2, 3]}
    if kind not in heads or len(heads[kind]) != len(idx):
        raise UnsupportedSigma(f"unknown coset representative {rep!r}")
    if len(set(idx)) != len(idx) or any(not 4 <= p <= n for p in idx):
        raise UnsupportedSigma(f"indices {idx} must be distinct and in 4..{n}")
    return perm_from_cycles(n, *[(a, b) for a, b in zip(heads[kind], idx)])


def _closed_v(lam: np.ndarray, v: Sequence[int]) -> np.ndarray:
    """v in S_{1,2,3} x S_{4..n}: lam -> (h(lam^tau(1)), ...), tau(i) = v^-1(i+3) - 3."""
    n = len(lam) + 3
    if sorted(v[:3]) != [0, 1, 2] or len(v) != n:
        raise UnsupportedSigma("V element must preserve {1, 2, 3}")
    inv = perm_inv(v)
    # h sends the point z_{v^-1(j)} (one of 0, 1, inf) to the j-th of (0, 1, inf)
    name = next(k for k, img in _H_ON_STD.items() if all(img[inv[j]] == j for j in range(3)))
    h = _H[name]
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.array([h(lam[inv[i + 3] - 3]) for i in range(n - 3)], dtype=complex)


def g_sigma_closed_form(lam, rep: tuple | None, v: Sequence[int] | None = None) -> np.ndarray:
    """Evaluate g_sigma from the explicit rational formulas, for
    sigma = rep_perm(rep) * v with v in S_{1,2,3} x S_{4..n}."""
    if rep is None:
        raise UnsupportedSigma("a coset decomposition (rep, v) is required")
    lam = check_kn(lam)
    x = lam if v is None else _closed_v(lam, v)
    return _closed_rep(x, tuple(rep))


def all_reps(n: int):
    """Every coset representative for n points."""
    idx = range(4, n + 1)
    yield ("e",)
    for k in ("1", "2", "3"):
        for p in idx:
            yield (k, p)
    for k in ("12", "23", "31"):
        for p in idx:
            for q in idx:
                if p != q:
                    yield (k, p, q)
    for p in idx:
        for q in idx:
            for r in idx:
                if len({p, q, r}) == 3:
                    yield ("123", p, q, r)


# ---------------------------------------------------------------- stabilizer side


def stabilizer_perms(lam, tol: float = TOL) -> list[Perm]:
    """Permutations sigma with f_sigma^lam in the stabilizer of [lam]."""
    lam = check_kn(lam)
    if len(lam) < 2:
        raise NotInKn("stabilizer_perms needs n >= 5")
    G = compute_stabilizer(lambda_config(lam, tol), tol)
    return list(G.perms)


@dataclass
class JacobianMatrix:
    entries: np.ndarray  # entries[j, i] = d g^(j) / d lam^i
    cr_residual: float

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def jacobian(lam, sigma: Sequence[int], h: float = FD_STEP) -> JacobianMatrix:
    """Central differences of g_sigma along real and imaginary directions."""
    lam = check_kn(lam)
    d = len(lam)
    _check_perm(sigma, d + 3)
    pts = np.concatenate([[0, 1], lam])
    for i in range(d):
        gaps = np.abs(pts - lam[i])
        gaps = np.delete(gaps, i + 2)
        if gaps.min() <= 10 * h:
            raise StepTooLarge(f"coordinate {i + 1} is within {10 * h} of another point")
    jr = np.empty((d, d), dtype=complex)
    ji = np.empty((d, d), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(d):
            e = np.zeros(d, dtype=complex)
            e[i] = h
            jr[:, i] = (_g_raw(lam + e, sigma) - _g_raw(lam - e, sigma)) / (2 * h)
            ji[:, i] = (_g_raw(lam + 1j * e, sigma) - _g_raw(lam - 1j * e, sigma)) / (2j * h)
    if not (np.all(np.isfinite(jr)) and np.all(np.isfinite(ji))):
        raise StepTooLarge("finite difference crossed a pole of g_sigma")
    scale = max(1.0, float(np.max(np.abs(jr))) if d else 1.0)
    resid = float(np.max(np.abs(jr - ji))) / scale if d else 0.0
    return JacobianMatrix((jr + ji) / 2, resid)


def restricted_trace(J: JacobianMatrix, sigma: Sequence[int]) -> complex:
    """Sum of diagonal entries k with sigma(k+3) in {1, 2, 3, k+3}."""
    d = J.entries.shape[0]
    return complex(sum(J.entries[k, k] for k in range(d) if sigma[k + 3] in (0, 1, 2, k + 3)))


def sparsity_mask(sigma: Sequence[int]) -> np.ndarray:
    """True where d g^(k) / d lam^l must vanish: sigma(l+3) not in {1,2,3,k+3}."""
    d = len(sigma) - 3
    mask = np.zeros((d, d), dtype=bool)
    for k in range(d):
        for l in range(d):
            mask[k, l] = sigma[l + 3] not in (0, 1, 2, k + 3)
    return mask
