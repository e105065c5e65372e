"""Isomorphism type and conjugacy classes of a finite Mobius group."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .errors import UnrecognizedGroup
from .stabilizer import SymmetryGroup, rotation_of

KINDS = ("Trivial", "Cyclic", "Dihedral", "Tetrahedral", "Octahedral", "Icosahedral")
_ALIASES = {
    "I": "Icosahedral", "A5": "Icosahedral", "O": "Octahedral", "S4": "Octahedral",
    "T": "Tetrahedral", "A4": "Tetrahedral", "Z": "Cyclic", "C": "Cyclic", "D": "Dihedral",
    "K4": "Dihedral",
}


@dataclass(frozen=True)
class GroupType:
    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in ("Cyclic", "Dihedral") and self.p < 2:
            raise ValueError(f"{self.kind} needs p >= 2")

    @property
    def order(self) -> int:
        return {"Trivial": 1, "Cyclic": self.p, "Dihedral": 2 * self.p, "Tetrahedral": 12,
                "Octahedral": 24, "Icosahedral": 60}[self.kind]

    def __str__(self):
        return f"{self.kind}({self.p})" if self.kind in ("Cyclic", "Dihedral") else self.kind

    @classmethod
    def parse(cls, s: str) -> "GroupType":
        """Accepts "Dihedral(5)", "D5", "Z3", "Icosahedral", "I", "K4", ..."""
        s = s.strip()
        m = re.fullmatch(r"([A-Za-z]+)\s*\(?\s*(\d*)\s*\)?", s)
        if not m:
            raise ValueError(f"cannot parse group type {s!r}")
        name, num = m.group(1), m.group(2)
        if name + num in _ALIASES:
            name, num = _ALIASES[name + num], ("2" if name + num == "K4" else "")
        name = _ALIASES.get(name, name)
        name = name[:1].upper() + name[1:].lower()
        if name in ("Cyclic", "Dihedral"):
            return cls(name, int(num))
        return cls(name)


def dihedral_census(p: int) -> Counter:
    c = Counter()
    for k in range(p):
        c[p // gcd(k, p)] += 1
    c[2] += p
    return c


_POLY_CENSUS = {
    "Tetrahedral": Counter({1: 1, 2: 3, 3: 8}),
    "Octahedral": Counter({1: 1, 2: 9, 3: 8, 4: 6}),
    "Icosahedral": Counter({1: 1, 2: 15, 3: 20, 5: 24}),
}


def group_type(G: SymmetryGroup) -> GroupType:
    """Classify by element-order census."""
    n = G.order
    if n == 1:
        return GroupType("Trivial")
    census = Counter(G.orders)
    if census[n] > 0:
        return GroupType("Cyclic", n)
    for kind, c in _POLY_CENSUS.items():
        if census == c:
            return GroupType(kind)
    if n % 2 == 0 and census == dihedral_census(n // 2):
        return GroupType("Dihedral", n // 2)
    raise UnrecognizedGroup(f"order {n} with census {dict(census)} matches no finite Mobius group")


@dataclass
class ConjugacyPartition:
    classes: list[list[int]]
    labels: list[str]
    angle: dict[int, tuple[int, int]] = field(default_factory=dict)

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise KeyError(i)


def element_angle(G: SymmetryGroup, i: int) -> tuple[int, int]:
    """(order p, angle class min(q, p - q)); identity gives (1, 0)."""
    if i == 0:
        return (1, 0)
    rd = rotation_of(G.elements[i], G.tol)
    return (rd.order_p, min(rd.q, rd.order_p - rd.q))


def conjugacy_classes(G: SymmetryGroup) -> ConjugacyPartition:
    t, inv = G.table, G.inverse_index
    n = G.order
    seen = [False] * n
    classes = []
    for i in range(n):
        if seen[i]:
            continue
        cls = sorted({int(t[t[g, i], inv[g]]) for g in range(n)})
        for x in cls:
            seen[x] = True
        classes.append(cls)
    angle = {i: element_angle(G, i) for i in range(n)}
    squares = {int(t[i, i]) for i in range(n) if G.orders[i] == 4}
    kind = group_type(G).kind if n > 1 else "Trivial"
    labels = []
    for cls in classes:
        p, q = angle[cls[0]]
        if p == 1:
            lab = "identity"
        elif p == 2 and kind == "Octahedral":
            lab = "involution:square" if cls[0] in squares else "involution:other"
        elif p == 2:
            lab = "involution"
        else:
            lab = f"rotation:{p}:{q}"
        labels.append(lab)
    return ConjugacyPartition(classes, labels, angle)
