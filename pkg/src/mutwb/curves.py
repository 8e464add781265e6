"""Curve configurations on the flat torus and the signed crossing ledger.

Geodesic configurations are tuples of primitive classes in Z^2, oriented
along their class with co-orientation the +90 degree rotation.  All
crossings between two geodesics share one sign, so the positive crossing
count is [det]_+ and mutation re-straightens automatically.  The ledger
tracks positive crossing counts P[i][j] = <C_i, C_j>_+ plus per-curve
self-crossing counts for configurations that are not geodesic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonPrimitiveClass, NotSimple
from .seeds import Seed, is_primitive, mutation_sign, standard_symplectic

Class2 = tuple[int, int]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    """Determinant of the 2x2 matrix with columns (u, v), in that order."""
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class GeodesicConfig:
    classes: tuple[Class2, ...]

    def __post_init__(self):
        classes = tuple((int(a), int(b)) for a, b in self.classes)
        object.__setattr__(self, "classes", classes)
        for v in classes:
            if v == (0, 0):
                raise NonPrimitiveClass("curve classes must be nonzero")
            if not is_primitive(v):
                raise NonPrimitiveClass(f"curve class {v} is not primitive")

    @property
    def size(self) -> int:
        return len(self.classes)

    def check_index(self, k: int) -> None:
        if not 0 <= k < self.size:
            raise IndexError(f"curve index {k} out of range")


@dataclass(frozen=True)
class IntersectionLedger:
    P: tuple[tuple[int, ...], ...]
    s: tuple[int, ...]

    def __post_init__(self):
        P = tuple(tuple(int(x) for x in row) for row in self.P)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        n = len(P)
        if len(self.s) != n or any(len(row) != n for row in P):
            raise ValueError("ledger shapes must agree")
        for i, row in enumerate(P):
            if row[i] != 0:
                raise ValueError("P has zero diagonal; self-crossings live in s")
            if any(x < 0 for x in row):
                raise ValueError("crossing counts are nonnegative")
        if any(x < 0 for x in self.s):
            raise ValueError("self-crossing counts are nonnegative")

    @property
    def size(self) -> int:
        return len(self.P)

    def signed(self, i: int, j: int) -> int:
        """Algebraic crossing number <C_i, C_j> = P[i][j] - P[j][i]."""
        return self.P[i][j] - self.P[j][i]


def ledger_from_geodesics(cfg: GeodesicConfig) -> IntersectionLedger:
    n = cfg.size
    P = tuple(
        tuple(max(det2(cfg.classes[i], cfg.classes[j]), 0) if i != j else 0 for j in range(n))
        for i in range(n)
    )
    return IntersectionLedger(P, (0,) * n)


def is_mutable(led: IntersectionLedger, k: int) -> bool:
    if not 0 <= k < led.size:
        raise IndexError(f"curve index {k} out of range")
    return led.s[k] == 0


def mutate_ledger(led: IntersectionLedger, k: int) -> IntersectionLedger:
    """Positive-crossing bookkeeping of mutation at an embedded curve.

    Rows and columns through k swap roles; every other pair gains the
    composite crossings P[i][k] * P[k][j], and opposite-sign crossing pairs
    with C_k surface as self-crossings of the partner curve.
    """
    n = led.size
    if not 0 <= k < n:
        raise IndexError(f"curve index {k} out of range")
    if led.s[k] > 0:
        raise NotSimple(f"curve {k} has {led.s[k]} self-crossing(s)")
    P = [[0] * n for _ in range(n)]
    s = list(led.s)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i == k:
                P[k][j] = led.P[j][k]
            elif j == k:
                P[i][k] = led.P[k][i]
            else:
                P[i][j] = led.P[i][j] + led.P[i][k] * led.P[k][j]
    for j in range(n):
        if j != k:
            s[j] = led.s[j] + led.P[j][k] * led.P[k][j]
    return IntersectionLedger(tuple(tuple(row) for row in P), tuple(s))


def config_mutation_sign(cfg: GeodesicConfig, k: int) -> int:
    """Edge orientation at curve k; matches the seed-level rule exactly."""
    return mutation_sign(seed_of_config(cfg), k)


def mutate_geodesics(cfg: GeodesicConfig, k: int) -> GeodesicConfig:
    """Twist-and-straighten mutation on torus geodesics.

    v_k flips; the curves whose oriented crossing with C_k matches the edge
    orientation are carried to the straightened class v_i + |det| v_k.
    """
    cfg.check_index(k)
    eps = config_mutation_sign(cfg, k)
    vk = cfg.classes[k]
    new_classes = []
    for i, v in enumerate(cfg.classes):
        if i == k:
            new_classes.append((-vk[0], -vk[1]))
            continue
        c = eps * det2(v, vk)
        if c > 0:
            new_classes.append((v[0] + c * vk[0], v[1] + c * vk[1]))
        else:
            new_classes.append(v)
    return GeodesicConfig(tuple(new_classes))


def mutate_geodesics_word(cfg: GeodesicConfig, word: Iterable[int]) -> GeodesicConfig:
    for k in word:
        cfg = mutate_geodesics(cfg, k)
    return cfg


def seed_of_config(cfg: GeodesicConfig, signing: Sequence[int] | None = None) -> Seed:
    """The seed (H_1 with intersection form, curve classes); signing defaults to all 1."""
    sig = tuple(signing) if signing is not None else (1,) * cfg.size
    return Seed(standard_symplectic(), cfg.classes, sig)


def config_to_json(cfg: GeodesicConfig) -> dict:
    return {"classes": [list(v) for v in cfg.classes]}


def config_from_json(data: dict) -> GeodesicConfig:
    return GeodesicConfig(tuple((v[0], v[1]) for v in data["classes"]))


def ledger_to_json(led: IntersectionLedger) -> dict:
    return {"P": [list(row) for row in led.P], "s": list(led.s)}


def ledger_from_json(data: dict) -> IntersectionLedger:
    return IntersectionLedger(tuple(tuple(row) for row in data["P"]), tuple(data["s"]))


# ---------------------------------------------------------------------------
# example registry
# ---------------------------------------------------------------------------

VIANNA_CLASSES: tuple[Class2, ...] = ((1, -1), (1, 2), (-2, -1))


def keating_classes(p: int, q: int, r: int) -> tuple[Class2, ...]:
    return ((0, -1),) * p + ((1, 0),) * q + ((-1, 1),) * r


def example_config(name: str) -> dict:
    """Registry of named inputs; returns {"classes": ...} or {"ledger": ...}."""
    key = name.lower()
    if key == "vianna-p2":
        return {"classes": VIANNA_CLASSES}
    if key == "a2":
        return {"classes": ((1, 0), (0, 1))}
    if key == "torus-one-disk":
        return {"classes": ((1, 0),)}
    if key == "twocurves-opposite":
        return {"ledger": IntersectionLedger(((0, 1), (1, 0)), (0, 0))}
    if key.startswith("keating-"):
        parts = key.split("-")[1:]
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise KeyError(f"keating examples look like keating-p-q-r, got {name!r}")
        p, q, r = (int(x) for x in parts)
        if min(p, q, r) < 1:
            raise KeyError("keating multiplicities must be positive")
        return {"classes": keating_classes(p, q, r)}
    raise KeyError(f"unknown example {name!r}")


EXAMPLE_NAMES = ("a2", "vianna-p2", "keating-1-1-1", "torus-one-disk", "twocurves-opposite")
