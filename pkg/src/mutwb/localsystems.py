"""Torus local systems: rank-1 characters and commuting matrix pairs.

A rank-1 local system is a pair of nonzero rationals (the holonomies on
the standard homology basis); a rank-n one is a commuting pair of
invertible rational matrices.  Mutation at a curve multiplies holonomies
by powers of (Id - holonomy around the curve); the power of a class g is
its oriented crossing number with the curve, det[v_k g], matching the
signed torus transformation exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curves import GeodesicConfig, config_mutation_sign, det2
from .errors import NotRegular
from .rationals import (
    Matrix,
    format_rational,
    identity,
    mat_det,
    mat_eq,
    mat_from_json,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_sub,
    mat_to_json,
    parse_rational,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Character:
    """Holonomies on the basis a=(1,0), b=(0,1); both values nonzero."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise ValueError("character values must be nonzero")

    def value(self, cls: Sequence[int]) -> Fraction:
        """Holonomy on the class (p, q): a^p * b^q."""
        return self.a ** cls[0] * self.b ** cls[1]


@dataclass(frozen=True)
class CommutingPair:
    """Invertible matrices A, B over Q with AB = BA."""

    n: int
    A: Matrix
    B: Matrix

    def __post_init__(self):
        A = tuple(tuple(Fraction(x) for x in row) for row in self.A)
        B = tuple(tuple(Fraction(x) for x in row) for row in self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if len(A) != self.n or len(B) != self.n:
            raise ValueError("matrix sizes must match the rank")
        if not mat_eq(mat_mul(A, B, _ZERO), mat_mul(B, A, _ZERO)):
            raise ValueError("holonomy matrices must commute")
        if mat_det(A, _ZERO, _ONE) == 0 or mat_det(B, _ZERO, _ONE) == 0:
            raise ValueError("holonomy matrices must be invertible")


def holonomy(sys: CommutingPair, cls: Sequence[int]) -> Matrix:
    """A^p B^q for the class (p, q); negative powers via exact inverses."""
    p, q = int(cls[0]), int(cls[1])
    ap = mat_pow(sys.A, p, _ZERO, _ONE)
    bq = mat_pow(sys.B, q, _ZERO, _ONE)
    return mat_mul(ap, bq, _ZERO)


def _crossing_exponents(vk: Sequence[int]) -> tuple[int, int]:
    """Oriented crossing numbers of the basis classes with the curve v_k."""
    return det2(vk, (1, 0)), det2(vk, (0, 1))


def mutate_character(ch: Character, cfg: GeodesicConfig, k: int) -> Character:
    """Mutate the character at curve k of the configuration.

    Multiplies the holonomy on g by (1 - x(v_k))^{det[v_k g]} (with the
    holonomy inverted first on reversed edges), which coincides with
    evaluating the signed torus transformation of the underlying seed.
    """
    cfg.check_index(k)
    vk = cfg.classes[k]
    xk = ch.value(vk)
    if xk == 1:
        raise NotRegular("1 - x(v_k) = 0: the mutated object is not a local system")
    eps = config_mutation_sign(cfg, k)
    factor = (1 - xk) if eps > 0 else (1 - 1 / xk)
    ca, cb = _crossing_exponents(vk)
    return Character(ch.a * factor**ca, ch.b * factor**cb)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _xgcd(b, a % b)
    return (g, y, x - (a // b) * y)


def complementary_class(vk: Sequence[int]) -> tuple[int, int]:
    """A class u with det(u, v_k) = 1; exists since v_k is primitive."""
    w1, w2 = int(vk[0]), int(vk[1])
    g, alpha, beta = _xgcd(w2, w1)
    if g != 1:
        raise ValueError("curve class must be primitive")
    # alpha*w2 + beta*w1 = 1, so u = (alpha, -beta) has u1*w2 - u2*w1 = 1
    return (alpha, -beta)


def mutate_rank_n(sys: CommutingPair, cfg: GeodesicConfig, k: int) -> CommutingPair:
    """Rank-n mutation at curve k: regular iff Id - Hol(v_k) is invertible."""
    cfg.check_index(k)
    vk = cfg.classes[k]
    eps = config_mutation_sign(cfg, k)
    hol_k = holonomy(sys, vk)
    ref = hol_k if eps > 0 else mat_inv(hol_k, _ZERO, _ONE)
    m = mat_sub(identity(sys.n, _ONE, _ZERO), ref)
    if mat_det(m, _ZERO, _ONE) == 0:
        raise NotRegular("Id - Hol(v_k) is singular")
    u = complementary_class(vk)
    hol_u = holonomy(sys, u)
    # in the (u, v_k) basis: Hol'(v_k) = Hol(v_k), Hol'(u) = Hol(u) M^{det[v_k u]}
    c = det2(vk, u)
    new_hol_u = mat_mul(hol_u, mat_pow(m, c, _ZERO, _ONE), _ZERO)
    # convert back: (1,0) = p u + q v_k and (0,1) = r u + s v_k, integrally
    denom = det2(u, vk)  # +1 by construction
    if denom != 1:
        raise AssertionError("basis change must be unimodular")
    p, q = vk[1], -u[1]
    r, s = -vk[0], u[0]
    assert (p * u[0] + q * vk[0], p * u[1] + q * vk[1]) == (1, 0)
    assert (r * u[0] + s * vk[0], r * u[1] + s * vk[1]) == (0, 1)
    hol_vk = hol_k
    new_a = mat_mul(mat_pow(new_hol_u, p, _ZERO, _ONE), mat_pow(hol_vk, q, _ZERO, _ONE), _ZERO)
    new_b = mat_mul(mat_pow(new_hol_u, r, _ZERO, _ONE), mat_pow(hol_vk, s, _ZERO, _ONE), _ZERO)
    return CommutingPair(sys.n, new_a, new_b)


def character_to_json(ch: Character) -> dict:
    return {"a": format_rational(ch.a), "b": format_rational(ch.b)}


def character_from_json(data: dict) -> Character:
    return Character(parse_rational(data["a"]), parse_rational(data["b"]))


def pair_to_json(sys: CommutingPair) -> dict:
    return {"n": sys.n, "A": mat_to_json(sys.A), "B": mat_to_json(sys.B)}


def pair_from_json(data: dict) -> CommutingPair:
    return CommutingPair(int(data["n"]), mat_from_json(data["A"]), mat_from_json(data["B"]))
