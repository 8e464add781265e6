"""Shared random generators for property and acceptance tests."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from mutwb.curves import GeodesicConfig
from mutwb.seeds import Seed, SkewLattice


def random_skew_form(rng: random.Random, rank: int, bound: int = 4):
    entries = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            v = rng.randint(-bound, bound)
            entries[i][j] = v
            entries[j][i] = -v
    return tuple(tuple(row) for row in entries)


def random_primitive_vector(rng: random.Random, rank: int, bound: int = 4):
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(rank))
        if not any(v):
            continue
        g = 0
        for x in v:
            g = gcd(g, abs(x))
        return tuple(x // g for x in v)


def random_seed(
    rng: random.Random,
    max_rank: int = 5,
    max_vectors: int = 5,
    bound: int = 4,
    distinct: bool = True,
    independent: bool = False,
    min_vectors: int = 1,
) -> Seed:
    while True:
        rank = rng.randint(1, max_rank)
        count = rng.randint(min_vectors, max_vectors)
        if independent and count > rank:
            count = rank
        lattice = SkewLattice(rank, random_skew_form(rng, rank, bound))
        vectors = []
        attempts = 0
        while len(vectors) < count and attempts < 200:
            attempts += 1
            v = random_primitive_vector(rng, rank, bound)
            if distinct and v in vectors:
                continue
            vectors.append(v)
        if len(vectors) < count:
            continue
        if independent and _rank_of(vectors) != len(vectors):
            continue
        signing = tuple(rng.randint(0, 1) for _ in vectors)
        return Seed(lattice, tuple(vectors), signing)


def _rank_of(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def random_config(rng: random.Random, max_curves: int = 6, bound: int = 7) -> GeodesicConfig:
    count = rng.randint(1, max_curves)
    classes = tuple(random_primitive_vector(rng, 2, bound) for _ in range(count))
    return GeodesicConfig(classes)


def random_nonzero_fraction(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.choice([n for n in range(-bound, bound + 1) if n != 0])
    den = rng.randint(1, bound)
    return Fraction(num, den)
