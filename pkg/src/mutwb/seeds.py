"""Seeds: a skew lattice with an indexed tuple of primitive vectors.

A seed lives in a fixed ambient lattice Z^m carrying an integral
skew-symmetric form.  Mutation negates the chosen vector and twists the
others by their positive pairings with it; the twist direction at each
index is canonically oriented (see :func:`mutation_sign`) so that mutating
twice at the same index is exactly the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def is_primitive(vector: Sequence[int]) -> bool:
    return _gcd_all(vector) == 1


def lex_sign(vector: Sequence[int]) -> int:
    """Sign of the first nonzero entry; 0 for the zero vector."""
    for v in vector:
        if v:
            return 1 if v > 0 else -1
    return 0


@dataclass(frozen=True)
class SkewLattice:
    """Z^rank with an integer skew-symmetric form."""

    rank: int
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        form = tuple(tuple(int(x) for x in row) for row in self.form)
        object.__setattr__(self, "form", form)
        if len(form) != self.rank or any(len(row) != self.rank for row in form):
            raise ValueError("form must be rank x rank")
        for i in range(self.rank):
            for j in range(self.rank):
                if form[i][j] != -form[j][i]:
                    raise ValueError("form must be skew-symmetric")

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        """The form pairing {u, v} = u^T . form . v."""
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.form[i]
                total += ui * sum(row[j] * v[j] for j in range(self.rank) if v[j])
        return total

    def form_row(self, u: Sequence[int]) -> Vector:
        """The covector {u, -} in dual-basis coordinates (= form^T . u)."""
        return tuple(
            sum(u[i] * self.form[i][j] for i in range(self.rank)) for j in range(self.rank)
        )


def standard_symplectic(rank: int = 2) -> SkewLattice:
    """The rank-2 lattice with {a, b} = 1 (H_1 of the torus)."""
    if rank != 2:
        raise ValueError("standard symplectic form is rank 2")
    return SkewLattice(2, ((0, 1), (-1, 0)))


@dataclass(frozen=True)
class Seed:
    """An indexed tuple of distinct primitive vectors plus a {0,1} signing."""

    lattice: SkewLattice
    vectors: tuple[Vector, ...]
    signing: tuple[int, ...]

    def __post_init__(self):
        vectors = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "signing", tuple(int(s) for s in self.signing))
        if len(self.signing) != len(vectors):
            raise ValueError("signing length must match vector count")
        if any(s not in (0, 1) for s in self.signing):
            raise ValueError("signing entries must be 0 or 1")
        for v in vectors:
            if len(v) != self.lattice.rank:
                raise ValueError("vector length must match lattice rank")
            if not any(v):
                raise ValueError("seed vectors must be nonzero")
            if not is_primitive(v):
                raise ValueError("seed vectors must be primitive")
        for i in range(len(vectors)):
            if self.lattice.pair(vectors[i], vectors[i]) != 0:
                raise AssertionError("skew form must vanish on the diagonal")

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def degenerate_vectors(self) -> bool:
        """True when two vectors coincide (mutation of dependent tuples can collide)."""
        return len(set(self.vectors)) != len(self.vectors)

    def pairing(self, i: int, j: int) -> int:
        """{e_i, e_j}; antisymmetric in (i, j)."""
        return self.lattice.pair(self.vectors[i], self.vectors[j])

    def check_index(self, k: int) -> None:
        if not 0 <= k < self.size:
            raise IndexError(f"index {k} out of range for seed of size {self.size}")


def pairing(seed: Seed, i: int, j: int) -> int:
    seed.check_index(i)
    seed.check_index(j)
    return seed.pairing(i, j)


def mutation_sign(seed: Seed, k: int) -> int:
    """Orientation of the mutation edge at index k.

    Returns the sign of the first nonzero pairing {e_k, e_i}; when e_k
    pairs trivially with every seed vector, falls back to the lex sign of
    e_k itself.  The value flips under e_k -> -e_k, which is exactly what
    makes mutation an involution.
    """
    seed.check_index(k)
    for i in range(seed.size):
        p = seed.pairing(k, i)
        if p:
            return 1 if p > 0 else -1
    return lex_sign(seed.vectors[k]) or 1


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Mutate at index k: e_k -> -e_k, e_i -> e_i + [eps.{e_i,e_k}]_+ e_k."""
    seed.check_index(k)
    eps = mutation_sign(seed, k)
    ek = seed.vectors[k]
    new_vectors = []
    for i, v in enumerate(seed.vectors):
        if i == k:
            new_vectors.append(tuple(-x for x in ek))
            continue
        c = eps * seed.pairing(i, k)
        if c > 0:
            new_vectors.append(tuple(x + c * y for x, y in zip(v, ek)))
        else:
            new_vectors.append(v)
    return Seed(seed.lattice, tuple(new_vectors), seed.signing)


def mutate_seed_word(seed: Seed, word: Iterable[int]) -> Seed:
    for k in word:
        seed = mutate_seed(seed, k)
    return seed


def seed_to_json(seed: Seed) -> dict:
    return {
        "rank": seed.rank,
        "form": [list(row) for row in seed.lattice.form],
        "vectors": [list(v) for v in seed.vectors],
        "signing": list(seed.signing),
    }


def seed_from_json(data: dict) -> Seed:
    lattice = SkewLattice(int(data["rank"]), tuple(tuple(row) for row in data["form"]))
    vectors = tuple(tuple(v) for v in data["vectors"])
    signing = tuple(data.get("signing") or [0] * len(vectors))
    return Seed(lattice, vectors, signing)


def make_seed(
    form: Sequence[Sequence[int]],
    vectors: Sequence[Sequence[int]],
    signing: Sequence[int] | None = None,
) -> Seed:
    lattice = SkewLattice(len(form), tuple(tuple(row) for row in form))
    vecs = tuple(tuple(v) for v in vectors)
    sig = tuple(signing) if signing is not None else (0,) * len(vecs)
    return Seed(lattice, vecs, sig)


def basis_seed_from_b_matrix(b: Sequence[Sequence[int]], signing: Sequence[int] | None = None) -> Seed:
    """Seed on standard basis vectors whose pairing matrix is the given B-matrix."""
    n = len(b)
    vectors = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return make_seed(b, vectors, signing)


_NAMED_B_MATRICES = {
    "a2": ((0, 1), (-1, 0)),
    "a3": ((0, 1, 0), (-1, 0, 1), (0, -1, 0)),
    "d4": ((0, 1, 1, 1), (-1, 0, 0, 0), (-1, 0, 0, 0), (-1, 0, 0, 0)),
    "markov": ((0, 3, -3), (-3, 0, 3), (3, -3, 0)),
}


def named_seed(name: str) -> Seed:
    """Canned basis seeds: a2, a3, d4, markov (the tripled 3-cycle)."""
    key = name.lower()
    if key not in _NAMED_B_MATRICES:
        raise KeyError(f"unknown seed name {name!r}")
    return basis_seed_from_b_matrix(_NAMED_B_MATRICES[key])
