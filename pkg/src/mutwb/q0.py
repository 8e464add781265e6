"""Representations of the cylinder-with-disk quiver.

Data: dimensions (a, b) with maps x: A -> B and y: B -> A subject to the
monodromies m_A = Id - yx and m_B = Id - xy being invertible.  Simples are
S_A, S_B and the one-parameter family P(m); mutation swaps the roles of A
and B and inverts monodromies.  The base field is exact rationals; the
same code runs over small prime fields for brute-force cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotSemisimple, NotSplitOverBase, ZeroMonodromy
from .rationals import (
    Matrix,
    identity,
    mat_det,
    mat_eq,
    mat_from_json,
    mat_inv,
    mat_kernel,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_to_json,
    mat_vec,
)


class GF:
    """An element of the prime field F_p (for oracle-scale computations)."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return GF(self.p, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else GF(self.p, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else GF(self.p, self.v - other.v)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else GF(self.p, other.v - self.v)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else GF(self.p, self.v * other.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GF(self.p, self.v * pow(other.v, self.p - 2, self.p))

    def __neg__(self):
        return GF(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == other % self.p
        return isinstance(other, GF) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"GF{self.p}({self.v})"


def _zero_matrix(rows: int, cols: int, zero) -> Matrix:
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


@dataclass(frozen=True)
class Q0Rep:
    """Dims (a, b), x: b-by-a matrix A -> B, y: a-by-b matrix B -> A."""

    a: int
    b: int
    x: Matrix
    y: Matrix

    def __post_init__(self):
        x = tuple(tuple(v for v in row) for row in self.x)
        y = tuple(tuple(v for v in row) for row in self.y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if len(x) != self.b or any(len(row) != self.a for row in x):
            raise ValueError("x must be b-by-a")
        if len(y) != self.a or any(len(row) != self.b for row in y):
            raise ValueError("y must be a-by-b")
        zero, one = self.consts()
        ma, mb = self.monodromies()
        if self.a and mat_det(ma, zero, one) == zero:
            raise ValueError("m_A = Id - yx must be invertible")
        if self.b and mat_det(mb, zero, one) == zero:
            raise ValueError("m_B = Id - xy must be invertible")

    def consts(self):
        for row in (*self.x, *self.y):
            for v in row:
                if isinstance(v, GF):
                    return GF(v.p, 0), GF(v.p, 1)
                return Fraction(0), Fraction(1)
        return Fraction(0), Fraction(1)

    def monodromies(self) -> tuple[Matrix, Matrix]:
        """(m_A, m_B) = (Id - yx, Id - xy)."""
        zero, one = self.consts()
        ma = identity(self.a, one, zero)
        mb = identity(self.b, one, zero)
        if self.a and self.b:
            ma = mat_sub(ma, mat_mul(self.y, self.x, zero))
            mb = mat_sub(mb, mat_mul(self.x, self.y, zero))
        return ma, mb


def make_simple(kind: str, m: Fraction | int | None = None) -> Q0Rep:
    """S_A, S_B, or the local system P(m) with invertible monodromy m."""
    kind = kind.upper()
    if kind == "S_A":
        return Q0Rep(1, 0, (), ((),))
    if kind == "S_B":
        return Q0Rep(0, 1, ((),), ())
    if kind == "P":
        if m is None:
            raise ValueError("P needs a monodromy value")
        m = Fraction(m)
        if m == 0:
            raise ZeroMonodromy("P(m) needs m != 0")
        return Q0Rep(1, 1, ((Fraction(1),),), ((Fraction(1) - m,),))
    raise ValueError(f"unknown simple kind {kind!r}")


def mutate_rep(r: Q0Rep) -> Q0Rep:
    """Swap the roles of A and B: (b, a, -(Id - yx)^{-1} y, x).

    The output monodromies are the inverses of the input ones, swapped:
    m'_{A'} = m_B^{-1} and m'_{B'} = m_A^{-1}; both identities are checked
    exactly before returning.
    """
    zero, one = r.consts()
    ma, mb = r.monodromies()
    if r.a and r.b:
        xp = mat_scale(mat_mul(mat_inv(ma, zero, one), r.y, zero), zero - one)
    else:
        xp = _zero_matrix(r.a, r.b, zero)
    out = Q0Rep(r.b, r.a, xp, r.x)
    map_, mbp = out.monodromies()
    if out.a and not mat_eq(map_, mat_inv(mb, zero, one)):
        raise AssertionError("mutation postcondition failed: m'_A != m_B^{-1}")
    if out.b and not mat_eq(mbp, mat_inv(ma, zero, one)):
        raise AssertionError("mutation postcondition failed: m'_B != m_A^{-1}")
    return out


def rep_iso(r1: Q0Rep, r2: Q0Rep, g_a: Matrix, g_b: Matrix) -> bool:
    """Check (g_a, g_b) intertwines r1 -> r2: x2 g_a = g_b x1, y2 g_b = g_a y1."""
    if (r1.a, r1.b) != (r2.a, r2.b):
        return False
    zero, one = r1.consts()
    if r1.a and mat_det(g_a, zero, one) == zero:
        return False
    if r1.b and mat_det(g_b, zero, one) == zero:
        return False
    if r1.a and r1.b:
        if not mat_eq(mat_mul(r2.x, g_a, zero), mat_mul(g_b, r1.x, zero)):
            return False
        if not mat_eq(mat_mul(r2.y, g_b, zero), mat_mul(g_a, r1.y, zero)):
            return False
    return True


# ---------------------------------------------------------------------------
# decomposition into simples
# ---------------------------------------------------------------------------

def _char_poly(m: Matrix, zero, one) -> list:
    """det(tI - M) as leading-first coefficients, by exact interpolation."""
    n = len(m)
    if n == 0:
        return [one]
    pts = []
    vals = []
    t = zero
    for _ in range(n + 1):
        shifted = tuple(
            tuple((t if r == c else zero) - m[r][c] for c in range(n)) for r in range(n)
        )
        pts.append(t)
        vals.append(mat_det(shifted, zero, one))
        t = t + one
    coeffs = [zero] * (n + 1)
    for i, (xi, yi) in enumerate(zip(pts, vals)):
        basis = [one]
        denom = one
        for j, xj in enumerate(pts):
            if j == i:
                continue
            new = [zero] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] = new[d] - c * xj
                new[d + 1] = new[d + 1] + c
            basis = new
            denom = denom * (xi - xj)
        scale = yi / denom
        for d, c in enumerate(basis):
            coeffs[d] = coeffs[d] + c * scale
    return list(reversed(coeffs))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _root_candidates(coeffs: list, zero) -> list:
    sample = coeffs[0]
    if isinstance(sample, GF):
        return [GF(sample.p, v) for v in range(sample.p)]
    denom_lcm = 1
    for c in coeffs:
        d = Fraction(c).denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(Fraction(c) * denom_lcm) for c in coeffs]
    cands = set()
    while ints and ints[-1] == 0:
        ints.pop()
        cands.add(Fraction(0))
    if not ints:
        return sorted(cands)
    a0 = abs(ints[-1])
    an = abs(ints[0])
    for p in _divisors(a0):
        for q in _divisors(an):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def _rational_roots(coeffs: list, zero, one) -> dict:
    """Roots in the base field with multiplicities (leading-first coeffs);
    raises NotSplitOverBase when the polynomial does not split."""

    def eval_poly(cs, t):
        acc = zero
        for c in cs:
            acc = acc * t + c
        return acc

    roots: dict = {}
    work = list(coeffs)
    while len(work) > 1:
        hit = None
        for t in _root_candidates(work, zero):
            if eval_poly(work, t) == zero:
                hit = t
                break
        if hit is None:
            raise NotSplitOverBase("a monodromy eigenvalue does not lie in the base field")
        quotient = [work[0]]
        for c in work[1:-1]:
            quotient.append(quotient[-1] * hit + c)
        work = quotient
        roots[hit] = roots.get(hit, 0) + 1
    return roots


@dataclass(frozen=True)
class Decomposition:
    """Counts of S_A and S_B plus (monodromy, multiplicity) pairs for the
    P(m) summands, with an explicit change-of-basis witness (g_a, g_b)."""

    s_a: int
    s_b: int
    locals_: tuple
    g_a: Matrix
    g_b: Matrix

    def multiset(self) -> tuple:
        items: list = ["S_A"] * self.s_a + ["S_B"] * self.s_b
        for m, mult in self.locals_:
            items.extend([("P", m)] * mult)
        return tuple(sorted(items, key=repr))


def decompose(r: Q0Rep) -> Decomposition:
    """Split a semisimple representation into S_A, S_B, and P(m) summands.

    Strategy: diagonalize yx over the base field, demand
    ker(yx) = ker(x) and ker(xy) = ker(y), pair nonzero eigenvectors v with
    x v, and verify the assembled change of basis conjugates the standard
    block form onto r. Raises NotSplitOverBase for irrational eigenvalues
    and NotSemisimple for non-split extensions.
    """
    zero, one = r.consts()
    if r.a == 0 and r.b == 0:
        return Decomposition(0, 0, (), (), ())
    if r.a and r.b:
        yx = mat_mul(r.y, r.x, zero)
    else:
        yx = _zero_matrix(r.a, r.a, zero)

    roots = _rational_roots(_char_poly(yx, zero, one), zero, one) if r.a else {}
    eig_spaces: dict = {}
    total = 0
    for lam, mult in roots.items():
        shifted = tuple(
            tuple(yx[i][j] - (lam if i == j else zero) for j in range(r.a)) for i in range(r.a)
        )
        basis = mat_kernel(shifted, zero, one)
        if len(basis) != mult:
            raise NotSemisimple("yx is not diagonalizable (nontrivial Jordan block)")
        eig_spaces[lam] = basis
        total += len(basis)
    if total != r.a:
        raise NotSemisimple("yx is not diagonalizable")

    full_a = tuple(tuple(one if i == j else zero for j in range(r.a)) for i in range(r.a))
    full_b = tuple(tuple(one if i == j else zero for j in range(r.b)) for i in range(r.b))
    ker_x = mat_kernel(r.x, zero, one) if (r.a and r.b) else full_a
    ker_y = mat_kernel(r.y, zero, one) if (r.a and r.b) else full_b
    zero_space = eig_spaces.get(zero, ())
    if len(ker_x) != len(zero_space):
        raise NotSemisimple("ker(yx) != ker(x): non-split extension of S_A type")

    s_a = len(ker_x)
    locals_list = []
    a_cols = list(ker_x)
    b_cols: list = []
    for lam in sorted((l for l in eig_spaces if l != zero), key=repr):
        for vec in eig_spaces[lam]:
            a_cols.append(vec)
            b_cols.append(mat_vec(r.x, vec, zero))
        locals_list.append((one - lam, len(eig_spaces[lam])))
    s_b = r.b - len(b_cols)
    if s_b < 0 or len(ker_y) != s_b:
        raise NotSemisimple("ker(xy) != ker(y): non-split extension of S_B type")
    b_cols.extend(ker_y)

    g_a = tuple(tuple(col[i] for col in a_cols) for i in range(r.a))
    g_b = tuple(tuple(col[i] for col in b_cols) for i in range(r.b))
    if r.a and mat_det(g_a, zero, one) == zero:
        raise NotSemisimple("eigenvectors do not span the A-space")
    if r.b and mat_det(g_b, zero, one) == zero:
        raise NotSemisimple("eigenvectors do not span the B-space")

    normal = _normal_form(s_a, s_b, locals_list, zero, one)
    if not rep_iso(normal, r, g_a, g_b):
        raise NotSemisimple("witness failed to block-diagonalize the representation")
    return Decomposition(s_a, s_b, tuple(locals_list), g_a, g_b)


def _normal_form(s_a: int, s_b: int, locals_list, zero, one) -> Q0Rep:
    """S_A^{s_a} + sum P(m)^{mult} + S_B^{s_b} in standard basis order."""
    total_p = sum(mult for _, mult in locals_list)
    a = s_a + total_p
    b = total_p + s_b
    x = [[zero] * a for _ in range(b)]
    y = [[zero] * b for _ in range(a)]
    idx = 0
    for m, mult in locals_list:
        for _ in range(mult):
            x[idx][s_a + idx] = one
            y[s_a + idx][idx] = one - m
            idx += 1
    return Q0Rep(a, b, tuple(tuple(row) for row in x), tuple(tuple(row) for row in y))


def rep_to_json(r: Q0Rep) -> dict:
    return {"a": r.a, "b": r.b, "x": mat_to_json(r.x), "y": mat_to_json(r.y)}


def rep_from_json(data: dict) -> Q0Rep:
    return Q0Rep(int(data["a"]), int(data["b"]), mat_from_json(data["x"]), mat_from_json(data["y"]))
