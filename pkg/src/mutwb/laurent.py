"""Exact multivariate Laurent polynomials, rational expressions, and
coordinate-wise birational torus maps.

Coefficients are arbitrary-precision integers; evaluation produces exact
rationals.  Rational expressions are kept in a canonical form (monomial
factors shifted into the numerator exponents, full polynomial gcd removed,
denominator unit-normalized) so that equal values have equal renderings;
cross-multiplication remains the normative equality test.
"""
from __future__ import annotations

import contextvars
from contextlib import contextmanager
from fractions import Fraction
from math import gcd as int_gcd
from typing import Mapping, Sequence

from .errors import BudgetExceeded, DivisionByZeroExpr, NonMonomialConstant, PoleAtPoint
from .seeds import Seed, mutation_sign

Exponent = tuple[int, ...]
Terms = dict[Exponent, int]

_TERM_LIMIT: contextvars.ContextVar[int | None] = contextvars.ContextVar(
    "mutwb_term_limit", default=None
)


@contextmanager
def term_limit(limit: int | None):
    """Abort multiplications whose result would exceed ``limit`` monomials.

    Keeps infinite-type exploration from silently computing astronomically
    large products; the abort surfaces as :class:`BudgetExceeded`.
    """
    token = _TERM_LIMIT.set(limit)
    try:
        yield
    finally:
        _TERM_LIMIT.reset(token)


def _grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


_PACK_BITS = 62
_PACK_BASE = 1 << _PACK_BITS
_PACK_HALF = 1 << (_PACK_BITS - 1)


def _pack_exponent(exp: Exponent) -> int:
    key = 0
    for v in reversed(exp):
        key = (key << _PACK_BITS) + v
    return key


def _unpack_exponent(key: int, rank: int) -> Exponent:
    out = []
    for _ in range(rank):
        digit = key % _PACK_BASE
        if digit >= _PACK_HALF:
            digit -= _PACK_BASE
        key = (key - digit) >> _PACK_BITS
        out.append(digit)
    return tuple(out)


class LaurentExpr:
    """A finite integer combination of monomials z^e, e in Z^rank."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Exponent, int] | None = None):
        self.rank = rank
        clean: Terms = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    key = tuple(int(x) for x in exp)
                    if len(key) != rank:
                        raise ValueError("exponent length must match rank")
                    clean[key] = clean.get(key, 0) + int(coeff)
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors ------------------------------------------------
    @classmethod
    def zero(cls, rank: int) -> "LaurentExpr":
        return cls(rank, {})

    @classmethod
    def one(cls, rank: int) -> "LaurentExpr":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def constant(cls, rank: int, value: int) -> "LaurentExpr":
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentExpr":
        exp = tuple(int(x) for x in exp)
        return cls(len(exp), {exp: coeff})

    # -- queries -----------------------------------------------------
    @property
    def terms(self) -> Terms:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.rank: 1}

    def as_monomial(self) -> tuple[Exponent, int] | None:
        if len(self._terms) != 1:
            return None
        ((exp, coeff),) = self._terms.items()
        return exp, coeff

    def monomial_count(self) -> int:
        return len(self._terms)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = int_gcd(g, abs(c))
        return g

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.rank
        exps = list(self._terms)
        return tuple(min(e[i] for e in exps) for i in range(self.rank))

    def lex_least_coeff(self) -> int:
        if not self._terms:
            return 0
        return self._terms[min(self._terms)]

    # -- arithmetic --------------------------------------------------
    def __add__(self, other: "LaurentExpr") -> "LaurentExpr":
        self._check(other)
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return LaurentExpr(self.rank, terms)

    def __sub__(self, other: "LaurentExpr") -> "LaurentExpr":
        self._check(other)
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            terms[exp] = terms.get(exp, 0) - coeff
        return LaurentExpr(self.rank, terms)

    def __neg__(self) -> "LaurentExpr":
        return LaurentExpr(self.rank, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentExpr") -> "LaurentExpr":
        self._check(other)
        limit = _TERM_LIMIT.get()
        if len(self._terms) * len(other._terms) > 1024 and self.rank:
            # packed-integer exponents: keys add linearly, and int-keyed
            # dicts beat tuple zips by an order of magnitude on big products
            left = [(_pack_exponent(e), c) for e, c in self._terms.items()]
            right = [(_pack_exponent(e), c) for e, c in other._terms.items()]
            packed: dict[int, int] = {}
            get = packed.get
            for k1, c1 in left:
                for k2, c2 in right:
                    key = k1 + k2
                    packed[key] = get(key, 0) + c1 * c2
                if limit is not None and len(packed) > limit:
                    raise BudgetExceeded(f"expression exceeded {limit} monomials")
            out = LaurentExpr(self.rank)
            out._terms = {
                _unpack_exponent(k, self.rank): c for k, c in packed.items() if c
            }
            return out
        terms: Terms = {}
        get = terms.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = get(key, 0) + c1 * c2
            if limit is not None and len(terms) > limit:
                raise BudgetExceeded(f"expression exceeded {limit} monomials")
        out = LaurentExpr(self.rank)
        out._terms = {e: c for e, c in terms.items() if c}
        return out

    def scale(self, value: int) -> "LaurentExpr":
        if not value:
            return LaurentExpr.zero(self.rank)
        return LaurentExpr(self.rank, {e: c * value for e, c in self._terms.items()})

    def shift(self, offset: Sequence[int]) -> "LaurentExpr":
        """Multiply by the monomial z^offset."""
        off = tuple(int(x) for x in offset)
        return LaurentExpr(
            self.rank, {tuple(a + b for a, b in zip(e, off)): c for e, c in self._terms.items()}
        )

    def __pow__(self, power: int) -> "LaurentExpr":
        if power < 0:
            raise ValueError("LaurentExpr powers must be nonnegative; invert via RationalExpr")
        if power == 0:
            return LaurentExpr.one(self.rank)
        if len(self._terms) == 1:
            ((exp, coeff),) = self._terms.items()
            return LaurentExpr(self.rank, {tuple(e * power for e in exp): coeff**power})
        if len(self._terms) == 2:
            # binomial theorem: the mutation bases 1 + s z^v live here
            from math import comb

            (e0, c0), (e1, c1) = self._terms.items()
            terms: Terms = {}
            for j in range(power + 1):
                exp = tuple(a * (power - j) + b * j for a, b in zip(e0, e1))
                terms[exp] = comb(power, j) * c0 ** (power - j) * c1**j
            return LaurentExpr(self.rank, terms)
        result = LaurentExpr.one(self.rank)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.rank:
            raise ValueError("point length must match rank")
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            term = Fraction(coeff)
            for value, e in zip(point, exp):
                term *= Fraction(value) ** e
            total += term
        return total

    def _check(self, other: "LaurentExpr") -> None:
        if self.rank != other.rank:
            raise ValueError("rank mismatch")

    # -- equality / rendering ----------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentExpr)
            and self.rank == other.rank
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        ordered = sorted(self._terms, key=_grlex_key, reverse=True)
        for idx, exp in enumerate(ordered):
            coeff = self._terms[exp]
            mono = f"z[({','.join(str(e) for e in exp)})]"
            if idx == 0:
                parts.append(f"{coeff}*{mono}")
            elif coeff < 0:
                parts.append(f" - {-coeff}*{mono}")
            else:
                parts.append(f" + {coeff}*{mono}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentExpr({self.render()})"


# ---------------------------------------------------------------------------
# polynomial gcd on nonnegative-exponent term dicts
# ---------------------------------------------------------------------------

def _dict_mul(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            val = out.get(key, 0) + c1 * c2
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out

def _dict_sub(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for e, c in b.items():
        val = out.get(e, 0) - c
        if val:
            out[e] = val
        elif e in out:
            del out[e]
    return out

def _dict_scale(a: Terms, c: int) -> Terms:
    return {e: v * c for e, v in a.items()} if c else {}

def _dict_content(a: Terms) -> int:
    g = 0
    for c in a.values():
        g = int_gcd(g, abs(c))
    return g

def _deg(a: Terms, var: int) -> int:
    return max((e[var] for e in a), default=-1)

def _coeff_of(a: Terms, var: int, d: int) -> Terms:
    out: Terms = {}
    for e, c in a.items():
        if e[var] == d:
            key = e[:var] + (0,) + e[var + 1 :]
            out[key] = c
    return out

def _attach(a: Terms, var: int, d: int) -> Terms:
    return {e[:var] + (d,) + e[var + 1 :]: c for e, c in a.items()}

def _divide_exact(a: Terms, b: Terms) -> Terms | None:
    """Exact division a / b via leading-term elimination."""
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    if len(a) > 256:
        return _divide_exact_packed(a, b)
    lead_b = max(b, key=_grlex_key)
    cb = b[lead_b]
    rem = dict(a)
    quot: Terms = {}
    while rem:
        lead_r = max(rem, key=_grlex_key)
        cr = rem[lead_r]
        exp = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in exp) or cr % cb:
            return None
        c = cr // cb
        quot[exp] = c
        rem = _dict_sub(rem, _dict_mul({exp: c}, b))
    return quot


def _divide_exact_packed(a: Terms, b: Terms) -> Terms | None:
    """Exact division on packed-integer exponents (packed order is plain
    lex, which is an admissible monomial order, so elimination is sound)."""
    rank = len(next(iter(a)))
    rem = {_pack_exponent(e): c for e, c in a.items()}
    pb = [(_pack_exponent(e), c) for e, c in b.items()]
    lead_b = max(k for k, _ in pb)
    cb = dict(pb)[lead_b]
    quot: dict[int, int] = {}
    guard = 4 * len(a) + 64
    get = rem.get
    while rem:
        lead_r = max(rem)
        cr = rem[lead_r]
        kq = lead_r - lead_b
        if kq < 0 or cr % cb or len(quot) > guard:
            return None
        c = cr // cb
        quot[kq] = c
        for kb, cbb in pb:
            key = kq + kb
            v = get(key, 0) - c * cbb
            if v:
                rem[key] = v
            elif key in rem:
                del rem[key]
    out: Terms = {}
    for k, c in quot.items():
        exp = _unpack_exponent(k, rank)
        if any(x < 0 for x in exp):
            return None
        out[exp] = c
    return out

def _sign_normalize(a: Terms) -> Terms:
    if not a:
        return a
    if a[min(a)] < 0:
        return {e: -c for e, c in a.items()}
    return a

def _content_wrt(a: Terms, var: int) -> Terms:
    result: Terms = {}
    for d in range(_deg(a, var) + 1):
        coeff = _coeff_of(a, var, d)
        if coeff:
            result = _poly_gcd(result, coeff)
            if len(result) == 1 and result.get(min(result)) == 1 and not any(min(result)):
                break
    return result

def _pseudo_rem(a: Terms, b: Terms, var: int) -> Terms:
    db = _deg(b, var)
    lead_b = _coeff_of(b, var, db)
    rem = dict(a)
    while rem and _deg(rem, var) >= db:
        dr = _deg(rem, var)
        lead_r = _coeff_of(rem, var, dr)
        rem = _dict_sub(
            _dict_mul(rem, lead_b),
            _dict_mul(_attach(lead_r, var, dr - db), b),
        )
    return rem

def _pack(terms: Terms, strides: list[int], shift: int) -> int:
    total = 0
    for e, c in terms.items():
        idx = 0
        for ev, stride in zip(e, strides):
            idx += ev * stride
        total += c << (idx * shift)
    return total


def _unpack(value: int, strides: list[int], degs: list[int], shift: int, rank: int) -> Terms | None:
    """Balanced base-2^shift digits of the packed integer, mapped back to
    exponent tuples through the stride staircase.

    Digits are sliced straight out of the two's-free byte representation
    (with a running carry for the balanced adjustment) to stay linear in
    the integer's size.
    """
    if value == 0:
        return {}
    sign = 1
    if value < 0:
        sign = -1
        value = -value
    xi = 1 << shift
    half = xi >> 1
    mask = xi - 1
    window_bytes = shift // 8 + 3
    raw = value.to_bytes((value.bit_length() + 7) // 8 + window_bytes, "little")
    total_digits = (value.bit_length() + shift - 1) // shift + 1
    out: Terms = {}
    carry = 0
    for idx in range(total_digits):
        bit_pos = idx * shift
        byte_pos = bit_pos // 8
        chunk = int.from_bytes(raw[byte_pos : byte_pos + window_bytes], "little")
        digit = ((chunk >> (bit_pos % 8)) & mask) + carry
        if digit > half:
            digit -= xi
            carry = 1
        else:
            carry = 0
        if digit:
            exp = []
            rem = idx
            for v in range(rank):
                exp.append(rem % degs[v])
                rem //= degs[v]
            if rem:
                return None  # digit landed beyond the staircase
            out[tuple(exp)] = sign * digit
    if carry:
        return None
    return out


def _heu_gcd(a: Terms, b: Terms, rank: int) -> Terms | None:
    """Heuristic gcd via Kronecker packing: substitute z_v -> 2^(shift*stride_v),
    take the integer gcd, and read the candidate off the balanced digits.
    A non-None result is verified by exact division, hence always correct.

    Integer contents are split off first (the heuristic runs on primitive
    parts, where primitivizing the lifted candidate is justified) and the
    gcd of contents is multiplied back in.
    """
    if not any(_deg(a, v) > 0 or _deg(b, v) > 0 for v in range(rank)):
        ca = abs(next(iter(a.values()), 0))
        cb = abs(next(iter(b.values()), 0))
        g = int_gcd(ca, cb)
        return {(0,) * rank: g} if g else {}
    cont_a = _dict_content(a)
    cont_b = _dict_content(b)
    cont = int_gcd(cont_a, cont_b)
    if cont_a > 1:
        a = {e: c // cont_a for e, c in a.items()}
    if cont_b > 1:
        b = {e: c // cont_b for e, c in b.items()}
    unit = {(0,) * rank: 1}
    if a == unit or b == unit:
        return {(0,) * rank: cont}
    degs = [max(_deg(a, v), _deg(b, v)) + 1 for v in range(rank)]
    slots = 1
    for d in degs:
        slots *= d
    if slots > 4_000_000:
        return None
    strides = []
    acc = 1
    for d in degs:
        strides.append(acc)
        acc *= d
    max_a = max(abs(c) for c in a.values())
    max_b = max(abs(c) for c in b.values())
    shift = max(2 * min(max_a, max_b) + 29, 32).bit_length()
    for _ in range(6):
        pa = _pack(a, strides, shift)
        pb = _pack(b, strides, shift)
        g_int = int_gcd(pa, pb)
        if g_int:
            g = _unpack(g_int, strides, degs, shift, rank)
            if g:
                content = _dict_content(g)
                if content > 1:
                    g = {e: c // content for e, c in g.items()}
                g = _sign_normalize(g)
                if g and _divide_exact(a, g) is not None and _divide_exact(b, g) is not None:
                    return _dict_scale(g, cont)
        shift += 11
    return None


def _prs_gcd(a: Terms, b: Terms, rank: int) -> Terms:
    """Primitive pseudo-remainder-sequence gcd (fallback path)."""
    var = next((v for v in range(rank) if _deg(a, v) > 0 or _deg(b, v) > 0), None)
    if var is None:
        ca = next(iter(a.values()))
        cb = next(iter(b.values()))
        g = int_gcd(abs(ca), abs(cb))
        return {(0,) * rank: g} if g else {}
    if _deg(a, var) < _deg(b, var):
        a, b = b, a
    cont_a = _content_wrt(a, var)
    cont_b = _content_wrt(b, var)
    pa = _divide_exact(a, cont_a)
    pb = _divide_exact(b, cont_b)
    assert pa is not None and pb is not None
    cont = _poly_gcd(cont_a, cont_b)
    while pb:
        rem = _pseudo_rem(pa, pb, var)
        pa, pb = pb, rem
        if pb:
            c = _content_wrt(pb, var)
            pb = _divide_exact(pb, c)
            assert pb is not None
    return _sign_normalize(_dict_mul(cont, pa))


def _is_min_zero(a: Terms) -> bool:
    rank = len(next(iter(a)))
    return all(min(e[v] for e in a) == 0 for v in range(rank))


def _line_projection(a: Terms, rank: int):
    """If the support lies on a line e0 + m*w, return (monomial part, primitive
    direction w, univariate coefficients {m: c}); otherwise None."""
    exps = list(a)
    base = exps[0]
    w = None
    for e in exps[1:]:
        d = tuple(x - y for x, y in zip(e, base))
        if not any(d):
            continue
        g = 0
        for x in d:
            g = int_gcd(g, abs(x))
        prim = tuple(x // g for x in d)
        lead = next(x for x in prim if x)
        if lead < 0:
            prim = tuple(-x for x in prim)
        if w is None:
            w = prim
        elif prim != w:
            return None
    if w is None:
        return None  # a single monomial; handled elsewhere
    axis = next(v for v in range(rank) if w[v])
    ms = []
    for e in exps:
        delta = e[axis] - base[axis]
        if delta % w[axis]:
            return None
        ms.append(delta // w[axis])
    m_min = min(ms)
    anchor = None
    coeffs: Terms = {}
    for e, m in zip(exps, ms):
        shifted = m - m_min
        if shifted == 0:
            anchor = e
        coeffs[(shifted,)] = a[e]
    assert anchor is not None
    for e, m in zip(exps, ms):
        if e != tuple(x + (m - m_min) * y for x, y in zip(anchor, w)):
            return None
    return anchor, w, coeffs


def _poly_gcd(a: Terms, b: Terms) -> Terms:
    """Gcd of integer polynomials (nonnegative exponents), content-positive."""
    if not a:
        return _sign_normalize(dict(b))
    if not b:
        return _sign_normalize(dict(a))
    if a == b:
        return _sign_normalize(dict(a))
    rank = len(next(iter(a)))
    one = {(0,) * rank: 1}
    if a == one or b == one:
        return one
    if len(a) == 1 or len(b) == 1:
        # gcd with a monomial: shared monomial times the content gcd
        g = int_gcd(_dict_content(a), _dict_content(b))
        exp = tuple(
            min(min(e[v] for e in a), min(e[v] for e in b)) for v in range(rank)
        )
        return {exp: g}
    # divisibility shortcuts: exact cancellations are the common case and
    # _divide_exact fails fast when they do not apply
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    if _divide_exact(big, small) is not None:
        return _sign_normalize(dict(small))
    if len(a) != len(b) and _divide_exact(small, big) is not None:
        return _sign_normalize(dict(big))
    if rank > 1 and _is_min_zero(a) and _is_min_zero(b):
        line_a = _line_projection(a, rank)
        if line_a is not None:
            line_b = _line_projection(b, rank)
            if line_b is not None and line_a[1] == line_b[1]:
                _, w, coeff_a = line_a
                _, _, coeff_b = line_b
                g1 = _poly_gcd(coeff_a, coeff_b)
                m_max = max((m[0] for m in g1), default=0)
                # offset making the lifted gcd componentwise min-zero
                gamma = tuple(max(0, -d * m_max) for d in w)
                return _sign_normalize(
                    {
                        tuple(s + m[0] * d for s, d in zip(gamma, w)): c
                        for m, c in g1.items()
                    }
                )
    g = _heu_gcd(a, b, rank)
    if g is not None:
        return g
    return _prs_gcd(a, b, rank)


def poly_gcd(a: LaurentExpr, b: LaurentExpr) -> LaurentExpr:
    """Gcd of two polynomial (nonnegative-exponent) LaurentExprs."""
    return LaurentExpr(a.rank, _poly_gcd(a._terms, b._terms))


# ---------------------------------------------------------------------------
# rational expressions
# ---------------------------------------------------------------------------

class RationalExpr:
    """A quotient of Laurent expressions in canonical form.

    Invariants after construction: the denominator is a primitive integer
    polynomial with componentwise-minimal exponent zero, coprime to the
    polynomial part of the numerator, and its lexicographically least
    exponent carries a positive coefficient.  Monomial and sign freedom is
    pushed into the (Laurent) numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentExpr, den: LaurentExpr | None = None, _canonical: bool = False):
        if den is None:
            den = LaurentExpr.one(num.rank)
        if num.rank != den.rank:
            raise ValueError("rank mismatch")
        if den.is_zero():
            raise DivisionByZeroExpr("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------
    @classmethod
    def from_laurent(cls, expr: LaurentExpr) -> "RationalExpr":
        return cls(expr)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "RationalExpr":
        return cls(LaurentExpr.monomial(exp, coeff))

    @classmethod
    def one(cls, rank: int) -> "RationalExpr":
        return cls(LaurentExpr.one(rank))

    @classmethod
    def zero(cls, rank: int) -> "RationalExpr":
        return cls(LaurentExpr.zero(rank))

    @property
    def rank(self) -> int:
        return self.num.rank

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def monomial_count(self) -> int:
        return self.num.monomial_count() + self.den.monomial_count()

    # -- arithmetic --------------------------------------------------
    def __add__(self, other: "RationalExpr") -> "RationalExpr":
        return _add_reduced(self, other, 1)

    def __sub__(self, other: "RationalExpr") -> "RationalExpr":
        return _add_reduced(self, other, -1)

    def __neg__(self) -> "RationalExpr":
        return RationalExpr(-self.num, self.den, _canonical=True)

    def __mul__(self, other: "RationalExpr") -> "RationalExpr":
        return _mul_reduced(self, other)

    def __truediv__(self, other: "RationalExpr") -> "RationalExpr":
        return _mul_reduced(self, other.inverse())

    def inverse(self) -> "RationalExpr":
        if self.num.is_zero():
            raise DivisionByZeroExpr("inverting zero expression")
        # numerator and denominator are already coprime: only shift the
        # monomial part and renormalize the unit
        shift = self.num.min_exponents()
        num_poly = self.num.shift(tuple(-x for x in shift))
        new_den = num_poly
        new_num = self.den.shift(tuple(-x for x in shift))
        return RationalExpr(*_unit_normalize(new_num, new_den), _canonical=True)

    def __pow__(self, power: int) -> "RationalExpr":
        if power < 0:
            return self.inverse() ** (-power)
        if power == 0:
            return RationalExpr.one(self.rank)
        # powers of a reduced fraction stay reduced (Gauss's lemma keeps
        # polynomial parts primitive and coprime)
        return RationalExpr(self.num**power, self.den**power, _canonical=True)

    def cross_eq(self, other: "RationalExpr") -> bool:
        """Normative value equality: a/b == c/d iff a*d == c*b."""
        return self.num * other.den == other.num * self.den

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        den = self.den.evaluate(point)
        if den == 0:
            raise PoleAtPoint(f"denominator vanishes at {tuple(point)}")
        return self.num.evaluate(point) / den

    def substitute(self, images: Sequence["RationalExpr"]) -> "RationalExpr":
        """Pull back through z^{b_j} -> images[j]."""
        if len(images) != self.rank:
            raise ValueError("need one image per coordinate")
        num = _substitute_laurent(self.num, images)
        den = _substitute_laurent(self.den, images)
        if den.is_zero():
            raise DivisionByZeroExpr("substitution produced a zero denominator")
        return num / den

    # -- equality / rendering ----------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalExpr)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def render(self) -> str:
        if self.den.is_one():
            return self.num.render()
        return f"({self.num.render()}) / ({self.den.render()})"

    def __repr__(self):
        return f"RationalExpr({self.render()})"


def _unit_normalize(num: LaurentExpr, den: LaurentExpr) -> tuple[LaurentExpr, LaurentExpr]:
    """Joint integer-content and denominator-sign normalization."""
    c = int_gcd(num.content(), den.content())
    if c > 1:
        num = LaurentExpr(num.rank, {e: v // c for e, v in num._terms.items()})
        den = LaurentExpr(den.rank, {e: v // c for e, v in den._terms.items()})
    if den.lex_least_coeff() < 0:
        num, den = -num, -den
    return num, den


def _split_monomial(expr: LaurentExpr) -> tuple[Exponent, LaurentExpr]:
    """Write a Laurent expression as z^shift * (polynomial with componentwise
    minimal exponent zero)."""
    shift = expr.min_exponents()
    return shift, expr.shift(tuple(-x for x in shift))


def _exact_div(a: LaurentExpr, b: LaurentExpr) -> LaurentExpr:
    q = _divide_exact(a._terms, b._terms)
    assert q is not None, "exact division failed"
    return LaurentExpr(a.rank, q)


def _mul_reduced(a: RationalExpr, b: RationalExpr) -> RationalExpr:
    """Product of canonical fractions via two cross-gcds.

    With gcd(num, den) = 1 on both inputs, removing gcd(a.num, b.den) and
    gcd(b.num, a.den) leaves the result fully reduced.
    """
    if a.num.is_zero() or b.num.is_zero():
        return RationalExpr.zero(a.rank)
    sa, pa = _split_monomial(a.num)
    sb, pb = _split_monomial(b.num)
    aden, bden = a.den, b.den
    g1 = poly_gcd(pa, bden)
    if not g1.is_one():
        pa = _exact_div(pa, g1)
        bden = _exact_div(bden, g1)
    g2 = poly_gcd(pb, aden)
    if not g2.is_one():
        pb = _exact_div(pb, g2)
        aden = _exact_div(aden, g2)
    num = (pa * pb).shift(tuple(x + y for x, y in zip(sa, sb)))
    num, den = _unit_normalize(num, aden * bden)
    return RationalExpr(num, den, _canonical=True)


def _add_reduced(a: RationalExpr, b: RationalExpr, sign: int) -> RationalExpr:
    """Sum/difference of canonical fractions; reduction only needs gcds
    against the common denominator factor."""
    if a.num.is_zero():
        return b if sign > 0 else -b
    if b.num.is_zero():
        return a
    d1 = poly_gcd(a.den, b.den)
    if d1.is_one():
        num = a.num * b.den + (b.num * a.den).scale(sign)
        if num.is_zero():
            return RationalExpr.zero(a.rank)
        num, den = _unit_normalize(num, a.den * b.den)
        return RationalExpr(num, den, _canonical=True)
    bden_red = _exact_div(b.den, d1)
    aden_red = _exact_div(a.den, d1)
    t = a.num * bden_red + (b.num * aden_red).scale(sign)
    if t.is_zero():
        return RationalExpr.zero(a.rank)
    shift_t, poly_t = _split_monomial(t)
    d2 = poly_gcd(poly_t, d1)
    if not d2.is_one():
        poly_t = _exact_div(poly_t, d2)
        den = aden_red * _exact_div(b.den, d2)
    else:
        den = aden_red * b.den
    num, den = _unit_normalize(poly_t.shift(shift_t), den)
    return RationalExpr(num, den, _canonical=True)


def _canonicalize(num: LaurentExpr, den: LaurentExpr) -> tuple[LaurentExpr, LaurentExpr]:
    rank = num.rank
    if num.is_zero():
        return LaurentExpr.zero(rank), LaurentExpr.one(rank)
    num_shift = num.min_exponents()
    den_shift = den.min_exponents()
    poly_num = num.shift(tuple(-x for x in num_shift))
    poly_den = den.shift(tuple(-x for x in den_shift))
    g = poly_gcd(poly_num, poly_den)
    if not g.is_one():
        qn = _divide_exact(poly_num._terms, g._terms)
        qd = _divide_exact(poly_den._terms, g._terms)
        assert qn is not None and qd is not None
        poly_num = LaurentExpr(rank, qn)
        poly_den = LaurentExpr(rank, qd)
    c = int_gcd(poly_num.content(), poly_den.content())
    if c > 1:
        poly_num = LaurentExpr(rank, {e: v // c for e, v in poly_num._terms.items()})
        poly_den = LaurentExpr(rank, {e: v // c for e, v in poly_den._terms.items()})
    if poly_den.lex_least_coeff() < 0:
        poly_num = -poly_num
        poly_den = -poly_den
    net = tuple(a - b for a, b in zip(num_shift, den_shift))
    return poly_num.shift(net), poly_den


def _substitute_laurent(expr: LaurentExpr, images: Sequence[RationalExpr]) -> RationalExpr:
    rank = expr.rank
    if not images:
        return RationalExpr.from_laurent(expr)
    out_rank = images[0].rank
    total = RationalExpr.zero(out_rank)
    cache: dict[tuple[int, int], RationalExpr] = {}
    for exp, coeff in expr._terms.items():
        term = RationalExpr.from_laurent(LaurentExpr.constant(out_rank, coeff))
        for j, (image, e) in enumerate(zip(images, exp)):
            if e:
                powered = cache.get((j, e))
                if powered is None:
                    powered = image**e
                    cache[(j, e)] = powered
                term = term * powered
        total = total + term
    return total


def parse_laurent(text: str, rank: int) -> LaurentExpr:
    """Inverse of :meth:`LaurentExpr.render`."""
    text = text.strip()
    if text == "0":
        return LaurentExpr.zero(rank)
    normalized = text.replace(" - ", " + -")
    terms: Terms = {}
    for piece in normalized.split(" + "):
        piece = piece.strip()
        if "*z[(" not in piece or not piece.endswith(")]"):
            raise ValueError(f"malformed Laurent term {piece!r}")
        coeff_text, exp_text = piece[:-2].split("*z[(", 1)
        coeff = int(coeff_text)
        exp = tuple(int(x) for x in exp_text.split(",")) if exp_text else ()
        if len(exp) != rank:
            raise ValueError(f"exponent arity mismatch in {piece!r}")
        terms[exp] = terms.get(exp, 0) + coeff
    return LaurentExpr(rank, terms)


def parse_rational_expr(text: str, rank: int) -> RationalExpr:
    """Inverse of :meth:`RationalExpr.render` (trusts canonical input)."""
    text = text.strip()
    if text.startswith("(") and ") / (" in text and text.endswith(")"):
        num_text, den_text = text[1:-1].split(") / (", 1)
        num = parse_laurent(num_text, rank)
        den = parse_laurent(den_text, rank)
        return RationalExpr(num, den, _canonical=True)
    return RationalExpr(parse_laurent(text, rank), None, _canonical=True)


# ---------------------------------------------------------------------------
# birational maps between tori
# ---------------------------------------------------------------------------

class RationalMap:
    """A coordinate-wise birational map stored via its pullback images.

    ``images[j]`` is the pullback of the j-th coordinate monomial; the
    pullback of any monomial z^n follows by exponent linearity.
    """

    __slots__ = ("rank", "images", "_hash")

    def __init__(self, rank: int, images: Sequence[RationalExpr]):
        if len(images) != rank:
            raise ValueError("need exactly one image per coordinate")
        for image in images:
            if image.rank != rank:
                raise ValueError("image rank mismatch")
            if image.is_zero():
                raise ValueError("map images must be nonzero")
        self.rank = rank
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def identity(cls, rank: int) -> "RationalMap":
        basis = []
        for j in range(rank):
            exp = tuple(1 if t == j else 0 for t in range(rank))
            basis.append(RationalExpr.monomial(exp))
        return cls(rank, basis)

    def pullback_monomial(self, exponent: Sequence[int]) -> RationalExpr:
        result = RationalExpr.one(self.rank)
        for image, e in zip(self.images, exponent):
            if e:
                result = result * image**e
        return result

    def is_identity(self) -> bool:
        return self == RationalMap.identity(self.rank)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMap)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.images))
        return self._hash

    def render(self) -> str:
        return "; ".join(img.render() for img in self.images)

    def __repr__(self):
        return f"RationalMap({self.render()})"


def compose_maps(f: RationalMap, g: RationalMap) -> RationalMap:
    """The composite f o g, whose pullback is g* o f*."""
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    return RationalMap(f.rank, [img.substitute(g.images) for img in f.images])


def evaluate_map(f: RationalMap, point: Sequence[Fraction | int | str]) -> tuple[Fraction, ...]:
    """Evaluate at an exact torus point; every output coordinate must be a
    nonzero rational (a zero output leaves the torus, i.e. the map is not
    regular there as a torus map)."""
    values = tuple(Fraction(p) for p in point)
    if len(values) != f.rank:
        raise ValueError("point length must match rank")
    if any(v == 0 for v in values):
        raise ValueError("torus points have nonzero coordinates")
    out = []
    for image in f.images:
        value = image.evaluate(values)
        if value == 0:
            raise PoleAtPoint("image vanishes: the map is not regular at this point")
        out.append(value)
    return tuple(out)


# ---------------------------------------------------------------------------
# cluster transformations
# ---------------------------------------------------------------------------

def _binomial_factor(rank: int, exponent: Sequence[int], sign: int) -> LaurentExpr:
    """1 + sign * z^exponent."""
    return LaurentExpr.one(rank) + LaurentExpr.monomial(exponent, sign)


def x_mutation_map(seed: Seed, k: int, use_sign: bool = False) -> RationalMap:
    """The torus transformation along the mutation edge at index k.

    Pullback: z^n -> z^n (1 + s z^{eps e_k})^{ {e_k, n} } with
    s = (-1)^{sigma_k} when use_sign is set and eps the edge orientation of
    :func:`mutation_sign`, so that composing with the map of the mutated
    seed at k gives the identity.
    """
    seed.check_index(k)
    rank = seed.rank
    eps = mutation_sign(seed, k)
    sgn = -1 if (use_sign and seed.signing[k]) else 1
    ek = seed.vectors[k]
    base_exp = ek if eps > 0 else tuple(-x for x in ek)
    base = RationalExpr.from_laurent(_binomial_factor(rank, base_exp, sgn))
    row = seed.lattice.form_row(ek)
    images = []
    for j in range(rank):
        mono = RationalExpr.monomial(tuple(1 if t == j else 0 for t in range(rank)))
        images.append(mono * base ** row[j])
    return RationalMap(rank, images)


def a_mutation_map(seed: Seed, k: int, use_sign: bool = False) -> RationalMap:
    """The dual-torus transformation along the mutation edge at index k.

    Exponents live in the dual lattice; the pullback is
    z^m -> z^m (1 + s z^{eps {e_k,-}})^{ -<e_k, m> }.
    """
    seed.check_index(k)
    rank = seed.rank
    eps = mutation_sign(seed, k)
    sgn = -1 if (use_sign and seed.signing[k]) else 1
    ek = seed.vectors[k]
    row = seed.lattice.form_row(ek)
    if not any(row):
        raise NonMonomialConstant(
            "the covector {e_k,-} vanishes, so the mutation base is the constant 1 + s"
        )
    base_exp = row if eps > 0 else tuple(-x for x in row)
    base = RationalExpr.from_laurent(_binomial_factor(rank, base_exp, sgn))
    images = []
    for j in range(rank):
        mono = RationalExpr.monomial(tuple(1 if t == j else 0 for t in range(rank)))
        images.append(mono * base ** (-ek[j]))
    return RationalMap(rank, images)
