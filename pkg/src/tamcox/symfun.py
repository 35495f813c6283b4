"""Truncated symmetric functions in the power-sum basis, exact rationals.

A ``SymFun`` stores finitely many terms c * p_lambda with lambda a partition
(weakly decreasing tuple, deg p_i = i) and c a Fraction, all of total degree
at most the truncation bound.  Plethysm substitutes scaled power sums,
``suspend`` and ``omega`` are the usual sign twists, and
``legendre_transform`` computes the involution defined by
A o dB/dp1 + B = p1 dB/dp1 via a degree-by-degree plethystic inversion.

The module also provides the arithmetic sequences (Catalan, Euler phi,
Moebius mu, the central-binomial sequence lambda(n) and its Moebius
transform b(n)), the characteristic series of the two Koszul-dual cyclic
operads, induced characters of cyclic groups inside symmetric groups, and
the univariate series identity underlying the Legendre computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Partition = tuple[int, ...]


class SymFunError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_partition(p: Iterable[int]) -> Partition:
    t = tuple(int(k) for k in p)
    if any(k <= 0 for k in t) or list(t) != sorted(t, reverse=True):
        raise SymFunError(f"not a partition: {t}")
    return t


@dataclass
class SymFun:
    """Symmetric function truncated in total degree; zero terms never stored."""

    truncation: int
    terms: dict[Partition, Fraction]

    def __init__(self, truncation: int, terms: Mapping[Partition, Fraction] | None = None):
        self.truncation = truncation
        clean: dict[Partition, Fraction] = {}
        for part, coeff in (terms or {}).items():
            part = _check_partition(part) if part else ()
            coeff = _as_fraction(coeff)
            if coeff and sum(part) <= truncation:
                clean[part] = clean.get(part, Fraction(0)) + coeff
        self.terms = {p: c for p, c in clean.items() if c}

    @classmethod
    def zero(cls, truncation: int) -> SymFun:
        return cls(truncation, {})

    @classmethod
    def power_sum(cls, k: int, truncation: int, coeff=1) -> SymFun:
        return cls(truncation, {(k,): _as_fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, partition: Iterable[int]) -> Fraction:
        key = _check_partition(partition) if tuple(partition) else ()
        return self.terms.get(key, Fraction(0))

    def degree_part(self, d: int) -> SymFun:
        return SymFun(
            self.truncation, {p: c for p, c in self.terms.items() if sum(p) == d}
        )

    def max_degree(self) -> int:
        return max((sum(p) for p in self.terms), default=0)

    def restrict(self, truncation: int) -> SymFun:
        return SymFun(truncation, self.terms)

    def scale(self, k) -> SymFun:
        k = _as_fraction(k)
        return SymFun(self.truncation, {p: c * k for p, c in self.terms.items()})

    def __add__(self, other: SymFun) -> SymFun:
        n = min(self.truncation, other.truncation)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return SymFun(n, out)

    def __neg__(self) -> SymFun:
        return self.scale(-1)

    def __sub__(self, other: SymFun) -> SymFun:
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymFun) and self.terms == other.terms

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return {
            "N": self.truncation,
            "terms": [
                {"partition": list(p), "num": c.numerator, "den": c.denominator}
                for p, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> SymFun:
        terms = {
            tuple(item["partition"]): Fraction(item["num"], item["den"])
            for item in data["terms"]
        }
        return cls(data["N"], terms)

    def __repr__(self):
        if self.is_zero:
            return "SymFun(0)"
        bits = []
        for p, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(f"p{k}" for k in p) if p else "1"
            bits.append(f"({c})*{mono}")
        return "SymFun(" + " + ".join(bits) + f"; N={self.truncation})"


def add(f: SymFun, g: SymFun) -> SymFun:
    return f + g


def mul(f: SymFun, g: SymFun, truncation: int) -> SymFun:
    out: dict[Partition, Fraction] = {}
    for p, c in f.terms.items():
        dp = sum(p)
        for q, d in g.terms.items():
            if dp + sum(q) > truncation:
                continue
            key = tuple(sorted(p + q, reverse=True))
            out[key] = out.get(key, Fraction(0)) + c * d
    return SymFun(truncation, out)


def derivative_p1(f: SymFun) -> SymFun:
    out: dict[Partition, Fraction] = {}
    for p, c in f.terms.items():
        ones = sum(1 for k in p if k == 1)
        if not ones:
            continue
        idx = p.index(1)
        key = p[:idx] + p[idx + 1 :]
        out[key] = out.get(key, Fraction(0)) + c * ones
    return SymFun(f.truncation, out)


def _scale_indices(f: SymFun, k: int, truncation: int) -> SymFun:
    return SymFun(
        truncation,
        {tuple(k * part for part in p): c for p, c in f.terms.items() if k * sum(p) <= truncation},
    )


def plethysm(f: SymFun, g: SymFun, truncation: int) -> SymFun:
    """f o g, substituting p_i -> g with indices scaled by i."""
    if g.coefficient(()):
        raise SymFunError("plethysm needs a zero constant term on the right")
    out = SymFun.zero(truncation)
    for p, c in f.terms.items():
        term = SymFun(truncation, {(): Fraction(1)})
        for k in p:
            term = mul(term, _scale_indices(g, k, truncation), truncation)
            if term.is_zero:
                break
        out = out + term.scale(c)
    return out


def suspend(f: SymFun) -> SymFun:
    """(Sf)(p1, p2, ...) = -f(-p1, -p2, ...)."""
    return SymFun(
        f.truncation,
        {p: -c * (-1) ** len(p) for p, c in f.terms.items()},
    )


def omega(f: SymFun) -> SymFun:
    """The involution p_i -> (-1)^(i-1) p_i."""
    return SymFun(
        f.truncation,
        {p: c * (-1) ** (sum(p) - len(p)) for p, c in f.terms.items()},
    )


# ----------------------------------------------------------------------
# Arithmetic sequences


def catalan(n: int) -> int:
    if n < 0:
        raise SymFunError("catalan needs n >= 0")
    return math.comb(2 * n, n) // (n + 1)


def euler_phi(n: int) -> int:
    if n < 1:
        raise SymFunError("euler_phi needs n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def mobius_mu(n: int) -> int:
    if n < 1:
        raise SymFunError("mobius_mu needs n >= 1")
    m = n
    factors = 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            factors += 1
        p += 1
    if m > 1:
        factors += 1
    return -1 if factors % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def lambda_seq(n: int) -> int:
    """(-1)^C(n,2) * C(n-1, floor((n-1)/2))."""
    if n < 1:
        raise SymFunError("lambda_seq needs n >= 1")
    sign = -1 if math.comb(n, 2) % 2 else 1
    return sign * math.comb(n - 1, (n - 1) // 2)


def b_seq(n: int) -> int:
    """Moebius transform (1/n) sum_{d|n} mu(d) lambda(n/d); always an integer."""
    if n < 1:
        raise SymFunError("b_seq needs n >= 1")
    total = sum(mobius_mu(d) * lambda_seq(n // d) for d in divisors(n))
    if total % n:
        raise ArithmeticError(f"b({n}) is not an integer: {total}/{n}")
    return total // n


# ----------------------------------------------------------------------
# Characteristic series


def ch_w(truncation: int) -> SymFun:
    """Characteristic series of the even dual: one induced sign character
    of the cyclic group inside each even symmetric group."""
    if truncation < 2:
        raise SymFunError("truncation must be at least 2")
    out = SymFun.zero(truncation)
    for n in range(1, truncation // 2 + 1):
        m = 2 * n
        terms: dict[Partition, Fraction] = {}
        for j in divisors(m):
            sign = (-1) ** (j * (n - 1))
            part = (m // j,) * j
            coeff = Fraction(sign * euler_phi(m // j), m)
            terms[part] = terms.get(part, Fraction(0)) + coeff
        out = out + SymFun(truncation, terms)
    return out


def ch_v(truncation: int) -> SymFun:
    """Characteristic series of the odd ternary operad: Catalan pure-p1 part
    plus the arithmetic lambda/phi part."""
    if truncation < 2:
        raise SymFunError("truncation must be at least 2")
    out = SymFun.zero(truncation)
    for n in range(1, truncation // 2 + 1):
        m = 2 * n
        terms: dict[Partition, Fraction] = {
            (1,) * m: Fraction((-1) ** (n - 1) * catalan(n - 1))
        }
        for j in divisors(m):
            sign = (-1) ** (m * (n - 1) // j)
            part = (j,) * (m // j)
            coeff = Fraction(lambda_seq(m // j) * euler_phi(j) * sign, m)
            terms[part] = terms.get(part, Fraction(0)) + coeff
        out = out + SymFun(truncation, terms)
    return out


def dual_suspension(truncation: int) -> SymFun:
    """-suspend(ch_w), the Legendre partner of ch_v, written directly."""
    out = SymFun.zero(truncation)
    for n in range(1, truncation // 2 + 1):
        m = 2 * n
        terms: dict[Partition, Fraction] = {}
        for j in divisors(m):
            sign = (-1) ** (m * n // j)
            part = (j,) * (m // j)
            coeff = Fraction(sign * euler_phi(j), m)
            terms[part] = terms.get(part, Fraction(0)) + coeff
        out = out + SymFun(truncation, terms)
    return out


# ----------------------------------------------------------------------
# Class functions of cyclic groups and induction


@dataclass(frozen=True)
class ClassFunction:
    """Rational class function on Z/order, values[i] on the i-th power of
    the fixed generator."""

    order: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.order:
            raise SymFunError("need one value per group element")

    @classmethod
    def from_values(cls, values: Iterable) -> ClassFunction:
        vals = tuple(_as_fraction(v) for v in values)
        return cls(order=len(vals), values=vals)

    @classmethod
    def power_character(cls, order: int, base: int) -> ClassFunction:
        """The character g^i -> base^i for base in {1, -1}."""
        return cls.from_values([Fraction(base) ** i for i in range(order)])

    def twist(self) -> ClassFunction:
        """Multiply the generator's action by -1: chi(g^i) -> (-1)^i chi(g^i)."""
        return ClassFunction.from_values(
            [(-1) ** i * v for i, v in enumerate(self.values)]
        )

    def scale(self, k) -> ClassFunction:
        k = _as_fraction(k)
        return ClassFunction.from_values([k * v for v in self.values])

    def __add__(self, other: ClassFunction) -> ClassFunction:
        if self.order != other.order:
            raise SymFunError("orders differ")
        return ClassFunction.from_values(
            [a + b for a, b in zip(self.values, other.values)]
        )


def induce_cyclic(chi: ClassFunction) -> SymFun:
    """Frobenius induction of a cyclic-group class function to the symmetric
    group on as many letters, as a symmetric function of that degree."""
    m = chi.order
    terms: dict[Partition, Fraction] = {}
    for j in divisors(m):
        cycle = m // j
        total = Fraction(0)
        for i in range(1, cycle + 1):
            if math.gcd(i, cycle) == 1:
                total += chi.values[(j * i) % m]
        if total:
            part = (cycle,) * j
            terms[part] = terms.get(part, Fraction(0)) + total / m
    return SymFun(m, terms)


def involution_square_check(n: int, chi: ClassFunction) -> bool:
    """omega(Ind chi) == Ind(twisted chi) on Z/2n."""
    if chi.order != 2 * n:
        raise SymFunError("class function must live on Z/2n")
    return omega(induce_cyclic(chi)) == induce_cyclic(chi.twist())


def induced_module_char(n: int, d: int) -> SymFun:
    """Character of the induced cyclic module: (d/n) sum_{l | n/d} phi(l) p_l^(n/l)."""
    if n < 1 or n % d:
        raise SymFunError("d must divide n")
    terms: dict[Partition, Fraction] = {}
    for ell in divisors(n // d):
        part = (ell,) * (n // ell)
        terms[part] = terms.get(part, Fraction(0)) + Fraction(d * euler_phi(ell), n)
    return SymFun(n, terms)


# ----------------------------------------------------------------------
# Legendre transform


def plethystic_inverse(f: SymFun, truncation: int) -> SymFun:
    """Compositional inverse for plethysm, degree by degree.

    Needs zero constant term and an invertible coefficient on p1; the degree-k
    correction of the inverse is forced by cancelling the degree-k part of
    f o g, since only the linear part of f reaches new degrees.
    """
    if f.coefficient(()):
        raise SymFunError("inverse needs a zero constant term")
    c1 = f.coefficient((1,))
    if not c1:
        raise SymFunError("inverse needs an invertible linear coefficient")
    if f.degree_part(1) != SymFun(f.truncation, {(1,): c1}):
        raise SymFunError("degree-1 part must be a multiple of p1")
    g = SymFun(truncation, {(1,): 1 / c1})
    for k in range(2, truncation + 1):
        err = plethysm(f, g, k).degree_part(k)
        if not err.is_zero:
            g = g - err.scale(1 / c1).restrict(truncation)
    residue = plethysm(f, g, truncation)
    if residue != SymFun(truncation, {(1,): Fraction(1)}):
        raise ArithmeticError("plethystic inversion failed to close")
    return g


def legendre_transform(b: SymFun, truncation: int | None = None) -> SymFun:
    """The partner A of B under A o dB + B = p1 dB, with dB = dB/dp1."""
    n = b.truncation if truncation is None else truncation
    if any(sum(p) <= 1 for p in b.terms):
        raise SymFunError("input must have no terms of degree <= 1")
    db = derivative_p1(b)
    if not db.coefficient((1,)):
        raise SymFunError("dB/dp1 needs a nonzero linear term")
    inverse = plethystic_inverse(db, n)
    p1 = SymFun(n, {(1,): Fraction(1)})
    lhs = mul(p1, db, n) - b
    return plethysm(lhs, inverse, n)


# ----------------------------------------------------------------------
# Univariate series identity behind the Legendre computation


def _poly_add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _geom_power(exponent: int, truncation: int) -> list[Fraction]:
    """(x / (1 - x^2))^exponent as coefficients up to the truncation degree."""
    out = [Fraction(0)] * (truncation + 1)
    k = 0
    while exponent + 2 * k <= truncation:
        out[exponent + 2 * k] = Fraction(math.comb(exponent - 1 + k, k))
        k += 1
    return out


def series_identity_check(j: int, truncation: int) -> bool:
    """Both sides of the fixed-j series identity agree up to the truncation.

    Left: -sum over n with j | 2n of (j/2n) (-1)^(2nn/j) x^(2n/j).
    Right: same weights with lambda(2n/j) (-1)^(2n(n-1)/j) (x/(1-x^2))^(2n/j).
    """
    if j < 1:
        raise SymFunError("j must be at least 1")
    left = [Fraction(0)] * (truncation + 1)
    right = [Fraction(0)] * (truncation + 1)
    n = 0
    while True:
        n += 1
        if (2 * n) % j:
            continue
        m = 2 * n // j
        if m > truncation:
            break
        weight = Fraction(j, 2 * n)
        left[m] -= weight * (-1) ** (2 * n * n // j)
        term = _geom_power(m, truncation)
        sign = weight * lambda_seq(m) * (-1) ** (2 * n * (n - 1) // j)
        right = _poly_add(right, [sign * c for c in term])
    return left == right
