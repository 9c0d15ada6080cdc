"""Small finite fields GF(p^e) with table-backed arithmetic.

Elements are integers in [0, q) read as base-p digit vectors (polynomial
coefficients, little-endian).  Orders stay small here (q <= a few hundred),
so full add/mul tables are built eagerly.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import NotPrimePower


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e for prime p, or None."""
    if q < 2:
        return None
    n = q
    p = None
    d = 2
    while d * d <= n:
        if n % d == 0:
            p = d
            while n % d == 0:
                n //= d
            break
        d += 1
    if p is None:
        return (q, 1)
    if n != 1:
        return None
    e = 0
    n = q
    while n > 1:
        n //= p
        e += 1
    return (p, e)


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    # coefficient tuples, little-endian; mod is monic of degree e
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, e - 1, -1):
        coef = prod[i]
        if coef:
            prod[i] = 0
            for j in range(e):
                prod[i - e + j] = (prod[i - e + j] - coef * mod[j]) % p
    return tuple(prod[:e])


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    # trial division by every monic polynomial of degree <= deg/2
    deg = len(poly) - 1

    def divides(d: tuple[int, ...]) -> bool:
        rem = list(poly)
        dd = len(d) - 1
        inv_lead = pow(d[-1], p - 2, p) if p > 2 else d[-1]
        for i in range(len(rem) - 1, dd - 1, -1):
            coef = rem[i]
            if coef:
                factor = coef * inv_lead % p
                for j in range(dd + 1):
                    rem[i - dd + j] = (rem[i - dd + j] - factor * d[j]) % p
        return not any(rem[:dd])

    for d_deg in range(1, deg // 2 + 1):
        for code in range(p**d_deg):
            coeffs = []
            n = code
            for _ in range(d_deg):
                coeffs.append(n % p)
                n //= p
            coeffs.append(1)
            if divides(tuple(coeffs)):
                return False
    return True


def _find_irreducible(p: int, e: int) -> tuple[int, ...]:
    for code in range(p**e):
        coeffs = []
        n = code
        for _ in range(e):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        poly = tuple(coeffs)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


def _digits(x: int, p: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return tuple(out)


def _undigits(digs: tuple[int, ...], p: int) -> int:
    x = 0
    for d in reversed(digs):
        x = x * p + d
    return x


class GF:
    """Arithmetic of the q-element field, q a prime power."""

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise NotPrimePower(f"{q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        if self.e == 1:
            self.add_table = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul_table = [[a * b % q for b in range(q)] for a in range(q)]
        else:
            mod = _find_irreducible(self.p, self.e)
            elems = [_digits(x, self.p, self.e) for x in range(q)]
            self.add_table = [
                [_undigits(tuple((ai + bi) % self.p for ai, bi in zip(a, b)), self.p) for b in elems]
                for a in elems
            ]
            self.mul_table = [
                [_undigits(_poly_mul_mod(a, b, mod, self.p), self.p) for b in elems]
                for a in elems
            ]

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
