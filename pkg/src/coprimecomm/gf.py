"""Small finite fields GF(q) as addition/multiplication tables.

Elements are the integers ``0..q-1``.  For a prime power ``q = p^n`` the
integer ``c_0 + c_1 p + ... + c_{n-1} p^{n-1}`` stands for the polynomial
``c_0 + c_1 X + ... + c_{n-1} X^{n-1}`` reduced modulo a fixed irreducible
polynomial.
"""

from __future__ import annotations

from functools import lru_cache

# q -> (p, coefficients of the monic irreducible modulus, lowest degree first)
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),        # X^2 + X + 1
    8: (2, (1, 1, 0, 1)),     # X^3 + X + 1
    9: (3, (1, 0, 1)),        # X^2 + 1
    16: (2, (1, 1, 0, 0, 1)),  # X^4 + X + 1
    25: (5, (2, 1, 1)),       # X^2 + X + 2
    27: (3, (1, 2, 0, 1)),    # X^3 + 2X + 1
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class GF:
    """Finite field of order q (prime, or listed in ``IRREDUCIBLE``)."""

    def __init__(self, q: int):
        if _is_prime(q):
            p, modulus = q, (0, 1)
        elif q in IRREDUCIBLE:
            p, modulus = IRREDUCIBLE[q]
        else:
            raise ValueError(f"no field table for q = {q}")
        self.q = q
        self.p = p
        self.modulus = modulus
        n = len(modulus) - 1
        self.n = n
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                     for b in range(q)] for a in range(q)]
        self.mul = [[self._polymul(digits[a], digits[b]) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1)
                             for a in range(1, q)]
        self.primitive = next(a for a in range(1, q) if self.mult_order(a) == q - 1)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _polymul(self, a: list[int], b: list[int]) -> int:
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with the monic modulus, top degree down
        for d in range(len(prod) - 1, n - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[d - n + i] = (prod[d - n + i] - c * m) % p
        return self._encode(prod[:n])

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
