"""Small finite fields GF(p^m) in a polynomial basis.

Elements are encoded as integers ``sum(c_i * p**i)`` over the coefficient
vector. Each field is reduced modulo a fixed primitive polynomial, so ``x``
(encoded as ``p``) generates the multiplicative group:

    GF(4)   x^2 + x + 1        GF(9)   x^2 + 2x + 2
    GF(8)   x^3 + x + 1        GF(27)  x^3 + 2x + 1
    GF(16)  x^4 + x + 1        GF(25)  x^2 + 4x + 2
    GF(32)  x^5 + x^2 + 1      GF(49)  x^2 + 6x + 3
    GF(64)  x^6 + x^4 + x^3 + x + 1

Polynomials are listed low degree first in ``MODULI`` (monic, leading 1 omitted).
"""
from __future__ import annotations

from functools import lru_cache

from sympy import factorint

# (p, m) -> coefficients c_0..c_{m-1} of the monic modulus x^m + ... + c_0
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (5, 2): (2, 4),
    (7, 2): (3, 6),
}


def prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, m), = f.items()
    return p, m


class GF:
    """The field with q elements; arithmetic on integer codes via log tables."""

    def __init__(self, q: int):
        p, m = prime_power(q)
        if m > 1 and (p, m) not in MODULI:
            raise ValueError(f"no modulus recorded for GF({q})")
        self.q, self.p, self.m = q, p, m
        self.modulus = MODULI.get((p, m), ())
        self._build_tables()

    def _digits(self, a: int) -> list[int]:
        d = []
        for _ in range(self.m):
            d.append(a % self.p)
            a //= self.p
        return d

    def _code(self, d) -> int:
        a = 0
        for c in reversed(d):
            a = a * self.p + c
        return a

    def _times_x(self, a: int) -> int:
        d = [0] + self._digits(a)
        top = d.pop()
        for i, c in enumerate(self.modulus):
            d[i] = (d[i] - top * c) % self.p
        return self._code(d)

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        self.add_table = [[self._code([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])
                           for b in range(q)] for a in range(q)]
        self.neg_table = [self._code([(-x) % p for x in self._digits(a)]) for a in range(q)]
        if self.m == 1:
            gen = next(g for g in range(2, q) if _mult_order_mod(g, q) == q - 1) if q > 2 else 1
            step = lambda a: (a * gen) % q  # noqa: E731
        else:
            gen = p  # the class of x
            step = self._times_x
        exp = [1]
        for _ in range(q - 2):
            exp.append(step(exp[-1]))
        if len(set(exp)) != q - 1:
            raise ValueError(f"modulus for GF({q}) is not primitive")
        self.primitive = gen if self.m == 1 else p
        self.exp = exp
        self.log = {a: i for i, a in enumerate(exp)}

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, a: int) -> FieldElement:
        return FieldElement(self, a)

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _mult_order_mod(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


class FieldElement:
    """Operator wrapper around an integer code of ``GF(q)``."""

    __slots__ = ("F", "code")

    def __init__(self, F: GF, code: int):
        self.F = F
        self.code = code % F.q if F.m == 1 else code

    @property
    def coefficients(self) -> list[int]:
        return self.F._digits(self.code)

    def _wrap(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.code
        return int(other) % self.F.p if self.F.m > 1 else int(other) % self.F.q

    def __add__(self, o):
        return FieldElement(self.F, self.F.add(self.code, self._wrap(o)))

    def __sub__(self, o):
        return FieldElement(self.F, self.F.sub(self.code, self._wrap(o)))

    def __mul__(self, o):
        return FieldElement(self.F, self.F.mul(self.code, self._wrap(o)))

    def __truediv__(self, o):
        return FieldElement(self.F, self.F.mul(self.code, self.F.inv(self._wrap(o))))

    def __neg__(self):
        return FieldElement(self.F, self.F.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.F, self.F.pow(self.code, e))

    def __eq__(self, o) -> bool:
        return isinstance(o, FieldElement) and o.F.q == self.F.q and o.code == self.code

    def __hash__(self) -> int:
        return hash((self.F.q, self.code))

    def __repr__(self) -> str:
        return f"GF({self.F.q})[{self.code}]"
