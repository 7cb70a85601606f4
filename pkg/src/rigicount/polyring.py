"""Sparse multivariate polynomial arithmetic over a prime field.

Monomials are stored as single integers that ARE their graded reverse
lexicographic sort key: the top bit field holds the total degree and the
lower fields hold complemented exponents in reversed variable order, so
plain integer comparison orders monomials and `max(poly)` is the leading
monomial.  With this encoding

    key(a * b) = key(a) + key(b) - key(1)

and divisibility is a masked subtraction (one guard bit per field).
Polynomials are dicts mapping monomial keys to nonzero residues mod p.
"""

from __future__ import annotations

from typing import Iterable, Sequence

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
EXP_LIMIT = 1 << (FIELD_BITS - 1)  # exponents must stay below this


class Ring:
    """Monomial codec plus modular helpers for a fixed variable list and prime."""

    def __init__(self, names: Sequence[str], prime: int):
        if prime < 3 or prime % 2 == 0:
            raise ValueError("prime must be odd and at least 3")
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.prime = prime
        n = self.nvars
        self.low_mask = (1 << (FIELD_BITS * n)) - 1
        self.guard_mask = sum(1 << (FIELD_BITS * f + FIELD_BITS - 1) for f in range(n))
        self.unit = self.low_mask  # degree 0, all exponents 0 (complement = all ones)
        # key of each variable x_i: degree 1, exponent 1 in field i
        self.var_keys = tuple(
            (1 << (FIELD_BITS * n)) + self.low_mask - (1 << (FIELD_BITS * i))
            for i in range(n)
        )

    def monomial(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("wrong exponent vector length")
        key = 0
        deg = 0
        for f, e in enumerate(exps):
            if not 0 <= e < EXP_LIMIT:
                raise OverflowError(f"exponent {e} out of range")
            deg += e
            key |= (FIELD_MASK - e) << (FIELD_BITS * f)
        return (deg << (FIELD_BITS * self.nvars)) | key

    def exponents(self, key: int) -> tuple[int, ...]:
        return tuple(
            FIELD_MASK - ((key >> (FIELD_BITS * f)) & FIELD_MASK)
            for f in range(self.nvars)
        )

    def degree(self, key: int) -> int:
        return key >> (FIELD_BITS * self.nvars)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.unit

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial a divides monomial b."""
        t = (a & self.low_mask) - (b & self.low_mask)
        return t >= 0 and not (t & self.guard_mask)

    def quotient(self, b: int, a: int) -> int:
        """b / a for monomials with a | b."""
        return b - a + self.unit

    def lcm(self, a: int, b: int) -> int:
        ea = self.exponents(a)
        eb = self.exponents(b)
        return self.monomial([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        return self.lcm(a, b) == self.mul(a, b)

    # ---- polynomial helpers (dicts key -> coeff) ----

    def poly_from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> dict[int, int]:
        p = self.prime
        out: dict[int, int] = {}
        for exps, c in terms:
            c %= p
            if not c:
                continue
            k = self.monomial(exps)
            nc = (out.get(k, 0) + c) % p
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        return out

    def poly_add(self, f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
        p = self.prime
        out = dict(f)
        for k, c in g.items():
            nc = (out.get(k, 0) + c) % p
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        return out

    def poly_scale(self, f: dict[int, int], c: int) -> dict[int, int]:
        p = self.prime
        c %= p
        if not c:
            return {}
        return {k: (v * c) % p for k, v in f.items()}

    def poly_mul(self, f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
        p = self.prime
        unit = self.unit
        out: dict[int, int] = {}
        for kf, cf in f.items():
            shift = kf - unit
            for kg, cg in g.items():
                k = kg + shift
                nc = (out.get(k, 0) + cf * cg) % p
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
        return out

    def poly_monic(self, f: dict[int, int]) -> dict[int, int]:
        if not f:
            return f
        lead = max(f)
        c = f[lead]
        if c == 1:
            return f
        inv = pow(c, -1, self.prime)
        return {k: (v * inv) % self.prime for k, v in f.items()}

    def poly_str(self, f: dict[int, int]) -> str:
        if not f:
            return "0"
        parts = []
        for k in sorted(f, reverse=True):
            exps = self.exponents(k)
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{f[k]}*{mono}" if factors else str(f[k]))
        return " + ".join(parts)
