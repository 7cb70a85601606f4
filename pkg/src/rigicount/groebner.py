"""Buchberger's algorithm over a prime field with degrevlex order.

Pair management uses the Gebauer-Moller criteria (coprime leading terms and
the chain criterion) and the normal selection strategy (lowest lcm first).
Single-variable linear generators are substituted away before the main loop
and re-appended afterwards; this leaves the reduced basis unchanged and is a
large win for systems that pin coordinates.
"""

from __future__ import annotations

import heapq
from typing import Optional, Sequence

from .polyring import FIELD_BITS, FIELD_MASK, Ring

Poly = dict[int, int]


class NotZeroDimensional(Exception):
    """The ideal's variety is not finite (some variable has no pure power)."""


class _Reducer:
    """Append-only list of monic polynomials with cached reducer lookup."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.tails: list[tuple[tuple[int, int], ...]] = []
        self.lms: list[int] = []
        self.lows: list[int] = []
        self.hit: dict[int, int] = {}
        self.miss: dict[int, int] = {}

    def append(self, f: Poly) -> None:
        lm = max(f)
        self.lms.append(lm)
        self.lows.append(lm & self.ring.low_mask)
        self.tails.append(tuple((k, c) for k, c in sorted(f.items(), reverse=True) if k != lm))

    def find_reducer(self, k: int) -> int:
        idx = self.hit.get(k)
        if idx is not None:
            return idx
        start = self.miss.get(k, 0)
        lows = self.lows
        lowk = k & self.ring.low_mask
        guard = self.ring.guard_mask
        for i in range(start, len(lows)):
            t = lows[i] - lowk
            if t >= 0 and not (t & guard):
                self.hit[k] = i
                self.miss.pop(k, None)
                return i
        self.miss[k] = len(lows)
        return -1

    def normal_form(self, f: Poly) -> Poly:
        p = self.ring.prime
        work = dict(f)
        if not work:
            return work
        rem: Poly = {}
        heap = [-k for k in work]
        heapq.heapify(heap)
        pop = heapq.heappop
        push = heapq.heappush
        find = self.find_reducer
        tails = self.tails
        lms = self.lms
        while heap:
            k = -pop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            gi = find(k)
            if gi < 0:
                rem[k] = c
                continue
            shift = k - lms[gi]
            for kt, ct in tails[gi]:
                nk = kt + shift
                old = work.get(nk)
                if old is None:
                    nc = (-c * ct) % p
                    if nc:
                        work[nk] = nc
                        push(heap, -nk)
                else:
                    nc = (old - c * ct) % p
                    if nc:
                        work[nk] = nc
                    else:
                        del work[nk]
        return rem

    def polynomials(self) -> list[Poly]:
        out = []
        for lm, tail in zip(self.lms, self.tails):
            f = dict(tail)
            f[lm] = 1
            out.append(f)
        return out


class _Buchberger(_Reducer):
    def __init__(self, ring: Ring):
        super().__init__(ring)
        self.alive: dict[tuple[int, int], int] = {}
        self.heap: list[tuple[int, int, int]] = []

    def add(self, f: Poly) -> None:
        """Append a monic polynomial and update the pair set (Gebauer-Moller)."""
        ring = self.ring
        t = len(self.lms)
        lm = max(f)
        tau = [ring.lcm(self.lms[i], lm) for i in range(t)]
        # chain criterion on old pairs
        for (i, j), l in list(self.alive.items()):
            if ring.divides(lm, l) and tau[i] != l and tau[j] != l:
                del self.alive[(i, j)]
        # new pairs: group by lcm; drop dominated groups and coprime groups
        cand = sorted(range(t), key=lambda i: (tau[i], i))
        kept_lcms: list[int] = []
        pos = 0
        while pos < len(cand):
            l = tau[cand[pos]]
            group = [cand[pos]]
            pos += 1
            while pos < len(cand) and tau[cand[pos]] == l:
                group.append(cand[pos])
                pos += 1
            if any(ring.divides(k, l) and k != l for k in kept_lcms):
                continue
            if any(ring.coprime(self.lms[i], lm) for i in group):
                continue
            kept_lcms.append(l)
            i = group[0]
            self.alive[(i, t)] = l
            heapq.heappush(self.heap, (l, i, t))
        self.append(f)

    def s_polynomial(self, i: int, j: int, lcm: int) -> Poly:
        p = self.ring.prime
        out: Poly = {}
        shift = lcm - self.lms[i]
        for kt, ct in self.tails[i]:
            out[kt + shift] = ct
        shift = lcm - self.lms[j]
        for kt, ct in self.tails[j]:
            nk = kt + shift
            nc = (out.get(nk, 0) - ct) % p
            if nc:
                out[nk] = nc
            else:
                out.pop(nk, None)
        return out

    def run(self, polys: Sequence[Poly]) -> None:
        ring = self.ring
        for f in sorted((dict(f) for f in polys if f), key=max):
            nf = self.normal_form(f)
            if nf:
                self.add(ring.poly_monic(nf))
        while self.heap:
            lcm, i, j = heapq.heappop(self.heap)
            if self.alive.pop((i, j), None) is None:
                continue
            nf = self.normal_form(self.s_polynomial(i, j, lcm))
            if nf:
                self.add(ring.poly_monic(nf))


def _substitute_constant(f: Poly, field: int, value: int, ring: Ring) -> Poly:
    p = ring.prime
    deg_shift = FIELD_BITS * ring.nvars
    var_shift = FIELD_BITS * field
    out: Poly = {}
    for k, c in f.items():
        e = FIELD_MASK - ((k >> var_shift) & FIELD_MASK)
        if e:
            if value == 0:
                continue
            k = k - (e << deg_shift) + (e << var_shift)
            c = c * pow(value, e, p) % p
        nc = (out.get(k, 0) + c) % p
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def _extract_pins(polys: list[Poly], ring: Ring) -> Optional[list[tuple[int, int]]]:
    """Substitute away generators of the form a*x + b, mutating polys in place.

    Returns the (field, value) pins, or None when a substitution exposes the
    unit ideal.
    """
    pins: list[tuple[int, int]] = []
    p = ring.prime
    changed = True
    while changed:
        changed = False
        for idx, f in enumerate(polys):
            if not f:
                continue
            lead = max(f)
            if ring.degree(lead) != 1:
                continue
            if len(f) > 2 or (len(f) == 2 and min(f) != ring.unit):
                continue
            value = (-f.get(ring.unit, 0) * pow(f[lead], -1, p)) % p
            field = next(i for i, e in enumerate(ring.exponents(lead)) if e)
            del polys[idx]
            for k in range(len(polys)):
                polys[k] = _substitute_constant(polys[k], field, value, ring)
                if polys[k] and max(polys[k]) == ring.unit:
                    return None
            pins.append((field, value))
            changed = True
            break
    return pins


def groebner_basis(polys: Sequence[Poly], ring: Ring) -> list[Poly]:
    """Reduced Groebner basis (degrevlex); deterministic for fixed input."""
    work = [dict(f) for f in polys if f]
    for f in work:
        if max(f) == ring.unit:
            return [{ring.unit: 1}]
    pins = _extract_pins(work, ring)
    if pins is None:
        return [{ring.unit: 1}]
    engine = _Buchberger(ring)
    engine.run([f for f in work if f])
    basis = engine.polynomials()
    if any(max(f) == ring.unit for f in basis):
        return [{ring.unit: 1}]
    basis = _interreduce(basis, ring)
    for field, value in pins:
        f = {ring.var_keys[field]: 1}
        if value:
            f[ring.unit] = (-value) % ring.prime
        basis.append(f)
    basis.sort(key=max)
    return basis


def _interreduce(basis: list[Poly], ring: Ring) -> list[Poly]:
    lms = [max(f) for f in basis]
    keep = [
        i
        for i, lm in enumerate(lms)
        if not any(
            j != i and ring.divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(lms))
        )
    ]
    reduced: list[Poly] = []
    for i in keep:
        others = _Reducer(ring)
        for j in keep:
            if j != i:
                others.append(basis[j])
        tail = {k: c for k, c in basis[i].items() if k != lms[i]}
        rem = others.normal_form(tail)
        rem[lms[i]] = 1
        reduced.append(rem)
    return reduced


def reduce_poly(f: Poly, basis: Sequence[Poly], ring: Ring) -> Poly:
    """Full normal form of f against an arbitrary basis (for checks and tests)."""
    red = _Reducer(ring)
    for g in basis:
        red.append(ring.poly_monic(dict(g)))
    return red.normal_form(dict(f))


def is_groebner_basis(basis: Sequence[Poly], ring: Ring) -> bool:
    """Check every S-polynomial reduces to zero (test helper, quadratic cost)."""
    engine = _Buchberger(ring)
    for g in basis:
        engine.append(ring.poly_monic(dict(g)))
    n = len(engine.lms)
    for i in range(n):
        for j in range(i):
            lcm = ring.lcm(engine.lms[i], engine.lms[j])
            if engine.normal_form(engine.s_polynomial(i, j, lcm)):
                return False
    return True


def quotient_dimension(basis: Sequence[Poly], ring: Ring) -> int:
    """Number of standard monomials of a zero-dimensional ideal.

    Raises NotZeroDimensional when some variable has no pure power among the
    leading monomials.
    """
    lms = [max(f) for f in basis]
    if ring.unit in lms:
        return 0
    for field in range(ring.nvars):
        if not _has_pure_power(lms, field, ring):
            raise NotZeroDimensional(ring.names[field])
    lows = [lm & ring.low_mask for lm in lms]
    guard = ring.guard_mask
    low_mask = ring.low_mask

    def reducible(k: int) -> bool:
        lowk = k & low_mask
        for lo in lows:
            t = lo - lowk
            if t >= 0 and not (t & guard):
                return True
        return False

    unit = ring.unit
    var_keys = ring.var_keys
    seen = {unit}
    stack = [unit]
    count = 0
    while stack:
        k = stack.pop()
        count += 1
        for vk in var_keys:
            nk = k + vk - unit
            if nk not in seen:
                seen.add(nk)
                if not reducible(nk):
                    stack.append(nk)
    return count


def _has_pure_power(lms: list[int], field: int, ring: Ring) -> bool:
    for lm in lms:
        exps = ring.exponents(lm)
        if exps[field] and all(e == 0 for f, e in enumerate(exps) if f != field):
            return True
    return False


def dump_basis(basis: Sequence[Poly], ring: Ring) -> str:
    """One polynomial per line, terms in descending order, decimal residues."""
    return "\n".join(ring.poly_str(f) for f in basis)
