"""Groebner bases for submodules of graded free modules over Q = F_p[x].

A free-module element ("vector") is a dict mapping (component, monomial)
to a coefficient in [1, p).  The module order compares the grevlex key of
the monomial first, then prefers lower component index.  For syzygy and
membership computations we adjoin one unit component per input generator
and use an elimination order in which the original components dominate;
basis elements with zero main part are then exactly the syzygies, and the
witness parts of the others express them in terms of the input.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .polyalg import InvalidInput, Mono, PolyRing

Term = tuple[int, Mono]
Vec = dict[Term, int]

MINUS_INF = float("-inf")


class FreeModule:
    """Graded free module Q(-t_1) + ... + Q(-t_r), optionally split for elimination."""

    def __init__(self, ring: PolyRing, twists: tuple[int, ...], split: int | None = None):
        self.ring = ring
        self.twists = tuple(twists)
        self.rank = len(self.twists)
        self.split = split  # components < split dominate components >= split

    def term_key(self, term: Term):
        comp, mono = term
        part = 0
        if self.split is not None and comp < self.split:
            part = 1
        return (part, self.ring.mono_key(mono), -comp)

    def term_degree(self, term: Term) -> int:
        comp, mono = term
        return self.ring.mono_deg(mono) + self.twists[comp]

    def degree(self, v: Vec) -> int | None:
        """Degree of a homogeneous vector; None for the zero vector."""
        if not v:
            return None
        degs = {self.term_degree(t) for t in v}
        if len(degs) != 1:
            raise InvalidInput("vector is not homogeneous")
        return degs.pop()

    def is_homogeneous(self, v: Vec) -> bool:
        return len({self.term_degree(t) for t in v}) <= 1

    def lead(self, v: Vec) -> tuple[Term, int]:
        t = max(v, key=self.term_key)
        return t, v[t]

    def restrict(self, v: Vec, lo: int, hi: int, new_lo: int = 0) -> Vec:
        """Components in [lo, hi), reindexed to start at new_lo."""
        return {(c - lo + new_lo, m): a for (c, m), a in v.items() if lo <= c < hi}

    def sorted_terms(self, v: Vec) -> list[tuple[Term, int]]:
        return sorted(v.items(), key=lambda kv: self.term_key(kv[0]), reverse=True)


# -- raw vector arithmetic ---------------------------------------------------


def vec_add_scaled(v: Vec, w: Vec, c: int, p: int) -> Vec:
    """v + c*w (fresh dict)."""
    out = dict(v)
    for t, a in w.items():
        x = (out.get(t, 0) + c * a) % p
        if x:
            out[t] = x
        else:
            out.pop(t, None)
    return out


def _add_scaled_shift(acc: Vec, w: Vec, c: int, shift: Mono, p: int) -> None:
    """In place: acc += c * x^shift * w."""
    for (comp, m), a in w.items():
        t = (comp, tuple(x + y for x, y in zip(m, shift)))
        x = (acc.get(t, 0) + c * a) % p
        if x:
            acc[t] = x
        else:
            acc.pop(t, None)


def vec_scale(v: Vec, c: int, p: int) -> Vec:
    c %= p
    if c == 0:
        return {}
    return {t: (a * c) % p for t, a in v.items()}


def poly_times_vec(poly_terms: dict[Mono, int], v: Vec, p: int) -> Vec:
    out: Vec = {}
    for m, c in poly_terms.items():
        _add_scaled_shift(out, v, c, m, p)
    return out


def unit_vec(comp: int, ring: PolyRing) -> Vec:
    return {(comp, ring.one_mono): 1}


def vec_from_poly(poly_terms: dict[Mono, int], comp: int = 0) -> Vec:
    return {(comp, m): c for m, c in poly_terms.items()}


def vec_component(v: Vec, comp: int) -> dict[Mono, int]:
    return {m: a for (c, m), a in v.items() if c == comp}


def vec_key(v: Vec) -> tuple:
    """Canonical hashable key for caching."""
    return tuple(sorted(v.items()))


def apply_matrix(cols: list[Vec], w: Vec, p: int) -> Vec:
    """Image of w (a vector over the source components) under the map whose
    j-th generator maps to cols[j]."""
    out: Vec = {}
    for (comp, m), a in w.items():
        _add_scaled_shift(out, cols[comp], a, m, p)
    return out


# -- reduction and Buchberger -------------------------------------------------


def normal_form(F: FreeModule, v: Vec, basis: list[Vec], main_only: bool = False) -> Vec:
    """Full normal form of v against a list of monic vectors.

    With main_only, terms in components >= F.split are left untouched (they
    are smaller than every main term under the elimination order).
    """
    p = F.ring.p
    work = dict(v)
    out: Vec = {}
    leads = [F.lead(g) for g in basis]
    while work:
        t = max(work, key=F.term_key)
        comp, mono = t
        if main_only and F.split is not None and comp >= F.split:
            # elimination order: everything left is witness part
            for tt, aa in work.items():
                out[tt] = aa
            break
        c = work[t]
        reducer = None
        for g, ((gc, gm), _) in zip(basis, leads):
            if gc == comp and F.ring.mono_divides(gm, mono):
                reducer = (g, gm)
                break
        if reducer is None:
            out[t] = c
            del work[t]
        else:
            g, gm = reducer
            shift = F.ring.mono_div(mono, gm)
            _add_scaled_shift(work, g, -c % p, shift, p)
    return out


def _interreduce(F: FreeModule, basis: list[Vec]) -> list[Vec]:
    p = F.ring.p
    # drop elements whose lead is divisible by an earlier (smaller) lead;
    # a proper divisor always sorts first, so one ascending pass suffices
    ordered = sorted(basis, key=lambda g: F.term_key(F.lead(g)[0]))
    keep: list[Vec] = []
    kept_leads: list[Term] = []
    for g in ordered:
        c, m = F.lead(g)[0]
        if any(kc == c and F.ring.mono_divides(km, m) for kc, km in kept_leads):
            continue
        keep.append(g)
        kept_leads.append((c, m))
    # tail-reduce each against the others
    out: list[Vec] = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = normal_form(F, g, others) if others else g
        if r:
            _, lc = F.lead(r)
            out.append(vec_scale(r, pow(lc, p - 2, p), p))
    out.sort(key=lambda g: (F.degree(g), F.term_key(F.lead(g)[0])))
    return out


def buchberger(F: FreeModule, gens: list[Vec]) -> list[Vec]:
    """Reduced Groebner basis, deterministic.  Inputs must be homogeneous."""
    p = F.ring.p
    basis: list[Vec] = []
    for g in gens:
        if not F.is_homogeneous(g):
            raise InvalidInput("Groebner input must be homogeneous")
        if g:
            _, lc = F.lead(g)
            basis.append(vec_scale(g, pow(lc, p - 2, p), p))
    basis.sort(key=lambda g: (F.degree(g), F.term_key(F.lead(g)[0])))

    heap: list = []  # (lcm degree, lcm mono, i, j)

    def push_pairs(j: int):
        cj, mj = F.lead(basis[j])[0]
        for i in range(j):
            ci, mi = F.lead(basis[i])[0]
            if ci != cj:
                continue
            if F.rank == 1 and all(
                min(a, b) == 0 for a, b in zip(mi, mj)
            ):
                continue  # coprime lead monomials (valid for ideals only)
            lcm = F.ring.mono_lcm(mi, mj)
            heapq.heappush(heap, (F.ring.mono_deg(lcm) + F.twists[ci], lcm, i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, lcm, i, j = heapq.heappop(heap)
        gi, gj = basis[i], basis[j]
        (ci, mi), _ = F.lead(gi)
        (cj, mj), _ = F.lead(gj)
        s: Vec = {}
        _add_scaled_shift(s, gi, 1, F.ring.mono_div(lcm, mi), p)
        _add_scaled_shift(s, gj, -1 % p, F.ring.mono_div(lcm, mj), p)
        r = normal_form(F, s, basis)
        if r:
            _, lc = F.lead(r)
            basis.append(vec_scale(r, pow(lc, p - 2, p), p))
            push_pairs(len(basis) - 1)

    return _interreduce(F, basis)


class ExtGB:
    """Groebner data for a list of columns, with witness tracking.

    Computed in F + Q^s with the original components dominating; elements
    whose main part vanishes give the syzygies of the columns, and the
    witness part of the others expresses each basis element as a
    combination of the columns.
    """

    def __init__(self, F: FreeModule, cols: list[Vec]):
        self.F = F
        self.cols = cols
        degs = []
        for col in cols:
            d = F.degree(col)
            degs.append(0 if d is None else d)
        self.ext = FreeModule(F.ring, F.twists + tuple(degs), split=F.rank)
        gens = []
        for i, col in enumerate(cols):
            g = dict(col)
            g[(F.rank + i, F.ring.one_mono)] = 1
            gens.append(g)
        gb = buchberger(self.ext, gens)
        self.main: list[Vec] = []  # nonzero main part, witness attached
        self.syz: list[Vec] = []  # vectors over Q^s (components re-based at 0)
        for g in gb:
            if any(c < F.rank for (c, _m) in g):
                self.main.append(g)
            else:
                self.syz.append(self.ext.restrict(g, F.rank, self.ext.rank))

    def main_basis(self) -> list[Vec]:
        """Groebner basis of the column span (witness parts stripped)."""
        return [self.ext.restrict(g, 0, self.F.rank) for g in self.main]

    def syzygy_module(self) -> FreeModule:
        return FreeModule(self.F.ring, self.ext.twists[self.F.rank :])

    def express(self, v: Vec) -> list[dict[Mono, int]] | None:
        """Write v as a combination of the columns; None if not a member."""
        r = normal_form(self.ext, dict(v), self.main, main_only=True)
        if any(c < self.F.rank for (c, _m) in r):
            return None
        p = self.F.ring.p
        out = []
        for i in range(len(self.cols)):
            out.append({m: (-a) % p for (c, m), a in r.items() if c == self.F.rank + i})
        return out


# -- lead-term combinatorics: dimension and Hilbert functions -----------------


def minimal_mono_gens(ring: PolyRing, monos: list[Mono]) -> list[Mono]:
    out: list[Mono] = []
    for m in sorted(monos, key=ring.mono_deg):
        if not any(ring.mono_divides(g, m) for g in out):
            out.append(m)
    return out


def mono_ideal_dimension(ring: PolyRing, gens: list[Mono]) -> float | int:
    """Krull dimension of Q/(monomial ideal); -inf for the unit ideal."""
    if any(not any(m) for m in gens):
        return MINUS_INF
    best = 0
    n = ring.n
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        # S independent <=> no generator supported inside S
        ok = True
        for g in gens:
            if all((mask >> i) & 1 or g[i] == 0 for i in range(n)):
                ok = False
                break
        if ok:
            best = size
    return best


def mono_ideal_std_count(ring: PolyRing, gens: list[Mono], d: int) -> int:
    if d < 0:
        return 0
    return sum(
        1
        for m in ring.monomials_of_degree(d)
        if not any(ring.mono_divides(g, m) for g in gens)
    )


def mono_ideal_length(ring: PolyRing, gens: list[Mono]) -> int | None:
    """Number of standard monomials; None when infinite."""
    if mono_ideal_dimension(ring, gens) > 0:
        return None
    if any(not any(m) for m in gens):
        return 0
    # dim 0: every variable admits a pure power in the ideal
    bound = 0
    for i in range(ring.n):
        powers = [g[i] for g in gens if all(e == 0 for j, e in enumerate(g) if j != i)]
        bound += (min(powers) - 1) * ring.weights[i]
    total = 0
    for d in range(bound + 1):
        total += mono_ideal_std_count(ring, gens, d)
    return total


class HilbertData:
    """Hilbert function of the quotient of a free module by a lead-term module."""

    def __init__(self, ring: PolyRing, comp_leads: list[tuple[int, list[Mono]]]):
        # comp_leads: per component, (twist, minimal monomial generators)
        self.ring = ring
        self.comp_leads = [
            (t, minimal_mono_gens(ring, monos)) for t, monos in comp_leads
        ]
        self._values: dict[int, int] = {}

    @property
    def dimension(self) -> float | int:
        if not self.comp_leads:
            return MINUS_INF
        return max(mono_ideal_dimension(self.ring, g) for _, g in self.comp_leads)

    def value(self, d: int) -> int:
        if d not in self._values:
            self._values[d] = sum(
                mono_ideal_std_count(self.ring, g, d - t) for t, g in self.comp_leads
            )
        return self._values[d]

    def vector(self, lo: int, hi: int) -> list[int]:
        return [self.value(d) for d in range(lo, hi + 1)]

    def length(self) -> int | None:
        total = 0
        for t, g in self.comp_leads:
            sub = mono_ideal_length(self.ring, g)
            if sub is None:
                return None
            total += sub
        return total

    def min_degree(self) -> int:
        if not self.comp_leads:
            return 0
        return min(t for t, _ in self.comp_leads)

    def polynomial_tail(self) -> list[str]:
        """Coefficients (as exact rationals) of the eventual Hilbert polynomial."""
        dim = self.dimension
        if dim == MINUS_INF or dim <= 0:
            return ["0"]
        deg = int(dim) - 1
        lo = self.min_degree()
        for start in range(lo, lo + 40):
            pts = [(start + k, self.value(start + k)) for k in range(deg + 1)]
            coeffs = _interpolate(pts)
            if all(
                _poly_eval(coeffs, start + deg + 1 + k) == self.value(start + deg + 1 + k)
                for k in range(3)
            ):
                return [str(c) for c in coeffs]
        return []  # no fit found within the probe window


def _interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low to high) of the unique poly through the points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for xi, yi in points:
        li = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            li = _poly_mul(li, [Fraction(-xj), Fraction(1)])
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(li):
            coeffs[k] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
