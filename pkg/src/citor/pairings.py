"""Stable (co)homology pairings built from lengths of Tor modules.

theta: difference of eventual even/odd Tor lengths over a hypersurface.
eta_e: normalized limit of alternating partial sums of Tor lengths, detected
by fitting exact integer-valued polynomials to the even and odd tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import MINUS_INF
from .homres import tor
from .modules import FPModule


class NotHypersurface(ValueError):
    pass


class TailNotFiniteLength(ValueError):
    pass


class NotStabilized(ValueError):
    pass


class FitFailed(ValueError):
    pass


def default_bound(ring) -> int:
    return ring.dim + 2 * ring.rel_codim + 10


def tor_lengths(M: FPModule, N: FPModule, lo: int, hi: int, require_finite_from: int | None = None) -> list:
    """Lengths of Tor_i(M,N) for lo <= i <= hi (None marks infinite length)."""
    out = []
    for i in range(lo, hi + 1):
        T = tor(M, N, i)
        ell = T.length()
        if ell is None and require_finite_from is not None and i >= require_finite_from:
            raise TailNotFiniteLength(f"Tor_{i} has infinite length")
        out.append(ell)
    return out


@dataclass
class PairingResult:
    value: Fraction | None
    divergent: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        if self.divergent:
            return {"status": "divergent", **_plain(self.details)}
        v = self.value if self.value is not None else Fraction(0)
        return {
            "status": "ok",
            "value": {"num": str(v.numerator), "den": str(v.denominator)},
            **_plain(self.details),
        }


def _plain(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, Fraction):
            out[k] = {"num": str(v.numerator), "den": str(v.denominator)}
        else:
            out[k] = v
    return out


def theta(M: FPModule, N: FPModule, bound: int | None = None) -> PairingResult:
    """Hochster's pairing over a hypersurface: l(Tor_even) - l(Tor_odd), stably."""
    ring = M.ring
    if not ring.is_hypersurface:
        raise NotHypersurface("theta requires a hypersurface ring")
    B = bound if bound is not None else default_bound(ring)
    start = max(ring.dim + 1, 1)
    lengths = tor_lengths(M, N, start, B, require_finite_from=start)
    # need two full periods of stability: four consecutive equal (even, odd) pairs
    if B - start + 1 < 5:
        raise NotStabilized("bound too small to certify stabilization")
    evens = [(i, l) for i, l in zip(range(start, B + 1), lengths) if i % 2 == 0]
    odds = [(i, l) for i, l in zip(range(start, B + 1), lengths) if i % 2 == 1]
    if len(evens) < 2 or len(odds) < 2:
        raise NotStabilized("bound too small to certify stabilization")
    ev = {l for _, l in evens[-2:]}
    od = {l for _, l in odds[-2:]}
    if len(ev) != 1 or len(od) != 1:
        raise NotStabilized("Tor lengths did not stabilize within the bound")
    value = Fraction(ev.pop() - od.pop())
    return PairingResult(
        value,
        details={
            "window": [start, B],
            "lengths": lengths,
        },
    )


# -- exact polynomial utilities over Q ------------------------------------------


def poly_eval(coeffs: list[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def fit_polynomial(points: list[tuple[int, int]], max_deg: int) -> list[Fraction] | None:
    """Least-degree exact polynomial through the points, or None if deg > max_deg.

    Newton forward differences on consecutive integer sample points.
    """
    xs = [x for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(points) < max_deg + 2:
        raise FitFailed("not enough sample points for the requested degree")
    # divided differences (points are consecutive but use general form)
    table = [ys[:]]
    while len(table[-1]) > 1:
        prev = table[-1]
        nxt = []
        k = len(table)
        for i in range(len(prev) - 1):
            nxt.append((prev[i + 1] - prev[i]) / (xs[i + k] - xs[i]))
        table.append(nxt)
    deg = 0
    for k in range(len(table) - 1, 0, -1):
        if any(table[k]):
            deg = k
            break
    if deg > max_deg:
        return None
    # Newton form -> coefficient list
    coeffs = [Fraction(0)] * (deg + 1)
    basis = [Fraction(1)]  # product (x - x_0)...(x - x_{k-1})
    for k in range(deg + 1):
        c = table[k][0]
        for i, b in enumerate(basis):
            coeffs[i] += c * b
        nb = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nb[i + 1] += b
            nb[i] -= b * xs[k]
        basis = nb
    return coeffs


def _faulhaber(k: int) -> list[list[Fraction]]:
    """Coefficient lists of S_j(m) = sum_{t=0..m} t^j for j = 0..k, in m."""
    out: list[list[Fraction]] = []
    for j in range(k + 1):
        if j == 0:
            out.append([Fraction(1), Fraction(1)])  # m + 1
            continue
        # (j+1) S_j(m) = (m+1)^{j+1} - sum_{i<j} C(j+1,i) S_i(m)
        acc = _binom_power(j + 1)
        for i in range(j):
            c = Fraction(math.comb(j + 1, i))
            for t, a in enumerate(out[i]):
                acc[t] -= c * a
        out.append([a / (j + 1) for a in acc])
    return out


def _binom_power(n: int) -> list[Fraction]:
    """(m+1)^n as a coefficient list in m."""
    return [Fraction(math.comb(n, t)) for t in range(n + 1)]


def _compose_sums(tail: list[Fraction], parity: int, sums: list[list[Fraction]]) -> list[Fraction]:
    """Sum of tail(2t+parity) for t = 0..m, as a polynomial in m.

    tail is a coefficient list in the Tor index i; substituting i = 2t+parity
    and summing term by term with Faulhaber polynomials.
    """
    # expand tail(2t + parity) as polynomial in t
    in_t = [Fraction(0)] * len(tail)
    for j, c in enumerate(tail):
        # c * (2t + parity)^j
        for l in range(j + 1):
            in_t[l] += c * math.comb(j, l) * (2 ** l) * (parity ** (j - l))
    out = [Fraction(0)] * (len(in_t) + 1)
    for j, c in enumerate(in_t):
        for t, a in enumerate(sums[j]):
            out[t] += c * a
    while out and out[-1] == 0:
        out.pop()
    return out


def eta(M: FPModule, N: FPModule, e: int, bound: int | None = None) -> PairingResult:
    """eta_e(M,N) = lim s_n / n^e where s_n = sum_{i<=n} (-1)^i l(Tor_i).

    The even/odd tails of l(Tor_i) are fitted with exact polynomials of
    degree <= codim - 1; the alternating sums then become explicit
    polynomials in n whose degree-e behaviour gives the limit.
    """
    ring = M.ring
    if e < 1:
        raise ValueError("eta index must be >= 1")
    c = ring.rel_codim
    B = bound if bound is not None else default_bound(ring)
    # window [B-2c-4, B-2], but never narrower than 6 so that each parity
    # class keeps at least two sample points (matters when codim is 0)
    window_lo = max(min(B - 2 * c - 4, B - 6), ring.dim + 1, 1)
    lengths = tor_lengths(M, N, 0, B, require_finite_from=max(ring.dim + 1, 1))
    # stable start f: from window_lo on lengths must be finite (checked above)
    even_pts = [(i, lengths[i]) for i in range(window_lo, B - 1) if i % 2 == 0]
    odd_pts = [(i, lengths[i]) for i in range(window_lo, B - 1) if i % 2 == 1]
    max_deg = max(c - 1, 0)
    if len(even_pts) < max_deg + 2 or len(odd_pts) < max_deg + 2:
        raise NotStabilized("bound too small for a certified tail fit")
    even_fit = fit_polynomial(even_pts, max_deg)
    odd_fit = fit_polynomial(odd_pts, max_deg)
    if even_fit is None or odd_fit is None:
        raise FitFailed("tail does not follow a polynomial of the allowed degree")
    for i in (B - 1, B):
        fit = even_fit if i % 2 == 0 else odd_fit
        if poly_eval(fit, i) != lengths[i]:
            raise FitFailed("validation points disagree with the fitted tail")

    # alternating partial sums from index f on; the finite head of the series
    # is a constant and cannot affect a limit normalized by n^e with e >= 1
    f = window_lo
    prefix = 0
    sums = _faulhaber(max_deg)

    # closed form: for n >= f define s(n) = prefix + sum_{i=f..n} (-1)^i l_i.
    # Split indices by parity; each parity class is an arithmetic progression.
    def s_poly(n_parity: int) -> list[Fraction]:
        # n = 2m + n_parity, m large; count terms of each parity in [f, n]
        # even indices i = 2t, t from ceil(f/2) to floor(n/2)
        # odd indices  i = 2t+1, t from ceil((f-1)/2) to floor((n-1)/2)
        te0 = (f + 1) // 2
        to0 = f // 2
        # floor(n/2) = m if n even else m;   n=2m+1 -> floor(n/2)=m
        # floor((n-1)/2) = m - (1 - n_parity) ... handle directly:
        # n even (parity 0): evens t in [te0, m], odds t in [to0, m-1] shifted
        even_sum = _range_sum(even_fit, 0, te0, sums)
        odd_sum = _range_sum(odd_fit, 1, to0, sums)
        if n_parity == 0:
            even_top = _compose_sums(even_fit, 0, sums)            # t=0..m
            odd_top = _shift_poly(_compose_sums(odd_fit, 1, sums), -1)  # t=0..m-1
        else:
            even_top = _compose_sums(even_fit, 0, sums)            # t=0..m
            odd_top = _compose_sums(odd_fit, 1, sums)              # t=0..m
        head_even = even_sum
        head_odd = odd_sum
        total = _poly_sub(even_top, head_even)
        total = _poly_sub(total, _poly_sub(odd_top, head_odd))
        total[0] += prefix
        return total

    # helpers defined below module-level for clarity

    s_even = s_poly(0)  # polynomial in m where n = 2m
    s_odd = s_poly(1)   # polynomial in m where n = 2m + 1

    # express in n: s(n) ~ lead * n^deg; compare the n^e coefficient via m -> n/2
    def coeff_in_n(poly_m: list[Fraction], n_parity: int) -> tuple[Fraction, int]:
        deg = len(poly_m) - 1 if poly_m else 0
        while deg > 0 and poly_m[deg] == 0:
            deg -= 1
        if not poly_m or all(a == 0 for a in poly_m):
            return Fraction(0), 0
        lead = poly_m[deg]
        return lead / (2 ** deg), deg

    le, de = coeff_in_n(s_even, 0)
    lo, do = coeff_in_n(s_odd, 1)
    details = {
        "window": [f, B],
        "even_degree": de,
        "odd_degree": do,
        "lengths": lengths,
    }
    if de > e or do > e:
        return PairingResult(None, divergent=True, details=details)
    ve = le if de == e else Fraction(0)
    vo = lo if do == e else Fraction(0)
    if ve != vo:
        return PairingResult(None, divergent=True, details=details)
    return PairingResult(ve, details=details)


def _shift_poly(poly: list[Fraction], a: int) -> list[Fraction]:
    """poly(m + a) as a coefficient list in m."""
    out = [Fraction(0)] * len(poly)
    for j, c in enumerate(poly):
        for l in range(j + 1):
            out[l] += c * math.comb(j, l) * (a ** (j - l))
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def _range_sum(tail: list[Fraction], parity: int, t0: int, sums) -> list[Fraction]:
    """Constant polynomial: sum over t = 0..t0-1 of tail(2t+parity)."""
    total = Fraction(0)
    for t in range(t0):
        total += poly_eval(tail, 2 * t + parity)
    return [total]
