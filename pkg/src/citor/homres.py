"""Minimal free resolutions, Tor/Ext, depth, and derived module invariants."""

from __future__ import annotations

import math

from .groebner import MINUS_INF, FreeModule, Vec, unit_vec, vec_from_poly
from .modules import (
    FPModule,
    ModuleMap,
    RIdeal,
    annihilator,
    dual_and_kappa,
    fitting_ideal,
    fp_module,
    free_module,
    kernel_module,
    min_gens,
    rel_syzygies,
    subquotient,
    tensor,
    zero_map,
    zero_module,
)
from .polyalg import InvalidInput
from .rings import CIRing

INF = math.inf


class MissingMinPrimes(ValueError):
    pass


class Resolution:
    """Minimal graded free resolution, extended lazily.

    steps[i] holds the columns of d_{i+1}: F_{i+1} -> F_i, and twists[i] the
    generator degrees of F_i.
    """

    def __init__(self, M: FPModule):
        self.module = M
        P = M.minimalize()
        self.minimal = P
        self.twists: list[tuple[int, ...]] = [P.twists]
        self.steps: list[list[Vec]] = []
        self._done = False

    def extend(self, length: int) -> None:
        ring = self.module.ring
        while len(self.steps) < length and not self._done:
            i = len(self.steps)
            top = FreeModule(ring.ambient, self.twists[i])
            if i == 0:
                cols = min_gens(ring, top, list(self.minimal.rels))
            else:
                prev = FreeModule(ring.ambient, self.twists[i - 1])
                syz = rel_syzygies(ring, prev, self.steps[i - 1])
                cols = min_gens(ring, top, syz)
            self.steps.append(cols)
            self.twists.append(tuple(top.degree(c) for c in cols))
            if not cols:
                self._done = True

    def betti(self, i: int) -> int:
        if i < 0:
            return 0
        self.extend(i)
        if i >= len(self.twists):
            return 0
        return len(self.twists[i])

    def graded_betti(self, i: int) -> dict[int, int]:
        self.extend(i)
        if i >= len(self.twists):
            return {}
        out: dict[int, int] = {}
        for t in self.twists[i]:
            out[t] = out.get(t, 0) + 1
        return out

    def matrix(self, i: int) -> list[Vec]:
        """Columns of d_i: F_i -> F_{i-1} (i >= 1)."""
        self.extend(i)
        if i - 1 >= len(self.steps):
            return []
        return self.steps[i - 1]

    def free_twists(self, i: int) -> tuple[int, ...]:
        self.extend(i)
        return self.twists[i] if i < len(self.twists) else ()

    def syzygy(self, i: int) -> FPModule:
        """i-th syzygy module (0th is the module itself, minimalized)."""
        if i == 0:
            return self.minimal
        self.extend(i + 1)
        if i >= len(self.twists) or not self.twists[i]:
            return zero_module(self.module.ring)
        gens = self.free_twists(i)
        rels = self.matrix(i + 1)
        return fp_module(self.module.ring, gens, rels)


def resolve(M: FPModule, length: int) -> Resolution:
    if "resolution" not in M._cache:
        M._cache["resolution"] = Resolution(M)
    res = M._cache["resolution"]
    res.extend(length)
    return res


def betti_numbers(M: FPModule, bound: int) -> list[int]:
    res = resolve(M, bound)
    return [res.betti(i) for i in range(bound + 1)]


def betti_table(M: FPModule, bound: int) -> list[dict[int, int]]:
    res = resolve(M, bound)
    return [res.graded_betti(i) for i in range(bound + 1)]


def pd(M: FPModule) -> float | int:
    """Projective dimension; inf when no Betti number vanishes by dim R + 1."""
    if M.is_zero():
        return 0
    limit = M.ring.dim + 1
    res = resolve(M, limit + 1)
    for i in range(limit + 1):
        if res.betti(i) == 0:
            last = max((j for j in range(i) if res.betti(j) > 0), default=0)
            return last
    return INF


# -- Tor and Ext ---------------------------------------------------------------


def _tensor_with_free(N: FPModule, ftwists: tuple[int, ...]) -> FPModule:
    """F (x) N for a free module F; relations are block copies of N's."""
    h = len(N.twists)
    twists = tuple(t + s for t in ftwists for s in N.twists)
    rels = []
    for a in range(len(ftwists)):
        for col in N.rels:
            rels.append({(a * h + c, m): v for (c, m), v in col.items()})
    return fp_module(N.ring, twists, rels)


def _tensor_map(cols: list[Vec], N: FPModule, src: FPModule, tgt: FPModule) -> ModuleMap:
    """d (x) id_N between the block modules."""
    h = len(N.twists)
    out_cols = []
    for a, col in enumerate(cols):
        for j in range(h):
            out_cols.append({(b * h + j, m): v for (b, m), v in col.items()})
    return ModuleMap(src, tgt, out_cols, check=False)


def tor(M: FPModule, N: FPModule, i: int) -> FPModule:
    """Tor_i(M, N) from the minimal free resolution of M."""
    if i < 0:
        return zero_module(M.ring)
    if i == 0:
        return tensor(M, N)
    res = resolve(M, i + 1)
    if res.betti(i) == 0:
        return zero_module(M.ring)
    blocks = {
        j: _tensor_with_free(N, res.free_twists(j)) for j in (i - 1, i, i + 1)
    }
    g = _tensor_map(res.matrix(i), N, blocks[i], blocks[i - 1])
    if res.betti(i + 1) == 0:
        f = zero_map(zero_module(M.ring), blocks[i])
    else:
        f = _tensor_map(res.matrix(i + 1), N, blocks[i + 1], blocks[i])
    return subquotient(g, f)


def _hom_with_free(N: FPModule, ftwists: tuple[int, ...]) -> FPModule:
    h = len(N.twists)
    twists = tuple(-t + s for t in ftwists for s in N.twists)
    rels = []
    for a in range(len(ftwists)):
        for col in N.rels:
            rels.append({(a * h + c, m): v for (c, m), v in col.items()})
    return fp_module(N.ring, twists, rels)


def _hom_map(cols: list[Vec], nrows: int, N: FPModule, src: FPModule, tgt: FPModule) -> ModuleMap:
    """Hom(d, N): transpose blocks of the differential."""
    h = len(N.twists)
    out_cols = []
    for b in range(nrows):
        for j in range(h):
            v: Vec = {}
            for a, col in enumerate(cols):
                for (c, m), val in col.items():
                    if c == b:
                        v[(a * h + j, m)] = val
            out_cols.append(v)
    return ModuleMap(src, tgt, out_cols, check=False)


def ext(M: FPModule, N: FPModule, i: int) -> FPModule:
    """Ext^i(M, N) from Hom of the minimal free resolution of M into N."""
    if i < 0:
        return zero_module(M.ring)
    res = resolve(M, i + 1)
    if res.betti(i) == 0:
        return zero_module(M.ring)
    blocks = {j: _hom_with_free(N, res.free_twists(j)) for j in (i - 1, i, i + 1)}
    if res.betti(i + 1) > 0:
        gmap = _hom_map(res.matrix(i + 1), res.betti(i), N, blocks[i], blocks[i + 1])
    else:
        gmap = ModuleMap(blocks[i], zero_module(M.ring), [{} for _ in blocks[i].twists], check=False)
    if i == 0:
        fmap = zero_map(zero_module(M.ring), blocks[0])
    else:
        fmap = _hom_map(res.matrix(i), res.betti(i - 1), N, blocks[i - 1], blocks[i])
    return subquotient(gmap, fmap)


class TorProfile:
    """Tor_i(M,N) for 0 <= i <= B with dims, lengths, and tail certificates."""

    def __init__(self, M: FPModule, N: FPModule, bound: int):
        self.M = M
        self.N = N
        self.bound = bound
        self.modules = [tor(M, N, i) for i in range(bound + 1)]
        self.dims = [T.dim for T in self.modules]
        self.lengths = [T.length() for T in self.modules]
        f = None
        for i in range(bound, -1, -1):
            if self.lengths[i] is None:
                f = i + 1
                break
        self.finite_length_from = 0 if f is None else f
        self.periodic = self._periodicity()

    def _periodicity(self):
        """Period-2 certificate on the tail for hypersurface rings."""
        ring = self.M.ring
        if not ring.is_hypersurface:
            return None
        start = ring.dim + 1
        if self.bound < start + 3:
            return None
        tail = self.lengths[start:]
        if any(l is None for l in tail):
            return None
        ev = {l for i, l in zip(range(start, self.bound + 1), tail) if i % 2 == 0}
        od = {l for i, l in zip(range(start, self.bound + 1), tail) if i % 2 == 1}
        if len(ev) == 1 and len(od) == 1:
            return {"from": start, "even": ev.pop(), "odd": od.pop()}
        return None

    def zero_range(self) -> tuple[int, int] | None:
        """Longest run of vanishing Tor ending at the bound, as (start, bound)."""
        i = self.bound
        while i >= 1 and self.modules[i].is_zero():
            i -= 1
        if i == self.bound:
            return None
        return (i + 1, self.bound)

    def all_zero_from(self, s: int) -> bool:
        return all(self.modules[i].is_zero() for i in range(s, self.bound + 1))

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "dims": [None if d == MINUS_INF else int(d) for d in self.dims],
            "lengths": self.lengths,
            "finite_length_from": self.finite_length_from,
            "periodic": self.periodic,
        }


def tor_profile(M: FPModule, N: FPModule, bound: int) -> TorProfile:
    key = ("tor_profile", N.key(), bound)
    if key not in M._cache:
        M._cache[key] = TorProfile(M, N, bound)
    return M._cache[key]


# -- depth and friends -----------------------------------------------------------


def residue_field(ring: CIRing) -> FPModule:
    amb = ring.ambient
    rels = [vec_from_poly({m: 1}) for m in (tuple(1 if i == j else 0 for j in range(len(amb.names))) for i in range(len(amb.names)))]
    return fp_module(ring, (0,), rels)


def depth(M: FPModule) -> float | int:
    """Least i with Ext^i(k, M) != 0; inf for the zero module."""
    if M.is_zero():
        return INF
    k = residue_field(M.ring)
    for i in range(M.ring.dim + 1):
        if not ext(k, M, i).is_zero():
            return i
    raise AssertionError("depth exceeded dim R on a nonzero module")


def torsion_parts(M: FPModule):
    """(t(M), M/t(M), inclusion of t(M)) via the kernel of M -> M**."""
    _, _, kappa = dual_and_kappa(M.minimalize())
    tM, incl = kernel_module(kappa)
    P = M.minimalize()
    tfM = fp_module(P.ring, P.twists, list(P.rels) + [dict(c) for c in incl.cols]).minimalize()
    return tM, tfM, incl


def is_torsion_free(M: FPModule) -> bool:
    return torsion_parts(M)[0].is_zero()


def is_reflexive(M: FPModule) -> bool:
    P = M.minimalize()
    _, Mss, kappa = dual_and_kappa(P)
    if not torsion_parts(P)[0].is_zero():
        return False
    coker = fp_module(P.ring, Mss.twists, list(Mss.rels) + [dict(c) for c in kappa.cols])
    return coker.is_zero()


def serre_check(M: FPModule, n: int) -> dict:
    """Serre condition (S_n) via dim Ext^i(M, R) <= dim R - i - n for i >= 1."""
    ring = M.ring
    Rfree = free_module(ring, (0,))
    evidence = []
    holds = True
    for i in range(1, ring.dim + 1):
        E = ext(M, Rfree, i)
        d = E.dim
        dval = None if d == MINUS_INF else int(d)
        bound = ring.dim - i - n
        ok = (d == MINUS_INF) or (d <= bound)
        evidence.append({"i": i, "ext_dim": dval, "bound": bound, "ok": ok})
        holds = holds and ok
    return {"holds": holds, "n": n, "evidence": evidence}


def status_flags(M: FPModule) -> dict:
    """Summary of the standard structural predicates for a module."""
    ring = M.ring
    P = M.minimalize()
    dp = depth(P)
    proj = pd(P)
    out = {
        "is_zero": P.is_zero(),
        "depth": dp,
        "dim": P.dim,
        "pd": proj,
        "nu": len(P.twists),
        "mcm": (not P.is_zero()) and dp == ring.dim,
        "free": proj == 0 and not P.is_zero(),
        "torsion_free": None,
        "reflexive": None,
    }
    if not P.is_zero():
        out["torsion_free"] = is_torsion_free(P)
        out["reflexive"] = is_reflexive(P)
    return out


def free_locus_height(M: FPModule) -> int:
    """Height bound for the non-free locus: dim R - dim Ext^1(M, syz_1 M)."""
    ring = M.ring
    res = resolve(M, 2)
    K = res.syzygy(1)
    if K.is_zero():
        return ring.dim + 1
    E = ext(M, K, 1)
    if E.is_zero():
        return ring.dim + 1
    return ring.dim - int(E.dim) if E.dim != MINUS_INF else ring.dim + 1


def rank_of(M: FPModule) -> int | None:
    """Constant rank at the declared minimal primes, or None when not constant."""
    ring = M.ring
    if not ring.min_primes:
        raise MissingMinPrimes("ring has no declared minimal primes")
    P = M.minimalize()
    g = len(P.twists)
    for r in range(g + 1):
        fr = fitting_ideal(P, r)
        ann_prev = annihilator(fitting_ideal(P, r - 1))
        ok = True
        for prime in ring.min_primes:
            if _contained_in_prime(ring, fr, prime) or _contained_in_prime(
                ring, ann_prev, prime
            ):
                ok = False
                break
        if ok:
            return r
    return None


def _contained_in_prime(ring: CIRing, ideal: RIdeal, prime) -> bool:
    basis = ring._prime_gb(prime)
    from . import groebner as gbm

    F = FreeModule(ring.ambient, (0,))
    for gterms in ideal.gens:
        v = vec_from_poly(gterms)
        if gbm.normal_form(F, dict(v), basis):
            return False
    return True
