"""Finitely presented graded modules over a CIRing, and the exact-sequence toolbox.

An FPModule is a list of generator twists plus a homogeneous relation matrix
over the ambient polynomial ring Q; the module lives over R = Q/I and all
computations lift to Q by adjoining I-multiples of the free basis.
"""

from __future__ import annotations

import itertools
import json

from . import groebner as gbm
from .groebner import (
    MINUS_INF,
    FreeModule,
    HilbertData,
    Vec,
    apply_matrix,
    poly_times_vec,
    unit_vec,
    vec_component,
    vec_from_poly,
    vec_key,
)
from .linalg import SpanTracker
from .polyalg import InvalidInput, Polynomial
from .rings import CIRing


class CompositionNotZero(ValueError):
    pass


class FPModule:
    """Graded module presented as coker of a homogeneous matrix over Q."""

    def __init__(self, ring: CIRing, twists, rels):
        self.ring = ring
        self.twists = tuple(twists)
        self.F = FreeModule(ring.ambient, self.twists)
        reduced = []
        for col in rels:
            v = ring.nf_mod_ideal(self.F, col)
            if not self.F.is_homogeneous(v):
                raise InvalidInput("relation column is not homogeneous")
            if v:
                reduced.append(v)
        self.rels = tuple(reduced)
        self._cache: dict = {}

    # -- basics ---------------------------------------------------------------

    def key(self) -> tuple:
        return (self.ring.key(), self.twists, tuple(vec_key(r) for r in self.rels))

    def __eq__(self, other):
        return isinstance(other, FPModule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def gb(self) -> list[Vec]:
        """GB over Q of (relations + I*F); zero iff a vector reduces to 0."""
        return self.ring.module_gb(self.F, list(self.rels))

    def contains_rel(self, v: Vec) -> bool:
        return not gbm.normal_form(self.F, dict(v), self.gb) if self.gb else not v

    @property
    def hilbert(self) -> HilbertData:
        if "hilbert" not in self._cache:
            self._cache["hilbert"] = self.ring.hilbert(self.F, list(self.rels))
        return self._cache["hilbert"]

    @property
    def dim(self):
        return self.hilbert.dimension

    def length(self) -> int | None:
        return self.hilbert.length()

    def is_zero(self) -> bool:
        if "is_zero" not in self._cache:
            self._cache["is_zero"] = all(
                self.contains_rel(unit_vec(i, self.ring.ambient))
                for i in range(len(self.twists))
            )
        return self._cache["is_zero"]

    def hilbert_vector(self, lo: int, hi: int) -> list[int]:
        return self.hilbert.vector(lo, hi)

    def min_twist(self) -> int:
        return min(self.twists) if self.twists else 0

    # -- minimal presentation ---------------------------------------------------

    def minimalize(self) -> "FPModule":
        return self.minimalize_with_kept()[0]

    def minimalize_with_kept(self) -> tuple["FPModule", list[int]]:
        """Minimal presentation plus the surviving original generator indices.

        Unit elimination only deletes generators, so a map out of the module
        restricts to the kept generators unchanged.
        """
        if "minimal" not in self._cache:
            ring = self.ring
            p = ring.ambient.p
            twists = list(self.twists)
            kept = list(range(len(self.twists)))
            cols = [dict(c) for c in self.rels]
            F = FreeModule(ring.ambient, tuple(twists))
            one = ring.ambient.one_mono
            while True:
                pivot = None
                for j, col in enumerate(cols):
                    for (comp, m), c in col.items():
                        if m == one:
                            pivot = (j, comp, c)
                            break
                    if pivot:
                        break
                if pivot is None:
                    break
                j, comp, c = pivot
                inv = pow(c, p - 2, p)
                pcol = cols[j]
                newcols = []
                for l, col in enumerate(cols):
                    if l == j:
                        continue
                    entry = vec_component(col, comp)
                    if entry:
                        col = gbm.vec_add_scaled(
                            col, poly_times_vec(entry, pcol, p), (-inv) % p, p
                        )
                    newcols.append(col)
                # after elimination component `comp` is zero everywhere; drop it
                del twists[comp]
                del kept[comp]
                F = FreeModule(ring.ambient, tuple(twists))
                cols = []
                for col in newcols:
                    v = {
                        (ci - (1 if ci > comp else 0), m): a
                        for (ci, m), a in col.items()
                        if ci != comp
                    }
                    v = ring.nf_mod_ideal(F, v)
                    if v:
                        cols.append(v)
            self._cache["minimal"] = (fp_module(ring, tuple(twists), cols), kept)
        return self._cache["minimal"]

    def nu(self) -> int:
        """Minimal number of generators."""
        return len(self.minimalize().twists)

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        amb = self.ring.ambient
        rels = []
        for col in self.rels:
            rels.append(
                [
                    amb.from_terms(vec_component(col, i)).text(pretty=False)
                    for i in range(len(self.twists))
                ]
            )
        return {"gens": list(self.twists), "relations": rels}

    def __repr__(self):
        return f"FPModule(gens={self.twists}, rels={len(self.rels)})"


def fp_module(ring: CIRing, twists, rels) -> FPModule:
    """Interning constructor so per-module caches (resolutions, GBs) are shared."""
    mod = FPModule(ring, twists, rels)
    key = ("module", mod.key())
    return ring._caches.setdefault(key, mod)


def module_from_json(ring: CIRing, data: dict) -> FPModule:
    try:
        twists = [int(t) for t in data["gens"]]
        cols = []
        for col in data["relations"]:
            if len(col) != len(twists):
                raise InvalidInput("relation column length must match generator count")
            v: Vec = {}
            for i, text in enumerate(col):
                poly = ring.ambient.parse(text)
                for m, c in poly.terms.items():
                    v[(i, m)] = c
            cols.append(v)
        return fp_module(ring, twists, cols)
    except KeyError as e:
        raise InvalidInput(f"module file missing field {e.args[0]!r}") from e


def free_module(ring: CIRing, twists=(0,)) -> FPModule:
    return fp_module(ring, twists, [])


def zero_module(ring: CIRing) -> FPModule:
    return fp_module(ring, (), [])


def direct_sum(M: FPModule, N: FPModule) -> FPModule:
    if M.ring != N.ring:
        raise InvalidInput("modules over different rings")
    g = len(M.twists)
    rels = [dict(c) for c in M.rels]
    rels += [{(g + i, m): a for (i, m), a in c.items()} for c in N.rels]
    return fp_module(M.ring, M.twists + N.twists, rels)


def shift(M: FPModule, a: int) -> FPModule:
    """Twisted module M(-a): generator degrees move up by a."""
    return fp_module(M.ring, tuple(t + a for t in M.twists), [dict(c) for c in M.rels])


class ModuleMap:
    """Degree-0 homogeneous map between FPModules, with well-definedness check."""

    def __init__(self, source: FPModule, target: FPModule, cols, check: bool = True):
        if source.ring != target.ring:
            raise InvalidInput("map between modules over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        cols = [target.ring.nf_mod_ideal(target.F, c) for c in cols]
        if len(cols) != len(source.twists):
            raise InvalidInput("one column per source generator required")
        for j, col in enumerate(cols):
            d = target.F.degree(col)
            if d is not None and d != source.twists[j]:
                raise InvalidInput("map column has wrong degree")
        self.cols = tuple(cols)
        if check and not self.is_well_defined():
            raise InvalidInput("matrix does not send source relations into target relations")

    def is_well_defined(self) -> bool:
        p = self.ring.ambient.p
        return all(
            self.target.contains_rel(apply_matrix(list(self.cols), rel, p))
            for rel in self.source.rels
        )

    def apply(self, v: Vec) -> Vec:
        return apply_matrix(list(self.cols), v, self.ring.ambient.p)

    def is_zero_map(self) -> bool:
        return all(self.target.contains_rel(c) for c in self.cols)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        cols = [self.apply(c) for c in other.cols]
        return ModuleMap(other.source, self.target, cols, check=False)

    def kernel_cols(self) -> list[Vec]:
        """Generators (in the source free cover) of the preimage of ker(self)."""
        ring = self.ring
        g = len(self.source.twists)
        all_cols = list(self.cols) + list(self.target.rels) + ring.lifted_ideal_vectors(
            self.target.F
        )
        ext = ring.ext_gb(self.target.F, all_cols)
        out = []
        for s in ext.syz:
            v = {(c, m): a for (c, m), a in s.items() if c < g}
            if v:
                out.append(ring.nf_mod_ideal(self.source.F, v))
        return [v for v in out if v]


def zero_map(source: FPModule, target: FPModule) -> ModuleMap:
    return ModuleMap(source, target, [{} for _ in source.twists], check=False)


def identity_map(M: FPModule) -> ModuleMap:
    return ModuleMap(M, M, [unit_vec(i, M.ring.ambient) for i in range(len(M.twists))], check=False)


# -- minimal generators of a submodule of a free module ------------------------


def min_gens_indices(ring: CIRing, F: FreeModule, vecs: list[Vec]) -> list[int]:
    """Indices of a minimal generating subset of the R-span of the given vectors.

    Graded Nakayama: in each degree keep the vectors independent modulo
    lower-degree multiples, in coordinates of standard monomials mod I.
    """
    nfv = [ring.nf_mod_ideal(F, v) for v in vecs]
    cand = [(i, F.degree(v)) for i, v in enumerate(nfv) if v]
    degrees = sorted({d for _, d in cand})
    chosen: list[int] = []
    for d in degrees:
        coords: dict = {}
        for comp in range(F.rank):
            for m in ring.std_monomials(d - F.twists[comp]):
                coords[(comp, m)] = len(coords)
        if not coords:
            continue
        span = SpanTracker(len(coords), ring.ambient.p)

        def coord_vec(v: Vec) -> list[int]:
            out = [0] * len(coords)
            for t, a in v.items():
                out[coords[t]] = a
            return out

        for i, dc in cand:
            if dc >= d:
                continue
            for mono in ring.ambient.monomials_of_degree(d - dc):
                prod = ring.nf_mod_ideal(F, poly_times_vec({mono: 1}, nfv[i], ring.ambient.p))
                if prod:
                    span.add(coord_vec(prod))
        for i, dc in cand:
            if dc == d and span.add(coord_vec(nfv[i])):
                chosen.append(i)
    return chosen


def min_gens(ring: CIRing, F: FreeModule, vecs: list[Vec]) -> list[Vec]:
    nfv = [ring.nf_mod_ideal(F, v) for v in vecs]
    return [nfv[i] for i in min_gens_indices(ring, F, vecs)]


def rel_syzygies(ring: CIRing, F: FreeModule, cols: list[Vec]) -> list[Vec]:
    """Generators of the R-syzygy module of the columns (lifted through Q)."""
    all_cols = list(cols) + ring.lifted_ideal_vectors(F)
    ext = ring.ext_gb(F, all_cols)
    out = []
    for s in ext.syz:
        v = {(c, m): a for (c, m), a in s.items() if c < len(cols)}
        if v:
            out.append(v)
    return out


# -- spec operations -----------------------------------------------------------


def minimalize(M: FPModule) -> FPModule:
    return M.minimalize()


def subquotient(g: ModuleMap, f: ModuleMap) -> FPModule:
    """Presentation of ker(g)/im(f); requires g∘f = 0."""
    if f.target is not g.source and f.target != g.source:
        raise InvalidInput("subquotient requires f.target == g.source")
    p = g.ring.ambient.p
    for col in f.cols:
        if not g.target.contains_rel(apply_matrix(list(g.cols), col, p)):
            raise CompositionNotZero("g∘f is not zero")
    B = g.source
    K = g.kernel_cols()
    if not K:
        return zero_module(B.ring)
    ring = B.ring
    kf = FreeModule(ring.ambient, tuple(B.F.degree(c) for c in K))
    all_cols = K + list(B.rels) + list(f.cols) + ring.lifted_ideal_vectors(B.F)
    ext = ring.ext_gb(B.F, all_cols)
    rels = []
    for s in ext.syz:
        v = {(c, m): a for (c, m), a in s.items() if c < len(K)}
        if v:
            rels.append(v)
    return fp_module(ring, kf.twists, rels).minimalize()


def kernel_module(g: ModuleMap) -> tuple[FPModule, ModuleMap]:
    """ker(g) as a module, with its inclusion into g.source."""
    B = g.source
    ring = B.ring
    K = g.kernel_cols()
    if not K:
        zm = zero_module(ring)
        return zm, ModuleMap(zm, B, [], check=False)
    twists = tuple(B.F.degree(c) for c in K)
    all_cols = K + list(B.rels) + ring.lifted_ideal_vectors(B.F)
    ext = ring.ext_gb(B.F, all_cols)
    rels = []
    for s in ext.syz:
        v = {(c, m): a for (c, m), a in s.items() if c < len(K)}
        if v:
            rels.append(v)
    mod = fp_module(ring, twists, rels)
    mod_min, kept = mod.minimalize_with_kept()
    incl = ModuleMap(mod_min, B, [K[i] for i in kept], check=False)
    return mod_min, incl


def cokernel(g: ModuleMap) -> FPModule:
    rels = list(g.target.rels) + list(g.cols)
    return fp_module(g.ring, g.target.twists, rels).minimalize()


def tensor(M: FPModule, N: FPModule) -> FPModule:
    """M (x) N with the block presentation (A(x)1 | 1(x)B), minimalized."""
    if M.ring != N.ring:
        raise InvalidInput("tensor requires modules over the same ring")
    gM, gN = len(M.twists), len(N.twists)
    twists = tuple(M.twists[i] + N.twists[j] for i in range(gM) for j in range(gN))
    rels = []
    for col in M.rels:  # A (x) e_j
        for j in range(gN):
            rels.append({(c * gN + j, m): a for (c, m), a in col.items()})
    for col in N.rels:  # e_i (x) B
        for i in range(gM):
            rels.append({(i * gN + c, m): a for (c, m), a in col.items()})
    return fp_module(M.ring, twists, rels).minimalize()


def tensor_power(M: FPModule, n: int) -> FPModule:
    out = free_module(M.ring, (0,))
    for _ in range(n):
        out = tensor(out, M)
    return out


# -- duals ----------------------------------------------------------------------


def _transpose_cols(cols: list[Vec], nrows: int) -> list[Vec]:
    """Columns of the transpose: output col i collects component i across inputs."""
    out = []
    for i in range(nrows):
        v: Vec = {}
        for j, col in enumerate(cols):
            for (c, m), a in col.items():
                if c == i:
                    v[(j, m)] = a
        out.append(v)
    return out


def _dual_presentation(ring: CIRing, twists, rel_cols) -> tuple[tuple, list[Vec], list[Vec]]:
    """Presentation (twists, rels) of Hom(coker(rel_cols), R) plus its chosen
    generators U as vectors in the dual free module."""
    g = len(twists)
    dualF = FreeModule(ring.ambient, tuple(-t for t in twists))
    if not rel_cols:
        U = [unit_vec(i, ring.ambient) for i in range(g)]
        return dualF.twists, [], U
    relF = FreeModule(ring.ambient, tuple(-_col_degree(ring, FreeModule(ring.ambient, tuple(twists)), c) for c in rel_cols))
    at_cols = _transpose_cols(list(rel_cols), g)
    all_cols = at_cols + ring.lifted_ideal_vectors(relF)
    ext = ring.ext_gb(relF, all_cols)
    cands = []
    for s in ext.syz:
        v = {(c, m): a for (c, m), a in s.items() if c < g}
        if v:
            cands.append(ring.nf_mod_ideal(dualF, v))
    cands = [v for v in cands if v]
    U = [cands[i] for i in min_gens_indices(ring, dualF, cands)]
    vtwists = tuple(dualF.degree(u) for u in U)
    rels = rel_syzygies(ring, dualF, U)
    return vtwists, rels, U


def _col_degree(ring: CIRing, F: FreeModule, col: Vec) -> int:
    d = F.degree(col)
    return 0 if d is None else d


def dual_and_kappa(M: FPModule):
    """(M*, M**, kappa: M -> M**) with the canonical evaluation map."""
    ring = M.ring
    vtw, vrels, U = _dual_presentation(ring, M.twists, list(M.rels))
    Mstar = fp_module(ring, vtw, vrels)
    wtw, wrels, W = _dual_presentation(ring, Mstar.twists, list(Mstar.rels))
    Mss = fp_module(ring, wtw, wrels)
    # kappa(e_i) evaluates the chosen functionals at e_i, expressed in W
    G0dual = FreeModule(ring.ambient, tuple(-t for t in Mstar.twists))
    exprgb = ring.ext_gb(G0dual, W + ring.lifted_ideal_vectors(G0dual))
    kcols = []
    for i in range(len(M.twists)):
        ev: Vec = {}
        for j, u in enumerate(U):
            for (c, m), a in u.items():
                if c == i:
                    ev[(j, m)] = a
        if not ev:
            kcols.append({})
            continue
        coeffs = exprgb.express(ev)
        if coeffs is None:
            raise AssertionError("evaluation functional fell outside the double dual")
        v: Vec = {}
        for l in range(len(W)):
            for m, a in coeffs[l].items():
                v[(l, m)] = a
        kcols.append(v)
    kappa = ModuleMap(M, Mss, kcols)
    return Mstar, Mss, kappa


def dual(M: FPModule) -> FPModule:
    return dual_and_kappa(M)[0]


# -- Fitting ideals and ideal arithmetic over R ---------------------------------

PolyTerms = dict  # Mono -> coeff


class RIdeal:
    """Ideal of R given by polynomial generators (reduced mod the relation ideal)."""

    def __init__(self, ring: CIRing, gens: list[PolyTerms]):
        self.ring = ring
        F = FreeModule(ring.ambient, (0,))
        cleaned = []
        for g in gens:
            v = ring.nf_mod_ideal(F, vec_from_poly(g))
            if v:
                cleaned.append(vec_component(v, 0))
        self.gens = cleaned

    def _gb(self) -> list[Vec]:
        F = FreeModule(self.ring.ambient, (0,))
        return self.ring.module_gb(F, [vec_from_poly(g) for g in self.gens])

    def contains(self, poly_terms: PolyTerms) -> bool:
        F = FreeModule(self.ring.ambient, (0,))
        v = vec_from_poly(poly_terms)
        basis = self._gb()
        return not gbm.normal_form(F, v, basis) if basis else not v

    def contained_in(self, other: "RIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.contains({self.ring.ambient.one_mono: 1})

    def dim(self):
        """Dimension of R/ideal."""
        F = FreeModule(self.ring.ambient, (0,))
        return self.ring.hilbert(F, [vec_from_poly(g) for g in self.gens]).dimension

    def height(self) -> int:
        """dim R - dim(R/ideal); valid on CM graded rings."""
        d = self.dim()
        if d == MINUS_INF:
            return self.ring.dim + 1
        return self.ring.dim - int(d)

    def gens_text(self) -> list[str]:
        amb = self.ring.ambient
        return sorted(amb.from_terms(g).text(pretty=False) for g in self.gens)


def annihilator(ideal: RIdeal) -> RIdeal:
    """(0 : J) in R, via colon ideals over Q."""
    ring = ideal.ring
    if ideal.is_zero():
        return RIdeal(ring, [{ring.ambient.one_mono: 1}])
    result: RIdeal | None = None
    for g in ideal.gens:
        cg = _colon_in_q(ring, g)
        result = cg if result is None else _intersect(ring, result, cg)
    return result


def _colon_in_q(ring: CIRing, f: PolyTerms) -> RIdeal:
    """(I : f) as an ideal of R."""
    F = FreeModule(ring.ambient, (0,))
    cols = [vec_from_poly(f)] + [vec_from_poly(g.terms) for g in ring.relations]
    ext = ring.ext_gb(F, cols)
    gens = [vec_component(s, 0) for s in ext.syz if vec_component(s, 0)]
    return RIdeal(ring, gens)


def _intersect(ring: CIRing, a: RIdeal, b: RIdeal) -> RIdeal:
    """a ∩ b via syzygies of [(1,1) | (a_i,0) | (0,b_j)] lifted over Q."""
    amb = ring.ambient
    F2 = FreeModule(amb, (0, 0))
    cols: list[Vec] = [{(0, amb.one_mono): 1, (1, amb.one_mono): 1}]
    for g in a.gens:
        cols.append({(0, m): c for m, c in g.items()})
    for g in b.gens:
        cols.append({(1, m): c for m, c in g.items()})
    for f in ring.relations:
        for comp in (0, 1):
            cols.append({(comp, m): c for m, c in f.terms.items()})
    ext = ring.ext_gb(F2, cols)
    gens = [vec_component(s, 0) for s in ext.syz if vec_component(s, 0)]
    return RIdeal(ring, gens)


def _det(ring: CIRing, entries: list[list[Polynomial]]) -> Polynomial:
    n = len(entries)
    if n == 0:
        return ring.ambient.one()
    if n == 1:
        return entries[0][0]
    total = ring.ambient.zero()
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in entries[1:]]
        term = entries[0][j] * _det(ring, minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def fitting_ideal(M: FPModule, r: int) -> RIdeal:
    """Ideal of (g-r)-minors of the minimal relation matrix."""
    if r < -1:
        raise InvalidInput("Fitting index must be >= -1")
    ring = M.ring
    P = M.minimalize()
    g = len(P.twists)
    k = g - r
    if k <= 0:
        return RIdeal(ring, [{ring.ambient.one_mono: 1}])
    q = len(P.rels)
    if k > g or k > q:
        return RIdeal(ring, [])
    amb = ring.ambient
    entry = [
        [amb.from_terms(vec_component(col, i)) for col in P.rels] for i in range(g)
    ]
    gens = []
    for rows in itertools.combinations(range(g), k):
        for cols in itertools.combinations(range(q), k):
            d = _det(ring, [[entry[i][j] for j in cols] for i in rows])
            if not d.is_zero():
                gens.append(d.terms)
    return RIdeal(ring, gens)


def dim_length(M: FPModule) -> dict:
    h = M.hilbert
    d = h.dimension
    return {"dim": d, "length": h.length(), "hilbert": h}


# -- random small modules (seeded, for the property/red-alarm suites) -----------


def random_module(ring: CIRing, rng, max_gens: int = 3, max_deg: int = 3) -> FPModule:
    g = rng.randint(1, max_gens)
    twists = tuple(rng.randint(0, 1) for _ in range(g))
    ncols = rng.randint(0, max_gens)
    amb = ring.ambient
    cols = []
    for _ in range(ncols):
        cdeg = rng.randint(max(twists, default=0) + 1, max(twists, default=0) + max_deg - 1)
        v: Vec = {}
        for i in range(g):
            d = cdeg - twists[i]
            if d < 0 or rng.random() < 0.3:
                continue
            for m in amb.monomials_of_degree(d):
                c = rng.randint(0, amb.p - 1) if rng.random() < 0.6 else 0
                if c:
                    v[(i, m)] = c
        if v:
            cols.append(v)
    return fp_module(ring, twists, cols).minimalize()
