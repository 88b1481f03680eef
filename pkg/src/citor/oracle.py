"""Independent Tor computation by dense linear algebra, degree by degree.

No Groebner bases anywhere: each graded piece of R and of the modules is a
plain F_p vector space spanned by monomials, differentials are matrices on
those bases, and homology is rank arithmetic.  Only usable up to a fixed
internal degree bound, which is exactly what makes it a useful cross-check
against the symbolic pipeline.
"""

from __future__ import annotations

from .linalg import SpanTracker, kernel_basis, rank, rref


class DenseRing:
    """Graded pieces of R = Q/I as explicit F_p vector spaces."""

    def __init__(self, ring):
        self.ring = ring
        self.amb = ring.ambient
        self.p = ring.ambient.p
        self._pieces: dict[int, tuple] = {}
        self._red: dict = {}

    def piece(self, d: int):
        """(all monomials of degree d, index map, rref relation rows, std set)."""
        if d not in self._pieces:
            monos = self.amb.monomials_of_degree(d) if d >= 0 else []
            index = {m: i for i, m in enumerate(monos)}
            rows = []
            for f in self.ring.relations:
                fd = f.degree()
                if fd is None or fd > d:
                    continue
                for m in self.amb.monomials_of_degree(d - fd):
                    row = [0] * len(monos)
                    for fm, c in f.terms.items():
                        row[index[self.amb.mono_mul(m, fm)]] = c
                    rows.append(row)
            red, pivots = rref(rows, self.p)
            std = [m for i, m in enumerate(monos) if i not in set(pivots)]
            self._pieces[d] = (monos, index, red, set(std))
        return self._pieces[d]

    def reduce_mono(self, mono) -> dict:
        """Image of a monomial in R, written on the standard monomial basis."""
        if mono not in self._red:
            d = self.amb.mono_deg(mono)
            monos, index, red, std = self.piece(d)
            vec = [0] * len(monos)
            vec[index[mono]] = 1
            for row in red:
                piv = next(i for i, c in enumerate(row) if c)
                if vec[piv]:
                    c = vec[piv]
                    vec = [(a - c * b) % self.p for a, b in zip(vec, row)]
            self._red[mono] = {monos[i]: c for i, c in enumerate(vec) if c}
        return self._red[mono]

    def reduce_terms(self, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            for rm, rc in self.reduce_mono(m).items():
                out[rm] = (out.get(rm, 0) + c * rc) % self.p
        return {m: c for m, c in out.items() if c}

    def free_basis(self, twists, d: int) -> list:
        """Basis of (⊕ R(-t_i))_d as (component, standard monomial) pairs."""
        out = []
        for comp, t in enumerate(twists):
            if d - t < 0:
                continue
            _, _, _, std = self.piece(d - t)
            for m in sorted(std):
                out.append((comp, m))
        return out


# A sparse column over a free module: component index -> polynomial term dict.
Entries = dict


def _col_image(dense: DenseRing, entries: Entries, comp: int, mono) -> dict:
    """Image of the basis element mono*e_comp under the matrix, as coords."""
    out: dict = {}
    for tcomp, poly in entries.get(comp, []):
        for pm, c in poly.items():
            for rm, rc in dense.reduce_mono(dense.amb.mono_mul(mono, pm)).items():
                key = (tcomp, rm)
                out[key] = (out.get(key, 0) + c * rc) % dense.p
    return {k: v for k, v in out.items() if v}


def _resolution_levels(dense: DenseRing, M_twists, M_rels, imax: int, bound: int):
    """Degree-bounded free resolution of coker(M_rels) by dense kernels.

    Returns (twists per level, entries per differential).  Each differential
    maps level s+1 to level s; entries[s][j] lists (target comp, poly terms)
    for source component j.
    """
    amb = dense.amb
    p = dense.p
    twists_levels = [tuple(M_twists)]
    entries_levels: list[Entries] = []

    d1: Entries = {}
    t1 = []
    for j, col in enumerate(M_rels):
        deg = 0
        pairs = []
        for i, poly in enumerate(col):
            if poly:
                deg = M_twists[i] + amb.mono_deg(next(iter(poly)))
                pairs.append((i, poly))
        d1[j] = pairs
        t1.append(deg)
    twists_levels.append(tuple(t1))
    entries_levels.append(d1)

    for step in range(1, imax + 1):
        src_t = twists_levels[step]
        tgt_t = twists_levels[step - 1]
        new_twists: list[int] = []
        new_entries: Entries = {}
        # syzygies can live in negative degrees when generators have them
        lo = min(0, min(src_t)) if src_t else 0
        for d in range(lo, bound + 1):
            src_basis = dense.free_basis(src_t, d)
            if not src_basis:
                continue
            tgt_basis = dense.free_basis(tgt_t, d)
            tgt_index = {t: i for i, t in enumerate(tgt_basis)}
            # matrix rows = target coordinates, columns = source basis
            amat = [[0] * len(src_basis) for _ in range(len(tgt_basis))]
            for sj, (comp, m) in enumerate(src_basis):
                for key, c in _col_image(dense, entries_levels[step - 1], comp, m).items():
                    amat[tgt_index[key]][sj] = c
            ker = kernel_basis(amat, len(src_basis), p)
            if not ker:
                continue
            src_index = {t: i for i, t in enumerate(src_basis)}
            span = SpanTracker(len(src_basis), p)
            for gidx, gt in enumerate(new_twists):
                if d - gt < 1:
                    continue
                for m in amb.monomials_of_degree(d - gt):
                    vec = [0] * len(src_basis)
                    for key, c in _col_image(
                        dense, {0: new_entries[gidx]}, 0, m
                    ).items():
                        vec[src_index[key]] = c
                    span.add(vec)
            for kv in ker:
                if span.add(list(kv)):
                    gidx = len(new_twists)
                    new_twists.append(d)
                    merged: dict[int, dict] = {}
                    for pos, c in enumerate(kv):
                        if c:
                            comp, m = src_basis[pos]
                            merged.setdefault(comp, {})[m] = c
                    new_entries[gidx] = [(cc, pl) for cc, pl in merged.items()]
        twists_levels.append(tuple(new_twists))
        entries_levels.append(new_entries)
    return twists_levels, entries_levels


def tor_dimensions(ring, M_twists, M_rels, N_twists, N_rels, imax: int, bound: int):
    """dim_k Tor_i(M, N)_d for 0 <= i <= imax and 0 <= d <= bound.

    Module data: generator twists plus relation columns, where a column is a
    list (over generators) of polynomial term dicts.  Homology of the tensored
    resolution is computed one internal degree at a time with plain ranks.
    """
    dense = DenseRing(ring)
    p = dense.p
    levels, mats = _resolution_levels(dense, M_twists, M_rels, imax, bound)

    # graded pieces of N: free basis modulo the relation row space
    n_cache: dict[int, tuple] = {}

    def n_piece(d: int):
        if d not in n_cache:
            basis = dense.free_basis(N_twists, d)
            index = {t: i for i, t in enumerate(basis)}
            rows = []
            for col in N_rels:
                cdeg = None
                for i, poly in enumerate(col):
                    if poly:
                        cdeg = N_twists[i] + dense.amb.mono_deg(next(iter(poly)))
                        break
                if cdeg is None or cdeg > d:
                    continue
                for m in dense.amb.monomials_of_degree(d - cdeg):
                    row = [0] * len(basis)
                    for i, poly in enumerate(col):
                        for pm, c in poly.items():
                            for rm, rc in dense.reduce_mono(
                                dense.amb.mono_mul(m, pm)
                            ).items():
                                key = (i, rm)
                                row[index[key]] = (row[index[key]] + c * rc) % p
                    rows.append(row)
            red, pivots = rref(rows, p)
            keep = [i for i in range(len(basis)) if i not in set(pivots)]
            n_cache[d] = (basis, index, red, keep)
        return n_cache[d]

    def n_reduce(d: int, coords: dict) -> dict:
        """Coordinates on the keep-basis of N_d from raw free-module coords."""
        basis, index, red, keep = n_piece(d)
        vec = [0] * len(basis)
        for t, c in coords.items():
            vec[index[t]] = (vec[index[t]] + c) % p
        for row in red:
            piv = next(i for i, c in enumerate(row) if c)
            if vec[piv]:
                c = vec[piv]
                vec = [(a - c * b) % p for a, b in zip(vec, row)]
        return {i: vec[i] for i in keep if vec[i]}

    # N_d can be nonzero down to the smallest generator twist
    n_floor = min(N_twists) if N_twists else 0

    def tensor_basis(ftwists, d: int):
        """Basis of (F ⊗ N)_d indexed as (free component, keep position)."""
        out = []
        for a, t in enumerate(ftwists):
            if d - t < n_floor:
                continue
            _, _, _, keep = n_piece(d - t)
            for kk in keep:
                out.append((a, kk))
        return out

    def diff_rank(step: int, d: int) -> int:
        """Rank of d_step ⊗ 1_N in internal degree d."""
        src_t = levels[step]
        tgt_t = levels[step - 1]
        src_basis = tensor_basis(src_t, d)
        if not src_basis:
            return 0
        tgt_basis = tensor_basis(tgt_t, d)
        tgt_pos = {t: i for i, t in enumerate(tgt_basis)}
        rows = []
        for sa, spos in src_basis:
            nb, _, _, _ = n_piece(d - src_t[sa])
            comp, m = nb[spos]
            out = [0] * len(tgt_basis)
            for ta, poly in mats[step - 1].get(sa, []):
                coords: dict = {}
                for pm, c in poly.items():
                    for rm, rc in dense.reduce_mono(dense.amb.mono_mul(m, pm)).items():
                        key = (comp, rm)
                        coords[key] = (coords.get(key, 0) + c * rc) % p
                for kk, c in n_reduce(d - tgt_t[ta], coords).items():
                    j = tgt_pos[(ta, kk)]
                    out[j] = (out[j] + c) % p
            rows.append(out)
        return rank(rows, p)

    result = []
    for i in range(imax + 1):
        row = []
        for d in range(bound + 1):
            dim_i = len(tensor_basis(levels[i], d))
            if dim_i == 0:
                row.append(0)
                continue
            rank_in = diff_rank(i, d) if i > 0 else 0
            rank_out = diff_rank(i + 1, d) if levels[i + 1] else 0
            row.append(dim_i - rank_in - rank_out)
        result.append(row)
    return result


def module_entries(M) -> tuple[tuple, list]:
    """Convert an FPModule presentation to the oracle's raw column format."""
    cols = []
    for col in M.rels:
        entries = [dict() for _ in M.twists]
        for (comp, m), c in col.items():
            entries[comp][m] = c
        cols.append(entries)
    return M.twists, cols


def oracle_tor_dimensions(M, N, imax: int, bound: int):
    mt, mc = module_entries(M)
    nt, nc = module_entries(N)
    return tor_dimensions(M.ring, mt, mc, nt, nc, imax, bound)
