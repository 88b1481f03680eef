"""Complete-intersection quotients R = Q/(f_1..f_c) of a graded polynomial ring.

The local theory of the underlying mathematics is modeled by standard-graded
(or positively weighted) quotients, with the irrelevant ideal playing the
maximal ideal.  A CIRing validates its relations as a regular sequence by
checking that the dimension drops by one at every prefix.
"""

from __future__ import annotations

import json

from . import groebner as gb
from .groebner import MINUS_INF, FreeModule, HilbertData, buchberger, vec_from_poly
from .polyalg import InvalidInput, Mono, Polynomial, PolyRing


class NotRegularSequence(ValueError):
    pass


class InhomogeneousRelation(ValueError):
    pass


class CIRing:
    """Q/(f_1..f_c) with a certified regular sequence of homogeneous relations."""

    def __init__(
        self,
        ambient: PolyRing,
        relations: list[Polynomial],
        min_primes: list[list[Polynomial]] | None = None,
    ):
        self.ambient = ambient
        self.relations = tuple(relations)
        self.min_primes = (
            tuple(tuple(ps) for ps in min_primes) if min_primes is not None else None
        )
        for f in self.relations:
            if f.ring != ambient:
                raise InvalidInput("relation from a different ambient ring")
            if f.is_zero() or not f.is_homogeneous():
                raise InhomogeneousRelation(f"relation {f} must be homogeneous and nonzero")
            if f.degree() == 0:
                raise InvalidInput("relation must have positive degree")
        self._caches: dict = {}
        self._validate()

    # -- validation ----------------------------------------------------------

    def _validate(self):
        n = self.ambient.n
        for j in range(1, len(self.relations) + 1):
            prefix = self.relations[:j]
            d = _ideal_dimension(self.ambient, list(prefix))
            if d != n - j:
                raise NotRegularSequence(
                    f"dimension is {d} after {j} relation(s); expected {n - j}"
                )
        self.dim = n - len(self.relations)
        # nu(m) drops by the number of independent linear relations
        lin = [f for f in self.relations if f.degree() == 1]
        lin_rank = 0
        if lin:
            from .linalg import rank

            rows = []
            for f in lin:
                row = [0] * n
                for m, c in f.terms.items():
                    row[list(m).index(1)] = c
                rows.append(row)
            lin_rank = rank(rows, self.ambient.p)
        self.codim = (n - lin_rank) - self.dim
        self.rel_codim = len(self.relations)
        self.is_hypersurface = self.rel_codim <= 1
        if self.min_primes is not None:
            self._validate_min_primes()

    def _validate_min_primes(self):
        gbI = self.ideal_gb()
        some_max_dim = False
        for prime in self.min_primes:
            for f in self.relations:
                if gb.normal_form(
                    self._rank1(), vec_from_poly(f.terms), self._prime_gb(prime)
                ):
                    raise InvalidInput(
                        "declared minimal prime does not contain the relation ideal"
                    )
            d = _ideal_dimension(self.ambient, list(prime) + list(self.relations))
            if d == self.dim:
                some_max_dim = True
        if self.min_primes and not some_max_dim:
            raise InvalidInput("no declared minimal prime has full dimension")
        del gbI

    # -- cached Groebner data --------------------------------------------------

    def _rank1(self) -> FreeModule:
        return FreeModule(self.ambient, (0,))

    def ideal_gb(self) -> list[gb.Vec]:
        """Reduced GB of the relation ideal, as rank-1 vectors."""
        if "ideal_gb" not in self._caches:
            F = self._rank1()
            self._caches["ideal_gb"] = buchberger(
                F, [vec_from_poly(f.terms) for f in self.relations]
            )
        return self._caches["ideal_gb"]

    def _prime_gb(self, prime) -> list[gb.Vec]:
        key = ("prime_gb", tuple(hash(f) for f in prime))
        if key not in self._caches:
            F = self._rank1()
            gens = [vec_from_poly(f.terms) for f in list(prime) + list(self.relations)]
            self._caches[key] = buchberger(F, gens)
        return self._caches[key]

    def lifted_ideal_vectors(self, F: FreeModule) -> list[gb.Vec]:
        """Columns f_j * e_i presenting I*F, used to lift R-module algebra to Q."""
        out = []
        for comp in range(F.rank):
            for f in self.relations:
                out.append({(comp, m): c for m, c in f.terms.items()})
        return out

    def nf_mod_ideal(self, F: FreeModule, v: gb.Vec) -> gb.Vec:
        """Componentwise normal form modulo the relation ideal."""
        gbI = self.ideal_gb()
        if not gbI:
            return dict(v)
        p = self.ambient.p
        out: gb.Vec = {}
        F1 = self._rank1()
        for comp in range(F.rank):
            poly = gb.vec_component(v, comp)
            if not poly:
                continue
            r = gb.normal_form(F1, vec_from_poly(poly), gbI)
            for (_, m), c in r.items():
                out[(comp, m)] = c % p
        return out

    def std_monomials(self, d: int) -> list[Mono]:
        """Monomials of degree d surviving modulo the relation ideal leads."""
        key = ("std", d)
        if key not in self._caches:
            leads = [self._rank1().lead(g)[0][1] for g in self.ideal_gb()]
            self._caches[key] = [
                m
                for m in self.ambient.monomials_of_degree(d)
                if not any(self.ambient.mono_divides(lm, m) for lm in leads)
            ]
        return self._caches[key]

    def module_gb(self, F: FreeModule, cols: list[gb.Vec]) -> list[gb.Vec]:
        """Reduced GB over Q of (columns + I*F), i.e. of the R-span lifted to Q."""
        key = ("mgb", F.twists, tuple(gb.vec_key(c) for c in cols))
        if key not in self._caches:
            gens = [dict(c) for c in cols] + self.lifted_ideal_vectors(F)
            self._caches[key] = buchberger(F, gens)
        return self._caches[key]

    def ext_gb(self, F: FreeModule, cols: list[gb.Vec]) -> gb.ExtGB:
        key = ("ext", F.twists, tuple(gb.vec_key(c) for c in cols))
        if key not in self._caches:
            self._caches[key] = gb.ExtGB(F, cols)
        return self._caches[key]

    def hilbert(self, F: FreeModule, cols: list[gb.Vec]) -> HilbertData:
        basis = self.module_gb(F, cols)
        per_comp: dict[int, list[Mono]] = {c: [] for c in range(F.rank)}
        for g2 in basis:
            (c, m), _ = F.lead(g2)
            per_comp[c].append(m)
        return HilbertData(
            self.ambient, [(F.twists[c], per_comp[c]) for c in range(F.rank)]
        )

    # -- towers ----------------------------------------------------------------

    def tower(self) -> list["CIRing"]:
        """Hypersurface tower Q, Q/(f_1), ..., R (config order of relations)."""
        if "tower" not in self._caches:
            stages = []
            for j in range(len(self.relations) + 1):
                mp = self.min_primes if j == len(self.relations) else None
                stages.append(CIRing(self.ambient, list(self.relations[:j]), mp))
            self._caches["tower"] = stages
        return self._caches["tower"]

    # -- identity ---------------------------------------------------------------

    def key(self) -> tuple:
        return (
            self.ambient.p,
            self.ambient.names,
            self.ambient.weights,
            tuple(tuple(sorted(f.terms.items())) for f in self.relations),
        )

    def __eq__(self, other):
        return isinstance(other, CIRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rels = ", ".join(f.text() for f in self.relations)
        return f"CIRing(F{self.ambient.p}[{','.join(self.ambient.names)}]/({rels}))"

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "p": self.ambient.p,
            "vars": [
                {"name": nm, "deg": w}
                for nm, w in zip(self.ambient.names, self.ambient.weights)
            ],
            "relations": [f.text(pretty=False) for f in self.relations],
        }
        if self.min_primes is not None:
            out["min_primes"] = [
                [f.text(pretty=False) for f in ps] for ps in self.min_primes
            ]
        return out


def _ideal_dimension(ring: PolyRing, gens: list[Polynomial]) -> int | float:
    F = FreeModule(ring, (0,))
    basis = buchberger(F, [vec_from_poly(f.terms) for f in gens])
    leads = [F.lead(g)[0][1] for g in basis]
    return gb.mono_ideal_dimension(ring, leads)


def make_ci_ring(
    p: int,
    variables: list[tuple[str, int]],
    relations: list[str],
    min_primes: list[list[str]] | None = None,
) -> CIRing:
    ambient = PolyRing(p, [nm for nm, _ in variables], [w for _, w in variables])
    rels = [ambient.parse(s) for s in relations]
    primes = None
    if min_primes is not None:
        primes = [[ambient.parse(s) for s in ps] for ps in min_primes]
    return CIRing(ambient, rels, primes)


def ring_from_json(data: dict) -> CIRing:
    try:
        variables = [(v["name"], v.get("deg", 1)) for v in data["vars"]]
        return make_ci_ring(
            data["p"], variables, data["relations"], data.get("min_primes")
        )
    except KeyError as e:
        raise InvalidInput(f"ring file missing field {e.args[0]!r}") from e


def load_ring(path: str) -> CIRing:
    with open(path) as fh:
        return ring_from_json(json.load(fh))
