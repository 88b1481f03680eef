"""HTTP service exposing the engine.  The CLI talks to this app in-process
by default, or to a remote instance over HTTP."""

from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .constructions import ChainBlocked, NotTorsionFree, pushforward, pushforward_chain, quasi_lifting
from .groebner import MINUS_INF
from .homres import (
    betti_table,
    depth,
    ext,
    free_locus_height,
    pd,
    rank_of,
    serre_check,
    tor_profile,
)
from .modules import FPModule, fp_module, module_from_json
from .pairings import (
    FitFailed,
    NotHypersurface,
    NotStabilized,
    TailNotFiniteLength,
    default_bound,
    eta,
    theta,
)
from .polyalg import InvalidInput
from .rings import CIRing, InhomogeneousRelation, NotRegularSequence, ring_from_json
from .theorems import CHECKERS

app = FastAPI(title="citor", version="1.0")


class VarSpec(BaseModel):
    name: str
    deg: int = 1


class RingSpec(BaseModel):
    p: int = 101
    vars: list[VarSpec]
    relations: list[str]
    min_primes: Optional[list[list[str]]] = None


class ModuleSpec(BaseModel):
    gens: list[int]
    relations: list[list[str]]


class PairRequest(BaseModel):
    ring: RingSpec
    M: ModuleSpec
    N: Optional[ModuleSpec] = None
    bound: Optional[int] = None
    e: Optional[int] = None
    n: Optional[int] = None
    c: Optional[int] = None
    i: Optional[int] = None
    theorem: Optional[str] = None


_ring_cache: dict[str, CIRing] = {}


def _ring(spec: RingSpec) -> CIRing:
    key = spec.model_dump_json()
    if key not in _ring_cache:
        try:
            _ring_cache[key] = ring_from_json(
                {
                    "p": spec.p,
                    "vars": [{"name": v.name, "deg": v.deg} for v in spec.vars],
                    "relations": spec.relations,
                    "min_primes": spec.min_primes,
                }
            )
        except (InvalidInput, NotRegularSequence, InhomogeneousRelation) as e:
            raise HTTPException(status_code=400, detail=str(e)) from e
    return _ring_cache[key]


def _module(ring: CIRing, spec: ModuleSpec) -> FPModule:
    try:
        return module_from_json(ring, {"gens": spec.gens, "relations": spec.relations})
    except InvalidInput as e:
        raise HTTPException(status_code=400, detail=str(e)) from e


def _bound(ring: CIRing, req: PairRequest) -> int:
    return req.bound if req.bound is not None else default_bound(ring)


def _dim_json(d):
    return None if d == MINUS_INF else int(d)


def _module_json(M: FPModule) -> dict:
    P = M.minimalize()
    return {
        "gens": list(P.twists),
        "relations": P.to_json()["relations"],
        "dim": _dim_json(P.dim),
        "length": P.length(),
    }


@app.post("/betti")
def betti_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    B = _bound(ring, req)
    table = betti_table(M, B)
    pdim = pd(M)
    return {
        "bound": B,
        "betti": [sum(row.values()) for row in table],
        "graded": [{str(k): v for k, v in sorted(row.items())} for row in table],
        "pd": "inf" if pdim == float("inf") else pdim,
    }


@app.post("/tor")
def tor_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M, N = _module(ring, req.M), _module(ring, req.N)
    B = _bound(ring, req)
    return tor_profile(M, N, B).to_json()


@app.post("/ext")
def ext_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M, N = _module(ring, req.M), _module(ring, req.N)
    B = _bound(ring, req)
    out = []
    for i in range(B + 1):
        E = ext(M, N, i)
        out.append({"i": i, "dim": _dim_json(E.dim), "length": E.length(), "zero": E.is_zero()})
    return {"bound": B, "ext": out}


@app.post("/depth")
def depth_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    d = depth(M)
    pdim = pd(M)
    return {
        "depth": "inf" if d == float("inf") else d,
        "dim": _dim_json(M.dim),
        "ring_dim": ring.dim,
        "pd": "inf" if pdim == float("inf") else pdim,
        "mcm": (not M.is_zero()) and d == ring.dim,
    }


@app.post("/serre")
def serre_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    n = req.n if req.n is not None else 1
    return serre_check(M, n)


@app.post("/theta")
def theta_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M, N = _module(ring, req.M), _module(ring, req.N)
    try:
        return theta(M, N, req.bound).to_json()
    except (NotHypersurface, TailNotFiniteLength, NotStabilized) as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}") from e


@app.post("/eta")
def eta_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M, N = _module(ring, req.M), _module(ring, req.N)
    e = req.e if req.e is not None else max(ring.rel_codim, 1)
    try:
        return {"e": e, **eta(M, N, e, req.bound).to_json()}
    except (TailNotFiniteLength, NotStabilized, FitFailed) as exc:
        raise HTTPException(status_code=422, detail=f"{type(exc).__name__}: {exc}") from exc


@app.post("/pushforward")
def pushforward_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    try:
        pf = pushforward(M)
    except NotTorsionFree as e:
        raise HTTPException(status_code=422, detail=f"NotTorsionFree: {e}") from e
    return {
        "nu": pf.nu,
        "embedding": pf.embedding.target.to_json() | {"columns": _cols_json(ring, pf.embedding)},
        "M1": _module_json(pf.M1),
        "certificate": pf.certificate,
    }


def _cols_json(ring: CIRing, mp) -> list[list[str]]:
    amb = ring.ambient
    from .groebner import vec_component

    out = []
    for col in mp.cols:
        out.append(
            [
                amb.from_terms(vec_component(col, i)).text(pretty=False)
                for i in range(len(mp.target.twists))
            ]
        )
    return out


@app.post("/quasilift")
def quasilift_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    try:
        ql = quasi_lifting(M)
    except (NotTorsionFree, InvalidInput) as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}") from e
    return {
        "nu": ql.nu,
        "dropped_relation": ql.dropped_relation,
        "stage_relations": [f.text(pretty=False) for f in ql.stage.relations],
        "E": _module_json(ql.E),
        "M1": _module_json(ql.M1),
        "certificate": ql.certificate,
    }


@app.post("/check")
def check_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    if req.theorem not in CHECKERS:
        raise HTTPException(status_code=400, detail=f"unknown theorem id {req.theorem!r}")
    M = _module(ring, req.M)
    N = _module(ring, req.N) if req.N is not None else M
    B = _bound(ring, req)
    kwargs = {}
    if req.e is not None:
        kwargs["e"] = req.e
    if req.c is not None:
        kwargs["c"] = req.c
    if req.n is not None:
        kwargs["n"] = req.n
    verdict = CHECKERS[req.theorem](M, N, B, **kwargs)
    return verdict.to_json()


class RandomCheckRequest(BaseModel):
    ring: RingSpec
    seed: int = 0
    count: int = 20
    bound: Optional[int] = None
    theorems: Optional[list[str]] = None


@app.post("/randomcheck")
def random_check_endpoint(req: RandomCheckRequest):
    """Seeded sweep: random small modules through every theorem checker.

    The theorems say a red alarm (all hypotheses hold, conclusion refuted)
    can never happen; this endpoint hunts for one.
    """
    import random as _random

    from .modules import random_module

    ring = _ring(req.ring)
    rng = _random.Random(req.seed)
    B = req.bound if req.bound is not None else 6
    names = req.theorems if req.theorems else sorted(CHECKERS)
    bad = [n for n in names if n not in CHECKERS]
    if bad:
        raise HTTPException(status_code=400, detail=f"unknown theorem ids {bad!r}")
    red = []
    statuses: dict[str, int] = {}
    for trial in range(req.count):
        M = random_module(ring, rng)
        N = random_module(ring, rng)
        for name in names:
            v = CHECKERS[name](M, N, B)
            statuses[v.conclusion["status"]] = statuses.get(v.conclusion["status"], 0) + 1
            if v.red_alarm:
                red.append(
                    {
                        "trial": trial,
                        "theorem": name,
                        "M": M.to_json(),
                        "N": N.to_json(),
                        "verdict": v.to_json(),
                    }
                )
    return {
        "seed": req.seed,
        "count": req.count,
        "bound": B,
        "theorems": names,
        "conclusion_counts": dict(sorted(statuses.items())),
        "red_alarms": red,
    }


@app.post("/chain")
def chain_endpoint(req: PairRequest):
    ring = _ring(req.ring)
    M = _module(ring, req.M)
    n = req.n if req.n is not None else 4
    try:
        chain = pushforward_chain(M, n)
    except ChainBlocked as e:
        raise HTTPException(status_code=422, detail=f"ChainBlocked: stage {e.stage}") from e
    return {"stages": [_module_json(Mi) for Mi in chain]}
