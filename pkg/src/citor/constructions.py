"""Pushforward and quasi-lifting, with validated short exact sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import FreeModule, Vec, unit_vec, vec_component
from .homres import depth, torsion_parts
from .modules import (
    FPModule,
    ModuleMap,
    _dual_presentation,
    fp_module,
    free_module,
    min_gens,
    rel_syzygies,
    zero_module,
)
from .polyalg import InvalidInput
from .rings import CIRing


class NotTorsionFree(ValueError):
    pass


class ChainBlocked(ValueError):
    def __init__(self, stage: int, chain):
        super().__init__(f"pushforward chain blocked at stage {stage}: module has torsion")
        self.stage = stage
        self.chain = chain


@dataclass
class Pushforward:
    M: FPModule
    nu: int
    embedding: ModuleMap  # M -> R^(nu)
    M1: FPModule
    certificate: dict = field(default_factory=dict)


@dataclass
class QuasiLifting:
    ring: CIRing  # R = S/(f)
    stage: CIRing  # S
    dropped_relation: str
    M1: FPModule  # over R
    nu: int
    E: FPModule  # over S
    certificate: dict = field(default_factory=dict)


def _embedding_data(M: FPModule):
    """Minimal generators U of M* and the evaluation columns of M -> R^(nu)."""
    ring = M.ring
    P = M.minimalize()
    vtw, _, U = _dual_presentation(ring, P.twists, list(P.rels))
    nu = len(U)
    # component j of the embedding picks out u_j evaluated at the generators
    target = free_module(ring, tuple(-t for t in vtw))
    cols: list[Vec] = []
    for i in range(len(P.twists)):
        v: Vec = {}
        for j, u in enumerate(U):
            for (c, m), a in u.items():
                if c == i:
                    v[(j, m)] = a
        cols.append(v)
    return P, nu, target, cols


def pushforward(M: FPModule) -> Pushforward:
    """0 -> M -> R^(nu) -> M1 -> 0 from a minimal surjection onto M*."""
    ring = M.ring
    tM, _, _ = torsion_parts(M)
    if not tM.is_zero():
        raise NotTorsionFree("pushforward requires a torsion-free module")
    P, nu, target, cols = _embedding_data(M)
    emb = ModuleMap(P, target, cols)
    # injectivity: every preimage generator of ker(emb) is already a relation
    injective = all(P.contains_rel(v) for v in emb.kernel_cols())
    M1 = fp_module(ring, target.twists, list(cols)).minimalize()
    cert = {
        "injective": injective,
        "nu": nu,
        "cokernel_min_gens": len(M1.twists),
    }
    return Pushforward(P, nu, emb, M1, cert)


def pushforward_chain(M: FPModule, n: int) -> list[FPModule]:
    """M_0 = M, M_{i+1} = pushforward(M_i); stops with ChainBlocked on torsion."""
    chain = [M.minimalize()]
    stages: list[Pushforward] = []
    for stage in range(n):
        cur = chain[-1]
        if cur.is_zero():
            chain.append(zero_module(M.ring))
            continue
        try:
            pf = pushforward(cur)
        except NotTorsionFree as e:
            raise ChainBlocked(stage, chain) from e
        stages.append(pf)
        chain.append(pf.M1)
    return chain


def restrict_to_stage(M: FPModule, stage: CIRing) -> FPModule:
    """An R-module viewed over the previous hypersurface stage S (R = S/(f))."""
    ring = M.ring
    if stage.ambient is not ring.ambient and stage.ambient != ring.ambient:
        raise InvalidInput("stage must share the ambient polynomial ring")
    extra = [f for f in ring.relations if f not in stage.relations]
    F = FreeModule(ring.ambient, M.twists)
    rels = [dict(c) for c in M.rels]
    for f in extra:
        for i in range(len(M.twists)):
            rels.append({(i, m): c for m, c in f.terms.items()})
    return fp_module(stage, M.twists, rels)


def quasi_lifting(M: FPModule) -> QuasiLifting:
    """Kernel E of S^(nu) -> M1 where R = S/(f) is the top of the tower.

    E is generated over S by the embedding columns together with f times the
    free basis; as a second syzygy over S it is automatically torsion-free.
    """
    ring = M.ring
    if ring.rel_codim < 1:
        raise InvalidInput("quasi-lifting needs at least one relation to drop")
    tower = ring.tower()
    S = tower[-2]
    f = ring.relations[-1]
    tM, _, _ = torsion_parts(M)
    if not tM.is_zero():
        raise NotTorsionFree("quasi-lifting requires a torsion-free module")
    P, nu, target, cols = _embedding_data(M)
    M1 = fp_module(ring, target.twists, list(cols)).minimalize()
    # submodule of S^(nu) generated by the embedding image and f*S^(nu)
    SF = FreeModule(S.ambient, target.twists)
    gens: list[Vec] = [dict(c) for c in cols]
    for j in range(nu):
        gens.append({(j, m): c for m, c in f.terms.items()})
    kept = min_gens(S, SF, gens)
    if not kept:
        E = zero_module(S)
    else:
        etwists = tuple(SF.degree(v) for v in kept)
        rels = rel_syzygies(S, SF, kept)
        E = fp_module(S, etwists, rels).minimalize()
    cert = {
        "nu": nu,
        "dropped_relation": f.text(pretty=False),
        "kernel_gens": len(kept),
    }
    return QuasiLifting(ring, S, f.text(pretty=False), M1, nu, E, cert)
