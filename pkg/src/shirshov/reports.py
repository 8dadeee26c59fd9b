"""JSON-friendly encodings of the result types, and decoders back into them.

Words are written in their text form (``"abca"`` or ``"[0,1,27]"``) next to the
alphabet size, so every report can be re-read and its witness re-validated.
"""

from __future__ import annotations

from shirshov.bounds import BoundValue
from shirshov.chains import BSetTrace, ChainCover
from shirshov.enumeration import SearchCheckpoint, SearchResult
from shirshov.errors import UsageError
from shirshov.height import HeightDecomposition, RemovalStep, RemovalTrace
from shirshov.process import ProcessSequence
from shirshov.witnesses import (
    CancellabilityVerdict,
    OrdinaryDivision,
    PowerWitness,
    TailDivision,
    VerdictKind,
)
from shirshov.words import Word

SCHEMA = 1


def word_out(w: Word) -> str:
    return w.encode()


def word_in(text: str, size: int) -> Word:
    return Word.parse(text, size)


def power_out(p: PowerWitness | None):
    if p is None:
        return None
    return {"period": word_out(p.period), "start": p.start, "exponent": p.exponent}


def power_in(data, size: int) -> PowerWitness | None:
    if data is None:
        return None
    return PowerWitness(word_in(data["period"], size), data["start"], data["exponent"])


def division_out(div: OrdinaryDivision, host: Word) -> dict:
    return {
        "boundaries": list(div.boundaries),
        "prefix": word_out(div.prefix(host)),
        "blocks": [word_out(b) for b in div.blocks(host)],
    }


def division_in(data) -> OrdinaryDivision:
    return OrdinaryDivision(tuple(data["boundaries"]))


def tail_division_out(div: TailDivision, host: Word) -> dict:
    return {"positions": list(div.positions), "tails": [word_out(host.tail(p)) for p in div.positions]}


def tail_division_in(data) -> TailDivision:
    return TailDivision(tuple(data["positions"]))


def verdict_out(v: CancellabilityVerdict, host: Word) -> dict:
    out = {"verdict": v.kind.value}
    if v.division is not None:
        out["division"] = division_out(v.division, host)
    if v.power is not None:
        out["power"] = power_out(v.power)
    return out


def verdict_in(data, size: int) -> CancellabilityVerdict:
    kind = VerdictKind(data["verdict"])
    division = division_in(data["division"]) if "division" in data else None
    return CancellabilityVerdict(kind, division, power_in(data.get("power"), size))


def cover_out(c: ChainCover) -> dict:
    return {"count": c.count, "assignment": list(c.assignment), "chains": [list(x) for x in c.chains]}


def cover_in(data) -> ChainCover:
    return ChainCover(tuple(data["assignment"]), tuple(tuple(x) for x in data["chains"]))


def trace_out(t: BSetTrace) -> dict:
    return {
        "n": t.n,
        "d": t.d,
        "p": t.p,
        "width": t.width,
        "overflow": t.overflow,
        "colours": list(t.colours),
        "entries": [[word_out(x) for x in row] for row in t.entries],
    }


def trace_in(data, host: Word) -> BSetTrace:
    size = host.alphabet.size
    return BSetTrace(
        host, data["n"], data["d"], data["p"], tuple(data["colours"]),
        tuple(tuple(word_in(x, size) for x in row) for row in data["entries"]),
        data["overflow"],
    )


def process_out(seq: ProcessSequence) -> dict:
    return {"p": seq.p, "k": seq.k, "positions": list(seq.positions), "words": seq.words()}


def process_in(data) -> ProcessSequence:
    return ProcessSequence(tuple(data["positions"]), data["p"], data["k"])


def bound_out(b: BoundValue):
    return b.to_json()


def bound_in(data) -> BoundValue:
    return BoundValue.from_json(data)


def height_out(h: HeightDecomposition) -> dict:
    return {
        "n": h.n,
        "height": h.height,
        "essential": h.essential,
        "factors": [{"base": word_out(u), "exponent": k} for u, k in h.factors],
    }


def height_in(data, host: Word) -> HeightDecomposition:
    size = host.alphabet.size
    return HeightDecomposition(
        host, data["n"], tuple((word_in(f["base"], size), f["exponent"]) for f in data["factors"])
    )


def removal_out(tr: RemovalTrace) -> dict:
    return {
        "n": tr.n,
        "reason": tr.reason,
        "steps": [
            {
                "index": s.index,
                "period": word_out(s.period),
                "exponent": s.exponent,
                "r1": s.r1,
                "r2": s.r2,
                "positions": list(s.positions),
                "pieces": s.pieces,
                "remainder": word_out(s.remainder),
            }
            for s in tr.steps
        ],
        "tedious": {str(k): v for k, v in sorted(tr.tedious.items())},
        "t": tr.t,
        "s_counts": {str(k): v for k, v in sorted(tr.s_counts().items())},
        "piece_bound_holds": tr.piece_bound_holds(),
        "weighted_bound_holds": tr.weighted_bound_holds(),
        "periodic_subwords_disjoint": tr.periodic_subwords_disjoint(),
    }


def removal_in(data, host: Word) -> RemovalTrace:
    size = host.alphabet.size
    steps = tuple(
        RemovalStep(
            s["index"], word_in(s["period"], size), s["exponent"], s["r1"], s["r2"],
            tuple(s["positions"]), s["pieces"], word_in(s["remainder"], size),
        )
        for s in data["steps"]
    )
    tedious = {int(k): v for k, v in data["tedious"].items()}
    return RemovalTrace(host, data["n"], steps, tedious, data["reason"])


def checkpoint_out(c: SearchCheckpoint | None):
    if c is None:
        return None
    return {
        "path": c.path,
        "next_letter": c.next_letter,
        "best": c.best,
        "nodes": c.nodes,
        "open_frontier": c.open_frontier,
    }


def checkpoint_in(data) -> SearchCheckpoint | None:
    if data is None:
        return None
    try:
        return SearchCheckpoint(
            list(data["path"]), list(data["next_letter"]), list(data["best"]),
            int(data["nodes"]), bool(data["open_frontier"]),
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed checkpoint: {exc}") from None


def search_out(r: SearchResult) -> dict:
    return {
        "max_length": r.max_length,
        "witness": word_out(r.witness),
        "exhausted": r.exhausted,
        "nodes_explored": r.nodes_explored,
        "checkpoint": checkpoint_out(r.checkpoint),
    }


def search_in(data, size: int) -> SearchResult:
    return SearchResult(
        data["max_length"], word_in(data["witness"], size), data["exhausted"],
        data["nodes_explored"], checkpoint_in(data.get("checkpoint")),
    )
