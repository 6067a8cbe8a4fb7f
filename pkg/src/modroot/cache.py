"""Flat-file result cache keyed by quiver hash, kind, parameters and tool version."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Callable

from filelock import FileLock

from . import __version__
from .quiver import ValuedQuiver

KINDS = ("roots", "fan", "domains")


def cache_dir_for(quiver_path: str | Path | None) -> Path:
    env = os.environ.get("MODROOT_CACHE")
    if env:
        return Path(env)
    base = Path(quiver_path).resolve().parent if quiver_path else Path.cwd()
    return base / ".modroot-cache"


class Cache:
    def __init__(self, directory: str | Path | None, enabled: bool = True):
        self.dir = Path(directory) if directory else None
        self.enabled = enabled and self.dir is not None
        self.hits = 0
        self.misses = 0

    def _path(self, q: ValuedQuiver, kind: str, params: dict) -> Path:
        if kind not in KINDS:
            raise ValueError(f"unknown cache kind {kind!r}")
        tag = hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:12]
        return self.dir / f"{q.canonical_hash()}-{kind}-{tag}-v{__version__}.json"

    def get_or_compute(self, q: ValuedQuiver, kind: str, params: dict,
                       compute: Callable[[], Any], encode: Callable[[Any], Any],
                       decode: Callable[[Any], Any]) -> Any:
        if not self.enabled:
            return compute()
        path = self._path(q, kind, params)
        self.dir.mkdir(parents=True, exist_ok=True)
        with FileLock(str(self.dir / ".lock")):
            if path.exists():
                try:
                    entry = json.loads(path.read_text())
                    if entry.get("version") == __version__ and entry.get("hash") == q.canonical_hash():
                        self.hits += 1
                        return decode(entry["payload"])
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    pass
            self.misses += 1
            value = compute()
            entry = {"hash": q.canonical_hash(), "kind": kind, "params": params,
                     "version": __version__, "payload": encode(value)}
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(entry, sort_keys=True))
            tmp.replace(path)
            return value


# serialization helpers

def encode_roots(rs) -> dict:
    return {"roots": [list(r) for r in rs.roots], "complete": rs.complete,
            "bound_used": list(rs.bound_used), "n_sequences": rs.n_sequences,
            "witnesses": [[list(k), [list(w) for w in v]] for k, v in sorted(rs.witnesses.items())]}


def decode_roots(d: dict):
    from .braid import RootSet

    return RootSet(tuple(tuple(r) for r in d["roots"]), d["complete"], tuple(d["bound_used"]),
                   d["n_sequences"], {tuple(k): tuple(tuple(w) for w in v) for k, v in d["witnesses"]})


def encode_domains(doms: dict) -> list:
    return [{"beta": list(b), "subroots": [list(s) for s in d.subroots],
             "perp": [list(e) for e in d.perp_simples], "provenance": d.provenance}
            for b, d in sorted(doms.items())]


def decode_domains(q: ValuedQuiver, data: list) -> dict:
    from .stability import make_domain

    return {tuple(x["beta"]): make_domain(q, x["beta"], x["subroots"], x["perp"], x["provenance"])
            for x in data}


def encode_fan(fan) -> dict:
    return {"complete": fan.complete, "cap": fan.cap,
            "states": [{"B": s.B, "C": s.C, "V": s.V, "word": s.word} for s in fan.states]}


def decode_fan(d: dict):
    from .cluster import ExchangeState, Fan

    t = lambda m: tuple(tuple(r) for r in m)
    return Fan(tuple(ExchangeState(t(s["B"]), t(s["C"]), t(s["V"]), tuple(s["word"]))
                     for s in d["states"]), d["complete"], d["cap"])


__all__ = ["Cache", "cache_dir_for", "encode_roots", "decode_roots", "encode_domains",
           "decode_domains", "encode_fan", "decode_fan", "KINDS"]
