"""JSON documents for every object the CLI reads or writes.

Each document carries a ``kind`` tag. Quasigroups, Hopf structures and
bundles delegate to their own ``to_json``/``from_json``; pairs, algebroids
and crossed modules are assembled here.
"""

import json

from . import hopf as hp
from .algebroid import CentralHopfAlgebroidData
from .bundle import CoherentHopf2Bundle
from .errors import InvalidInput
from .linear import LinearMap, tensor_space
from .quasigroup import FiniteQuasigroup
from .twogroup import CrossedModule

KINDS = ("quasigroup", "crossed-module", "hopf", "pair", "algebroid", "hopf2")


def dump_quasigroup(Q):
    return {"kind": "quasigroup", **Q.to_json()}


def dump_hopf(A):
    return {"kind": "hopf", "name": A.name, **A.to_json()}


def dump_pair(P):
    return {"kind": "pair", "A": dump_hopf(P.A), "B": dump_hopf(P.B), "phi": P.phi.to_json()}


def dump_algebroid(D):
    return {"kind": "algebroid", "H": dump_hopf(D.H), "B": dump_hopf(D.B),
            "s": D.s.to_json(), "t": D.t.to_json(), "delta": D.delta.to_json(),
            "counit": D.counit.to_json(), "antipode": D.antipode.to_json()}


def dump_crossed_module(X):
    return {"kind": "crossed-module", "M": X.M.to_json(), "N": X.N.to_json(),
            "phi": X.phi.tolist(), "gamma": X.gamma.tolist()}


def dump_bundle(b):
    return b.to_json()


def _hopf(data, name=None):
    return hp.HopfStructure.from_json(data, name=name or data.get("name"))


def load_pair(data):
    A, B = _hopf(data["A"]), _hopf(data["B"])
    return hp.CoassociativePairData(A, B, LinearMap.from_json(data["phi"], B.space, A.space))


def load_algebroid(data):
    H, B = _hopf(data["H"]), _hopf(data["B"])
    V, VB = H.space, B.space
    return CentralHopfAlgebroidData(
        H, B,
        LinearMap.from_json(data["s"], VB, V),
        LinearMap.from_json(data["t"], VB, V),
        LinearMap.from_json(data["delta"], V, tensor_space(V, V)),
        LinearMap.from_json(data["counit"], V, VB),
        LinearMap.from_json(data["antipode"], V, V))


def load_crossed_module(data):
    return CrossedModule(FiniteQuasigroup.from_json(data["M"]),
                         FiniteQuasigroup.from_json(data["N"]),
                         data["phi"], data["gamma"])


_LOADERS = {
    "quasigroup": FiniteQuasigroup.from_json,
    "crossed-module": load_crossed_module,
    "hopf": _hopf,
    "pair": load_pair,
    "algebroid": load_algebroid,
    "hopf2": CoherentHopf2Bundle.from_json,
}


def load(data, accept=None):
    """Rebuild an object from a parsed document.

    ``accept`` lists the kinds the caller can handle; an untagged document
    is read as the first of them.
    """
    if not isinstance(data, dict):
        raise InvalidInput("expected a JSON object at top level")
    accept = tuple(accept or KINDS)
    kind = data.get("kind", accept[0])
    if kind not in accept:
        raise InvalidInput(f"expected one of {', '.join(accept)}, got {kind!r}")
    try:
        return kind, _LOADERS[kind](data)
    except InvalidInput:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        raise InvalidInput(f"malformed {kind} document: {exc}") from exc


def read(path, accept=None):
    """Parse a file; OSError propagates, bad content raises InvalidInput."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc
    return load(data, accept)
