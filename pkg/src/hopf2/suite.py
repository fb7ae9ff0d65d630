"""The end-to-end verification suite behind ``hopf2 report-all``.

Each task is a top-level function of ``n`` so a process pool can run them;
results are plain dicts and are always reassembled in task order.
"""

import time
from concurrent.futures import ProcessPoolExecutor

from . import bundle as bd
from . import cayley
from . import hopf as hp
from . import quasigroup as qg
from . import twogroup as tg


def _gn(n):
    return cayley.build_Gn(cayley.cayley_dickson_cochain(n))


def nucleus_table(n):
    Q = _gn(n)
    got = qg.nucleus(Q)
    zero = cayley.bits(0, n)
    want = set(Q.elements) if n <= 2 else {f"e[a={zero},i=0]", f"e[a={zero},i=1]"}
    return got == want, {"size": len(got)}


def cocycle(n):
    return qg.cocycle_check(_gn(n)), {}


def coherent_two_group(n):
    T = tg.coherent_two_group_from_quasigroup(_gn(n))
    rep = tg.verification_report(T)
    ok = rep["pentagon"] and rep["naturality"] and rep["interchange"] and not rep["structure"]
    return ok, {"counts": rep["counts"]}


def coquasigroup_and_beta(n):
    B = hp.function_algebra(_gn(n))
    ok = hp.check_hopf_coquasigroup(B).ok
    beta = hp.coassociator_beta(B)
    trivial = beta == hp.trivial_coassociator(B)
    zero = cayley.bits(0, n)
    vanishing = all(not beta.col(x) for x in B.labels if not x.startswith(f"f[a={zero},"))
    return ok and trivial == (n <= 2) and vanishing, {"beta_trivial": trivial}


def coassociator_relation(n):
    B = hp.function_algebra(_gn(n))
    return hp.coassociator_report(B)["coassociator_relation"].passed, {}


def quasi_coassociative_pair(n):
    C, B, pi = bd.gn_projection(n)
    P = hp.CoassociativePairData(C, B, pi)
    pair_ok = hp.check_coassociative_pair(P).ok
    qc = hp.check_quasi_coassociative(P, require=False)
    return pair_ok and qc.ok, qc.checks


def coherent_bundle(n):
    b = bd.gn_bundle(n)
    rep = bd.full_report(b)
    strict = bd.check_strict(b)
    ok = rep.ok and bd.check_cocommutation(b) and strict == (n <= 2)
    return ok, {"dim": b.dim, "strict": strict, "failures": [c.name for c in rep.failures()]}


def duality(n):
    P = hp.canonical_pairing(_gn(n))
    return hp.beta_duality_witness(P) is None, {}


def psi_control(n):
    F = cayley.cayley_dickson_cochain(n)
    return (cayley.psi_matches_quasigroup_associator(F)
            and cayley.coboundary_3cocycle(F).is_cocycle()), {}


def perturbation(n, seed=0):
    results = bd.fuzz(bd.gn_bundle(n), count=20, seed=seed)
    missed = [r for r in results if not r["detected"]]
    return not missed, {"corruptions": len(results), "missed": missed}


def round_trip(_n):
    out = {}
    for name, G in (("Z_2", qg.cyclic_group(2)), ("Q_8", _gn(2))):
        ok, _ = tg.round_trip(tg.conjugation_crossed_module(G))
        out[name] = ok
    return all(out.values()), out


#: (label, function, fixed n values or None for every n up to n_max; 0 means n-free)
CRITERIA = [
    ("1 nucleus", nucleus_table, None),
    ("2 cocycle", cocycle, None),
    ("3 coherent 2-group", coherent_two_group, None),
    ("4 coquasigroup + beta", coquasigroup_and_beta, None),
    ("5 coassociator relation", coassociator_relation, None),
    ("6 quasi-coassociative pair", quasi_coassociative_pair, None),
    ("7 coherent Hopf 2-algebra", coherent_bundle, None),
    ("8 duality", duality, None),
    ("9 psi control", psi_control, None),
    ("10 perturbation", perturbation, (2,)),
    ("round-trip", round_trip, (0,)),
]


def _run(label, n, seed):
    fn = dict((c[0], c[1]) for c in CRITERIA)[label]
    t0 = time.perf_counter()
    try:
        if fn is perturbation:
            ok, detail = fn(n, seed)
        else:
            ok, detail = fn(n)
    except Exception as exc:  # reported as a failed cell, never swallowed silently
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"criterion": label, "n": n, "pass": bool(ok), "detail": detail,
            "timing": round((time.perf_counter() - t0) * 1000.0, 3)}


def tasks(n_max):
    out = []
    for label, _, only in CRITERIA:
        ns = only if only is not None else range(1, n_max + 1)
        out.extend((label, n) for n in ns if n <= n_max)
    return out


def run_all(n_max, jobs=1, seed=0):
    todo = tasks(n_max)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run, label, n, seed) for label, n in todo]
            return [f.result() for f in futures]
    return [_run(label, n, seed) for label, n in todo]


def matrix(results, n_max):
    """Rows are criteria, columns n = 1..n_max; the round-trip has its own column."""
    width = max(len(c[0]) for c in CRITERIA)
    cols = list(range(1, n_max + 1)) + [0]
    head = f"{'criterion':<{width}}  " + "  ".join(f"n={n}" if n else "once" for n in cols)
    lines = [head]
    by = {(r["criterion"], r["n"]): r for r in results}
    for label, _, _ in CRITERIA:
        cells = []
        for n in cols:
            r = by.get((label, n))
            cells.append("-" if r is None else ("pass" if r["pass"] else "FAIL"))
        lines.append(f"{label:<{width}}  " + "  ".join(f"{c:<4}" for c in cells))
    return "\n".join(lines)
