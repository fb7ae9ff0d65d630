"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a check failed or a file could not be
read/written, 2 a size limit was hit, 3 the input did not parse.
"""

import argparse
import json
import sys

from . import bundle as bd
from . import cayley
from . import hopf as hp
from . import quasigroup as qg
from . import suite
from . import twogroup as tg
from . import wire
from .algebroid import check_algebroid
from .errors import DomainMismatch, Hopf2Error, InvalidInput, PreconditionFailed, SizeLimit

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_PARSE = 0, 1, 2, 3
GEN_KINDS = ("cayley", "quasigroup", "hopf", "hopf2", "pair", "algebroid", "two-group")
CHECK_KINDS = ("quasigroup", "two-group", "hopf", "pair", "algebroid", "hopf2")


# -- output ----------------------------------------------------------------

def _emit(args, payload, text=None):
    if args.json or text is None:
        out = json.dumps(payload, indent=2, sort_keys=False, default=str)
    else:
        out = text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _finish(args, ok, payload, text=None):
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def _cochain(args, n):
    if args.cochain:
        try:
            with open(args.cochain, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{args.cochain}: not valid JSON ({exc})") from exc
        F = cayley.Cochain2.from_json(data)
        if F.n != n:
            raise InvalidInput(f"cochain has n={F.n}, requested n={n}")
        return F
    return cayley.cayley_dickson_cochain(n)


# -- gen ---------------------------------------------------------------------

def build(kind, n, F=None):
    """The document ``gen kind n`` writes."""
    if kind == "quasigroup":
        if n < 1:
            raise InvalidInput("Z_n needs n >= 1")
        return wire.dump_quasigroup(qg.cyclic_group(n))
    F = F or cayley.cayley_dickson_cochain(n)
    if kind == "cayley":
        return wire.dump_quasigroup(cayley.build_Gn(F))
    if kind == "hopf":
        return wire.dump_hopf(hp.function_algebra(cayley.build_Gn(F), name=f"k[G_{n}]"))
    if kind == "two-group":
        G = cayley.build_Gn(F)
        if not qg.is_associative(G):
            raise PreconditionFailed(f"G_{n} is not a group; its conjugation crossed module is undefined")
        return wire.dump_crossed_module(tg.conjugation_crossed_module(G))
    if kind == "pair":
        C, B, pi = bd.gn_projection(n, F)
        return wire.dump_pair(hp.CoassociativePairData(C, B, pi))
    b = bd.gn_bundle(n, F)
    if kind == "algebroid":
        return wire.dump_algebroid(b.algebroid)
    return wire.dump_bundle(b)


def cmd_gen(args):
    doc = build(args.kind, args.n, _cochain(args, args.n) if args.kind != "quasigroup" else None)
    _emit(args, doc, json.dumps(doc, indent=2))
    return EXIT_OK


# -- check -------------------------------------------------------------------

def verify_quasigroup(Q):
    violations = qg.validate(Q)
    payload = {"subject": "quasigroup", "violations": [v.to_json() for v in violations]}
    if not violations:
        payload["nucleus"] = sorted(qg.nucleus(Q), key=Q.elements.index)
        payload["associative"] = qg.is_associative(Q)
        qa = qg.quasiassociativity_report(Q)
        payload.update({k: v for k, v in qa.items() if k != "bracketing_witness"})
        payload["cocycle"] = qg.cocycle_check(Q)
    ok = not violations
    lines = [f"quasigroup of order {Q.order}: {'valid' if ok else 'INVALID'}"]
    lines += [f"  {v.kind}: {v.message} {list(v.witness)}" for v in violations]
    if ok:
        lines += [f"  {k}: {payload[k]}" for k in ("nucleus", "associative", "image_in_nucleus",
                                                   "conjugation_stable", "cocycle")]
    return ok, payload, "\n".join(lines)


def verify_two_group(kind, obj):
    if kind == "quasigroup":
        bad = qg.validate(obj)
        if bad:
            return False, {"violations": [v.to_json() for v in bad]}, "invalid quasigroup"
        rep = tg.verification_report(tg.coherent_two_group_from_quasigroup(obj))
        ok = rep["pentagon"] and rep["naturality"] and rep["interchange"] and not rep["structure"]
    else:
        bad = tg.validate_crossed_module(obj)
        if bad:
            return False, {"violations": [v.to_json() for v in bad]}, "invalid crossed module"
        T = tg.strict_two_group_from_crossed_module(obj)
        rep = tg.verification_report(T)
        rep["round_trip"], _ = tg.round_trip(obj)
        ok = all(rep[k] for k in ("pentagon", "naturality", "interchange", "round_trip")) \
            and not rep["structure"]
    text = "\n".join(f"{k}: {v}" for k, v in rep.items())
    return ok, rep, text


def verify_pair(P):
    rep = hp.check_coassociative_pair(P)
    payload = {"pair": rep.to_json()}
    ok = rep.ok
    text = rep.table()
    if ok:
        qc = hp.check_quasi_coassociative(P)
        payload["quasi_coassociative"] = qc.report.to_json()
        ok = qc.ok
        text += "\n" + qc.report.table()
    return ok, payload, text


def verify_algebroid(D):
    reps = check_algebroid(D)
    ok = all(r.ok for r in reps.values())
    return ok, {k: r.to_json() for k, r in reps.items()}, "\n".join(r.table() for r in reps.values())


def verify_bundle(b):
    rep = bd.full_report(b)
    summary = bd.axiom_summary(rep)
    payload = {k: "pass" if v else "fail" for k, v in summary.items()}
    payload["strict"] = bd.check_strict(b)
    payload["prop42"] = {c.name[len("antipodes_"):]: "pass" if c.passed else "fail"
                         for c in rep.checks if c.name.startswith("antipodes_")}
    payload["verified_form"] = {"viii": "representative-level display",
                                "ix": "representative-level display"}
    payload["witnesses"] = [c.to_json() for c in rep.failures()]
    payload["timing"] = round(rep.timing_ms, 3)
    text = rep.table() + f"\nstrict: {payload['strict']}"
    return rep.ok, payload, text


def verify_hopf(A):
    rep = hp.check_claims(A)
    return rep.ok, rep.to_json(), rep.table()


def verify(kind, obj):
    if kind == "quasigroup":
        return verify_quasigroup(obj)
    if kind == "crossed-module":
        return verify_two_group(kind, obj)
    return {"hopf": verify_hopf, "pair": verify_pair, "algebroid": verify_algebroid,
            "hopf2": verify_bundle}[kind](obj)


def cmd_check(args):
    accept = {"two-group": ("quasigroup", "crossed-module")}.get(args.kind, (args.kind,))
    kind, obj = wire.read(args.input, accept)
    if args.kind == "two-group":
        ok, payload, text = verify_two_group(kind, obj)
    else:
        ok, payload, text = verify(kind, obj)
    return _finish(args, ok, payload, text)


# -- named verbs -------------------------------------------------------------

def cmd_check_hopf(args):
    _, A = wire.read(args.input, ("hopf",))
    return _finish(args, *verify_hopf(A))


def cmd_build_function_algebra(args):
    _, Q = wire.read(args.input, ("quasigroup",))
    if qg.validate(Q):
        raise InvalidInput("input is not a quasigroup")
    doc = wire.dump_hopf(hp.function_algebra(Q, name="k[G]"))
    _emit(args, doc, json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_pair(args):
    if args.input:
        _, P = wire.read(args.input, ("pair",))
    else:
        C, B, pi = bd.gn_projection(args.n, _cochain(args, args.n))
        P = hp.CoassociativePairData(C, B, pi)
    return _finish(args, *verify_pair(P))


def cmd_quotient(args):
    """C = k[Q]/I_B for a quasigroup Q, with I_B the annihilator of N_A in k[Q]."""
    _, Q = wire.read(args.input, ("quasigroup",))
    if qg.validate(Q):
        raise InvalidInput("input is not a quasigroup")
    P = hp.canonical_pairing(Q)
    NA = hp.nucleus_NA(P.A)
    ideal = hp.ideal_IB(P, NA)
    C = hp.quotient_hopf(P.B, ideal)
    doc = {"nucleus_dim": NA.dim, "nucleus_hopf_dim": NA.hopf_dim, "ideal_dim": len(ideal.basis),
           "quotient": wire.dump_hopf(C), "quotient_check": hp.check_claims(C).to_json()}
    ok = doc["quotient_check"]["checks"] and all(c["pass"] for c in doc["quotient_check"]["checks"])
    text = (f"N_A: dim {NA.dim}, Hopf part {NA.hopf_dim}\nI_B: dim {len(ideal.basis)}\n"
            f"C: dim {C.dim}, {C.claims}")
    return _finish(args, bool(ok), doc, text)


def cmd_check_algebroid(args):
    _, D = wire.read(args.input, ("algebroid",))
    return _finish(args, *verify_algebroid(D))


def cmd_build_hopf2(args):
    doc = wire.dump_bundle(bd.gn_bundle(args.n, _cochain(args, args.n)))
    _emit(args, doc, json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_check_hopf2(args):
    _, b = wire.read(args.input, ("hopf2",))
    ok, payload, _ = verify_bundle(b)
    args.json = True
    return _finish(args, ok, payload)


def cmd_report_all(args):
    if not 1 <= args.n_max <= 3:
        raise SizeLimit("report-all supports 1 <= n_max <= 3")
    results = suite.run_all(args.n_max, jobs=args.jobs, seed=args.seed)
    ok = all(r["pass"] for r in results)
    return _finish(args, ok, {"n_max": args.n_max, "results": results},
                   suite.matrix(results, args.n_max))


# -- parser ------------------------------------------------------------------

def _common(p):
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--cochain", help="2-cochain JSON used in place of the Cayley-Dickson one")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for report-all")
    p.add_argument("--seed", type=int, default=0, help="seed for the perturbation fuzz")


def make_parser():
    parser = argparse.ArgumentParser(prog="hopf2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an example object as JSON")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="run the full verifier on a JSON document")
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report-all", help="run the acceptance suite for n = 1..n_max")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_report_all)

    for name, func, helptext in (("check-hopf", cmd_check_hopf, "check a Hopf structure"),
                                 ("build-function-algebra", cmd_build_function_algebra,
                                  "k[G] of a quasigroup document"),
                                 ("quotient", cmd_quotient, "C = k[G]/I_B of a quasigroup document"),
                                 ("check-algebroid", cmd_check_algebroid, "check a central Hopf algebroid"),
                                 ("check-hopf2", cmd_check_hopf2, "check a coherent Hopf 2-algebra")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)

    p = sub.add_parser("pair", help="check a coassociative pair (document or --n)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("input", nargs="?")
    g.add_argument("--n", type=int)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("build-hopf2", help="the k[G_0]⊗k[G_n] bundle as JSON")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_build_hopf2)

    for sp in sub.choices.values():
        _common(sp)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimit as exc:
        print(f"hopf2: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidInput, DomainMismatch) as exc:
        print(f"hopf2: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Hopf2Error as exc:
        print(f"hopf2: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"hopf2: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
