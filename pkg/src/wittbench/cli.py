"""Command line front end.

Every verb reads JSON (a file path or an inline JSON string), runs one
operation and writes a canonical JSON document.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage or parse error; errors go to
stderr as ``{"error": {"code": ..., "message": ...}}`` and nothing is
written to stdout.
"""

import argparse
import json
import os
import sys

from .altform import AlternatingMatrix, pfaffian
from .census import (DEFAULT_BUDGET, DEFAULT_STAB_CAP, GENERATOR_SETS, CensusJob,
                     compare_generator_sets, orbit_bfs)
from .errors import ParseError, WittBenchError
from .matrix import Matrix
from .rings import ring_from_descriptor
from .vaserstein import UnimodularRow, sl4_act, suslin_matrix, vaserstein_symbol
from .witt import (FreeTriple, WitnessWord, WittRep, commutativity_witness, hyperbolic,
                   verify_witness, witt_add, witt_neg, xi_triple)

VERBS = ("pf", "det", "suslin", "vsymbol", "act", "witt-add", "witt-neg", "hyp", "xi",
         "verify-witness", "census", "compare-gens")


def canonical_json(doc):
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def load_json(source):
    """Read JSON from a path, or parse ``source`` itself if it looks like JSON."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        if not os.path.exists(source):
            raise ParseError(f"no such file: {source}")
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from None


def _ring(args):
    return ring_from_descriptor(load_json(args.ring)) if args.ring else None


def _matrices(args, count, alternating=False):
    if not args.matrix or len(args.matrix) != count:
        raise ParseError(f"{args.verb} needs exactly {count} --matrix argument(s)")
    ring = _ring(args)
    cls = AlternatingMatrix if alternating else Matrix
    return [cls.from_json(load_json(m), ring) for m in args.matrix]


def _row(args):
    if not args.row:
        raise ParseError(f"{args.verb} needs --row")
    return UnimodularRow.from_json(load_json(args.row), _ring(args))


def _orientation(text):
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError("orientation must be +1 or -1")


def _rep_doc(x):
    doc = {"rep": x.rep.to_json(), "pf": str(x.pf)}
    if x.pf_inverse is not None:
        doc["pf_inverse"] = str(x.pf_inverse)
    return doc


def run(args):
    """Dispatch one parsed command; returns the output document."""
    verb = args.verb
    if verb == "pf":
        (M,) = _matrices(args, 1, alternating=True)
        return {"pf": str(pfaffian(M))}
    if verb == "det":
        (M,) = _matrices(args, 1)
        return {"det": str(M.det())}
    if verb == "suslin":
        row = _row(args)
        return suslin_matrix(row).to_json()
    if verb == "vsymbol":
        return vaserstein_symbol(_row(args), args.orientation).to_json()
    if verb == "act":
        row = _row(args)
        (phi,) = _matrices(args, 1)
        return sl4_act(row, phi, args.orientation).to_json()
    if verb == "witt-add":
        A, B = _matrices(args, 2, alternating=True)
        x, y = WittRep(A, args.group), WittRep(B, args.group)
        doc = _rep_doc(witt_add(x, y))
        doc["commutativity_witness"] = commutativity_witness(x, y).to_json()
        return doc
    if verb == "witt-neg":
        (A,) = _matrices(args, 1, alternating=True)
        return _rep_doc(witt_neg(WittRep(A, args.group)))
    if verb == "hyp":
        (M,) = _matrices(args, 1)
        return _rep_doc(hyperbolic(M, group=args.group))
    if verb == "xi":
        g, f = _matrices(args, 2, alternating=True)
        alpha = None
        if args.alpha:
            alpha = Matrix.from_json(load_json(args.alpha), g.ring)
        return _rep_doc(xi_triple(FreeTriple(g, f, alpha)))
    if verb == "verify-witness":
        M, N = _matrices(args, 2, alternating=True)
        if not args.witness:
            raise ParseError("verify-witness needs --witness")
        w = WitnessWord.from_json(load_json(args.witness), M.ring)
        check = verify_witness(M, N, w, args.group)
        doc = {"ok": check.ok, "size": check.size}
        if check.locus is not None:
            doc["locus"] = check.locus
        return doc
    if verb in ("census", "compare-gens"):
        ring = _ring(args)
        if ring is None:
            raise ParseError(f"{verb} needs --ring")
        if args.object is None or args.n is None:
            raise ParseError(f"{verb} needs --object and --n")
        job = CensusJob(ring, args.object, args.n, args.gens, args.stab_cap, args.budget)
        if verb == "census":
            return orbit_bfs(job, seed=args.seed).to_report()
        if not args.against:
            raise ParseError("compare-gens needs --against")
        return compare_generator_sets(job, args.gens, args.against)
    raise ParseError(f"unknown verb {verb!r}")


def _table(doc):
    """Human-readable rendering; never the machine interface."""
    lines = []
    if "orbits" in doc and isinstance(doc["orbits"], list):
        lines.append(f"generator set: {doc['generator_set']}  stab cap: {doc['stab_cap']}"
                     f"  objects: {doc['objects']}  ({doc['label']})")
        lines.append(f"{'size':>8}  {'pf':>6}  rep")
        for o in doc["orbits"]:
            lines.append(f"{o['size']:>8}  {o.get('pf', '-'):>6}  {canonical_json(o['rep'])}")
        return "\n".join(lines)
    for k, v in doc.items():
        if isinstance(v, dict) and "rows" in v:
            lines.append(f"{k}:")
            lines.append(str(Matrix.from_json(v)))
        else:
            lines.append(f"{k}: {canonical_json(v) if not isinstance(v, str) else v}")
    if "rows" in doc:
        return str(Matrix.from_json(doc))
    return "\n".join(lines)


def build_parser():
    p = argparse.ArgumentParser(prog="wittbench", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--ring", help="ring descriptor (path or inline JSON)")
    p.add_argument("--matrix", action="append", help="matrix JSON; repeat for two operands")
    p.add_argument("--row", help="unimodular row JSON")
    p.add_argument("--witness", help="witness word JSON")
    p.add_argument("--alpha", help="basis change for xi")
    p.add_argument("--orientation", type=_orientation, default=1)
    p.add_argument("--group", choices=("E", "SL"), default="E")
    p.add_argument("--object", choices=("umrows", "alt"))
    p.add_argument("--n", type=int)
    p.add_argument("--gens", choices=GENERATOR_SETS, default="E")
    p.add_argument("--against", choices=GENERATOR_SETS)
    p.add_argument("--stab-cap", type=int, default=DEFAULT_STAB_CAP)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        doc = run(args)
    except WittBenchError as exc:
        err = {"error": {"code": exc.code, "message": str(exc)}}
        print(canonical_json(err), file=sys.stderr)
        return exc.exit_status
    text = canonical_json(doc) if args.format == "json" else _table(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
