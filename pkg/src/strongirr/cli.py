"""Command-line front end.

    strongirr build divisor:12
    strongirr classify divisor:12 --json
    strongirr topology chain:4 --kind closed
    strongirr represent M:3 --target 0 --kind si
    strongirr verify transfer --n 12 --p 2
    strongirr verify properties N5
    strongirr abgroup --factors 4x9 --report strongly-hollow
    strongirr dual N5

Exit status: 0 on success, 1 when a verified property fails, 2 on bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import abelian, config
from .battery import property_checks
from .builders import corpus, from_spec, parse_lattice_file
from .classify import characterization_report, classify_all, irreducible_elements, sh_elements, si_elements
from .errors import EmptySpectrum, LatticeError, VerificationError
from .lattice import dual
from .representations import irredundant_join_reps, irredundant_meet_reps
from .topology import closed_basis, open_basis
from .transfer import localization_correspondence, localization_model, pair_from_json, random_transfer_sweep, transfer_si, verify_pair


class UsageError(Exception):
    pass


class Failed(Exception):
    """Carries a report whose verification did not pass."""

    def __init__(self, report):
        self.report = report


def _emit(obj, args, text=None):
    if args.json or text is None:
        print(json.dumps(obj, sort_keys=True, indent=2, default=_plain))
    else:
        print(text(obj))


def _plain(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _lattice_text(doc):
    lines = [f"{len(doc['labels'])} elements: " + " ".join(doc["labels"])]
    lines += [f"  {doc['labels'][a]} < {doc['labels'][b]}" for a, b in doc["covers"]]
    return "\n".join(lines)


# verbs -----------------------------------------------------------------------


def cmd_build(args):
    _emit(from_spec(args.lattice).to_json(), args, _lattice_text)


def cmd_dual(args):
    _emit(dual(from_spec(args.lattice)).to_json(), args, _lattice_text)


FLAG_COLUMNS = [
    ("irr", "irreducible"),
    ("si", "strongly_irreducible"),
    ("csi", "completely_strongly_irreducible"),
    ("hol", "hollow"),
    ("sh", "strongly_hollow"),
    ("waist", "waist"),
    ("ess", "essential"),
]


def _classify_text(doc):
    rows = doc["elements"]
    width = max(5, *(len(r["label"]) for r in rows))
    head = "element".ljust(width + 2) + " ".join(c.rjust(5) for c, _ in FLAG_COLUMNS) + "  omega"
    body = [
        r["label"].ljust(width + 2) + " ".join(("x" if r[f] else ".").rjust(5) for _, f in FLAG_COLUMNS) + f"  {r['omega_size']:5d}"
        for r in rows
    ]
    return "\n".join([head, *body, "", "SI: " + " ".join(doc["si"]), "SH: " + " ".join(doc["sh"])])


def cmd_classify(args):
    L = from_spec(args.lattice)
    if args.element is not None:
        p = L.index(args.element)
        row = classify_all(L)[p].to_dict()
        rep = characterization_report(L, p)
        row["characterization"] = rep.to_dict()
        _emit(row, args, lambda r: "\n".join(f"{k}: {v}" for k, v in sorted(r.items()) if k != "characterization"))
        if rep.omega_nonempty and not rep.consistent:
            raise Failed(row)
        return
    names = lambda xs: [L.labels[p] for p in xs]
    doc = {
        "lattice": args.lattice,
        "elements": [r.to_dict() for r in classify_all(L)],
        "si": names(si_elements(L)),
        "sh": names(sh_elements(L)),
        "irreducible": names(irreducible_elements(L)),
    }
    _emit(doc, args, _classify_text)


def cmd_topology(args):
    L = from_spec(args.lattice)
    build = closed_basis if args.kind == "closed" else open_basis
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptySpectrum)
        basis = build(L)
    doc = basis.to_dict()

    def text(d):
        sym = "V" if d["kind"] == "closed" else "χ"
        lines = [f"spectrum: {{{', '.join(d['spectrum'])}}}"]
        lines += [f"  {sym}({a}) = {{{', '.join(s)}}}" for a, s in d["sets"].items()]
        lines.append(f"verified: {str(d['verified']).lower()}")
        return "\n".join(lines)

    _emit(doc, args, text)
    if not doc["verified"]:
        raise Failed(basis.verification.to_dict())


def cmd_represent(args):
    L = from_spec(args.lattice)
    target = args.target
    if target is None:
        target = L.labels[L.bottom if args.side == "meet" else L.top]
    kind = args.kind or "any"
    if args.side == "meet":
        reps = irredundant_meet_reps(L, target, kind, args.max_size)
    else:
        reps = irredundant_join_reps(L, target, kind, args.max_size)
    doc = {
        "target": L.labels[L.index(target)],
        "side": args.side,
        "kind": reps[0].parts_kind if reps else kind,
        "representations": [r.labels(L) for r in reps],
    }
    sym = " ∧ " if args.side == "meet" else " + "
    _emit(doc, args, lambda d: "\n".join(f"{d['target']} = " + sym.join(r) for r in d["representations"]) or "none")


def cmd_verify(args):
    what = args.what
    if what == "transfer":
        if args.pair:
            if not (args.source and args.target_lattice):
                raise UsageError("--pair needs --source and --target-lattice")
            src, tgt = parse_lattice_file(args.source), parse_lattice_file(args.target_lattice)
            pair = pair_from_json(_read(args.pair), src, tgt)
            rep = verify_pair(pair)
            verdicts = []
            if rep.hypotheses:
                for p in rep.fixed_points:
                    v = transfer_si(pair, p, rep)
                    verdicts.append({"element": src.labels[p], "premise": v.premise, "conclusion": v.conclusion_verified})
            doc = {"hypotheses": rep.to_dict(), "verdicts": verdicts}
            _emit(doc, args)
            if any(v["conclusion"] is False for v in verdicts):
                raise Failed(doc)
            return
        if args.n is None or args.p is None:
            raise UsageError("verify transfer needs --n and --p (or --pair)")
        rep = localization_correspondence(localization_model(args.n, args.p))
        doc = rep.to_dict()
        _emit(doc, args)
        if not rep.passed:
            raise Failed(doc)
    elif what == "random":
        seed = 0 if args.seed is None else args.seed
        rep = random_transfer_sweep(list(corpus().values()), count=args.count, seed=seed)
        doc = {"seed": rep.seed, "pairs": rep.pairs, "checks": rep.checks, "failures": rep.failures, "passed": rep.passed}
        _emit(doc, args)
        if not rep.passed:
            raise Failed(doc)
    elif what == "properties":
        if not args.lattice:
            raise UsageError("verify properties needs a lattice")
        checks = property_checks(from_spec(args.lattice))
        doc = {"lattice": args.lattice, "checks": [c.to_dict() for c in checks], "passed": all(c.passed for c in checks)}
        _emit(doc, args, lambda d: "\n".join(
            f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']} ({c['checked']} checked)" for c in d["checks"]))
        if not doc["passed"]:
            raise Failed(doc)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _subgroup_doc(H):
    return {"label": H.label, "order": H.order, "generators": [list(g) for g in H.canonical_generators]}


def cmd_abgroup(args):
    if not args.factors:
        raise UsageError("abgroup needs --factors, e.g. --factors 4x9")
    A = abelian.FiniteAbelianGroup.parse(args.factors)
    doc = {"factors": list(A.factors), "order": A.order, "invariant_factors": list(A.invariant_factors), "report": args.report}
    if args.report == "strongly-hollow":
        r = abelian.strongly_hollow_subgroups(A)
        doc.update(route=r.route, agree=r.agree, subgroups=[_subgroup_doc(H) for H in r.nonzero])
    elif args.report == "hollow":
        doc["subgroups"] = [_subgroup_doc(H) for H in abelian.hollow_subgroups(A)]
    elif args.report == "subgroups":
        doc["subgroups"] = [_subgroup_doc(H) for H in abelian.enumerate_subgroups(A, limit=args.limit)]
    elif args.report == "lattice":
        SL = abelian.subgroup_lattice(A, limit=args.limit)
        doc["lattice"] = SL.lattice.to_json()
        doc["subgroups"] = [_subgroup_doc(H) for H in SL.subgroups]
    elif args.report == "stephenson":
        if args.element is None:
            raise UsageError("stephenson report needs --element with generators, e.g. --element 1,0")
        P = A.subgroup([tuple(int(x) for x in g.split(",")) for g in args.element.split(";")])
        r = abelian.stephenson_check(A, P, require=False)
        doc.update(subgroup=_subgroup_doc(P), strongly_hollow=abelian.is_strongly_hollow_subgroup(A, P),
                   passed=r.passed, checked=r.checked, violations=r.violations)

    def text(d):
        lines = [f"{'x'.join(map(str, d['factors'])) or '1'} (order {d['order']})"]
        lines += [f"  {s['label']}  order {s['order']}" for s in d.get("subgroups", [])]
        if "passed" in d:
            lines.append(f"P = {d['subgroup']['label']}, strongly hollow: {str(d['strongly_hollow']).lower()}")
            lines += [f"  Q = {v['Q']}: hom count {v['hom_count']}" for v in d["violations"]]
            lines.append(f"passed: {str(d['passed']).lower()}")
        return "\n".join(lines)

    _emit(doc, args, text)
    if doc.get("strongly_hollow") and not doc["passed"]:
        raise Failed(doc)


# parser ----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (default for reports without a table form)")
    common.add_argument("--limit", type=int, help="maximum lattice size (default from STRONGIRR_MAX_SIZE)")

    ap = argparse.ArgumentParser(prog="strongirr", description="Strongly irreducible and strongly hollow elements of finite lattices.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def lattice_verb(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("lattice", help="builder spec such as divisor:12, M:3, N5 or a .json file")
        p.set_defaults(fn=fn)
        return p

    lattice_verb("build", cmd_build, "print a lattice in the JSON interchange format")
    lattice_verb("dual", cmd_dual, "print the order-reversed lattice")
    p = lattice_verb("classify", cmd_classify, "per-element flags")
    p.add_argument("--element", help="report one element with its characterization conditions")
    p = lattice_verb("topology", cmd_topology, "closed (V) or open (χ) basis on the spectrum")
    p.add_argument("--kind", choices=["closed", "open"], default="closed")
    p = lattice_verb("represent", cmd_represent, "irredundant meet or join representations")
    p.add_argument("--target", help="element to represent (default bottom for meets, top for joins)")
    p.add_argument("--kind", help="si, irr, any for meets; sh, hollow, any for joins")
    p.add_argument("--side", choices=["meet", "join"], default="meet")
    p.add_argument("--max-size", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("what", choices=["transfer", "random", "properties"])
    p.add_argument("lattice", nargs="?", help="lattice for 'properties'")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--pair", help='JSON file {"G": [...], "F": [...]}')
    p.add_argument("--source", help="lattice JSON file for the domain of G")
    p.add_argument("--target-lattice", help="lattice JSON file for the domain of F")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("abgroup", parents=[common], help="subgroups of a finite abelian group")
    p.add_argument("--factors", help="cyclic factors such as 4x9")
    p.add_argument("--report", choices=["strongly-hollow", "hollow", "lattice", "subgroups", "stephenson"], default="strongly-hollow")
    p.add_argument("--element", help="generators of P for the stephenson report, e.g. '1,0' or '1,0;0,2'")
    p.set_defaults(fn=cmd_abgroup)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.limit is not None:
        config.MAX_LATTICE_SIZE = args.limit
    try:
        args.fn(args)
    except Failed:
        return 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
