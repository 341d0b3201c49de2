"""Batch front-end: instance files in, canonical reports out.

Every subcommand reads one JSON instance document (a file path or ``-`` for
stdin), runs the corresponding operation, and prints a report.  Reports are
canonical JSON by default (sorted keys, two-space indent) and byte-identical
across runs for a fixed instance, seed, and version; wall-clock timing is
reported only under ``--timing``.

Exit codes: 0 when the verdict is true or a value was produced, 1 when the
verdict is false (the report carries the counterexample), 2 on malformed
input, with a field-level diagnostic on stderr.
"""

import argparse
import hashlib
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__, serialize
from .classes import (
    SetClass,
    check_reduction,
    check_separation,
    complement_class,
    generate_class,
)
from .errors import EngineError, InputError
from .hausdorff import dual_evaluate, evaluate
from .masks import SubsetMask
from .spaces import closed_sets, components, product, zero_sets
from .suites import replay_finding, run_suite, suite_defaults, suite_names
from .transfer import transfer_property, zero_trace_gap

_TRACE_CAP = 64


def _load_instance(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read instance {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"instance {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"instance {path!r} must hold one JSON object")
    return doc


def _space_from_instance(doc, args, name="space"):
    kwargs = {}
    if args.max_points is not None:
        kwargs["max_points"] = args.max_points
    return serialize.space_from_doc(
        serialize._field(doc, name, "instance"), f"instance.{name}", **kwargs
    )


def _derived_class(space, which, path):
    opens = SetClass.from_bits(space.n, space.open_bits())
    if which == "opens":
        return opens
    if which == "closeds":
        return complement_class(opens)
    if which == "zeros":
        return zero_sets(space)
    raise InputError(f"{path} must be 'opens', 'closeds', or 'zeros', not {which!r}")


def _class_from_instance(doc, args):
    if "class" in doc:
        return serialize.class_from_doc(doc["class"], "instance.class")
    if "space" in doc:
        space = _space_from_instance(doc, args)
        return _derived_class(space, doc.get("class_from", "opens"), "instance.class_from")
    raise InputError("instance needs a 'class' or a 'space' (with optional 'class_from')")


def _class_doc(sc):
    return [serialize.points_doc(m) for m in sc.members] if sc is not None else None


def _witness_doc(w):
    if w is None:
        return None
    if hasattr(w, "separator"):
        return {"separator": serialize.points_doc(w.separator)}
    return {"c": serialize.points_doc(w.c), "d": serialize.points_doc(w.d)}


def _offending_doc(item):
    if isinstance(item, SubsetMask):
        return serialize.points_doc(item)
    return [serialize.points_doc(m) for m in item]


def _mode_for(doc, base):
    return doc.get("mode") or base.mode_hint


# ---------------------------------------------------------------------------
# subcommand handlers: instance document in, (report fields, exit code) out


def _cmd_eval(args):
    doc = _load_instance(args.instance)
    base = serialize.base_from_doc(serialize._field(doc, "base", "instance"))
    family = serialize.family_from_doc(serialize._field(doc, "family", "instance"))
    mode = doc.get("mode") or family.mode
    dual = bool(doc.get("dual", False))
    value = dual_evaluate(base, family, mode) if dual else evaluate(base, family, mode)
    report = {
        "universe": family.n,
        "mode": mode,
        "dual": dual,
        "value": serialize.points_doc(value),
    }
    return report, 0


def _cmd_generate(args):
    doc = _load_instance(args.instance)
    base = serialize.base_from_doc(serialize._field(doc, "base", "instance"))
    generators = serialize.class_from_doc(
        serialize._field(doc, "generators", "instance"), "instance.generators"
    )
    mode = _mode_for(doc, base)
    dual = bool(doc.get("dual", False))
    sc = generate_class(base, generators, mode, dual=dual)
    report = {
        "universe": sc.n,
        "mode": mode,
        "dual": dual,
        "count": len(sc),
        "members": _class_doc(sc),
    }
    return report, 0


def _check_report(res, sc):
    report = {
        "universe": sc.n,
        "class_size": len(sc),
        "verdict": res.holds,
        "pairs_checked": res.pairs_checked,
        "witness_count": len(res.witnesses) if res.witnesses else 0,
        "failing_pair": None,
        "witnesses": None,
    }
    if res.failing_pair is not None:
        report["failing_pair"] = [serialize.points_doc(m) for m in res.failing_pair]
    if res.witnesses:
        report["witnesses"] = [
            {
                "a": serialize.points_doc(a),
                "b": serialize.points_doc(b),
                **_witness_doc(w),
            }
            for (a, b), w in sorted(res.witnesses.items())[:_TRACE_CAP]
        ]
    return report, 0 if res.holds else 1


def _cmd_check_reduction(args):
    sc = _class_from_instance(_load_instance(args.instance), args)
    return _check_report(check_reduction(sc), sc)


def _cmd_check_separation(args):
    sc = _class_from_instance(_load_instance(args.instance), args)
    return _check_report(check_separation(sc), sc)


def _generators_from(doc, key, space, args):
    val = serialize._field(doc, key, "instance")
    if isinstance(val, str):
        return _derived_class(space, val, f"instance.{key}")
    return serialize.class_from_doc(val, f"instance.{key}")


def _cmd_transfer(args):
    doc = _load_instance(args.instance)
    kwargs = {}
    if args.max_points is not None:
        kwargs["max_points"] = args.max_points
    pm = serialize.map_from_doc(
        serialize._field(doc, "map", "instance"), "instance.map", **kwargs
    )
    base = serialize.base_from_doc(serialize._field(doc, "base", "instance"))
    mode = _mode_for(doc, base)
    which = serialize._field(doc, "which", "instance")
    gens_dom = _generators_from(doc, "dom_generators", pm.dom, args)
    gens_cod = _generators_from(doc, "cod_generators", pm.cod, args)
    rep = transfer_property(pm, base, gens_dom, gens_cod, mode, which)
    traces = [
        {
            "a": serialize.points_doc(t.a),
            "b": serialize.points_doc(t.b),
            "fa": serialize.points_doc(t.fa),
            "fb": serialize.points_doc(t.fb),
            "witness_cod": _witness_doc(t.witness_cod),
            "witness_dom": _witness_doc(t.witness_dom),
            "valid": t.valid,
        }
        for t in rep.pairs[:_TRACE_CAP]
    ]
    report = {
        "which": rep.which,
        "mode": mode,
        "verdict": rep.verdict,
        "failure": rep.failure,
        "hypotheses": [
            {
                "name": h.name,
                "holds": h.holds,
                "offending": [_offending_doc(m) for m in h.offending if m is not None],
            }
            for h in rep.hypotheses
        ],
        "class_dom": _class_doc(rep.class_dom),
        "class_cod": _class_doc(rep.class_cod),
        "pairs_checked": len(rep.pairs),
        "pairs_valid": sum(1 for t in rep.pairs if t.valid),
        "traces": traces,
    }
    return report, 0 if rep.verdict else 1


def _cmd_zero_gap(args):
    doc = _load_instance(args.instance)
    space = _space_from_instance(doc, args)
    carrier_doc = doc.get("carrier")
    if carrier_doc is None:
        carrier_doc = list(range(space.n))
    carrier = serialize.mask_from_doc(space.n, carrier_doc, "instance.carrier")
    rep = zero_trace_gap(space, carrier)
    report = {
        "universe": space.n,
        "carrier": serialize.points_doc(rep.carrier),
        "subspace_points": list(rep.remap),
        "traces": _class_doc(rep.traces),
        "intrinsic": _class_doc(rep.intrinsic),
        "gap": _class_doc(rep.gap),
        "verdict": len(rep.gap) == 0,
    }
    return report, 0 if len(rep.gap) == 0 else 1


def _cmd_space(args):
    doc = _load_instance(args.instance)
    if "product" in doc:
        factors_doc = doc["product"]
        if not isinstance(factors_doc, list) or not factors_doc:
            raise InputError("instance.product must be a non-empty array of spaces")
        factors = [
            serialize.space_from_doc(d, f"instance.product[{i}]")
            for i, d in enumerate(factors_doc)
        ]
        kwargs = {}
        if args.max_points is not None:
            kwargs["max_points"] = args.max_points
        space, _codec = product(factors, **kwargs)
    else:
        space = _space_from_instance(doc, args)
    opens = SetClass.from_bits(space.n, space.open_bits())
    comps = components(space)
    zeros = zero_sets(space)
    report = {
        "n": space.n,
        "discrete": space.is_discrete(),
        "opens": _class_doc(opens),
        "closeds": _class_doc(closed_sets(space)),
        "components": [serialize.points_doc(c) for c in comps],
        "zeros": _class_doc(zeros),
        "counts": {"opens": len(opens), "components": len(comps), "zeros": len(zeros)},
    }
    return report, 0


def _cmd_replay(args):
    paths = [Path(p) for p in args.paths]
    if args.corpus_dir is not None:
        paths.extend(sorted(Path(args.corpus_dir).glob("*.json")))
    if not paths:
        raise InputError("nothing to replay: give finding files or --corpus-dir")
    findings = []
    retriggered = 0
    for path in paths:
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise InputError(f"cannot read finding {str(path)!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"finding {str(path)!r} is not valid JSON: {exc}") from exc
        ok = replay_finding(doc)
        retriggered += ok
        findings.append(
            {
                "file": path.name,
                "suite": doc.get("suite"),
                "kind": doc.get("kind"),
                "retriggered": ok,
            }
        )
    report = {
        "replayed": len(findings),
        "retriggered": retriggered,
        "verdict": retriggered == len(findings),
        "findings": findings,
    }
    return report, 0 if report["verdict"] else 1


def _cmd_fuzz(args):
    bounds, default_budget, expects = suite_defaults(args.suite)
    if args.max_points is not None:
        bounds = replace(bounds, max_points=args.max_points)
    if args.alphabet is not None:
        bounds = replace(bounds, alphabet=args.alphabet)
    if args.depth is not None:
        bounds = replace(bounds, depth=args.depth)
    budget = args.budget if args.budget is not None else default_budget
    res = run_suite(args.suite, bounds=bounds, seed=args.seed, budget=budget)
    written = []
    if args.corpus_dir is not None:
        corpus = Path(args.corpus_dir)
        corpus.mkdir(parents=True, exist_ok=True)
        for finding in (*res.violations, *res.witnesses):
            payload = serialize.canonical_json(finding)
            digest = hashlib.sha256(payload.encode()).hexdigest()[:12]
            name = f"{res.name}-{digest}.json"
            (corpus / name).write_text(payload)
            written.append(name)
    report = {
        "suite": res.name,
        "bounds": {
            "max_points": bounds.max_points,
            "alphabet": bounds.alphabet,
            "depth": bounds.depth,
            "cap": bounds.cap,
        },
        "budget": budget,
        "cases": res.cases,
        "violations": res.violation_count,
        "witnesses": res.witness_count,
        "expects_witnesses": expects,
        "verdict": res.passed,
        "written": sorted(written),
        "findings": [*res.violations, *res.witnesses],
    }
    return report, 0 if res.passed else 1


# ---------------------------------------------------------------------------
# parser and entry point


def _render_text(report):
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed echoed into the report")
    common.add_argument(
        "--max-points", type=int, default=None, help="override the point-count cap"
    )
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="report rendering"
    )
    common.add_argument(
        "--timing", action="store_true", help="include wall-clock seconds in the report"
    )

    parser = argparse.ArgumentParser(
        prog="redsep",
        description="finite-model checks for tree-indexed set operations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance", help="instance file (JSON object), or - for stdin")
        p.set_defaults(handler=handler)
        return p

    instance_cmd("eval", _cmd_eval, "evaluate a base over an indexed family")
    instance_cmd("generate", _cmd_generate, "collect all outcomes over generator assignments")
    instance_cmd("check-reduction", _cmd_check_reduction, "check the reduction property")
    instance_cmd("check-separation", _cmd_check_separation, "check the separation property")
    instance_cmd("transfer", _cmd_transfer, "transfer reduction or separation along a map")
    instance_cmd("zero-gap", _cmd_zero_gap, "compare traced and intrinsic zero sets")
    instance_cmd("space", _cmd_space, "materialize a space: opens, closeds, components, zeros")

    replay = sub.add_parser(
        "replay", parents=[common], help="re-run stored findings and report re-triggering"
    )
    replay.add_argument("paths", nargs="*", help="finding files to replay")
    replay.add_argument("--corpus-dir", default=None, help="replay every *.json in a directory")
    replay.set_defaults(handler=_cmd_replay)

    fuzz = sub.add_parser(
        "fuzz", parents=[common], help="run a property suite and persist its findings"
    )
    fuzz.add_argument("suite", help=f"one of: {', '.join(suite_names())}")
    fuzz.add_argument("--alphabet", type=int, default=None, help="override the alphabet bound")
    fuzz.add_argument("--depth", type=int, default=None, help="override the depth bound")
    fuzz.add_argument(
        "--budget", type=int, default=None, help="sampled assignments per structural case"
    )
    fuzz.add_argument("--corpus-dir", default=None, help="directory for finding files")
    fuzz.set_defaults(handler=_cmd_fuzz)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return 2
    started = time.perf_counter()
    try:
        report, code = args.handler(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - started
    report = {
        "command": args.command,
        "version": __version__,
        "seed": args.seed,
        "timing": round(elapsed, 6) if args.timing else None,
        **report,
    }
    if args.format == "text":
        sys.stdout.write(_render_text(report))
    else:
        sys.stdout.write(serialize.canonical_json(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
