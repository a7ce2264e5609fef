"""Command-line interface.

Exit codes: 0 positive result (true / found / in-fragment / no
disagreements), 1 negative result, 2 usage or input errors, 3 search
timeout, 4 fragment analysis not applicable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fragments import fragment_check
from .hybrid_semantics import UnboundNominalError, hy_check
from .kripke import (ModelError, ModelFile, frame_classify, load_model,
                     model_from_dict, model_to_dict)
from .rc_semantics import rc_check
from .satsearch import oracle_compare, sat_bounded
from .syntax import ParseError, parse_hybrid, parse_rc, print_formula, profile
from .translator import (TranslateOptions, TranslationError,
                         simplify_for_display, translate, translate_eco)

_USAGE_ERROR = 2


def _load(spec: str) -> ModelFile:
    if spec == "-":
        try:
            return model_from_dict(json.load(sys.stdin))
        except json.JSONDecodeError as exc:
            raise ModelError(f"not valid JSON on stdin: {exc}") from exc
    return load_model(spec)


def _pick_world(args, loaded: ModelFile):
    world = args.world if args.world is not None else loaded.point
    if world is None:
        raise ModelError("no designated state: pass --world or add 'point'")
    if world not in set(loaded.model.states):
        raise ModelError(f"state {world!r} is not in the model")
    return world


def _cmd_check(args) -> int:
    loaded = _load(args.model)
    world = _pick_world(args, loaded)
    formula = parse_rc(args.formula)
    trace: list = []
    result = rc_check(loaded.model, world, formula, trace)
    if args.json:
        print(json.dumps({"result": result,
                          "trace": [[kind, [str(a), str(b)]]
                                    for kind, (a, b) in trace]}))
    else:
        print("true" if result else "false")
    return 0 if result else 1


def _cmd_hycheck(args) -> int:
    loaded = _load(args.model)
    world = _pick_world(args, loaded)
    formula = parse_hybrid(args.formula)
    result = hy_check(loaded.model, loaded.nominals, world, formula)
    if args.json:
        print(json.dumps({"result": result}))
    else:
        print("true" if result else "false")
    return 0 if result else 1


_FAMILY_NAMES = {"sb": "sabotage", "br": "bridge", "sw": "swap"}


def _cmd_translate(args) -> int:
    formula = parse_rc(args.formula)
    if args.family == "auto":
        families = sorted(profile(formula).families)
        if len(families) > 1:
            raise TranslationError(
                f"formula mixes families {families}; pass --family")
        family = families[0] if families else "sabotage"
    else:
        family = _FAMILY_NAMES[args.family]
    options = TranslateOptions(optimize_empty=not args.raw)
    if args.eco:
        result = translate_eco(formula, family, options)
    else:
        result = translate(formula, family, options)
    if not args.raw:
        result = simplify_for_display(result)
    text = print_formula(result)
    if args.json:
        print(json.dumps({"formula": text, "family": family,
                          "eco": args.eco, "raw": args.raw}))
    else:
        print(text)
    return 0


def _cmd_sat(args) -> int:
    formula = parse_rc(args.formula)
    result = sat_bounded(formula, args.max_states,
                         frame_class=args.frame_class,
                         time_budget=args.budget)
    if args.json:
        payload = {"status": result.status,
                   "states_examined": result.states_examined,
                   "elapsed": result.elapsed}
        if result.status == "found":
            payload["model"] = model_to_dict(result.model, result.point)
        print(json.dumps(payload, indent=2))
    elif result.status == "found":
        print(json.dumps(model_to_dict(result.model, result.point), indent=2))
    else:
        print(result.status)
        if result.status == "timeout":
            print(f"states examined: {result.states_examined}",
                  file=sys.stderr)
    return {"found": 0, "exhausted": 1, "timeout": 3}[result.status]


def _cmd_fragment(args) -> int:
    report = fragment_check(parse_rc(args.formula))
    if args.json:
        print(json.dumps(report.to_dict()))
    elif not report.applicable:
        print("not-applicable")
    elif report.in_fragment:
        print("in-fragment")
    else:
        print("out-of-fragment (witness: " + " ".join(report.witness_path) + ")")
    if not report.applicable:
        return 4
    return 0 if report.in_fragment else 1


def _cmd_frames(args) -> int:
    loaded = _load(args.model)
    report = frame_classify(loaded.model)
    data = {"complete": report.complete, "s5": report.s5,
            "linear": report.linear, "transitive_tree": report.transitive_tree,
            "width": report.width}
    if args.json:
        print(json.dumps(data))
    else:
        for key, value in data.items():
            print(f"{key}: {str(value).lower() if isinstance(value, bool) else value}")
    return 0


def _cmd_oracle(args) -> int:
    report = oracle_compare(args.family, args.max_states, args.runs,
                            args.depth, args.seed)
    print(report.to_json())
    return 0 if not report.disagreements else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcmodal",
        description="Model checking, hybrid-logic compilation, and bounded "
                    "model search for edge-changing modal logics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")

    p = sub.add_parser("check", help="evaluate a source formula on a model")
    p.add_argument("--model", required=True, help="model file ('-' = stdin)")
    p.add_argument("--world", help="evaluation state (default: file 'point')")
    p.add_argument("formula")
    add_json(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("hycheck", help="evaluate a hybrid formula on a model")
    p.add_argument("--model", required=True, help="model file ('-' = stdin)")
    p.add_argument("--world", help="evaluation state (default: file 'point')")
    p.add_argument("formula")
    add_json(p)
    p.set_defaults(handler=_cmd_hycheck)

    p = sub.add_parser("translate", help="compile into hybrid logic")
    p.add_argument("--family", choices=["sb", "br", "sw", "auto"],
                   default="auto")
    p.add_argument("--eco", action="store_true",
                   help="binder-economical variant (local sb/sw only)")
    p.add_argument("--raw", action="store_true",
                   help="no empty-case shortcut, no display simplification")
    p.add_argument("formula")
    add_json(p)
    p.set_defaults(handler=_cmd_translate)

    p = sub.add_parser("sat", help="bounded satisfiability search")
    p.add_argument("--max-states", type=int, required=True)
    p.add_argument("--frame-class",
                   help="complete | s5 | linear | tree | width:N")
    p.add_argument("--budget", type=float, help="time budget in seconds")
    p.add_argument("formula")
    add_json(p)
    p.set_defaults(handler=_cmd_sat)

    p = sub.add_parser("fragment", help="decidable-fragment analysis")
    p.add_argument("formula")
    add_json(p)
    p.set_defaults(handler=_cmd_fragment)

    p = sub.add_parser("frames", help="classify a model's frame")
    p.add_argument("--model", required=True)
    add_json(p)
    p.set_defaults(handler=_cmd_frames)

    p = sub.add_parser("oracle",
                       help="equivalence sweep: direct checking vs compiled")
    p.add_argument("--family", choices=["sabotage", "bridge", "swap"],
                   required=True)
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    add_json(p)
    p.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ParseError, ModelError, TranslationError, UnboundNominalError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
