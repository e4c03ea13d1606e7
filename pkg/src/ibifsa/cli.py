"""Command-line interface.

Exit codes: 0 pass, 1 hard counterexample or failed verdict, 2 bad input,
3 findings only (fractional-degree ordering violations).
"""

import argparse
import dataclasses
import json
import sys

from . import harness
from .errors import IfsaError
from .group import group_from_doc, load_group, make_homomorphism, make_standard
from .ifs import (
    hom_image,
    hom_preimage,
    identity_report,
    ifs_from_doc,
    normal_report,
    subgroup_report,
)
from .machine import (
    DEFAULT_MAX_LEN,
    STRUCTURE_MODES,
    concat_equality_check,
    extend_word,
    load_machine,
    run_degree,
    structure_report,
)
from .substructures import (
    kernel_degree,
    kernel_epsilon_degree,
    kernel_star_degree,
    subsemi_degree,
    subsemi_star_degree,
)
from .truthval import IMPLICATIONS, format_truth, truth

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FINDINGS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lambda(text):
    try:
        value = truth(text)
    except (IfsaError, ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad lambda {text!r}: {exc}") from None
    if value == 0:
        raise argparse.ArgumentTypeError("lambda must lie in (0, 1]")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "junit"), default="text")
    common.add_argument("-o", "--output", metavar="PATH", help="write output here instead of stdout")

    parser = _Parser(prog="ibifsa", description="Implication-based intuitionistic fuzzy "
                     "semiautomata over finite groups: checks and theorem verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group documents").add_subparsers(dest="action", required=True)
    p = grp.add_parser("validate", parents=[common])
    p.add_argument("source", help="group JSON path or family:param")
    p = grp.add_parser("make", parents=[common])
    p.add_argument("spec", help="family:param, e.g. cyclic:4")

    mach = sub.add_parser("machine", help="machine documents").add_subparsers(dest="action", required=True)
    p = mach.add_parser("validate", parents=[common])
    p.add_argument("machine")
    p.add_argument("--structure", choices=STRUCTURE_MODES)
    p.add_argument("--lambda", dest="lam", type=_lambda)
    p = mach.add_parser("run", parents=[common])
    p.add_argument("machine")
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="end", required=True)
    p.add_argument("--word", required=True, help='whitespace-separated symbols; "" is the empty word')
    p = mach.add_parser("extend", parents=[common])
    p.add_argument("machine")
    p.add_argument("--word", help="extend one word")
    p.add_argument("--max-len", type=_nonneg, default=DEFAULT_MAX_LEN,
                   help="without --word: check the concatenation law up to this length")
    p.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)

    chk = sub.add_parser("check", help="degree checks").add_subparsers(dest="action", required=True)
    for name in ("subgroup", "normal", "identity"):
        p = chk.add_parser(name, parents=[common])
        p.add_argument("group", help="group JSON path or family:param")
        p.add_argument("subset", help="IFS document")
        p.add_argument("--lambda", dest="lam", type=_lambda)
    for name in ("subsemi", "kernel", "epsilon", "subsemi-star", "kernel-star"):
        p = chk.add_parser(name, parents=[common])
        p.add_argument("machine")
        p.add_argument("subset")
        p.add_argument("--lambda", dest="lam", type=_lambda,
                       help="defaults to the machine document's lambda")
        p.add_argument("--structure", choices=STRUCTURE_MODES)
        p.add_argument("--max-len", type=_nonneg, default=DEFAULT_MAX_LEN)
        p.add_argument("--mutate", action="store_true", help="negative control: corrupt composition")

    p = sub.add_parser("verify", parents=[common], help="search a theorem over a grid or sample")
    p.add_argument("theorem", choices=sorted(harness.THEOREMS))
    p.add_argument("--group", default="cyclic:2")
    p.add_argument("--denominator", type=_positive, default=1)
    p.add_argument("--alphabet-size", type=_positive, default=1)
    p.add_argument("--structured", action="store_true",
                   help="restrict the grid to degree-1 structured machines and subgroups")
    p.add_argument("--samples", type=_positive, help="random sampling instead of the full grid")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-len", type=_nonneg, default=DEFAULT_MAX_LEN)
    p.add_argument("--mutate", action="store_true", help="negative control: corrupt composition")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--cap", type=_positive, default=harness.DEFAULT_CAP)
    p.add_argument("--no-findings", action="store_true",
                   help="only look for hard counterexamples")
    p.add_argument("--junit", metavar="PATH", help="also write a JUnit XML summary")
    p.add_argument("--logic", choices=sorted(IMPLICATIONS), default="lukasiewicz",
                   help="implication for the comparison run (default lukasiewicz)")

    hom = sub.add_parser("hom", help="homomorphic image and preimage").add_subparsers(
        dest="action", required=True)
    for name in ("image", "preimage"):
        p = hom.add_parser(name, parents=[common])
        p.add_argument("source", help="source group")
        p.add_argument("target", help="target group")
        p.add_argument("--map", required=True, help="comma-separated images of 0..n-1")
        p.add_argument("subset")
    return parser


# ---------------------------------------------------------------------------

def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IfsaError(f"cannot read {path}: {exc}") from None


def _group(source):
    if source.endswith(".json"):
        return group_from_doc(_read_json(source))
    return load_group(source)


def _subset(path, n):
    return ifs_from_doc(_read_json(path), n)


def _machine(args):
    machine = load_machine(args.machine)
    if getattr(args, "structure", None):
        machine = dataclasses.replace(machine, structure=args.structure, _memo={})
    return machine


def _state(machine, token):
    try:
        return machine.group.element(token)
    except IfsaError as exc:
        from .errors import UnknownState

        raise UnknownState(str(exc)) from None


def _report_output(report, args, lam):
    if args.format == "json":
        doc = report.to_doc()
        if lam is not None:
            doc["lambda"] = format_truth(lam)
            doc["verdict"] = "PASS" if report.holds_at(lam) else "FAIL"
        return json.dumps(doc, indent=2)
    if args.format == "junit":
        return _junit_case(report.title, lam is not None and not report.holds_at(lam),
                           report.to_text(lam))
    return report.to_text(lam)


def _junit_case(name, failed, text):
    from xml.etree import ElementTree as ET

    suite = ET.Element("testsuite", name="ibifsa", tests="1", failures=str(int(failed)), errors="0")
    case = ET.SubElement(suite, "testcase", classname="ibifsa.check", name=name)
    if failed:
        ET.SubElement(case, "failure", message="verdict below lambda").text = text
    ET.SubElement(case, "system-out").text = text
    return ET.tostring(suite, encoding="unicode")


def _verdict_code(report, lam):
    return EXIT_FAIL if lam is not None and not report.holds_at(lam) else EXIT_OK


def cmd_group(args):
    if args.action == "make":
        group = make_standard(args.spec)
        return json.dumps(group.to_doc(), indent=2), EXIT_OK
    group = _group(args.source)
    info = {"valid": True, "name": group.name, "order": group.order,
            "identity": group.identity, "abelian": group.is_abelian()}
    if args.format == "json":
        return json.dumps(info, indent=2), EXIT_OK
    return (f"valid group {group.name or '(unnamed)'}: order {group.order}, identity "
            f"{group.names[group.identity]}, {'abelian' if info['abelian'] else 'non-abelian'}"), EXIT_OK


def cmd_machine(args):
    machine = _machine(args)
    if args.action == "validate":
        report = structure_report(machine)
        lam = args.lam if args.lam is not None else machine.lam
        if machine.structure == "none":
            lam = None
        return _report_output(report, args, lam), _verdict_code(report, lam)
    if args.action == "run":
        start, end = _state(machine, args.start), _state(machine, args.end)
        mu, nu = run_degree(machine, start, machine.parse_word(args.word), end)
        if args.format == "json":
            return json.dumps({"from": start, "to": end, "word": args.word,
                               "mu": format_truth(mu), "nu": format_truth(nu)}), EXIT_OK
        return f"mu={format_truth(mu)} nu={format_truth(nu)}", EXIT_OK
    # extend
    if args.word is not None:
        pair = extend_word(machine, args.word)
        doc = {"word": args.word,
               "mu": [[format_truth(v) for v in row] for row in pair.a_star],
               "nu": [[format_truth(v) for v in row] for row in pair.b_star]}
        if args.format == "json":
            return json.dumps(doc, indent=2), EXIT_OK
        lines = [f"word: {args.word!r}", "mu*:"] + ["  " + " ".join(r) for r in doc["mu"]]
        lines += ["nu*:"] + ["  " + " ".join(r) for r in doc["nu"]]
        return "\n".join(lines), EXIT_OK
    report = concat_equality_check(machine, args.max_len, args.mutate)
    failed = report.overall < 1
    return _report_output(report, args, 1), EXIT_FAIL if failed else EXIT_OK


def cmd_check(args):
    if args.action in ("subgroup", "normal", "identity"):
        group = _group(args.group)
        subset = _subset(args.subset, group.order)
        fn = {"subgroup": subgroup_report, "normal": normal_report,
              "identity": identity_report}[args.action]
        report = fn(group, subset, args.lam)
        return _report_output(report, args, args.lam), _verdict_code(report, args.lam)
    machine = _machine(args)
    subset = _subset(args.subset, machine.n_states)
    lam = args.lam if args.lam is not None else machine.lam
    if args.action in ("subsemi-star", "kernel-star"):
        fn = subsemi_star_degree if args.action == "subsemi-star" else kernel_star_degree
        report = fn(machine, subset, args.max_len, lam, mutate=args.mutate)
    else:
        fn = {"subsemi": subsemi_degree, "kernel": kernel_degree,
              "epsilon": kernel_epsilon_degree}[args.action]
        report = fn(machine, subset, lam)
    return _report_output(report, args, lam), _verdict_code(report, lam)


def cmd_verify(args):
    source = harness.make_source(args.group, args.denominator, args.samples, args.seed,
                                 args.alphabet_size, args.structured, args.cap)
    report = harness.search_counterexamples(
        args.theorem, source, args.max_len, args.mutate, args.logic,
        findings=not args.no_findings, workers=args.workers)
    if args.junit:
        with open(args.junit, "w", encoding="utf-8") as fh:
            fh.write(report.to_junit() + "\n")
    text = {"text": report.to_text, "json": report.to_json, "junit": report.to_junit}[args.format]()
    return text, report.exit_code


def cmd_hom(args):
    source, target = _group(args.source), _group(args.target)
    try:
        mapping = [int(v) for v in args.map.replace(",", " ").split()]
    except ValueError:
        raise IfsaError(f"--map must list integers, got {args.map!r}") from None
    hom = make_homomorphism(source, target, mapping)
    if args.action == "image":
        result = hom_image(hom, _subset(args.subset, source.order))
    else:
        result = hom_preimage(hom, _subset(args.subset, target.order))
    doc = result.to_doc()
    if args.format == "json":
        return json.dumps(doc, indent=2), EXIT_OK
    return f"mu: {' '.join(doc['mu'])}\nnu: {' '.join(doc['nu'])}", EXIT_OK


COMMANDS = {"group": cmd_group, "machine": cmd_machine, "check": cmd_check,
            "verify": cmd_verify, "hom": cmd_hom}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IfsaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError, TypeError, ValueError) as exc:
        # malformed documents surface here
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
