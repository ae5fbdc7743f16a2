"""Command-line pipeline: load, instantiate, flatten, attack, assemble, evaluate.

Subcommands::

    arguments                     list the instantiated arguments
    attacks --type KIND           list attack(X,Y) facts for one attack kind
    framework --type KIND         summary of the assembled framework
    extensions --semantics SEM    stable extensions or conflict-free sets
    export --format FMT           apx | dot | json | facts
    run                           whole pipeline, every product to its own file
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Sequence

from .attacks import Attack, AttackType, compute_attacks
from .formats import (
    ProblemInstance,
    argument_label,
    emit_flat_facts,
    export_apx,
    export_dot,
    export_json,
    load_instance,
    write_text,
)
from .formula import print_formula
from .instantiate import DEFAULT_KB_CAP, Argument, enumerate_arguments
from .logic import DEFAULT_ATOM_CAP
from .semantics import (
    DEFAULT_EXTENSION_CAP,
    ArgumentationFramework,
    conflict_free_sets,
    stable_extensions,
)

log = logging.getLogger("arginst")

SEMANTICS = ("stable", "conflict_free")
FORMATS = ("apx", "dot", "json", "facts")


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineResult:
    instance: ProblemInstance
    arguments: list[Argument]
    facts: str
    attacks: list[Attack]
    af_kind: AttackType
    af: ArgumentationFramework
    extensions: list[frozenset[int]] | None = None
    semantics: str | None = None


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except Exception as exc:  # surfaced with the stage that failed
        raise PipelineError(name, exc) from exc


def build(
    instance: ProblemInstance,
    kinds: Sequence[AttackType] = (AttackType.DIRECT_DEFEAT,),
    *,
    semantics: str | None = None,
) -> PipelineResult:
    """Run the pipeline in memory. The framework uses the first of ``kinds``."""
    if not kinds:
        raise ValueError("at least one attack kind is required")
    kb, cs = instance.kb, instance.claims
    args = _stage(
        "arguments",
        enumerate_arguments,
        kb,
        cs,
        atom_cap=instance.atom_cap,
        kb_cap=instance.kb_cap,
    )
    facts = _stage("flatten", emit_flat_facts, args, kb, cs)
    attacks = _stage(
        "attacks", compute_attacks, args, kinds, kb, cs, atom_cap=instance.atom_cap
    )
    af_kind = kinds[0]
    af = _stage(
        "framework",
        ArgumentationFramework.from_attacks,
        len(args),
        [a for a in attacks if a.kind is af_kind],
    )
    result = PipelineResult(instance, args, facts, attacks, af_kind, af)
    if semantics is not None:
        search = stable_extensions if semantics == "stable" else conflict_free_sets
        result.extensions = _stage(
            "extensions", search, af, extension_cap=instance.extension_cap
        )
        result.semantics = semantics
    return result


def render(result: PipelineResult, fmt: str, *, labels: bool = False) -> str:
    kb, cs = result.instance.kb, result.instance.claims
    if fmt == "apx":
        return export_apx(result.af)
    if fmt == "dot":
        names = {a.id: argument_label(a, kb, cs) for a in result.arguments} if labels else None
        return export_dot(result.af, names)
    if fmt == "json":
        return export_json(result.arguments, result.attacks, kb, cs)
    if fmt == "facts":
        return result.facts
    raise ValueError(f"unknown format {fmt!r}")


def format_extensions(exts: Sequence[frozenset[int]]) -> str:
    return "\n".join("{" + ",".join(f"a{i}" for i in sorted(e)) + "}" for e in exts)


def format_arguments(result: PipelineResult) -> str:
    kb, cs = result.instance.kb, result.instance.claims
    lines = []
    for a in result.arguments:
        support = ", ".join(print_formula(f, "infix") for f in a.support_formulas(kb))
        lines.append(f"a{a.id} = ({{{support}}}, {print_formula(a.claim_formula(cs), 'infix')})")
    return "\n".join(lines)


def format_attacks(result: PipelineResult) -> str:
    return "\n".join(f"attack({a.source},{a.target})." for a in result.attacks)


def format_framework(result: PipelineResult) -> str:
    lines = [
        f"arguments: {result.af.n}",
        f"attacks ({result.af_kind.wire_name}): {len(result.af.att)}",
        format_arguments(result),
    ]
    lines += [f"a{a} -> a{b}" for a, b in result.af.sorted_attacks()]
    return "\n".join(line for line in lines if line)


def run_pipeline(
    instance: ProblemInstance,
    kinds: Sequence[AttackType] = (AttackType.DIRECT_DEFEAT,),
    outputs: dict[str, str] | None = None,
    *,
    semantics: str | None = "stable",
    labels: bool = False,
) -> int:
    """Run every stage and write the requested products.

    ``outputs`` maps product names (``facts``, ``apx``, ``dot``, ``json``,
    ``extensions``) to file paths. Returns a process exit status.
    """
    outputs = outputs or {}
    try:
        result = build(instance, kinds, semantics=semantics)
        for name, path in outputs.items():
            if name == "extensions":
                if result.extensions is None:
                    raise PipelineError("export", ValueError("no semantics requested"))
                text = format_extensions(result.extensions)
            else:
                text = _stage("export", render, result, name, labels=labels)
            _stage("write", write_text, path, text)
    except PipelineError as exc:
        log.error("stage %s failed: %s", exc.stage, exc.cause)
        return 1
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _kind(text: str) -> AttackType:
    try:
        return AttackType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kb", required=True, help="knowledge base file")
    common.add_argument(
        "--claims", help="claims file (omit when the kb file carries cl/1 facts too)"
    )
    common.add_argument("--atom-cap", type=_positive, default=DEFAULT_ATOM_CAP)
    common.add_argument("--kb-cap", type=_positive, default=DEFAULT_KB_CAP)
    common.add_argument("--extension-cap", type=_positive, default=DEFAULT_EXTENSION_CAP)
    common.add_argument("--out", default="-", help="output file, '-' for stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument(
        "--type",
        dest="kind",
        type=_kind,
        default=AttackType.DIRECT_DEFEAT,
        metavar="{defeat,direct_defeat}",
    )

    parser = argparse.ArgumentParser(
        prog="arginst",
        description="Instantiate argumentation frameworks from a propositional knowledge base.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("arguments", parents=[common], help="list arguments")
    sub.add_parser("attacks", parents=[common, typed], help="list attacks of one kind")
    sub.add_parser("framework", parents=[common, typed], help="summarize the framework")
    ext = sub.add_parser("extensions", parents=[common, typed], help="evaluate semantics")
    ext.add_argument("--semantics", choices=SEMANTICS, default="stable")
    exp = sub.add_parser("export", parents=[common, typed], help="export the framework")
    exp.add_argument("--format", choices=FORMATS, required=True)
    exp.add_argument("--labels", action="store_true", help="DOT: label nodes with claim and support")

    run = sub.add_parser("run", parents=[common], help="run the whole pipeline")
    run.add_argument(
        "--type",
        dest="kinds",
        type=_kind,
        action="append",
        metavar="{defeat,direct_defeat}",
        help="attack kind; repeatable, the first one forms the framework",
    )
    run.add_argument("--semantics", choices=SEMANTICS, default="stable")
    run.add_argument("--labels", action="store_true")
    for name in ("facts", "apx", "dot", "json", "extensions"):
        run.add_argument(f"--{name}-out", metavar="PATH")
    return parser


def _emit(text: str, out: str) -> None:
    if out == "-":
        if text:
            sys.stdout.write(text + "\n")
    else:
        write_text(out, text)


def main(argv: Sequence[str] | None = None) -> int:
    opts = make_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if opts.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        instance = _stage(
            "load",
            load_instance,
            opts.kb,
            opts.claims,
            atom_cap=opts.atom_cap,
            kb_cap=opts.kb_cap,
            extension_cap=opts.extension_cap,
        )
    except PipelineError as exc:
        log.error("stage %s failed: %s", exc.stage, exc.cause)
        return 1

    if opts.command == "run":
        kinds = opts.kinds or [AttackType.DIRECT_DEFEAT]
        outputs = {
            name: getattr(opts, f"{name}_out")
            for name in ("facts", "apx", "dot", "json", "extensions")
            if getattr(opts, f"{name}_out")
        }
        return run_pipeline(
            instance, kinds, outputs, semantics=opts.semantics, labels=opts.labels
        )

    kinds = [getattr(opts, "kind", AttackType.DIRECT_DEFEAT)]
    semantics = opts.semantics if opts.command == "extensions" else None
    try:
        result = build(instance, kinds, semantics=semantics)
        if opts.command == "arguments":
            text = format_arguments(result)
        elif opts.command == "attacks":
            text = format_attacks(result)
        elif opts.command == "framework":
            text = format_framework(result)
        elif opts.command == "extensions":
            text = format_extensions(result.extensions)
        else:
            text = _stage("export", render, result, opts.format, labels=opts.labels)
        _stage("write", _emit, text, opts.out)
    except PipelineError as exc:
        log.error("stage %s failed: %s", exc.stage, exc.cause)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
