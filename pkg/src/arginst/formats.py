"""Instance loading, flattened-fact interchange and framework exporters.

Input files come in two styles, detected from the first non-comment line:

* fact style: ``kb(<term>).`` / ``cl(<term>).``, any number of facts per
  line, ``%`` or ``#`` comments;
* plain style: one formula per line (infix or prefix), ``#`` comments.

All text produced here is UTF-8 with LF line endings. Exporters return the
lines joined by ``\\n`` without a trailing newline; :func:`write_text`
appends one.
"""
from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .attacks import Attack, AttackType
from .formula import Formula, FormulaSyntaxError, parse_formula, print_formula
from .instantiate import DEFAULT_KB_CAP, Argument, ClaimSet, KnowledgeBase
from .logic import DEFAULT_ATOM_CAP
from .semantics import DEFAULT_EXTENSION_CAP, ArgumentationFramework

__all__ = [
    "InstanceError",
    "ProblemInstance",
    "read_formulas",
    "load_instance",
    "emit_flat_facts",
    "parse_flat_facts",
    "export_apx",
    "export_dot",
    "export_json",
    "import_json",
    "argument_label",
    "write_text",
]

_FACT_START = re.compile(r"\s*(kb|cl)\s*\(")
_FACT_HEAD = re.compile(r"\s*([a-z][a-zA-Z0-9_]*)\s*\(")


class InstanceError(ValueError):
    """Malformed or unusable input file."""


@dataclass
class ProblemInstance:
    kb: KnowledgeBase
    claims: ClaimSet
    kb_path: Path | None = None
    claims_path: Path | None = None
    atom_cap: int = DEFAULT_ATOM_CAP
    kb_cap: int = DEFAULT_KB_CAP
    extension_cap: int = DEFAULT_EXTENSION_CAP

    def __post_init__(self) -> None:
        for name in ("atom_cap", "kb_cap", "extension_cap"):
            if getattr(self, name) <= 0:
                raise InstanceError(f"{name} must be positive")


# --------------------------------------------------------------------------
# reading


def _strip_comment(line: str, markers: str) -> str:
    cut = [i for i in (line.find(m) for m in markers) if i >= 0]
    return line[: min(cut)] if cut else line


def _is_fact_style(lines: Sequence[str]) -> bool:
    for line in lines:
        content = _strip_comment(line, "%#").strip()
        if content:
            return _FACT_START.match(content) is not None
    return False


def _scan_facts(text: str, source: str, predicates: Sequence[str]):
    """Yield ``(predicate, inner_text, lineno, offset)`` per ``p(...).`` fact."""
    lines = text.split("\n")
    body = "\n".join(_strip_comment(line, "%#") for line in lines)
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos >= len(body):
            return
        lineno = body.count("\n", 0, pos) + 1
        m = _FACT_HEAD.match(body, pos)
        if m is None or m.group(1) not in predicates:
            raise InstanceError(f"{source}:{lineno}: expected a {'/'.join(predicates)} fact")
        depth = 1
        i = m.end()
        start = i
        while i < len(body) and depth:
            if body[i] == "(":
                depth += 1
            elif body[i] == ")":
                depth -= 1
            i += 1
        if depth:
            raise InstanceError(f"{source}:{lineno}: unbalanced parentheses")
        inner = body[start : i - 1]
        j = i
        while j < len(body) and body[j] in " \t":
            j += 1
        if j >= len(body) or body[j] != ".":
            raise InstanceError(f"{source}:{lineno}: fact must end with '.'")
        yield m.group(1), inner, lineno, start
        pos = j + 1


def _parse_at(text: str, source: str, lineno: int) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        raise InstanceError(f"{source}:{lineno}: {exc}") from exc


def read_formulas(path: str | os.PathLike, role: str | None = None) -> dict[str, list[Formula]]:
    """Read a formula file; returns ``{"kb": [...], "cl": [...]}``.

    ``role`` (``"kb"`` or ``"cl"``) says what the file is meant to hold:
    plain-style lines are assigned to it and facts of the other predicate
    are rejected. With ``role=None`` the file must be fact style and may
    carry both predicates.
    """
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {source}: {exc.strerror or exc}") from exc
    lines = text.splitlines()
    found: dict[str, list[Formula]] = {"kb": [], "cl": []}
    if _is_fact_style(lines):
        for pred, inner, lineno, _ in _scan_facts(text, source, ("kb", "cl")):
            if role is not None and pred != role:
                raise InstanceError(
                    f"{source}:{lineno}: {pred}/1 fact in a file that must hold only {role}/1 facts"
                )
            found[pred].append(_parse_at(inner, source, lineno))
        return found
    if role is None:
        if any(_strip_comment(line, "#").strip() for line in lines):
            raise InstanceError(f"{source}: plain-style file needs a role (knowledge base or claims)")
        return found
    for lineno, line in enumerate(lines, start=1):
        content = _strip_comment(line, "#").strip()
        if content:
            found[role].append(_parse_at(content, source, lineno))
    return found


def load_instance(
    kb_path: str | os.PathLike,
    claims_path: str | os.PathLike | None = None,
    *,
    atom_cap: int = DEFAULT_ATOM_CAP,
    kb_cap: int = DEFAULT_KB_CAP,
    extension_cap: int = DEFAULT_EXTENSION_CAP,
) -> ProblemInstance:
    """Load a knowledge base and claim set.

    Without ``claims_path`` the KB file must be fact style and supply both
    ``kb/1`` and ``cl/1`` facts, as in a single ASP input program.
    """
    if claims_path is None:
        both = read_formulas(kb_path, None)
        kb_formulas, claim_formulas = both["kb"], both["cl"]
    else:
        kb_formulas = read_formulas(kb_path, "kb")["kb"]
        claim_formulas = read_formulas(claims_path, "cl")["cl"]
    if not kb_formulas:
        raise InstanceError(f"{kb_path}: knowledge base is empty; arguments need a nonempty support")
    return ProblemInstance(
        kb=KnowledgeBase(kb_formulas),
        claims=ClaimSet(claim_formulas),
        kb_path=Path(kb_path),
        claims_path=Path(claims_path) if claims_path is not None else None,
        atom_cap=atom_cap,
        kb_cap=kb_cap,
        extension_cap=extension_cap,
    )


# --------------------------------------------------------------------------
# flattened facts


def emit_flat_facts(args: Sequence[Argument], kb: Sequence[Formula], cs: Sequence[Formula]) -> str:
    lines = []
    for arg in sorted(args, key=lambda a: a.id):
        for f in arg.support_formulas(kb):
            lines.append(f"as({arg.id},fs,{print_formula(f, 'prefix')}).")
        lines.append(f"as({arg.id},sclaim,{print_formula(arg.claim_formula(cs), 'prefix')}).")
    return "\n".join(lines)


_AS_ARGS = re.compile(r"\s*(\d+)\s*,\s*(fs|sclaim)\s*,(.*)\Z", re.S)


def parse_flat_facts(
    text: str, kb: Sequence[Formula], cs: Sequence[Formula], source: str = "<facts>"
) -> list[Argument]:
    """Rebuild arguments from ``as/3`` facts, resolving formulas against
    ``kb`` and ``cs`` by structural equality."""
    supports: dict[int, int] = {}
    claims: dict[int, int] = {}
    for _, inner, lineno, _ in _scan_facts(text, source, ("as",)):
        m = _AS_ARGS.match(inner)
        if m is None:
            raise InstanceError(f"{source}:{lineno}: malformed as/3 fact")
        ident, fieldname = int(m.group(1)), m.group(2)
        f = _parse_at(m.group(3), source, lineno)
        if fieldname == "fs":
            try:
                supports[ident] = supports.get(ident, 0) | (1 << kb.index(f))
            except ValueError:
                raise InstanceError(f"{source}:{lineno}: {f} is not in the knowledge base") from None
        else:
            if ident in claims:
                raise InstanceError(f"{source}:{lineno}: argument {ident} has two claims")
            try:
                claims[ident] = cs.index(f)
            except ValueError:
                raise InstanceError(f"{source}:{lineno}: {f} is not in the claim set") from None
    if set(supports) != set(claims):
        raise InstanceError(f"{source}: every argument needs at least one fs and exactly one sclaim")
    return [Argument(i, supports[i], claims[i]) for i in sorted(supports)]


# --------------------------------------------------------------------------
# exporters


def export_apx(af: ArgumentationFramework) -> str:
    lines = [f"arg(a{i})." for i in range(1, af.n + 1)]
    lines += [f"att(a{a},a{b})." for a, b in af.sorted_attacks()]
    return "\n".join(lines)


def argument_label(arg: Argument, kb: Sequence[Formula], cs: Sequence[Formula]) -> str:
    support = ", ".join(print_formula(f, "prefix") for f in arg.support_formulas(kb))
    return f"a{arg.id}: {print_formula(arg.claim_formula(cs), 'prefix')} ⊢ {{{support}}}"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(af: ArgumentationFramework, labels: Mapping[int, str] | None = None) -> str:
    """DOT digraph; ``labels`` maps argument ids to node text."""
    lines = ["digraph af {"]
    for i in range(1, af.n + 1):
        text = labels.get(i, f"a{i}") if labels else f"a{i}"
        lines.append(f"  a{i} [label={_dot_quote(text)}];")
    for a, b in af.sorted_attacks():
        lines.append(f"  a{a} -> a{b};")
    lines.append("}")
    return "\n".join(lines)


def export_json(
    args: Sequence[Argument],
    attacks: Sequence[Attack],
    kb: Sequence[Formula],
    cs: Sequence[Formula],
) -> str:
    doc = {
        "arguments": [
            {
                "id": a.id,
                "support": [print_formula(f, "prefix") for f in a.support_formulas(kb)],
                "claim": print_formula(a.claim_formula(cs), "prefix"),
            }
            for a in sorted(args, key=lambda a: a.id)
        ],
        "attacks": [
            {"from": t.source, "to": t.target, "kind": t.kind.wire_name}
            for t in sorted(attacks, key=Attack.sort_key)
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def import_json(
    text: str, kb: Sequence[Formula], cs: Sequence[Formula]
) -> tuple[list[Argument], list[Attack]]:
    """Inverse of :func:`export_json` for a known knowledge base and claim set."""
    try:
        doc = json.loads(text)
        args = []
        for entry in doc["arguments"]:
            mask = 0
            for term in entry["support"]:
                mask |= 1 << kb.index(parse_formula(term))
            args.append(Argument(int(entry["id"]), mask, cs.index(parse_formula(entry["claim"]))))
        attacks = [
            Attack(int(e["from"]), int(e["to"]), AttackType.parse(e["kind"])) for e in doc["attacks"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed framework document: {exc}") from exc
    return args, attacks


def write_text(path: str | os.PathLike, text: str) -> None:
    """Atomically replace ``path`` with ``text`` plus a final newline."""
    data = (text + "\n" if text else "").encode("utf-8")
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
