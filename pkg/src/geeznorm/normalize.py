"""Rule tables that merge same-sound characters.

A :class:`SchemeTable` carries two kinds of rules:

* ``char_rules``: one character to one character, applied everywhere;
* ``seq_rules``: short character sequences rewritten in a single
  left-to-right, longest-match pass (used for labialized spellings such as
  ``ሉዋ`` for ``ሏ``).

Character rules run first, then the sequence pass. Sequence sources are
stored in their character-normalized form, which is what makes a validated
table idempotent.
"""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import re
import warnings
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

import yaml

from .ethiopic import ROW_SIZE, compose, decompose, family_of, try_compose

log = logging.getLogger(__name__)


class SchemeKind(str, enum.Enum):
    IDENTITY = "identity"
    H_ONLY = "h-only"
    HSL = "hsl"

    @classmethod
    def parse(cls, value: Union[str, "SchemeKind"]) -> "SchemeKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"no-norm": "identity", "none": "identity", "honly": "h-only"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown scheme {value!r}; expected identity, h-only or hsl") from None


# Which schemes make sense for which language.
SUPPORTED_SCHEMES = {
    "amharic": {SchemeKind.IDENTITY, SchemeKind.H_ONLY, SchemeKind.HSL},
    "tigrinya": {SchemeKind.IDENTITY, SchemeKind.H_ONLY},
    "geez": {SchemeKind.IDENTITY},
}


class UnsupportedSchemeError(ValueError):
    pass


class TableParseError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None, source: str = "<table>"):
        self.lineno = lineno
        where = f"{source}:{lineno}" if lineno is not None else source
        super().__init__(f"{where}: {message}")


class TableValidationError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid scheme table:\n  " + "\n  ".join(self.violations))


class CanonicalFallbackWarning(UserWarning):
    """A homophone group never occurred in the corpus."""


@dataclass(frozen=True)
class FamilyGroup:
    members: frozenset
    target: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if len(self.members) < 2:
            raise ValueError(f"a homophone group needs at least two families, got {sorted(self.members)}")
        if self.target is not None and self.target not in self.members:
            raise ValueError(f"target family {self.target} is not a member of {sorted(self.members)}")

    @classmethod
    def from_chars(cls, members: Iterable[str], target: Optional[str] = None) -> "FamilyGroup":
        return cls(
            frozenset(family_of(c) for c in members),
            None if target is None else family_of(target),
        )

    def with_target(self, target: int) -> "FamilyGroup":
        return FamilyGroup(self.members, target)

    def describe(self) -> str:
        names = ",".join(compose(f, 0) for f in sorted(self.members))
        if self.target is None:
            return "{" + names + "}"
        return "{" + names + "}->" + compose(self.target, 0)


@dataclass(frozen=True)
class SchemeTable:
    language: str
    kind: SchemeKind
    char_rules: Mapping[str, str] = field(default_factory=dict)
    seq_rules: tuple = ()
    groups: tuple = ()

    @cached_property
    def _translation(self) -> dict:
        return {ord(s): d for s, d in self.char_rules.items()}

    @cached_property
    def _seq_pattern(self) -> Optional[re.Pattern]:
        if not self.seq_rules:
            return None
        # Alternation tries longest sources first, which gives longest-match.
        sources = sorted((s for s, _ in self.seq_rules), key=lambda s: (-len(s), s))
        return re.compile("|".join(re.escape(s) for s in sources))

    @cached_property
    def _seq_lookup(self) -> dict:
        return dict(self.seq_rules)

    @property
    def is_char_only(self) -> bool:
        return not self.seq_rules

    @property
    def name(self) -> str:
        return self.kind.value

    def content_hash(self) -> str:
        payload = json.dumps(
            {
                "language": self.language,
                "kind": self.kind.value,
                "char_rules": sorted(self.char_rules.items()),
                "seq_rules": [list(r) for r in self.seq_rules],
            },
            ensure_ascii=False,
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def identity_table(language: str) -> SchemeTable:
    return SchemeTable(language, SchemeKind.IDENTITY)


def _check_disjoint(groups: Sequence[FamilyGroup]) -> list[str]:
    problems = []
    seen: dict[int, FamilyGroup] = {}
    for group in groups:
        for fam in sorted(group.members):
            if fam in seen:
                problems.append(
                    f"groups {seen[fam].describe()} and {group.describe()} overlap on family {compose(fam, 0)}"
                )
            else:
                seen[fam] = group
    return problems


def expand_family_groups(groups: Sequence[FamilyGroup]) -> dict[str, str]:
    """Turn family-level groups into per-character rules.

    Each vowel order maps onto the same order of the target row. When the
    target slot is a Unicode gap the source character is left alone.
    """
    problems = _check_disjoint(groups)
    if problems:
        raise ValueError("; ".join(problems))
    return _expand(groups)


def _expand(groups: Sequence[FamilyGroup]) -> dict[str, str]:
    rules: dict[str, str] = {}
    for group in groups:
        if group.target is None:
            raise ValueError(f"group {group.describe()} has no target family")
        for fam in sorted(group.members - {group.target}):
            for order in range(ROW_SIZE):
                src = try_compose(fam, order)
                dst = try_compose(group.target, order)
                if src is not None and dst is not None:
                    rules[src] = dst
    return rules


def family_frequencies(corpus: Iterable[str]) -> tuple[Counter, int]:
    counts: Counter = Counter()
    lines = 0
    for line in corpus:
        lines += 1
        for ch in line:
            syl = decompose(ch)
            if syl is not None:
                counts[syl.family] += 1
    return counts, lines


def select_canonical_by_frequency(groups: Sequence[FamilyGroup], corpus: Iterable[str]) -> list[FamilyGroup]:
    """Pick each group's most frequent family as its target.

    Frequency sums every vowel order of a family. Ties go to the lowest
    family index. A group that never occurs falls back to its lowest index
    and emits :class:`CanonicalFallbackWarning`.
    """
    counts, lines = family_frequencies(corpus)
    if lines == 0:
        raise ValueError("cannot select canonical characters from an empty corpus")
    selected = []
    for group in groups:
        ranked = sorted(group.members, key=lambda f: (-counts[f], f))
        if counts[ranked[0]] == 0:
            warnings.warn(
                f"no member of {FamilyGroup(group.members).describe()} occurs in the corpus; using {compose(ranked[0], 0)}",
                CanonicalFallbackWarning,
                stacklevel=2,
            )
        selected.append(group.with_target(ranked[0]))
    return selected


def apply(table: SchemeTable, text: str) -> str:
    if table.char_rules:
        text = text.translate(table._translation)
    pattern = table._seq_pattern
    if pattern is not None:
        lookup = table._seq_lookup
        text = pattern.sub(lambda m: lookup[m.group(0)], text)
    return text


def validate(table: SchemeTable) -> list[str]:
    """List every reason the table might not be idempotent. Empty means ok."""
    problems: list[str] = []
    char_rules = table.char_rules
    if table.kind is SchemeKind.IDENTITY and (char_rules or table.seq_rules):
        problems.append("identity table must not carry rules")
    for src, dst in char_rules.items():
        if len(src) != 1 or len(dst) != 1:
            problems.append(f"char rule {src!r} -> {dst!r} is not single-character")
            continue
        if src == dst:
            problems.append(f"char rule {src} -> {dst} maps a character to itself")
        elif dst in char_rules:
            problems.append(f"char rule {src} -> {dst}: output {dst} is itself a rule source")
    seq_chars = {ch for s, _ in table.seq_rules for ch in s}
    seen: dict[str, str] = {}
    for src, dst in table.seq_rules:
        if not src:
            problems.append("seq rule with an empty source")
            continue
        if src in seen and seen[src] != dst:
            problems.append(f"seq rule {src} has conflicting outputs {seen[src]} and {dst}")
        seen[src] = dst
        for ch in src:
            if ch in char_rules:
                problems.append(f"seq rule {src} -> {dst}: source character {ch} is rewritten by a char rule")
        for ch in dst:
            if ch in char_rules:
                problems.append(f"seq rule {src} -> {dst}: output {ch} is a char rule source")
            if ch in seq_chars:
                problems.append(f"seq rule {src} -> {dst}: output {ch} occurs in a seq rule source")
    problems.extend(_check_disjoint(table.groups))
    return problems


def _resolve(groups: Sequence[FamilyGroup], extra_chars: Sequence[tuple], extra_seqs: Sequence[tuple]):
    """Merge group rules with hand-written rules into one chain-free table.

    Hand-written rules are read through the group mapping, then the combined
    map is iterated to a fixed point so no output is ever a source.
    """
    base = expand_family_groups(groups)

    def g(s: str) -> str:
        return "".join(base.get(ch, ch) for ch in s)

    extra: dict[str, str] = {}
    for src, dst in extra_chars:
        key, val = g(src), g(dst)
        if key == val:
            continue
        if key in extra and extra[key] != val:
            raise ValueError(f"char rules for {src} disagree: {extra[key]} vs {val}")
        extra[key] = val

    def final(ch: str) -> str:
        seen = [ch]
        cur = g(ch)
        while True:
            nxt = g(extra.get(cur, cur))
            if nxt == cur:
                return cur
            if nxt in seen:
                raise ValueError(f"char rules form a cycle through {' -> '.join(seen + [nxt])}")
            seen.append(cur)
            cur = nxt

    domain = set(base) | {s for s, _ in extra_chars} | set(extra)
    char_rules = {}
    for ch in sorted(domain):
        out = final(ch)
        if out != ch:
            char_rules[ch] = out

    def f(s: str) -> str:
        return "".join(char_rules.get(ch, ch) for ch in s)

    seq: dict[str, str] = {}
    for src, dst in extra_seqs:
        key, val = f(src), f(dst)
        if key in seq and seq[key] != val:
            raise ValueError(f"seq rules for {src} disagree: {seq[key]} vs {val}")
        seq.setdefault(key, val)
    return char_rules, tuple(seq.items())


@dataclass
class TableSpec:
    """A scheme table file as written, before targets are chosen."""

    language: str
    kind: SchemeKind
    groups: list
    char_rules: list
    seq_rules: list
    source: str = "<table>"


_ARROW = re.compile(r"\s*(?:→|->)\s*")


def _parse_rule(node, source: str, single: bool) -> tuple:
    lineno = node.start_mark.line + 1
    if not isinstance(node, yaml.ScalarNode):
        raise TableParseError("rule must be a string 'src → dst'", lineno, source)
    parts = _ARROW.split(node.value.strip())
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise TableParseError(f"cannot parse rule {node.value!r}; expected 'src → dst'", lineno, source)
    src, dst = parts
    if single and (len(src) != 1 or len(dst) != 1):
        raise TableParseError(f"char rule {node.value!r} must map one character to one character", lineno, source)
    return src, dst


def _parse_group(node, source: str) -> FamilyGroup:
    lineno = node.start_mark.line + 1
    if not isinstance(node, yaml.MappingNode):
        raise TableParseError("group must be a mapping with 'members' and optional 'target'", lineno, source)
    members, target = None, None
    for key, value in node.value:
        if key.value == "members":
            if not isinstance(value, yaml.SequenceNode):
                raise TableParseError("'members' must be a list of base characters", value.start_mark.line + 1, source)
            members = [item.value for item in value.value]
        elif key.value == "target":
            target = value.value or None
        else:
            raise TableParseError(f"unknown group field {key.value!r}", key.start_mark.line + 1, source)
    if members is None:
        raise TableParseError("group without 'members'", lineno, source)
    try:
        for ch in members + ([target] if target else []):
            syl = decompose(ch) if len(ch) == 1 else None
            if syl is None:
                raise ValueError(f"{ch!r} is not an Ethiopic syllable")
        return FamilyGroup.from_chars(members, target)
    except ValueError as exc:
        raise TableParseError(str(exc), lineno, source) from None


def parse_table(text: str, source: str = "<table>") -> TableSpec:
    """Parse a scheme table document (YAML). Errors carry line numbers."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise TableParseError(str(getattr(exc, "problem", exc)), mark.line + 1 if mark else None, source) from None
    if not isinstance(root, yaml.MappingNode):
        raise TableParseError("table must be a mapping", 1, source)
    fields = {}
    for key, value in root.value:
        fields[key.value] = value
    known = {"language", "kind", "groups", "char_rules", "seq_rules"}
    for name, node in fields.items():
        if name not in known:
            raise TableParseError(f"unknown field {name!r}", node.start_mark.line + 1, source)
    for required in ("language", "kind"):
        if required not in fields:
            raise TableParseError(f"missing field {required!r}", 1, source)
    try:
        kind = SchemeKind.parse(fields["kind"].value)
    except ValueError as exc:
        raise TableParseError(str(exc), fields["kind"].start_mark.line + 1, source) from None

    def items(name):
        node = fields.get(name)
        if node is None or (isinstance(node, yaml.ScalarNode) and node.value in ("", "null", "~")):
            return []
        if not isinstance(node, yaml.SequenceNode):
            raise TableParseError(f"{name!r} must be a list", node.start_mark.line + 1, source)
        return node.value

    return TableSpec(
        language=fields["language"].value.strip().lower(),
        kind=kind,
        groups=[_parse_group(n, source) for n in items("groups")],
        char_rules=[_parse_rule(n, source, single=True) for n in items("char_rules")],
        seq_rules=[_parse_rule(n, source, single=False) for n in items("seq_rules")],
        source=source,
    )


def load_table_file(path: Union[str, Path]) -> TableSpec:
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except UnicodeDecodeError as exc:
        raise TableParseError(f"not valid UTF-8: {exc}", None, str(path)) from None
    return parse_table(text, str(path))


def default_table_spec(kind: SchemeKind, language: str) -> TableSpec:
    name = f"{language}-{kind.value}.yaml"
    res = resources.files("geeznorm.data.schemes").joinpath(name)
    return parse_table(res.read_text("utf-8"), f"<default {name}>")


def check_supported(kind: Union[str, SchemeKind], language: str) -> SchemeKind:
    kind = SchemeKind.parse(kind)
    if language not in SUPPORTED_SCHEMES:
        raise UnsupportedSchemeError(f"unknown language {language!r}; expected one of {sorted(SUPPORTED_SCHEMES)}")
    if kind not in SUPPORTED_SCHEMES[language]:
        allowed = ", ".join(sorted(k.value for k in SUPPORTED_SCHEMES[language]))
        raise UnsupportedSchemeError(
            f"scheme {kind.value!r} is not applicable to {language} (supported: {allowed})"
        )
    return kind


def build_scheme(
    kind: Union[str, SchemeKind],
    language: str,
    corpus: Optional[Iterable[str]] = None,
    table_file: Union[str, Path, None] = None,
) -> SchemeTable:
    """Build and validate the table for one normalization setting.

    When ``corpus`` is given, each group's target is its most frequent
    family there, overriding targets written in the table file.
    """
    kind = check_supported(kind, language)
    if kind is SchemeKind.IDENTITY:
        return identity_table(language)

    if table_file is None or str(table_file) == "default":
        spec = default_table_spec(kind, language)
    else:
        spec = load_table_file(table_file)
    if spec.language != language:
        raise UnsupportedSchemeError(f"{spec.source} is a {spec.language} table, not {language}")
    if spec.kind is not kind:
        raise UnsupportedSchemeError(f"{spec.source} is a {spec.kind.value} table, not {kind.value}")

    groups = spec.groups
    if corpus is not None:
        groups = select_canonical_by_frequency(groups, corpus)
    elif any(g.target is None for g in groups):
        raise ValueError(f"{spec.source}: groups without targets need a corpus to pick the most frequent family")

    try:
        char_rules, seq_rules = _resolve(groups, spec.char_rules, spec.seq_rules)
    except ValueError as exc:
        raise TableValidationError([str(exc)]) from None
    table = SchemeTable(language, kind, char_rules, seq_rules, tuple(groups))
    problems = validate(table)
    if problems:
        raise TableValidationError(problems)
    log.debug("built %s/%s: %d char rules, %d seq rules", language, kind.value, len(char_rules), len(seq_rules))
    return table


def dump_table(table: SchemeTable) -> str:
    """Serialize a built table in the table-file grammar."""
    doc = {
        "language": table.language,
        "kind": table.kind.value,
        "groups": [
            {
                "members": [compose(f, 0) for f in sorted(g.members)],
                **({"target": compose(g.target, 0)} if g.target is not None else {}),
            }
            for g in table.groups
        ],
        "char_rules": [f"{s} → {d}" for s, d in sorted(table.char_rules.items())],
        "seq_rules": [f"{s} → {d}" for s, d in table.seq_rules],
    }
    return yaml.safe_dump(doc, allow_unicode=True, sort_keys=False)


def table_from_spec(spec: TableSpec) -> SchemeTable:
    """Compile a fully targeted table file without the language gate (used by ``validate-table``)."""
    char_rules, seq_rules = _resolve(spec.groups, spec.char_rules, spec.seq_rules)
    return SchemeTable(spec.language, spec.kind, char_rules, seq_rules, tuple(spec.groups))


def raw_table_from_spec(spec: TableSpec) -> SchemeTable:
    """The table exactly as written (group rules plus literal rules), without chain resolution."""
    rules = _expand([g for g in spec.groups if g.target is not None])
    rules.update(dict(spec.char_rules))
    return SchemeTable(spec.language, spec.kind, rules, tuple(spec.seq_rules), tuple(spec.groups))
