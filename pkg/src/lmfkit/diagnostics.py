"""Coded diagnostics, the code registry, and report rendering."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

SEVERITIES = ("error", "warning", "info")

# code -> (severity, description)
_REGISTRY: dict[str, tuple[str, str]] = {
    "E-XML-MALFORMED": ("error", "document is not well-formed XML"),
    "E-XML-ENCODING": ("error", "document is not UTF-8 or declares another encoding"),
    "E-IO": ("error", "file could not be read"),
    "E-PROFILE-ELEMENT": ("error", "element outside the serialization profile"),
    "E-PROFILE-ATTR": ("error", "attribute outside the profile, or a required attribute is missing"),
    "E-PROFILE-VALUE": ("error", "attribute value outside the profile vocabulary or datatype"),
    "E-PROFILE-CONTENT": ("error", "containment, ordering, cardinality or text rule violated"),
    "E-ID-DUP": ("error", "identifier declared more than once"),
    "E-ID-SYNTAX": ("error", "identifier is not an XML NCName"),
    "E-REF-DANGLING": ("error", "reference to an identifier that does not exist"),
    "E-REF-KIND": ("error", "reference resolves to a node of the wrong kind"),
    "E-LEMMA-MISSING": ("error", "lexical entry has no lemma"),
    "E-LEMMA-MULTIPLE": ("error", "lexical entry has more than one lemma"),
    "E-FORM-EMPTY": ("error", "form has neither orthography nor segments"),
    "E-FORM-NESTING": ("error", "nested forms are only allowed under the lemma form"),
    "E-EMPTY-TEXT": ("error", "required text content is empty"),
    "E-SENSE-EMPTY": ("error", "sense has no definition, gloss, example or subsense"),
    "E-LANG-MISSING": ("error", "etymon or cognate entry has no language"),
    "E-LANG-SYNTAX": ("error", "language tag is syntactically invalid"),
    "E-SEG-ORDER": ("error", "multiword expression segment numbers are not 1..k"),
    "E-XREF-ORDER": ("error", "cross-reference targets are missing or not numbered 1..k"),
    "E-XREF-SELF": ("error", "relation or cross-reference points at its own source"),
    "E-ETY-EMPTY": ("error", "etymology has neither links nor sub-etymologies"),
    "E-ETY-UNTYPED": ("error", "etymology or etymological link has no type"),
    "E-ETY-ORDER": ("error", "etymological link numbers are not 1..k in authored order"),
    "E-ETY-ASPECT": ("error", "etymological link has no source or no target aspect"),
    "E-ETY-CYCLE": ("error", "entries form a cycle through etymological links"),
    "E-DATE-RANGE": ("error", "date range starts after it ends"),
    "E-EXPORT-INVALID": ("error", "store with errors cannot be exported"),
    "E-UNSERIALIZABLE": ("error", "model feature has no mapping in the profile"),
    "W-ETY-DATE": ("warning", "link dated more recently than the link before it"),
    "W-NO-SENSE": ("warning", "standard entry has no sense"),
    "W-NO-LANG": ("warning", "lexicon container declares no language; using 'und'"),
    "I-RE-SENSE": ("info", "related entry carries senses"),
    "I-XREF-LEXICON": ("info", "cross-reference spans lexicons"),
}


def registry() -> list[tuple[str, str, str]]:
    """Return ``(code, severity, description)`` for every code, sorted by code."""
    return sorted((code, sev, desc) for code, (sev, desc) in _REGISTRY.items())


def severity_of(code: str) -> str:
    return _REGISTRY[code][0]


@dataclass(frozen=True)
class Location:
    file: str | None
    line: int
    column: int

    def __str__(self):
        return f"{self.file or '-'}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    node: str | None = None
    location: Location | None = None
    severity: str = field(default="")

    def __post_init__(self):
        if self.code not in _REGISTRY:
            raise ValueError(f"unregistered diagnostic code {self.code!r}")
        if not self.severity:
            object.__setattr__(self, "severity", _REGISTRY[self.code][0])

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def render(self) -> str:
        loc = str(self.location) if self.location else "-:0:0"
        return f"{self.severity.upper()} {self.code} {loc} {self.node or '-'} {self.message}"

    def as_dict(self) -> dict:
        loc = self.location
        return {
            "code": self.code,
            "severity": self.severity,
            "node": self.node,
            "file": loc.file if loc else None,
            "line": loc.line if loc else None,
            "column": loc.column if loc else None,
            "message": self.message,
        }


def sort_key(diag: Diagnostic, seq: int = 0):
    loc = diag.location
    if loc is None:
        return (0, "", seq, 0, diag.code)
    return (1, loc.file or "", loc.line, loc.column, diag.code)


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def counts(self) -> dict[str, int]:
        tally = Counter(d.severity for d in self.diagnostics)
        return {sev: tally.get(sev, 0) for sev in SEVERITIES}

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]

    def render_text(self) -> str:
        return "".join(d.render() + "\n" for d in self.diagnostics)

    def render_json(self) -> str:
        doc = {
            "counts": self.counts,
            "diagnostics": [d.as_dict() for d in self.diagnostics],
        }
        return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def make_report(diagnostics) -> ValidationReport:
    """Order diagnostics by document position, then code, and drop exact repeats."""
    indexed = list(enumerate(diagnostics))
    indexed.sort(key=lambda p: sort_key(p[1], p[0]))
    seen = set()
    out = []
    for _, d in indexed:
        if d in seen:
            continue
        seen.add(d)
        out.append(d)
    return ValidationReport(tuple(out))
