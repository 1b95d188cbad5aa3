"""Corpus store: multi-file ingestion, lemma index, statistics and export."""

from __future__ import annotations

import hashlib
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional

from . import interchange
from .diagnostics import Diagnostic, Location, ValidationReport, make_report
from .errors import ExportError, NoEtymology, NotFound
from .etymology import ety_chain
from .model import EntryKey, LexicalEntry, LexicalResource
from .tei import read_fragment
from .validation import model_diagnostics, validate_resource


def normalize(text: str) -> str:
    """Index key for an orthography: NFC only, case is kept."""
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class EntrySummary:
    key: EntryKey
    id: Optional[str]
    headword: Optional[str]
    language: str
    senses: int
    source: Optional[str] = None

    def render(self) -> str:
        where = f" ({self.source})" if self.source else ""
        return f"{self.headword}\t{self.id or '-'}\t{self.language}\t{self.senses} sense(s){where}"


@dataclass(frozen=True)
class Store:
    """An ingested corpus. ``lemma_index`` maps NFC lemma orthographies of
    standard entries to their entry keys in document order."""

    resource: LexicalResource
    lemma_index: Mapping[str, tuple[EntryKey, ...]]
    source_files: tuple[tuple[str, str], ...] = ()
    report: ValidationReport = field(default_factory=ValidationReport)

    @classmethod
    def from_resource(cls, resource: LexicalResource, source_files=(), report=None) -> "Store":
        if report is None:
            report = validate_resource(resource)
        return cls(resource, build_lemma_index(resource), tuple(source_files), report)

    def source_of(self, key: EntryKey) -> Optional[str]:
        if key[0] < len(self.source_files):
            return self.source_files[key[0]][0]
        return None


def build_lemma_index(resource: LexicalResource) -> dict[str, tuple[EntryKey, ...]]:
    index: dict[str, list[EntryKey]] = {}
    for key, entry in resource.iter_entries():
        if entry.kind != "standard" or entry.lemma is None:
            continue
        for orth in dict.fromkeys(normalize(o) for o in entry.lemma.orthographies):
            index.setdefault(orth, []).append(key)
    return {k: tuple(v) for k, v in index.items()}


def _shift(path: tuple, li: int, xrefs: int, bibls: int) -> tuple:
    head = path[0]
    if head == "xref":
        return ("xref", path[1] + xrefs)
    if head == "bibl":
        return ("bibl", path[1] + bibls)
    return (li,) + path[1:]


def ingest(paths: Iterable, profile=None) -> tuple[Store, ValidationReport]:
    """Parse and merge documents, one lexicon per readable, conformant file.

    Files are taken in sorted path order, so the result does not depend on
    the order they were given in. Files that cannot be read or that fail
    the profile contribute diagnostics but no lexicon.
    """
    lexicons, crossrefs, bibls = [], [], []
    locations: dict = {}
    sources = []
    diags: list[Diagnostic] = []
    for path in sorted(dict.fromkeys(str(p) for p in paths)):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            diags.append(Diagnostic("E-IO", f"cannot read: {exc.strerror or exc}", None, Location(path, 0, 0)))
            continue
        frag, found = read_fragment(data, profile, filename=path)
        diags.extend(found)
        if frag is None:
            continue
        li = len(lexicons)
        for p, loc in frag.locations.items():
            locations[_shift(p, li, len(crossrefs), len(bibls))] = loc
        lexicons.append(frag.lexicon)
        crossrefs.extend(frag.crossrefs)
        bibls.extend(frag.bibliographies)
        sources.append((path, hashlib.sha256(data).hexdigest()))
    resource = LexicalResource(tuple(lexicons), tuple(crossrefs), tuple(bibls), locations=locations)
    report = make_report(diags + model_diagnostics(resource))
    return Store.from_resource(resource, sources, report), report


def _summary(store: Store, key: EntryKey) -> EntrySummary:
    entry = store.resource.entry_at(key)
    return EntrySummary(
        key=key,
        id=entry.id,
        headword=entry.headword,
        language=store.resource.lexicons[key[0]].tag,
        senses=len(entry.senses),
        source=store.source_of(key),
    )


def lookup(store: Store, headword: str) -> list[EntrySummary]:
    """Standard entries whose lemma has ``headword`` as an orthography (exact, NFC)."""
    return [_summary(store, k) for k in store.lemma_index.get(normalize(headword), ())]


def export_json(store: Store) -> bytes:
    """Key-sorted JSON of the store's resource. Refuses stores with errors."""
    if not store.report.ok:
        first = store.report.errors[0]
        raise ExportError(f"store has {len(store.report.errors)} error(s); first: {first.render()}")
    return interchange.dumps(store.resource)


def import_json(data) -> Store:
    return Store.from_resource(interchange.loads(data))


def _describe(entry: LexicalEntry) -> str:
    text = entry.headword or entry.id or "?"
    if entry.language:
        text += f" [{entry.language}]"
    return text


def render_chain(entry: LexicalEntry, chain) -> str:
    out = entry.headword or entry.id or "?"
    for link_type, ancestor in chain:
        out += f" ←({link_type})← {_describe(ancestor)}"
    if chain and chain[-1][1].gloss:
        out += f" '{chain[-1][1].gloss}'"
    return out


def etym_trace(store: Store, headword: str) -> str:
    """One chain rendering per matching entry that has an etymology."""
    keys = store.lemma_index.get(normalize(headword), ())
    if not keys:
        raise NotFound(f"no entry for {headword!r}")
    lines = []
    for key in keys:
        entry = store.resource.entry_at(key)
        if entry.etymology is not None:
            lines.append(render_chain(entry, ety_chain(store.resource, entry)))
    if not lines:
        raise NoEtymology(f"no entry for {headword!r} has an etymology")
    return "\n".join(lines)


@dataclass(frozen=True)
class StatsReport:
    entries_by_kind: Mapping[str, int]
    forms_by_class: Mapping[str, int]
    senses: int
    mwes: int
    etymologies: int
    links_by_type: Mapping[str, int]
    crossrefs_by_type: Mapping[str, int]
    diagnostics_by_severity: Mapping[str, int]

    def as_dict(self) -> dict:
        return {
            "entries_by_kind": dict(self.entries_by_kind),
            "forms_by_class": dict(self.forms_by_class),
            "senses": self.senses,
            "mwes": self.mwes,
            "etymologies": self.etymologies,
            "links_by_type": dict(self.links_by_type),
            "crossrefs_by_type": dict(self.crossrefs_by_type),
            "diagnostics_by_severity": dict(self.diagnostics_by_severity),
        }

    def render_text(self) -> str:
        lines = []
        for name, value in self.as_dict().items():
            if isinstance(value, dict):
                detail = ", ".join(f"{k}={v}" for k, v in value.items()) or "none"
                lines.append(f"{name}: {detail}")
            else:
                lines.append(f"{name}: {value}")
        return "\n".join(lines) + "\n"


def stats(store: Store) -> StatsReport:
    kinds, classes, link_types = Counter(), Counter(), Counter()
    senses = mwes = etymologies = 0
    for _, entry in store.resource.iter_entries():
        kinds[entry.kind] += 1
        for form in entry.all_forms():
            classes[form.form_class or "untyped"] += 1
        senses += sum(1 for _ in entry.all_senses())
        mwes += entry.is_mwe
        if entry.etymology is not None:
            for ety in entry.etymology.walk():
                etymologies += 1
                link_types.update(link.link_type for link in ety.links)
    refs = Counter(ref.ref_type for ref in store.resource.crossrefs)
    return StatsReport(
        entries_by_kind=dict(sorted(kinds.items())),
        forms_by_class=dict(sorted(classes.items())),
        senses=senses,
        mwes=mwes,
        etymologies=etymologies,
        links_by_type=dict(sorted(link_types.items())),
        crossrefs_by_type=dict(sorted(refs.items())),
        diagnostics_by_severity=store.report.counts,
    )
