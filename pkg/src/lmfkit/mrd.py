"""Machine-readable-dictionary queries over forms and multiword expressions."""

from __future__ import annotations

from .errors import DanglingReference, NotAnMwe, NotFound
from .model import Form, LexicalEntry, LexicalResource


def _entry(resource: LexicalResource, entry) -> LexicalEntry:
    if isinstance(entry, LexicalEntry):
        return entry
    node = resource.id_index.get(entry)
    if not isinstance(node, LexicalEntry):
        raise NotFound(f"no entry {entry!r}")
    return node


def mwe_components(resource: LexicalResource, entry) -> list[tuple[str, str]]:
    """``(form id, surface)`` pairs of a multiword expression, by segment number."""
    entry = _entry(resource, entry)
    if not entry.is_mwe:
        raise NotAnMwe(f"entry {entry.id or entry.headword!r} is not a multiword expression", entry.id)
    out = []
    for seg in sorted(entry.lemma.segments, key=lambda s: s.order):
        if seg.corresp not in resource.id_index:
            raise DanglingReference(entry.id, seg.corresp)
        out.append((seg.corresp, seg.surface))
    return out


def forms_by_class(entry: LexicalEntry, form_class: str) -> list[Form]:
    """Forms (nested ones included) whose authored class is ``form_class``."""
    return [f for f in entry.all_forms() if f.form_class == form_class]


def inflection_table(entry: LexicalEntry) -> list[tuple[str, dict[str, str], dict[str, str]]]:
    """One ``(orthography, features, usages)`` row per word form or inflected form."""
    rows = []
    for form in entry.all_forms():
        if form.mrd_class != "word_form":
            continue
        feats = {f.name: f.value for f in form.grammatical_features}
        usages = {u.usage_type: u.value for u in form.usages}
        orths = form.orthographies
        rows.append((orths[0] if orths else "", feats, usages))
    return rows
