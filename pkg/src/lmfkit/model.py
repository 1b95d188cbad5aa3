"""Immutable object model for LMF lexical resources.

Covers the core classes (resource, lexicon, entry, lemma, representations,
sense, cross-reference, bibliography), the machine-readable-dictionary
refinements (form classes, grammatical features, usages, multiword segments)
and the etymology classes (etymology, link, date).

Every record is a frozen dataclass holding tuples, so values can be shared
freely. Lists passed to constructors are converted to tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

FORM_CLASSES = (
    "lemma",
    "related_form",
    "word_form",
    "stem",
    "word_part",
    "variant",
    "inflected",
)
# authored tokens that refine an MRD subclass
MRD_CLASS = {"variant": "related_form", "inflected": "word_form"}

ENTRY_KINDS = ("standard", "etymon", "cognate", "related")
TEXT_KINDS = ("definition", "example", "gloss")
REF_TYPES = (
    "semantic_relation",
    "cross_reference",
    "related_entry",
    "mwe_component",
    "etymological_link",
)
LINK_ROLES = ("etymon", "cognate")
DATE_KINDS = ("point", "range", "relative")
SEEDED_ETY_TYPES = ("borrowing", "inheritance", "metaphor", "metonymy", "unknown")

EntryKey = tuple  # (lexicon, entry) or (lexicon, entry, related)


def _tuples(obj):
    for f in fields(obj):
        if not f.init:
            continue
        value = getattr(obj, f.name)
        if isinstance(value, list):
            object.__setattr__(obj, f.name, tuple(value))


@dataclass(frozen=True)
class GrammaticalFeature:
    """Open name/value grammatical feature such as ``pos=noun``.

    ``tag`` and ``grouped`` record the authored syntax: ``element`` is a
    dedicated element (``<pos>``) and ``gram`` is ``<gram type=...>``;
    ``grouped`` features sit inside the container's ``<gramGrp>``.
    """

    name: str
    value: str
    tag: str = "element"
    grouped: bool = True

    def __post_init__(self):
        if self.tag not in ("element", "gram"):
            raise ValueError(f"unknown feature tag {self.tag!r}")
        if not self.grouped and self.tag != "gram":
            raise ValueError("ungrouped features must use the gram syntax")


@dataclass(frozen=True)
class Usage:
    usage_type: str
    value: str


@dataclass(frozen=True)
class FormRepresentation:
    orthography: str
    pronunciation: Optional[str] = None
    language: Optional[str] = None


@dataclass(frozen=True)
class TextRepresentation:
    text: str
    kind: str = "definition"
    language: Optional[str] = None
    bibliography_refs: tuple[str, ...] = ()

    def __post_init__(self):
        _tuples(self)
        if self.kind not in TEXT_KINDS:
            raise ValueError(f"unknown text kind {self.kind!r}")


@dataclass(frozen=True)
class MweSegment:
    corresp: str
    order: int
    surface: str


def _check_layout(layout, default):
    if Counter(layout) != Counter(default):
        raise ValueError(f"layout {layout!r} does not match content {default!r}")


def _order_features(layout, features):
    grouped = [f for f in features if f.grouped]
    bare = iter([f for f in features if not f.grouped])
    out = []
    for token in layout:
        if token == "gramGrp":
            out.extend(grouped)
        elif token == "gram":
            out.append(next(bare))
    return tuple(out)


def _feature_tokens(features):
    tokens = ["gramGrp"] if any(f.grouped for f in features) else []
    return tokens + ["gram"] * sum(1 for f in features if not f.grouped)


@dataclass(frozen=True)
class Form:
    """A written form of an entry; ``form_class`` None is an untyped form.

    ``layout`` lists the authored child order when it differs from the
    default order; it is None otherwise, so equal content compares equal.
    """

    form_class: Optional[str] = "lemma"
    representations: tuple[FormRepresentation, ...] = ()
    grammatical_features: tuple[GrammaticalFeature, ...] = ()
    usages: tuple[Usage, ...] = ()
    nested_forms: tuple["Form", ...] = ()
    segments: tuple[MweSegment, ...] = ()
    id: Optional[str] = None
    layout: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        _tuples(self)
        if self.form_class is not None and self.form_class not in FORM_CLASSES:
            raise ValueError(f"unknown form class {self.form_class!r}")
        default = self.default_layout()
        layout = default if self.layout is None else tuple(self.layout)
        _check_layout(layout, default)
        owner = -1
        claimed = set()
        for token in layout:
            if token == "orth":
                owner += 1
            elif token == "pron":
                if owner < 0 or owner in claimed or self.representations[owner].pronunciation is None:
                    raise ValueError(f"pronunciation misplaced in layout {layout!r}")
                claimed.add(owner)
        object.__setattr__(self, "grammatical_features", _order_features(layout, self.grammatical_features))
        object.__setattr__(self, "layout", None if layout == default else layout)

    def default_layout(self) -> tuple[str, ...]:
        tokens = []
        for rep in self.representations:
            tokens.append("orth")
            if rep.pronunciation is not None:
                tokens.append("pron")
        tokens += _feature_tokens(self.grammatical_features)
        tokens += ["usg"] * len(self.usages)
        tokens += ["seg"] * len(self.segments)
        tokens += ["form"] * len(self.nested_forms)
        return tuple(tokens)

    @property
    def mrd_class(self) -> Optional[str]:
        return MRD_CLASS.get(self.form_class, self.form_class)

    @property
    def orthographies(self) -> tuple[str, ...]:
        if self.representations:
            return tuple(r.orthography for r in self.representations)
        if self.segments:
            return (self.surface,)
        return ()

    @property
    def surface(self) -> str:
        return " ".join(s.surface for s in sorted(self.segments, key=lambda s: s.order))

    def walk(self) -> Iterator["Form"]:
        yield self
        for nested in self.nested_forms:
            yield from nested.walk()


@dataclass(frozen=True)
class Sense:
    id: Optional[str] = None
    definitions: tuple[TextRepresentation, ...] = ()
    examples: tuple[TextRepresentation, ...] = ()
    glosses: tuple[TextRepresentation, ...] = ()
    grammatical_features: tuple[GrammaticalFeature, ...] = ()
    subsenses: tuple["Sense", ...] = ()
    layout: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        _tuples(self)
        default = self.default_layout()
        layout = default if self.layout is None else tuple(self.layout)
        _check_layout(layout, default)
        object.__setattr__(self, "grammatical_features", _order_features(layout, self.grammatical_features))
        object.__setattr__(self, "layout", None if layout == default else layout)

    def default_layout(self) -> tuple[str, ...]:
        tokens = _feature_tokens(self.grammatical_features)
        tokens += ["def"] * len(self.definitions)
        tokens += ["gloss"] * len(self.glosses)
        tokens += ["cit"] * len(self.examples)
        tokens += ["sense"] * len(self.subsenses)
        return tuple(tokens)

    def walk(self) -> Iterator["Sense"]:
        yield self
        for sub in self.subsenses:
            yield from sub.walk()


@dataclass(frozen=True)
class EtyDate:
    kind: str
    text: str
    year_start: Optional[int] = None
    year_end: Optional[int] = None

    def __post_init__(self):
        if self.kind not in DATE_KINDS:
            raise ValueError(f"unknown date kind {self.kind!r}")


@dataclass(frozen=True)
class EtyLink:
    """Typed, ordered link from source aspects (older stage) to target aspects.

    ``role`` is ``etymon`` for ancestry links and ``cognate`` for links that
    relate cognates; only ancestry links take part in chain traversal.
    """

    link_type: str
    source_aspects: tuple[str, ...]
    target_aspects: tuple[str, ...]
    order: int
    role: str = "etymon"
    date: Optional[EtyDate] = None
    id: Optional[str] = None

    def __post_init__(self):
        _tuples(self)
        if self.role not in LINK_ROLES:
            raise ValueError(f"unknown link role {self.role!r}")

    def as_crossref(self) -> "CrossRef":
        return CrossRef(
            id=self.id,
            ref_type="etymological_link",
            source=self.source_aspects[0] if self.source_aspects else None,
            targets=tuple((t, i) for i, t in enumerate(self.target_aspects, 1)),
        )


@dataclass(frozen=True)
class Etymology:
    ety_type: str
    links: tuple[EtyLink, ...] = ()
    sub_etymologies: tuple["Etymology", ...] = ()
    id: Optional[str] = None

    def __post_init__(self):
        _tuples(self)

    def walk(self) -> Iterator["Etymology"]:
        yield self
        for sub in self.sub_etymologies:
            yield from sub.walk()

    def all_links(self) -> Iterator[EtyLink]:
        for ety in self.walk():
            yield from ety.links


@dataclass(frozen=True)
class LexicalEntry:
    """A lexical entry. Etymons, cognates and related (``<re>``) entries are
    entries with the matching ``kind``."""

    forms: tuple[Form, ...] = ()
    senses: tuple[Sense, ...] = ()
    kind: str = "standard"
    id: Optional[str] = None
    language: Optional[str] = None
    language_label: Optional[str] = None
    etymology: Optional[Etymology] = None
    related: tuple["LexicalEntry", ...] = ()
    re_type: Optional[str] = None

    def __post_init__(self):
        _tuples(self)
        if self.kind not in ENTRY_KINDS:
            raise ValueError(f"unknown entry kind {self.kind!r}")

    def all_forms(self) -> Iterator[Form]:
        for form in self.forms:
            yield from form.walk()

    def all_senses(self) -> Iterator[Sense]:
        for sense in self.senses:
            yield from sense.walk()

    def lemma_candidates(self) -> list[Form]:
        found = [f for f in self.all_forms() if f.form_class == "lemma"]
        if not found and self.kind == "related":
            found = [f for f in self.forms if f.form_class is None]
        return found

    @property
    def lemma(self) -> Optional[Form]:
        found = self.lemma_candidates()
        return found[0] if found else None

    @property
    def headword(self) -> Optional[str]:
        lemma = self.lemma
        if lemma is None or not lemma.orthographies:
            return None
        return lemma.orthographies[0]

    @property
    def gloss(self) -> Optional[str]:
        for sense in self.all_senses():
            if sense.glosses:
                return sense.glosses[0].text
        return None

    @property
    def is_mwe(self) -> bool:
        lemma = self.lemma
        return (
            self.kind == "related"
            and self.re_type == "multiWordExpression"
            and lemma is not None
            and bool(lemma.segments)
        )


@dataclass(frozen=True)
class Lexicon:
    """Ordered entries sharing a language; ``language`` None means undeclared."""

    language: Optional[str] = None
    entries: tuple[LexicalEntry, ...] = ()

    def __post_init__(self):
        _tuples(self)

    @property
    def tag(self) -> str:
        return self.language or "und"


@dataclass(frozen=True)
class CrossRef:
    """Typed pointer from ``source`` to targets numbered 1..k.

    Targets are kept sorted by their order index.
    """

    id: Optional[str]
    ref_type: str
    source: Optional[str]
    targets: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.ref_type not in REF_TYPES:
            raise ValueError(f"unknown cross-reference type {self.ref_type!r}")
        targets = tuple(sorted(((t, int(i)) for t, i in self.targets), key=lambda p: p[1]))
        object.__setattr__(self, "targets", targets)


@dataclass(frozen=True)
class Bibliography:
    id: str
    citation: str
    attached_to: tuple[str, ...] = ()

    def __post_init__(self):
        _tuples(self)


def mwe_crossref(entry: LexicalEntry) -> Optional[CrossRef]:
    """View an MWE entry's segments as an ``mwe_component`` cross-reference."""
    lemma = entry.lemma
    if lemma is None or not lemma.segments:
        return None
    return CrossRef(
        id=entry.id,
        ref_type="mwe_component",
        source=entry.id,
        targets=tuple((s.corresp, s.order) for s in lemma.segments),
    )


@dataclass(frozen=True)
class LexicalResource:
    """A set of lexicons with resource-level cross-references and
    bibliographies, plus derived identity indexes.

    Use :func:`lmfkit.core.build_resource` for a validated construction;
    the constructor itself only indexes (first declaration of an id wins).
    """

    lexicons: tuple[Lexicon, ...] = ()
    crossrefs: tuple[CrossRef, ...] = ()
    bibliographies: tuple[Bibliography, ...] = ()
    # source positions keyed by (lexicon index, *model path); set by parsers
    locations: Optional[Mapping] = field(default=None, compare=False, repr=False)

    id_index: Mapping[str, object] = field(init=False, compare=False, repr=False)
    _kinds: Mapping[str, str] = field(init=False, compare=False, repr=False)
    _owners: Mapping[str, EntryKey] = field(init=False, compare=False, repr=False)
    _entries: Mapping[EntryKey, LexicalEntry] = field(init=False, compare=False, repr=False)
    _backlinks: Mapping[str, tuple[str, ...]] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _tuples(self)
        index: dict[str, object] = {}
        kinds: dict[str, str] = {}
        owners: dict[str, EntryKey] = {}
        entries: dict[EntryKey, LexicalEntry] = {}

        def put(node_id, node, kind, owner=None):
            if node_id is None or node_id in index:
                return
            index[node_id] = node
            kinds[node_id] = kind
            if owner is not None:
                owners[node_id] = owner

        for key, entry in _iter_entries(self.lexicons):
            entries[key] = entry
            put(entry.id, entry, "entry", key)
            for form in entry.all_forms():
                put(form.id, form, "form", key)
            for sense in entry.all_senses():
                put(sense.id, sense, "sense", key)
            if entry.etymology is not None:
                for ety in entry.etymology.walk():
                    put(ety.id, ety, "etymology", key)
                    for link in ety.links:
                        put(link.id, link, "link", key)
        for ref in self.crossrefs:
            put(ref.id, ref, "crossref")
        for bib in self.bibliographies:
            put(bib.id, bib, "bibliography")

        backlinks: dict[str, list[str]] = {}
        for bib in self.bibliographies:
            for target in bib.attached_to:
                refs = backlinks.setdefault(target, [])
                if bib.id not in refs:
                    refs.append(bib.id)

        object.__setattr__(self, "id_index", MappingProxyType(index))
        object.__setattr__(self, "_kinds", MappingProxyType(kinds))
        object.__setattr__(self, "_owners", MappingProxyType(owners))
        object.__setattr__(self, "_entries", MappingProxyType(entries))
        object.__setattr__(
            self, "_backlinks", MappingProxyType({k: tuple(v) for k, v in backlinks.items()})
        )

    def iter_entries(self) -> Iterator[tuple[EntryKey, LexicalEntry]]:
        """Yield ``(key, entry)`` for every entry, related entries after their host."""
        return iter(self._entries.items())

    def entry_at(self, key: EntryKey) -> LexicalEntry:
        return self._entries[key]

    def key_of(self, entry: LexicalEntry) -> Optional[EntryKey]:
        for key, candidate in self._entries.items():
            if candidate is entry:
                return key
        for key, candidate in self._entries.items():
            if candidate == entry:
                return key
        return None

    def node_kind(self, node_id: str) -> Optional[str]:
        return self._kinds.get(node_id)

    def owner_of(self, node_id: str) -> Optional[EntryKey]:
        """Key of the entry that declares ``node_id`` (entries own themselves)."""
        return self._owners.get(node_id)

    def bibliographies_of(self, node_id: str) -> tuple[str, ...]:
        return self._backlinks.get(node_id, ())

    def location(self, path) -> Optional[tuple]:
        if self.locations is None:
            return None
        return self.locations.get(tuple(path))


def _iter_entries(lexicons):
    for li, lexicon in enumerate(lexicons):
        for ei, entry in enumerate(lexicon.entries):
            yield (li, ei), entry
            for ri, rel in enumerate(entry.related):
                yield (li, ei, ri), rel
