"""Constrained TEI serialization: parse, serialize and canonicalize."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..diagnostics import Diagnostic, make_report
from ..errors import ParseError
from ..model import Etymology, LexicalEntry, LexicalResource
from ..validation import model_diagnostics
from .profile import SerializationProfile, check_tree, default_profile, load_profile, parse_profile
from .reader import Fragment, read_tree
from .writer import _Writer
from .xmltree import XNode, collapse, parse_xml, write

__all__ = [
    "ParseReport",
    "SerializationProfile",
    "canonicalize",
    "load_profile",
    "parse_document",
    "parse_entry",
    "parse_profile",
    "read_fragment",
    "serialize_document",
    "serialize_entry",
    "serialize_etymology",
]


@dataclass(frozen=True)
class ParseReport:
    """Result of parsing one document.

    ``value`` is set iff there are no error diagnostics. ``source_map``
    maps each ``xml:id`` to its ``(line, column)``.
    """

    value: Optional[LexicalResource]
    diagnostics: tuple[Diagnostic, ...] = ()
    source_map: Mapping[str, tuple[int, int]] = field(default_factory=dict)
    root: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.value is not None

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def entry(self) -> Optional[LexicalEntry]:
        """The entry of a single-entry document."""
        if self.value is None or self.root != "entry":
            return None
        return self.value.lexicons[0].entries[0]


def _profile(profile) -> SerializationProfile:
    return default_profile() if profile is None else profile


def read_fragment(xml: bytes, profile=None, filename: Optional[str] = None):
    """Well-formedness, profile and model mapping for one document.

    Returns ``(fragment or None, diagnostics)``; references are not yet
    resolved, which lets callers merge several documents first.
    """
    profile = _profile(profile)
    root, diags = parse_xml(xml, filename)
    if root is None:
        return None, diags
    diags = check_tree(root, profile, filename)
    if diags:
        return None, diags
    frag = read_tree(root, profile, filename)
    return frag, list(frag.diagnostics)


def fragment_resource(frag: Fragment) -> LexicalResource:
    return LexicalResource((frag.lexicon,), frag.crossrefs, frag.bibliographies, locations=frag.locations)


def parse_document(
    xml: bytes,
    profile=None,
    *,
    filename: Optional[str] = None,
    external_ids: Iterable[str] = (),
) -> ParseReport:
    """Parse a document rooted at ``<entry>`` or ``<body>``.

    Ids listed in ``external_ids`` are declared by other documents of the
    same corpus and count as resolvable.
    """
    frag, diags = read_fragment(xml, profile, filename)
    if frag is None:
        return ParseReport(None, make_report(diags).diagnostics)
    resource = fragment_resource(frag)
    report = make_report(diags + model_diagnostics(resource, external_ids))
    value = None if report.errors else resource
    return ParseReport(value, report.diagnostics, dict(frag.source_map), frag.root)


def parse_entry(xml: bytes, profile=None, **kwargs) -> ParseReport:
    """Parse a single-entry document; the entry is ``report.entry``."""
    return parse_document(xml, profile, **kwargs)


def serialize_entry(entry: LexicalEntry, profile=None) -> bytes:
    profile = _profile(profile)
    return write(_Writer(profile).entry(entry), profile.attr_order)


def serialize_etymology(ety: Etymology, profile=None) -> bytes:
    """Canonical ``<etym>`` fragment for one etymology."""
    profile = _profile(profile)
    return write(_Writer(profile).etymology(ety), lambda parent, node: profile.attr_order(parent or "entry", node))


def serialize_document(resource: LexicalResource, profile=None, root: str = "body") -> bytes:
    """Serialize a one-lexicon resource as a ``<body>`` document, or as a bare
    ``<entry>`` when ``root="entry"`` and the lexicon holds a single entry."""
    profile = _profile(profile)
    writer = _Writer(profile)
    if root == "entry":
        (lexicon,) = resource.lexicons
        (entry,) = lexicon.entries
        if resource.crossrefs or resource.bibliographies:
            raise ValueError("an entry document cannot carry links or bibliography")
        return write(writer.entry(entry), profile.attr_order)
    return write(writer.body(resource), profile.attr_order)


def _normalize(node: XNode, parent: Optional[str], profile: SerializationProfile):
    node.attrs = {k: collapse(v) for k, v in node.attrs.items()}
    if node.children:
        node.text = ""
        for child in node.children:
            _normalize(child, node.tag, profile)
    elif not profile.is_verbatim(parent, node.tag):
        node.text = collapse(node.text)


def canonicalize(xml: bytes, profile=None) -> bytes:
    """Canonical bytes of a profile-conformant document.

    Raises :class:`ParseError` when the document is malformed or violates
    the profile.
    """
    profile = _profile(profile)
    root, diags = parse_xml(xml)
    if root is None:
        raise ParseError(diags)
    diags = check_tree(root, profile)
    if diags:
        raise ParseError(diags)
    _normalize(root, None, profile)
    return write(root, profile.attr_order)
