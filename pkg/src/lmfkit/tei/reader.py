"""Map a profile-conformant TEI tree onto the object model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..diagnostics import Diagnostic, Location
from ..model import (
    Bibliography,
    CrossRef,
    Etymology,
    EtyDate,
    EtyLink,
    Form,
    FormRepresentation,
    GrammaticalFeature,
    LexicalEntry,
    Lexicon,
    MweSegment,
    Sense,
    TextRepresentation,
    Usage,
)
from .profile import SerializationProfile
from .xmltree import XNode, collapse

FORM_TYPES = {
    "lemma": "lemma",
    "variant": "variant",
    "inflected": "inflected",
    "stem": "stem",
    "part": "word_part",
    "related": "related_form",
    "wordForm": "word_form",
}
FORM_TYPE_OF = {v: k for k, v in FORM_TYPES.items()}
DATE_ATTRS = {"point": ("when",), "range": ("from", "to"), "relative": ()}


@dataclass
class Fragment:
    """One document's model content before resource-level checks."""

    root: str
    lexicon: Lexicon
    crossrefs: tuple[CrossRef, ...] = ()
    bibliographies: tuple[Bibliography, ...] = ()
    locations: dict = field(default_factory=dict)
    source_map: dict = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)


def _ids(value: Optional[str]) -> tuple[str, ...]:
    if not value:
        return ()
    return tuple(p[1:] if p.startswith("#") else p for p in collapse(value).split())


class _Reader:
    def __init__(self, profile: SerializationProfile, filename: Optional[str]):
        self.profile = profile
        self.filename = filename
        self.locations: dict = {}
        self.source_map: dict = {}
        self.diags: list[Diagnostic] = []

    def where(self, node: XNode) -> Location:
        return Location(self.filename, node.line, node.column)

    def mark(self, path, node: XNode):
        self.locations[path] = self.where(node)
        node_id = node.attr("xml:id")
        if node_id is not None and node_id not in self.source_map:
            self.source_map[node_id] = (node.line, node.column)

    def text(self, node: XNode, parent: str) -> str:
        if self.profile.is_verbatim(parent, node.tag):
            return node.text
        return collapse(node.text)

    def document(self, root: XNode) -> Fragment:
        self.mark((0,), root)
        if root.tag == "entry":
            lexicon = Lexicon(None, (self.entry(root, (0, "entry", 0)),))
            return Fragment("entry", lexicon)
        language = root.attr("xml:lang")
        if language is None:
            self.diags.append(Diagnostic(
                "W-NO-LANG", "no xml:lang on the lexicon container; using 'und'",
                None, self.where(root),
            ))
        entries, bibls, links = [], [], []
        for child in root.children:
            if child.tag == "entry":
                entries.append(self.entry(child, (0, "entry", len(entries))))
            elif child.tag == "bibl":
                self.mark(("bibl", len(bibls)), child)
                bibls.append(Bibliography(
                    child.attr("xml:id"), collapse(child.text), _ids(child.attr("corresp"))
                ))
            elif child.tag == "link":
                self.mark(("xref", len(links)), child)
                ptrs = _ids(child.attr("target"))
                links.append(CrossRef(
                    child.attr("xml:id"),
                    child.attr("type"),
                    ptrs[0] if ptrs else None,
                    tuple((t, i) for i, t in enumerate(ptrs[1:], 1)),
                ))
        return Fragment("body", Lexicon(language, tuple(entries)), tuple(links), tuple(bibls))

    def entry(self, node: XNode, path: tuple, related: bool = False) -> LexicalEntry:
        self.mark(path, node)
        label, etymology = None, None
        forms, senses, rel = [], [], []
        for child in node.children:
            if child.tag == "lang":
                self.mark(path + ("lang",), child)
                label = collapse(child.text)
            elif child.tag == "form":
                forms.append(self.form(child, path + ("form", len(forms))))
            elif child.tag == "etym":
                etymology = self.etym(child, path + ("etym",))
            elif child.tag == "sense":
                senses.append(self.sense(child, path + ("sense", len(senses))))
            elif child.tag == "re":
                rel.append(self.entry(child, path + ("re", len(rel)), related=True))
        if related:
            kind, re_type = "related", node.attr("type")
        else:
            kind, re_type = node.attr("type") or "standard", None
        return LexicalEntry(
            forms=tuple(forms),
            senses=tuple(senses),
            kind=kind,
            id=node.attr("xml:id"),
            language=node.attr("xml:lang"),
            language_label=label,
            etymology=etymology,
            related=tuple(rel),
            re_type=re_type,
        )

    def gram_group(self, node: XNode) -> list[GrammaticalFeature]:
        feats = []
        for child in node.children:
            if child.tag == "gram":
                feats.append(GrammaticalFeature(child.attr("type"), self.text(child, "gramGrp"), "gram", True))
            else:
                feats.append(GrammaticalFeature(child.tag, self.text(child, "gramGrp"), "element", True))
        return feats

    def form(self, node: XNode, path: tuple) -> Form:
        self.mark(path, node)
        reps: list[list] = []
        feats, usages, segs, nested, layout = [], [], [], [], []
        for child in node.children:
            tag = child.tag
            if tag == "orth":
                reps.append([self.text(child, "form"), None, child.attr("xml:lang")])
            elif tag == "pron":
                if not reps or reps[-1][1] is not None:
                    self.diags.append(Diagnostic(
                        "E-PROFILE-CONTENT", "<pron> must follow the <orth> it pronounces",
                        node.attr("xml:id"), self.where(child),
                    ))
                    continue
                reps[-1][1] = self.text(child, "form")
            elif tag == "gramGrp":
                feats.extend(self.gram_group(child))
            elif tag == "gram":
                feats.append(GrammaticalFeature(child.attr("type"), self.text(child, "form"), "gram", False))
            elif tag == "usg":
                usages.append(Usage(child.attr("type"), self.text(child, "form")))
            elif tag == "seg":
                self.mark(path + ("seg", len(segs)), child)
                corresp = _ids(child.attr("corresp"))
                segs.append(MweSegment(corresp[0], int(child.attr("n")), self.text(child, "form")))
            elif tag == "form":
                nested.append(self.form(child, path + ("form", len(nested))))
            layout.append(tag)
        form_type = node.attr("type")
        return Form(
            form_class=FORM_TYPES[form_type] if form_type else None,
            representations=tuple(FormRepresentation(o, p, lang) for o, p, lang in reps),
            grammatical_features=tuple(feats),
            usages=tuple(usages),
            nested_forms=tuple(nested),
            segments=tuple(segs),
            id=node.attr("xml:id"),
            layout=tuple(layout),
        )

    def text_rep(self, node: XNode, parent: str, kind: str) -> TextRepresentation:
        return TextRepresentation(
            self.text(node, parent), kind, node.attr("xml:lang"), _ids(node.attr("source"))
        )

    def sense(self, node: XNode, path: tuple) -> Sense:
        self.mark(path, node)
        feats, defs, glosses, examples, subs, layout = [], [], [], [], [], []
        for child in node.children:
            tag = child.tag
            if tag == "gramGrp":
                feats.extend(self.gram_group(child))
            elif tag == "gram":
                feats.append(GrammaticalFeature(child.attr("type"), self.text(child, "sense"), "gram", False))
            elif tag == "def":
                self.mark(path + ("def", len(defs)), child)
                defs.append(self.text_rep(child, "sense", "definition"))
            elif tag == "gloss":
                self.mark(path + ("gloss", len(glosses)), child)
                glosses.append(self.text_rep(child, "sense", "gloss"))
            elif tag == "cit":
                self.mark(path + ("cit", len(examples)), child)
                examples.append(self.text_rep(child.children[0], "cit", "example"))
            elif tag == "sense":
                subs.append(self.sense(child, path + ("sense", len(subs))))
            layout.append(tag)
        return Sense(
            id=node.attr("xml:id"),
            definitions=tuple(defs),
            examples=tuple(examples),
            glosses=tuple(glosses),
            grammatical_features=tuple(feats),
            subsenses=tuple(subs),
            layout=tuple(layout),
        )

    def date(self, node: XNode) -> EtyDate:
        kind = node.attr("type")
        for name in ("when", "from", "to"):
            if name in node.attrs and name not in DATE_ATTRS[kind]:
                self.diags.append(Diagnostic(
                    "E-PROFILE-ATTR", f"@{name} not allowed on a {kind} date",
                    None, self.where(node),
                ))

        def year(name):
            value = node.attr(name)
            return int(value) if value is not None else None

        text = collapse(node.text)
        if kind == "point":
            return EtyDate("point", text, year("when"), year("when"))
        if kind == "range":
            return EtyDate("range", text, year("from"), year("to"))
        return EtyDate("relative", text)

    def etym(self, node: XNode, path: tuple) -> Etymology:
        self.mark(path, node)
        links, subs = [], []
        for child in node.children:
            if child.tag == "cit":
                self.mark(path + ("cit", len(links)), child)
                date = self.date(child.children[0]) if child.children else None
                links.append(EtyLink(
                    link_type=child.attr("subtype"),
                    source_aspects=_ids(child.attr("corresp")),
                    target_aspects=_ids(child.attr("target")),
                    order=int(child.attr("n")),
                    role=child.attr("type"),
                    date=date,
                    id=child.attr("xml:id"),
                ))
            elif child.tag == "etym":
                subs.append(self.etym(child, path + ("etym", len(subs))))
        return Etymology(node.attr("type"), tuple(links), tuple(subs), node.attr("xml:id"))


def read_tree(root: XNode, profile: SerializationProfile, filename: Optional[str] = None) -> Fragment:
    """Convert a tree that passed :func:`check_tree` into a :class:`Fragment`."""
    reader = _Reader(profile, filename)
    frag = reader.document(root)
    frag.locations = reader.locations
    frag.source_map = reader.source_map
    frag.diagnostics = reader.diags
    return frag
