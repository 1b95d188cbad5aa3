"""Map the object model onto a TEI tree in profile order."""

from __future__ import annotations

from ..errors import Unserializable
from ..model import Etymology, EtyDate, Form, GrammaticalFeature, LexicalEntry, LexicalResource, Sense
from .profile import SerializationProfile
from .reader import FORM_TYPE_OF
from .xmltree import XNode


def _ptrs(ids) -> str:
    return " ".join("#" + i for i in ids)


_NAMES = {"xml_id": "xml:id", "xml_lang": "xml:lang", "from_": "from"}


def _attrs(**pairs) -> dict[str, str]:
    out = {}
    for name, value in pairs.items():
        if value is not None:
            out[_NAMES.get(name, name)] = str(value)
    return out


class _Writer:
    def __init__(self, profile: SerializationProfile):
        self.profile = profile

    def feature(self, feat: GrammaticalFeature, container: str) -> XNode:
        if feat.tag == "gram":
            return XNode("gram", {"type": feat.name}, text=feat.value)
        gram_grp = self.profile.rule(container, "gramGrp")
        if gram_grp is None or not gram_grp.allows_child(feat.name) or self.profile.rule("gramGrp", feat.name) is None:
            raise Unserializable(f"no element for grammatical feature {feat.name!r}")
        return XNode(feat.name, text=feat.value)

    def features(self, layout, feats, container: str):
        """Yield feature nodes per layout token, consuming grouped and bare features."""
        grouped = [f for f in feats if f.grouped]
        bare = iter([f for f in feats if not f.grouped])
        for token in layout:
            if token == "gramGrp":
                yield token, XNode("gramGrp", children=[self.feature(f, container) for f in grouped])
            elif token == "gram":
                yield token, self.feature(next(bare), container)

    def form(self, form: Form) -> XNode:
        if form.form_class is None:
            form_type = None
        elif form.form_class in FORM_TYPE_OF:
            form_type = FORM_TYPE_OF[form.form_class]
        else:
            raise Unserializable(f"no form type for class {form.form_class!r}")
        node = XNode("form", _attrs(type=form_type, xml_id=form.id))
        layout = form.layout or form.default_layout()
        feat_nodes = iter(n for _, n in self.features(layout, form.grammatical_features, "form"))
        reps = iter(form.representations)
        usages = iter(form.usages)
        segs = iter(form.segments)
        nested = iter(form.nested_forms)
        current = None
        for token in layout:
            if token == "orth":
                current = next(reps)
                node.children.append(XNode("orth", _attrs(xml_lang=current.language), text=current.orthography))
            elif token == "pron":
                node.children.append(XNode("pron", text=current.pronunciation))
            elif token in ("gramGrp", "gram"):
                node.children.append(next(feat_nodes))
            elif token == "usg":
                usage = next(usages)
                node.children.append(XNode("usg", {"type": usage.usage_type}, text=usage.value))
            elif token == "seg":
                seg = next(segs)
                node.children.append(XNode("seg", {"corresp": "#" + seg.corresp, "n": str(seg.order)}, text=seg.surface))
            elif token == "form":
                node.children.append(self.form(next(nested)))
        return node

    def text_node(self, tag, rep) -> XNode:
        attrs = _attrs(xml_lang=rep.language, source=_ptrs(rep.bibliography_refs) or None)
        return XNode(tag, attrs, text=rep.text)

    def sense(self, sense: Sense) -> XNode:
        node = XNode("sense", _attrs(xml_id=sense.id))
        layout = sense.layout or sense.default_layout()
        feat_nodes = iter(n for _, n in self.features(layout, sense.grammatical_features, "sense"))
        defs, glosses = iter(sense.definitions), iter(sense.glosses)
        examples, subs = iter(sense.examples), iter(sense.subsenses)
        for token in layout:
            if token in ("gramGrp", "gram"):
                node.children.append(next(feat_nodes))
            elif token == "def":
                node.children.append(self.text_node("def", next(defs)))
            elif token == "gloss":
                node.children.append(self.text_node("gloss", next(glosses)))
            elif token == "cit":
                quote = self.text_node("quote", next(examples))
                node.children.append(XNode("cit", {"type": "example"}, [quote]))
            elif token == "sense":
                node.children.append(self.sense(next(subs)))
        return node

    def date(self, date: EtyDate) -> XNode:
        if date.kind == "point":
            if date.year_start != date.year_end:
                raise Unserializable("point date with distinct start and end years")
            attrs = _attrs(type="point", when=date.year_start)
        elif date.kind == "range":
            attrs = _attrs(type="range", from_=date.year_start, to=date.year_end)
        else:
            if date.year_start is not None or date.year_end is not None:
                raise Unserializable("relative date with numeric years")
            attrs = {"type": "relative"}
        return XNode("date", attrs, text=date.text)

    def etymology(self, ety: Etymology) -> XNode:
        node = XNode("etym", _attrs(xml_id=ety.id, type=ety.ety_type))
        for link in ety.links:
            cit = XNode("cit", _attrs(
                xml_id=link.id,
                type=link.role,
                subtype=link.link_type,
                n=link.order,
                corresp=_ptrs(link.source_aspects),
                target=_ptrs(link.target_aspects),
            ))
            if link.date is not None:
                cit.children.append(self.date(link.date))
            node.children.append(cit)
        for sub in ety.sub_etymologies:
            node.children.append(self.etymology(sub))
        return node

    def entry(self, entry: LexicalEntry, related: bool = False) -> XNode:
        if related:
            if entry.kind != "related":
                raise Unserializable(f"nested entry of kind {entry.kind!r}")
            if entry.etymology is not None or entry.related or entry.language_label:
                raise Unserializable("related entries carry only forms and senses")
            node = XNode("re", _attrs(xml_id=entry.id, xml_lang=entry.language, type=entry.re_type))
        else:
            if entry.kind == "related" or entry.re_type is not None:
                raise Unserializable("related entries must be nested in a host entry")
            kind = entry.kind if entry.kind != "standard" else None
            node = XNode("entry", _attrs(xml_id=entry.id, xml_lang=entry.language, type=kind))
            if entry.language_label is not None:
                node.children.append(XNode("lang", text=entry.language_label))
        node.children.extend(self.form(f) for f in entry.forms)
        if entry.etymology is not None:
            node.children.append(self.etymology(entry.etymology))
        node.children.extend(self.sense(s) for s in entry.senses)
        node.children.extend(self.entry(r, related=True) for r in entry.related)
        return node

    def body(self, resource: LexicalResource) -> XNode:
        if len(resource.lexicons) != 1:
            raise Unserializable("a TEI document holds exactly one lexicon")
        lexicon = resource.lexicons[0]
        node = XNode("body", _attrs(xml_lang=lexicon.language))
        node.children.extend(self.entry(e) for e in lexicon.entries)
        for bib in resource.bibliographies:
            node.children.append(XNode(
                "bibl", _attrs(xml_id=bib.id, corresp=_ptrs(bib.attached_to) or None), text=bib.citation
            ))
        for ref in resource.crossrefs:
            if ref.source is None:
                raise Unserializable("cross-reference without a source")
            target = _ptrs([ref.source] + [t for t, _ in ref.targets])
            node.children.append(XNode("link", _attrs(xml_id=ref.id, type=ref.ref_type, target=target)))
        return node
