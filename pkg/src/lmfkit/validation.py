"""Model-level validation producing coded, located diagnostics."""

from __future__ import annotations

import re
from typing import Iterable

from .diagnostics import Diagnostic, ValidationReport, make_report
from .etymology import check_acyclic, check_temporal_consistency, entry_path, walk_etymology
from .model import LexicalEntry, LexicalResource

NCNAME = re.compile(r"^[^\W\d][\w.\-]*$")
LANGUAGE_TAG = re.compile(r"^[A-Za-z]{2,8}(-[A-Za-z0-9]{1,8})*$")

ASPECT_KINDS = ("entry", "form", "sense")


class _Walker:
    def __init__(self, resource: LexicalResource, external_ids: Iterable[str] = ()):
        self.res = resource
        self.external = frozenset(external_ids)
        self.out: list[Diagnostic] = []
        self.declared: dict[str, tuple] = {}

    def emit(self, code, message, node, path):
        self.out.append(Diagnostic(code, message, node, self.res.location(path)))

    def declare(self, node_id, path):
        if node_id is None:
            return
        if not NCNAME.match(node_id):
            self.emit("E-ID-SYNTAX", f"{node_id!r} is not an NCName", node_id, path)
        if node_id in self.declared:
            first = self.res.location(self.declared[node_id])
            where = f" (first declared at {first})" if first else ""
            self.emit("E-ID-DUP", f"duplicate id {node_id!r}{where}", node_id, path)
        else:
            self.declared[node_id] = path

    def ref(self, target, node, path, kinds=None):
        """Check one reference; return True when it resolves."""
        if target in self.res.id_index:
            kind = self.res.node_kind(target)
            if kinds and kind not in kinds:
                self.emit(
                    "E-REF-KIND",
                    f"#{target} is a {kind}, expected {' or '.join(kinds)}",
                    node, path,
                )
            return True
        if target in self.external:
            return True
        self.emit("E-REF-DANGLING", f"reference to unknown id #{target}", node, path)
        return False

    def text(self, value, what, node, path):
        if value is None or not value.strip():
            self.emit("E-EMPTY-TEXT", f"empty {what}", node, path)

    def lang(self, tag, node, path):
        if tag is not None and not LANGUAGE_TAG.match(tag):
            self.emit("E-LANG-SYNTAX", f"invalid language tag {tag!r}", node, path)

    def features(self, feats, node, path):
        for f in feats:
            self.text(f.name, "grammatical feature name", node, path)
            self.text(f.value, f"value for grammatical feature {f.name!r}", node, path)

    # -- entries --------------------------------------------------------

    def run(self) -> list[Diagnostic]:
        for li, lexicon in enumerate(self.res.lexicons):
            self.lang(lexicon.language, None, (li,))
            for ei, entry in enumerate(lexicon.entries):
                self.entry(entry, (li, ei))
        for x, ref in enumerate(self.res.crossrefs):
            self.crossref(ref, ("xref", x))
        for b, bib in enumerate(self.res.bibliographies):
            path = ("bibl", b)
            self.declare(bib.id, path)
            self.text(bib.citation, "bibliographic citation", bib.id, path)
            for target in bib.attached_to:
                self.ref(target, bib.id, path)
        self.out.extend(check_acyclic(self.res))
        return self.out

    def entry(self, entry: LexicalEntry, key, host_id=None):
        path = entry_path(key)
        node = entry.id or host_id
        self.declare(entry.id, path)
        self.lang(entry.language, node, path)
        if entry.kind in ("etymon", "cognate") and not entry.language:
            self.emit("E-LANG-MISSING", f"{entry.kind} entry has no language", node, path)

        for k, form in enumerate(entry.forms):
            self.form(form, path + ("form", k), node, top=True)
        lemmas = entry.lemma_candidates()
        if not lemmas:
            self.emit("E-LEMMA-MISSING", "entry has no lemma form", node, path)
        elif len(lemmas) > 1:
            self.emit("E-LEMMA-MULTIPLE", f"entry has {len(lemmas)} lemma forms", node, path)

        if entry.etymology is not None:
            self.etymology(entry, path + ("etym",), node)
        for k, sense in enumerate(entry.senses):
            self.sense(sense, path + ("sense", k), node)
        if entry.kind == "standard" and not entry.senses:
            self.emit("W-NO-SENSE", "entry has no sense", node, path)
        if entry.kind == "related" and entry.senses:
            self.emit("I-RE-SENSE", "related entry carries senses", node, path)
        for ri, rel in enumerate(entry.related):
            self.entry(rel, key + (ri,), node)

    def form(self, form, path, node, top=False):
        self.declare(form.id, path)
        node = form.id or node
        if not form.representations and not form.segments:
            self.emit("E-FORM-EMPTY", "form has no orthography", node, path)
        for r, rep in enumerate(form.representations):
            self.text(rep.orthography, "orthography", node, path)
            if rep.pronunciation is not None:
                self.text(rep.pronunciation, "pronunciation", node, path)
            self.lang(rep.language, node, path)
        self.features(form.grammatical_features, node, path)
        for usage in form.usages:
            self.text(usage.usage_type, "usage type", node, path)
            self.text(usage.value, "usage value", node, path)
        if form.segments:
            self.segments(form, path, node)
        for j, nested in enumerate(form.nested_forms):
            npath = path + ("form", j)
            if form.form_class != "lemma":
                self.emit(
                    "E-FORM-NESTING",
                    f"form nested under a {form.form_class or 'untyped'} form",
                    nested.id or node, npath,
                )
            self.form(nested, npath, node)

    def segments(self, form, path, node):
        k = len(form.segments)
        seen = set()
        for s, seg in enumerate(form.segments):
            spath = path + ("seg", s)
            if not 1 <= seg.order <= k or seg.order in seen:
                self.emit(
                    "E-SEG-ORDER",
                    f"segment number {seg.order} outside 1..{k} or repeated",
                    node, spath,
                )
                break
            seen.add(seg.order)
        for s, seg in enumerate(form.segments):
            spath = path + ("seg", s)
            self.text(seg.surface, "segment text", node, spath)
            self.ref(seg.corresp, node, spath, ("form",))

    def sense(self, sense, path, node):
        self.declare(sense.id, path)
        node = sense.id or node
        if not (sense.definitions or sense.examples or sense.glosses or sense.subsenses):
            self.emit("E-SENSE-EMPTY", "sense has no content", node, path)
        self.features(sense.grammatical_features, node, path)
        groups = (("def", sense.definitions), ("gloss", sense.glosses), ("cit", sense.examples))
        for tag, texts in groups:
            for t, rep in enumerate(texts):
                tpath = path + (tag, t)
                self.text(rep.text, rep.kind, node, tpath)
                self.lang(rep.language, node, tpath)
                for bib in rep.bibliography_refs:
                    self.ref(bib, node, tpath, ("bibliography",))
        for j, sub in enumerate(sense.subsenses):
            self.sense(sub, path + ("sense", j), node)

    def etymology(self, entry, path, node):
        for ety, epath in walk_etymology(entry.etymology, path):
            self.declare(ety.id, epath)
            enode = ety.id or node
            if not ety.ety_type or not ety.ety_type.strip():
                self.emit("E-ETY-UNTYPED", "etymology has no type", enode, epath)
            if not ety.links and not ety.sub_etymologies:
                self.emit("E-ETY-EMPTY", "etymology is empty", enode, epath)
            misordered = False
            for i, link in enumerate(ety.links):
                lpath = epath + ("cit", i)
                self.declare(link.id, lpath)
                lnode = link.id or enode
                if link.order != i + 1 and not misordered:
                    misordered = True
                    self.emit(
                        "E-ETY-ORDER",
                        f"link numbered {link.order} at position {i + 1}",
                        lnode, lpath,
                    )
                if not link.link_type or not link.link_type.strip():
                    self.emit("E-ETY-UNTYPED", "link has no type", lnode, lpath)
                if not link.source_aspects or not link.target_aspects:
                    self.emit("E-ETY-ASPECT", "link needs source and target aspects", lnode, lpath)
                for aspect in link.source_aspects + link.target_aspects:
                    self.ref(aspect, lnode, lpath, ASPECT_KINDS)
                date = link.date
                if date is not None:
                    self.text(date.text, "date", lnode, lpath)
                    if (
                        date.kind == "range"
                        and date.year_start is not None
                        and date.year_end is not None
                        and date.year_start > date.year_end
                    ):
                        self.emit(
                            "E-DATE-RANGE",
                            f"range {date.year_start}..{date.year_end} is reversed",
                            lnode, lpath,
                        )
        self.out.extend(
            check_temporal_consistency(entry.etymology, path, self.res.location)
        )

    def crossref(self, ref, path):
        self.declare(ref.id, path)
        node = ref.id
        indices = [i for _, i in ref.targets]
        if not indices or indices != list(range(1, len(indices) + 1)):
            self.emit("E-XREF-ORDER", f"target numbers {indices} are not 1..k", node, path)
        ends = []
        if ref.source is not None and self.ref(ref.source, node, path):
            ends.append(ref.source)
        for target, _ in ref.targets:
            if self.ref(target, node, path):
                ends.append(target)
        if ref.ref_type in ("semantic_relation", "cross_reference") and ref.source in {
            t for t, _ in ref.targets
        }:
            self.emit("E-XREF-SELF", f"{ref.ref_type} points at its own source", node, path)
        lexicons = {self.res.owner_of(e)[0] for e in ends if self.res.owner_of(e) is not None}
        if len(lexicons) > 1:
            self.emit("I-XREF-LEXICON", "cross-reference spans lexicons", node, path)


def model_diagnostics(resource: LexicalResource, external_ids: Iterable[str] = ()) -> list[Diagnostic]:
    """All model-level diagnostics of ``resource`` in walk order.

    Ids in ``external_ids`` count as resolvable although declared elsewhere.
    """
    return _Walker(resource, external_ids).run()


def validate_resource(resource: LexicalResource, external_ids: Iterable[str] = ()) -> ValidationReport:
    """Validate a resource; never raises. Equal resources give equal reports."""
    return make_report(model_diagnostics(resource, external_ids))
