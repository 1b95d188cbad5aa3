import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmfkit import (
    Form,
    FormRepresentation,
    GrammaticalFeature,
    LexicalEntry,
    Lexicon,
    MweSegment,
    NotAnMwe,
    Usage,
    build_resource,
    forms_by_class,
    inflection_table,
    mwe_components,
)
from lmfkit.model import FORM_CLASSES
from lmfkit.store import ingest

from conftest import FIXTURES
from gen import random_resource


def test_center_mwe_components():
    store, report = ingest([FIXTURES / "center.xml", FIXTURES / "dead.xml"])
    assert report.ok
    res = store.resource
    (key,) = store.lemma_index["center"]
    (mwe,) = res.entry_at(key).related
    assert mwe_components(res, mwe) == [("dead_form", "dead"), ("center_form", "center")]
    assert mwe.lemma.surface == "dead center"


def test_forms_by_class_center(center_doc):
    e = center_doc.entry
    assert [f.orthographies[0] for f in forms_by_class(e, "inflected")] == ["centers", "centres"]
    assert forms_by_class(e, "stem") == []
    (variant,) = forms_by_class(e, "variant")
    assert variant.orthographies == ("centre",)
    assert variant.mrd_class == "related_form"


def test_inflection_table_center(center_doc):
    assert inflection_table(center_doc.entry) == [
        ("centers", {"number": "plural"}, {"geo": "U.S"}),
        ("centres", {"number": "plural"}, {"geo": "U.K"}),
    ]


def test_inflection_table_empty():
    e = LexicalEntry(forms=(Form("lemma", (FormRepresentation("a"),)),))
    assert inflection_table(e) == []


def test_inflection_table_row_count_matches_scan():
    rnd = random.Random(3)
    forms = [Form("lemma", (FormRepresentation("go"),))]
    for orth in ("goes", "went", "gone"):
        cls = rnd.choice(("inflected", "word_form"))
        forms.append(Form(cls, (FormRepresentation(orth),), (GrammaticalFeature("tense", "x", "gram", False),)))
    forms.append(Form("stem", (FormRepresentation("g-"),)))
    e = LexicalEntry(forms=tuple(forms))
    expected = sum(1 for f in e.all_forms() if f.form_class in ("inflected", "word_form"))
    assert len(inflection_table(e)) == expected == 3


def _mwe_resource(order):
    words = [LexicalEntry(forms=(Form("lemma", (FormRepresentation(f"w{i}"),), id=f"f{i}"),), id=f"e{i}") for i in range(len(order))]
    segs = tuple(MweSegment(f"f{n - 1}", n, f"w{n - 1}") for n in order)
    host = LexicalEntry(
        forms=(Form("lemma", (FormRepresentation("host"),)),),
        id="host",
        related=(LexicalEntry(forms=(Form(None, segments=segs),), kind="related", id="mwe", re_type="multiWordExpression"),),
    )
    return build_resource([Lexicon("en", [host] + words)])


def test_single_segment_mwe():
    res = _mwe_resource([1])
    assert mwe_components(res, "mwe") == [("f0", "w0")]


@settings(max_examples=50, deadline=None)
@given(st.permutations([1, 2, 3, 4]))
def test_shuffled_segments_sorted(order):
    res = _mwe_resource(list(order))
    raw = [(s.corresp, s.surface, s.order) for s in res.id_index["mwe"].lemma.segments]
    expected = [(c, s) for c, s, _ in sorted(raw, key=lambda t: t[2])]
    assert mwe_components(res, "mwe") == expected
    assert " ".join(s for _, s in expected) == res.id_index["mwe"].lemma.surface


def test_not_an_mwe(center_doc):
    with pytest.raises(NotAnMwe):
        mwe_components(center_doc.value, center_doc.entry)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_class_partition(seed):
    res = random_resource(random.Random(seed), 3)
    for _, e in res.iter_entries():
        every = list(e.all_forms())
        parts = [f for cls in FORM_CLASSES for f in forms_by_class(e, cls)]
        untyped = [f for f in every if f.form_class is None]
        assert len(parts) + len(untyped) == len(every)
        assert sorted(map(id, parts + untyped)) == sorted(map(id, every))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_segment_integrity_and_surface(seed):
    res = random_resource(random.Random(seed), 4)
    for _, e in res.iter_entries():
        if e.is_mwe:
            segs = e.lemma.segments
            assert sorted(s.order for s in segs) == list(range(1, len(segs) + 1))
            assert " ".join(s for _, s in mwe_components(res, e)) == e.lemma.surface


def test_usage_and_feature_values():
    u = Usage("geo", "U.S")
    assert (u.usage_type, u.value) == ("geo", "U.S")
    with pytest.raises(ValueError):
        GrammaticalFeature("number", "plural", "element", grouped=False)
