import json

import pytest

from lmfkit import Form, FormRepresentation, LexicalEntry, LexicalResource, Lexicon
from lmfkit.interchange import FORMAT, dumps, from_data, loads, to_data


def test_empty_resource():
    assert json.loads(dumps(LexicalResource())) == {"format": FORMAT, "lexicons": []}


def test_defaults_are_omitted():
    form = Form("lemma", (FormRepresentation("a"),))
    assert to_data(form) == {"representations": [{"orthography": "a"}]}
    assert from_data(Form, to_data(form)) == form


def test_keys_sorted_and_utf8():
    res = LexicalResource((Lexicon("grc", (LexicalEntry(forms=(Form("lemma", (FormRepresentation("κέντρον"),)),)),)),))
    text = dumps(res).decode("utf-8")
    assert "κέντρον" in text
    assert text == json.dumps(json.loads(text), ensure_ascii=False, sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize("doc", [
    {"format": "other/9", "lexicons": []},
    {"format": FORMAT, "lexicons": [], "extra": 1},
    {"format": FORMAT, "lexicons": [{"entries": [{"colour": "red"}]}]},
    {"format": FORMAT, "lexicons": [{"language": 5}]},
])
def test_rejects_unknown_input(doc):
    with pytest.raises(ValueError):
        loads(json.dumps(doc))
