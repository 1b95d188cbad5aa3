"""Round-trip properties over generated resources."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from lmfkit import canonicalize, parse_document, serialize_document
from lmfkit.interchange import dumps, loads
from lmfkit.validation import validate_resource

from gen import random_resource

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 8))
def test_parse_serialize_identity(seed, n):
    res = random_resource(random.Random(seed), n)
    assert validate_resource(res).ok
    parsed = parse_document(serialize_document(res))
    assert parsed.ok, parsed.errors
    assert parsed.value == res


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_serialized_output_is_canonical(seed):
    out = serialize_document(random_resource(random.Random(seed), 4))
    assert canonicalize(out) == out


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_json_identity(seed):
    res = random_resource(random.Random(seed), 4)
    data = dumps(res)
    assert loads(data) == res
    assert dumps(loads(data)) == data
