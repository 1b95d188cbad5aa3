"""Deterministic JSON rendering of a lexical resource, and its inverse.

Objects become JSON objects keyed by field name; fields still at their
default value are left out, tuples become arrays. The document carries a
``format`` version so later readers can refuse what they do not know.
"""

from __future__ import annotations

import dataclasses
import json
import types
import typing
from functools import lru_cache
from typing import Any, Optional, Union

from . import model
from .model import Bibliography, CrossRef, LexicalResource, Lexicon

FORMAT = "lmfkit-json/1"


def _is_default(f: dataclasses.Field, value) -> bool:
    if f.default is not dataclasses.MISSING:
        return value == f.default
    if f.default_factory is not dataclasses.MISSING:  # type: ignore[misc]
        return value == f.default_factory()  # type: ignore[misc]
    return False


def _fields(cls):
    return [f for f in dataclasses.fields(cls) if f.init and f.compare]


def to_data(value) -> Any:
    """Plain JSON-ready data for a model value."""
    if dataclasses.is_dataclass(value):
        out = {}
        for f in _fields(type(value)):
            item = getattr(value, f.name)
            if not _is_default(f, item):
                out[f.name] = to_data(item)
        return out
    if isinstance(value, (tuple, list)):
        return [to_data(v) for v in value]
    return value


@lru_cache(maxsize=None)
def _hints(cls) -> dict:
    return typing.get_type_hints(cls)


def _build(tp, data):
    if isinstance(tp, typing.ForwardRef):
        tp = tp.__forward_arg__
    if isinstance(tp, str):
        tp = getattr(model, tp)
    origin = typing.get_origin(tp)
    if origin in (Union, types.UnionType):
        if data is None:
            return None
        (inner,) = [a for a in typing.get_args(tp) if a is not type(None)]
        return _build(inner, data)
    if origin is tuple:
        args = typing.get_args(tp)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_build(args[0], d) for d in data)
        return tuple(_build(a, d) for a, d in zip(args, data))
    if dataclasses.is_dataclass(tp):
        return from_data(tp, data)
    if tp in (int, str, bool) and not isinstance(data, tp):
        raise ValueError(f"expected {tp.__name__}, got {data!r}")
    return data


def from_data(cls, data: dict):
    """Inverse of :func:`to_data` for dataclass ``cls``."""
    if not isinstance(data, dict):
        raise ValueError(f"expected an object for {cls.__name__}")
    hints = _hints(cls)
    known = {f.name for f in _fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown {cls.__name__} fields: {sorted(unknown)}")
    return cls(**{name: _build(hints[name], value) for name, value in data.items()})


def dumps(resource: LexicalResource) -> bytes:
    """Key-sorted, indented UTF-8 JSON for ``resource``."""
    doc = {
        "format": FORMAT,
        "lexicons": to_data(resource.lexicons),
    }
    if resource.crossrefs:
        doc["crossrefs"] = to_data(resource.crossrefs)
    if resource.bibliographies:
        doc["bibliographies"] = to_data(resource.bibliographies)
    return (json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode("utf-8")


def loads(data) -> LexicalResource:
    """Rebuild a resource from :func:`dumps` output (no validation)."""
    doc = json.loads(data)
    if doc.get("format") != FORMAT:
        raise ValueError(f"unsupported interchange format {doc.get('format')!r}")
    extra = set(doc) - {"format", "lexicons", "crossrefs", "bibliographies"}
    if extra:
        raise ValueError(f"unknown top-level keys: {sorted(extra)}")
    return LexicalResource(
        tuple(from_data(Lexicon, d) for d in doc.get("lexicons", [])),
        tuple(from_data(CrossRef, d) for d in doc.get("crossrefs", [])),
        tuple(from_data(Bibliography, d) for d in doc.get("bibliographies", [])),
    )

