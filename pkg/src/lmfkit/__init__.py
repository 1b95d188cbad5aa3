"""Lexical Markup Framework object model with a constrained TEI serialization."""

from .core import attach_bibliography, build_resource, resolve
from .diagnostics import Diagnostic, Location, ValidationReport, registry
from .errors import (
    CyclicEtymology,
    DanglingReference,
    DuplicateId,
    ExportError,
    LmfError,
    MissingLemma,
    NoEtymology,
    NotAnMwe,
    NotFound,
    ParseError,
    Unserializable,
)
from .etymology import check_acyclic, check_temporal_consistency, cognates_of, ety_chain
from .model import (
    Bibliography,
    CrossRef,
    EtyDate,
    EtyLink,
    Etymology,
    Form,
    FormRepresentation,
    GrammaticalFeature,
    LexicalEntry,
    LexicalResource,
    Lexicon,
    MweSegment,
    Sense,
    TextRepresentation,
    Usage,
)
from .mrd import forms_by_class, inflection_table, mwe_components
from .store import Store, StatsReport, etym_trace, export_json, import_json, ingest, lookup, stats
from .tei import (
    ParseReport,
    SerializationProfile,
    canonicalize,
    load_profile,
    parse_document,
    parse_entry,
    serialize_document,
    serialize_entry,
    serialize_etymology,
)
from .validation import validate_resource

__version__ = "0.1.0"
