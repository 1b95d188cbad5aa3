"""Checked construction of resources, reference resolution, bibliography."""

from __future__ import annotations

from dataclasses import replace

from .errors import DanglingReference, DuplicateId, InvalidResource, MissingLemma
from .model import Bibliography, CrossRef, LexicalResource
from .validation import model_diagnostics

# graph-level findings; they do not block construction
_DEFERRED = {"E-ETY-CYCLE"}


def _raise_for(diag):
    if diag.code == "E-ID-DUP":
        raise DuplicateId(diag.node, diag.message)
    if diag.code == "E-REF-DANGLING":
        target = diag.message.rsplit("#", 1)[-1]
        raise DanglingReference(diag.node, target, diag.message)
    if diag.code in ("E-LEMMA-MISSING", "E-LEMMA-MULTIPLE"):
        raise MissingLemma(diag.node, diag.message, diag.code)
    raise InvalidResource(diag.code, diag.message, diag.node)


def check(resource: LexicalResource) -> LexicalResource:
    """Raise for the first construction error in document order."""
    for diag in model_diagnostics(resource):
        if diag.is_error and diag.code not in _DEFERRED:
            _raise_for(diag)
    return resource


def build_resource(lexicons=(), crossrefs=(), bibliographies=()) -> LexicalResource:
    """Build a resource, failing atomically on the first invariant violation.

    Raises :class:`DuplicateId`, :class:`DanglingReference`,
    :class:`MissingLemma`, or :class:`InvalidResource` for other codes.
    """
    return check(LexicalResource(tuple(lexicons), tuple(crossrefs), tuple(bibliographies)))


def resolve(resource: LexicalResource, ref: CrossRef) -> list:
    """Target nodes of ``ref`` in order-index order."""
    nodes = []
    for target, _ in sorted(ref.targets, key=lambda p: p[1]):
        try:
            nodes.append(resource.id_index[target])
        except KeyError:
            raise DanglingReference(ref.id, target) from None
    return nodes


def attach_bibliography(resource: LexicalResource, bib: Bibliography) -> LexicalResource:
    """Return a new resource with ``bib`` registered; ``resource`` is untouched."""
    for target in bib.attached_to:
        if target not in resource.id_index:
            raise DanglingReference(bib.id, target)
    if bib.id in resource.id_index:
        raise DuplicateId(bib.id)
    return check(replace(resource, bibliographies=resource.bibliographies + (bib,)))
