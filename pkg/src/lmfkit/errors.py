"""Exception types raised by lmfkit operations.

Validation findings are reported as :class:`~lmfkit.diagnostics.Diagnostic`
values; exceptions are reserved for operations that cannot produce a result.
"""

from __future__ import annotations


class LmfError(Exception):
    """Base class for all lmfkit errors."""

    code = "E-LMF"

    def __init__(self, message: str, node: str | None = None):
        super().__init__(message)
        self.message = message
        self.node = node


class InvalidResource(LmfError):
    """A resource failed construction-time validation."""

    def __init__(self, code: str, message: str, node: str | None = None):
        super().__init__(message, node)
        self.code = code


class DuplicateId(InvalidResource):
    def __init__(self, node_id: str, message: str | None = None):
        super().__init__("E-ID-DUP", message or f"duplicate id {node_id!r}", node_id)
        self.id = node_id


class DanglingReference(InvalidResource):
    def __init__(self, source: str | None, target: str, message: str | None = None):
        super().__init__(
            "E-REF-DANGLING",
            message or f"reference to unknown id {target!r}",
            source,
        )
        self.source = source
        self.target = target


class MissingLemma(InvalidResource):
    def __init__(self, entry_id: str | None, message: str | None = None, code: str = "E-LEMMA-MISSING"):
        super().__init__(code, message or "entry has no lemma", entry_id)
        self.entry_id = entry_id


class NotAnMwe(LmfError):
    code = "E-NOT-MWE"


class NoEtymology(LmfError):
    code = "E-NO-ETYMOLOGY"


class CyclicEtymology(LmfError):
    code = "E-ETY-CYCLE"

    def __init__(self, cycle: list[str]):
        super().__init__("etymology cycle: " + " -> ".join(cycle), cycle[0] if cycle else None)
        self.cycle = cycle


class NotFound(LmfError):
    code = "E-NOT-FOUND"


class ExportError(LmfError):
    code = "E-EXPORT-INVALID"


class Unserializable(LmfError):
    code = "E-UNSERIALIZABLE"


class ParseError(LmfError):
    """Raised by operations that require a cleanly parsing document."""

    code = "E-PARSE"

    def __init__(self, diagnostics):
        first = diagnostics[0] if diagnostics else None
        super().__init__(first.message if first else "document did not parse")
        self.diagnostics = list(diagnostics)
        if first is not None:
            self.code = first.code


class ProfileSyntaxError(LmfError):
    code = "E-PROFILE-SYNTAX"
