"""A small located element tree built with expat, and the canonical writer."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional
from xml.parsers import expat

from ..diagnostics import Diagnostic, Location

TEI_NS = "http://www.tei-c.org/ns/1.0"
XML_NS = "http://www.w3.org/XML/1998/namespace"

_DECL_ENCODING = re.compile(rb"""^\s*<\?xml[^>]*?encoding\s*=\s*["']([^"']*)["']""")
_UTF8_NAMES = {"utf-8", "utf8"}


@dataclass
class XNode:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list["XNode"] = field(default_factory=list)
    text: str = ""
    line: int = 0
    column: int = 0
    # position of the first non-whitespace character data, if any
    text_at: Optional[tuple[int, int]] = None

    def attr(self, name: str) -> Optional[str]:
        value = self.attrs.get(name)
        return None if value is None else " ".join(value.split())


def collapse(text: str) -> str:
    return " ".join(text.split())


def _qualify(name: str) -> str:
    uri, _, local = name.rpartition(" ")
    if not uri or uri == TEI_NS:
        return local
    if uri == XML_NS:
        return "xml:" + local
    return "{%s}%s" % (uri, local)


def _position(data: bytes, offset: int) -> tuple[int, int]:
    head = data[:offset]
    line = head.count(b"\n") + 1
    column = offset - (head.rfind(b"\n") + 1) + 1
    return line, column


def parse_xml(data: bytes, filename: Optional[str] = None) -> tuple[Optional[XNode], list[Diagnostic]]:
    """Parse UTF-8 XML bytes into an :class:`XNode` tree.

    Returns ``(None, diagnostics)`` when the input is not UTF-8 or not
    well-formed. Columns are 1-based.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    if data.startswith(b"\xef\xbb\xbf"):
        data = data[3:]
    if data.startswith((b"\xff\xfe", b"\xfe\xff")) or data[:2] in (b"<\x00", b"\x00<"):
        return None, [Diagnostic("E-XML-ENCODING", "document is UTF-16 encoded", None,
                                 Location(filename, 1, 1))]
    m = _DECL_ENCODING.match(data)
    if m and m.group(1).decode("ascii", "replace").lower() not in _UTF8_NAMES:
        return None, [Diagnostic(
            "E-XML-ENCODING",
            f"declared encoding {m.group(1).decode('ascii', 'replace')!r}; only UTF-8 is accepted",
            None, Location(filename, 1, 1),
        )]
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line, col = _position(data, exc.start)
        return None, [Diagnostic("E-XML-ENCODING", "invalid UTF-8 byte sequence", None,
                                 Location(filename, line, col))]

    parser = expat.ParserCreate("UTF-8", " ")
    parser.ordered_attributes = True
    stack: list[XNode] = []
    root: list[XNode] = []

    def start(name, attrs):
        node = XNode(
            _qualify(name),
            {_qualify(attrs[i]): attrs[i + 1] for i in range(0, len(attrs), 2)},
            line=parser.CurrentLineNumber,
            column=parser.CurrentColumnNumber + 1,
        )
        if stack:
            stack[-1].children.append(node)
        else:
            root.append(node)
        stack.append(node)

    def end(name):
        stack.pop()

    def chars(data):
        if not stack:
            return
        node = stack[-1]
        node.text += data
        if node.text_at is None and data.strip():
            node.text_at = (parser.CurrentLineNumber, parser.CurrentColumnNumber + 1)

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        return None, [Diagnostic(
            "E-XML-MALFORMED", expat.ErrorString(exc.code), None,
            Location(filename, exc.lineno, exc.offset + 1),
        )]
    return root[0], []


def _escape_text(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace("\r", "&#13;")
    )


def _escape_attr(value: str) -> str:
    return (
        _escape_text(value)
        .replace('"', "&quot;")
        .replace("\t", "&#9;")
        .replace("\n", "&#10;")
    )


def write(root: XNode, attr_order: Callable[[Optional[str], XNode], list[str]]) -> bytes:
    """Render a tree in canonical form: 2-space indentation, one element per
    line, text-only elements inline, TEI namespace declared on the root.

    ``attr_order(parent_tag, node)`` gives the attribute order for ``node``.
    """
    lines: list[str] = []

    def emit(node: XNode, parent: Optional[str], depth: int):
        names = attr_order(parent, node)
        rest = sorted(n for n in node.attrs if n not in names)
        parts = [f' xmlns="{TEI_NS}"'] if depth == 0 else []
        for name in list(names) + rest:
            if name in node.attrs:
                parts.append(f' {name}="{_escape_attr(node.attrs[name])}"')
        head = "  " * depth + "<" + node.tag + "".join(parts)
        if node.children:
            lines.append(head + ">")
            for child in node.children:
                emit(child, node.tag, depth + 1)
            lines.append("  " * depth + f"</{node.tag}>")
        elif node.text:
            lines.append(f"{head}>{_escape_text(node.text)}</{node.tag}>")
        else:
            lines.append(head + "/>")

    emit(root, None, 0)
    return ("\n".join(lines) + "\n").encode("utf-8")
