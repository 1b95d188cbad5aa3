"""Serialization profile: a declarative whitelist of elements, attributes and
content rules, loaded from a line-oriented text file."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from ..diagnostics import Diagnostic, Location
from ..errors import ProfileSyntaxError
from .xmltree import XNode, collapse

PROFILE_ENV = "LMFKIT_PROFILE"
UNBOUNDED = 10**9

_DATATYPES = {
    "id": re.compile(r"^\S+$"),
    "language": re.compile(r"^\S+$"),
    "pointer": re.compile(r"^#\S+$"),
    "pointers": re.compile(r"^#\S+( #\S+)*$"),
    "posint": re.compile(r"^[1-9][0-9]*$"),
    "year": re.compile(r"^-?(0|[1-9][0-9]*)$"),
    "token": re.compile(r"^\S+$"),
    "text": re.compile(r"^.*$", re.S),
}
_SUFFIX = {"?": (0, 1), "*": (0, UNBOUNDED), "+": (1, UNBOUNDED), "": (1, 1)}


@dataclass(frozen=True)
class AttrRule:
    name: str
    datatype: str
    required: bool = False
    values: tuple[str, ...] = ()

    def accepts(self, value: str) -> bool:
        if self.datatype == "enum":
            return value in self.values
        return bool(_DATATYPES[self.datatype].match(value))


@dataclass(frozen=True)
class Particle:
    name: str
    min: int
    max: int


@dataclass
class ElementRule:
    key: str
    attrs: dict[str, AttrRule] = field(default_factory=dict)
    content: str = "empty"  # ordered | free | text | empty
    particles: tuple[Particle, ...] = ()
    min_children: int = 0
    verbatim: bool = False

    @property
    def tag(self) -> str:
        return self.key.rpartition("/")[2]

    def allows_child(self, tag: str) -> bool:
        return any(p.name == tag for p in self.particles)


@dataclass
class SerializationProfile:
    roots: tuple[str, ...]
    elements: dict[str, ElementRule]

    def rule(self, parent: Optional[str], tag: str) -> Optional[ElementRule]:
        if parent is not None and f"{parent}/{tag}" in self.elements:
            return self.elements[f"{parent}/{tag}"]
        return self.elements.get(tag)

    def knows(self, tag: str) -> bool:
        return any(rule.tag == tag for rule in self.elements.values())

    def attr_order(self, parent: Optional[str], node: XNode) -> list[str]:
        rule = self.rule(parent, node.tag)
        return list(rule.attrs) if rule else []

    def is_verbatim(self, parent: Optional[str], tag: str) -> bool:
        rule = self.rule(parent, tag)
        return bool(rule and rule.verbatim)


def _particle(token: str, lineno: int) -> Particle:
    m = re.match(r"^([A-Za-z][\w]*)([?*+]?)$", token)
    if not m:
        raise ProfileSyntaxError(f"line {lineno}: bad content particle {token!r}")
    lo, hi = _SUFFIX[m.group(2)]
    return Particle(m.group(1), lo, hi)


def parse_profile(text: str) -> SerializationProfile:
    roots: tuple[str, ...] = ()
    elements: dict[str, ElementRule] = {}
    current: Optional[ElementRule] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "roots":
            roots = tuple(words[1:])
        elif head == "element":
            if len(words) != 2:
                raise ProfileSyntaxError(f"line {lineno}: element takes one name")
            current = elements[words[1]] = ElementRule(words[1])
        elif current is None:
            raise ProfileSyntaxError(f"line {lineno}: {head!r} outside an element")
        elif head == "attr":
            if len(words) < 3:
                raise ProfileSyntaxError(f"line {lineno}: attr needs a name and a type")
            name, datatype, rest = words[1], words[2], words[3:]
            if datatype != "enum" and datatype not in _DATATYPES:
                raise ProfileSyntaxError(f"line {lineno}: unknown datatype {datatype!r}")
            required = bool(rest) and rest[0] == "required"
            if required:
                rest = rest[1:]
            values: tuple[str, ...] = ()
            if rest:
                if rest[0] != "=":
                    raise ProfileSyntaxError(f"line {lineno}: expected '=' before values")
                values = tuple(rest[1:])
            if datatype == "enum" and not values:
                raise ProfileSyntaxError(f"line {lineno}: enum without values")
            current.attrs[name] = AttrRule(name, datatype, required, values)
        elif head == "content":
            kind = words[1] if len(words) > 1 else ""
            if kind in ("ordered", "free"):
                parts = []
                for token in words[2:]:
                    if token.startswith("min="):
                        current.min_children = int(token[4:])
                    else:
                        parts.append(_particle(token, lineno))
                current.content = kind
                current.particles = tuple(parts)
            elif kind == "text":
                current.content = "text"
                current.verbatim = words[2:] == ["verbatim"]
            elif kind == "empty":
                current.content = "empty"
            else:
                raise ProfileSyntaxError(f"line {lineno}: unknown content model {kind!r}")
        else:
            raise ProfileSyntaxError(f"line {lineno}: unknown directive {head!r}")
    if not roots:
        raise ProfileSyntaxError("profile declares no roots")
    return SerializationProfile(roots, elements)


@lru_cache(maxsize=None)
def _load(path: Optional[str]) -> SerializationProfile:
    if path is None:
        text = resources.files("lmfkit.tei").joinpath("lmf-tei.profile").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return parse_profile(text)


def load_profile(path=None) -> SerializationProfile:
    """Load a profile from ``path``, ``$LMFKIT_PROFILE``, or the packaged default."""
    if path is None:
        path = os.environ.get(PROFILE_ENV) or None
    return _load(None if path is None else str(path))


def default_profile() -> SerializationProfile:
    return _load(None)


class _Checker:
    def __init__(self, profile: SerializationProfile, filename: Optional[str]):
        self.profile = profile
        self.filename = filename
        self.out: list[Diagnostic] = []

    def emit(self, code, message, at):
        line, col = (at.line, at.column) if isinstance(at, XNode) else at
        self.out.append(Diagnostic(code, message, None, Location(self.filename, line, col)))

    def check(self, root: XNode):
        if root.tag not in self.profile.roots:
            if self.profile.knows(root.tag):
                self.emit("E-PROFILE-CONTENT", f"<{root.tag}> cannot be the document element", root)
            else:
                self.emit("E-PROFILE-ELEMENT", f"element <{root.tag}> is not in the profile", root)
            return self.out
        self.visit(root, None)
        return self.out

    def visit(self, node: XNode, parent: Optional[str]):
        rule = self.profile.rule(parent, node.tag)
        for name, value in node.attrs.items():
            arule = rule.attrs.get(name)
            if arule is None:
                self.emit("E-PROFILE-ATTR", f"attribute {name} not allowed on <{node.tag}>", node)
            elif not arule.accepts(collapse(value)):
                self.emit(
                    "E-PROFILE-VALUE",
                    f"{node.tag}/@{name} value {collapse(value)!r} not allowed",
                    node,
                )
        for name, arule in rule.attrs.items():
            if arule.required and name not in node.attrs:
                self.emit("E-PROFILE-ATTR", f"<{node.tag}> requires attribute {name}", node)

        if rule.content in ("text", "empty"):
            if node.children:
                self.emit("E-PROFILE-CONTENT", f"<{node.tag}> may not contain elements", node.children[0])
            elif rule.content == "empty" and node.text_at:
                self.emit("E-PROFILE-CONTENT", f"<{node.tag}> must be empty", node.text_at)
            return
        if node.text_at:
            self.emit("E-PROFILE-CONTENT", f"text not allowed directly in <{node.tag}>", node.text_at)

        accepted = []
        for child in node.children:
            if not self.profile.knows(child.tag):
                self.emit("E-PROFILE-ELEMENT", f"element <{child.tag}> is not in the profile", child)
            elif not rule.allows_child(child.tag) or self.profile.rule(node.tag, child.tag) is None:
                self.emit("E-PROFILE-CONTENT", f"<{child.tag}> not allowed in <{node.tag}>", child)
            else:
                accepted.append(child)
        if rule.content == "ordered":
            self.ordered(node, rule, accepted)
        else:
            self.free(node, rule, accepted)
        # rejected children were already reported; they still count as content
        if len(node.children) < rule.min_children:
            self.emit("E-PROFILE-CONTENT", f"<{node.tag}> is empty", node)
        for child in accepted:
            self.visit(child, node.tag)

    def ordered(self, node, rule, children):
        parts = rule.particles
        i, count = 0, 0
        for child in children:
            j, seen = i, count
            skipped_required = None
            while j < len(parts) and parts[j].name != child.tag:
                if seen < parts[j].min and skipped_required is None:
                    skipped_required = parts[j].name
                j += 1
                seen = 0
            if j == len(parts):
                self.emit("E-PROFILE-CONTENT", f"<{child.tag}> out of order in <{node.tag}>", child)
                continue
            if skipped_required:
                self.emit(
                    "E-PROFILE-CONTENT",
                    f"<{node.tag}> needs <{skipped_required}> before <{child.tag}>",
                    child,
                )
            i, count = j, seen + 1
            if count > parts[i].max:
                self.emit("E-PROFILE-CONTENT", f"too many <{child.tag}> in <{node.tag}>", child)
        for j in range(i, len(parts)):
            have = count if j == i else 0
            if have < parts[j].min:
                self.emit("E-PROFILE-CONTENT", f"<{node.tag}> needs <{parts[j].name}>", node)
                break

    def free(self, node, rule, children):
        counts: dict[str, int] = {}
        for child in children:
            counts[child.tag] = counts.get(child.tag, 0) + 1
            part = next(p for p in rule.particles if p.name == child.tag)
            if counts[child.tag] > part.max:
                self.emit("E-PROFILE-CONTENT", f"too many <{child.tag}> in <{node.tag}>", child)
        for part in rule.particles:
            if counts.get(part.name, 0) < part.min:
                self.emit("E-PROFILE-CONTENT", f"<{node.tag}> needs <{part.name}>", node)


def check_tree(root: XNode, profile: SerializationProfile, filename: Optional[str] = None) -> list[Diagnostic]:
    """Profile conformance of a parsed tree, one diagnostic per violation."""
    return _Checker(profile, filename).check(root)
