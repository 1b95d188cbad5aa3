"""Etymology queries: ancestry chains, cognates, date and cycle checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .diagnostics import Diagnostic
from .errors import CyclicEtymology, NoEtymology, NotFound
from .model import EntryKey, Etymology, EtyLink, LexicalEntry, LexicalResource


def entry_path(key: EntryKey) -> tuple:
    path = (key[0], "entry", key[1])
    if len(key) > 2:
        path += ("re", key[2])
    return path


def walk_etymology(ety: Etymology, path: tuple) -> Iterator[tuple[Etymology, tuple]]:
    yield ety, path
    for j, sub in enumerate(ety.sub_etymologies):
        yield from walk_etymology(sub, path + ("etym", j))


def iter_links(resource: LexicalResource) -> Iterator[tuple[EntryKey, tuple, EtyLink]]:
    """Every link in document order as ``(host entry key, link path, link)``."""
    for key, entry in resource.iter_entries():
        if entry.etymology is None:
            continue
        for ety, path in walk_etymology(entry.etymology, entry_path(key) + ("etym",)):
            for i, link in enumerate(ety.links):
                yield key, path + ("cit", i), link


@dataclass(frozen=True)
class _Edge:
    target: EntryKey  # the younger entry
    source: EntryKey  # its ancestor
    host: EntryKey
    seq: int
    link: EtyLink
    path: tuple


def ancestry_edges(resource: LexicalResource) -> list[_Edge]:
    """Directed entry -> ancestor edges from every ancestry (non-cognate) link.

    A link with several sources and targets contributes one edge per pair.
    """
    edges = []
    for seq, (host, path, link) in enumerate(iter_links(resource)):
        if link.role == "cognate":
            continue
        for t in link.target_aspects:
            tk = resource.owner_of(t)
            for s in link.source_aspects:
                sk = resource.owner_of(s)
                if tk is not None and sk is not None:
                    edges.append(_Edge(tk, sk, host, seq, link, path))
    return edges


def _resolve_entry(resource: LexicalResource, entry) -> EntryKey:
    if isinstance(entry, LexicalEntry):
        key = resource.key_of(entry)
    else:
        key = resource.owner_of(entry)
        if key is not None and resource.node_kind(entry) != "entry":
            key = None
    if key is None:
        raise NotFound(f"no entry {entry if isinstance(entry, str) else entry.headword!r}")
    return key


def _label(resource, key):
    entry = resource.entry_at(key)
    return entry.id or entry.headword or str(key)


def ety_chain(resource: LexicalResource, entry) -> list[tuple[str, LexicalEntry]]:
    """Ancestors of ``entry`` as ``(link type, ancestor entry)``, most recent first.

    ``entry`` is an entry id or an entry of ``resource``. At each step the
    first matching link wins, preferring links authored in the current
    entry's own etymology.
    """
    start = _resolve_entry(resource, entry)
    if resource.entry_at(start).etymology is None:
        raise NoEtymology(f"entry {_label(resource, start)!r} has no etymology", resource.entry_at(start).id)
    by_target: dict[EntryKey, list[_Edge]] = {}
    for edge in ancestry_edges(resource):
        by_target.setdefault(edge.target, []).append(edge)

    chain = []
    visited = [start]
    current = start
    while True:
        candidates = by_target.get(current)
        if not candidates:
            break
        edge = min(candidates, key=lambda e: (e.host != current, e.seq))
        if edge.source in visited:
            cycle = visited[visited.index(edge.source):] + [edge.source]
            raise CyclicEtymology([_label(resource, k) for k in cycle])
        chain.append((edge.link.link_type, resource.entry_at(edge.source)))
        visited.append(edge.source)
        current = edge.source
    return chain


def cognates_of(resource: LexicalResource, entry) -> list[LexicalEntry]:
    """Cognate entries referenced by the entry's etymology links, deduplicated."""
    key = _resolve_entry(resource, entry)
    host = resource.entry_at(key)
    if host.etymology is None:
        raise NoEtymology(f"entry {_label(resource, key)!r} has no etymology", host.id)
    found = set()
    for link in host.etymology.all_links():
        for aspect in link.source_aspects + link.target_aspects:
            owner = resource.owner_of(aspect)
            if owner is not None and resource.entry_at(owner).kind == "cognate":
                found.add(owner)
    return [resource.entry_at(k) for k in sorted(found)]


def _span(date) -> Optional[tuple[int, int]]:
    if date is None or date.kind == "relative":
        return None
    start, end = date.year_start, date.year_end
    if start is None and end is None:
        return None
    return (start if start is not None else end, end if end is not None else start)


def check_temporal_consistency(ety: Etymology, path: tuple = (), locate=None) -> list[Diagnostic]:
    """Warn where a link is dated strictly later than the link ordered before it.

    Links walk from the present into the past, so dates must not increase.
    Relative and undated links are skipped, and a skipped link breaks the pair.
    """
    out = []
    for node, npath in walk_etymology(ety, path):
        ordered = sorted(enumerate(node.links), key=lambda p: p[1].order)
        for (_, earlier), (i, later) in zip(ordered, ordered[1:]):
            a, b = _span(earlier.date), _span(later.date)
            if a is None or b is None:
                continue
            if b[0] > a[1]:
                out.append(Diagnostic(
                    "W-ETY-DATE",
                    f"link {later.order} dated {later.date.text!r} is more recent than "
                    f"link {earlier.order} dated {earlier.date.text!r}",
                    later.id or node.id,
                    locate(npath + ("cit", i)) if locate else None,
                ))
    return out


def strongly_connected(nodes: list, succ: dict) -> list[list]:
    """Tarjan's algorithm, iterative. Components come out in discovery order."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack: list = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                comps.append(comp)
    return comps


def check_acyclic(resource: LexicalResource) -> list[Diagnostic]:
    """One E-ETY-CYCLE per strongly connected component of the entry -> ancestor
    graph with more than one member, or with a self-loop."""
    edges = ancestry_edges(resource)
    succ: dict[EntryKey, list[EntryKey]] = {}
    for e in edges:
        succ.setdefault(e.target, []).append(e.source)
    nodes = [k for k, _ in resource.iter_entries()]
    out = []
    for comp in strongly_connected(nodes, succ):
        members = set(comp)
        inner = [e for e in edges if e.target in members and e.source in members]
        if not inner:
            continue
        first = min(inner, key=lambda e: e.seq)
        ordered = sorted(members)
        labels = ", ".join(_label(resource, k) for k in ordered)
        out.append((first.seq, Diagnostic(
            "E-ETY-CYCLE",
            f"etymological cycle through {labels}",
            first.link.id or resource.entry_at(ordered[0]).id,
            resource.location(first.path),
        )))
    out.sort(key=lambda p: p[0])
    return [d for _, d in out]
