"""Class-inclusion and part-whole hierarchies with description-length
accounting.

Attribute inheritance is pure set union over ancestors (an attribute
reachable twice appears once - that union is the unification step), with no
defaults or overriding.  Description lengths compare two renderings of the
same knowledge: ``flat`` writes every class out with its fully-resolved
attributes, ``hierarchical`` writes own attributes once plus one link symbol
per parent reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DegenerateAlphabet, InputFormatError, UnknownClass
from .patterns import SPSymbol, symbol_cost_bits

DL_FORMS = ("flat", "hierarchical")


@dataclass(frozen=True)
class ClassNode:
    name: str
    own_attributes: frozenset[SPSymbol] = frozenset()
    parents: frozenset[str] = frozenset()
    parts: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("class name must be non-empty")
        object.__setattr__(self, "own_attributes", frozenset(self.own_attributes))
        object.__setattr__(self, "parents", frozenset(self.parents))
        object.__setattr__(self, "parts", tuple(self.parts))


class Hierarchy:
    """An immutable set of class nodes, acyclic under parents and parts."""

    def __init__(self, nodes: Iterable[ClassNode]):
        by_name: dict[str, ClassNode] = {}
        for node in nodes:
            if node.name in by_name:
                raise ValueError(f"duplicate class name {node.name!r}")
            by_name[node.name] = node
        for node in by_name.values():
            for ref in list(node.parents) + list(node.parts):
                if ref not in by_name:
                    raise ValueError(f"class {node.name!r} references unknown {ref!r}")
        self._nodes = by_name
        self._check_acyclic("parents", lambda n: n.parents)
        self._check_acyclic("parts", lambda n: n.parts)

    def _check_acyclic(self, label, edges):
        state: dict[str, int] = {}

        def visit(name: str):
            if state.get(name) == 1:
                raise ValueError(f"cycle in {label} at {name!r}")
            if state.get(name) == 2:
                return
            state[name] = 1
            for nxt in edges(self._nodes[name]):
                visit(nxt)
            state[name] = 2

        for name in self._nodes:
            visit(name)

    def node(self, name: str) -> ClassNode:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownClass(f"no class named {name!r}") from None

    def names(self) -> list[str]:
        return sorted(self._nodes)

    def leaves(self) -> list[str]:
        """Classes that no other class lists as a parent."""
        referenced = {p for n in self._nodes.values() for p in n.parents}
        return [name for name in self.names() if name not in referenced]

    def __contains__(self, name: str) -> bool:
        return name in self._nodes

    def __iter__(self) -> Iterator[ClassNode]:
        for name in self.names():
            yield self._nodes[name]

    def __len__(self) -> int:
        return len(self._nodes)


def ancestors(h: Hierarchy, name: str) -> set[str]:
    out: set[str] = set()
    stack = list(h.node(name).parents)
    while stack:
        cur = stack.pop()
        if cur not in out:
            out.add(cur)
            stack.extend(h.node(cur).parents)
    return out


def resolve_attributes(h: Hierarchy, name: str) -> frozenset[SPSymbol]:
    """Own attributes unioned with everything inherited via parents."""
    attrs = set(h.node(name).own_attributes)
    for anc in ancestors(h, name):
        attrs |= h.node(anc).own_attributes
    return frozenset(attrs)


def required_alphabet(h: Hierarchy) -> set[str]:
    """Every distinct symbol a rendering of the hierarchy can mention."""
    out: set[str] = set()
    for node in h:
        out.add(node.name)
        out.update(a.text for a in node.own_attributes)
    return out


def description_length(h: Hierarchy, form: str, alphabet_size: int) -> float:
    """Bit cost of one rendering of the hierarchy.

    flat:          every class as ``name + fully-resolved attributes``
                   (inheritance expanded away).
    hierarchical:  every class as ``name + own attributes`` plus one link
                   symbol per parent reference.

    Part links carry no cost here; the comparison is about attribute
    inheritance.
    """
    if form not in DL_FORMS:
        raise ValueError(f"unknown form {form!r}")
    needed = len(required_alphabet(h))
    if alphabet_size < max(needed, 1):
        raise DegenerateAlphabet(
            f"alphabet of {alphabet_size} cannot cover {needed} distinct symbols")
    per_symbol = symbol_cost_bits(alphabet_size)
    count = 0
    for node in h:
        if form == "flat":
            count += 1 + len(resolve_attributes(h, node.name))
        else:
            count += 1 + len(node.own_attributes) + len(node.parents)
    return count * per_symbol


def part_context(h: Hierarchy, part_name: str) -> list[str]:
    """Chain of enclosing wholes, innermost first.

    When several classes list the part, the lexicographically smallest
    container is followed.  A top-level whole has an empty context.
    """
    h.node(part_name)
    chain: list[str] = []
    current = part_name
    while True:
        containers = sorted(n.name for n in h if current in n.parts)
        if not containers:
            return chain
        current = containers[0]
        chain.append(current)


def parse_hierarchy(text: str) -> Hierarchy:
    """Parse the hierarchy file format, one class per line:

        CLASS <name> : attrs=<a,b,...> parents=<p,...> parts=<q,...>

    Empty lists are written as a bare key (``attrs=``).  ``#`` comments and
    blank lines are ignored.
    """
    nodes: list[ClassNode] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not stripped.startswith("CLASS"):
            raise InputFormatError(f"line {lineno}: expected 'CLASS'")
        head, sep, body = stripped[len("CLASS"):].partition(":")
        if not sep:
            raise InputFormatError(f"line {lineno}: missing ':' separator")
        name = head.strip()
        if not name or len(name.split()) != 1:
            raise InputFormatError(f"line {lineno}: bad class name {head.strip()!r}")
        fields = {"attrs": [], "parents": [], "parts": []}
        for item in body.split():
            key, eq, value = item.partition("=")
            if not eq or key not in fields:
                raise InputFormatError(f"line {lineno}: bad field {item!r}")
            fields[key] = [v for v in value.split(",") if v]
        try:
            nodes.append(ClassNode(
                name,
                frozenset(SPSymbol(a) for a in fields["attrs"]),
                frozenset(fields["parents"]),
                tuple(fields["parts"]),
            ))
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {exc}") from None
    try:
        return Hierarchy(nodes)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def load_hierarchy(path: str) -> Hierarchy:
    with open(path, encoding="utf-8") as fh:
        return parse_hierarchy(fh.read())
