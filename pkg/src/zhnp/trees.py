"""Bracketed constituency tree parsing and NP span extraction.

Trees arrive as single-line Penn/Chinese Treebank bracketings produced by an
external parser. This module parses them, pulls out every NP node (nested
ones included; filtering is the matcher's job) and computes head tokens via
the rightmost-noun heuristic, which is all the downstream suffix test needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .corpus import NPSpan


class TreeParseError(ValueError):
    """Raised on malformed bracketings; carries the character offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


PRONOUN_TAGS = {"PRP", "PRP$", "PN"}
PROPER_TAGS = {"NNP", "NNPS", "NR"}
CONJUNCTION_TAGS = {"CC"}


@dataclass(eq=True)
class ParseTree:
    """A constituent node: either children or a leaf token, never both."""

    label: str
    children: list = field(default_factory=list)
    leaf: Optional[str] = None
    index: Optional[int] = None

    def is_leaf(self) -> bool:
        return self.leaf is not None

    def leaves(self) -> list:
        if self.is_leaf():
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def span(self) -> tuple:
        leaves = self.leaves()
        return leaves[0].index, leaves[-1].index + 1


def base_label(label: str) -> str:
    """Constituent label with function tags and indices stripped (NP-SBJ -> NP)."""
    return label.split("-")[0].split("=")[0]


def parse_tree(text: str) -> ParseTree:
    """Parse a bracketed tree string into a ParseTree.

    Leaf indices are assigned left to right from 0. Unbalanced brackets,
    empty constituents and trailing content raise TreeParseError with the
    character offset of the problem.
    """
    if not text or not text.strip():
        raise TreeParseError("empty tree text", 0)
    root, pos = _parse_node(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise TreeParseError("trailing content after tree", pos)
    for i, leaf in enumerate(root.leaves()):
        leaf.index = i
    return root


def _skip_ws(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _read_atom(text, i):
    j = i
    while j < len(text) and not text[j].isspace() and text[j] not in "()":
        j += 1
    return text[i:j], j


def _parse_node(text, i):
    if i >= len(text) or text[i] != "(":
        raise TreeParseError("expected '('", i)
    open_offset = i
    i = _skip_ws(text, i + 1)
    label = ""
    if i < len(text) and text[i] not in "()":
        label, i = _read_atom(text, i)
    items = []
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            raise TreeParseError("unbalanced brackets, unexpected end of input", i)
        c = text[i]
        if c == ")":
            i += 1
            break
        if c == "(":
            child, i = _parse_node(text, i)
            items.append(child)
        else:
            token, i = _read_atom(text, i)
            items.append(token)
    if not items:
        raise TreeParseError(f"empty constituent ({label or 'no label'})", open_offset)
    if len(items) == 1 and isinstance(items[0], str):
        return ParseTree(label=label, leaf=items[0]), i
    children = [
        item if isinstance(item, ParseTree) else ParseTree(label="", leaf=item)
        for item in items
    ]
    return ParseTree(label=label, children=children), i


def print_tree(tree: ParseTree) -> str:
    """Render the canonical single-space bracketing; inverse of parse_tree."""
    if tree.is_leaf():
        if tree.label:
            return f"({tree.label} {tree.leaf})"
        return tree.leaf
    inner = " ".join(print_tree(c) for c in tree.children)
    return f"({tree.label} {inner})" if tree.label else f"({inner})"


def head_token(start: int, end: int, pos) -> int:
    """Rightmost token in [start, end) whose tag begins with "N"; end-1 if none."""
    for i in range(end - 1, start - 1, -1):
        if pos[i].startswith("N"):
            return i
    return end - 1


def _child_label(child: ParseTree) -> str:
    return base_label(child.label)


def _is_conjunction_np(node: ParseTree) -> bool:
    # CC child directly dominated by the NP, with NP children on both sides.
    np_positions = [k for k, c in enumerate(node.children) if _child_label(c) == "NP"]
    if not np_positions:
        return False
    for k, child in enumerate(node.children):
        if _child_label(child) in CONJUNCTION_TAGS:
            if any(p < k for p in np_positions) and any(p > k for p in np_positions):
                return True
    return False


def extract_nps(tree: ParseTree, pos, side: str) -> list:
    """Extract one NPSpan per NP node, nested spans included.

    Identical spans from unary NP chains are deduped, keeping the highest
    node. Output is sorted by (start, -length), so outer spans precede the
    spans they contain.
    """
    leaves = tree.leaves()
    if len(leaves) != len(pos):
        raise ValueError(f"tree has {len(leaves)} leaves but {len(pos)} POS tags")
    spans = []
    seen = set()

    def walk(node, path):
        if node.is_leaf():
            return
        if base_label(node.label) == "NP":
            start, end = node.span()
            if (start, end) not in seen:
                seen.add((start, end))
                spans.append(
                    NPSpan(
                        side=side,
                        start=start,
                        end=end,
                        head=head_token(start, end, pos),
                        node_path=tuple(path),
                        is_pronoun=(end - start == 1) and pos[start] in PRONOUN_TAGS,
                        is_conjunction=_is_conjunction_np(node),
                        is_proper=any(pos[i] in PROPER_TAGS for i in range(start, end)),
                    )
                )
        for k, child in enumerate(node.children):
            walk(child, path + [k])

    walk(tree, [])
    spans.sort(key=lambda s: (s.start, -(s.end - s.start)))
    return spans
