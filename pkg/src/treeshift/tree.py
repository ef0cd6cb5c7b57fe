"""Finite rooted directed trees."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Mapping

Vertex = Hashable


class TreeError(ValueError):
    """Raised for malformed trees and unknown vertices."""


class DirectedTree:
    """A finite rooted tree with ordered child lists.

    The tree is immutable after construction.  ``vertices`` lists the
    vertices in breadth-first order from the root, children in insertion
    order; this order fixes the matrix basis and all tie-breaking.

    Parameters
    ----------
    root : vertex id
    edges : iterable of ``(parent, child)`` pairs, in insertion order.
    """

    __slots__ = ("_root", "_parent", "_children", "_vertices", "_index", "_depth")

    def __init__(self, root: Vertex, edges: Iterable[tuple[Vertex, Vertex]] = ()):
        parent: dict[Vertex, Vertex] = {}
        children: dict[Vertex, list[Vertex]] = {root: []}
        for p, c in edges:
            if c == root:
                raise TreeError(f"edge {p!r} -> {c!r} points at the root")
            if c in parent:
                raise TreeError(f"vertex {c!r} has two parents: {parent[c]!r} and {p!r}")
            if p == c:
                raise TreeError(f"self loop at {p!r}")
            parent[c] = p
            children.setdefault(p, []).append(c)
            children.setdefault(c, [])

        order: list[Vertex] = []
        depth: dict[Vertex, int] = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in children[u]:
                depth[v] = depth[u] + 1
                queue.append(v)
        if len(order) != len(children):
            # every vertex has at most one parent, so anything unreached sits on a cycle
            # or hangs off a parent that never connects to the root
            stray = sorted((repr(v) for v in children if v not in depth))
            raise TreeError(f"vertices not reachable from root: {', '.join(stray[:5])}")

        self._root = root
        self._parent = parent
        self._children = {u: tuple(cs) for u, cs in children.items()}
        self._vertices = tuple(order)
        self._index = {v: i for i, v in enumerate(order)}
        self._depth = depth

    @classmethod
    def from_parent_map(cls, root: Vertex, parent: Mapping[Vertex, Vertex]) -> "DirectedTree":
        return cls(root, ((p, c) for c, p in parent.items()))

    @property
    def root(self) -> Vertex:
        return self._root

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def non_root(self) -> tuple[Vertex, ...]:
        return self._vertices[1:]

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self):
        return iter(self._vertices)

    def _check(self, u):
        if u not in self._index:
            raise TreeError(f"unknown vertex {u!r}")

    def index(self, u: Vertex) -> int:
        self._check(u)
        return self._index[u]

    def parent(self, u: Vertex) -> Vertex | None:
        self._check(u)
        return self._parent.get(u)

    def children(self, u: Vertex) -> list[Vertex]:
        self._check(u)
        return list(self._children[u])

    def depth(self, u: Vertex) -> int:
        self._check(u)
        return self._depth[u]

    @property
    def height(self) -> int:
        return max(self._depth.values())

    def edges(self):
        for v in self._vertices[1:]:
            yield self._parent[v], v

    def is_leaf(self, u: Vertex) -> bool:
        return not self.children(u)

    def descendants(self, u: Vertex) -> set[Vertex]:
        """``{u}`` together with all vertices below it."""
        self._check(u)
        out = {u}
        stack = [u]
        while stack:
            for v in self._children[stack.pop()]:
                out.add(v)
                stack.append(v)
        return out

    def ancestors(self, u: Vertex) -> list[Vertex]:
        """Parent chain of ``u`` up to the root, ``u`` first."""
        self._check(u)
        chain = [u]
        while chain[-1] != self._root:
            chain.append(self._parent[chain[-1]])
            if len(chain) > len(self._vertices):
                raise TreeError("parent chain does not terminate")
        return chain

    def children_partition_check(self) -> bool:
        """True iff the child sets are pairwise disjoint and cover V minus the root."""
        seen: set[Vertex] = set()
        for u in self._vertices:
            for v in self._children[u]:
                if v in seen:
                    return False
                seen.add(v)
        return seen == set(self._vertices[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedTree):
            return NotImplemented
        return self._root == other._root and self._children == other._children

    def __hash__(self):
        return hash((self._root, self._vertices))

    def __repr__(self) -> str:
        return f"DirectedTree(root={self._root!r}, |V|={len(self)})"
