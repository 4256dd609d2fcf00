"""Planar reduced rooted trees and divisor (subtree) surgery.

Trees here are planar (children are ordered), reduced (every vertex has arity
at least one) and unlabeled: a vertex is just its ordered tuple of inputs,
where ``None`` marks a leaf.  Leaves are numbered 1..arity left to right;
vertices are addressed by their planar preorder index 0..weight-1 (root first,
then each input subtree left to right).

A *divisor* is a connected set of vertices; contracting it to a single vertex
gives the quotient tree, and reading it on its own gives a smaller tree.  The
permutation ``sigma`` measures how planar preorders interact under contraction
and is the sign bookkeeping device for everything built on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Iterator, Optional, Sequence

__all__ = [
    "PlanarTree",
    "TreeIndex",
    "DivisorRef",
    "corolla",
    "enumerate_trees",
    "planar_order",
    "divisors",
    "divisor_ref",
    "divisor_subtree",
    "quotient",
    "replace_divisor",
    "substitute_vertex",
    "graft",
    "sigma",
]


class PlanarTree:
    """Immutable planar reduced tree; ``inputs`` entries are subtrees or ``None``."""

    __slots__ = ("inputs", "weight", "arity", "_hash", "_index")

    inputs: tuple[Optional["PlanarTree"], ...]
    weight: int
    arity: int

    def __init__(self, inputs: Sequence[Optional["PlanarTree"]]):
        inputs = tuple(inputs)
        if not inputs:
            raise ValueError("vertex arity must be at least 1")
        weight = 1
        arity = 0
        for child in inputs:
            if child is None:
                arity += 1
            else:
                weight += child.weight
                arity += child.arity
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_hash", hash(("PlanarTree", inputs)))
        object.__setattr__(self, "_index", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PlanarTree is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, PlanarTree):
            return NotImplemented
        return self._hash == other._hash and self.inputs == other.inputs

    def __repr__(self) -> str:
        return f"PlanarTree{self.render()}"

    def render(self) -> str:
        """Shape only, e.g. ``"(( , ), )"`` drawn as ``"(*(*,*),*)"``-style nesting."""
        return "(" + ",".join("*" if c is None else c.render() for c in self.inputs) + ")"

    @property
    def index(self) -> "TreeIndex":
        cached = self._index
        if cached is None:
            cached = TreeIndex(self)
            object.__setattr__(self, "_index", cached)
        return cached


class TreeIndex:
    """Preorder tables for one tree: parents, slots, children, leaf positions.

    ``child_vertex[v][s]`` is the preorder index of the vertex in slot ``s`` of
    vertex ``v`` (0-based slots), or ``None`` when that slot holds a leaf, in
    which case ``leaf_of[v][s]`` is the global 1-based leaf number.
    ``leaves_before[v]`` counts leaves that occur before vertex ``v`` in the
    preorder walk that visits leaves in place; the leaves above ``v`` are then
    exactly ``leaves_before[v]+1 .. leaves_before[v]+subtree_arity``.
    ``leaf_path[l-1]`` lists the vertices on the root-to-leaf path of leaf l.
    """

    __slots__ = (
        "tree",
        "vertices",
        "parent",
        "slot",
        "child_vertex",
        "leaf_of",
        "leaves_before",
        "subtree_size",
        "leaf_path",
    )

    def __init__(self, tree: PlanarTree):
        vertices: list[PlanarTree] = []
        parent: list[int] = []
        slot: list[int] = []
        child_vertex: list[tuple[Optional[int], ...]] = []
        leaf_of: list[tuple[Optional[int], ...]] = []
        leaves_before: list[int] = []
        subtree_size: list[int] = []
        leaf_path: list[tuple[int, ...]] = []

        stack: list[int] = []
        leaf_count = 0

        def visit(sub: PlanarTree, par: int, slo: int) -> int:
            nonlocal leaf_count
            idx = len(vertices)
            vertices.append(sub)
            parent.append(par)
            slot.append(slo)
            leaves_before.append(leaf_count)
            subtree_size.append(0)
            child_vertex.append(())
            leaf_of.append(())
            stack.append(idx)
            cv: list[Optional[int]] = []
            lf: list[Optional[int]] = []
            size = 1
            for s, child in enumerate(sub.inputs):
                if child is None:
                    leaf_count += 1
                    cv.append(None)
                    lf.append(leaf_count)
                    leaf_path.append(tuple(stack))
                else:
                    cidx = visit(child, idx, s)
                    cv.append(cidx)
                    lf.append(None)
                    size += subtree_size[cidx]
            stack.pop()
            child_vertex[idx] = tuple(cv)
            leaf_of[idx] = tuple(lf)
            subtree_size[idx] = size
            return idx

        visit(tree, -1, -1)
        self.tree = tree
        self.vertices = tuple(vertices)
        self.parent = tuple(parent)
        self.slot = tuple(slot)
        self.child_vertex = tuple(child_vertex)
        self.leaf_of = tuple(leaf_of)
        self.leaves_before = tuple(leaves_before)
        self.subtree_size = tuple(subtree_size)
        self.leaf_path = tuple(leaf_path)

    def first_leaf(self, v: int) -> int:
        """Leftmost leaf above vertex ``v`` (1-based global leaf number)."""
        return self.leaves_before[v] + 1

    def vertex_arity(self, v: int) -> int:
        return len(self.child_vertex[v])


def corolla(arity: int) -> PlanarTree:
    if arity < 1:
        raise ValueError("arity must be at least 1")
    return PlanarTree((None,) * arity)


def planar_order(tree: PlanarTree) -> tuple[PlanarTree, ...]:
    """Subtrees rooted at each vertex, in planar preorder (root first)."""
    return tree.index.vertices


@cache
def enumerate_trees(weight: int, arity: int) -> tuple[PlanarTree, ...]:
    """All planar reduced trees with the given vertex count and leaf count.

    Deterministic order: by root arity, then lexicographically in the slot
    assignment recursion.
    """
    if weight < 1 or arity < 1:
        return ()
    if weight == 1:
        return (corolla(arity),)

    out: list[PlanarTree] = []

    def forests(slots: int, w_left: int, a_left: int) -> Iterator[tuple[Optional[PlanarTree], ...]]:
        # Fill `slots` inputs with total subtree weight w_left and total arity a_left.
        if slots == 0:
            if w_left == 0 and a_left == 0:
                yield ()
            return
        # leaf in this slot
        if a_left >= 1:
            for rest in forests(slots - 1, w_left, a_left - 1):
                yield (None, *rest)
        # subtree of weight ws >= 1 and arity as >= 1 in this slot
        for ws in range(1, w_left + 1):
            for as_ in range(1, a_left + 1):
                subs = enumerate_trees(ws, as_)
                if not subs:
                    continue
                for rest in forests(slots - 1, w_left - ws, a_left - as_):
                    for sub in subs:
                        yield (sub, *rest)

    for root_arity in range(1, arity + 1):
        for inputs in forests(root_arity, weight - 1, arity):
            out.append(PlanarTree(inputs))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class DivisorRef:
    """A connected set of vertices of a host tree, by preorder index."""

    root: int
    vertices: frozenset[int]

    @property
    def weight(self) -> int:
        return len(self.vertices)


def divisor_ref(tree: PlanarTree, vertices: Sequence[int] | frozenset[int]) -> DivisorRef:
    """Validate connectedness and locate the root of the given vertex set."""
    vs = frozenset(vertices)
    if not vs:
        raise ValueError("empty divisor")
    idx = tree.index
    n = tree.weight
    roots = [v for v in vs if not (0 <= v < n) or idx.parent[v] not in vs]
    for v in vs:
        if not 0 <= v < n:
            raise ValueError(f"vertex index {v} out of range")
    if len(roots) != 1:
        raise ValueError(f"vertex set {sorted(vs)} is not connected")
    return DivisorRef(roots[0], vs)


def divisors(tree: PlanarTree) -> tuple[DivisorRef, ...]:
    """All divisors (nonempty connected vertex sets) of the tree."""
    idx = tree.index
    out: list[DivisorRef] = []

    for r in range(tree.weight):
        def expand(chosen: frozenset[int], frontier: tuple[int, ...]) -> None:
            if not frontier:
                out.append(DivisorRef(r, chosen))
                return
            head, rest = frontier[0], frontier[1:]
            expand(chosen, rest)
            kids = tuple(c for c in idx.child_vertex[head] if c is not None)
            expand(chosen | {head}, rest + kids)

        start = tuple(c for c in idx.child_vertex[r] if c is not None)
        expand(frozenset((r,)), start)
    return tuple(out)


def divisor_subtree(tree: PlanarTree, d: DivisorRef) -> PlanarTree:
    """The divisor read as a standalone tree (exits become leaves)."""
    idx = tree.index

    def build(u: int) -> PlanarTree:
        return PlanarTree(
            tuple(
                build(cv) if (cv is not None and cv in d.vertices) else None
                for cv in idx.child_vertex[u]
            )
        )

    return build(d.root)


def quotient(tree: PlanarTree, d: DivisorRef) -> PlanarTree:
    """Contract the divisor to a single vertex.

    The contracted vertex keeps the divisor root's preorder position, and its
    inputs are the dangling inputs of the divisor region in planar order.
    """
    idx = tree.index

    def build(u: int) -> PlanarTree:
        if u == d.root:
            hang: list[Optional[PlanarTree]] = []

            def walk(w: int) -> None:
                for cv in idx.child_vertex[w]:
                    if cv is not None and cv in d.vertices:
                        walk(cv)
                    elif cv is None:
                        hang.append(None)
                    else:
                        hang.append(build(cv))

            walk(u)
            return PlanarTree(tuple(hang))
        return PlanarTree(
            tuple(None if cv is None else build(cv) for cv in idx.child_vertex[u])
        )

    return build(0)


def substitute_vertex(tree: PlanarTree, v: int, replacement: PlanarTree) -> PlanarTree:
    """Replace vertex ``v`` by a tree of matching arity.

    The former inputs of ``v`` are attached at the replacement's leaves in
    planar order.
    """
    idx = tree.index
    target = idx.vertices[v]
    if replacement.arity != len(target.inputs):
        raise ValueError(
            f"replacement arity {replacement.arity} != vertex arity {len(target.inputs)}"
        )
    pieces = iter(target.inputs)

    def fill(sub: PlanarTree) -> PlanarTree:
        return PlanarTree(tuple(next(pieces) if c is None else fill(c) for c in sub.inputs))

    grown = fill(replacement)

    def build(u: int) -> PlanarTree:
        if u == v:
            return grown
        return PlanarTree(
            tuple(None if cv is None else build(cv) for cv in idx.child_vertex[u])
        )

    return build(0)


def replace_divisor(tree: PlanarTree, d: DivisorRef, replacement: PlanarTree) -> PlanarTree:
    """Contract the divisor, then substitute ``replacement`` at its position."""
    return substitute_vertex(quotient(tree, d), d.root, replacement)


def graft(base: PlanarTree, leaf_index: int, top: PlanarTree) -> PlanarTree:
    """Plug ``top`` into leaf ``leaf_index`` (1-based) of ``base``."""
    if not 1 <= leaf_index <= base.arity:
        raise ValueError(f"leaf index {leaf_index} out of range 1..{base.arity}")
    counter = 0

    def build(sub: PlanarTree) -> PlanarTree:
        nonlocal counter
        new: list[Optional[PlanarTree]] = []
        for child in sub.inputs:
            if child is None:
                counter += 1
                new.append(top if counter == leaf_index else None)
            else:
                new.append(build(child))
        return PlanarTree(tuple(new))

    return build(base)


def sigma(tree: PlanarTree, d: DivisorRef) -> tuple[int, ...]:
    """The contraction permutation on planar vertex orders, as 1-based images.

    Let the host have vertices v_1 < ... < v_n in planar order, let the divisor
    have weight j, and let i be the planar position of the contracted vertex in
    the quotient.  The result ``sig`` satisfies: sig[k-1] = k for k < i; the
    vertices v_{sig[i-1]}, ..., v_{sig[i+j-2]} are the divisor's vertices in its
    own planar order; and v_1, ..., v_{i-1}, v', v_{sig[i+j-1]}, ..., v_{sig[n-1]}
    is the quotient's planar order.
    """
    n = tree.weight
    members = sorted(d.vertices)  # ascending preorder = the divisor's planar order
    j = len(members)
    i = d.root + 1  # vertices before the divisor root all survive contraction
    after = [v for v in range(n) if v not in d.vertices and v > d.root]
    before = list(range(d.root))
    images = before + members + after
    sig = tuple(v + 1 for v in images)
    assert sig[: i - 1] == tuple(range(1, i)) and len(sig) == n
    return sig
