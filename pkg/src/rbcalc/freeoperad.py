"""The free graded operad on multiplication and operator generators.

Generators: one multiplication ``m_n`` of degree n-2 for each arity n >= 2 and
one operator ``T_n`` of degree n-1 for each arity n >= 1.  Two auxiliary
families ``x_n`` (arity >= 2, degree -1) and ``y_n`` (arity >= 1, degree 0)
host the image of the cobar construction of the unsuspended cooperad; they are
never mixed with m/T inside one element.

An element is a rational-in-weight linear combination of decorated planar
trees.  Composition f o_i g grafts tree shapes and multiplies by the Koszul
sign of moving the decorations of g past the decorations of f that sit after
the insertion point in the composite's planar preorder.  Elements keep their
terms sorted, leading monomial first, in the order: larger arity first, then
larger total degree, then componentwise comparison of the root-to-leaf
generator words (longer word wins, ties broken letterwise in the chain
T_1 < m_2 < T_2 < m_3 < ...).
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .scalar import ONE, Scalar, ZERO
from .trees import PlanarTree, corolla, graft

__all__ = [
    "Generator",
    "TreeMonomial",
    "OperadElement",
    "compose",
    "compose_along_tree",
    "brace",
    "gerstenhaber",
]

_GEN_KINDS = {
    # kind: (min arity, degree as function of arity, position in the word chain)
    "m": (2, lambda n: n - 2),
    "T": (1, lambda n: n - 1),
    "x": (2, lambda n: -1),
    "y": (1, lambda n: 0),
}


class Generator(NamedTuple):
    """A free-operad generator, e.g. ``m3`` or ``T1``."""

    kind: str
    arity: int

    @staticmethod
    def m(arity: int) -> "Generator":
        return Generator("m", arity)

    @staticmethod
    def t(arity: int) -> "Generator":
        return Generator("T", arity)

    @staticmethod
    def x(arity: int) -> "Generator":
        return Generator("x", arity)

    @staticmethod
    def y(arity: int) -> "Generator":
        return Generator("y", arity)

    @property
    def degree(self) -> int:
        return _GEN_KINDS[self.kind][1](self.arity)

    @property
    def rank(self) -> tuple[int, int]:
        """Position in the generator chain T_1 < m_2 < T_2 < m_3 < T_3 < ...

        The x/y families mirror m/T at the same chain positions; the second
        component keeps the order total across families.
        """
        if self.kind in ("T", "y"):
            major = 2 * (self.arity - 1)
        else:
            major = 2 * self.arity - 3
        return (major, "Tmyx".index(self.kind))

    def validate(self) -> "Generator":
        spec = _GEN_KINDS.get(self.kind)
        if spec is None:
            raise ValueError(f"unknown generator family {self.kind!r}")
        if self.arity < spec[0]:
            raise ValueError(f"{self.kind}{self.arity}: arity below {spec[0]}")
        return self

    def render(self) -> str:
        return f"{self.kind}{self.arity}"

    @staticmethod
    def parse(text: str) -> "Generator":
        m = re.fullmatch(r"([mTxy])(\d+)", text.strip())
        if not m:
            raise ValueError(f"cannot parse generator {text!r}")
        return Generator(m.group(1), int(m.group(2))).validate()


class TreeMonomial:
    """A planar tree with one generator per vertex, in planar preorder."""

    __slots__ = ("tree", "decorations", "degree", "_hash", "_key", "_text")

    tree: PlanarTree
    decorations: tuple[Generator, ...]
    degree: int

    def __init__(self, tree: PlanarTree, decorations: Sequence[Generator]):
        decorations = tuple(decorations)
        if len(decorations) != tree.weight:
            raise ValueError("one decoration per vertex required")
        idx = tree.index
        for v, gen in enumerate(decorations):
            gen.validate()
            if gen.arity != idx.vertex_arity(v):
                raise ValueError(
                    f"vertex {v} has arity {idx.vertex_arity(v)}, decoration {gen.render()}"
                )
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "decorations", decorations)
        object.__setattr__(self, "degree", sum(g.degree for g in decorations))
        object.__setattr__(self, "_hash", hash((tree, decorations)))
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_text", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TreeMonomial is immutable")

    @property
    def arity(self) -> int:
        return self.tree.arity

    @property
    def weight(self) -> int:
        return self.tree.weight

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, TreeMonomial):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.decorations == other.decorations
            and self.tree == other.tree
        )

    def __repr__(self) -> str:
        return f"TreeMonomial({self.render()})"

    @staticmethod
    def generator(gen: Generator) -> "TreeMonomial":
        return TreeMonomial(corolla(gen.arity), (gen,))

    def path_sequence(self) -> tuple[tuple[Generator, ...], ...]:
        """Root-to-leaf generator words, one per leaf, left to right."""
        idx = self.tree.index
        return tuple(
            tuple(self.decorations[v] for v in path) for path in idx.leaf_path
        )

    @property
    def sort_key(self) -> tuple:
        """Key that sorts monomials ascending in the term order."""
        key = self._key
        if key is None:
            paths = tuple(
                (len(word), tuple(g.rank for g in word))
                for word in self.path_sequence()
            )
            # the rendered text is a deterministic final tiebreaker only
            key = (self.arity, self.degree, paths, self.render())
            object.__setattr__(self, "_key", key)
        return key

    def render(self) -> str:
        """E.g. ``"m2(m2(1,2),3)"``; leaves are numbered globally left to right."""
        text = self._text
        if text is None:
            counter = [0]
            decs = iter(self.decorations)

            def walk(sub: PlanarTree) -> str:
                gen = next(decs)
                args = []
                for child in sub.inputs:
                    if child is None:
                        counter[0] += 1
                        args.append(str(counter[0]))
                    else:
                        args.append(walk(child))
                return f"{gen.render()}({','.join(args)})"

            text = walk(self.tree)
            object.__setattr__(self, "_text", text)
        return text


def compose_monomials(f: TreeMonomial, i: int, g: TreeMonomial) -> tuple[int, TreeMonomial]:
    """Graft g into leaf i of f; return (koszul sign, decorated composite).

    The sign is (-1)**(|g| * D) where D is the total degree of f's vertices
    that come after leaf i in f's preorder-with-leaves walk; those are exactly
    the decorations the whole g block moves past.
    """
    idx = f.tree.index
    before = sum(1 for v in range(f.weight) if idx.leaves_before[v] < i)
    suffix = f.decorations[before:]
    d_after = sum(gen.degree for gen in suffix)
    sign = -1 if (g.degree % 2) and (d_after % 2) else 1
    tree = graft(f.tree, i, g.tree)
    decorations = f.decorations[:before] + g.decorations + suffix
    return sign, TreeMonomial(tree, decorations)


class OperadElement:
    """A finite sum of coefficients times tree monomials, one arity at a time."""

    __slots__ = ("terms", "_hash")

    terms: tuple[tuple[Scalar, TreeMonomial], ...]

    def __init__(self, terms: Mapping[TreeMonomial, Scalar] | Iterable[tuple[TreeMonomial, Scalar]]):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            acc: dict[TreeMonomial, Scalar] = {}
            for mono, coeff in terms:
                prev = acc.get(mono)
                acc[mono] = coeff if prev is None else prev + coeff
            items = acc.items()
        kept = [(c, m) for m, c in items if not c.is_zero]
        arities = {m.arity for _, m in kept}
        if len(arities) > 1:
            raise ValueError(f"mixed arities in one element: {sorted(arities)}")
        kept.sort(key=lambda cm: cm[1].sort_key, reverse=True)
        object.__setattr__(self, "terms", tuple(kept))
        object.__setattr__(self, "_hash", hash(tuple(kept)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("OperadElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "OperadElement":
        return _ZERO_ELEMENT

    @staticmethod
    def from_monomial(mono: TreeMonomial, coeff: Scalar = ONE) -> "OperadElement":
        return OperadElement([(mono, coeff)])

    @staticmethod
    def from_generator(gen: Generator, coeff: Scalar = ONE) -> "OperadElement":
        return OperadElement([(TreeMonomial.generator(gen), coeff)])

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if not isinstance(other, OperadElement):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = {m: c for c, m in self.terms}
        for c, m in other.terms:
            prev = acc.get(m)
            acc[m] = c if prev is None else prev + c
        return OperadElement(acc)

    def __sub__(self, other: "OperadElement") -> "OperadElement":
        return self + other.scale(Scalar.rational(-1))

    def __neg__(self) -> "OperadElement":
        return self.scale(Scalar.rational(-1))

    def scale(self, coeff: Scalar | int | str) -> "OperadElement":
        if not isinstance(coeff, Scalar):
            coeff = Scalar.rational(coeff)
        if coeff.is_zero or not self.terms:
            return _ZERO_ELEMENT
        return OperadElement([(m, c * coeff) for c, m in self.terms])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperadElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[tuple[Scalar, TreeMonomial]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def arity(self) -> Optional[int]:
        return self.terms[0][1].arity if self.terms else None

    def degrees(self) -> set[int]:
        return {m.degree for _, m in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def leading_term(self) -> tuple[Scalar, TreeMonomial]:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        return self.terms[0]

    def coefficient(self, mono: TreeMonomial) -> Scalar:
        for c, m in self.terms:
            if m == mono:
                return c
        return ZERO

    # -- operadic structure ----------------------------------------------------

    def compose(self, i: int, other: "OperadElement") -> "OperadElement":
        """Partial composition self o_i other, bilinear in both elements."""
        if not isinstance(other, OperadElement):
            raise TypeError("compose expects an OperadElement")
        if self.is_zero or other.is_zero:
            return _ZERO_ELEMENT
        if not 1 <= i <= self.terms[0][1].arity:
            raise ValueError(f"slot {i} out of range 1..{self.terms[0][1].arity}")
        acc: dict[TreeMonomial, Scalar] = {}
        for c1, m1 in self.terms:
            for c2, m2 in other.terms:
                sign, mono = compose_monomials(m1, i, m2)
                coeff = c1 * c2 if sign == 1 else -(c1 * c2)
                prev = acc.get(mono)
                coeff = coeff if prev is None else prev + coeff
                if coeff.is_zero:
                    acc.pop(mono, None)
                else:
                    acc[mono] = coeff
        return OperadElement(acc)

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for c, m in self.terms:
            if c == ONE:
                sign, body = "+", m.render()
            elif c == Scalar.rational(-1):
                sign, body = "-", m.render()
            else:
                text = c.render()
                if len(c.terms) > 1:
                    sign, body = "+", f"({text})*{m.render()}"
                elif text.startswith("-"):
                    sign, body = "-", f"{text[1:]}*{m.render()}"
                else:
                    sign, body = "+", f"{text}*{m.render()}"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"OperadElement({self.render()})"


_ZERO_ELEMENT = OperadElement(())


def compose(f: OperadElement, i: int, g: OperadElement) -> OperadElement:
    return f.compose(i, g)


def compose_along_tree(tree: PlanarTree, elements: Sequence[OperadElement]) -> OperadElement:
    """Compose one element per vertex along the tree, in planar preorder.

    Vertex v's element lands in the fold at leaf ``leaves_before[v] + 1``: all
    earlier vertices are already merged, so the open slots left of that leaf
    are exactly the true leaves of the tree that precede v.
    """
    idx = tree.index
    if len(elements) != tree.weight:
        raise ValueError("one element per vertex required")
    for v, elem in enumerate(elements):
        if not elem.is_zero and elem.arity != idx.vertex_arity(v):
            raise ValueError(
                f"vertex {v} needs arity {idx.vertex_arity(v)}, got {elem.arity}"
            )
    result = elements[0]
    for v in range(1, tree.weight):
        result = result.compose(idx.leaves_before[v] + 1, elements[v])
    return result


def brace(f, gs: Sequence):
    """The brace f{g_1, ..., g_n}: insert the g's left to right in increasing
    slots, summing over all strictly ordered slot choices i_1 < i_1 + |g_1| <= i_2 < ...

    Works for any operands with ``compose``, ``arity``, ``is_zero`` and ``+``.
    """
    gs = tuple(gs)
    if not gs:
        return f
    if f.is_zero:
        return f
    if len(gs) > f.arity:
        raise ValueError(f"too many brace arguments: {len(gs)} for arity {f.arity}")
    total = None

    def insert(current, j: int, min_slot: int) -> None:
        nonlocal total
        if j == len(gs):
            total = current if total is None else total + current
            return
        g = gs[j]
        for i in range(min_slot, current.arity + 1):
            insert(current.compose(i, g), j + 1, i + g.arity)

    insert(f, 0, 1)
    assert total is not None
    return total


def gerstenhaber(f, g):
    """[f, g] = f{g} - (-1)^{|f||g|} g{f} for homogeneous f, g."""
    sign = -1 if (f.degree % 2) and (g.degree % 2) else 1
    return brace(f, (g,)) + brace(g, (f,)).scale(-sign)
