"""The differential on the free operad and the contraction proving minimality.

The differential is defined on generators and extended as a derivation:

* on a multiplication generator it is the associator tower
  d m_n = sum_{j=2}^{n-1} sum_{i=1}^{n-j+1} (-1)^{i+j(n-i)} m_{n-j+1} o_i m_j;
* on an operator generator it rewrites T-words against multiplications,

  d T_n = sum_{k=2}^{n} sum_{l_1+...+l_k=n} (-1)^{alpha(k,l)}
              m_k o (T_{l_1}, ..., T_{l_k})
        + sum (-1)^{beta} lambda^{p-q}
              T_{r_1} o_i (m_p with T_{r_2}, ..., T_{r_q} inserted at
                           slots k_1 < ... < k_{q-1}),

  with alpha = 1 + k(k-1)/2 + sum_j (k-j) l_j and
  beta = 1 + i + (p + sum_{j>=2} (r_j - 1)) (r_1 - i)
           + sum_{j>=2} (r_j - 1)(p - k_{j-1}),
  the second sum running over 2 <= p <= n, 1 <= q <= p, compositions
  r_1 + ... + r_q = n - p + q with r_t >= 1, 1 <= i <= r_1 and slot choices
  1 <= k_1 < ... < k_{q-1} <= p.

Monomials are ordered by arity, then total degree, then componentwise
comparison of root-to-leaf generator words.  The leading monomial of each
generator's boundary is *typical*: m_{n-1} o_1 m_2 with coefficient -1, and
(T_{n-1} o_1 m_2) o_1 T_1 with coefficient +1.  The homotopy H repeatedly
strips the left-upper-most typical divisor of an effective monomial; together
with the derivation differential it satisfies dH + Hd = Id in positive
degrees, which certifies that the dg operad is a minimal resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations, product
from typing import Callable, Iterable, Optional

from .freeoperad import Generator, OperadElement, TreeMonomial
from .scalar import ONE, Scalar
from .trees import DivisorRef, PlanarTree, divisor_subtree, enumerate_trees

__all__ = [
    "boundary_generator",
    "boundary",
    "compare",
    "leading_term",
    "is_typical",
    "EffectiveData",
    "effective_divisor",
    "hbar",
    "homotopy",
    "all_monomials",
    "verify_minimal_model",
]


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _elt(gen: Generator) -> OperadElement:
    return OperadElement.from_generator(gen)


@cache
def boundary_generator(gen: Generator) -> OperadElement:
    """The differential of a single generator, as an element of the arity."""
    gen.validate()
    if gen.kind == "m":
        return _boundary_m(gen.arity)
    if gen.kind == "T":
        return _boundary_t(gen.arity)
    raise ValueError(
        f"no differential is registered for family {gen.kind!r}; "
        "pass gen_boundary to boundary()"
    )


def _boundary_m(n: int) -> OperadElement:
    total = OperadElement.zero()
    for j in range(2, n):
        inner = _elt(Generator.m(j))
        outer = _elt(Generator.m(n - j + 1))
        for i in range(1, n - j + 2):
            sign = -1 if (i + j * (n - i)) % 2 else 1
            total = total + outer.compose(i, inner).scale(sign)
    return total


def _boundary_t(n: int) -> OperadElement:
    total = OperadElement.zero()
    # multiplications below a tower of operators
    for k in range(2, n + 1):
        mk = _elt(Generator.m(k))
        for ls in _compositions(n, k):
            alpha = 1 + k * (k - 1) // 2 + sum((k - j) * ls[j - 1] for j in range(1, k + 1))
            term = mk
            pos = 1
            for l in ls:
                term = term.compose(pos, _elt(Generator.t(l)))
                pos += l
            total = total + term.scale(-1 if alpha % 2 else 1)
    # one operator below, a multiplication with inserted operators above
    for p in range(2, n + 1):
        mp = _elt(Generator.m(p))
        for q in range(1, p + 1):
            rest = n - p + q
            if rest < q:
                continue
            for rs in _compositions(rest, q):
                r1 = rs[0]
                extra = sum(r - 1 for r in rs[1:])
                for ks in combinations(range(1, p + 1), q - 1):
                    inner = mp
                    offset = 0
                    for j in range(2, q + 1):
                        inner = inner.compose(ks[j - 2] + offset, _elt(Generator.t(rs[j - 1])))
                        offset += rs[j - 1] - 1
                    tail = sum((rs[j - 1] - 1) * (p - ks[j - 2]) for j in range(2, q + 1))
                    for i in range(1, r1 + 1):
                        beta = 1 + i + (p + extra) * (r1 - i) + tail
                        coeff = Scalar.weight(p - q, -1 if beta % 2 else 1)
                        term = _elt(Generator.t(r1)).compose(i, inner)
                        total = total + term.scale(coeff)
    return total


# ----------------------------------------------------------------- splicing


def _splice_block(
    mono: TreeMonomial, root: int, size: int, replacement: OperadElement
) -> list[tuple[Scalar, TreeMonomial]]:
    """Replace the preorder-contiguous vertex block [root, root+size) by an
    element of the same arity, with the Koszul sign of moving each replacement
    term past the decorations that follow the block.
    """
    tree = mono.tree
    idx = tree.index
    region = set(range(root, root + size))

    hang: list[Optional[int]] = []  # dangling inputs: vertex index, None for leaf

    def collect(u: int) -> None:
        for cv in idx.child_vertex[u]:
            if cv is not None and cv in region:
                collect(cv)
            else:
                hang.append(cv)

    collect(root)
    block_arity = len(hang)

    out: list[tuple[Scalar, TreeMonomial]] = []
    for c, s in replacement:
        if s.arity != block_arity:
            raise ValueError(
                f"replacement arity {s.arity} != block arity {block_arity}"
            )
        s_idx = s.tree.index
        pieces = iter(hang)
        tags: list[int] = []  # >= 0: original vertex; < 0: ~(replacement vertex)

        def build_orig(u: int) -> PlanarTree:
            tags.append(u)
            return PlanarTree(
                tuple(None if cv is None else build_orig(cv) for cv in idx.child_vertex[u])
            )

        def build_new(su: int) -> PlanarTree:
            tags.append(~su)
            parts: list[Optional[PlanarTree]] = []
            for cv in s_idx.child_vertex[su]:
                if cv is None:
                    piece = next(pieces)
                    parts.append(None if piece is None else build_orig(piece))
                else:
                    parts.append(build_new(cv))
            return PlanarTree(tuple(parts))

        def build_top(u: int) -> PlanarTree:
            if u == root:
                return build_new(0)
            tags.append(u)
            return PlanarTree(
                tuple(None if cv is None else build_top(cv) for cv in idx.child_vertex[u])
            )

        new_tree = build_top(0)
        remaining = s.degree  # degree of the not-yet-visited replacement part
        exp = 0
        decs: list[Generator] = []
        for tag in tags:
            if tag < 0:
                g = s.decorations[~tag]
                decs.append(g)
                remaining -= g.degree
            else:
                g = mono.decorations[tag]
                decs.append(g)
                if tag >= root + size:
                    exp += g.degree * remaining
        coeff = c if exp % 2 == 0 else -c
        out.append((coeff, TreeMonomial(new_tree, decs)))
    return out


def boundary(
    element: OperadElement,
    gen_boundary: Callable[[Generator], OperadElement] | None = None,
) -> OperadElement:
    """Extend the generator differential to decorated trees as a derivation.

    Vertex v of a monomial contributes with the Koszul sign of jumping over
    the decorations that precede it in planar order.
    """
    gb = gen_boundary if gen_boundary is not None else boundary_generator
    acc: dict[TreeMonomial, Scalar] = {}
    for coeff, mono in element:
        prefix = 0
        for v, gen in enumerate(mono.decorations):
            dgen = gb(gen)
            if not dgen.is_zero:
                outer = -coeff if prefix % 2 else coeff
                for c2, new_mono in _splice_block(mono, v, 1, dgen):
                    total = acc.get(new_mono)
                    total = c2 * outer if total is None else total + c2 * outer
                    if total.is_zero:
                        acc.pop(new_mono, None)
                    else:
                        acc[new_mono] = total
            prefix += gen.degree
    return OperadElement(acc)


# ------------------------------------------------------------------- order


def compare(a: TreeMonomial, b: TreeMonomial) -> int:
    """-1, 0 or 1 in the monomial order used for leading terms."""
    ka, kb = a.sort_key, b.sort_key
    return (ka > kb) - (ka < kb)


def leading_term(element: OperadElement) -> tuple[Scalar, TreeMonomial]:
    return element.leading_term()


_M2 = Generator.m(2)
_T1 = Generator.t(1)


def _typical_at(mono: TreeMonomial, v: int) -> Optional[tuple[DivisorRef, Generator]]:
    """The typical divisor rooted at vertex v, if present.

    Typical shapes extend along first slots, so the divisor's vertex block is
    preorder-contiguous starting at v.
    """
    idx = mono.tree.index
    gen = mono.decorations[v]
    kids = idx.child_vertex[v]
    c = kids[0]
    if gen.kind == "m":
        if c is not None and mono.decorations[c] == _M2:
            return (
                DivisorRef(v, frozenset((v, c))),
                Generator.m(gen.arity + 1),
            )
    elif gen.kind == "T":
        if c is not None and mono.decorations[c] == _M2:
            gc = idx.child_vertex[c][0]
            if gc is not None and mono.decorations[gc] == _T1:
                return (
                    DivisorRef(v, frozenset((v, c, gc))),
                    Generator.t(gen.arity + 1),
                )
    return None


def is_typical(mono: TreeMonomial) -> bool:
    """Whether the monomial is exactly m_{n-1} o_1 m_2 or (T_{n-1} o_1 m_2) o_1 T_1."""
    found = _typical_at(mono, 0)
    return found is not None and found[0].weight == mono.weight


@dataclass(frozen=True)
class EffectiveData:
    """Where the homotopy acts on an effective monomial."""

    monomial: TreeMonomial
    divisor: DivisorRef
    typical_leaf: int
    source: Generator


def effective_divisor(mono: TreeMonomial) -> Optional[EffectiveData]:
    """The left-upper-most typical divisor making the monomial effective.

    A monomial is effective when some typical divisor D with root r satisfies:
    (i) on the path from r to the leftmost leaf above r there is no other
    typical divisor root and no positive-degree vertex besides r itself, and
    (ii) every root-to-leaf path ending strictly left of that leaf meets no
    typical divisor root and no positive-degree vertex.  At most one divisor
    can satisfy both; ``None`` means the homotopy vanishes on the monomial.
    """
    idx = mono.tree.index
    w = mono.weight
    typical = [_typical_at(mono, v) for v in range(w)]
    bad = {
        v
        for v in range(w)
        if mono.decorations[v].degree > 0 or typical[v] is not None
    }
    clean_leaf = [
        all(u not in bad for u in path) for path in idx.leaf_path
    ]

    found: Optional[EffectiveData] = None
    for v in range(w):
        entry = typical[v]
        if entry is None:
            continue
        # (i): walk the first-slot chain below v down to the leftmost leaf
        ok = True
        u = idx.child_vertex[v][0]
        while u is not None:
            if u in bad:
                ok = False
                break
            u = idx.child_vertex[u][0]
        if not ok:
            continue
        leaf = idx.first_leaf(v)
        # (ii): all leaves strictly left of that leaf see only clean paths
        if not all(clean_leaf[: leaf - 1]):
            continue
        data = EffectiveData(mono, entry[0], leaf, entry[1])
        if found is not None:
            raise AssertionError(
                f"two effective divisors on {mono.render()}: "
                f"{found.divisor} and {data.divisor}"
            )
        found = data
    return found


def _leading_unit(gen: Generator) -> Fraction:
    """The leading coefficient of the generator's boundary; always +-1."""
    coeff, _ = boundary_generator(gen).leading_term()
    value = coeff.constant_value()
    if abs(value) != 1:
        raise AssertionError(f"leading coefficient of d{gen.render()} is {value}")
    return value


def hbar(mono: TreeMonomial) -> OperadElement:
    """One contraction step: replace the effective divisor by its source
    generator, weighted by (-1)^omega / l_S with omega the total degree of the
    decorations strictly preceding the divisor root in planar order."""
    data = effective_divisor(mono)
    if data is None:
        raise ValueError(f"monomial {mono.render()} is not effective")
    return _hbar_with(mono, data)


def _hbar_with(mono: TreeMonomial, data: EffectiveData) -> OperadElement:
    unit = _leading_unit(data.source)
    omega = sum(mono.decorations[u].degree for u in range(data.divisor.root))
    coeff = Scalar.rational(unit if omega % 2 == 0 else -unit)
    replacement = OperadElement.from_generator(data.source, coeff)
    terms = _splice_block(mono, data.divisor.root, data.divisor.weight, replacement)
    return OperadElement([(m, c) for c, m in terms])


def homotopy(element: OperadElement) -> OperadElement:
    """The contracting homotopy, iterated until no effective monomial remains.

    Each pass sends every effective monomial T through one step of the
    recursion H(T) = Hbar(T) + H(T-with-divisor-expanded); non-effective
    monomials are annihilated.  The expansion strictly lowers the leading
    typical block in the monomial order, so the loop terminates.
    """
    result: dict[TreeMonomial, Scalar] = {}
    current: dict[TreeMonomial, Scalar] = {}
    for c, m in element:
        current[m] = current.get(m, Scalar(())) + c

    rounds = 0
    while current:
        rounds += 1
        if rounds > 100000:
            raise AssertionError("homotopy recursion failed to terminate")
        nxt: dict[TreeMonomial, Scalar] = {}
        for mono, coeff in current.items():
            if coeff.is_zero:
                continue
            data = effective_divisor(mono)
            if data is None:
                continue
            for c2, m2 in _hbar_with(mono, data):
                total = result.get(m2)
                total = coeff * c2 if total is None else total + coeff * c2
                if total.is_zero:
                    result.pop(m2, None)
                else:
                    result[m2] = total
            # expand the divisor: block minus (1/l_S) d(source)
            unit = _leading_unit(data.source)
            block_tree = divisor_subtree(mono.tree, data.divisor)
            members = sorted(data.divisor.vertices)
            block_mono = TreeMonomial(
                block_tree, tuple(mono.decorations[u] for u in members)
            )
            block_bar = OperadElement.from_monomial(block_mono) - boundary_generator(
                data.source
            ).scale(Scalar.rational(unit))
            for c2, m2 in _splice_block(
                mono, data.divisor.root, data.divisor.weight, block_bar
            ):
                total = nxt.get(m2)
                total = coeff * c2 if total is None else total + coeff * c2
                if total.is_zero:
                    nxt.pop(m2, None)
                else:
                    nxt[m2] = total
        current = nxt
    return OperadElement(result)


# ----------------------------------------------------------------- sweeps


@cache
def all_monomials(arity: int, weight: int) -> tuple[TreeMonomial, ...]:
    """Every m/T-decorated monomial with the given arity and weight."""
    out: list[TreeMonomial] = []
    for tree in enumerate_trees(weight, arity):
        idx = tree.index
        options = []
        for v in range(weight):
            k = idx.vertex_arity(v)
            opts = [Generator.t(k)]
            if k >= 2:
                opts.append(Generator.m(k))
            options.append(opts)
        for decs in product(*options):
            out.append(TreeMonomial(tree, decs))
    return tuple(out)


def verify_minimal_model(max_arity: int, max_weight: int) -> dict:
    """Run the minimality evidence and return a structured report.

    Checks, in order: the differential squares to zero on all generators of
    arity <= max_arity; every generator boundary has a typical leading
    monomial with constant coefficient +-1; and dH + Hd = Id on every
    positive-degree monomial with arity <= max_arity and weight <= max_weight.
    """
    checks: list[dict] = []

    for n in range(1, max_arity + 1):
        gens = [Generator.t(n)] + ([Generator.m(n)] if n >= 2 else [])
        for gen in gens:
            square = boundary(boundary_generator(gen))
            entry = {
                "name": "boundary_squares_to_zero",
                "generator": gen.render(),
                "pass": square.is_zero,
                "counterexample": None if square.is_zero else square.leading_term()[1].render(),
            }
            checks.append(entry)

    for n in range(1, max_arity + 1):
        gens = [Generator.t(n)] + ([Generator.m(n)] if n >= 2 else [])
        for gen in gens:
            db = boundary_generator(gen)
            if db.is_zero:
                continue
            coeff, lead = db.leading_term()
            ok = (
                coeff.is_constant
                and abs(coeff.constant_value()) == 1
                and is_typical(lead)
            )
            checks.append(
                {
                    "name": "leading_term_typical_unit",
                    "generator": gen.render(),
                    "leading_monomial": lead.render(),
                    "leading_coefficient": coeff.render(),
                    "pass": ok,
                    "counterexample": None if ok else lead.render(),
                }
            )

    for arity in range(1, max_arity + 1):
        for weight in range(1, max_weight + 1):
            tested = 0
            failure = None
            for mono in all_monomials(arity, weight):
                if mono.degree <= 0:
                    continue
                tested += 1
                x = OperadElement.from_monomial(mono)
                recovered = boundary(homotopy(x)) + homotopy(boundary(x))
                if recovered != x:
                    failure = mono.render()
                    break
            checks.append(
                {
                    "name": "contraction_identity",
                    "arity": arity,
                    "weight": weight,
                    "monomials": tested,
                    "pass": failure is None,
                    "counterexample": failure,
                }
            )

    return {
        "max_arity": max_arity,
        "max_weight": max_weight,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
