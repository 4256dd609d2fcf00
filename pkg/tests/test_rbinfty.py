"""Differential, monomial order, effectivity and the contracting homotopy.

Frozen oracles: hand-evaluated expansions of d(m_3), d(m_4), d(T_2), d(T_3)
(the last transcribed term by term from the defining sum with all signs
evaluated by hand), plus the structural certificates d^2 = 0, the graded
derivation rule, and dH + Hd = Id in positive degrees.
"""

import pytest

from rbcalc.freeoperad import Generator, OperadElement, TreeMonomial
from rbcalc.rbinfty import (
    all_monomials,
    boundary,
    boundary_generator,
    compare,
    effective_divisor,
    hbar,
    homotopy,
    is_typical,
    leading_term,
    verify_minimal_model,
)
from rbcalc.scalar import LAMBDA, ONE, Scalar

M2 = OperadElement.from_generator(Generator.m(2))
M3 = OperadElement.from_generator(Generator.m(3))
T1 = OperadElement.from_generator(Generator.t(1))
T2 = OperadElement.from_generator(Generator.t(2))

MINUS = Scalar.rational(-1)


def mono(element: OperadElement) -> TreeMonomial:
    (coeff, m), = element.terms
    assert coeff == ONE
    return m


# ------------------------------------------------------ frozen expansions


def test_boundary_of_lowest_generators_vanishes():
    assert boundary_generator(Generator.m(2)).is_zero
    assert boundary_generator(Generator.t(1)).is_zero


def test_boundary_m3_frozen():
    expected = M2.compose(2, M2) - M2.compose(1, M2)
    assert boundary_generator(Generator.m(3)) == expected


def test_boundary_m4_frozen():
    m4 = boundary_generator(Generator.m(4))
    expected = (
        M3.compose(1, M2).scale(-1)
        + M3.compose(2, M2)
        - M3.compose(3, M2)
        + M2.compose(1, M3)
        + M2.compose(2, M3)
    )
    assert m4 == expected


def test_boundary_t2_frozen():
    expected = (
        T1.compose(1, M2.compose(1, T1))
        + T1.compose(1, M2.compose(2, T1))
        + T1.compose(1, M2).scale(LAMBDA)
        - M2.compose(1, T1).compose(2, T1)
    )
    assert boundary_generator(Generator.t(2)) == expected


def test_boundary_t3_frozen():
    # hand transcription of the defining sum at n = 3, all 18 terms
    lam = LAMBDA
    lam2 = LAMBDA * LAMBDA
    expected = (
        # multiplications below operator towers
        M2.compose(1, T1).compose(2, T2).scale(-1)
        + M2.compose(1, T2).compose(3, T1)
        - M3.compose(1, T1).compose(2, T1).compose(3, T1)
        # p = 2, q = 1
        + T2.compose(1, M2).scale(lam)
        - T2.compose(2, M2).scale(lam)
        # p = 2, q = 2, (r_1, r_2) = (1, 2)
        - T1.compose(1, M2.compose(1, T2))
        + T1.compose(1, M2.compose(2, T2))
        # p = 2, q = 2, (r_1, r_2) = (2, 1)
        + T2.compose(1, M2.compose(1, T1))
        - T2.compose(2, M2.compose(1, T1))
        + T2.compose(1, M2.compose(2, T1))
        - T2.compose(2, M2.compose(2, T1))
        # p = 3
        + T1.compose(1, M3).scale(lam2)
        + T1.compose(1, M3.compose(1, T1)).scale(lam)
        + T1.compose(1, M3.compose(2, T1)).scale(lam)
        + T1.compose(1, M3.compose(3, T1)).scale(lam)
        + T1.compose(1, M3.compose(1, T1).compose(2, T1))
        + T1.compose(1, M3.compose(1, T1).compose(3, T1))
        + T1.compose(1, M3.compose(2, T1).compose(3, T1))
    )
    got = boundary_generator(Generator.t(3))
    assert len(got) == 18
    assert got == expected


# ------------------------------------------------------ structural oracles


def test_boundary_squares_to_zero_on_generators():
    for n in range(1, 6):
        assert boundary(boundary_generator(Generator.t(n))).is_zero
        if n >= 2:
            assert boundary(boundary_generator(Generator.m(n))).is_zero


def test_boundary_is_a_graded_derivation():
    gens = [M2, M3, T1, T2]
    for f in gens:
        sign = -1 if f.degree % 2 else 1
        for g in gens:
            for i in range(1, f.arity + 1):
                fg = f.compose(i, g)
                lhs = boundary(fg)
                rhs = boundary(f).compose(i, g) + f.compose(i, boundary(g)).scale(sign)
                assert lhs == rhs


def test_boundary_squares_to_zero_on_monomials():
    cases = [(a, w) for a in range(1, 5) for w in range(1, 3)] + [(3, 3), (2, 3)]
    for arity, weight in cases:
        for m in all_monomials(arity, weight):
            assert boundary(boundary(OperadElement.from_monomial(m))).is_zero, m.render()


# ------------------------------------------------------------ leading terms


def test_leading_terms_are_unit_typical():
    for n in range(2, 7):
        if n >= 3:
            coeff, lead = leading_term(boundary_generator(Generator.m(n)))
            assert coeff == MINUS
            assert is_typical(lead)
            assert lead == mono(
                OperadElement.from_generator(Generator.m(n - 1)).compose(1, M2)
            )
        coeff, lead = leading_term(boundary_generator(Generator.t(n)))
        assert coeff == ONE
        assert is_typical(lead)
        expected = OperadElement.from_generator(Generator.t(n - 1)).compose(
            1, M2.compose(1, T1)
        )
        assert lead == mono(expected)


def test_leading_term_dominates_the_rest():
    for gen in [Generator.m(4), Generator.t(3)]:
        element = boundary_generator(gen)
        _, lead = element.leading_term()
        for _, other in element.terms[1:]:
            assert compare(lead, other) == 1
            assert compare(other, lead) == -1
        assert compare(lead, lead) == 0


def test_compare_frozen_chain():
    a = mono(T1.compose(1, M2.compose(1, T1)))
    b = mono(T1.compose(1, M2.compose(2, T1)))
    c = mono(T1.compose(1, M2))
    d = mono(M2.compose(1, T1).compose(2, T1))
    assert compare(a, d) == 1
    assert compare(d, b) == 1
    assert compare(b, c) == 1


def test_is_typical_shapes():
    assert is_typical(mono(M2.compose(1, M2)))
    assert is_typical(mono(M3.compose(1, M2)))
    assert is_typical(mono(T2.compose(1, M2.compose(1, T1))))
    assert not is_typical(mono(M2.compose(2, M2)))
    assert not is_typical(mono(M2.compose(1, T1)))
    assert not is_typical(mono(T2.compose(1, M2)))
    # typical divisor present but monomial is strictly larger
    assert not is_typical(mono(M2.compose(1, M2).compose(3, T1)))


# ---------------------------------------------------------------- effectivity


def test_effective_divisor_basic():
    m = mono(M2.compose(1, M2))
    data = effective_divisor(m)
    assert data is not None
    assert data.divisor.vertices == frozenset({0, 1})
    assert data.typical_leaf == 1
    assert data.source == Generator.m(3)

    t = mono(T1.compose(1, M2.compose(1, T1)))
    data = effective_divisor(t)
    assert data is not None
    assert data.divisor.vertices == frozenset({0, 1, 2})
    assert data.source == Generator.t(2)


def test_effective_divisor_prefers_the_upper_block():
    m = mono(M2.compose(1, M2.compose(1, M2)))
    data = effective_divisor(m)
    assert data is not None
    assert data.divisor.vertices == frozenset({1, 2})
    assert data.source == Generator.m(3)


def test_non_effective_monomials():
    for element in [
        M2.compose(2, M2),                       # divisor not on the leftmost path
        T1.compose(1, M2.compose(2, T1)),        # no typical divisor at all
        M2.compose(1, T1).compose(2, T1),
        M2.compose(1, M2.compose(1, T2)),        # positive degree on the path below
    ]:
        assert effective_divisor(mono(element)) is None


def test_effective_divisor_blocked_by_left_leaf():
    # typical divisor in the second branch, but an operator sits on the path
    # to leaf 1, so condition (ii) fails
    m = mono(M2.compose(1, T2).compose(3, M2.compose(1, M2)))
    assert effective_divisor(m) is None


# ------------------------------------------------------------------ homotopy


def test_hbar_frozen_values():
    assert hbar(mono(M2.compose(1, M2))) == -M3
    nested = mono(M2.compose(1, M2.compose(1, M2)))
    assert hbar(nested) == -M2.compose(1, M3)
    with pytest.raises(ValueError):
        hbar(mono(M2.compose(2, M2)))


def test_homotopy_frozen_values():
    assert homotopy(M2.compose(1, M2)) == -M3
    assert homotopy(M2.compose(2, M2)).is_zero
    assert homotopy(M3).is_zero
    assert homotopy(boundary(T2)) == T2
    assert homotopy(OperadElement.zero()).is_zero


def test_contraction_identity_positive_degrees():
    for arity in range(1, 5):
        for weight in range(1, 4):
            for m in all_monomials(arity, weight):
                if m.degree <= 0:
                    continue
                x = OperadElement.from_monomial(m)
                assert boundary(homotopy(x)) + homotopy(boundary(x)) == x, m.render()


def test_homotopy_is_linear():
    x = M2.compose(1, M2)
    y = M2.compose(2, M2)
    combo = x.scale(Scalar.rational(3)) - y.scale(LAMBDA)
    assert homotopy(combo) == homotopy(x).scale(3) - homotopy(y).scale(LAMBDA)


# ------------------------------------------------------------------- report


def test_verify_minimal_model_report():
    report = verify_minimal_model(3, 3)
    assert report["pass"] is True
    names = {c["name"] for c in report["checks"]}
    assert names == {
        "boundary_squares_to_zero",
        "leading_term_typical_unit",
        "contraction_identity",
    }
    for check in report["checks"]:
        assert check["pass"] is True
        assert check["counterexample"] is None
