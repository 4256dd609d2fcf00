"""Exact operadic calculus for Rota-Baxter algebras of arbitrary weight.

The library implements, over Q with a formal weight parameter:

* the free dg operad on one n-ary multiplication generator per arity n >= 2
  and one n-ary operator generator per arity n >= 1, with the differential
  that encodes the Rota-Baxter identity up to coherent higher homotopies;
* the homotopy cooperads Koszul dual to that resolution, their cotree
  coproducts, operadic (de)suspension, Hadamard products and the cobar
  construction back to the dg operad;
* the homotopy contraction certifying minimality of the resolution in
  low arities and weights;
* the L-infinity algebra controlling simultaneous deformations of an
  associative product and a Rota-Baxter operator on a graded space, with
  Maurer-Cartan elements and twisting;
* the cohomology of finite-dimensional Rota-Baxter algebras (operator
  complex, Hochschild complex with descendent coefficients, and their cone).

Everything is exact: coefficients are polynomials in the formal weight with
rational coefficients, and no floating point is used anywhere.
"""

from .scalar import LAMBDA, ONE, ZERO, Scalar, scalar_add, scalar_eval, scalar_mul
from .trees import (
    DivisorRef,
    PlanarTree,
    corolla,
    divisor_ref,
    divisor_subtree,
    divisors,
    enumerate_trees,
    graft,
    planar_order,
    quotient,
    replace_divisor,
    sigma,
    substitute_vertex,
)

__version__ = "0.1.0"
