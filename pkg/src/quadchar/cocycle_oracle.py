"""Brute-force cohomology counts on finite coefficient truncations.

This module is an independent cross-check for the lattice cohomology
engine and deliberately does not import it.  Everything here is computed
by exhaustive enumeration over the finite module ``M/mM = (Z/m)^n``:

* ``truncated_tate_minus_one_order`` counts the degree ``-1`` Tate group
  of a finite abelian group action on ``(Z/m)^n``: the kernel of the norm
  (the sum over *formal* group elements, so non-faithful actions weight
  correctly) modulo the augmentation submodule, both built element by
  element;

* ``cyclic_one_cocycle_order`` counts, for an order-2 action, literal
  1-cocycles modulo 1-coboundaries: a crossed homomorphism ``c`` on
  ``{1, s}`` is determined by ``c(s)`` subject to
  ``c(s) + s.c(s) = c(s^2) = 0``, and coboundaries are ``(s-1)v``.  For a
  cyclic group the degree 1 and degree -1 groups are isomorphic, so this
  is a second, structurally different, route to the same count.

For a lattice ``M`` (free, finitely generated) and ``m`` a multiple of the
exponents of both Tate groups in degrees -1 and 0, the coefficient
sequence ``0 -> M -m-> M -> M/mM -> 0`` gives

    |H^-1(G, M/mM)| = |H^-1(G, M)| * |H^0(G, M)|,

because multiplication by ``m`` kills both groups, making the long exact
sequence split into short pieces.  ``expected_truncated_order`` records
that bridge; the test suite uses it to compare this oracle with the
integral engine.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

__all__ = [
    "truncated_tate_minus_one_order",
    "cyclic_one_cocycle_order",
    "expected_truncated_order",
]

_MAX_POINTS = 4096

Matrix = Sequence[Sequence[int]]
Vector = tuple[int, ...]


def _mat_mul(a: Matrix, b: Matrix) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_vec_mod(a: Matrix, v: Vector, m: int) -> Vector:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) % m for i in range(n))


def _formal_group_matrices(
    generators: Sequence[Matrix], orders: Sequence[int]
) -> list[tuple[tuple[int, ...], ...]]:
    """Matrices of all formal elements of ``prod Z/orders[i]``, with multiplicity.

    Element ``(k_0, ..., k_{r-1})`` acts by ``G_0**k_0 * ... * G_{r-1}**k_{r-1}``.
    Repeated matrices are kept: the norm is a sum over the abstract group.
    """
    if len(generators) != len(orders):
        raise ValueError("need one declared order per generator")
    n = len(generators[0]) if generators else 0
    powers: list[list[tuple[tuple[int, ...], ...]]] = []
    for gen, order in zip(generators, orders):
        gen_t = tuple(tuple(row) for row in gen)
        row = [_identity(len(gen_t))]
        for _ in range(order - 1):
            row.append(_mat_mul(row[-1], gen_t))
        powers.append(row)
    out: list[tuple[tuple[int, ...], ...]] = []
    for combo in itertools.product(*(range(o) for o in orders)):
        mat = _identity(n) if n else ()
        for idx, k in enumerate(combo):
            mat = _mat_mul(mat, powers[idx][k])
        out.append(mat)
    return out


def _subgroup_closure(generators: Iterable[Vector], m: int, dim: int) -> set[Vector]:
    """The subgroup of ``(Z/m)^dim`` generated by the given vectors."""
    gens = [tuple(x % m for x in g) for g in generators]
    group: set[Vector] = {tuple([0] * dim)}
    frontier = [tuple([0] * dim)]
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple((base[i] + g[i]) % m for i in range(dim))
            if nxt not in group:
                group.add(nxt)
                frontier.append(nxt)
    return group


def truncated_tate_minus_one_order(
    generators: Sequence[Matrix], orders: Sequence[int], modulus: int
) -> int:
    """|ker(norm) / augmentation-submodule| on ``(Z/modulus)^n`` by enumeration."""
    if not generators:
        raise ValueError("need at least one generator (use the identity for a trivial action)")
    n = len(generators[0])
    if modulus**n > _MAX_POINTS:
        raise ValueError(f"truncation has {modulus ** n} points, exceeding cap {_MAX_POINTS}")
    group_mats = _formal_group_matrices(generators, orders)
    norm = tuple(
        tuple(sum(g[i][j] for g in group_mats) for j in range(n)) for i in range(n)
    )
    kernel = {
        v
        for v in itertools.product(range(modulus), repeat=n)
        if all(x == 0 for x in _mat_vec_mod(norm, v, modulus))
    }
    aug_gens: list[Vector] = []
    for g in group_mats:
        for j in range(n):
            col = tuple((g[i][j] - (1 if i == j else 0)) % modulus for i in range(n))
            aug_gens.append(col)
    augmentation = _subgroup_closure(aug_gens, modulus, n)
    if not augmentation <= kernel:
        raise AssertionError("augmentation submodule must lie in the norm kernel")
    return len(kernel) // len(augmentation)


def cyclic_one_cocycle_order(matrix: Matrix, modulus: int) -> int:
    """|Z^1 / B^1| for the order-2 action of ``matrix`` on ``(Z/modulus)^n``.

    Cocycles: vectors ``c`` with ``c + s.c = 0``; coboundaries: ``(s-1)v``.
    """
    n = len(matrix)
    if modulus**n > _MAX_POINTS:
        raise ValueError(f"truncation has {modulus ** n} points, exceeding cap {_MAX_POINTS}")
    s = tuple(tuple(row) for row in matrix)
    if _mat_mul(s, s) != _identity(n):
        raise ValueError("the one-cocycle oracle needs an action of order dividing 2")
    cocycles = 0
    for c in itertools.product(range(modulus), repeat=n):
        sc = _mat_vec_mod(s, c, modulus)
        if all((c[i] + sc[i]) % modulus == 0 for i in range(n)):
            cocycles += 1
    coboundaries = {
        tuple((_mat_vec_mod(s, v, modulus)[i] - v[i]) % modulus for i in range(n))
        for v in itertools.product(range(modulus), repeat=n)
    }
    return cocycles // len(coboundaries)


def expected_truncated_order(h_minus_one_order: int, h_zero_order: int) -> int:
    """Truncated-coefficient count predicted by the integral degrees -1 and 0.

    Valid whenever the truncation modulus is a multiple of both exponents;
    see the module docstring for the exact-sequence argument.
    """
    return h_minus_one_order * h_zero_order
