"""Lattice cohomology engine: SNF, Tate groups, catalog, kernel identity.

The engine is validated three ways: frozen hand-computed values, the
independent brute-force cocycle oracle on finite truncations, and
structural invariants (Shapiro, coinvariant-torsion consistency,
multiplicativity).
"""

from __future__ import annotations

import pytest
from conftest import commuting_involution_pairs, signed_permutation_involutions
from hypothesis import given, settings
from hypothesis import strategies as st

from quadchar.cocycle_oracle import (
    cyclic_one_cocycle_order,
    expected_truncated_order,
    truncated_tate_minus_one_order,
)
from quadchar.galois_lattices import (
    FiniteAbelianGroup,
    GaloisLattice,
    Gm,
    Prod,
    Res,
    U1,
    UnsupportedTorusError,
    action_matrix,
    cocharacter_lattice,
    component_group_dual,
    compositum,
    det_int,
    field_contains,
    field_degree,
    integer_kernel_basis,
    mat_mul,
    norm_quotient,
    prasad_torus_identity,
    smith_normal_form,
    tate_cohomology,
    torus_catalog,
)

NEG_ONE = ((-1,),)
SWAP = ((0, 1), (1, 0))
RES_TORUS = Res("E1", "F", U1("K", "E1"))


def lattice(rank: int, gens, orders) -> GaloisLattice:
    return GaloisLattice(rank=rank, generator_matrices=tuple(gens), generator_orders=tuple(orders))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

matrix_strategy = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-6, 6), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        )
    )
)


@given(matrix_strategy)
@settings(max_examples=150, deadline=None)
def test_smith_normal_form_properties(rows: list[list[int]]) -> None:
    a = tuple(tuple(r) for r in rows)
    snf = smith_normal_form(a)
    assert mat_mul(mat_mul(snf.u, a), snf.v) == snf.d
    assert abs(det_int(snf.u)) == 1
    assert abs(det_int(snf.v)) == 1
    assert mat_mul(snf.u, snf.u_inv) == tuple(
        tuple(1 if i == j else 0 for j in range(len(a))) for i in range(len(a))
    )
    diag = snf.diagonal
    for x, y in zip(diag, diag[1:]):
        if x != 0:
            assert y % x == 0
        else:
            assert y == 0
    for i, row in enumerate(snf.d):
        for j, entry in enumerate(row):
            if i != j:
                assert entry == 0


@given(matrix_strategy)
@settings(max_examples=80, deadline=None)
def test_integer_kernel_annihilates(rows: list[list[int]]) -> None:
    a = tuple(tuple(r) for r in rows)
    for col in integer_kernel_basis(a):
        assert all(sum(a[i][j] * col[j] for j in range(len(col))) == 0 for i in range(len(a)))


# ---------------------------------------------------------------------------
# finite abelian groups
# ---------------------------------------------------------------------------


def test_invariant_factor_normalization() -> None:
    assert FiniteAbelianGroup.from_factors([2, 3]).invariant_factors == (6,)
    assert FiniteAbelianGroup.from_factors([2, 2]).invariant_factors == (2, 2)
    assert FiniteAbelianGroup.from_factors([4, 2]).invariant_factors == (2, 4)
    assert FiniteAbelianGroup.from_factors([6, 4]).invariant_factors == (2, 12)
    assert FiniteAbelianGroup.from_factors([1, 1]).invariant_factors == ()
    assert FiniteAbelianGroup.from_factors([6, 4]).order == 24


def test_invariant_factor_validation() -> None:
    with pytest.raises(ValueError):
        FiniteAbelianGroup((3, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))


def test_group_describe() -> None:
    assert FiniteAbelianGroup(()).describe() == "1"
    assert FiniteAbelianGroup((2, 4)).describe() == "Z/2 x Z/4"


# ---------------------------------------------------------------------------
# Tate cohomology: frozen values
# ---------------------------------------------------------------------------


def test_sign_action_on_z() -> None:
    lat = lattice(1, [NEG_ONE], [2])
    assert tate_cohomology(lat, -1).invariant_factors == (2,)
    assert tate_cohomology(lat, 0).is_trivial


def test_swap_action_on_z2_is_cohomologically_trivial() -> None:
    lat = lattice(2, [SWAP], [2])
    assert tate_cohomology(lat, -1).is_trivial
    assert tate_cohomology(lat, 0).is_trivial


def test_trivial_klein_action_weights_norm() -> None:
    eye = ((1,),)
    lat = lattice(1, [eye, eye], [2, 2])
    assert tate_cohomology(lat, -1).is_trivial
    assert tate_cohomology(lat, 0).invariant_factors == (4,)


def test_klein_through_sign_quotient() -> None:
    lat = lattice(1, [NEG_ONE, NEG_ONE], [2, 2])
    assert tate_cohomology(lat, -1).invariant_factors == (2,)
    assert tate_cohomology(lat, 0).is_trivial


def test_rejects_non_invertible_generator_and_bad_degree() -> None:
    with pytest.raises(ValueError):
        lattice(1, [((2,),)], [2])
    with pytest.raises(ValueError):
        tate_cohomology(lattice(1, [NEG_ONE], [2]), 1)
    with pytest.raises(ValueError):
        lattice(1, [NEG_ONE], [3])  # wrong declared order
    with pytest.raises(ValueError):
        lattice(2, [SWAP, ((1, 0), (0, -1))], [2, 2])  # generators do not commute


# ---------------------------------------------------------------------------
# engine vs the independent truncation oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_engine_matches_oracle_on_all_involutions(n: int) -> None:
    for mat in signed_permutation_involutions(n):
        lat = lattice(n, [mat], [2])
        product = tate_cohomology(lat, -1).order * tate_cohomology(lat, 0).order
        assert truncated_tate_minus_one_order([mat], [2], 8) == expected_truncated_order(
            tate_cohomology(lat, -1).order, tate_cohomology(lat, 0).order
        )
        assert cyclic_one_cocycle_order(mat, 8) == product


@pytest.mark.parametrize("n", [1, 2])
def test_engine_matches_oracle_on_commuting_pairs(n: int) -> None:
    for a, b in commuting_involution_pairs(n):
        lat = lattice(n, [a, b], [2, 2])
        product = tate_cohomology(lat, -1).order * tate_cohomology(lat, 0).order
        assert truncated_tate_minus_one_order([a, b], [2, 2], 8) == product


@given(data=st.data())
@settings(max_examples=30, deadline=None)
def test_engine_matches_oracle_on_sampled_rank3_pairs(data: st.DataObject) -> None:
    pair = data.draw(st.sampled_from(commuting_involution_pairs(3)))
    lat = lattice(3, list(pair), [2, 2])
    product = tate_cohomology(lat, -1).order * tate_cohomology(lat, 0).order
    assert truncated_tate_minus_one_order(list(pair), [2, 2], 8) == product


# ---------------------------------------------------------------------------
# the tower and cocharacter lattices
# ---------------------------------------------------------------------------


def test_tower_structure() -> None:
    assert field_contains("E", "F") and field_contains("K", "E1")
    assert not field_contains("E", "E1")
    assert field_degree("K", "F") == 4
    assert field_degree("E", "F") == 2
    assert compositum("E", "E1") == "K"
    assert compositum("E", "E") == "E"


def test_u1_action_matrices() -> None:
    t = U1("E", "F")
    assert action_matrix(t, (1, 0)) == ((1,),)  # fixes E
    assert action_matrix(t, (0, 1)) == ((-1,),)  # moves E


def test_res_action_matrices_frozen() -> None:
    assert action_matrix(RES_TORUS, (1, 0)) == ((0, 1), (1, 0))
    assert action_matrix(RES_TORUS, (0, 1)) == ((-1, 0), (0, -1))


def test_cocharacter_level_validation() -> None:
    with pytest.raises(ValueError):
        cocharacter_lattice(U1("K", "E1"), "F")  # F does not contain E1
    with pytest.raises(UnsupportedTorusError):
        U1("K", "F")  # not a quadratic step
    with pytest.raises(UnsupportedTorusError):
        Res("E1", "F", U1("K", "E2"))  # inner torus over the wrong field
    with pytest.raises(UnsupportedTorusError):
        Prod((Gm("F"), Gm("E")))  # mixed bases


def test_shapiro_restriction_equals_inner() -> None:
    """Cohomology of a quadratic restriction at the base equals the inner
    torus' cohomology over the intermediate field, in both degrees."""
    cases = [
        (Res("E1", "F", U1("K", "E1")), U1("K", "E1"), "E1"),
        (Res("E", "F", U1("K", "E")), U1("K", "E"), "E"),
        (Res("E2", "F", Gm("E2")), Gm("E2"), "E2"),
    ]
    for restricted, inner, level in cases:
        for degree in (-1, 0):
            outer = tate_cohomology(cocharacter_lattice(restricted, "F"), degree)
            inner_grp = tate_cohomology(cocharacter_lattice(inner, level), degree)
            assert outer == inner_grp, (restricted, degree)


@pytest.mark.parametrize("torus", torus_catalog(), ids=str)
@pytest.mark.parametrize("level", ["F", "E", "E1", "E2"])
def test_minus_one_order_equals_coinvariant_torsion(torus, level) -> None:
    """The two independent pipelines give the same cardinality at every level."""
    group = tate_cohomology(cocharacter_lattice(torus, level), -1)
    dual = component_group_dual(torus, level)
    assert group.order == dual.order


# ---------------------------------------------------------------------------
# norm quotients
# ---------------------------------------------------------------------------


def test_norm_quotient_frozen_table() -> None:
    assert norm_quotient(Gm("F")).describe() == "Z/2"
    assert norm_quotient(U1("E", "F")).describe() == "1"
    assert norm_quotient(U1("E1", "F")).describe() == "Z/2"
    assert norm_quotient(U1("E2", "F")).describe() == "Z/2"
    assert norm_quotient(RES_TORUS).describe() == "1"


def test_norm_quotient_multiplicative() -> None:
    prod = Prod((Gm("F"), U1("E1", "F"), U1("E", "F")))
    assert norm_quotient(prod).invariant_factors == (2, 2)


def test_norm_quotient_rejections() -> None:
    with pytest.raises(UnsupportedTorusError):
        norm_quotient(U1("K", "E1"), ("E", "F"))  # base mismatch
    with pytest.raises(UnsupportedTorusError):
        norm_quotient(Gm("F"), ("K", "F"))  # not quadratic


# ---------------------------------------------------------------------------
# the kernel-cardinality identity
# ---------------------------------------------------------------------------

EXPECTED_KERNELS = {
    str(Gm("F")): 1,
    str(U1("E", "F")): 2,
    str(U1("E1", "F")): 2,
    str(U1("E2", "F")): 2,
    str(RES_TORUS): 2,
}


@pytest.mark.parametrize("torus", torus_catalog(), ids=str)
def test_identity_holds_on_catalog(torus) -> None:
    verdict = prasad_torus_identity(torus)
    assert verdict.equal, (torus, verdict)


def test_identity_frozen_cardinalities() -> None:
    for torus in torus_catalog():
        if str(torus) in EXPECTED_KERNELS:
            verdict = prasad_torus_identity(torus)
            assert verdict.lhs == EXPECTED_KERNELS[str(torus)]
            assert verdict.rhs == EXPECTED_KERNELS[str(torus)]


def test_identity_multiplicative_over_products() -> None:
    for torus in torus_catalog():
        if isinstance(torus, Prod):
            whole = prasad_torus_identity(torus)
            parts = 1
            for f in torus.factors:
                parts *= prasad_torus_identity(f).lhs
            assert whole.lhs == parts


def test_identity_rejects_wrong_base() -> None:
    with pytest.raises(UnsupportedTorusError):
        prasad_torus_identity(U1("K", "E1"), ("E", "F"))
