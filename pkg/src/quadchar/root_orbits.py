"""Twisted root systems: orbit symmetry classification and opposition towers.

A ``TwistedRootSystem`` is a finite set of roots in ``Z^rank`` together
with a finite group ``Q`` of signed permutation matrices acting on it and
a quadratic character of ``Q`` (the ``e_sign`` of each generator) whose
kernel ``Q_E`` has index 2.  Group elements are pairs ``(matrix, sign)``
and the closure is taken in the product ``GL x {+-1}``, so actions that
are not faithful on the roots still carry the correct character data.

For each orbit the classification records:

* ``sym_over_base``  — whether ``-a`` lies in the ``Q``-orbit of ``a``;
* ``sym_over_e``     — whether ``-a`` lies in the ``Q_E``-orbit of ``a``;
* ``degree``         — 1 if the stabilizer of ``a`` lies in ``Q_E`` (the
  ``Q``-orbit splits into two ``Q_E``-orbits), else 2;
* the plain, signed and twisted stabilizers of the base root.

The *opposition twist* replaces each generator ``(g, s)`` by ``(s*g, s)``;
it is an involution on systems and preserves the ``Q_E``-orbit partition.

Orbit towers.  When the system carries a field realization (a map from
subgroups of ``Q`` to p-adic field descriptors for their fixed fields),
``tower_of`` produces the tower of an orbit: the fields fixed by the
signed stabilizer, the stabilizer, and their intersections with ``Q_E``,
together with the twisted-stabilizer field.  If the twisted stabilizer is
not realized explicitly, its field is derived: in the degenerate cases it
coincides with one of the known fields, and in the biquadratic case it is
the third intermediate field of the degree-4 step, computed through an
actual biquadratic diamond so the exactly-one-unramified rule is applied
honestly.

``derive_op_data`` computes the two opposition invariants of a class
(symmetry type of the twisted orbit over the base, and the ramification
of the step from the twisted-stabilizer field up) purely structurally;
``table5_check`` diffs stored opposition columns against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .padic_fields import (
    LocalFieldDesc,
    biquadratic_diamond,
    ramified_quadratic,
    unramified_quadratic,
)

__all__ = [
    "Sym",
    "Deg",
    "Element",
    "TwistedRootSystem",
    "OrbitRecord",
    "OrbitTower",
    "GlnParityReport",
    "classify_orbits",
    "op_twist",
    "tower_of",
    "derive_op_data",
    "table5_check",
    "gln_root_system",
    "unitary_root_system",
    "gln_orbit_parity",
]


class Sym(str, Enum):
    """Symmetry type of a root orbit (with step ramification flavor)."""

    ASYM = "asym"
    SYM_UNRAM = "sym_ur"
    SYM_RAM = "sym_r"


class Deg(str, Enum):
    """Type of the quadratic-or-trivial step above the stabilizer field."""

    SPLIT = "1"
    UNRAM = "2ur"
    RAM = "2r"


Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]
Element = tuple[Matrix, int]  # (signed permutation matrix, character value)

_MAX_GROUP = 256


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def _scale_matrix(m: Matrix, s: int) -> Matrix:
    return tuple(tuple(s * x for x in row) for row in m)


@dataclass(frozen=True)
class TwistedRootSystem:
    """Roots, a signed-permutation action, and an index-2 character."""

    rank: int
    roots: tuple[Vector, ...]
    generators: tuple[Element, ...]
    realization: Mapping[frozenset[Element], LocalFieldDesc] | None = None

    def __post_init__(self) -> None:
        root_set = set(self.roots)
        if not root_set:
            raise ValueError("a root system needs at least one root")
        for r in root_set:
            if len(r) != self.rank:
                raise ValueError("root length must equal the rank")
            if _neg(r) not in root_set:
                raise ValueError(f"roots must be closed under negation; missing {_neg(r)}")
        for mat, sign in self.generators:
            if sign not in (1, -1):
                raise ValueError("character values must be +1 or -1")
            if len(mat) != self.rank:
                raise ValueError("generator matrices must match the rank")

    def group_elements(self) -> tuple[Element, ...]:
        """Closure of the generators in ``GL x {+-1}``; capped for safety."""
        identity: Element = (_identity(self.rank), 1)
        group: set[Element] = {identity}
        frontier = [identity]
        while frontier:
            base = frontier.pop()
            for mat, sign in self.generators:
                nxt = (_mat_mul(base[0], mat), base[1] * sign)
                if nxt not in group:
                    if len(group) >= _MAX_GROUP:
                        raise ValueError("group closure exceeds the supported size")
                    group.add(nxt)
                    frontier.append(nxt)
        return tuple(sorted(group))

    def e_subgroup(self) -> tuple[Element, ...]:
        """Kernel of the character; must have index 2."""
        elements = self.group_elements()
        kernel = tuple(e for e in elements if e[1] == 1)
        if 2 * len(kernel) != len(elements):
            raise ValueError("the character must cut out an index-2 subgroup")
        return kernel

    def act(self, element: Element, root: Vector) -> Vector:
        return _mat_vec(element[0], root)

    def check_action_closed(self) -> None:
        root_set = set(self.roots)
        for e in self.group_elements():
            for r in self.roots:
                if self.act(e, r) not in root_set:
                    raise ValueError(
                        f"action does not close on the root set: {e[0]} moves {r} outside"
                    )


@dataclass(frozen=True)
class OrbitRecord:
    """Classification data of one ``Q``-orbit of roots."""

    base_root: Vector
    roots: tuple[Vector, ...]
    sym_over_base: bool
    sym_over_e: bool
    degree: int  # 1 if the stabilizer is contained in Q_E, else 2
    e_suborbit_count: int
    stab: frozenset[Element]
    stab_signed: frozenset[Element]
    stab_twisted: frozenset[Element]
    stab_e: frozenset[Element]
    stab_signed_e: frozenset[Element]


def classify_orbits(system: TwistedRootSystem) -> list[OrbitRecord]:
    """Orbits of the root set under ``Q``, with symmetry and stabilizer data."""
    system.check_action_closed()
    elements = system.group_elements()
    e_subgroup = set(system.e_subgroup())
    remaining = set(system.roots)
    records: list[OrbitRecord] = []
    while remaining:
        base = min(remaining)
        orbit = sorted({system.act(g, base) for g in elements})
        e_orbit = {system.act(g, base) for g in elements if g in e_subgroup}
        stab = frozenset(g for g in elements if system.act(g, base) == base)
        stab_signed = frozenset(
            g for g in elements if system.act(g, base) in (base, _neg(base))
        )
        stab_twisted = frozenset(
            g for g in elements if tuple(g[1] * x for x in system.act(g, base)) == base
        )
        stab_e = frozenset(g for g in stab if g in e_subgroup)
        stab_signed_e = frozenset(g for g in stab_signed if g in e_subgroup)
        degree = 1 if stab <= e_subgroup else 2
        records.append(
            OrbitRecord(
                base_root=base,
                roots=tuple(orbit),
                sym_over_base=_neg(base) in set(orbit),
                sym_over_e=_neg(base) in e_orbit,
                degree=degree,
                e_suborbit_count=len(orbit) // len(e_orbit),
                stab=stab,
                stab_signed=stab_signed,
                stab_twisted=stab_twisted,
                stab_e=stab_e,
                stab_signed_e=stab_signed_e,
            )
        )
        remaining -= set(orbit)
    return records


def op_twist(system: TwistedRootSystem) -> TwistedRootSystem:
    """Scale each generator matrix by its character value; an involution."""
    return TwistedRootSystem(
        rank=system.rank,
        roots=system.roots,
        generators=tuple((_scale_matrix(m, s), s) for m, s in system.generators),
        realization=system.realization,
    )


# ---------------------------------------------------------------------------
# orbit towers over a field realization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitTower:
    """The field tower of an orbit together with its classification triple."""

    field_signed: LocalFieldDesc  # fixed field of the signed stabilizer
    field_stab: LocalFieldDesc  # fixed field of the stabilizer
    field_signed_e: LocalFieldDesc  # signed stabilizer intersected with Q_E
    field_stab_e: LocalFieldDesc  # stabilizer intersected with Q_E
    field_twisted: LocalFieldDesc  # fixed field of the twisted stabilizer
    sym_over_base: Sym
    sym_over_e: Sym
    degree: Deg
    twisted_sym: Sym
    twisted_degree: Deg


def _step_kind(sub: LocalFieldDesc, big: LocalFieldDesc) -> str:
    """Ramification of a quadratic step between two descriptors."""
    if big.e == 2 * sub.e and big.f == sub.f:
        return "ramified"
    if big.f == 2 * sub.f and big.e == sub.e:
        return "unramified"
    raise ValueError(f"inconsistent realization: {sub} -> {big} is not a quadratic step")


def _sym_flavor(sub: LocalFieldDesc, big: LocalFieldDesc, symmetric: bool) -> Sym:
    if not symmetric:
        return Sym.ASYM
    return Sym.SYM_UNRAM if _step_kind(sub, big) == "unramified" else Sym.SYM_RAM


def _deg_flavor(sub: LocalFieldDesc, big: LocalFieldDesc) -> Deg:
    if sub == big:
        return Deg.SPLIT
    return Deg.UNRAM if _step_kind(sub, big) == "unramified" else Deg.RAM


def _third_subfield(
    bottom: LocalFieldDesc, middle_a: LocalFieldDesc, middle_b: LocalFieldDesc
) -> LocalFieldDesc:
    """Third intermediate field of a biquadratic step, via an actual diamond.

    The two given middles determine their ramification kinds over the
    bottom; a representative diamond with those kinds is built and its
    remaining middle supplies the answer (the exactly-one-unramified rule).
    """
    kind_a = _step_kind(bottom, middle_a)
    kind_b = _step_kind(bottom, middle_b)
    base = LocalFieldDesc(bottom.p, 1, 1, bottom.label)
    if kind_a == kind_b == "unramified":
        raise ValueError("inconsistent realization: two unramified middles in a diamond")
    if kind_a == "unramified":
        ext_a = unramified_quadratic(base)
        ext_b = ramified_quadratic(base, 0)
    elif kind_b == "unramified":
        ext_a = ramified_quadratic(base, 0)
        ext_b = unramified_quadratic(base)
    else:
        ext_a = ramified_quadratic(base, 0)
        ext_b = ramified_quadratic(base, 1)
    third = biquadratic_diamond(ext_a, ext_b).middles[2]
    if third.kind.value == "unramified":
        return LocalFieldDesc(bottom.p, bottom.e, 2 * bottom.f, f"{bottom.label}-op")
    return LocalFieldDesc(bottom.p, 2 * bottom.e, bottom.f, f"{bottom.label}-op")


def tower_of(system: TwistedRootSystem, record: OrbitRecord) -> OrbitTower:
    """The orbit's field tower; requires a realization on the system."""
    realization = system.realization
    if realization is None:
        raise ValueError("tower_of needs a field realization on the system")

    def lookup(subgroup: frozenset[Element], name: str) -> LocalFieldDesc:
        if subgroup not in realization:
            raise ValueError(f"realization does not cover the {name} subgroup")
        return realization[subgroup]

    f_pm = lookup(record.stab_signed, "signed-stabilizer")
    f_a = lookup(record.stab, "stabilizer")
    e_pm = lookup(record.stab_signed_e, "signed-stabilizer-over-E")
    e_a = lookup(record.stab_e, "stabilizer-over-E")

    # consistency: degrees must match subgroup indices
    full = frozenset(system.group_elements())
    base_field = lookup(full, "full-group")
    for sub, fld in (
        (record.stab_signed, f_pm),
        (record.stab, f_a),
        (record.stab_signed_e, e_pm),
        (record.stab_e, e_a),
    ):
        expected_degree = len(full) // len(sub)
        if fld.e * fld.f != base_field.e * base_field.f * expected_degree:
            raise ValueError(f"inconsistent realization: {fld} has wrong degree over {base_field}")

    sym_base = _sym_flavor(f_pm, f_a, record.sym_over_base)
    sym_e = _sym_flavor(e_pm, e_a, record.sym_over_e)
    degree = _deg_flavor(f_a, e_a)

    if record.stab_twisted in realization:
        f_op = realization[record.stab_twisted]
    elif degree is Deg.SPLIT:
        # degenerate cases: the twisted field coincides with a known one
        if sym_base is Sym.ASYM or sym_e is not Sym.ASYM:
            f_op = e_a
        else:
            f_op = f_pm
    elif sym_base is Sym.ASYM:
        f_op = e_a
    elif sym_e is Sym.ASYM:
        raise ValueError("inconsistent realization: symmetric degree-2 orbit asymmetric over E")
    else:
        f_op = _third_subfield(f_pm, f_a, e_pm)

    expected_sym_op, expected_deg_op = derive_op_data(degree, sym_base, sym_e)
    # cross-check the realized twisted field against the structural answer
    if expected_deg_op is Deg.SPLIT:
        if (f_op.e, f_op.f) != (e_a.e, e_a.f):
            raise ValueError("inconsistent realization: twisted field should equal the orbit field")
    else:
        kind = _step_kind(f_op, e_a)
        got = Deg.UNRAM if kind == "unramified" else Deg.RAM
        if got != expected_deg_op:
            raise ValueError("inconsistent realization: twisted step has the wrong ramification")

    return OrbitTower(
        field_signed=f_pm,
        field_stab=f_a,
        field_signed_e=e_pm,
        field_stab_e=e_a,
        field_twisted=f_op,
        sym_over_base=sym_base,
        sym_over_e=sym_e,
        degree=degree,
        twisted_sym=expected_sym_op,
        twisted_degree=expected_deg_op,
    )


# ---------------------------------------------------------------------------
# structural opposition data and the stored-table diff
# ---------------------------------------------------------------------------


def _flavor_is_unram(s: Sym | Deg) -> bool:
    return s in (Sym.SYM_UNRAM, Deg.UNRAM)


def derive_op_data(degree: Deg, sym_base: Sym, sym_e: Sym) -> tuple[Sym, Deg]:
    """Opposition invariants ``(twisted symmetry, twisted step type)``.

    Derived structurally from the orbit lemmas:

    * fully asymmetric orbits: the twisted-stabilizer field is the orbit
      field itself, so the twisted step is trivial and the twisted
      symmetry inherits the flavor of the original step (asymmetric if
      that step is trivial);
    * symmetric over the base but asymmetric over E (necessarily a
      trivial step): the twisted field is the signed-stabilizer field,
      giving a twisted step of the original symmetry's flavor and an
      asymmetric twisted orbit;
    * symmetric over both with a trivial step: the twisted field equals
      the stabilizer field and all flavors are inherited;
    * symmetric over both with a quadratic step: the three middle fields
      of the biquadratic step contain exactly one unramified one, which
      pins down both twisted invariants.
    """
    if sym_e is not Sym.ASYM and sym_base is Sym.ASYM:
        raise ValueError("symmetric over E forces symmetric over the base")
    if sym_base is Sym.ASYM:
        if degree is Deg.SPLIT:
            return (Sym.ASYM, Deg.SPLIT)
        return (Sym.SYM_UNRAM if degree is Deg.UNRAM else Sym.SYM_RAM, Deg.SPLIT)
    if sym_e is Sym.ASYM:
        if degree is not Deg.SPLIT:
            raise ValueError("a symmetric orbit asymmetric over E has a trivial step")
        return (Sym.ASYM, Deg.UNRAM if sym_base is Sym.SYM_UNRAM else Deg.RAM)
    if degree is Deg.SPLIT:
        return (sym_base, Deg.SPLIT)
    # biquadratic case: lower edges of the three middles
    lower_f_alpha_unram = _flavor_is_unram(sym_base)
    lower_e_pm_unram = not _flavor_is_unram(sym_e)  # opposite of the upper edge
    if _flavor_is_unram(degree) == lower_f_alpha_unram:
        raise ValueError("inconsistent class: diamond edges must alternate ramification")
    count_unram = int(lower_f_alpha_unram) + int(lower_e_pm_unram)
    if count_unram >= 2:
        raise ValueError("inconsistent class: a diamond has exactly one unramified middle")
    lower_op_unram = count_unram == 0
    sym_op = Sym.SYM_UNRAM if lower_op_unram else Sym.SYM_RAM
    deg_op = Deg.RAM if lower_op_unram else Deg.UNRAM  # upper edge is opposite
    return (sym_op, deg_op)


def table5_check(configs: Iterable[object]) -> list[dict[str, object]]:
    """Diff stored opposition columns against the structural derivation.

    Each config must expose ``deg_EaFa``, ``sym_F``, ``sym_E`` and the
    stored opposition columns ``sym_Fop``, ``deg_EaFaop``.  Returns one
    diff record per disagreement (empty means the stored table is right).
    """
    diffs: list[dict[str, object]] = []
    for cfg in configs:
        expected_sym, expected_deg = derive_op_data(cfg.deg_EaFa, cfg.sym_F, cfg.sym_E)
        if (cfg.sym_Fop, cfg.deg_EaFaop) != (expected_sym, expected_deg):
            diffs.append(
                {
                    "key": (cfg.deg_EaFa.value, cfg.sym_F.value, cfg.sym_E.value),
                    "stored": (cfg.sym_Fop.value, cfg.deg_EaFaop.value),
                    "derived": (expected_sym.value, expected_deg.value),
                }
            )
    return diffs


# ---------------------------------------------------------------------------
# concrete families
# ---------------------------------------------------------------------------


def _shift_matrix(n: int) -> Matrix:
    """Cyclic coordinate shift ``e_i -> e_{i+1}``."""
    return tuple(tuple(1 if j == (i - 1) % n else 0 for j in range(n)) for i in range(n))


def _general_linear_roots(n: int) -> tuple[Vector, ...]:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                roots.append(tuple(1 if k == i else (-1 if k == j else 0) for k in range(n)))
    return tuple(sorted(roots))


def gln_root_system(n: int) -> TwistedRootSystem:
    """Type A roots with a cyclic shift action carrying character value -1.

    This is the action on the diagonal-torus roots coming from an
    unramified degree-``n`` field step together with an auxiliary
    quadratic extension linearly disjoint from it (so the character
    alternates along the cycle).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return TwistedRootSystem(
        rank=n,
        roots=_general_linear_roots(n),
        generators=((_shift_matrix(n), -1),),
    )


def unitary_root_system(n: int) -> TwistedRootSystem:
    """Type A roots with the shift-and-negate action of odd unitary groups."""
    if n < 2:
        raise ValueError("need n >= 2")
    return TwistedRootSystem(
        rank=n,
        roots=_general_linear_roots(n),
        generators=((_scale_matrix(_shift_matrix(n), -1), -1),),
    )


@dataclass(frozen=True)
class GlnParityReport:
    count_orbits: int
    count_symmetric: int
    parity_ok: bool


def gln_orbit_parity(n: int) -> GlnParityReport:
    """Orbit count and symmetric-orbit count of the cyclic type-A action.

    There are ``n - 1`` orbits; exactly one is symmetric when ``n`` is
    even and none when ``n`` is odd, so the number of symmetric orbits is
    always congruent to ``n - 1`` mod 2 (``parity_ok``).
    """
    records = classify_orbits(gln_root_system(n))
    symmetric = sum(1 for r in records if r.sym_over_base)
    return GlnParityReport(
        count_orbits=len(records),
        count_symmetric=symmetric,
        parity_ok=(symmetric % 2) == ((n - 1) % 2),
    )
