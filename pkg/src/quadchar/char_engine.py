"""Symbolic engine for quadratic character contributions of root-orbit classes.

Every invariant handled here is a quadratic character built from a small
set of basis symbols: the sign character of the units of the orbit
field's residue field (``sgn(k_E_a^x)``), the same for the stabilizer
field (``sgn(k_F_a^x)``), the sign character of the norm-one subgroup of
the orbit field's residue field (``sgn(k_E_a^1)``), and the quadratic
character attached to the quadratic step ``E_a / F_a``
(``omega(E_a/F_a)``).  Products live in the group algebra over GF(2), so
a ``CharContribution`` is just a frozenset of symbols with symmetric
difference as multiplication.

A ``RootOrbitConfig`` bundles the classification triple of an orbit
(step type ``deg_EaFa``, symmetry over the base field ``sym_F``,
symmetry over the quadratic base extension ``sym_E``), the twisted-orbit
columns (``sym_Fop``, ``deg_EaFaop``, validated against the structural
derivation), the ramification of the quadratic base extension itself
(``ef``), and two element-dependent gates: ``in_phi_half`` (whether the
orbit meets the chosen half-system used by the depth-zero sign counts;
forced off when the base extension is unramified, since Frobenius orbits
then pair the halves) and ``ord_zero`` (whether the relevant orbit
invariant has even valuation; only meaningful when the orbit is
symmetric-ramified over the extension).

``conjecture_check`` compares the product of the three sign invariants
against the twisted-class character and reports one of three verdicts:
exact symbolic equality, equality up to a known character identification
or gate reassignment (``NEEDS_ELEMENT_CHECK`` with the reason), or an
outright mismatch.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .padic_fields import LocalFieldDesc, SquareClass, hilbert_symbol
from .root_orbits import Deg, Sym, derive_op_data

__all__ = [
    "EF",
    "Symbol",
    "CharContribution",
    "ONE",
    "SGN_UNITS_ORBIT",
    "SGN_UNITS_STAB",
    "SGN_NORM_ONE_ORBIT",
    "OMEGA_STEP",
    "RootOrbitConfig",
    "CLASS_TRIPLES",
    "class_key",
    "allowed_ef",
    "enumerate_configs",
    "kaletha_contribution",
    "hakim_contribution",
    "prasad_contribution",
    "zeta_contribution",
    "toral_invariant",
    "CheckStatus",
    "Verdict",
    "conjecture_check",
]


class EF(str, Enum):
    """Ramification of the quadratic base extension ``E/F``."""

    UNRAM = "ur"
    RAM = "r"


Symbol = tuple[str, str]

_SYM_SGN_UNITS_ORBIT: Symbol = ("sgn_units", "k_E_a")
_SYM_SGN_UNITS_STAB: Symbol = ("sgn_units", "k_F_a")
_SYM_SGN_NORM_ONE: Symbol = ("sgn_norm_one", "k_E_a")
_SYM_OMEGA_STEP: Symbol = ("omega_quad", "E_a/F_a")

_SYMBOL_TEXT = {
    _SYM_SGN_UNITS_ORBIT: "sgn(k_E_a^x) . alpha",
    _SYM_SGN_UNITS_STAB: "sgn(k_F_a^x) . alpha",
    _SYM_SGN_NORM_ONE: "sgn(k_E_a^1) . alpha",
    _SYM_OMEGA_STEP: "omega(E_a/F_a) . iota . alpha",
}


@dataclass(frozen=True)
class CharContribution:
    """A product of basis quadratic characters (exponents mod 2)."""

    symbols: frozenset[Symbol] = frozenset()

    def __post_init__(self) -> None:
        unknown = set(self.symbols) - set(_SYMBOL_TEXT)
        if unknown:
            raise ValueError(f"unknown character symbols: {sorted(unknown)}")

    def __mul__(self, other: "CharContribution") -> "CharContribution":
        return CharContribution(self.symbols ^ other.symbols)

    @property
    def is_trivial(self) -> bool:
        return not self.symbols

    def eval(self, values: Mapping[Symbol, int]) -> int:
        """Evaluate at a point given the value of each basis character."""
        result = 1
        for symbol in self.symbols:
            value = values[symbol]
            if value not in (1, -1):
                raise ValueError("character values must be +1 or -1")
            result *= value
        return result

    def describe(self) -> str:
        """Canonical cell text: '1' or a sorted ' * '-joined product."""
        if not self.symbols:
            return "1"
        return " * ".join(sorted(_SYMBOL_TEXT[s] for s in self.symbols))


ONE = CharContribution()
SGN_UNITS_ORBIT = CharContribution(frozenset({_SYM_SGN_UNITS_ORBIT}))
SGN_UNITS_STAB = CharContribution(frozenset({_SYM_SGN_UNITS_STAB}))
SGN_NORM_ONE_ORBIT = CharContribution(frozenset({_SYM_SGN_NORM_ONE}))
OMEGA_STEP = CharContribution(frozenset({_SYM_OMEGA_STEP}))


# the ten consistent classification triples, in table order
CLASS_TRIPLES: tuple[tuple[Deg, Sym, Sym], ...] = (
    (Deg.SPLIT, Sym.ASYM, Sym.ASYM),
    (Deg.UNRAM, Sym.ASYM, Sym.ASYM),
    (Deg.RAM, Sym.ASYM, Sym.ASYM),
    (Deg.SPLIT, Sym.SYM_UNRAM, Sym.ASYM),
    (Deg.SPLIT, Sym.SYM_UNRAM, Sym.SYM_UNRAM),
    (Deg.RAM, Sym.SYM_UNRAM, Sym.SYM_UNRAM),
    (Deg.SPLIT, Sym.SYM_RAM, Sym.ASYM),
    (Deg.SPLIT, Sym.SYM_RAM, Sym.SYM_RAM),
    (Deg.UNRAM, Sym.SYM_RAM, Sym.SYM_RAM),
    (Deg.UNRAM, Sym.SYM_RAM, Sym.SYM_UNRAM),
)

# which base-extension ramifications occur for each class
_EF_ALLOWED: dict[tuple[Deg, Sym, Sym], tuple[EF, ...]] = {
    CLASS_TRIPLES[0]: (EF.UNRAM, EF.RAM),
    CLASS_TRIPLES[1]: (EF.UNRAM, EF.RAM),
    CLASS_TRIPLES[2]: (EF.RAM,),
    CLASS_TRIPLES[3]: (EF.UNRAM,),
    CLASS_TRIPLES[4]: (EF.UNRAM, EF.RAM),
    CLASS_TRIPLES[5]: (EF.RAM,),
    CLASS_TRIPLES[6]: (EF.RAM,),
    CLASS_TRIPLES[7]: (EF.UNRAM, EF.RAM),
    CLASS_TRIPLES[8]: (EF.UNRAM, EF.RAM),
    CLASS_TRIPLES[9]: (EF.RAM,),
}


def allowed_ef(triple: tuple[Deg, Sym, Sym]) -> tuple[EF, ...]:
    """Base-extension ramifications compatible with a classification triple."""
    if triple not in _EF_ALLOWED:
        raise ValueError(f"not a consistent classification triple: {triple}")
    return _EF_ALLOWED[triple]


@dataclass(frozen=True)
class RootOrbitConfig:
    """One fully specified orbit situation (class, ramification, gates)."""

    deg_EaFa: Deg
    sym_F: Sym
    sym_E: Sym
    sym_Fop: Sym
    deg_EaFaop: Deg
    ef: EF
    in_phi_half: bool = False
    ord_zero: bool = False

    def __post_init__(self) -> None:
        triple = (self.deg_EaFa, self.sym_F, self.sym_E)
        if triple not in _EF_ALLOWED:
            raise ValueError(f"not a consistent classification triple: {triple}")
        expected = derive_op_data(self.deg_EaFa, self.sym_F, self.sym_E)
        if (self.sym_Fop, self.deg_EaFaop) != expected:
            raise ValueError(
                f"twisted-orbit columns {self.sym_Fop, self.deg_EaFaop} contradict "
                f"the structural values {expected}"
            )
        if self.ef not in _EF_ALLOWED[triple]:
            raise ValueError(f"class {triple} does not occur with ef={self.ef.value}")
        if self.in_phi_half and self.ef is EF.UNRAM:
            raise ValueError(
                "over an unramified base extension the half-system gate is forced off"
            )
        if self.ord_zero and self.sym_E is not Sym.SYM_RAM:
            raise ValueError(
                "the even-valuation gate only applies to symmetric-ramified-over-E orbits"
            )

    @property
    def triple(self) -> tuple[Deg, Sym, Sym]:
        return (self.deg_EaFa, self.sym_F, self.sym_E)


def class_key(config_or_triple: RootOrbitConfig | tuple[Deg, Sym, Sym]) -> int:
    """1-based class number of a config or triple, in table order."""
    triple = (
        config_or_triple.triple
        if isinstance(config_or_triple, RootOrbitConfig)
        else config_or_triple
    )
    try:
        return CLASS_TRIPLES.index(triple) + 1
    except ValueError:
        raise ValueError(f"not a consistent classification triple: {triple}") from None


def make_config(
    triple: tuple[Deg, Sym, Sym], ef: EF, in_phi_half: bool = False, ord_zero: bool = False
) -> RootOrbitConfig:
    """Build a config from a classification triple, deriving twisted columns."""
    sym_op, deg_op = derive_op_data(*triple)
    return RootOrbitConfig(
        deg_EaFa=triple[0],
        sym_F=triple[1],
        sym_E=triple[2],
        sym_Fop=sym_op,
        deg_EaFaop=deg_op,
        ef=ef,
        in_phi_half=in_phi_half,
        ord_zero=ord_zero,
    )


def enumerate_configs() -> list[RootOrbitConfig]:
    """All admissible configs: 10 classes x allowed ef x allowed gates (30 total)."""
    configs: list[RootOrbitConfig] = []
    for triple in CLASS_TRIPLES:
        for ef in allowed_ef(triple):
            phi_values = (False, True) if ef is EF.RAM else (False,)
            ord_values = (False, True) if triple[2] is Sym.SYM_RAM else (False,)
            for in_phi_half in phi_values:
                for ord_zero in ord_values:
                    configs.append(make_config(triple, ef, in_phi_half, ord_zero))
    return configs


# ---------------------------------------------------------------------------
# the three sign invariants and the twisted-class character
# ---------------------------------------------------------------------------


def kaletha_contribution(config: RootOrbitConfig) -> CharContribution:
    """Toral-invariant sign character of the orbit.

    Nontrivial only on the half-system gate, and only for the classes
    where the orbit field character does not restrict trivially: the
    asymmetric and symmetric classes whose twisted orbit is
    ``(sym_r, split)`` contribute the unit sign character of ``k_E_a``;
    the two classes with a ramified symmetry flavor against an opposite
    step flavor contribute the norm-one sign character.
    """
    if not config.in_phi_half:
        return ONE
    key = class_key(config)
    if key in (3, 7):
        return SGN_UNITS_ORBIT
    if key in (6, 10):
        return SGN_NORM_ONE_ORBIT
    return ONE


def hakim_contribution(config: RootOrbitConfig) -> CharContribution:
    """Distinction sign character: unit sign of the stabilizer field.

    Appears exactly for orbits whose symmetry step over the base is
    ramified, gated by the half-system membership.
    """
    if config.sym_F is Sym.SYM_RAM and config.in_phi_half:
        return SGN_UNITS_STAB
    return ONE


def prasad_contribution(config: RootOrbitConfig) -> CharContribution:
    """Quadratic-character contribution of the twisted Levi comparison.

    Nontrivial exactly when the orbit is symmetric over the base and the
    step ``E_a / F_a`` is a genuine quadratic extension.
    """
    if config.sym_F is not Sym.ASYM and config.deg_EaFa is not Deg.SPLIT:
        return OMEGA_STEP
    return ONE


def zeta_contribution(config: RootOrbitConfig) -> CharContribution:
    """Character of the twisted class, read off the twisted-orbit columns.

    Keyed on ``(deg_EaFaop, sym_Fop, sym_E)``: a twisted class that is
    split with ramified symmetry and asymmetric over the extension gives
    the unit sign character of the orbit field; an unramified twisted
    step with ramified twisted symmetry gives the step character; all
    other twisted classes contribute trivially.  Independent of gates.
    """
    op_triple = (config.deg_EaFaop, config.sym_Fop, config.sym_E)
    if op_triple == (Deg.SPLIT, Sym.SYM_RAM, Sym.ASYM):
        return SGN_UNITS_ORBIT
    if op_triple[:2] == (Deg.UNRAM, Sym.SYM_RAM):
        return OMEGA_STEP
    return ONE


def toral_invariant(field: LocalFieldDesc, a: SquareClass, b: SquareClass) -> int:
    """Toral invariant of a symmetric orbit at an element pair.

    Equal to the quadratic Hilbert symbol of the two square classes over
    the signed-stabilizer field; the first class encodes the quadratic
    step and must be nontrivial for the invariant to be meaningful.
    """
    if a.is_trivial:
        raise ValueError("the step class of a symmetric orbit must be nontrivial")
    return hilbert_symbol(field, a, b)


# ---------------------------------------------------------------------------
# the comparison verdict
# ---------------------------------------------------------------------------


class CheckStatus(str, Enum):
    SYMBOLIC_EQUAL = "symbolic_equal"
    NEEDS_ELEMENT_CHECK = "needs_element_check"
    MISMATCH = "mismatch"


@dataclass(frozen=True)
class Verdict:
    product: CharContribution
    zeta: CharContribution
    status: CheckStatus
    reason: str = ""


def _residue_fields_coincide(config: RootOrbitConfig) -> bool:
    """Whether ``k_F_a`` and ``k_E_a`` are the same residue field."""
    return config.deg_EaFa in (Deg.SPLIT, Deg.RAM)


_NORM_PRODUCT = (SGN_NORM_ONE_ORBIT * SGN_UNITS_STAB * OMEGA_STEP).symbols


def _relation_reason(config: RootOrbitConfig, diff: CharContribution) -> str | None:
    """Known character identifications that kill a symbolic discrepancy."""
    if _residue_fields_coincide(config) and _SYM_SGN_UNITS_STAB in diff.symbols:
        collapsed = diff * SGN_UNITS_STAB * SGN_UNITS_ORBIT
        if collapsed.is_trivial:
            return (
                "unit sign characters of k_F_a and k_E_a agree on their shared residue field"
            )
    if (
        config.sym_F is not Sym.ASYM
        and config.deg_EaFa is Deg.UNRAM
        and diff.symbols == _NORM_PRODUCT
    ):
        return (
            "norm-one sign, stabilizer unit sign, and the step character "
            "multiply to one on norms from the unramified step"
        )
    return None


def conjecture_check(config: RootOrbitConfig) -> Verdict:
    """Compare the product of the three invariants with the twisted character.

    Cascade: exact symbol equality; then known character identifications;
    then re-checking under the opposite half-system gate (that gate is
    element data, not class data); otherwise a mismatch.
    """
    product = (
        kaletha_contribution(config)
        * hakim_contribution(config)
        * prasad_contribution(config)
    )
    zeta = zeta_contribution(config)
    if product == zeta:
        return Verdict(product, zeta, CheckStatus.SYMBOLIC_EQUAL)
    diff = product * zeta
    reason = _relation_reason(config, diff)
    if reason is not None:
        return Verdict(product, zeta, CheckStatus.NEEDS_ELEMENT_CHECK, reason)
    if config.ef is EF.RAM:
        flipped = dataclasses.replace(config, in_phi_half=not config.in_phi_half)
        alt_product = (
            kaletha_contribution(flipped)
            * hakim_contribution(flipped)
            * prasad_contribution(flipped)
        )
        if alt_product == zeta:
            return Verdict(
                product,
                zeta,
                CheckStatus.NEEDS_ELEMENT_CHECK,
                "agrees under the opposite half-system gate",
            )
        alt_reason = _relation_reason(flipped, alt_product * zeta)
        if alt_reason is not None:
            return Verdict(
                product,
                zeta,
                CheckStatus.NEEDS_ELEMENT_CHECK,
                f"under the opposite half-system gate: {alt_reason}",
            )
    return Verdict(
        product, zeta, CheckStatus.MISMATCH, "no identification reconciles the products"
    )
