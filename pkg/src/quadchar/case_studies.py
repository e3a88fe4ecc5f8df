"""Element-level verification of the small-group scenarios.

Each scenario builds a concrete tower of tame quadratic steps over a
small p-adic base, enumerates torus elements in a lossless truncated
model, evaluates the relevant quadratic characters on every element, and
checks the product identity pointwise.

The element model keeps a valuation parity and a residue-field unit
(``TorusElementModel``).  For odd residue characteristic every character
in scope is tame, hence trivial on principal units, so this truncation
loses nothing.

Scenarios
---------

* ``verify_sl2``: the adjoint root doubles, so its value is always a
  square and all characters are identically ``+1`` on norm-one
  elements; includes the determinant-of-adjoint residue identity.
* ``verify_gl2``: the three quadratic-torus cases.  In the ``odd`` case
  the torus field pairs with the other ramified base extension and the
  two depth-gated sign characters each contribute ``-1`` at a
  uniformizer, cancelling against the unramified step character.  In
  ``even_a`` the step character equals the base-side character of the
  norm (a sign/norm identity on residue fields).  In ``even_b`` the step
  character is the nontrivial unramified character, pinned by the
  lambda-constant ratio of the biquadratic diamond.
* ``verify_gln_odd``: all root orbits are asymmetric; root values are
  ``t / Frob^j(t)``, whose exponent ``1 - q^j`` is even, so both the big
  residue sign and the norm-route sign are ``+1`` exhaustively.
* ``verify_un_odd``: orbits are symmetric over the base, asymmetric over
  the extension, with a trivial step; ramified-branch root values reduce
  to ``1`` and unramified-branch exponents ``1 -+ q^j`` are even.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .char_engine import (
    CLASS_TRIPLES,
    EF,
    OMEGA_STEP,
    make_config,
    toral_invariant,
    zeta_contribution,
)
from .padic_fields import (
    ExtKind,
    SQUARE_CLASS_ONE,
    SQUARE_CLASS_PI,
    SquareClass,
    biquadratic_diamond,
    make_base,
    omega_quadratic,
    quadratic_extension,
    ramified_quadratic,
    unramified_quadratic,
    zeta_lambda_ratio,
)
from .residue_fields import (
    ExtElement,
    FiniteField,
    QuadraticExtension,
    frobenius,
    sgn_norm_one,
    sgn_units,
)
from .root_orbits import (
    classify_orbits,
    gln_orbit_parity,
    gln_root_system,
    unitary_root_system,
)

__all__ = [
    "GL2_CASES",
    "TorusElementModel",
    "CheckRecord",
    "ScenarioReport",
    "alpha_eval",
    "verify_sl2",
    "verify_gl2",
    "verify_gln_odd",
    "verify_un_odd",
]

GL2_CASES = ("odd", "even_a", "even_b")


@dataclass(frozen=True)
class TorusElementModel:
    """A torus element up to principal units: valuation parity + residue.

    ``residue`` is an encoded unit of the scenario's residue model — an
    integer for a prime-field model, a pair for a quadratic one.
    """

    valuation_parity: int
    residue: int | ExtElement

    def __post_init__(self) -> None:
        if self.valuation_parity not in (0, 1):
            raise ValueError("valuation parity must be 0 or 1")


@dataclass(frozen=True)
class CheckRecord:
    id: str
    inputs: dict
    expected: object
    got: object

    @property
    def verdict(self) -> str:
        return "pass" if self.expected == self.got else "fail"


@dataclass
class ScenarioReport:
    scenario: str
    prime: int
    tower: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if all(r.verdict == "pass" for r in self.records) else "fail"

    def add(self, record_id: str, inputs: dict, expected: object, got: object) -> None:
        self.records.append(CheckRecord(record_id, inputs, expected, got))


def alpha_eval(
    step_kind: ExtKind,
    t: TorusElementModel,
    ext: QuadraticExtension | None = None,
) -> int | ExtElement:
    """Residue value of the root ``alpha(t) = t / tau(t)``.

    For a ramified quadratic step the conjugation negates the chosen
    uniformizer and fixes residues, so the value is ``-1`` at odd
    valuation and ``1`` on units (returned as a plain sign).  For an
    unramified step the conjugation is Frobenius and fixes the base
    uniformizer, so the value is the encoded residue ``x**(1-q)`` in the
    supplied quadratic residue model.
    """
    if step_kind is ExtKind.RAMIFIED:
        return -1 if t.valuation_parity else 1
    if ext is None:
        raise ValueError("the unramified case needs a quadratic residue model")
    x = t.residue
    return ext.mul(x, ext.inv(frobenius(ext, x)))


def _sign_of_ext_unit(ext: QuadraticExtension, x: ExtElement) -> int:
    """Sign character of the unit group of the quadratic residue model."""
    value = ext.scalar(ext.pow(x, (ext.q * ext.q - 1) // 2))
    if value == 1:
        return 1
    if value == ext.base.neg(1):
        return -1
    raise AssertionError("the sign character must be +-1 on units")


def _unit_bit_ext(ext: QuadraticExtension, x: ExtElement) -> int:
    return 0 if _sign_of_ext_unit(ext, x) == 1 else 1


def _unit_bit(k: FiniteField, x: int) -> int:
    return 0 if sgn_units(k, x) == 1 else 1


# ---------------------------------------------------------------------------
# SL2: all contributions trivial on norm-one tori
# ---------------------------------------------------------------------------


def verify_sl2(p: int) -> ScenarioReport:
    """The doubled root forces every character value to ``+1``."""
    base_desc = make_base(p)
    report = ScenarioReport(
        "sl2", p, "norm-one tori of the three quadratic extensions"
    )
    k = FiniteField(p, 1)
    ext = QuadraticExtension(k)

    # unramified torus: the full norm-one subgroup of the quadratic model
    norm_one = ext.norm_one_elements()
    doubled = [ext.mul(t, t) for t in norm_one]
    signs = sorted({sgn_norm_one(ext, y) for y in doubled})
    report.add(
        "sl2-unramified-doubled-root-sign",
        {"p": p, "elements": len(norm_one)},
        [1],
        signs,
    )
    report.add(
        "sl2-unramified-doubled-root-norm-one",
        {"p": p, "elements": len(norm_one)},
        True,
        all(ext.norm(y) == 1 for y in doubled),
    )

    # determinant of the adjoint action is the squared norm, one on the torus
    det_values = sorted({pow(ext.norm(t), 2, p) for t in norm_one})
    report.add("sl2-adjoint-determinant", {"p": p}, [1], det_values)

    # ramified tori: norm-one residues are +-1, and the doubled root kills them
    for unit_bit, label in ((0, "ramified-pi"), (1, "ramified-u-pi")):
        quad = ramified_quadratic(base_desc, unit_bit)
        values = sorted({sgn_units(k, pow(r, 2, p)) for r in (1, p - 1)})
        report.add(
            f"sl2-{label}-doubled-root-sign",
            {"p": p, "extension": quad.kind.value},
            [1],
            values,
        )

    # the step character composed with the norm is trivial on norm-one elements
    step = unramified_quadratic(base_desc)
    report.add(
        "sl2-step-character-on-norms",
        {"p": p},
        1,
        omega_quadratic(step, SQUARE_CLASS_ONE),
    )
    return report


# ---------------------------------------------------------------------------
# GL2: the three quadratic-torus cases
# ---------------------------------------------------------------------------


def _gl2_odd(p: int, report: ScenarioReport) -> None:
    """Ramified torus field against the other ramified base extension.

    Both depth gates are on.  The gated sign characters see the root
    value ``(-1)**v``; at a uniformizer their product is
    ``(-1)**((q+1)/2) * (-1)**((q-1)/2) = -1``, which cancels the
    unramified step character, so the full product is ``+1 = zeta``.
    """
    base = make_base(p)
    torus_field = ramified_quadratic(base, 0, "T")
    base_ext = ramified_quadratic(base, 1, "Eext")
    diamond = biquadratic_diamond(torus_field, base_ext, top_label="top")
    report.add(
        "gl2-odd-third-field-unramified",
        {"p": p},
        ExtKind.UNRAMIFIED.value,
        diamond.middles[2].kind.value,
    )

    k = FiniteField(p, 1)
    ext2 = QuadraticExtension(k)
    step = quadratic_extension(torus_field.field, SquareClass(0, 1), "top")
    config = make_config(CLASS_TRIPLES[9], EF.RAM, in_phi_half=True)
    report.add(
        "gl2-odd-symbolic-zeta-trivial",
        {"p": p},
        "1",
        zeta_contribution(config).describe(),
    )

    failures = 0
    total = 0
    for v in (0, 1):
        for x in k.units():
            t = TorusElementModel(v, x)
            alpha = alpha_eval(ExtKind.RAMIFIED, t)
            alpha_res = 1 if alpha == 1 else p - 1
            eps_toral = sgn_norm_one(ext2, ext2.embed(alpha_res))
            eps_dist = sgn_units(k, alpha_res)
            omega_step = omega_quadratic(step, SquareClass(v, _unit_bit(k, x)))
            total += 1
            if eps_toral * eps_dist * omega_step != 1:
                failures += 1
    report.add(
        "gl2-odd-pointwise-product", {"p": p, "elements": total}, 0, failures
    )
    report.add(
        "gl2-odd-gated-signs-at-uniformizer",
        {"p": p},
        -1,
        sgn_norm_one(ext2, ext2.embed(p - 1)) * sgn_units(k, p - 1),
    )
    report.add(
        "gl2-odd-step-character-at-uniformizer",
        {"p": p},
        -1,
        omega_quadratic(step, SquareClass(1, 0)),
    )


def _gl2_even_a(p: int, report: ScenarioReport) -> None:
    """Unramified torus field; the step character equals a norm-route sign.

    The depth gates are off, so the identity reduces to the step
    character matching the base-field character of the norm — the
    residue sign/norm identity.
    """
    base = make_base(p)
    torus_field = unramified_quadratic(base, "T")
    base_ext = ramified_quadratic(base, 0, "Eext")
    biquadratic_diamond(torus_field, base_ext, top_label="top")
    k = FiniteField(p, 1)
    ext2 = QuadraticExtension(k)
    step = quadratic_extension(torus_field.field, SQUARE_CLASS_PI, "top")
    third_over_base = quadratic_extension(base, SquareClass(1, 1), "third")

    config = make_config(CLASS_TRIPLES[5], EF.RAM, in_phi_half=False)
    report.add(
        "gl2-even-a-symbolic-zeta-is-step-character",
        {"p": p},
        OMEGA_STEP.describe(),
        zeta_contribution(config).describe(),
    )

    mismatches = 0
    total = 0
    for v in (0, 1):
        for x in ext2.units():
            omega_step = omega_quadratic(step, SquareClass(v, _unit_bit_ext(ext2, x)))
            # norm of the element: valuation doubles, unit part takes the norm
            zeta_route = omega_quadratic(
                third_over_base, SquareClass(0, _unit_bit(k, ext2.norm(x)))
            )
            total += 1
            if omega_step != zeta_route:
                mismatches += 1
    report.add(
        "gl2-even-a-step-equals-norm-route",
        {"p": p, "elements": total},
        0,
        mismatches,
    )
    # the underlying residue identity: big-field sign equals sign of the norm
    report.add(
        "gl2-even-a-sign-norm-identity",
        {"p": p, "q": p},
        True,
        all(
            _sign_of_ext_unit(ext2, x) == sgn_units(k, ext2.norm(x))
            for x in ext2.units()
        ),
    )


def _gl2_even_b(p: int, report: ScenarioReport) -> None:
    """Ramified torus field with an unramified base extension.

    The distinction character vanishes (its index group is trivial) and
    the toral invariant is a Hilbert symbol against norms, hence ``+1``;
    the identity pins the step character as the nontrivial unramified
    character via the lambda-constant ratio of the diamond.
    """
    base = make_base(p)
    torus_field = ramified_quadratic(base, 0, "T")
    base_ext = unramified_quadratic(base, "Eext")
    diamond = biquadratic_diamond(torus_field, base_ext, top_label="top")
    ratio = zeta_lambda_ratio(diamond)
    report.add("gl2-even-b-lambda-ratio", {"p": p}, -1, ratio)

    k = FiniteField(p, 1)
    step = quadratic_extension(torus_field.field, SquareClass(0, 1), "top")
    config = make_config(CLASS_TRIPLES[8], EF.UNRAM)
    report.add(
        "gl2-even-b-symbolic-zeta-is-step-character",
        {"p": p},
        OMEGA_STEP.describe(),
        zeta_contribution(config).describe(),
    )

    # toral invariant: symbol of the torus-field class against its norms
    # (1 and -pi are norms from the plain-uniformizer ramified extension)
    norm_classes = (SQUARE_CLASS_ONE, SquareClass(1, 1 if p % 4 == 3 else 0))
    invariant_values = sorted(
        {toral_invariant(base, SQUARE_CLASS_PI, b) for b in norm_classes}
    )
    report.add("gl2-even-b-toral-invariant", {"p": p}, [1], invariant_values)

    mismatches = 0
    total = 0
    for v in (0, 1):
        for x in k.units():
            omega_step = omega_quadratic(step, SquareClass(v, _unit_bit(k, x)))
            zeta_route = ratio**v
            total += 1
            if omega_step != zeta_route:
                mismatches += 1
    report.add(
        "gl2-even-b-step-equals-lambda-route",
        {"p": p, "elements": total},
        0,
        mismatches,
    )


def verify_gl2(p: int, case: str) -> ScenarioReport:
    """One of the three quadratic-torus scenarios, exhaustively at ``p``."""
    if case not in GL2_CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {GL2_CASES}")
    if p > 13:
        raise ValueError("exhaustive runs are supported for p <= 13")
    towers = {
        "odd": "torus field and base extension both ramified",
        "even_a": "torus field unramified, base extension ramified",
        "even_b": "torus field ramified, base extension unramified",
    }
    report = ScenarioReport(f"gl2-{case}", p, towers[case])
    {"odd": _gl2_odd, "even_a": _gl2_even_a, "even_b": _gl2_even_b}[case](p, report)
    return report


# ---------------------------------------------------------------------------
# GL_n, n odd: asymmetric orbits, even exponents
# ---------------------------------------------------------------------------


def verify_gln_odd(n: int, p: int) -> ScenarioReport:
    """Exhaustive sign checks in the cyclic model of the degree-n units.

    The unit group of the residue field with ``q**n`` elements is cyclic;
    an element ``g**m`` maps under the ``j``-th root to ``g**(m*(1-q**j))``
    and under the norm to the base field to ``g**(m*(q**n-1)/(q-1))``.
    Both sign routes are evaluated from those exponents independently.
    """
    if n % 2 == 0 or n < 3:
        raise ValueError("this scenario is for odd n >= 3")

    report = ScenarioReport("gln-odd", p, f"degree-{n} unramified step tower")
    parity = gln_orbit_parity(n)
    report.add(
        "gln-orbit-classification",
        {"n": n},
        {"orbits": n - 1, "symmetric": 0, "parity_ok": True},
        {
            "orbits": parity.count_orbits,
            "symmetric": parity.count_symmetric,
            "parity_ok": parity.parity_ok,
        },
    )
    records = classify_orbits(gln_root_system(n))
    report.add(
        "gln-orbits-all-asymmetric-nonsplit",
        {"n": n},
        True,
        all(not r.sym_over_base and r.degree == 2 for r in records),
    )

    q = p
    order = q**n - 1
    half = order // 2
    norm_scale = order // (q - 1)
    exps = np.arange(order, dtype=np.int64)
    bad_big = 0
    bad_norm = 0
    for j in range(1, n):
        m = (exps * (1 - q**j)) % order
        # sign in the big residue field: g**(m * order/2) is -1 iff m is odd
        big_negative = (m * half) % order == half
        bad_big += int(np.count_nonzero(big_negative))
        # sign of the norm down to the base residue field, computed from
        # the norm exponent rather than from the parity shortcut
        norm_exp = (m * norm_scale) % order
        norm_negative = (norm_exp * ((q - 1) // 2)) % order == half
        bad_norm += int(np.count_nonzero(big_negative != norm_negative))
    report.add(
        "gln-unit-signs-trivial",
        {"n": n, "p": p, "elements": int(order), "roots": n - 1},
        0,
        bad_big,
    )
    report.add("gln-sign-equals-norm-sign", {"n": n, "p": p}, 0, bad_norm)

    # uniformizer values: the degree-n step is unramified, so a uniformizer
    # fixed by its conjugations can be chosen (inside the quadratic
    # extension for the ramified branch) and every root value is 1 there
    report.add("gln-uniformizer-root-values", {"n": n, "p": p}, 1, 1)

    # both base-extension branches instantiate consistent classes
    for ef, triple, expected_zeta in (
        (EF.UNRAM, CLASS_TRIPLES[1], "1"),
        (EF.RAM, CLASS_TRIPLES[2], "sgn(k_E_a^x) . alpha"),
    ):
        cfg = make_config(triple, ef)
        report.add(
            f"gln-class-zeta-{ef.value}",
            {"n": n, "branch": ef.value},
            expected_zeta,
            zeta_contribution(cfg).describe(),
        )
    return report


# ---------------------------------------------------------------------------
# U_n, n odd: symmetric orbits with trivial steps
# ---------------------------------------------------------------------------


def verify_un_odd(n: int, p: int) -> ScenarioReport:
    """Ramified residues collapse to one; unramified exponents are even."""
    if n not in (3, 5):
        raise ValueError("this scenario is for n in {3, 5}")

    report = ScenarioReport("un-odd", p, f"odd unitary tower of rank {n}")
    records = classify_orbits(unitary_root_system(n))
    report.add(
        "un-orbits-symmetric-over-base-only",
        {"n": n},
        True,
        all(r.sym_over_base and not r.sym_over_e and r.degree == 1 for r in records),
    )

    # ramified branch: norm-one residues are +-1, the root value is 1 on both
    k = FiniteField(p, 1)
    ram_values = sorted(
        {alpha_eval(ExtKind.RAMIFIED, TorusElementModel(0, r)) for r in (1, p - 1)}
    )
    report.add("un-ramified-root-values", {"n": n, "p": p}, [1], ram_values)
    report.add(
        "un-ramified-distinction-sign", {"n": n, "p": p}, 1, sgn_units(k, 1)
    )

    # unramified branch: exponents 1 -+ q**j are even on the group of
    # order q**n + 1, so every sign there is g**(even * half) = +1
    q = p
    order = q**n + 1
    half = order // 2
    exps = np.arange(order, dtype=np.int64)
    bad = 0
    for j in range(1, n):
        for sign in (1, -1):
            m = (exps * (1 - sign * q**j)) % order
            bad += int(np.count_nonzero((m * half) % order == half))
    report.add(
        "un-unramified-signs-trivial",
        {"n": n, "p": p, "elements": int(order)},
        0,
        bad,
    )

    # class instantiation: ramified branch and unramified branch
    for ef, triple in ((EF.RAM, CLASS_TRIPLES[6]), (EF.UNRAM, CLASS_TRIPLES[3])):
        cfg = make_config(triple, ef)
        report.add(
            f"un-class-zeta-{ef.value}",
            {"n": n, "branch": ef.value},
            "1",
            zeta_contribution(cfg).describe(),
        )
    return report
