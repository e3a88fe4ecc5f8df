"""Exact verification of quadratic character identities for tori over
quadratic extensions of p-adic fields.

The package is organised in layers:

* ``residue_fields`` — finite fields, sign characters, norm-one subgroups;
* ``padic_fields`` — square classes, the tame Hilbert symbol, quadratic
  extension descriptors, biquadratic diamonds, lambda constants;
* ``cocycle_oracle`` — brute-force cohomology counts on finite truncations,
  kept independent of the lattice engine as a cross-check;
* ``galois_lattices`` — integral lattices with Galois action, Tate
  cohomology in degrees -1 and 0 via Smith normal form, the torus catalog
  and the kernel-cardinality identity it satisfies;
* ``root_orbits`` — twisted root systems, orbit symmetry classification,
  the opposition twist and orbit towers;
* ``char_engine`` — symbolic quadratic-character contributions per orbit
  class and the per-class comparison verdicts;
* ``tables`` — builtin reference tables and their regeneration diff;
* ``case_studies`` — exhaustive element-level scenario checks for small
  groups;
* ``cli`` — the ``quadchar`` command line: ``tables``, ``verify``,
  ``hilbert``.
"""

__version__ = "0.1.0"
