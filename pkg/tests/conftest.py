"""Shared test helpers and the acceptance-summary terminal hook."""

from __future__ import annotations

import itertools
from typing import Iterator

Matrix = tuple[tuple[int, ...], ...]

# One line per acceptance criterion, printed in the terminal summary so the
# pass/fail status of each criterion is always visible in the test output.
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:  # noqa: ANN001
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def signed_permutation_matrices(n: int) -> Iterator[Matrix]:
    """All monomial matrices with entries in {0, +1, -1}, one per row/column."""
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(
                tuple(signs[i] if j == perm[i] else 0 for j in range(n)) for i in range(n)
            )


def signed_permutation_involutions(n: int) -> list[Matrix]:
    """All signed permutation matrices squaring to the identity (identity included)."""
    eye = identity_matrix(n)
    return [m for m in signed_permutation_matrices(n) if mat_mul(m, m) == eye]


def commuting_involution_pairs(n: int) -> list[tuple[Matrix, Matrix]]:
    """Unordered pairs of commuting signed-permutation involutions."""
    invs = signed_permutation_involutions(n)
    out = []
    for i, a in enumerate(invs):
        for b in invs[i:]:
            if mat_mul(a, b) == mat_mul(b, a):
                out.append((a, b))
    return out
