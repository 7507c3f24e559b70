"""Parapermanents of triangular tables of exact scalars.

The factorial product of the entry (i, j) of a lower-triangular table is
the product of the entries from (i, j) rightwards through the diagonal,
prod_{k=j..i} b[i][k].  The parapermanent of an order-n table is the sum
over all compositions (m_1, ..., m_r) of n of the products of the factorial
products at the key entries (N_s, N_{s-1}+1), where N_s are the prefix sums.
Unrolling the sum along the last row turns the 2**(n-1)-term definition into
an O(n^2)-multiplication recurrence over prefix parapermanents; both
evaluators are kept and must agree.

Entries may be any exact scalar supporting + and * (Fraction, QuadExt, or
similar); evaluators take the multiplicative identity of that scalar type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .compositions import count, parts_in_range

FactorialProduct = Callable[[int, int], Any]


@dataclass(frozen=True)
class TriangularMatrix:
    """A lower-triangular table; row i holds entries (i, 1) .. (i, i)."""

    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        for i, row in enumerate(self.rows, start=1):
            if len(row) != i:
                raise ValueError(f"row {i} must have {i} entries, got {len(row)}")

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Any:
        """The entry at 1-based position (i, j) with 1 <= j <= i <= order."""
        if not 1 <= j <= i <= self.order:
            raise ValueError(f"position ({i}, {j}) outside triangle of order {self.order}")
        return self.rows[i - 1][j - 1]


def factorial_product(matrix: TriangularMatrix, i: int, j: int) -> Any:
    """prod_{k=j..i} of the entries (i, k)."""
    if not 1 <= j <= i <= matrix.order:
        raise ValueError(f"position ({i}, {j}) outside triangle of order {matrix.order}")
    row = matrix.rows[i - 1]
    product = row[j - 1]
    for k in range(j, i):
        product = product * row[k]
    return product


def _factorial_product_table(matrix: TriangularMatrix) -> list[list[Any]]:
    # table[i][j] (1-based) via suffix products along each row
    table: list[list[Any]] = [[]]
    for i in range(1, matrix.order + 1):
        row = matrix.rows[i - 1]
        suffix: list[Any] = [None] * (i + 1)
        suffix[i] = row[i - 1]
        for j in range(i - 1, 0, -1):
            suffix[j] = row[j - 1] * suffix[j + 1]
        table.append(suffix)
    return table


def pper_prefixes(n: int, fp: FactorialProduct, one: Any = Fraction(1)) -> list[Any]:
    """Parapermanents of all prefix tables of orders 0..n.

    Uses the last-row recurrence pper(n) = sum_s fp(n, s) * pper(s-1) with
    pper(0) = one; O(n^2) multiplications total.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    prefixes: list[Any] = [one]
    for i in range(1, n + 1):
        acc = fp(i, 1) * prefixes[0]
        for s in range(2, i + 1):
            acc = acc + fp(i, s) * prefixes[s - 1]
        prefixes.append(acc)
    return prefixes


def pper_composition_sum(n: int, fp: FactorialProduct, one: Any = Fraction(1)) -> Any:
    """Parapermanent straight from the definition: one term per composition."""
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    if n == 0:
        return one
    total = None
    for parts in parts_in_range(n, 0, count(n)):
        previous = 0
        term = one
        for part in parts:
            current = previous + part
            term = term * fp(current, previous + 1)
            previous = current
        total = term if total is None else total + term
    return total


def pper_by_last_row(matrix: TriangularMatrix, one: Any = Fraction(1)) -> Any:
    """Parapermanent of the table by the last-row recurrence."""
    table = _factorial_product_table(matrix)
    return pper_prefixes(matrix.order, lambda i, j: table[i][j], one)[matrix.order]


def pper_by_compositions(matrix: TriangularMatrix, one: Any = Fraction(1)) -> Any:
    """Parapermanent of the table by direct composition enumeration."""
    table = _factorial_product_table(matrix)
    return pper_composition_sum(matrix.order, lambda i, j: table[i][j], one)


def matrix_from_entries(rows: Sequence[Sequence[Any]]) -> TriangularMatrix:
    """Build a TriangularMatrix, validating the triangular shape."""
    return TriangularMatrix(tuple(tuple(row) for row in rows))
