"""Macaulay binomial expansions and hyperplane-restriction estimates."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


def comb0(x: int, y: int) -> int:
    """Binomial coefficient with C(x, y) = 0 whenever x < y (or x < 0)."""
    if x < y or x < 0:
        return 0
    return comb(x, y)


@dataclass(frozen=True)
class MacaulayExpansion:
    """Greedy binomial representation of an integer in a fixed degree.

    coefficients[i] sits in position degree - i, i.e. the value is
    sum of C(coefficients[i], degree - i); coefficients are strictly
    decreasing and the expansion stops once the remainder hits zero.
    """

    degree: int
    coefficients: tuple[int, ...]

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(self.degree - i for i in range(len(self.coefficients)))

    def reconstruct(self) -> int:
        return sum(comb0(a, pos) for a, pos in zip(self.coefficients, self.positions))

    def __str__(self):
        if not self.coefficients:
            return "0"
        return " + ".join(
            f"C({a},{pos})" for a, pos in zip(self.coefficients, self.positions)
        )


def expand(a: int, D: int) -> MacaulayExpansion:
    """The greedy degree-D Macaulay expansion of a >= 0."""
    if a < 0:
        raise ValueError("expansion is defined for non-negative integers")
    if D < 1:
        raise ValueError("expansion degree must be positive")
    coeffs = []
    remainder = a
    pos = D
    while remainder > 0 and pos >= 1:
        m = pos
        while comb(m + 1, pos) <= remainder:
            m += 1
        coeffs.append(m)
        remainder -= comb(m, pos)
        pos -= 1
    assert remainder == 0, "greedy expansion always terminates exactly"
    return MacaulayExpansion(D, tuple(coeffs))


def green_bound(expansion: MacaulayExpansion, k: int) -> int:
    """Upper bound after k generic hyperplane restrictions: subtract k from
    every expansion coefficient and reconstruct, with C(x, y) = 0 for x < y."""
    if k < 0:
        raise ValueError("restriction count must be non-negative")
    return sum(
        comb0(a - k, pos) for a, pos in zip(expansion.coefficients, expansion.positions)
    )


def cprime_from_c(c: int, D: int) -> int:
    """Bound the Hilbert function after one more section: expand c in degree D,
    subtract one from each coefficient and reconstruct."""
    if c == 0:
        return 0
    return green_bound(expand(c, D), 1)
