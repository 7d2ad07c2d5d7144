"""Hilbert series, dimension, multiplicity and Artinian lengths.

All Hilbert data is computed on the initial ideal (which has the same Hilbert
function) via the classical pivot recursion on monomial ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .groebner import Ideal, MonomialIdeal, msaturate


class InvariantError(RuntimeError):
    """Two independently computed quantities that must agree do not."""


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pairwise_coprime(gens) -> bool:
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if any(a and b for a, b in zip(gens[i], gens[j])):
                return False
    return True


def _pivot_variable(gens, n: int, strategy: str) -> int:
    # only variables shared by two generators make both branches shrink; one
    # always exists here because pairwise-coprime sets hit the base case
    counts = [0] * n
    for g in gens:
        for v, e in enumerate(g):
            if e:
                counts[v] += 1
    if strategy == "frequent":
        best = max(counts)
        v = counts.index(best)
    elif strategy == "first":
        v = next(i for i in range(n) if counts[i] >= 2)
    else:
        raise ValueError(f"unknown pivot strategy {strategy!r}")
    assert counts[v] >= 2, "pivot must be shared by two generators"
    return v


def monomial_numerator(M: MonomialIdeal, pivot: str = "frequent") -> list[int]:
    """Numerator of the Hilbert series of S/M over the full (1-t)^n.

    Uses the pivot recursion HS(S/M) = t * HS(S/(M:x)) + HS(S/(M+x)) on a
    pivot variable, with pairwise-coprime generators as the base case.
    """
    memo: dict = {}

    def rec(gens: tuple) -> list[int]:
        if not gens:
            return [1]
        if any(sum(g) == 0 for g in gens):
            return [0]
        if gens in memo:
            return memo[gens]
        if _pairwise_coprime(gens):
            out = [1]
            for g in gens:
                factor = [0] * (sum(g) + 1)
                factor[0] = 1
                factor[sum(g)] = -1
                out = _convolve(out, factor)
        else:
            v = _pivot_variable(gens, M.n, pivot)
            col = MonomialIdeal(M.n, gens).colon_variable(v).gens
            add = MonomialIdeal(M.n, gens).plus_variable(v).gens
            colon_num = rec(col)
            plus_num = rec(add)
            out = [0] * max(len(colon_num) + 1, len(plus_num))
            for i, c in enumerate(colon_num):
                out[i + 1] += c
            for i, c in enumerate(plus_num):
                out[i] += c
        memo[gens] = out
        return out

    num = rec(M.gens)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _as_monomial_ideal(obj) -> MonomialIdeal:
    if isinstance(obj, MonomialIdeal):
        return obj
    if isinstance(obj, Ideal):
        return obj.initial_ideal()
    raise TypeError(f"expected Ideal or MonomialIdeal, got {type(obj).__name__}")


def numerator_full(obj, pivot: str = "frequent") -> list[int]:
    """Hilbert series numerator of the quotient, over the full (1-t)^n."""
    if isinstance(obj, Ideal):
        key = ("hs_numerator", pivot)
        if key in obj._cache:
            return list(obj._cache[key])
        num = monomial_numerator(obj.initial_ideal(), pivot)
        obj._cache[key] = tuple(num)
        return num
    return monomial_numerator(_as_monomial_ideal(obj), pivot)


@dataclass(frozen=True)
class HilbertSeries:
    """Simplified presentation Q(t) / (1-t)^dim with Q(1) != 0.

    The quotient by the unit ideal (the zero module) is represented with a
    zero numerator and dim -1.
    """

    numerator: tuple[int, ...]
    dim: int
    nvars: int

    def hf(self, j: int) -> int:
        """Hilbert function value in degree j (0 for j < 0)."""
        if j < 0:
            return 0
        if self.dim <= 0:
            return self.numerator[j] if j < len(self.numerator) else 0
        total = 0
        for k, c in enumerate(self.numerator):
            if k > j:
                break
            total += c * comb(j - k + self.dim - 1, self.dim - 1)
        return total

    def multiplicity(self) -> int:
        return sum(self.numerator)

    def length(self) -> int:
        """Total length; only defined for Artinian quotients (dim 0)."""
        if self.dim > 0:
            raise ValueError("length is only defined for Artinian quotients")
        return sum(self.numerator)


def hilbert_series(obj, pivot: str = "frequent") -> HilbertSeries:
    """Simplified Hilbert series of S/I (or of S/M for a monomial ideal)."""
    M = _as_monomial_ideal(obj)
    num = numerator_full(obj if isinstance(obj, Ideal) else M, pivot)
    n = M.n
    if not any(num):
        return HilbertSeries((0,), -1, n)
    d = n
    while d > 0:
        total = sum(num)
        if total != 0:
            break
        acc = 0
        quo = []
        for c in num:
            acc += c
            quo.append(acc)
        num = quo[:-1]
        d -= 1
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertSeries(tuple(num), d, n)


def hilbert_function(obj, j: int) -> int:
    """dim_k of the degree-j piece of the quotient; 0 for j < 0."""
    return hilbert_series(obj).hf(j)


def dim_and_height(I) -> tuple[int, int]:
    """(Krull dimension of the quotient, height of the ideal).

    The unit ideal (empty scheme) reports dimension -1 and height n + 1,
    keeping height + dimension = n.
    """
    series = hilbert_series(I)
    return series.dim, series.nvars - series.dim


def multiplicity(I) -> int:
    """Multiplicity of the quotient: Q(1) of the simplified series."""
    series = hilbert_series(I)
    if series.dim < 0:
        raise ValueError("the unit ideal has no multiplicity")
    return series.multiplicity()


def artinian_length(I) -> int:
    """Total length of an Artinian quotient; rejects positive dimension."""
    series = hilbert_series(I)
    if series.dim > 0:
        raise ValueError("quotient is not Artinian")
    if series.dim < 0:
        return 0
    return series.length()


def section_hf(I: Ideal, forms, j: int) -> int:
    """Hilbert function of the quotient by I plus the given linear forms."""
    forms = list(forms)
    if not forms:
        return hilbert_function(I, j)
    return hilbert_function(I.plus(*forms), j)


def length_identity_sides(I: Ideal, forms) -> tuple[int, int]:
    """Both sides of the length identity for an Artinian reduction.

    Left: length of ((I + first forms)^sat + last form) / (I + all forms),
    with the saturation taken with respect to the maximal ideal.
    Right: length of the full reduction minus the multiplicity of S/I.
    """
    forms = list(forms)
    if not forms:
        return 0, 0
    full = I.plus(*forms)
    len_full = artinian_length(full)
    sat = msaturate(I.plus(*forms[:-1]) if len(forms) > 1 else I)
    len_sat_cut = artinian_length(sat.plus(forms[-1]))
    lhs = len_full - len_sat_cut
    rhs = len_full - multiplicity(I)
    return lhs, rhs


def length_defect(I: Ideal, forms) -> int:
    """Length of the Artinian reduction minus the multiplicity.

    Also recomputes the same number through the saturation of the next-to-last
    reduction and insists the two values agree.
    """
    forms = list(forms)
    full = I.plus(*forms) if forms else I
    series = hilbert_series(full)
    if series.dim != 0:
        raise ValueError("the given forms are not a linear system of parameters")
    defect = series.length() - multiplicity(I)
    if forms:
        lhs, rhs = length_identity_sides(I, forms)
        if lhs != rhs or rhs != defect:
            raise InvariantError(
                f"length identity failed: saturation side {lhs}, defect side {rhs}"
            )
    return defect
