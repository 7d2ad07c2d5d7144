"""Lex-segment-plus-powers ideals, their closed-form regularity, and the
conditional regularity bound coming from the Eisenbud-Green-Harris
conjecture."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb

from .groebner import Ideal, MonomialIdeal
from .ring import DEFAULT_PRIME, PolyRing, Polynomial, _monomials_of_degree, mono_divides


@dataclass(frozen=True)
class LppIdeal:
    """Pure variable powers x_i^{d_i} plus a maximal lex segment in degree D.

    ``segment`` is the lex-initial run of degree-D monomials generating the
    segment part; it is empty when the ideal equals the pure power ideal.
    ``u`` is the lex-smallest degree-D monomial of the segment, ``a`` the
    1-based index of its first nonzero exponent and ``t_a`` that exponent.
    """

    degrees: tuple[int, ...]
    D: int
    segment: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def u(self):
        return self.segment[-1] if self.segment else None

    @property
    def a(self):
        if not self.segment:
            return None
        return next(i + 1 for i, e in enumerate(self.u) if e)

    @property
    def t_a(self):
        if not self.segment:
            return None
        return self.u[self.a - 1]

    @property
    def fresh(self) -> tuple:
        """Segment members outside the power ideal, in decreasing lex order."""
        powers = self.power_monomials()
        return tuple(
            m for m in self.segment
            if not any(mono_divides(g, m) for g in powers)
        )

    def closed_form_data(self):
        """(a, t_a) of the lex-smallest segment monomial outside the power
        ideal. A power-ideal member never divides a monomial outside the power
        ideal, so only these fresh generators decide which standard monomials
        the segment kills; for mixed power degrees the trailing power-ideal
        members of the maximal segment would give a wrong value."""
        fresh = self.fresh
        if not fresh:
            return None, None
        w = fresh[-1]
        a = next(i + 1 for i, e in enumerate(w) if e)
        return a, w[a - 1]

    def power_monomials(self) -> list[tuple[int, ...]]:
        out = []
        for i, d in enumerate(self.degrees):
            e = [0] * self.n
            e[i] = d
            out.append(tuple(e))
        return out

    def monomial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.n, self.power_monomials() + list(self.segment))

    def as_ideal(self, ring: PolyRing | None = None) -> Ideal:
        if ring is None:
            ring = PolyRing(self.n, DEFAULT_PRIME)
        gens = [
            Polynomial._raw(ring, {m: 1})
            for m in self.monomial_ideal().gens
        ]
        return Ideal(ring, gens)

    def quotient_hf(self, j: int) -> int:
        """Hilbert function of the quotient by the ideal in degree j."""
        if j < 0:
            return 0
        M = self.monomial_ideal()
        return sum(
            1 for m in _monomials_of_degree(self.n, j) if not M.contains_monomial(m)
        )

    def ideal_hf(self, j: int) -> int:
        """Hilbert function of the ideal itself in degree j."""
        if j < 0:
            return 0
        return comb(j + self.n - 1, self.n - 1) - self.quotient_hf(j)


def _power_quotient_hf_at(degrees, D: int) -> int:
    n = len(degrees)
    count = 0
    for m in _monomials_of_degree(n, D):
        if all(e < d for e, d in zip(m, degrees)):
            count += 1
    return count


def lpp_construct(c: int, D: int, degrees) -> LppIdeal:
    """The maximal lex-segment-plus-powers ideal with quotient Hilbert
    function c in degree D.

    Walks the degree-D monomials in decreasing lex order, always including
    monomials already inside the power ideal, and including fresh ones while
    the quotient value still exceeds c.
    """
    degrees = tuple(degrees)
    n = len(degrees)
    if n < 1:
        raise ValueError("need at least one power degree")
    if any(d < 1 for d in degrees):
        raise ValueError("power degrees must be positive")
    if list(degrees) != sorted(degrees):
        raise ValueError("power degrees must be non-decreasing")
    if D < 1:
        raise ValueError("segment degree must be positive")
    cap = _power_quotient_hf_at(degrees, D)
    if not 0 <= c <= cap:
        raise ValueError(f"target value {c} outside [0, {cap}]")
    powers = []
    for i, d in enumerate(degrees):
        e = [0] * n
        e[i] = d
        powers.append(tuple(e))

    segment: list = []
    remaining = cap
    fresh = 0
    for m in _monomials_of_degree(n, D):
        in_powers = any(mono_divides(g, m) for g in powers)
        if in_powers:
            segment.append(m)
        elif remaining > c:
            segment.append(m)
            remaining -= 1
            fresh += 1
        else:
            break
    if fresh == 0:
        segment = []
    return LppIdeal(degrees=degrees, D=D, segment=tuple(segment))


def lpp_regularity(L: LppIdeal) -> int:
    """Regularity of the quotient by a lex-plus-powers ideal.

    Closed form t_a - 1 + sum of (d_i - 1) over i > a, valid when the segment
    is nonempty, D >= 2 and D <= sum of (d_i - 1); outside that range the
    Koszul oracle is used instead (with a warning).
    """
    s = sum(d - 1 for d in L.degrees)
    if L.segment and L.D >= 2 and L.D <= s:
        a, t_a = L.closed_form_data()
        return t_a - 1 + sum(d - 1 for d in L.degrees[a:])
    warnings.warn(
        "closed-form regularity hypotheses not met; falling back to the oracle",
        stacklevel=2,
    )
    from .oracle import regularity_exact

    return regularity_exact(L.as_ideal())


def egh_corollary_bound(n: int, D: int, a: int, t_a: int) -> int:
    """Regularity bound (n - a)(D - 1) + t_a - 1, valid for zero-dimensional
    ideals conditionally on the Eisenbud-Green-Harris conjecture."""
    if not 1 <= a <= n:
        raise ValueError("leading index out of range")
    if not 1 <= t_a <= D:
        raise ValueError("leading exponent out of range")
    return (n - a) * (D - 1) + t_a - 1


def egh_known_by_degrees(degrees) -> bool:
    """True when the power degrees grow fast enough that the EGH conjecture is
    a known theorem for them: d_{i+1} >= sum_{j<=i} (d_j - 1) for every i."""
    degrees = list(degrees)
    if degrees != sorted(degrees):
        raise ValueError("degrees must be sorted")
    partial = 0
    for i in range(len(degrees) - 1):
        partial += degrees[i] - 1
        if degrees[i + 1] < partial:
            return False
    return True


def weak_egh_experiment(I: Ideal, D: int | None = None) -> dict:
    """Compare the exact regularity of an Artinian quotient with the
    regularity of the matching all-powers-D LPP ideal.

    The comparison is reported, never asserted: a violation would be a
    research finding about the conjectural bound, not a code bug.
    """
    from .hilbert import dim_and_height, hilbert_function
    from .oracle import regularity_exact

    d, _ = dim_and_height(I)
    if d != 0:
        raise ValueError("experiment requires a zero-dimensional quotient")
    n = I.ring.n
    if D is None:
        D = I.max_generator_degree()
    elif I.max_generator_degree() > D:
        raise ValueError("ideal has generators above the requested degree")
    c = hilbert_function(I, D)
    L = lpp_construct(c, D, [D] * n)
    reg_exact = regularity_exact(I)
    if L.segment:
        reg_lpp = lpp_regularity(L)
    else:
        reg_lpp = n * (D - 1)  # pure power ideal
    return {
        "n": n,
        "D": D,
        "c": c,
        "reg_quotient": reg_exact,
        "reg_lpp": reg_lpp,
        "holds": reg_exact <= reg_lpp,
    }
