"""Shared test fixtures: random polynomials and structured ideals that
exercise embedded components, products and complete intersections."""

from regbound.groebner import Ideal
from regbound.ring import PolyRing, Polynomial, parse_polynomial

R2 = PolyRing(2)
R3 = PolyRing(3)


def random_poly(ring, rng, max_deg=3, terms=4):
    out = ring.zero()
    for _ in range(rng.randint(0, terms)):
        d = rng.randint(0, max_deg)
        mono = rng.choice(ring.monomials_of_degree(d))
        out = out + Polynomial(ring, {mono: rng.randrange(ring.p)})
    return out


def ideal(ring, *gens):
    return Ideal(ring, [parse_polynomial(ring, g) for g in gens])


def structured_ideals():
    """Small ideals richer than dense generic draws: embedded components,
    reducible hypersurfaces, monomial non-Cohen-Macaulay examples."""
    return [
        ideal(R2, "x1^2", "x1*x2"),
        ideal(R2, "x1*x2"),
        ideal(R2, "x1^2 - x2^2", "x1*x2"),
        ideal(R3, "x1^2", "x1*x2"),
        ideal(R3, "x1*x2", "x1*x3"),
        ideal(R3, "x1*x2", "x1*x3", "x2*x3"),
        ideal(R3, "x1^2", "x1*x2", "x1*x3", "x2^3"),
        ideal(R3, "x1^2 + x2*x3", "x2^2"),
        ideal(R3, "x1^2*x2"),
    ]
