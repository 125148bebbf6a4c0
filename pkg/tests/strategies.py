"""Shared hypothesis strategies and seeded generators."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from daschur.basis import CoefficientPoly
from daschur.exact import GaussianRational

small_fraction = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian = st.builds(GaussianRational, small_fraction, small_fraction)
nonzero_gaussian = gaussian.filter(bool)


def coefficient_polys(max_degree: int = 6):
    return st.lists(gaussian, max_size=max_degree + 1).map(CoefficientPoly)


def random_gaussian(rng: random.Random, bound: int = 5, den: int = 4) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den)),
        Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den)),
    )


def random_poly(rng: random.Random, max_degree: int) -> CoefficientPoly:
    return CoefficientPoly(random_gaussian(rng) for _ in range(rng.randint(1, max_degree + 1)))
