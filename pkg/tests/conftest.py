"""Shared fixtures and independent brute-force oracles.

The oracles here use nothing from the package's computational paths: plain
modular arithmetic on residue tuples and direct cmath sums.  Tests compare
library certifications against these.
"""

from __future__ import annotations

import cmath

import pytest

import etfkit as ek


# ---------------------------------------------------------------------------
# brute-force oracles (independent of the library internals)


def oracle_difference_counts(orders, elements) -> dict:
    counts: dict = {}
    for a in elements:
        for b in elements:
            if a != b:
                d = tuple((x - y) % n for x, y, n in zip(a, b, orders))
                counts[d] = counts.get(d, 0) + 1
    return counts


def oracle_is_difference_set(orders, elements):
    """(verdict, lambda) by direct difference-table counting."""
    if not elements:
        return False, None
    order = 1
    for n in orders:
        order *= n
    if order == 1:
        return True, 0
    counts = oracle_difference_counts(orders, elements)
    zero = (0,) * len(orders)
    from itertools import product

    vals = {counts.get(g, 0) for g in product(*(range(n) for n in orders)) if g != zero}
    if len(vals) != 1:
        return False, None
    return True, vals.pop()


def oracle_is_rds(orders, elements, subgroup_elements):
    """(verdict, lambda) for the relative difference set property."""
    if not elements:
        return False, None
    counts = oracle_difference_counts(orders, elements)
    zero = (0,) * len(orders)
    h_set = set(subgroup_elements)
    from itertools import product

    lam = None
    for g in product(*(range(n) for n in orders)):
        if g == zero:
            continue
        c = counts.get(g, 0)
        if g in h_set:
            if c != 0:
                return False, None
        else:
            if lam is None:
                lam = c
            elif c != lam:
                return False, None
    return True, (lam or 0)


def oracle_dft_value(orders, elements, chi) -> complex:
    """Direct sum of conj(chi(g)) over the set, via cmath."""
    from math import lcm

    L = lcm(*orders)
    total = 0j
    for g in elements:
        e = sum(m * r * (L // n) for m, r, n in zip(chi, g, orders)) % L
        total += cmath.exp(-2j * cmath.pi * e / L)
    return total


# ---------------------------------------------------------------------------
# the running 8x15 example


Z15_D_ORDERED = [6, 11, 7, 12, 13, 3, 9, 14]


@pytest.fixture(scope="session")
def z15_D() -> ek.GroupSubset:
    return ek.cyclic_subset(15, Z15_D_ORDERED, display_order=Z15_D_ORDERED)


@pytest.fixture(scope="session")
def z15_cert(z15_D) -> ek.DesignCertificate:
    return ek.classify(z15_D)


@pytest.fixture(scope="session")
def z15_H(z15_cert) -> ek.Subgroup:
    assert z15_cert.fine_subgroup is not None
    return z15_cert.fine_subgroup


@pytest.fixture(scope="session")
def mcf22() -> ek.McFarlandSet:
    return ek.mcfarland(2, 2, [2, 2])


@pytest.fixture(scope="session")
def mcf22_cert(mcf22) -> ek.DesignCertificate:
    return ek.classify(mcf22.D)
