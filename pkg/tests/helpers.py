"""Shared oracles and generators for the test suite.

Everything in here is intentionally independent of the package internals:
closures are computed by breadth-first search, ranks by fraction-free
elimination, subgroups by explicit element enumeration.  These are the
reference values the library is checked against.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd, prod

from coverkit.groups import FinAbGroup, InertiaDatum


def invariant_factor_chains(max_order, max_rank=6):
    """All chains (d_1, ..., d_s), d_j | d_{j+1}, with product <= max_order."""
    out = [()]

    def rec(prefix, p):
        step = prefix[-1] if prefix else 1
        d = step if prefix else 2
        while p * d <= max_order:
            nxt = prefix + (d,)
            out.append(nxt)
            if len(nxt) < max_rank:
                rec(nxt, p * d)
            d += step if prefix else 1

    rec((), 1)
    return out


def all_abelian_groups(max_order, include_trivial=False):
    groups = [FinAbGroup(c) for c in invariant_factor_chains(max_order)]
    if not include_trivial:
        groups = [g for g in groups if not g.is_trivial]
    return groups


def closure_order(moduli, gens):
    """Order of the generated subgroup, by breadth-first closure."""
    zero = tuple([0] * len(moduli))
    seen = {zero}
    frontier = [zero]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % d for a, b, d in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def bareiss_rank(mat):
    """Rank over Q by fraction-free (Bareiss) elimination on integer input."""
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(n):
        pivot = next((i for i in range(rank, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(m):
            if i == rank:
                continue
            for j in range(n):
                if j == c:
                    continue
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = a[rank][c]
        rank += 1
        if rank == m:
            break
    return rank


def brute_force_inertia_pairs(group):
    """All (cyclic subgroup, dual generator) pairs, enumerated from scratch.

    Subgroups are element sets; a character of H is a map H -> Q/Z, stored as
    a dict.  Returns a set of (frozenset of coords, frozen dict items).
    """
    elements = list(group.elements())
    pairs = set()
    for g in elements:
        if g.is_zero:
            continue
        m = g.order()
        sub = frozenset((g * k).coords for k in range(m))
        # characters of <g> are determined by the value on g
        for a in range(m):
            if gcd(a, m) != 1:
                continue  # not a generator of the dual
            chi = {}
            ok = True
            for k in range(m):
                coords = (g * k).coords
                val = Fraction(a * k, m) % 1
                if coords in chi and chi[coords] != val:
                    ok = False
                    break
                chi[coords] = val
            if ok:
                pairs.add((sub, tuple(sorted(chi.items()))))
    return pairs


def random_surjective_inertia(group, rng, max_extra=2):
    """Inertia data whose generators are guaranteed to generate the group."""
    data = [InertiaDatum(e) for e in group.basis()]
    nonzero = [g for g in group.elements() if not g.is_zero]
    for _ in range(rng.randrange(max_extra + 1)):
        g = rng.choice(nonzero)
        if all(g != d.generator for d in data):
            data.append(InertiaDatum(g))
    rng.shuffle(data)
    return data


def random_surjective_subset(group, rng, max_size=6, max_tries=60):
    """A uniformly-sampled subset of nonzero elements that generates the group.

    Falls back to the basis-seeded sampler when rejection sampling runs dry.
    """
    from coverkit.groups import is_totally_ramified

    nonzero = [g for g in group.elements() if not g.is_zero]
    for _ in range(max_tries):
        k = rng.randrange(group.rank, min(max_size, len(nonzero)) + 1)
        if k == 0:
            continue
        sample = rng.sample(nonzero, k)
        data = [InertiaDatum(g) for g in sample]
        if is_totally_ramified(group, data):
            return data
    return random_surjective_inertia(group, rng)


def random_cover(rng, bases, groups, require_audit=False, with_markers=False):
    """A random valid CoverData; retries until construction succeeds."""
    from coverkit.base import Pic0Marker
    from coverkit.covers import CoverData

    while True:
        group = rng.choice(groups)
        base = rng.choice(bases)
        inertia = random_surjective_inertia(group, rng)
        top = group.invariant_factors[-1]
        xi = [
            base.cls(tuple(top * rng.randrange(1, 3) for _ in range(base.ns_rank)))
            for _ in inertia
        ]
        markers = None
        if with_markers and base.q >= 1:
            markers = [
                Pic0Marker(tuple(top * rng.randrange(-1, 2) for _ in range(2)))
                for _ in inertia
            ]
        try:
            return CoverData.create(
                group,
                inertia,
                base,
                xi,
                branch_markers=markers,
                intersection_pattern=None if require_audit else (),
            )
        except ValueError:
            continue


def seeded_rng(name):
    return random.Random(f"coverkit:{name}")
