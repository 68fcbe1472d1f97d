"""Shared brute-force oracles for the test suite.

Everything here enumerates: full symmetric groups, all set partitions,
all bijections.  Deliberately independent of the package's Schreier-tree
constructions so the two routes can disagree.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from hforge.perm import Perm, PermGroup


@lru_cache(maxsize=None)
def all_images(degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(1, degree + 1)))


def brute_centralizer(group: PermGroup) -> list[Perm]:
    """Centralizer by filtering the whole symmetric group."""
    n = group.degree
    gens = [g.images for g in group.generators]
    out = []
    for cand in all_images(n):
        ok = True
        for g in gens:
            if any(cand[g[i] - 1] != g[cand[i] - 1] for i in range(n)):
                ok = False
                break
        if ok:
            out.append(Perm(cand))
    return out


def all_partitions(points: list[int]):
    """Every set partition of `points` (restricted growth enumeration)."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def is_invariant_partition(group: PermGroup, part: list[list[int]]) -> bool:
    blocks = {frozenset(b) for b in part}
    for g in group.generators:
        for b in blocks:
            if frozenset(g(p) for p in b) not in blocks:
                return False
    return True


def random_transitive_group(rng: random.Random, max_degree: int = 8) -> PermGroup:
    """A seeded-random transitive group of degree <= max_degree."""
    while True:
        degree = rng.randint(2, max_degree)
        k = rng.randint(2, 3)
        gens = []
        for _ in range(k):
            images = list(range(1, degree + 1))
            rng.shuffle(images)
            gens.append(Perm(images))
        g = PermGroup(degree, gens)
        if g.is_transitive():
            return g


def random_perm(rng: random.Random, degree: int) -> Perm:
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Perm(images)
