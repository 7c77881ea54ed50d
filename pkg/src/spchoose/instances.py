"""Seeded random instances: SP graphs of a target girth and random list assignments."""

from __future__ import annotations

import random
from math import ceil

from .sp_core import Acyclic, random_sp_term, realize, series_stretch, girth


def random_sp_of_girth(k: int, seed: int, min_leaves: int = 3, max_leaves: int = 9):
    """A random cyclic SP term stretched until its girth is at least ``k``; returns (term, graph)."""
    rng = random.Random(seed)
    while True:
        term = random_sp_term(rng.randint(min_leaves, max_leaves), rng.randrange(2**32))
        gv = girth(realize(term))
        if isinstance(gv, Acyclic):
            continue
        stretched = series_stretch(term, ceil(k / gv.g))
        return stretched, realize(stretched)


def random_lists(vertices, size: int, universe: int, seed: int) -> dict:
    rng = random.Random(seed)
    pool = range(universe)
    return {v: frozenset(rng.sample(pool, size)) for v in sorted(vertices)}
