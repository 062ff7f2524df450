import random

from bft.gf import Subspace


def random_invertible(gf, dim, rng: random.Random):
    """A uniformly sampled invertible dim x dim matrix over gf."""
    while True:
        rows = tuple(
            tuple(rng.randrange(gf.q) for _ in range(dim)) for _ in range(dim)
        )
        if Subspace.span(gf, dim, rows).rank == dim:
            return rows
