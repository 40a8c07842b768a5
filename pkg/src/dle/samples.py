"""Seeded random inputs shared by the scenario runner and the test-suite."""

from __future__ import annotations

import random

from .complexes import ChainComplex, FPModule, FreeModule
from .linalg import Matrix, kernel_basis
from .rings import Integers


def random_Z_complex(rng: random.Random, max_terms=4, max_rank=3, max_entry=9, min_terms=1,
                     min_rank=0) -> ChainComplex:
    """A chain complex of free abelian groups with at most ``max_terms`` terms.

    Each differential has columns drawn from the kernel of the previous one;
    columns whose entries exceed ``max_entry`` are replaced by zero.
    """
    Z = Integers()
    nterms = rng.randint(min_terms, max_terms)
    ranks = [rng.randint(min_rank, max_rank) for _ in range(nterms)]
    diffs = []
    prev = None
    for n in range(1, nterms):
        src, tgt = ranks[n], ranks[n - 1]
        if prev is None:
            cols = [[rng.randint(-max_entry, max_entry) for _ in range(tgt)] for _ in range(src)]
        else:
            kb = kernel_basis(prev) if prev.cols else []
            cols = []
            for _ in range(src):
                v = [0] * tgt
                for b in kb:
                    c = rng.randint(-2, 2)
                    v = [x + c * y for x, y in zip(v, b)]
                if any(abs(x) > max_entry for x in v):
                    v = [0] * tgt
                cols.append(v)
        M = Matrix(Z, tgt, src, [[cols[j][i] for j in range(src)] for i in range(tgt)])
        diffs.append(M)
        prev = M
    return ChainComplex(Z, [FreeModule(Z, r) for r in ranks], diffs)


def random_finite_abelian(rng: random.Random, max_summands=3, max_order=12) -> FPModule:
    """A nonzero finite abelian group, possibly with a redundant presentation."""
    orders = [rng.randint(2, max_order) for _ in range(rng.randint(1, max_summands))]
    return FPModule.cyclic_Z(*orders)


def random_scrambled_finite_abelian(rng: random.Random, max_summands=3, max_order=12) -> FPModule:
    """Like :func:`random_finite_abelian` but with relations mixed by a unimodular matrix."""
    M = random_finite_abelian(rng, max_summands, max_order)
    g = M.generators.rank
    Z = Integers()
    U = Matrix.identity(Z, g)
    for i in range(g):
        for j in range(i + 1, g):
            U.data[i][j] = rng.randint(-2, 2)
    return FPModule(Z, M.generators, M.relations @ U)


def random_two_term_Z(rng: random.Random, max_rank=2, max_entry=4) -> ChainComplex:
    """``Z^a -> Z^b`` with small entries (possibly not injective)."""
    Z = Integers()
    a, b = rng.randint(0, max_rank), rng.randint(1, max_rank)
    M = Matrix(Z, b, a, [[rng.randint(-max_entry, max_entry) for _ in range(a)] for _ in range(b)])
    return ChainComplex(Z, [FreeModule(Z, b), FreeModule(Z, a)], [M])
