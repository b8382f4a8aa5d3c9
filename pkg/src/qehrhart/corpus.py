"""Built-in test corpus: the worked examples, small posets and seeded random polytopes."""

from __future__ import annotations

import random
from typing import Iterator

from .errors import ValidationError
from .polytope import LatticePolytope, LinearForm, is_empty, make_polytope, validate_pair
from .poset import Poset, antichain, chain, chain_product, derive_poset, make_poset, rooted_trees

Pair = tuple[LatticePolytope, LinearForm]

EXAMPLES = {
    "exa": (1, [(0,), (1,)], (1,)),
    "exb": (2, [(0, 0), (1, 0), (1, 1)], (1, 1)),
    "exc": (2, [(0, 0), (1, 0), (1, 1), (2, 1)], (1, 1)),
    "exd": (2, [(0, 0), (1, 0), (1, 1), (0, 3)], (1, 1)),
}

# a few extra pairs, some with interior points so reciprocity is not vacuous
EXTRA = {
    "point": (1, [(0,)], (1,)),
    "segment3": (1, [(0,), (3,)], (2,)),
    "square2": (2, [(0, 0), (2, 0), (0, 2), (2, 2)], (1, 2)),
    "triangle": (2, [(0, 0), (3, 0), (0, 3)], (1, 2)),
    "simplex3": (3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 2, 3)),
    "slanted": (3, [(0, 0, 0), (1, 1, 0), (2, 1, 1)], (1, 0, 1)),
}


def example(name: str) -> Pair:
    dim, verts, lam = EXAMPLES[name]
    return make_polytope(dim, verts), LinearForm(lam)


def polytope_corpus() -> dict[str, Pair]:
    out = {}
    for table in (EXAMPLES, EXTRA):
        for name, (dim, verts, lam) in table.items():
            out[name] = (make_polytope(dim, verts), LinearForm(lam))
    return out


def empty_polytopes() -> dict[str, Pair]:
    return {k: v for k, v in polytope_corpus().items() if is_empty(v[0])}


def claw() -> Poset:
    return make_poset(4, [(0, 1), (0, 2), (0, 3)])


def poset_corpus(max_chain_product: tuple[int, int] = (3, 3)) -> dict[str, Poset]:
    """Claw and co-claw, chains and antichains of size <= 4, products of chains."""
    out = {"claw": claw(), "coclaw": derive_poset(claw(), "opposite")}
    for n in range(1, 5):
        out[f"chain{n}"] = chain(n)
        if n > 1:
            out[f"antichain{n}"] = antichain(n)
    a, b = max_chain_product
    for m in range(2, a + 1):
        for n in range(1, min(m, b) + 1):
            out[f"A{m}xA{n}"] = chain_product(m, n)
    return out


def tree_corpus(max_size: int = 5) -> dict[str, Poset]:
    return {f"tree{i}": T for i, T in enumerate(rooted_trees(max_size))}


def random_polytopes(seed: int, count: int, max_dim: int = 3, coord_max: int = 4,
                     lam_max: int = 2) -> Iterator[Pair]:
    """Seeded random lattice polytopes with nonnegative forms; invalid draws are redrawn."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        d = rng.randint(1, max_dim)
        pts = [tuple(rng.randint(0, coord_max) for _ in range(d)) for _ in range(rng.randint(2, d + 3))]
        lam = LinearForm(rng.randint(0, lam_max) for _ in range(d))
        Q = make_polytope(d, pts)
        if Q.affine_dim == 0 or validate_pair(Q, lam):
            continue
        made += 1
        yield Q, lam
