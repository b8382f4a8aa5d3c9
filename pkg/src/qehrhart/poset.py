"""Finite posets, their order polytopes, P-partition numerators and the
poset-specific q-Ehrhart formulas."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .algebra import QRat, SeriesTQ, XPoly, q, qfactorial, qint
from .polytope import Facet, LatticePolytope, LinearForm, from_hrep

__all__ = [
    "Poset",
    "make_poset",
    "chain",
    "antichain",
    "chain_product",
    "order_polytope",
    "linear_extensions",
    "natural_labelling",
    "colouring_sum",
    "descent_numerator",
    "derive_poset",
    "q_volume",
    "macmahon_polynomial",
    "longest_chain",
    "rooted_trees",
    "poset_from_json",
    "poset_to_json",
]


@dataclass(frozen=True)
class Poset:
    """Elements ``0..size-1``; ``leq[i][j]`` is True when i <= j."""

    size: int
    leq: tuple[tuple[bool, ...], ...]

    def less(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.size):
            for j in range(self.size):
                if self.less(i, j) and not any(self.less(i, k) and self.less(k, j) for k in range(self.size)):
                    out.append((i, j))
        return out

    def minimal(self) -> list[int]:
        return [j for j in range(self.size) if not any(self.less(i, j) for i in range(self.size))]

    def maximal(self) -> list[int]:
        return [i for i in range(self.size) if not any(self.less(i, j) for j in range(self.size))]


def make_poset(n: int, covers: Iterable[Sequence[int]]) -> Poset:
    """Reflexive-transitive closure of the relations ``i < j``; cycles are rejected."""
    rel = [[i == j for j in range(n)] for i in range(n)]
    for pair in covers:
        i, j = pair
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"cover ({i}, {j}) out of range for size {n}")
        if i == j:
            raise ValueError(f"cycle detected: ({i}, {i})")
        rel[i][j] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise ValueError(f"cycle detected between {i} and {j}")
    return Poset(n, tuple(tuple(r) for r in rel))


def chain(n: int) -> Poset:
    return make_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return make_poset(n, [])


def chain_product(m: int, n: int) -> Poset:
    """``A_m x A_n``; element (i, j) has index ``i*n + j``."""
    covers = []
    for i in range(m):
        for j in range(n):
            if i + 1 < m:
                covers.append((i * n + j, (i + 1) * n + j))
            if j + 1 < n:
                covers.append((i * n + j, i * n + j + 1))
    return make_poset(m * n, covers)


def _filters(P: Poset) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1 << P.size):
        ok = True
        for i in range(P.size):
            if mask >> i & 1:
                if any(P.less(i, j) and not mask >> j & 1 for j in range(P.size)):
                    ok = False
                    break
        if ok:
            out.append(tuple(mask >> i & 1 for i in range(P.size)))
    return sorted(out, key=lambda v: (sum(v), v))


def order_polytope(P: Poset) -> tuple[LatticePolytope, LinearForm]:
    """``{0 <= z <= 1, z_x <= z_y for x <= y}`` with the sum-of-coordinates form.

    Vertices are the indicator vectors of up-closed subsets; the facet
    inequalities come straight from the cover relations.
    """
    n = P.size
    unit = lambda i, s: tuple(s if k == i else 0 for k in range(n))
    ineqs = [Facet(unit(i, -1), 0) for i in P.minimal()]
    ineqs += [Facet(unit(j, 1), 1) for j in P.maximal()]
    for i, j in P.covers():
        ineqs.append(Facet(tuple(1 if k == i else -1 if k == j else 0 for k in range(n)), 0))
    return from_hrep(n, _filters(P), [], ineqs), LinearForm([1] * n)


def linear_extensions(P: Poset) -> Iterator[tuple[int, ...]]:
    """Orderings of the elements compatible with P, depth-first, smallest index first."""
    placed = [False] * P.size
    seq: list[int] = []

    def rec():
        if len(seq) == P.size:
            yield tuple(seq)
            return
        for x in range(P.size):
            if not placed[x] and all(placed[y] for y in range(P.size) if P.less(y, x)):
                placed[x] = True
                seq.append(x)
                yield from rec()
                seq.pop()
                placed[x] = False

    yield from rec()


def natural_labelling(P: Poset) -> list[int]:
    """``label[x]`` in 1..#P from the first linear extension (smallest-index tie-break)."""
    first = next(linear_extensions(P))
    label = [0] * P.size
    for pos, x in enumerate(first):
        label[x] = pos + 1
    return label


def colouring_sum(P: Poset, n: int, strict: bool = False) -> QRat:
    """Brute-force weighted sum ``q^(sum of colours)`` over order-preserving colourings.

    Weak: colours in {0..n}, x <= y implies f(x) <= f(y).
    Strict: colours in {1..n-1}, x < y implies f(x) < f(y).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    order = next(linear_extensions(P)) if P.size else ()
    lo, hi = (1, n - 1) if strict else (0, n)
    colour = [0] * P.size
    hist: dict[int, int] = {}

    def rec(k: int, total: int):
        if k == len(order):
            hist[total] = hist.get(total, 0) + 1
            return
        x = order[k]
        start = lo
        for y in order[:k]:
            if P.less(y, x):
                start = max(start, colour[y] + (1 if strict else 0))
        for c in range(start, hi + 1):
            colour[x] = c
            rec(k + 1, total + c)

    rec(0, 0)
    if not hist:
        return QRat()
    coeffs = [0] * (max(hist) + 1)
    for e, m in hist.items():
        coeffs[e] = m
    return QRat(coeffs)


def descent_numerator(P: Poset) -> SeriesTQ:
    """Ehrhart series of the order polytope from linear extensions.

    With a natural labelling, each extension contributes ``t^des * q^comaj``
    where ``comaj = sum over descent positions i of (#P - i)``: the major index
    of the word read backwards with complemented labels.  The denominator is
    ``prod_{j=0}^{#P} (1 - q^j t)``.
    """
    p = P.size
    label = natural_labelling(P)
    counts: dict[tuple[int, int], int] = {}
    for ext in linear_extensions(P):
        word = [label[x] for x in ext]
        descents = [i for i in range(1, p) if word[i - 1] > word[i]]
        key = (len(descents), sum(p - i for i in descents))
        counts[key] = counts.get(key, 0) + 1
    num = [[0] * (comb(p + 1, 2) + 1) for _ in range(p + 1)]
    for (des, maj), c in counts.items():
        num[des][maj] += c
    return SeriesTQ([QRat(row) for row in num], range(p + 1))


def derive_poset(P: Poset, kind: str) -> Poset:
    """``opposite``, ``add_min`` (new element p below all) or ``add_max`` (new element p above all)."""
    n = P.size
    if kind == "opposite":
        return Poset(n, tuple(tuple(P.leq[j][i] for j in range(n)) for i in range(n)))
    if kind in ("add_min", "add_max"):
        covers = [(i, j) for i in range(n) for j in range(n) if P.less(i, j)]
        new = n
        extra = [(new, i) for i in range(n)] if kind == "add_min" else [(i, new) for i in range(n)]
        return make_poset(n + 1, covers + extra)
    raise ValueError(f"unknown poset construction {kind!r}")


def q_volume(P: Poset, L: XPoly | None = None) -> QRat:
    """Leading coefficient of the q-Ehrhart polynomial times ``[#P]!_q``."""
    if L is None:
        from .ehrhart import qehrhart_polynomial

        L = qehrhart_polynomial(*order_polytope(P))
    return L.lead * qfactorial(P.size)


def macmahon_polynomial(m: int, n: int) -> XPoly:
    """Product formula ``prod_{i,j} ([i+j-1] + q^(i+j-1) x) / [i+j-1]`` for ``A_m x A_n``."""
    out = XPoly([1])
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            h = i + j - 1
            out = out * XPoly([1, QRat.q_power(h) / qint(h)])
    return out


def longest_chain(P: Poset) -> int:
    """Maximum number of elements in a chain."""
    best = [1] * P.size
    for x in next(linear_extensions(P)) if P.size else ():
        for y in range(P.size):
            if P.less(y, x):
                best[x] = max(best[x], best[y] + 1)
    return max(best, default=0)


def rooted_trees(max_size: int) -> list[Poset]:
    """Unlabelled rooted trees with 1..max_size nodes, root as the maximum, up to isomorphism."""

    def shapes(n: int) -> set[tuple]:
        # canonical nested tuples: a node is the sorted tuple of its children
        if n == 1:
            return {()}
        out = set()
        for parts in _partitions(n - 1):
            for combo in _multiset_choices(parts, shapes):
                out.add(tuple(sorted(combo)))
        return out

    result = []
    for size in range(1, max_size + 1):
        for shape in sorted(shapes(size), key=repr):
            covers: list[tuple[int, int]] = []
            counter = [0]

            def build(node, parent):
                me = counter[0]
                counter[0] += 1
                if parent is not None:
                    covers.append((me, parent))
                for child in node:
                    build(child, me)

            build(shape, None)
            result.append(make_poset(size, covers))
    return result


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _multiset_choices(parts, shapes) -> Iterator[tuple]:
    if not parts:
        yield ()
        return
    first = parts[0]
    for s in sorted(shapes(first), key=repr):
        for rest in _multiset_choices(parts[1:], shapes):
            yield (s,) + rest


def poset_from_json(doc: dict) -> Poset:
    """Parse ``{"size": n, "covers": [[i, j], ...]}`` (i < j in the poset)."""
    try:
        n = doc["size"]
        covers = doc.get("covers", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"poset document is missing field {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise ValueError("size must be a nonnegative integer")
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(v, int) for v in c)):
            raise ValueError(f"bad cover entry {c!r}")
        pairs.append(tuple(c))
    return make_poset(n, pairs)


def poset_to_json(P: Poset) -> dict:
    return {"size": P.size, "covers": [list(c) for c in P.covers()]}
