"""Exact 0-covers of a class on an input-labeled tree.

``build_cover`` is the inductive construction: split the class by its label
at the root example, cover each part on the two subtrees, and pair the left
and right covers through a cyclic surjection.  ``min_cover_size`` is computed
independently as a graph-colouring problem over the (path, label sequence)
requirements, so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .caps import DEFAULT_CAPS, Caps
from .dimensions import family_psi_b, mld
from .hypothesis import HypothesisClass
from .trees import (InputTree, Leaf, OutputTree, TreeError, find_shattered_tree,
                    heap_to_json, is_shattered, tree_depth)


def _requirements(H: HypothesisClass, z: InputTree) -> list[tuple[int, tuple[int, ...]]]:
    paths = z.paths()
    reqs = set()
    for f in H.rows:
        for p, path in enumerate(paths):
            reqs.add((p, tuple(f[z.labels[i]] for i in path)))
    return sorted(reqs)


def is_zero_cover(V: Iterable[OutputTree], H: HypothesisClass, z: InputTree) -> bool:
    """Every (function, path) label sequence of ``H`` on ``z`` appears on the same path of some tree in ``V``."""
    V = list(V)
    for v in V:
        if v.depth != z.depth:
            raise TreeError(f"cover tree depth {v.depth} differs from input tree depth {z.depth}")
    for x in z.labels:
        if not 0 <= x < H.domain_size:
            raise TreeError(f"input tree point {x} outside the domain")
    if z.depth == 0:
        return len(V) >= 1
    paths = z.paths()
    have = {(p, tuple(v.labels[i] for i in path)) for v in V for p, path in enumerate(paths)}
    return all(r in have for r in _requirements(H, z))


@dataclass
class CoverCertificate:
    tree: InputTree
    cover: list[OutputTree]
    verified: bool

    @property
    def size(self) -> int:
        return len(self.cover)

    def to_json(self) -> dict:
        return {"tree": heap_to_json(self.tree), "size": self.size, "verified": self.verified,
                "cover": [heap_to_json(v) for v in self.cover]}


def _to_heap(nested, depth: int) -> tuple[int, ...]:
    labels = [0] * ((1 << depth) - 1)

    def fill(t, i):
        if t is None:
            return
        labels[i] = t[0]
        fill(t[1], 2 * i + 1)
        fill(t[2], 2 * i + 2)

    fill(nested, 0)
    return tuple(labels)


def build_cover(H: HypothesisClass, z: InputTree, caps: Caps = DEFAULT_CAPS) -> CoverCertificate:
    """Constructive 0-cover of ``H`` on ``z``, self-verified."""
    caps.check("max_cover_depth", z.depth)
    caps.check("max_class_size", len(H))
    masks = H.label_masks
    n_nodes = len(z.labels)
    memo: dict[tuple[int, int], list] = {}

    def single(row, i):
        if i >= n_nodes:
            return None
        return (row[z.labels[i]], single(row, 2 * i + 1), single(row, 2 * i + 2))

    def cover(S: int, i: int) -> list:
        if i >= n_nodes:
            return [None]
        key = (S, i)
        got = memo.get(key)
        if got is not None:
            return got
        if S & (S - 1) == 0:
            out = [single(H.rows[S.bit_length() - 1], i)]
        else:
            x = z.labels[i]
            out = []
            for y in range(H.k + 1):
                part = S & masks[x][y]
                if not part:
                    continue
                left, right = cover(part, 2 * i + 1), cover(part, 2 * i + 2)
                m = max(len(left), len(right))
                # cyclic surjection from the larger cover onto the smaller one
                out.extend((y, left[j % len(left)], right[j % len(right)]) for j in range(m))
        memo[key] = out
        return out

    if z.depth == 0:
        V = [OutputTree(0, ())]
    else:
        V = sorted({OutputTree(z.depth, _to_heap(t, z.depth)) for t in cover(H.full_mask, 0)},
                   key=lambda v: v.labels)
    return CoverCertificate(z, V, is_zero_cover(V, H, z))


def min_cover_size(H: HypothesisClass, z: InputTree, caps: Caps = DEFAULT_CAPS) -> int:
    """Exact size of the smallest 0-cover of ``H`` on ``z``.

    Works on the requirement set alone: the (path, label sequence) pairs of
    ``H`` on ``z``.  Cover trees with different root labels are disjoint, and
    among trees with root label ``y`` the left and right subtrees can be
    paired freely, so the optimum at a node is the sum over root labels ``y``
    of the larger of the two subtree optima for the requirements starting
    with ``y``.  A one-node subtree needs one tree per distinct label.
    """
    if z.depth == 0:
        return 1
    paths = z.paths()
    reqs = frozenset((paths[p], seq) for p, seq in _requirements(H, z))
    caps.check("max_min_cover_requirements", len(reqs))
    memo: dict = {}

    def best(R: frozenset) -> int:
        got = memo.get(R)
        if got is not None:
            return got
        if len(next(iter(R))[0]) == 1:
            out = len({seq[0] for _, seq in R})
        else:
            groups: dict = {}
            for nodes, seq in R:
                groups.setdefault((seq[0], nodes[1]), set()).add((nodes[1:], seq[1:]))
            out = 0
            for y in {y for y, _ in groups}:
                out += max(best(frozenset(g)) for (yy, _), g in groups.items() if yy == y)
        memo[R] = out
        return out

    return best(reqs)


def sauer_bound(d: int, k: int, n: int) -> int:
    """``sum_{i<=d} C(n, i) k^i`` as an exact integer."""
    if d < 0 or n < d:
        raise ValueError(f"need n >= d >= 0, got d={d}, n={n}")
    return sum(math.comb(n, i) * k ** i for i in range(d + 1))


def sauer_bound_closed(d: int, k: int, n: int) -> float:
    """``(e k n / d)^d``; only meaningful for ``d > 0``."""
    if d <= 0 or n < d:
        raise ValueError(f"closed form needs n >= d > 0, got d={d}, n={n}")
    return (math.e * k * n / d) ** d


@dataclass
class LowerBoundWitness:
    tree: InputTree
    functions: list[tuple[int, ...]]
    certified: bool

    def to_json(self) -> dict:
        return {"tree": heap_to_json(self.tree), "functions": [list(f) for f in self.functions],
                "certified": self.certified}


def lower_bound_witness(H: HypothesisClass, T) -> LowerBoundWitness:
    """Strip a shattered Psi-tree to an input tree that forces ``2^depth`` cover trees.

    One realizing function is taken per root-to-leaf path of ``T`` (the
    lowest-indexed member), so every path of the stripped tree carries two of
    them.  ``certified`` records that every pair differs at some example on
    the common part of their paths, which puts them in different cover trees.
    """
    d = tree_depth(T)
    if not is_shattered(H, T):
        raise TreeError("lower-bound witness needs a shattered tree")
    labels = [0] * ((1 << d) - 1)

    def strip(t, i):
        if isinstance(t, Leaf):
            return
        labels[i] = t.x
        strip(t.left, 2 * i + 1)
        strip(t.right, 2 * i + 2)

    strip(T, 0)
    z = InputTree(d, tuple(labels))

    funcs: list[tuple[int, ...]] = []
    routes: list[list[int]] = []

    def collect(t, rows, route):
        if isinstance(t, Leaf):
            funcs.append(rows[0])
            routes.append(route)
            return
        phi = t.phi
        for side, child in ((0, t.left), (1, t.right)):
            collect(child, [r for r in rows if phi[r[t.x]] == side], route + [side])

    collect(T, list(H.rows), [])
    if d == 0:
        return LowerBoundWitness(z, funcs, True)

    def nodes_on(route):
        i, out = 0, []
        for side in route[:-1]:
            out.append(i)
            i = 2 * i + 1 + side
        out.append(i)
        return out

    ok = True
    for a in range(len(funcs)):
        na = nodes_on(routes[a])
        for b in range(a + 1, len(funcs)):
            nb = nodes_on(routes[b])
            shared = [u for u, v in zip(na, nb) if u == v]
            if not any(funcs[a][z.labels[u]] != funcs[b][z.labels[u]] for u in shared):
                ok = False
    return LowerBoundWitness(z, funcs, ok)


def psi_b_witness(H: HypothesisClass, caps: Caps = DEFAULT_CAPS):
    """Deepest Psi^B-shattered tree of ``H`` together with its stripped witness."""
    fam = family_psi_b(H.k, caps)
    from .dimensions import psi_ld

    d_b = psi_ld(H, fam, caps=caps)
    T = find_shattered_tree(H, fam, d_b, caps)
    return d_b, T, lower_bound_witness(H, T)


@dataclass
class SandwichResult:
    n: int
    d: int
    min_size: int | None
    built_size: int
    sauer: int | None
    holds: bool


def cover_sandwich(H: HypothesisClass, z: InputTree, caps: Caps = DEFAULT_CAPS,
                   exact: bool = True) -> SandwichResult:
    """Check ``min <= |build_cover| <= sauer_bound(mld, k, n)`` on one tree."""
    d = mld(H, caps)
    cert = build_cover(H, z, caps)
    m = min_cover_size(H, z, caps) if exact else None
    s = sauer_bound(d, H.k, z.depth) if z.depth >= d else None
    holds = cert.verified
    if m is not None:
        holds = holds and m <= cert.size
    if s is not None:
        holds = holds and cert.size <= s
    else:
        holds = holds and cert.size <= (H.k + 1) ** z.depth
    return SandwichResult(z.depth, d, m, cert.size, s, holds)
