"""Exact Littlestone-type dimensions by memoized shattering recursion.

All recursions work on row subsets encoded as bitmasks over ``H.rows``.  The
hot recursion lives in :mod:`mcld.kernels`; this module builds the per-point
split tables for a family of collapsing maps and assembles reports.

Family handling inside the kernel:

* ``PsiN`` (and plain io-labeled trees) split on pairs of label groups.
* ``PsiB`` splits on bipartitions of the labels present at a point.  A map
  that sends some present labels to ``*`` yields children contained in those
  of a bipartition, and the dimension is monotone under taking subclasses,
  so bipartitions attain the maximum.
* Any other family is evaluated map by map.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .caps import DEFAULT_CAPS, Caps, CapExceeded
from .hypothesis import (ClassError, HypothesisClass, binary_restrictions, bit_width,
                         label_bit)
from .kernels import MODE_BIPARTITION, MODE_MAPS, MODE_PAIRS, make_dim_solver

STAR = "*"

PSI_N = "PsiN"
PSI_BIN = "PsiBin"
PSI_B = "PsiB"
CUSTOM = "Custom"


class BoundViolation(AssertionError):
    """A dimension inequality failed; names the offending check."""

    def __init__(self, check: "BoundCheck"):
        super().__init__(f"bound {check.name} violated: {check.lhs} vs {check.rhs}")
        self.check = check


@dataclass(frozen=True)
class MapFamily:
    """Finite set of collapsing maps ``{0..k} -> {0, 1, *}`` sharing one ``k``."""

    maps: tuple[tuple, ...]
    k: int
    kind: str = CUSTOM

    def __post_init__(self):
        if not self.maps:
            raise ClassError("a map family must be non-empty")
        for phi in self.maps:
            if len(phi) != self.k + 1:
                raise ClassError(f"collapsing map {phi} must have length {self.k + 1}")
            for v in phi:
                if v not in (0, 1, STAR):
                    raise ClassError(f"collapsing map entry {v!r} not in {{0, 1, *}}")

    def __len__(self) -> int:
        return len(self.maps)

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "maps": [list(m) for m in self.maps]}


def family_psi_n(k: int) -> MapFamily:
    """Pair maps ``w -> 0, w' -> 1``, one per unordered pair ``w < w'``."""
    maps = []
    for w, w2 in itertools.combinations(range(k + 1), 2):
        phi = [STAR] * (k + 1)
        phi[w], phi[w2] = 0, 1
        maps.append(tuple(phi))
    if not maps:
        raise ClassError("the pair family needs k >= 1")
    return MapFamily(tuple(maps), k, PSI_N)


def family_psi_bin(k: int) -> MapFamily:
    width = bit_width(k)
    maps = tuple(tuple(label_bit(y, i, width) for y in range(k + 1)) for i in range(1, width + 1))
    return MapFamily(maps, k, PSI_BIN)


def family_psi_b(k: int, caps: Caps = DEFAULT_CAPS) -> MapFamily:
    """All collapsing maps whose image contains both 0 and 1."""
    caps.check("max_psi_b_maps", 3 ** (k + 1))
    maps = tuple(phi for phi in itertools.product((0, 1, STAR), repeat=k + 1)
                 if 0 in phi and 1 in phi)
    return MapFamily(maps, k, PSI_B)


def _check_family(H: HypothesisClass, family: MapFamily) -> None:
    if family.k != H.k:
        raise ClassError(f"family built for k={family.k}, class has k={H.k}")


def _map_tables(H: HypothesisClass, family: MapFamily):
    masks = H.label_masks
    maps0, maps1 = [], []
    for x in range(H.domain_size):
        row0, row1 = [], []
        for phi in family.maps:
            z = o = 0
            for y, v in enumerate(phi):
                if v == 0:
                    z |= masks[x][y]
                elif v == 1:
                    o |= masks[x][y]
            row0.append(z)
            row1.append(o)
        maps0.append(row0)
        maps1.append(row1)
    return maps0, maps1


def solver_for(H: HypothesisClass, family: MapFamily | None = None, *,
               explicit_maps: bool = False, caps: Caps = DEFAULT_CAPS, backend: str | None = None):
    """Dimension solver for ``H`` under ``family`` (``None`` means io-labeled trees)."""
    caps.check("max_class_size", len(H))
    if family is not None:
        _check_family(H, family)
    if family is None or (family.kind == PSI_N and not explicit_maps):
        return make_dim_solver(H.label_masks, len(H), MODE_PAIRS, max_nodes=caps.max_nodes,
                               backend=backend)
    if family.kind == PSI_B and not explicit_maps:
        return make_dim_solver(H.label_masks, len(H), MODE_BIPARTITION, max_nodes=caps.max_nodes,
                               backend=backend)
    maps0, maps1 = _map_tables(H, family)
    return make_dim_solver(H.label_masks, len(H), MODE_MAPS, maps0, maps1,
                           max_nodes=caps.max_nodes, backend=backend)


def mld(H: HypothesisClass, caps: Caps = DEFAULT_CAPS, backend: str | None = None) -> int:
    """Multiclass Littlestone dimension."""
    return solver_for(H, None, caps=caps, backend=backend).dim(H.full_mask)


def littlestone_dim(H: HypothesisClass, caps: Caps = DEFAULT_CAPS,
                    backend: str | None = None) -> int:
    if H.k != 1:
        raise ClassError(f"Littlestone dimension needs a binary class, got k={H.k}")
    return mld(H, caps, backend)


def psi_ld(H: HypothesisClass, family: MapFamily, *, explicit_maps: bool = False,
           caps: Caps = DEFAULT_CAPS, backend: str | None = None) -> int:
    """Psi-Littlestone dimension of ``H`` for the map family ``family``."""
    return solver_for(H, family, explicit_maps=explicit_maps, caps=caps,
                      backend=backend).dim(H.full_mask)


def psi_ld_uniform(H: HypothesisClass, family: MapFamily, caps: Caps = DEFAULT_CAPS) -> int:
    """Depth of the deepest shattered tree using one collapsing map per level.

    For a fixed top-down sequence of maps the subtrees below a node are
    independent, so a class shatters a level-synchronized tree with that
    sequence iff some point splits it into two children that each shatter the
    remaining sequence.  Valid sequences are prefix-closed, so a depth-first
    search over prefixes finds the longest one.
    """
    _check_family(H, family)
    caps.check("max_uniform_family", len(family))
    maps0, maps1 = _map_tables(H, family)
    nx = H.domain_size
    memo: dict[tuple[int, tuple[int, ...]], bool] = {}
    nodes = 0

    def works(S: int, seq: tuple[int, ...]) -> bool:
        nonlocal nodes
        if not seq:
            return S != 0
        key = (S, seq)
        got = memo.get(key)
        if got is not None:
            return got
        nodes += 1
        if nodes > caps.max_nodes:
            raise CapExceeded("max_nodes", nodes, caps.max_nodes)
        j, rest = seq[0], seq[1:]
        ok = False
        if S.bit_count() >= 1 << len(seq):
            for x in range(nx):
                s0, s1 = S & maps0[x][j], S & maps1[x][j]
                if s0 and s1 and works(s0, rest) and works(s1, rest):
                    ok = True
                    break
        memo[key] = ok
        return ok

    full = H.full_mask
    ub = len(H).bit_length() - 1
    best = 0

    def extend(prefix: tuple[int, ...]) -> None:
        nonlocal best
        if best >= ub or len(prefix) >= ub:
            return
        for j in range(len(family)):
            seq = prefix + (j,)
            if works(full, seq):
                best = max(best, len(seq))
                extend(seq)
                if best >= ub:
                    return

    extend(())
    return best


def iter_splits(H: HypothesisClass, family: MapFamily | None, S: int) -> Iterator[tuple]:
    """Yield ``(x, tag, S0, S1)`` for every split of row set ``S``.

    ``tag`` is the edge-label pair ``(y0, y1)`` for io-labeled trees or the
    collapsing map for Psi-labeled trees.  Order is deterministic: points
    ascending, then labels/maps in lexicographic order.
    """
    masks = H.label_masks
    for x in range(H.domain_size):
        groups = [(y, S & masks[x][y]) for y in range(H.k + 1) if S & masks[x][y]]
        if family is None:
            for (y0, g0), (y1, g1) in itertools.combinations(groups, 2):
                yield x, (y0, y1), g0, g1
        elif family.kind == PSI_B:
            present = [y for y, _ in groups]
            for bits in itertools.product((0, 1), repeat=len(present)):
                if 0 not in bits or 1 not in bits:
                    continue
                phi = [STAR] * (H.k + 1)
                s0 = s1 = 0
                for (y, g), b in zip(groups, bits):
                    phi[y] = b
                    if b:
                        s1 |= g
                    else:
                        s0 |= g
                yield x, tuple(phi), s0, s1
        else:
            for phi in family.maps:
                s0 = s1 = 0
                for y, g in groups:
                    if phi[y] == 0:
                        s0 |= g
                    elif phi[y] == 1:
                        s1 |= g
                if s0 and s1:
                    yield x, phi, s0, s1


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool
    anchor: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "verdict": "pass" if self.holds else "fail", "anchor": self.anchor}


@dataclass
class DimensionReport:
    mld: int
    binary_dims: list[int]
    psi_n: int
    psi_bin: int
    psi_bin_uniform: int
    psi_b: int | None
    k: int
    bounds_checked: list[BoundCheck] = field(default_factory=list)

    @property
    def max_binary_dim(self) -> int:
        return max(self.binary_dims)

    def to_json(self) -> dict:
        return {
            "mld": self.mld, "binary_dims": list(self.binary_dims), "psi_n": self.psi_n,
            "psi_bin": self.psi_bin, "psi_bin_uniform": self.psi_bin_uniform,
            "psi_b": self.psi_b, "k": self.k,
            "bounds_checked": [b.to_json() for b in sorted(self.bounds_checked,
                                                           key=lambda b: b.name)],
        }


def sauer_sum(d: int, k: int, n: int) -> int:
    return sum(math.comb(n, i) * k ** i for i in range(d + 1))


def dimension_report(H: HypothesisClass, caps: Caps = DEFAULT_CAPS, *, with_psi_b: bool | None = None,
                     strict: bool = True) -> DimensionReport:
    """Compute every dimension of ``H`` and check the inequalities linking them.

    ``Psi^B`` is included only when ``3^(k+1)`` is within ``caps.max_psi_b_maps``
    (or when forced with ``with_psi_b``).  With ``strict`` a failed check raises
    :class:`BoundViolation`.
    """
    k = H.k
    width = H.bits
    d = mld(H, caps)
    dims = [littlestone_dim(R, caps) for R in binary_restrictions(H)]
    fam_n = family_psi_n(k) if k >= 1 else None
    p_n = psi_ld(H, fam_n, caps=caps) if fam_n is not None else 0
    fam_bin = family_psi_bin(k)
    p_bin = psi_ld(H, fam_bin, caps=caps)
    p_unif = psi_ld_uniform(H, fam_bin, caps)
    if with_psi_b is None:
        with_psi_b = 3 ** (k + 1) <= caps.max_psi_b_maps
    p_b = psi_ld(H, family_psi_b(k, caps), caps=caps) if with_psi_b and k >= 1 else None

    max_di = max(dims)
    six = 6 * d * math.log(k + 1)
    checks = [
        BoundCheck("psi_n_equals_mld", p_n, d, p_n == d, "pair-map dimension equals MLD"),
        BoundCheck("max_binary_ld_le_uniform_psi_bin", max_di, p_unif, max_di <= p_unif,
                   "bit restrictions embed as uniform bit-map trees"),
        BoundCheck("uniform_psi_bin_le_psi_bin", p_unif, p_bin, p_unif <= p_bin,
                   "uniform trees are special trees"),
        BoundCheck("mld_le_psi_bin", d, p_bin, d <= p_bin, "pair maps refine to bit maps"),
        BoundCheck("max_binary_ld_le_6d_ln_k1", max_di, six, max_di <= six,
                   "binary restriction dims at most 6 d ln(k+1)"),
        BoundCheck("mld_le_max_binary_ld_times_bits", d, max_di * width, d <= max_di * width,
                   "bitwise composed learner mistake bound"),
    ]
    if p_b is not None:
        checks.append(BoundCheck("psi_bin_le_psi_b", p_bin, p_b, p_bin <= p_b,
                                 "bit maps are collapsing maps"))
        lower = 2 ** p_b
        upper = sauer_sum(d, k, p_b)
        checks.append(BoundCheck("cover_lower_le_sauer_at_psi_b", lower, upper, lower <= upper,
                                 "2^dB <= N(0,H,dB) <= sum_i C(dB,i) k^i"))
        if d > 0:
            closed = (math.e * k * p_b / d) ** d
            checks.append(BoundCheck("sauer_sum_le_closed_form", upper, closed,
                                     upper <= closed * (1 + 1e-12), "sum <= (e k n / d)^d"))
        checks.append(BoundCheck("psi_b_le_6d_ln_k1", p_b, six, p_b <= six,
                                 "full-family dimension at most 6 d ln(k+1)"))
    report = DimensionReport(d, dims, p_n, p_bin, p_unif, p_b, k, checks)
    if strict:
        for c in checks:
            if not c.holds:
                raise BoundViolation(c)
    return report
