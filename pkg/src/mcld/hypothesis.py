"""Finite multiclass hypothesis classes and the explicit constructions built on them.

A class is a label table: one row per function, one column per domain point,
entries in ``0..k``.  Rows are deduplicated and sorted on construction so two
classes with the same functions compare equal and memo keys stay stable.

Label bits are numbered MSB-first: bit 1 is the most significant of the
``B = ceil(log2(k + 1))`` bits.
"""

from __future__ import annotations

import itertools
import json
import math
from typing import Iterable, Sequence

from .caps import DEFAULT_CAPS, Caps


class ClassError(ValueError):
    """Invalid hypothesis class, label, or construction argument."""


def bit_width(k: int) -> int:
    """Number of bits ``B`` used to encode labels ``0..k`` (at least one)."""
    if k < 0:
        raise ClassError(f"k must be non-negative, got {k}")
    return max(1, k.bit_length())


def dec2bin(label: int, width: int) -> tuple[int, ...]:
    if label < 0 or label >= 1 << width:
        raise ClassError(f"label {label} does not fit in {width} bits")
    return tuple((label >> (width - 1 - j)) & 1 for j in range(width))


def bin2dec(bits: Sequence[int], k: int) -> int:
    """MSB-first decode, clamped to ``k`` for patterns that decode above it."""
    value = 0
    for b in bits:
        value = (value << 1) | (1 if b else 0)
    return min(value, k)


def label_bit(label: int, i: int, width: int) -> int:
    return (label >> (width - i)) & 1


class HypothesisClass:
    """Immutable finite class of functions ``{0..domain_size-1} -> {0..k}``."""

    __slots__ = ("k", "domain_size", "rows", "name", "_masks", "_index")

    def __init__(self, rows: Iterable[Sequence[int]], k: int, domain_size: int | None = None,
                 name: str | None = None):
        table = sorted({tuple(int(v) for v in r) for r in rows})
        if not table:
            raise ClassError("a hypothesis class needs at least one function")
        if domain_size is None:
            domain_size = len(table[0])
        if domain_size < 1:
            raise ClassError("domain_size must be positive")
        if k < 0:
            raise ClassError("k must be non-negative")
        for r in table:
            if len(r) != domain_size:
                raise ClassError(f"row {r} does not have {domain_size} entries")
            for v in r:
                if not 0 <= v <= k:
                    raise ClassError(f"label {v} outside 0..{k}")
        self.k = k
        self.domain_size = domain_size
        self.rows: tuple[tuple[int, ...], ...] = tuple(table)
        self.name = name
        self._masks = None
        self._index = None

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __contains__(self, f) -> bool:
        return tuple(f) in self._row_index

    def __eq__(self, other) -> bool:
        if not isinstance(other, HypothesisClass):
            return NotImplemented
        return (self.k, self.domain_size, self.rows) == (other.k, other.domain_size, other.rows)

    def __hash__(self) -> int:
        return hash((self.k, self.domain_size, self.rows))

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<HypothesisClass{tag} |H|={len(self.rows)} |X|={self.domain_size} k={self.k}>"

    @property
    def bits(self) -> int:
        return bit_width(self.k)

    @property
    def _row_index(self) -> dict:
        if self._index is None:
            self._index = {r: i for i, r in enumerate(self.rows)}
        return self._index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.rows)) - 1

    @property
    def label_masks(self) -> list[list[int]]:
        """``masks[x][y]`` is the bitset of rows ``f`` with ``f(x) == y``."""
        if self._masks is None:
            masks = [[0] * (self.k + 1) for _ in range(self.domain_size)]
            for i, r in enumerate(self.rows):
                bit = 1 << i
                for x, y in enumerate(r):
                    masks[x][y] |= bit
            self._masks = masks
        return self._masks

    def index_of(self, f: Sequence[int]) -> int:
        try:
            return self._row_index[tuple(f)]
        except KeyError:
            raise ClassError(f"{tuple(f)} is not a member of the class") from None

    def subclass(self, mask: int) -> "HypothesisClass":
        """Class made of the rows selected by the bitset ``mask`` (non-empty)."""
        rows = [r for i, r in enumerate(self.rows) if mask >> i & 1]
        return HypothesisClass(rows, self.k, self.domain_size)

    def with_k(self, k: int) -> "HypothesisClass":
        return HypothesisClass(self.rows, k, self.domain_size, self.name)

    def to_json(self) -> dict:
        out = {"k": self.k, "domain_size": self.domain_size,
               "functions": [list(r) for r in self.rows]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "HypothesisClass":
        try:
            return cls(data["functions"], int(data["k"]), int(data["domain_size"]), data.get("name"))
        except KeyError as e:
            raise ClassError(f"class JSON missing field {e}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def binary_restriction(H: HypothesisClass, i: int) -> HypothesisClass:
    """Class of ``i``-th label bits of the functions of ``H`` (``1 <= i <= B``)."""
    width = H.bits
    if not 1 <= i <= width:
        raise ClassError(f"bit index {i} outside 1..{width}")
    rows = [tuple(label_bit(y, i, width) for y in r) for r in H.rows]
    return HypothesisClass(rows, 1, H.domain_size, f"{H.name}|{i}" if H.name else None)


def binary_restrictions(H: HypothesisClass) -> list[HypothesisClass]:
    return [binary_restriction(H, i) for i in range(1, H.bits + 1)]


def restrict(H: HypothesisClass, x: int, y: int) -> HypothesisClass | None:
    """Subclass ``{f in H : f(x) == y}``, or ``None`` when no function matches."""
    if not 0 <= x < H.domain_size:
        raise ClassError(f"domain index {x} outside 0..{H.domain_size - 1}")
    if not 0 <= y <= H.k:
        raise ClassError(f"label {y} outside 0..{H.k}")
    rows = [r for r in H.rows if r[x] == y]
    if not rows:
        return None
    return HypothesisClass(rows, H.k, H.domain_size)


def make_threshold_pair_class(k: int) -> HypothesisClass:
    """Thresholds paired with their own parameter.

    With ``k' = k`` (k even) or ``k + 1`` (k odd) the domain is ``{0..k'/2 - 1}``
    and ``f_t(x) = 2 t + [t >= x]``.  The threshold value sits in the least
    significant label bit, so ``binary_restriction(F, B)`` is the threshold
    class.  Every label names its ``t``, hence the multiclass dimension is 1.
    """
    if k < 5:
        raise ClassError("threshold-pair construction needs k >= 5")
    kp = k if k % 2 == 0 else k + 1
    m = kp // 2
    rows = [tuple(2 * t + (1 if t >= x else 0) for x in range(m)) for t in range(m)]
    return HypothesisClass(rows, k, m, f"threshold-pair(k={k})")


def make_threshold_class(m: int) -> HypothesisClass:
    """Binary thresholds ``g_t(x) = [t >= x]`` on ``{0..m-1}`` for ``t`` in the domain."""
    if m < 1:
        raise ClassError("threshold domain must be non-empty")
    return HypothesisClass([tuple(1 if t >= x else 0 for x in range(m)) for t in range(m)], 1, m,
                           f"thresholds({m})")


def amplify(H: HypothesisClass, ell: int, caps: Caps = DEFAULT_CAPS) -> HypothesisClass:
    """ell-fold product class on ``{1..ell} x X``; point ``(j, x)`` has index ``j * |X| + x``."""
    if ell < 1:
        raise ClassError("amplification factor must be >= 1")
    caps.check("max_class_size", len(H) ** ell)
    rows = [tuple(itertools.chain.from_iterable(combo))
            for combo in itertools.product(H.rows, repeat=ell)]
    name = f"amplify({H.name},{ell})" if H.name else None
    return HypothesisClass(rows, H.k, H.domain_size * ell, name)


def product_class(parts: Sequence[HypothesisClass], k: int,
                  caps: Caps = DEFAULT_CAPS) -> HypothesisClass:
    """Class whose ``i``-th binary restriction is ``parts[i-1]``.

    Each function is a tuple ``(f_1, ..., f_B)`` of part members decoded
    pointwise with :func:`bin2dec`.  When ``k + 1`` is not a power of two the
    clamp can merge patterns, and the restrictions then need not equal the parts.
    """
    width = bit_width(k)
    if len(parts) != width:
        raise ClassError(f"need {width} parts for k={k}, got {len(parts)}")
    domain = parts[0].domain_size
    for p in parts:
        if p.k != 1:
            raise ClassError("product parts must be binary classes")
        if p.domain_size != domain:
            raise ClassError("product parts must share a domain")
    caps.check("max_class_size", math.prod(len(p) for p in parts))
    rows = []
    for combo in itertools.product(*(p.rows for p in parts)):
        rows.append(tuple(bin2dec([f[x] for f in combo], k) for x in range(domain)))
    return HypothesisClass(rows, k, domain, f"product(k={k})")


def make_point_function_class(d: int, m: int) -> HypothesisClass:
    """All indicators of ``d``-point subsets of ``{0..m-1}``."""
    if d < 1:
        raise ClassError("d must be >= 1")
    if m < d:
        raise ClassError(f"domain size {m} smaller than d={d}")
    rows = []
    for support in itertools.combinations(range(m), d):
        row = [0] * m
        for x in support:
            row[x] = 1
        rows.append(tuple(row))
    return HypothesisClass(rows, 1, m, f"{d}-point({m})")


def all_functions(k: int, m: int) -> HypothesisClass:
    return HypothesisClass(itertools.product(range(k + 1), repeat=m), k, m, f"all(k={k},m={m})")


def constant_class(labels: Iterable[int], k: int, m: int) -> HypothesisClass:
    return HypothesisClass([(y,) * m for y in labels], k, m)


def random_class(rng, max_domain: int = 4, max_k: int = 6, max_size: int = 30,
                 min_k: int = 1) -> HypothesisClass:
    """Random class drawn from a ``numpy.random.Generator``."""
    m = int(rng.integers(1, max_domain + 1))
    k = int(rng.integers(min_k, max_k + 1))
    size = int(rng.integers(1, max_size + 1))
    cap = (k + 1) ** m
    size = min(size, cap)
    table = rng.integers(0, k + 1, size=(size, m))
    return HypothesisClass(table.tolist(), k, m)
