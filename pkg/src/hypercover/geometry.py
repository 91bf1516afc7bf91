"""Exact hyperplanes, cube vertices and cube edges.

A hyperplane is ``{x : <a, x> = b}`` with an integer normal ``a`` and a
rational offset ``b``. Vertices of ``{0,1}^n`` are n-bit integers where bit
``i`` holds coordinate ``x_{i+1}``. Edges are indexed direction-major::

    index = (direction - 1) * 2**(n-1) + rank(base)

where ``rank(base)`` is the position of the base vertex among the vertices
having a zero in that direction.

Whole-cube predicates (``covered_set``, ``sliced_set``) are evaluated
bit-parallel with numpy and returned as Python-int bitsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionError, InputError

MAX_BITSET_DIM = 24

_INT64_SAFE = 2**62


def _check_bitset_dim(n):
    if not isinstance(n, int) or n < 1:
        raise DimensionError(f"dimension must be a positive integer, got {n!r}")
    if n > MAX_BITSET_DIM:
        raise DimensionError(
            f"dimension {n} exceeds the bitset ceiling of {MAX_BITSET_DIM}")


def bools_to_mask(arr) -> int:
    """Pack a 1-d boolean array into an int, element ``k`` -> bit ``k``."""
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_to_bools(mask: int, length: int) -> np.ndarray:
    nbytes = (length + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length].astype(bool)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# vertices, edges, bitsets


@dataclass(frozen=True, order=True)
class Vertex:
    dim: int
    bits: int

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"dimension must be positive, got {self.dim}")
        if not 0 <= self.bits < (1 << self.dim):
            raise InputError(f"vertex bits {self.bits} out of range for dim {self.dim}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> Vertex:
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise InputError(f"vertex coordinates must be 0/1, got {list(coords)}")
            bits |= c << i
        return cls(len(coords), bits)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.dim))

    @property
    def support(self) -> int:
        """Bit ``i`` set iff coordinate ``i+1`` is one (same as ``bits``)."""
        return self.bits

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class Edge:
    """The edge from ``base`` (zero in ``direction``) to ``base + e_direction``."""

    dim: int
    base: int
    direction: int

    def __post_init__(self):
        if not 1 <= self.direction <= self.dim:
            raise InputError(f"direction {self.direction} out of range 1..{self.dim}")
        if not 0 <= self.base < (1 << self.dim):
            raise InputError(f"base {self.base} out of range for dim {self.dim}")
        if (self.base >> (self.direction - 1)) & 1:
            raise InputError("edge base must have a zero in the edge direction")

    @classmethod
    def at(cls, vertex: Vertex, direction: int) -> Edge:
        """The edge incident to ``vertex`` along ``direction``."""
        return cls(vertex.dim, vertex.bits & ~(1 << (direction - 1)), direction)

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        top = self.base | (1 << (self.direction - 1))
        return Vertex(self.dim, self.base), Vertex(self.dim, top)

    @property
    def index(self) -> int:
        d = self.direction - 1
        low = self.base & ((1 << d) - 1)
        high = self.base >> (d + 1)
        return d * (1 << (self.dim - 1)) + (low | (high << d))

    @classmethod
    def from_index(cls, dim: int, index: int) -> Edge:
        half = 1 << (dim - 1)
        if not 0 <= index < dim * half:
            raise InputError(f"edge index {index} out of range for dim {dim}")
        d, rank = divmod(index, half)
        low = rank & ((1 << d) - 1)
        high = rank >> d
        return cls(dim, low | (high << (d + 1)), d + 1)

    def __str__(self):
        return f"({self.endpoints[0]}, dir {self.direction})"


def edge_count(n: int) -> int:
    return n << (n - 1)


@dataclass(frozen=True)
class VertexSet:
    dim: int
    mask: int

    def __post_init__(self):
        _check_bitset_dim(self.dim)
        if self.mask < 0 or self.mask >> (1 << self.dim):
            raise InputError("vertex set has bits beyond 2**dim")

    @classmethod
    def full(cls, dim: int) -> VertexSet:
        return cls(dim, (1 << (1 << dim)) - 1)

    @classmethod
    def of(cls, dim: int, vertices) -> VertexSet:
        mask = 0
        for v in vertices:
            mask |= 1 << (v.bits if isinstance(v, Vertex) else v)
        return cls(dim, mask)

    def __contains__(self, v) -> bool:
        bits = v.bits if isinstance(v, Vertex) else v
        return bool((self.mask >> bits) & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[Vertex]:
        for b in iter_bits(self.mask):
            yield Vertex(self.dim, b)


@dataclass(frozen=True)
class EdgeSet:
    dim: int
    mask: int

    def __post_init__(self):
        _check_bitset_dim(self.dim)
        if self.mask < 0 or self.mask >> edge_count(self.dim):
            raise InputError("edge set has bits beyond the edge count")

    @classmethod
    def full(cls, dim: int) -> EdgeSet:
        return cls(dim, (1 << edge_count(dim)) - 1)

    def __contains__(self, e: Edge) -> bool:
        return bool((self.mask >> e.index) & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[Edge]:
        for k in iter_bits(self.mask):
            yield Edge.from_index(self.dim, k)


@dataclass(frozen=True)
class SupportMask:
    dim: int
    mask: int

    @property
    def indices(self) -> tuple[int, ...]:
        """1-based coordinate indices in the support."""
        return tuple(k + 1 for k in iter_bits(self.mask))

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << self.dim) - 1

    def __len__(self):
        return self.mask.bit_count()


# ---------------------------------------------------------------------------
# hyperplanes


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError("booleans are not valid coefficients")
    if isinstance(x, (int, Fraction, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {x!r}") from exc
    raise InputError(f"coefficients must be exact rationals, got {type(x).__name__}")


@dataclass(frozen=True)
class Hyperplane:
    """``{x in R^n : <normal, x> = offset}`` with an integer normal.

    Construct through :func:`canonicalize` (or :func:`hyperplane`) to get the
    unique representative used everywhere else; the raw constructor only
    validates.
    """

    normal: tuple[int, ...]
    offset: Fraction

    def __post_init__(self):
        normal = tuple(self.normal)
        if not normal:
            raise DimensionError("hyperplane needs a normal of length >= 1")
        for a in normal:
            if isinstance(a, bool) or not isinstance(a, int):
                raise InputError(f"normal entries must be integers, got {a!r}")
        if not any(normal):
            raise InputError("normal vector must be non-zero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", _as_fraction(self.offset))

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_canonical(self) -> bool:
        return canonicalize(self) == self

    def sort_key(self):
        return (self.normal, self.offset)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        terms = []
        for i, a in enumerate(self.normal, start=1):
            if a == 0:
                continue
            coef = "" if abs(a) == 1 else str(abs(a))
            sign = "-" if a < 0 else "+"
            terms.append(f"{sign} {coef}x{i}")
        lhs = " ".join(terms)
        lhs = lhs[2:] if lhs.startswith("+ ") else "-" + lhs[2:]
        return f"{lhs} = {self.offset}"


def canonicalize(h, offset=None) -> Hyperplane:
    """Unique representative of a hyperplane.

    Accepts a :class:`Hyperplane` or a raw ``(normal, offset)`` pair with
    rational entries. The normal is scaled to a primitive integer vector
    (entries with gcd 1) whose first non-zero entry is positive; the offset
    is scaled by the same positive factor and kept as an exact rational.
    """
    if isinstance(h, Hyperplane):
        normal, b = h.normal, h.offset
    else:
        if offset is None:
            raise InputError("canonicalize needs an offset for a raw normal")
        normal, b = h, offset
    fr = [_as_fraction(a) for a in normal]
    b = _as_fraction(b)
    if not fr:
        raise DimensionError("hyperplane needs a normal of length >= 1")
    if not any(fr):
        raise InputError("normal vector must be non-zero")
    den = reduce(math.lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(math.gcd, ints, 0)
    lead = next(a for a in ints if a)
    scale = Fraction(den, g if lead > 0 else -g)
    return Hyperplane(tuple(int(a * scale) for a in fr), b * scale)


def hyperplane(normal: Sequence, offset) -> Hyperplane:
    """Shorthand for ``canonicalize(normal, offset)``."""
    return canonicalize(normal, offset)


def _check_dim(h: Hyperplane, dim: int):
    if h.dim != dim:
        raise DimensionError(f"dimension mismatch: hyperplane has dim {h.dim}, got {dim}")


def evaluate(h: Hyperplane, v: Vertex) -> Fraction:
    """Exact ``<a, v> - b``."""
    _check_dim(h, v.dim)
    total = sum(a for i, a in enumerate(h.normal) if (v.bits >> i) & 1)
    return total - h.offset


def contains(h: Hyperplane, v: Vertex) -> bool:
    return evaluate(h, v) == 0


def slices(h: Hyperplane, e: Edge) -> bool:
    """True iff ``h`` meets the edge in exactly one interior point."""
    _check_dim(h, e.dim)
    v, w = e.endpoints
    return evaluate(h, v) * evaluate(h, w) < 0


def support(h: Hyperplane) -> SupportMask:
    mask = 0
    for i, a in enumerate(h.normal):
        if a:
            mask |= 1 << i
    return SupportMask(h.dim, mask)


def support_bits(normal: Sequence[int]) -> int:
    mask = 0
    for i, a in enumerate(normal):
        if a:
            mask |= 1 << i
    return mask


def is_skew(h: Hyperplane) -> bool:
    return all(h.normal)


# ---------------------------------------------------------------------------
# bit-parallel whole-cube evaluation


@lru_cache(maxsize=4096)
def vertex_values(normal: tuple[int, ...]) -> np.ndarray:
    """``<normal, v>`` for every vertex ``v`` in bit order.

    int64 when the magnitudes allow it, object (exact Python ints) otherwise.
    The returned array is read-only because it is cached.
    """
    n = len(normal)
    _check_bitset_dim(n)
    bound = sum(abs(a) for a in normal)
    dtype = np.int64 if bound < _INT64_SAFE else object
    vals = np.zeros(1, dtype=dtype)
    for a in normal:
        vals = np.concatenate([vals, vals + a])
    vals.setflags(write=False)
    return vals


def _scaled(h: Hyperplane):
    """Values ``q*<a,v>`` and ``p`` with ``b = p/q``, overflow-safe."""
    vals = vertex_values(h.normal)
    p, q = h.offset.numerator, h.offset.denominator
    bound = sum(abs(a) for a in h.normal) * q + abs(p)
    if vals.dtype != object and bound >= _INT64_SAFE:
        vals = vals.astype(object)
    return vals * q, p


def covered_array(h: Hyperplane) -> np.ndarray:
    vals, p = _scaled(h)
    return np.asarray(vals == p, dtype=bool)


def sign_array(h: Hyperplane) -> np.ndarray:
    """Sign of ``<a,v> - b`` for every vertex, as int8."""
    vals, p = _scaled(h)
    diff = vals - p
    return (np.asarray(diff > 0, dtype=np.int8) - np.asarray(diff < 0, dtype=np.int8))


def edge_pairs(arr: np.ndarray, n: int, direction: int):
    """Split a per-vertex array into (base, top) arrays for one direction.

    Both outputs are in rank order, so together over directions 1..n they
    follow the edge index layout.
    """
    d = direction - 1
    shaped = arr.reshape(1 << (n - 1 - d), 2, 1 << d)
    return shaped[:, 0, :].ravel(), shaped[:, 1, :].ravel()


def sliced_array(h: Hyperplane) -> np.ndarray:
    n = h.dim
    signs = sign_array(h)
    parts = []
    for direction in range(1, n + 1):
        lo, hi = edge_pairs(signs, n, direction)
        parts.append(lo * hi < 0)
    return np.concatenate(parts)


def covered_set(h: Hyperplane, n: int | None = None) -> VertexSet:
    if n is not None:
        _check_dim(h, n)
    return VertexSet(h.dim, bools_to_mask(covered_array(h)))


def sliced_set(h: Hyperplane, n: int | None = None) -> EdgeSet:
    if n is not None:
        _check_dim(h, n)
    return EdgeSet(h.dim, bools_to_mask(sliced_array(h)))


@lru_cache(maxsize=32)
def vertex_matrix(n: int) -> np.ndarray:
    """``2**n x n`` 0/1 matrix; row ``v`` holds the coordinates of vertex ``v``."""
    _check_bitset_dim(n)
    idx = np.arange(1 << n, dtype=np.int64)
    m = ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)
    m.setflags(write=False)
    return m
