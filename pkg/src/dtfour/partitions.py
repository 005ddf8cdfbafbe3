"""
Plane partitions (torus-fixed points of Hilb(C^3)) and solid partitions
(torus-fixed points of Hilb(C^4)).

Both are stored as sorted tuples of ``(index, height)`` pairs with 1-based
indices: ``((i, j), h)`` for plane partitions, ``((i, j, k), h)`` for solid
ones.  The enumerators stack monotone slabs of one dimension lower; the
``*_oracle`` functions are an unrelated box-by-box DFS used to cross-check
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_SIZE = 8


@dataclass(frozen=True)
class _HeightMap:
    heights: tuple

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(sorted(self.heights)))

    @classmethod
    def from_dict(cls, d):
        return cls(tuple((tuple(k), int(v)) for k, v in d.items() if v))

    def as_dict(self) -> dict:
        return dict(self.heights)

    @property
    def size(self) -> int:
        return sum(h for _, h in self.heights)

    def __len__(self):
        return self.size

    def height(self, *idx) -> int:
        return self.as_dict().get(tuple(idx), 0)

    def boxes(self):
        """All boxes, 1-based, with the height coordinate last."""
        return [idx + (l,) for idx, h in self.heights for l in range(1, h + 1)]

    def is_valid(self) -> bool:
        d = self.as_dict()
        for idx, h in d.items():
            if h < 1 or min(idx) < 1:
                return False
            for axis in range(len(idx)):
                if idx[axis] > 1:
                    prev = idx[:axis] + (idx[axis] - 1,) + idx[axis + 1:]
                    if d.get(prev, 0) < h:
                        return False
        return True

    def flat_key(self, n: int | None = None):
        """Heights in row-major order over the box [1..n]^dim (canonical sort key)."""
        n = self.size if n is None else n
        d = self.as_dict()
        dim = len(self.heights[0][0]) if self.heights else self.dim
        return tuple(d.get(tuple(x + 1 for x in idx), 0) for idx in product(range(n), repeat=dim))

    def nested(self):
        """Height map as nested lists, trailing zeros stripped at every level."""
        d = self.as_dict()
        if not d:
            return []
        dim = len(next(iter(d)))
        ext = [max(idx[a] for idx in d) for a in range(dim)]

        def build(prefix):
            if len(prefix) == dim:
                return d.get(prefix, 0)
            out = [build(prefix + (i,)) for i in range(1, ext[len(prefix)] + 1)]
            while out and not out[-1]:
                out.pop()
            return out

        return build(())

    @classmethod
    def from_nested(cls, data):
        d = {}

        def walk(node, prefix):
            if isinstance(node, list):
                for i, child in enumerate(node, start=1):
                    walk(child, prefix + (i,))
            elif node:
                d[prefix] = int(node)

        walk(data, ())
        return cls.from_dict(d)


@dataclass(frozen=True)
class PlanePartition(_HeightMap):
    dim = 2

    def __repr__(self):
        return f"PlanePartition({self.nested()})"


@dataclass(frozen=True)
class SolidPartition(_HeightMap):
    dim = 3

    def __repr__(self):
        return f"SolidPartition({self.nested()})"


# ---------------------------------------------------------------------------
# layer-by-layer generation
#
# A d-dimensional height map bounded by ``bound`` (a dict on (d-1)-indices) is
# a stack of (d-1)-dimensional slabs, each bounded by the previous one.  For
# d = 1 a "height map" is just a partition (non-increasing row).


def _cells(bound):
    return tuple(sorted(bound))


@lru_cache(maxsize=None)
def _rows(bound: tuple, total: int):
    """Non-increasing rows r_1 >= r_2 >= ... with r_i <= bound[i], sum = total."""
    out = []

    def rec(i, rem, cap, row):
        if rem == 0:
            out.append(tuple(row))
            return
        if i >= len(bound):
            return
        for v in range(min(cap, bound[i], rem), 0, -1):
            rec(i + 1, rem - v, v, row + [v])

    rec(0, total, total, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _plane_bounded(bound: tuple, total: int):
    """Plane partitions (tuple of rows) with entries bounded by ``bound`` rows."""
    out = []

    def rec(r, rem, prev_row, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if r >= len(bound):
            return
        cap = tuple(min(a, b) for a, b in zip(prev_row, bound[r])) if prev_row is not None else bound[r]
        for s in range(min(rem, sum(cap)), 0, -1):
            for row in _rows(cap, s):
                rec(r + 1, rem - s, row, acc + [row])

    rec(0, total, None, [])
    return tuple(out)


def _plane_tuples(n: int):
    full = tuple((n,) * n for _ in range(n))
    return _plane_bounded(full, n)


def _solid_tuples(n: int):
    """Solid partitions as tuples of plane-partition slabs (slab k holds pi_{ij k})."""
    out = []

    def rec(rem, prev, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        bound = prev if prev is not None else tuple((n,) * n for _ in range(n))
        for s in range(min(rem, sum(map(sum, bound))), 0, -1):
            for slab in _plane_bounded(bound, s):
                # pad slab to the bound's shape for the next level
                padded = tuple(
                    tuple(slab[i][j] if i < len(slab) and j < len(slab[i]) else 0 for j in range(len(bound[i])))
                    for i in range(len(bound))
                )
                rec(rem - s, padded, acc + [slab])

    rec(n, None, [])
    return out


def _plane_from_rows(rows) -> PlanePartition:
    return PlanePartition(tuple(((i + 1, j + 1), h) for i, row in enumerate(rows) for j, h in enumerate(row) if h))


def _solid_from_slabs(slabs) -> SolidPartition:
    return SolidPartition(tuple(
        ((i + 1, j + 1, k + 1), h)
        for k, slab in enumerate(slabs)
        for i, row in enumerate(slab)
        for j, h in enumerate(row) if h
    ))


def _check_size(n):
    if n < 0:
        raise ValueError("size must be non-negative")
    if n > MAX_SIZE:
        raise ValueError(f"size {n} exceeds supported maximum {MAX_SIZE}")


@lru_cache(maxsize=None)
def _plane_list(n: int):
    parts = [_plane_from_rows(r) for r in _plane_tuples(n)] if n else [PlanePartition(())]
    return tuple(sorted(parts, key=lambda p: p.flat_key(n)))


@lru_cache(maxsize=None)
def _solid_list(n: int):
    parts = [_solid_from_slabs(s) for s in _solid_tuples(n)] if n else [SolidPartition(())]
    return tuple(sorted(parts, key=lambda p: p.flat_key(n)))


def enumerate_plane(n: int):
    """Yield every plane partition of n once, in canonical order."""
    _check_size(n)
    yield from _plane_list(n)


def enumerate_solid(n: int):
    """Yield every solid partition of n once, in canonical order."""
    _check_size(n)
    yield from _solid_list(n)


def divisor_support(pi: SolidPartition) -> PlanePartition | None:
    """The plane partition of a solid partition living in the divisor l = 1.

    Returns None when some pi_{ijk} > 1, i.e. the subscheme is not supported
    scheme-theoretically on {x4 = 0}.
    """
    if any(h != 1 for _, h in pi.heights):
        return None
    counts = {}
    for (i, j, _k), _h in pi.heights:
        counts[(i, j)] = counts.get((i, j), 0) + 1
    return PlanePartition.from_dict(counts)


def lift_plane(lam: PlanePartition) -> SolidPartition:
    """Inverse of :func:`divisor_support` on height-one solid partitions."""
    return SolidPartition(tuple(((i, j, k), 1) for (i, j), h in lam.heights for k in range(1, h + 1)))


# ---------------------------------------------------------------------------
# independent oracle: grow order ideals one box at a time, deduplicate by set


def _ideal_oracle(n: int, dim: int):
    level = {frozenset()}
    origin = (0,) * dim
    for _ in range(n):
        nxt = set()
        for ideal in level:
            cands = {origin} if not ideal else set()
            for b in ideal:
                for a in range(dim):
                    c = b[:a] + (b[a] + 1,) + b[a + 1:]
                    if c in ideal:
                        continue
                    if all(c[e] == 0 or c[:e] + (c[e] - 1,) + c[e + 1:] in ideal for e in range(dim)):
                        cands.add(c)
            for c in cands:
                nxt.add(ideal | {c})
        level = nxt
    return level


def solid_oracle(n: int):
    """All solid partitions of n as frozensets of 0-based 4d boxes."""
    return _ideal_oracle(n, 4)


def plane_oracle(n: int):
    """All plane partitions of n as frozensets of 0-based 3d boxes."""
    return _ideal_oracle(n, 3)


def box_set(p) -> frozenset:
    """0-based box set of a plane or solid partition (matches the oracle encoding)."""
    return frozenset(tuple(x - 1 for x in b) for b in p.boxes())
