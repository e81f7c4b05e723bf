"""c_1-cubical chain complexes of images in Z^n and induced cubical chain maps.

A q-cube is stored by its vertex indices in *bitmask order*: with
nondegenerate directions ``j_1 < ... < j_q`` and lower corner ``p``, entry
``b`` is the vertex ``p + sum(e_{j_i} for bit i set in b)``.  Induced maps
then reduce to hypercube automorphisms ``b -> pi(b) xor r`` whose sign is
``sgn(pi) * (-1)**popcount(r)``.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

import numpy as np

from .errors import (DimensionGuardError, DomainError, InternalError,
                     PreconditionError, UnsupportedAdjacencyError)
from .homalg import ChainComplex, ChainMap, verify_chain_map
from .image import DigitalImage, DigitalMap, Explicit, is_continuous
from .simplicial import permutation_sign

MAX_GUARANTEED_DIMENSION = 4


class ElementaryCube(NamedTuple):
    """Product of elementary intervals ``(a, a)`` or ``(a, a + 1)``."""

    intervals: tuple

    @classmethod
    def from_corner(cls, corner, directions) -> "ElementaryCube":
        ds = set(directions)
        return cls(tuple((c, c + 1) if i in ds else (c, c) for i, c in enumerate(corner)))

    @property
    def dimension(self) -> int:
        return sum(1 for a, b in self.intervals if a != b)

    @property
    def directions(self) -> tuple:
        return tuple(i for i, (a, b) in enumerate(self.intervals) if a != b)

    @property
    def corner(self) -> tuple:
        return tuple(a for a, _ in self.intervals)

    def vertices(self) -> list:
        """Vertices in bitmask order over the nondegenerate directions."""
        dirs = self.directions
        out = []
        for b in range(1 << len(dirs)):
            v = list(self.corner)
            for i, d in enumerate(dirs):
                if b >> i & 1:
                    v[d] += 1
            out.append(tuple(v))
        return out


def face(sigma: ElementaryCube, i: int, side: str) -> ElementaryCube:
    """Front (``"A"``, min endpoint) or back (``"B"``, max endpoint) face in
    coordinate ``i`` (0-based)."""
    if not 0 <= i < len(sigma.intervals):
        raise DomainError(f"coordinate index {i} out of range")
    a, b = sigma.intervals[i]
    if side in ("A", "front"):
        t = (a, a)
    elif side in ("B", "back"):
        t = (b, b)
    else:
        raise DomainError(f"unknown face side {side!r}")
    return ElementaryCube(sigma.intervals[:i] + (t,) + sigma.intervals[i + 1:])


def cube_boundary(sigma: ElementaryCube) -> dict:
    """Boundary as ``{face: coefficient}`` with
    ``sum_i (-1)^i (A_{j_i} sigma - B_{j_i} sigma)``, i counted from 1."""
    out: dict = {}
    for i, j in enumerate(sigma.directions, start=1):
        s = -1 if i % 2 else 1
        for side, coeff in (("A", s), ("B", -s)):
            fc = face(sigma, j, side)
            out[fc] = out.get(fc, 0) + coeff
    return {k: v for k, v in out.items() if v}


def _has_short_cycles(img: DigitalImage) -> bool:
    nb = [set(x) for x in img.neighbors]
    for i, j in img.edges:
        if nb[i] & nb[j]:
            return True
    for i in range(len(img)):
        for a, b in itertools.combinations(sorted(nb[i]), 2):
            if len((nb[a] & nb[b]) - {i}) > 0:
                return True
    return False


def enumerate_cubes(img: DigitalImage) -> ChainComplex:
    """The c_1-cubical chain complex.

    Explicit-adjacency images are accepted only when their graph has no
    3- or 4-cycles; their complex is the 1-skeleton (vertices and edges
    oriented by the point order), which is what any c_1 embedding would
    give.
    """
    if isinstance(img.adjacency, Explicit):
        if _has_short_cycles(img):
            raise UnsupportedAdjacencyError(
                "cubical homology needs c_1 adjacency (explicit graphs only without 3/4-cycles)")
        cells = [[(i,) for i in range(len(img))]]
        if img.edges:
            cells.append(list(img.edges))
        bds = [np.zeros((0, len(cells[0])), dtype=np.int64)]
        if len(cells) > 1:
            D = np.zeros((len(cells[0]), len(cells[1])), dtype=np.int64)
            for col, (a, b) in enumerate(cells[1]):
                D[a, col] -= 1
                D[b, col] += 1
            bds.append(D)
        return ChainComplex("cubical", img, cells, bds)
    if not img.is_c1:
        raise UnsupportedAdjacencyError("cubical homology is defined for c_1 adjacency only")
    n = img.dimension
    members = img.index
    level = {(p, ()) for p in img.points}
    by_dim = []
    while level:
        by_dim.append(level)
        nxt = set()
        for corner, dirs in level:
            start = dirs[-1] + 1 if dirs else 0
            for d in range(start, n):
                shifted = corner[:d] + (corner[d] + 1,) + corner[d + 1:]
                if (shifted, dirs) in level:
                    nxt.add((corner, dirs + (d,)))
        level = nxt
    labels = []
    cells = []
    for level in by_dim:
        cubes = sorted(ElementaryCube.from_corner(c, d) for c, d in level)
        labels.append(cubes)
        cells.append([tuple(members[v] for v in cube.vertices()) for cube in cubes])
    bds = [np.zeros((0, len(cells[0])), dtype=np.int64)] if cells else []
    for q in range(1, len(cells)):
        pos = {c: i for i, c in enumerate(labels[q - 1])}
        D = np.zeros((len(cells[q - 1]), len(cells[q])), dtype=np.int64)
        for col, cube in enumerate(labels[q]):
            for fc, coeff in cube_boundary(cube).items():
                D[pos[fc], col] += coeff
        bds.append(D)
    return ChainComplex("cubical", img, cells, bds, labels=labels)


_cache: dict = {}


def cubical_complex(img: DigitalImage) -> ChainComplex:
    cx = _cache.get(img)
    if cx is None:
        if len(_cache) > 256:
            _cache.clear()
        cx = _cache[img] = enumerate_cubes(img)
    return cx


def cube_automorphism_sign(perm) -> int:
    """Sign of a hypercube-vertex bijection given in bitmask coordinates.

    Raises ``InternalError`` if ``perm`` is not of the form
    ``b -> pi(b) xor r``.
    """
    size = len(perm)
    q = size.bit_length() - 1
    r = perm[0]
    pi = []
    for i in range(q):
        e = perm[1 << i] ^ r
        if e == 0 or e & (e - 1):
            raise InternalError("cube vertex map is not a cube automorphism")
        pi.append(e.bit_length() - 1)
    for b in range(size):
        expect = r
        for i in range(q):
            if b >> i & 1:
                expect ^= 1 << pi[i]
        if perm[b] != expect:
            raise InternalError("cube vertex map is not a cube automorphism")
    sign = permutation_sign(pi)
    return -sign if bin(r).count("1") % 2 else sign


def check_dimension_guard(f: DigitalMap, unsafe_high_dimension: bool = False):
    for img in (f.domain, f.codomain):
        if img.is_c1 and img.dimension > MAX_GUARANTEED_DIMENSION and not unsafe_high_dimension:
            raise DimensionGuardError(
                f"cubical chain maps are only guaranteed for ambient dimension <= "
                f"{MAX_GUARANTEED_DIMENSION} (got {img.dimension}); "
                "pass unsafe_high_dimension=True to run the empirical check")


def cubical_induced_chain_map(f: DigitalMap, source: ChainComplex | None = None,
                              target: ChainComplex | None = None, check: bool = True,
                              unsafe_high_dimension: bool = False) -> ChainMap:
    """Matrices fbar_q of the map induced on c_1-cubical chains.

    A q-cube whose image has fewer than 2**q points goes to 0.  Otherwise
    the image is a q-cube tau and the column is ``sign * tau`` with the
    direction-permutation times reversal-parity sign.
    """
    if check and not is_continuous(f):
        raise PreconditionError("induced chain maps need a continuous map")
    check_dimension_guard(f, unsafe_high_dimension)
    src = source or cubical_complex(f.domain)
    tgt = target or (src if f.is_self_map and source is not None else cubical_complex(f.codomain))
    im = f.images
    mats = []
    for q, cells in enumerate(src.cells):
        rows = tgt.dim(q)
        M = np.zeros((rows, len(cells)), dtype=np.int64)
        lookup = _vertex_set_lookup(tgt, q)
        for col, s in enumerate(cells):
            image = [im[v] for v in s]
            if len(set(image)) < len(image):
                continue
            row = lookup.get(frozenset(image))
            if row is None:
                raise InternalError(f"image of cube {s} is not an elementary cube")
            where = {v: k for k, v in enumerate(tgt.cells[q][row])}
            M[row, col] = cube_automorphism_sign([where[v] for v in image])
        mats.append(M)
    cm = ChainMap(src, tgt, mats)
    if check and not verify_chain_map(cm):
        raise InternalError("induced cubical map violates the chain-map identity")
    return cm


def _vertex_set_lookup(cx: ChainComplex, q: int) -> dict:
    store = cx.__dict__.setdefault("_vertex_sets", {})
    if q not in store:
        cells = cx.cells[q] if q < len(cx.cells) else ()
        store[q] = {frozenset(c): i for i, c in enumerate(cells)}
    return store[q]
