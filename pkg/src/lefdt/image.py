"""Finite digital images, maps between them, and the basic point-set queries.

Points are tuples of ints.  Every image keeps its points sorted
lexicographically; that order is the canonical basis order used by the
chain complexes, so a point is usually handled through its index.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DomainError

Point = tuple


@dataclass(frozen=True)
class CT:
    """c_t adjacency: at most ``t`` coordinates differ by one, the rest agree."""

    t: int


@dataclass(frozen=True)
class Explicit:
    """An explicit symmetric, antireflexive edge set (unordered point pairs)."""

    edges: frozenset

    def __init__(self, edges: Iterable):
        normalized = set()
        for e in edges:
            pair = frozenset(tuple(p) for p in e)
            if len(pair) != 2:
                raise DomainError(f"explicit edge {tuple(e)!r} is a self pair")
            normalized.add(pair)
        object.__setattr__(self, "edges", frozenset(normalized))


Adjacency = Union[CT, Explicit]


def _ct_adjacent(p, q, t):
    diff = 0
    for a, b in zip(p, q):
        d = a - b
        if d:
            if d != 1 and d != -1:
                return False
            diff += 1
            if diff > t:
                return False
    return diff > 0


@dataclass(frozen=True)
class DigitalImage:
    """A finite set of lattice points in Z^n with an adjacency relation.

    Parameters
    ----------
    dimension : int
        Ambient dimension ``n``; every point has ``n`` coordinates.
    points : iterable of tuple
        The point set.  Stored sorted and deduplicated.
    adjacency : CT or Explicit
        ``CT(t)`` with ``1 <= t <= n`` or an explicit edge set.
    """

    dimension: int
    points: tuple
    adjacency: Adjacency = CT(1)

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError("ambient dimension must be >= 1")
        pts = sorted({tuple(int(c) for c in p) for p in self.points})
        for p in pts:
            if len(p) != self.dimension:
                raise DomainError(f"point {p} does not have {self.dimension} coordinates")
        object.__setattr__(self, "points", tuple(pts))
        adj = self.adjacency
        if isinstance(adj, CT):
            if not 1 <= adj.t <= self.dimension:
                raise DomainError(f"c_{adj.t} adjacency needs 1 <= t <= {self.dimension}")
        elif isinstance(adj, Explicit):
            members = set(pts)
            for e in adj.edges:
                for p in e:
                    if p not in members:
                        raise DomainError(f"explicit edge references non-member point {p}")
        else:
            raise DomainError(f"unknown adjacency specification {adj!r}")

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self.index

    def __repr__(self):
        adj = f"c{self.adjacency.t}" if isinstance(self.adjacency, CT) else "explicit"
        return f"DigitalImage(n={self.dimension}, #X={len(self)}, {adj})"

    @property
    def is_c1(self) -> bool:
        return isinstance(self.adjacency, CT) and self.adjacency.t == 1

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def idx(self, p) -> int:
        try:
            return self.index[tuple(p)]
        except KeyError:
            raise DomainError(f"point {tuple(p)} is not in the image") from None

    @cached_property
    def neighbors(self) -> tuple:
        """Adjacency lists by point index, each sorted ascending."""
        n = len(self.points)
        nbrs = [[] for _ in range(n)]
        adj = self.adjacency
        if isinstance(adj, Explicit):
            for e in adj.edges:
                a, b = (self.index[p] for p in e)
                nbrs[a].append(b)
                nbrs[b].append(a)
        elif 3 ** self.dimension <= 4 * n:
            offsets = [
                off
                for off in itertools.product((-1, 0, 1), repeat=self.dimension)
                if 0 < sum(1 for c in off if c) <= adj.t
            ]
            for i, p in enumerate(self.points):
                for off in offsets:
                    j = self.index.get(tuple(a + b for a, b in zip(p, off)))
                    if j is not None:
                        nbrs[i].append(j)
        else:
            for i, j in itertools.combinations(range(n), 2):
                if _ct_adjacent(self.points[i], self.points[j], adj.t):
                    nbrs[i].append(j)
                    nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edges(self) -> tuple:
        """Sorted index pairs ``(i, j)`` with ``i < j``."""
        return tuple((i, j) for i, nb in enumerate(self.neighbors) for j in nb if i < j)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        n = len(self.points)
        a = np.zeros((n, n), dtype=np.uint8)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    @cached_property
    def closeness_matrix(self) -> np.ndarray:
        """Adjacent-or-equal relation as a 0/1 matrix."""
        c = self.adjacency_matrix.copy()
        np.fill_diagonal(c, 1)
        return c

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs path lengths; -1 marks disconnected pairs."""
        n = len(self.points)
        dist = np.full((n, n), -1, dtype=np.int64)
        for s in range(n):
            dist[s, s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.neighbors[u]:
                    if dist[s, v] < 0:
                        dist[s, v] = dist[s, u] + 1
                        queue.append(v)
        return dist

    @cached_property
    def components(self) -> tuple:
        seen = [-1] * len(self.points)
        comps = []
        for s in range(len(self.points)):
            if seen[s] >= 0:
                continue
            comp = [s]
            seen[s] = len(comps)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.neighbors[u]:
                    if seen[v] < 0:
                        seen[v] = len(comps)
                        comp.append(v)
                        queue.append(v)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def subimage(self, points: Iterable) -> "DigitalImage":
        """The induced subimage on ``points``."""
        pts = {tuple(p) for p in points}
        for p in pts:
            self.idx(p)
        adj = self.adjacency
        if isinstance(adj, Explicit):
            adj = Explicit(e for e in adj.edges if e <= pts)
        return DigitalImage(self.dimension, tuple(pts), adj)


@dataclass(frozen=True)
class DigitalMap:
    """A total function between the point sets of two digital images.

    ``images[i]`` is the codomain index of the image of domain point ``i``.
    """

    domain: DigitalImage
    codomain: DigitalImage
    images: tuple = field(default=())

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        if len(imgs) != len(self.domain):
            raise DomainError("map must assign a value to every domain point")
        m = len(self.codomain)
        for v in imgs:
            if not 0 <= v < m:
                raise DomainError(f"codomain index {v} out of range")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_mapping(cls, domain, codomain, assignment: Mapping) -> "DigitalMap":
        imgs = []
        for p in domain.points:
            if p not in assignment:
                raise DomainError(f"map is undefined at {p}")
            imgs.append(codomain.idx(assignment[p]))
        return cls(domain, codomain, tuple(imgs))

    @classmethod
    def from_function(cls, domain, codomain, fn) -> "DigitalMap":
        return cls(domain, codomain, tuple(codomain.idx(fn(p)) for p in domain.points))

    def __call__(self, p) -> Point:
        return self.codomain.points[self.images[self.domain.idx(p)]]

    def __repr__(self):
        return f"DigitalMap({self.images})"

    @property
    def is_self_map(self) -> bool:
        return self.domain == self.codomain

    def as_dict(self) -> dict:
        pts = self.codomain.points
        return {p: pts[v] for p, v in zip(self.domain.points, self.images)}


def _check_member(img, *ps):
    for p in ps:
        img.idx(p)


def adjacent(img: DigitalImage, p, q) -> bool:
    _check_member(img, p, q)
    i, j = img.idx(p), img.idx(q)
    return j in img.neighbors[i]


def close(img: DigitalImage, p, q) -> bool:
    """Adjacent or equal."""
    _check_member(img, p, q)
    return tuple(p) == tuple(q) or adjacent(img, p, q)


def is_continuous(f: DigitalMap) -> bool:
    c = f.codomain.closeness_matrix
    im = f.images
    return all(c[im[i], im[j]] for i, j in f.domain.edges)


def geodesic_distance(img: DigitalImage, p, q):
    """Shortest-path length, or ``math.inf`` when no path exists."""
    d = img.distance_matrix[img.idx(p), img.idx(q)]
    return math.inf if d < 0 else int(d)


def _require_self_map(f):
    if not f.is_self_map:
        raise DomainError("operation needs a self-map (domain == codomain)")


def fixed_points(f: DigitalMap) -> frozenset:
    _require_self_map(f)
    pts = f.domain.points
    return frozenset(pts[i] for i, v in enumerate(f.images) if v == i)


def approx_fixed_indices(f: DigitalMap, n: int) -> list:
    _require_self_map(f)
    if n < 0:
        raise DomainError("n must be nonnegative")
    dist = f.domain.distance_matrix
    return [i for i, v in enumerate(f.images) if 0 <= dist[i, v] <= n]


def approx_fixed_points(f: DigitalMap, n: int = 1) -> frozenset:
    """Points joined to their image by a path of length <= n."""
    pts = f.domain.points
    return frozenset(pts[i] for i in approx_fixed_indices(f, n))


def compose(f: DigitalMap, g: DigitalMap) -> DigitalMap:
    """``f o g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise DomainError("compose(f, g) needs codomain(g) == domain(f)")
    return DigitalMap(g.domain, f.codomain, tuple(f.images[v] for v in g.images))


def identity_map(img: DigitalImage) -> DigitalMap:
    return DigitalMap(img, img, tuple(range(len(img))))


def constant_map(img: DigitalImage, p, codomain: DigitalImage | None = None) -> DigitalMap:
    target = img if codomain is None else codomain
    return DigitalMap(img, target, (target.idx(p),) * len(img))


def inclusion_map(sub: DigitalImage, img: DigitalImage) -> DigitalMap:
    return DigitalMap(sub, img, tuple(img.idx(p) for p in sub.points))


def np_adjacent(u: int, imgs: Sequence[DigitalImage], a: Sequence, b: Sequence) -> bool:
    """Normal product adjacency NP_u on a product of images.

    ``a`` and ``b`` are tuples with one point per factor.  They are adjacent
    when they differ, are adjacent in at most ``u`` factors and equal in all
    others.
    """
    if not (len(imgs) == len(a) == len(b)):
        raise DomainError("tuple arity does not match the number of factors")
    if not 1 <= u <= len(imgs):
        raise DomainError("u must satisfy 1 <= u <= number of factors")
    moved = 0
    for img, x, y in zip(imgs, a, b):
        if tuple(x) == tuple(y):
            _check_member(img, x)
            continue
        if not adjacent(img, x, y):
            return False
        moved += 1
    return 0 < moved <= u


def is_path(img: DigitalImage, vertices: Sequence) -> bool:
    """A nonempty sequence of member points whose consecutive entries are close."""
    if not vertices:
        return False
    idx = [img.idx(p) for p in vertices]
    c = img.closeness_matrix
    return all(c[a, b] for a, b in zip(idx, idx[1:]))
