"""Continuous-map search over finite images, with resource guards.

The enumeration order visits domain points breadth-first from the least
point of each component, so each newly placed point already has an
assigned neighbour whose image seeds its candidate list.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceGuardError
from .image import DigitalImage, DigitalMap

DEFAULT_MAX_MAPS = 10**7
DEFAULT_MAX_NODES = 10**8


@dataclass(frozen=True)
class Guard:
    """Caps on enumerated maps and on visited partial assignments."""

    max_maps: int = DEFAULT_MAX_MAPS
    max_nodes: int = DEFAULT_MAX_NODES

    @classmethod
    def from_env(cls, value: str | None = None) -> "Guard":
        """Parse ``LEFDT_GUARD``: ``"max_maps=N,max_nodes=M"`` or a bare ``N``."""
        text = os.environ.get("LEFDT_GUARD") if value is None else value
        if not text:
            return cls()
        fields = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" in part:
                key, val = part.split("=", 1)
                key = key.strip().replace("-", "_")
                if key in ("maps", "max_maps"):
                    fields["max_maps"] = int(float(val))
                elif key in ("nodes", "max_nodes"):
                    fields["max_nodes"] = int(float(val))
                else:
                    raise DomainError(f"unknown guard field {key!r}")
            else:
                fields["max_maps"] = int(float(part))
        return cls(**fields)


def default_guard() -> Guard:
    return Guard.from_env()


def bfs_order(img: DigitalImage):
    """Search order plus CSR lists of earlier-placed neighbours."""
    n = len(img)
    pos = [-1] * n
    order = []
    for s in range(n):
        if pos[s] >= 0:
            continue
        pos[s] = len(order)
        order.append(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in img.neighbors[u]:
                if pos[v] < 0:
                    pos[v] = len(order)
                    order.append(v)
                    queue.append(v)
    back_ptr = [0]
    back_idx = []
    for k, v in enumerate(order):
        earlier = sorted((u for u in img.neighbors[v] if pos[u] < k), key=lambda u: pos[u])
        back_idx.extend(earlier)
        back_ptr.append(len(back_idx))
    return (np.asarray(order, dtype=np.int32), np.asarray(back_ptr, dtype=np.int32),
            np.asarray(back_idx, dtype=np.int32))


def _order_cache(img):
    cached = img.__dict__.get("_bfs_order")
    if cached is None:
        cached = bfs_order(img)
        img.__dict__["_bfs_order"] = cached
    return cached


def _raise_on_status(status, guard, what):
    if status == 1:
        raise ResourceGuardError(f"{what}: more than {guard.max_maps} maps (guard max_maps)")
    if status == 2:
        raise ResourceGuardError(
            f"{what}: more than {guard.max_nodes} partial assignments (guard max_nodes)")


def full_mask(domain: DigitalImage, codomain: DigitalImage) -> np.ndarray:
    return np.ones((len(domain), len(codomain)), dtype=np.uint8)


def map_array(domain: DigitalImage, codomain: DigitalImage, allowed=None,
              guard: Guard | None = None, kernels=None) -> np.ndarray:
    """All continuous maps domain -> codomain (restricted by ``allowed``) as rows."""
    guard = guard or default_guard()
    kernels = kernels or _kernels.backend
    order, bp, bi = _order_cache(domain)
    if allowed is None:
        allowed = full_mask(domain, codomain)
    if len(codomain) == 0 and len(domain) > 0:
        return np.zeros((0, len(domain)), dtype=np.int32)
    maps, _, status = kernels.enumerate_maps(order, bp, bi, codomain.closeness_matrix,
                                             np.ascontiguousarray(allowed, dtype=np.uint8),
                                             guard.max_maps, guard.max_nodes)
    _raise_on_status(status, guard, "map enumeration")
    return maps


def iter_continuous_maps(domain, codomain, guard=None):
    for row in map_array(domain, codomain, guard=guard):
        yield DigitalMap(domain, codomain, tuple(int(v) for v in row))


def scan(img: DigitalImage, stat: int, complex_=None, radius: int = 0,
         guard: Guard | None = None, kernels=None):
    """Scan all continuous self-maps of ``img`` for one statistic.

    Returns ``(witnesses, count)``: attained value -> first map (index tuple).
    """
    guard = guard or default_guard()
    kernels = kernels or _kernels.backend
    order, bp, bi = _order_cache(img)
    if complex_ is not None:
        cell_ptr, cell_verts, cell_dims, cubical = complex_.cell_arrays()
        if kernels is _kernels.compiled_backend and len(cell_ptr) > 1 and \
                int(np.max(np.diff(cell_ptr))) > _kernels.MAX_KERNEL_CELL:
            kernels = _kernels.python_backend
    else:
        cell_ptr = np.zeros(1, dtype=np.int32)
        cell_verts = np.zeros(0, dtype=np.int32)
        cell_dims = np.zeros(0, dtype=np.int32)
        cubical = 0
    dist = img.distance_matrix
    witnesses, count, _, status = kernels.scan_maps(
        order, bp, bi, img.closeness_matrix, full_mask(img, img), stat,
        cell_ptr, cell_verts, cell_dims, cubical, dist, radius,
        guard.max_maps, guard.max_nodes)
    _raise_on_status(status, guard, "map scan")
    return witnesses, count


def lefschetz_values(maps: np.ndarray, complex_, kernels=None) -> np.ndarray:
    """Chain-level Lefschetz numbers of the self-maps given as rows."""
    kernels = kernels or _kernels.backend
    cell_ptr, cell_verts, cell_dims, cubical = complex_.cell_arrays()
    if kernels is _kernels.compiled_backend and len(cell_ptr) > 1 and \
            int(np.max(np.diff(cell_ptr))) > _kernels.MAX_KERNEL_CELL:
        kernels = _kernels.python_backend
    return kernels.lefschetz_batch(np.ascontiguousarray(maps, dtype=np.int32),
                                   cell_ptr, cell_verts, cell_dims, cubical)


def count_by_closeness_trace(img: DigitalImage) -> int:
    """Independent count of self-maps of a cycle: trace of C^n for the
    closeness matrix C (closed walks of length n).  Valid for cycles only."""
    C = [[int(x) for x in row] for row in img.closeness_matrix.tolist()]
    n = len(C)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(n):
        P = [[sum(P[i][k] * C[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return sum(P[i][i] for i in range(n))


def random_continuous_map(domain: DigitalImage, codomain: DigitalImage, rng=None,
                          max_restarts: int = 1000) -> DigitalMap:
    """A continuous map drawn by randomized backtracking.

    Not uniform over all continuous maps, but every continuous map has
    positive probability.  ``rng`` is a ``random.Random`` (or a seed).
    """
    import random

    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if len(domain) == 0:
        return DigitalMap(domain, codomain, ())
    if len(codomain) == 0:
        raise DomainError("no map into an empty image")
    order, bp, bi = _order_cache(domain)
    C = codomain.closeness_matrix
    m = len(codomain)
    n = len(domain)
    for _ in range(max_restarts):
        assign = [-1] * n
        ok = True
        for k in range(n):
            v = int(order[k])
            back = [int(u) for u in bi[bp[k]:bp[k + 1]]]
            if back:
                cands = [y for y in range(m) if all(C[assign[u], y] for u in back)]
            else:
                cands = list(range(m))
            if not cands:
                ok = False
                break
            assign[v] = rng.choice(cands)
        if ok:
            return DigitalMap(domain, codomain, tuple(assign))
    # a constant map always exists when the codomain is nonempty
    return DigitalMap(domain, codomain, (rng.randrange(m),) * n)
