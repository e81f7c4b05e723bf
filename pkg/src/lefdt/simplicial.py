"""Clique (simplicial) chain complexes of digital images and induced chain maps."""
from __future__ import annotations

import numpy as np

from .errors import InternalError, PreconditionError
from .homalg import ChainComplex, ChainMap, verify_chain_map
from .image import DigitalImage, DigitalMap, is_continuous


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (distinct entries)."""
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def cliques(img: DigitalImage) -> list:
    """All cliques grouped by size, each a sorted tuple of point indices.

    Ordered expansion: every clique is grown from its smallest vertex by
    adding larger common neighbours, so each appears once and the lists
    come out lexicographically sorted.
    """
    higher = [frozenset(j for j in nb if j > i) for i, nb in enumerate(img.neighbors)]
    level = [((i,), higher[i]) for i in range(len(img))]
    out = []
    while level:
        out.append([c for c, _ in level])
        nxt = []
        for c, common in level:
            for j in sorted(common):
                nxt.append((c + (j,), common & higher[j]))
        level = nxt
    return out


def boundary_matrix(lower: list, upper: list) -> np.ndarray:
    pos = {c: i for i, c in enumerate(lower)}
    D = np.zeros((len(lower), len(upper)), dtype=np.int64)
    for col, s in enumerate(upper):
        for i in range(len(s)):
            D[pos[s[:i] + s[i + 1:]], col] += -1 if i % 2 else 1
    return D


def enumerate_simplices(img: DigitalImage) -> ChainComplex:
    """The clique chain complex of ``img``."""
    levels = cliques(img)
    bds = []
    for q, cells in enumerate(levels):
        if q == 0:
            bds.append(np.zeros((0, len(cells)), dtype=np.int64))
        else:
            bds.append(boundary_matrix(levels[q - 1], cells))
    return ChainComplex("simplicial", img, levels, bds)


_cache: dict = {}


def simplicial_complex(img: DigitalImage) -> ChainComplex:
    """Memoised :func:`enumerate_simplices` (images are immutable)."""
    cx = _cache.get(img)
    if cx is None:
        if len(_cache) > 256:
            _cache.clear()
        cx = _cache[img] = enumerate_simplices(img)
    return cx


def simplex_points(cx: ChainComplex, q: int, i: int) -> tuple:
    pts = cx.image.points
    return tuple(pts[v] for v in cx.cells[q][i])


def simplicial_induced_chain_map(f: DigitalMap, source: ChainComplex | None = None,
                                 target: ChainComplex | None = None,
                                 check: bool = True) -> ChainMap:
    """Matrices f_q sending a simplex to the signed simplex spanned by its image.

    A column is zero when the image has fewer than q+1 points, otherwise
    +-1 at the sorted image simplex, the sign being the parity of the
    sorting permutation.
    """
    if check and not is_continuous(f):
        raise PreconditionError("induced chain maps need a continuous map")
    src = source or simplicial_complex(f.domain)
    tgt = target or (src if f.is_self_map and source is not None else simplicial_complex(f.codomain))
    mats = []
    im = f.images
    for q, cells in enumerate(src.cells):
        rows = tgt.dim(q)
        M = np.zeros((rows, len(cells)), dtype=np.int64)
        pos = tgt.positions[q] if q < len(tgt.cells) else {}
        for col, s in enumerate(cells):
            image = [im[v] for v in s]
            key = tuple(sorted(image))
            if len(set(key)) < len(key):
                continue
            row = pos.get(key)
            if row is None:
                raise InternalError(f"image of simplex {s} is not a simplex")
            M[row, col] = permutation_sign(image)
        mats.append(M)
    cm = ChainMap(src, tgt, mats)
    if check and not verify_chain_map(cm):
        raise InternalError("induced simplicial map violates the chain-map identity")
    return cm
