"""Homotopy and strong homotopy of self-maps, decided by breadth-first
search over one-step moves, plus the spectra and reductions built on it.

Two continuous maps g, h: X -> Y are one-step homotopic when
``g(x) <-> h(x)`` for every x (ordinary) or ``g(x) <-> h(y)`` for every
pair ``x <-> y`` (strong), where ``<->`` is adjacent-or-equal.  A homotopy
of any length is a path in the graph of these moves.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .enumeration import Guard, default_guard, map_array, scan
from .errors import DomainError, PreconditionError, ResourceGuardError
from .cubical import check_dimension_guard
from .image import DigitalImage, DigitalMap, compose, identity_map, inclusion_map, is_continuous
from .lefschetz import THEORIES, complex_for, induced_chain_map

# ---------------------------------------------------------------- one step


def _kind(strong: bool) -> str:
    return "strong" if strong else "ordinary"


def _require_continuous(*maps):
    for f in maps:
        if not is_continuous(f):
            raise PreconditionError("homotopy questions need continuous maps")


def step_mask(g_images, domain: DigitalImage, codomain: DigitalImage, strong: bool) -> np.ndarray:
    """``mask[x, y] = 1`` iff some h one step from g may have h(x) = y.

    The one-step relations constrain each value independently, so a map h
    is one step from g exactly when it is continuous and follows the mask.
    """
    C = codomain.closeness_matrix
    rows = C[np.asarray(g_images, dtype=np.intp)]
    if not strong:
        return np.ascontiguousarray(rows, dtype=np.uint8)
    bad = domain.closeness_matrix.astype(np.int64) @ (1 - rows).astype(np.int64)
    return np.ascontiguousarray(bad == 0, dtype=np.uint8)


def _one_step_arrays(g, h, dom, cod, strong) -> bool:
    C = cod.closeness_matrix
    g = np.asarray(g)
    h = np.asarray(h)
    if not strong:
        return bool(np.all(C[g, h]))
    Nd = dom.closeness_matrix.astype(bool)
    return bool(np.all(C[np.ix_(g, h)][Nd]))


def one_step_homotopic(g: DigitalMap, h: DigitalMap, strong: bool = False) -> bool:
    """Whether g and h are joined by a homotopy of length one."""
    if g.domain != h.domain or g.codomain != h.codomain:
        raise DomainError("maps must share domain and codomain")
    _require_continuous(g, h)
    return _one_step_arrays(g.images, h.images, g.domain, g.codomain, strong)


@dataclass(frozen=True)
class HomotopyCertificate:
    """Maps g_0, ..., g_m with consecutive pairs one step apart."""

    steps: tuple
    kind: str = "ordinary"

    @property
    def start(self) -> DigitalMap:
        return self.steps[0]

    @property
    def end(self) -> DigitalMap:
        return self.steps[-1]

    def __len__(self):
        return len(self.steps) - 1

    def verify(self) -> bool:
        if not self.steps:
            return False
        strong = self.kind == "strong"
        first = self.steps[0]
        for g in self.steps:
            if g.domain != first.domain or g.codomain != first.codomain or not is_continuous(g):
                return False
        return all(_one_step_arrays(a.images, b.images, first.domain, first.codomain, strong)
                   for a, b in zip(self.steps, self.steps[1:]))

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "steps": [[[i, v] for i, v in enumerate(g.images)] for g in self.steps]}


# ------------------------------------------------------------ enumeration


def enumerate_continuous_self_maps(img: DigitalImage, guard: Guard | None = None):
    """Yield every continuous self-map once (search order, see ``enumeration``)."""
    for row in map_array(img, img, guard=guard):
        yield DigitalMap(img, img, tuple(int(v) for v in row))


def count_continuous_self_maps(img: DigitalImage, guard: Guard | None = None) -> int:
    _, count = scan(img, _kernels.STAT_FIXED, guard=guard)
    return count


def neighbours(g, dom: DigitalImage, cod: DigitalImage, strong: bool,
               guard: Guard | None = None, extra_mask=None) -> np.ndarray:
    """All continuous maps one step from ``g`` (including ``g``) as rows."""
    mask = step_mask(g, dom, cod, strong)
    if extra_mask is not None:
        mask = mask & extra_mask
    return map_array(dom, cod, allowed=mask, guard=guard)


def _bfs(start, dom, cod, strong, guard, stop=None, extra_mask=None):
    """BFS over one-step moves.  Returns (parents dict, hit key or None)."""
    guard = guard or default_guard()
    s = np.asarray(start, dtype=np.int32)
    key0 = s.tobytes()
    parents = {key0: None}
    rows = {key0: s}
    if stop is not None and stop(s):
        return parents, rows, key0
    queue = deque([key0])
    while queue:
        key = queue.popleft()
        for nb in neighbours(rows[key], dom, cod, strong, guard, extra_mask):
            k = nb.tobytes()
            if k in parents:
                continue
            parents[k] = key
            rows[k] = nb
            if len(parents) > guard.max_maps:
                raise ResourceGuardError(
                    f"homotopy search: more than {guard.max_maps} maps (guard max_maps)")
            if stop is not None and stop(nb):
                return parents, rows, k
            queue.append(k)
    return parents, rows, None


def _path(parents, rows, key, dom, cod):
    out = []
    while key is not None:
        out.append(DigitalMap(dom, cod, tuple(int(v) for v in rows[key])))
        key = parents[key]
    return out[::-1]


@dataclass
class HomotopyClass:
    representative: DigitalMap
    members: np.ndarray

    def __len__(self):
        return len(self.members)


def homotopy_classes(img: DigitalImage, strong: bool = False, guard: Guard | None = None,
                     codomain: DigitalImage | None = None) -> list:
    """Partition the continuous maps ``img -> codomain`` (default: self-maps).

    Classes are sorted by representative, the lexicographically least
    member (compared on point indices).
    """
    cod = img if codomain is None else codomain
    guard = guard or default_guard()
    maps = map_array(img, cod, guard=guard)
    label = {row.tobytes(): -1 for row in maps}
    classes = []
    for row in maps:
        if label[row.tobytes()] >= 0:
            continue
        cid = len(classes)
        parents, rows, _ = _bfs(row, img, cod, strong, guard)
        members = np.array(sorted(tuple(r) for r in rows.values()), dtype=np.int32)
        members = members.reshape(len(rows), len(img))
        for k in rows:
            label[k] = cid
        classes.append(members)
    out = [HomotopyClass(DigitalMap(img, cod, tuple(int(v) for v in m[0])), m) for m in classes]
    out.sort(key=lambda c: c.representative.images)
    return out


def class_labels(img: DigitalImage, strong: bool = False, guard: Guard | None = None,
                 codomain: DigitalImage | None = None) -> dict:
    """Map (as bytes of its int32 index row) -> class number."""
    out = {}
    for cid, cls in enumerate(homotopy_classes(img, strong, guard, codomain)):
        for row in cls.members:
            out[row.tobytes()] = cid
    return out


def is_homotopic(f: DigitalMap, g: DigitalMap, strong: bool = False, guard: Guard | None = None):
    """Decide f ~ g (or f ~* g).  Returns ``(answer, certificate or None)``."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainError("maps must share domain and codomain")
    _require_continuous(f, g)
    target = np.asarray(g.images, dtype=np.int32)
    parents, rows, hit = _bfs(f.images, f.domain, f.codomain, strong, guard,
                              stop=lambda r: np.array_equal(r, target))
    if hit is None:
        return False, None
    return True, HomotopyCertificate(tuple(_path(parents, rows, hit, f.domain, f.codomain)),
                                     _kind(strong))


def _contractible(img, strong, guard):
    if len(img) == 0:
        return False, None
    _, cert = _contraction(img, strong, guard)
    return cert is not None, cert


def _contraction(img, strong, guard):
    ident = identity_map(img)
    parents, rows, hit = _bfs(ident.images, img, img, strong, guard,
                              stop=lambda r: bool(np.all(r == r[0])))
    if hit is None:
        return False, None
    return True, HomotopyCertificate(tuple(_path(parents, rows, hit, img, img)), _kind(strong))


def is_contractible(img: DigitalImage, guard: Guard | None = None) -> bool:
    """Identity homotopic to a constant map."""
    return _contractible(img, False, guard)[0]


def is_strongly_contractible(img: DigitalImage, guard: Guard | None = None) -> bool:
    """Identity strongly homotopic to a constant map."""
    return _contractible(img, True, guard)[0]


def contraction_certificate(img: DigitalImage, strong: bool = False, guard: Guard | None = None):
    return _contractible(img, strong, guard)[1]


# ----------------------------------------------------------------- spectra


@dataclass
class SpectrumResult:
    """Attained values with one witness map each."""

    values: tuple
    witnesses: dict
    map_count: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {"values": list(self.values),
               "witnesses": {str(v): [[i, j] for i, j in enumerate(self.witnesses[v].images)]
                             for v in self.values},
               "mapCount": self.map_count}
        if self.note:
            out["note"] = self.note
        return out


def _spectrum(img, witnesses, count, note=""):
    values = tuple(sorted(int(v) for v in witnesses))
    wit = {int(v): DigitalMap(img, img, tuple(int(x) for x in witnesses[v])) for v in witnesses}
    return SpectrumResult(values, wit, count, note)


def fixed_point_spectrum(img: DigitalImage, guard: Guard | None = None) -> SpectrumResult:
    """Numbers of fixed points over all continuous self-maps."""
    w, count = scan(img, _kernels.STAT_FIXED, guard=guard)
    return _spectrum(img, w, count)


def has_fpp(img: DigitalImage, guard: Guard | None = None) -> bool:
    """Every continuous self-map has a fixed point."""
    return 0 not in fixed_point_spectrum(img, guard).values


def lefschetz_spectrum(img: DigitalImage, theory: str = "simplicial", reduce: bool = False,
                       max_cluster: int = 3, guard: Guard | None = None,
                       unsafe_high_dimension: bool = False) -> SpectrumResult:
    """Lefschetz values over all continuous self-maps.

    With ``reduce=True`` the image is first thinned to a certified smaller
    model (strong equivalence for the simplicial theory, ordinary for the
    cubical one), the spectrum is computed there, and each witness h is
    carried back as ``i o h o r`` and re-evaluated on the original image.
    """
    if theory not in THEORIES:
        raise DomainError(f"theory must be one of {THEORIES}")
    if theory == "cubical":
        check_dimension_guard(identity_map(img), unsafe_high_dimension)
    if len(img) == 0:
        return SpectrumResult((0,), {}, 0)
    if reduce:
        red = thin(img, strong=(theory == "simplicial"), max_cluster=max_cluster, guard=guard)
        inner = lefschetz_spectrum(red.image, theory, guard=guard,
                                   unsafe_high_dimension=unsafe_high_dimension)
        wit = {}
        for v, h in inner.witnesses.items():
            lifted = compose(red.inclusion, compose(h, red.reduction))
            value = sum((-1) ** q * t for q, t in enumerate(
                induced_chain_map(lifted, theory, unsafe_high_dimension=unsafe_high_dimension)
                .traces()))
            if value != v:
                raise ResourceGuardError("lifted witness does not realise its value")
            wit[v] = lifted
        note = f"computed on a certified {len(red.image)}-point reduction"
        return SpectrumResult(inner.values, wit, inner.map_count, note)
    cx = complex_for(img, theory)
    w, count = scan(img, _kernels.STAT_LEFSCHETZ, complex_=cx, guard=guard)
    return _spectrum(img, w, count)


def afp_spectrum(f: DigitalMap, n: int = 1, strong: bool = False,
                 guard: Guard | None = None) -> SpectrumResult:
    """Numbers of n-approximate fixed points over the (strong) homotopy class of f."""
    if not f.is_self_map:
        raise DomainError("approximate fixed point spectra need a self-map")
    _require_continuous(f)
    if n < 0:
        raise DomainError("n must be nonnegative")
    img = f.domain
    parents, rows, _ = _bfs(f.images, img, img, strong, guard)
    dist = img.distance_matrix
    witnesses = {}
    idx = np.arange(len(img))
    for key in sorted(rows, key=lambda k: tuple(rows[k])):
        r = rows[key]
        d = dist[idx, r]
        count = int(np.sum((d >= 0) & (d <= n)))
        witnesses.setdefault(count, r)
    return _spectrum(img, witnesses, len(rows))


# ------------------------------------------------------------- equivalence


def is_homotopy_equivalent(X: DigitalImage, Y: DigitalImage, strong: bool = False,
                           guard: Guard | None = None):
    """Search for f: X -> Y and g: Y -> X with g f ~ id_X and f g ~ id_Y.

    Returns ``(answer, (f, g) or None)``.
    """
    guard = guard or default_guard()
    if len(X) == 0 or len(Y) == 0:
        return len(X) == len(Y), None
    A = map_array(X, Y, guard=guard)
    B = map_array(Y, X, guard=guard)
    if len(A) * len(B) > guard.max_maps:
        raise ResourceGuardError(f"equivalence search: {len(A) * len(B)} map pairs exceed "
                                 f"guard max_maps={guard.max_maps}")
    lx = class_labels(X, strong, guard)
    ly = class_labels(Y, strong, guard)
    idx_x = lx[np.arange(len(X), dtype=np.int32).tobytes()]
    idx_y = ly[np.arange(len(Y), dtype=np.int32).tobytes()]
    for f in A:
        gf = B[:, f]
        for j in range(len(B)):
            if lx[np.ascontiguousarray(gf[j]).tobytes()] != idx_x:
                continue
            fg = f[B[j]]
            if ly[np.ascontiguousarray(fg, dtype=np.int32).tobytes()] == idx_y:
                return True, (DigitalMap(X, Y, tuple(int(v) for v in f)),
                              DigitalMap(Y, X, tuple(int(v) for v in B[j])))
    return False, None


# ---------------------------------------------------------------- thinning


@dataclass
class ThinResult:
    """A reduction X -> X' with certificates.

    ``reduction`` r: X -> X' and ``inclusion`` i: X' -> X; ``certificate``
    joins id_X to i o r inside X and ``reduced_certificate`` joins id_X' to
    r o i.  ``minimal`` is claimed only by the exhaustive mode.
    """

    image: DigitalImage
    reduction: DigitalMap
    inclusion: DigitalMap
    certificate: HomotopyCertificate
    reduced_certificate: HomotopyCertificate
    minimal: bool = False
    removed: list = field(default_factory=list)

    def verify(self) -> bool:
        X = self.reduction.domain
        ir = compose(self.inclusion, self.reduction)
        ri = compose(self.reduction, self.inclusion)
        return (is_continuous(self.reduction) and is_continuous(self.inclusion)
                and self.certificate.verify() and self.reduced_certificate.verify()
                and self.certificate.start == identity_map(X) and self.certificate.end == ir
                and self.reduced_certificate.start == identity_map(self.image)
                and self.reduced_certificate.end == ri)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.image.points],
                "size": len(self.image),
                "minimal": self.minimal,
                "reduction": [[i, j] for i, j in enumerate(self.reduction.images)],
                "certificate": self.certificate.to_json(),
                "reducedCertificate": self.reduced_certificate.to_json()}


def retraction_targets(img: DigitalImage, x: int) -> list:
    """Neighbours y such that x -> y (identity elsewhere) is continuous.

    That holds iff every neighbour of x is adjacent or equal to y; such a
    retraction is then one step from the identity for both relations.
    """
    C = img.closeness_matrix
    nb = img.neighbors[x]
    return [y for y in nb if all(C[z, y] for z in nb)]


def _cluster_collapse(img, S, strong, guard):
    """A homotopy (inside maps fixing everything outside S) from the
    identity to a map sending S off itself, or None."""
    n = len(img)
    C = img.closeness_matrix
    S = list(S)
    inS = np.zeros(n, dtype=bool)
    inS[S] = True
    near = C[S].any(axis=0).astype(bool)
    local = np.zeros((n, n), dtype=np.uint8)
    local[np.arange(n), np.arange(n)] = 1
    for s in S:
        local[s] = near
    small = Guard(max_maps=min(guard.max_maps, 200000), max_nodes=guard.max_nodes)
    try:
        parents, rows, hit = _bfs(np.arange(n, dtype=np.int32), img, img, strong, small,
                                  stop=lambda r: not inS[r[S]].any(), extra_mask=local)
    except ResourceGuardError:
        return None
    if hit is None:
        return None
    return _path(parents, rows, hit, img, img)


def _connected_subsets(img, size):
    nb = img.neighbors
    seen = set()
    for start in range(len(img)):
        frontier = [frozenset([start])]
        for _ in range(size - 1):
            grown = set()
            for s in frontier:
                for v in s:
                    for w in nb[v]:
                        if w not in s and w > start:
                            grown.add(s | {w})
            frontier = grown
        for s in frontier:
            if s not in seen:
                seen.add(s)
                yield tuple(sorted(s))


def _greedy(img, strong, max_cluster, guard):
    X = img
    cur = img
    acc = np.arange(len(X), dtype=np.int32)      # X -> X, values in cur
    steps = [DigitalMap(X, X, tuple(int(v) for v in acc))]
    removed = []
    changed = True
    while changed and len(cur) > 1:
        changed = False
        for size in range(1, max_cluster + 1):
            for S in (((x,) for x in range(len(cur))) if size == 1
                      else _connected_subsets(cur, size)):
                if len(S) >= len(cur):
                    continue
                if size == 1:
                    ys = retraction_targets(cur, S[0])
                    if not ys:
                        continue
                    r = np.arange(len(cur), dtype=np.int32)
                    r[S[0]] = ys[0]
                    path = [r]
                else:
                    got = _cluster_collapse(cur, S, strong, guard)
                    if got is None:
                        continue
                    path = [np.asarray(h.images, dtype=np.int32) for h in got[1:]]
                cur_pts = cur.points
                to_x = np.array([X.idx(p) for p in cur_pts], dtype=np.int32)
                from_x = {int(v): k for k, v in enumerate(to_x)}
                local_acc = np.array([from_x[int(v)] for v in acc], dtype=np.int32)
                for h in path:
                    steps.append(DigitalMap(X, X, tuple(int(v) for v in to_x[h[local_acc]])))
                final = path[-1]
                acc = to_x[final[local_acc]]
                removed.append([cur_pts[s] for s in S])
                keep = [p for k, p in enumerate(cur_pts) if k not in S]
                cur = X.subimage(keep)
                changed = True
                break
            if changed:
                break
    reduction = DigitalMap(X, cur, tuple(cur.idx(X.points[v]) for v in acc))
    inclusion = inclusion_map(cur, X)
    cert = HomotopyCertificate(tuple(steps), _kind(strong))
    rcert = HomotopyCertificate((identity_map(cur),), _kind(strong))
    return ThinResult(cur, reduction, inclusion, cert, rcert, False, removed)


def _exhaustive(img, strong, guard, max_points):
    if len(img) > max_points:
        raise ResourceGuardError(
            f"exhaustive thinning is limited to {max_points} points (got {len(img)})")
    pts = img.points
    for k in range(1, len(img)):
        for sub in itertools.combinations(pts, k):
            Xs = img.subimage(sub)
            if len(Xs.components) != len(img.components):
                continue
            ok, pair = is_homotopy_equivalent(img, Xs, strong, guard)
            if not ok:
                continue
            r, g = pair
            _, c1 = is_homotopic(identity_map(img), compose(g, r), strong, guard)
            _, c2 = is_homotopic(identity_map(Xs), compose(r, g), strong, guard)
            return ThinResult(Xs, r, g, c1, c2, True, [])
    ident = identity_map(img)
    single = HomotopyCertificate((ident,), _kind(strong))
    return ThinResult(img, ident, ident, single, single, True, [])




def thin(img: DigitalImage, strong: bool = False, mode: str = "greedy", max_cluster: int = 1,
         guard: Guard | None = None, max_points: int = 10) -> ThinResult:
    """Shrink ``img`` to a (strongly) homotopy equivalent subimage.

    ``greedy`` deletes points one at a time along single-point retractions
    (and, for ``max_cluster > 1``, connected clusters of up to that many
    points collapsed by a certified local homotopy).  It is sound but not
    complete: the unit square admits no single-point retraction.
    ``exhaustive`` returns a smallest equivalent subimage by trying all
    subsets in increasing size; only tiny images are accepted.
    """
    guard = guard or default_guard()
    if mode == "greedy":
        return _greedy(img, strong, max_cluster, guard)
    if mode == "exhaustive":
        return _exhaustive(img, strong, guard, max_points)
    raise DomainError(f"unknown thinning mode {mode!r}")
