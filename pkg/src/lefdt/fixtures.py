"""Reference images and maps used by the examples, tests and ``verify``.

All images are built in code; ``data/*.json`` holds the same images in the
file format so they can be fed to the command line tool.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import DomainError
from .image import CT, DigitalImage, DigitalMap, Explicit


def point() -> DigitalImage:
    return DigitalImage(1, ((0,),))


def interval(a: int = 0, b: int = 1) -> DigitalImage:
    """The digital interval [a, b] in Z with c_1 adjacency."""
    return DigitalImage(1, tuple((x,) for x in range(a, b + 1)))


def unit_cube(n: int) -> DigitalImage:
    """I^n = {0,1}^n with c_1 adjacency."""
    return DigitalImage(n, tuple(itertools.product((0, 1), repeat=n)))


def rectangle_ring(w: int, h: int) -> DigitalImage:
    """Boundary of the box [0,w] x [0,h] in Z^2, c_1 adjacency."""
    pts = [(x, y) for x in range(w + 1) for y in range(h + 1)
           if x in (0, w) or y in (0, h)]
    return DigitalImage(2, tuple(pts))


def image_y() -> DigitalImage:
    """Six points {0,1,2} x {0,1}: two unit squares sharing an edge."""
    return DigitalImage(2, tuple((x, y) for x in range(3) for y in range(2)))


def image_z() -> DigitalImage:
    """Eight points {0..3} x {0,1}: a strip of three unit squares."""
    return DigitalImage(2, tuple((x, y) for x in range(4) for y in range(2)))


def image_x() -> DigitalImage:
    """Ring around [0,4] x [0,2] with one isolated interior point (2,1)."""
    ring = rectangle_ring(4, 2).points
    return DigitalImage(2, ring + ((2, 1),))


_ROBOT_ROWS = {
    1: (3, 4, 7, 8),
    2: (3, 4, 7, 8),
    3: (1, 4, 7, 10),
    4: (1, 4, 7, 10),
    5: (1, 3, 4, 5, 6, 7, 8, 10),
    6: (1, 2, 3, 8, 9, 10),
    7: (1, 3, 4, 5, 6, 7, 8, 10),
    8: (1, 10),
}


def robot() -> DigitalImage:
    """The 40-point robot-shaped image (feet, legs, body ring, arms)."""
    return DigitalImage(2, tuple((x, y) for y, xs in _ROBOT_ROWS.items() for x in xs))


def robot_strong_reduction() -> DigitalImage:
    """26-point subimage: feet squares, inner leg columns and the body ring."""
    keep = [(x, y) for (x, y) in robot().points
            if y in (1, 2) or (y in (3, 4) and x in (4, 7)) or (3 <= x <= 8 and 5 <= y <= 7)]
    return DigitalImage(2, tuple(keep))


def robot_cycle() -> DigitalImage:
    """The 14-point body ring, boundary of [3,8] x [5,7]."""
    pts = [(x, y) for x in range(3, 9) for y in range(5, 8) if x in (3, 8) or y in (5, 7)]
    return DigitalImage(2, tuple(pts))


def cycle(n: int) -> DigitalImage:
    """The cycle C_n.

    Even ``n`` are embedded in Z^2 or Z^3 with c_1 adjacency (C_4 the unit
    square, C_6 a hexagon on the unit 3-cube, larger ones rectangle rings).
    Odd cycles are not bipartite, so they carry explicit adjacency on the
    points (0,), ..., (n-1,).
    """
    if n < 3:
        raise DomainError("a cycle needs at least 3 points")
    if n == 4:
        return unit_cube(2)
    if n == 6:
        pts = [p for p in itertools.product((0, 1), repeat=3) if p not in ((0, 1, 0), (1, 0, 1))]
        return DigitalImage(3, tuple(pts))
    if n % 2 == 0:
        return rectangle_ring(2, n // 2 - 2)
    pts = tuple((i,) for i in range(n))
    return DigitalImage(1, pts, Explicit(((i,), ((i + 1) % n,)) for i in range(n)))


def cycle_order(img: DigitalImage) -> list:
    """Point indices x_0, x_1, ... walking a cycle from its least point
    towards its lesser neighbour."""
    n = len(img)
    nb = img.neighbors
    if n < 3 or any(len(nb[i]) != 2 for i in range(n)) or len(img.components) != 1:
        raise DomainError("image is not a cycle")
    order = [0, min(nb[0])]
    while len(order) < n:
        a, b = nb[order[-1]]
        nxt = a if a != order[-2] else b
        order.append(nxt)
    return order


def cycle_rotation(img: DigitalImage, k: int = 1) -> DigitalMap:
    """r(x_i) = x_{i+k}."""
    order = cycle_order(img)
    n = len(order)
    imgs = [0] * n
    for i, v in enumerate(order):
        imgs[v] = order[(i + k) % n]
    return DigitalMap(img, img, tuple(imgs))


def cycle_flip(img: DigitalImage) -> DigitalMap:
    """t(x_i) = x_{-i}; fixes x_0 and, for even n, the antipode x_{n/2}."""
    order = cycle_order(img)
    n = len(order)
    imgs = [0] * n
    for i, v in enumerate(order):
        imgs[v] = order[(-i) % n]
    return DigitalMap(img, img, tuple(imgs))


def point_reflection(img: DigitalImage) -> DigitalMap:
    """The 180 degree rotation p -> (min + max) - p about the bounding box centre."""
    lo = [min(p[k] for p in img.points) for k in range(img.dimension)]
    hi = [max(p[k] for p in img.points) for k in range(img.dimension)]
    return DigitalMap.from_function(
        img, img, lambda p: tuple(lo[k] + hi[k] - p[k] for k in range(img.dimension)))


def antipodal(n: int) -> DigitalMap:
    """x -> 1 - x on the unit cube I^n."""
    return point_reflection(unit_cube(n))


def rotation_y() -> DigitalMap:
    return point_reflection(image_y())


def rotation_z() -> DigitalMap:
    return point_reflection(image_z())


def rotation_x() -> DigitalMap:
    return point_reflection(image_x())


@lru_cache(maxsize=None)
def catalog() -> dict:
    """Name -> image for every shipped fixture."""
    out = {"point": point(), "interval": interval()}
    for n in range(1, 5):
        out[f"I{n}"] = unit_cube(n)
    out.update(Y=image_y(), Z=image_z(), X=image_x(), robot=robot(),
               robot_strong=robot_strong_reduction(), robot_cycle=robot_cycle())
    for n in range(3, 15):
        out[f"C{n}"] = cycle(n)
    return out


def map_catalog() -> dict:
    """Name -> (domain name, map) for the shipped fixture maps."""
    return {"rotY": ("Y", rotation_y()), "rotZ": ("Z", rotation_z()),
            "rotX": ("X", rotation_x())}


def get(name: str) -> DigitalImage:
    try:
        return catalog()[name]
    except KeyError:
        raise DomainError(f"unknown fixture {name!r}") from None


__all__ = ["point", "interval", "unit_cube", "rectangle_ring", "image_y", "image_z", "image_x",
           "robot", "robot_strong_reduction", "robot_cycle", "cycle", "cycle_order",
           "cycle_rotation", "cycle_flip", "point_reflection", "antipodal", "rotation_y",
           "rotation_z", "rotation_x", "catalog", "map_catalog", "get", "CT"]
