"""Reference value table replayed by ``lefdt verify``."""
from __future__ import annotations

from dataclasses import dataclass

from . import fixtures as F
from .enumeration import count_by_closeness_trace, map_array
from .homotopy import (fixed_point_spectrum, homotopy_classes, is_contractible,
                       is_strongly_contractible, lefschetz_spectrum, thin)
from .image import approx_fixed_points, constant_map, identity_map
from .lefschetz import cubical_euler, cubical_lefschetz, simplicial_euler, simplicial_lefschetz


@dataclass
class Check:
    label: str
    expected: object
    actual: object = None
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and self.actual == self.expected


def _checks():
    Y, Z, R = F.image_y(), F.image_z(), F.robot()
    rY, rZ, rX = F.rotation_y(), F.rotation_z(), F.rotation_x()

    def lef(f, theory):
        rep = simplicial_lefschetz(f) if theory == "s" else cubical_lefschetz(f)
        return rep.value, rep.traces

    yield "simplicial Euler characteristic of Y", -1, lambda: simplicial_euler(Y)
    yield "simplicial Euler characteristic of Z", -2, lambda: simplicial_euler(Z)
    yield "cubical Euler characteristic of Y", 1, lambda: cubical_euler(Y)
    yield "cubical Euler characteristic of Z", 1, lambda: cubical_euler(Z)
    yield "L of the rotation of Y with traces", (1, (0, -1)), lambda: lef(rY, "s")
    yield "Lbar of the rotation of Y with traces", (1, (0, -1, 0)), lambda: lef(rY, "c")
    yield "L of the rotation of Z", 0, lambda: lef(rZ, "s")[0]
    yield "Lbar of the rotation of Z with traces", (1, (0, 0, 1)), lambda: lef(rZ, "c")
    yield "L of the rotation of X", 1, lambda: lef(rX, "s")[0]
    yield "Lbar of the rotation of X with traces", (1, (1, 0)), lambda: lef(rX, "c")
    yield "fixed points of the rotation of X", 1, lambda: sum(
        1 for i, v in enumerate(rX.images) if i == v)
    yield "robot simplicial Euler characteristic", -2, lambda: simplicial_euler(R)
    yield "robot cubical Euler characteristic", 0, lambda: cubical_euler(R)
    for name in ("point", "I2", "Y", "Z", "X", "C8"):
        img = F.get(name)
        c = constant_map(img, img.points[0])
        yield f"L and Lbar of a constant map on {name}", (1, 1), lambda c=c: (
            simplicial_lefschetz(c).value, cubical_lefschetz(c).value)
        yield f"identity Lefschetz numbers equal Euler characteristics on {name}", True, \
            lambda img=img: (simplicial_lefschetz(identity_map(img)).value == simplicial_euler(img)
                             and cubical_lefschetz(identity_map(img)).value == cubical_euler(img))
    C4 = F.cycle(4)
    yield "continuous self-maps of C4 (closeness trace oracle)", count_by_closeness_trace(C4), \
        lambda: len(map_array(C4, C4))
    yield "Lbar of every self-map of C4", {1}, lambda: set(
        lefschetz_spectrum(C4, "cubical").values)
    for n in (5, 6, 7, 8):
        Cn = F.cycle(n)
        yield f"Lefschetz spectra of C{n}", ((0, 1, 2), (0, 1, 2)), lambda Cn=Cn: (
            lefschetz_spectrum(Cn, "simplicial").values, lefschetz_spectrum(Cn, "cubical").values)
    for n in (2, 3):
        f = F.antipodal(n)
        yield f"antipodal map on I{n}: all {n}-approximate, no {n - 1}-approximate", (2 ** n, 0), \
            lambda f=f, n=n: (len(approx_fixed_points(f, n)), len(approx_fixed_points(f, n - 1)))
    yield "C4 contractible, not strongly contractible", (True, False), lambda: (
        is_contractible(C4), is_strongly_contractible(C4))
    C8 = F.cycle(8)
    yield "homotopy classes of C8 and their Lbar values", (3, {0, 1, 2}), lambda: (
        lambda cl: (len(cl), {cubical_lefschetz(c.representative).value for c in cl}))(
        homotopy_classes(C8))
    yield "fixed point spectrum of [0,1]", (0, 1, 2), lambda: fixed_point_spectrum(
        F.interval()).values
    yield "robot cubical Lefschetz spectrum via its 14-point cycle", (0, 1, 2), lambda: (
        lefschetz_spectrum(R, "cubical", reduce=True).values)
    yield "robot greedy strong reduction size", 26, lambda: len(thin(R, strong=True).image)
    yield "robot ordinary reduction is the 14-point cycle", True, lambda: (
        thin(R, max_cluster=3).image == F.robot_cycle())
    yield "exhaustive reduction of C4 has one point", 1, lambda: len(
        thin(C4, mode="exhaustive").image)


def run_checks() -> list:
    out = []
    for label, expected, fn in _checks():
        chk = Check(label, expected)
        try:
            chk.actual = fn()
        except Exception as exc:  # noqa: BLE001 - reported as a failed row
            chk.error = f"{type(exc).__name__}: {exc}"
        out.append(chk)
    return out
