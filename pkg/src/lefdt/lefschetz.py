"""Lefschetz numbers, Euler characteristics, fixed cells and the
approximate-fixed-point bounds, in the simplicial and c_1-cubical theories."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cubical import check_dimension_guard, cubical_complex, cubical_induced_chain_map
from .errors import DomainError, InternalError, PreconditionError
from .homalg import alternating_sum, betti_numbers, homology_traces
from .image import DigitalImage, DigitalMap, approx_fixed_indices, is_continuous
from .simplicial import simplicial_complex, simplicial_induced_chain_map

THEORIES = ("simplicial", "cubical")


def _check_theory(theory):
    if theory not in THEORIES:
        raise DomainError(f"theory must be one of {THEORIES}, got {theory!r}")


def complex_for(img: DigitalImage, theory: str):
    _check_theory(theory)
    return simplicial_complex(img) if theory == "simplicial" else cubical_complex(img)


def induced_chain_map(f: DigitalMap, theory: str, check: bool = True,
                      unsafe_high_dimension: bool = False):
    _check_theory(theory)
    if theory == "simplicial":
        return simplicial_induced_chain_map(f, check=check)
    return cubical_induced_chain_map(f, check=check, unsafe_high_dimension=unsafe_high_dimension)


def afp_radius(img: DigitalImage, theory: str) -> int:
    """Approximation radius paired with a theory: 1 for simplicial, the
    ambient dimension for cubical."""
    return 1 if theory == "simplicial" else img.dimension


@dataclass
class LefschetzReport:
    """Lefschetz number of a self-map with the data behind it.

    ``traces[q]`` is the chain-level trace in dimension q,
    ``homology_traces[q]`` the trace on H_q.  ``fixed_cells`` lists cells
    (as point tuples, canonical vertex order) mapped onto themselves and
    ``afp_witnesses`` the approximate fixed points at radius
    :func:`afp_radius`.
    """

    theory: str
    value: int
    traces: tuple
    homology_traces: tuple
    fixed_cells: tuple = field(default_factory=tuple)
    afp_witnesses: frozenset = field(default_factory=frozenset)

    @property
    def afp_count(self) -> int:
        return len(self.afp_witnesses)

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "value": self.value,
            "traces": list(self.traces),
            "homologyTraces": list(self.homology_traces),
            "fixedCells": [[list(p) for p in cell] for cell in self.fixed_cells],
            "afpCount": self.afp_count,
        }


def _fixed_cell_list(cm, f):
    pts = f.domain.points
    im = f.images
    out = []
    for cells in cm.source.cells:
        for c in cells:
            if set(im[v] for v in c) == set(c):
                out.append(tuple(pts[v] for v in c))
    return tuple(out)


def lefschetz(f: DigitalMap, theory: str = "simplicial", unsafe_high_dimension: bool = False,
              check: bool = True) -> LefschetzReport:
    """Lefschetz number of a continuous self-map.

    The value is the alternating sum of chain-level traces; the homology
    level traces are computed as well and must give the same sum.
    """
    _check_theory(theory)
    if not f.is_self_map:
        raise DomainError("Lefschetz numbers need a self-map")
    if not is_continuous(f):
        raise PreconditionError("Lefschetz numbers need a continuous map")
    img = f.domain
    if len(img) == 0:
        return LefschetzReport(theory, 0, (), ())
    cm = induced_chain_map(f, theory, check=check, unsafe_high_dimension=unsafe_high_dimension)
    traces = cm.traces()
    htraces = homology_traces(cm, check=False)
    value = alternating_sum(traces)
    if alternating_sum(htraces) != value:
        raise InternalError("chain-level and homology-level Lefschetz numbers differ")
    pts = img.points
    afp = frozenset(pts[i] for i in approx_fixed_indices(f, afp_radius(img, theory)))
    return LefschetzReport(theory, value, traces, htraces, _fixed_cell_list(cm, f), afp)


def simplicial_lefschetz(f: DigitalMap) -> LefschetzReport:
    return lefschetz(f, "simplicial")


def cubical_lefschetz(f: DigitalMap, unsafe_high_dimension: bool = False) -> LefschetzReport:
    return lefschetz(f, "cubical", unsafe_high_dimension=unsafe_high_dimension)


def euler_characteristic(img: DigitalImage, theory: str = "simplicial") -> int:
    """Alternating sum of cell counts, cross-checked against betti numbers."""
    if len(img) == 0:
        return 0
    cx = complex_for(img, theory)
    chi = alternating_sum(cx.ranks)
    if alternating_sum(betti_numbers(cx)) != chi:
        raise InternalError("Euler characteristic disagrees with the betti numbers")
    return chi


def simplicial_euler(img: DigitalImage) -> int:
    return euler_characteristic(img, "simplicial")


def cubical_euler(img: DigitalImage) -> int:
    return euler_characteristic(img, "cubical")


def fixed_cells(f: DigitalMap, theory: str = "simplicial",
                unsafe_high_dimension: bool = False) -> tuple:
    """Cells whose vertex set is mapped onto itself, as point tuples."""
    _check_theory(theory)
    if not f.is_self_map:
        raise DomainError("fixed cells need a self-map")
    if not is_continuous(f):
        raise PreconditionError("fixed cells need a continuous map")
    if theory == "cubical":
        check_dimension_guard(f, unsafe_high_dimension)
    cx = complex_for(f.domain, theory)
    pts = f.domain.points
    im = f.images
    return tuple(tuple(pts[v] for v in c) for cells in cx.cells for c in cells
                 if set(im[v] for v in c) == set(c))


def afp_lower_bound_check(f: DigitalMap, theory: str = "simplicial",
                          unsafe_high_dimension: bool = False) -> bool:
    """True iff |L| is at most the number of approximate fixed points and at most #X.

    Approximate means radius 1 in the simplicial theory and the ambient
    dimension in the cubical one.
    """
    rep = lefschetz(f, theory, unsafe_high_dimension=unsafe_high_dimension)
    return abs(rep.value) <= rep.afp_count and abs(rep.value) <= len(f.domain)
