"""Lefschetz fixed point theory for finite digital images.

Simplicial (clique) and c_1-cubical homology, induced chain maps, Lefschetz
numbers, homotopy classification by exhaustive search, spectra and
certified reductions.
"""
from ._kernels import BACKEND_NAME
from .cubical import cubical_complex, cubical_induced_chain_map, enumerate_cubes
from .enumeration import Guard
from .errors import (DimensionGuardError, DomainError, FormatError, InternalError, LefdtError,
                     PreconditionError, ResourceGuardError, UnsupportedAdjacencyError)
from .homalg import (ChainComplex, ChainMap, HomologyGroup, betti_numbers, homology,
                     homology_trace, hopf_trace_check, smith_normal_form, verify_chain_map)
from .homotopy import (HomotopyCertificate, SpectrumResult, ThinResult, afp_spectrum,
                       enumerate_continuous_self_maps, fixed_point_spectrum, has_fpp,
                       homotopy_classes, is_contractible, is_homotopic, is_homotopy_equivalent,
                       is_strongly_contractible, lefschetz_spectrum, one_step_homotopic, thin)
from .image import (CT, DigitalImage, DigitalMap, Explicit, adjacent, approx_fixed_points,
                    close, compose, constant_map, fixed_points, geodesic_distance,
                    identity_map, is_continuous, is_path, np_adjacent)
from .lefschetz import (LefschetzReport, afp_lower_bound_check, cubical_euler,
                        cubical_lefschetz, fixed_cells, simplicial_euler, simplicial_lefschetz)
from .simplicial import enumerate_simplices, simplicial_complex, simplicial_induced_chain_map

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
