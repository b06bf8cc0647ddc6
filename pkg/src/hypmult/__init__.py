"""Local multiplicities of rational points on projective hypersurfaces over
finite fields, intersection trees, and exact checks of multiplicity-sum bounds."""

from .gf import GF, FieldElement, embed_build, enumerate_field, field_create, frobenius, parse_field_spec
from .mpoly import MPoly, hasse_expand, lowest_degree, poly_parse, translate, eval_proj
from .geom import ClosedPoint, ProjPoint, enum_proj, frobenius_orbit, gaussian_count, parse_point
from .localmult import (
    HypersurfaceScheme,
    hilbert_samuel,
    hilbert_samuel_oracle,
    local_length_0dim,
    multiplicity_at,
    multiplicity_via_derived,
    plane_intersection_mult,
)

__version__ = "0.1.0"
