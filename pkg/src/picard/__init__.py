"""The Picard modular group SU(2,1; Z[i]), its action on complex hyperbolic
2-space, and the classification of its elliptic points."""

from .config import RunConfig
from .elliptic import (
    AmbiguousClassification,
    FixedSet,
    IsotropyClass,
    bounded_nonconjugacy,
    classify_point,
    fixed_set,
    point_stabilizer,
    verify_table1,
)
from .exhaustion import (
    P0,
    ParabolicRep,
    admissibility_clause,
    enumerate_isotropic,
    f_exhaustion,
    first_contact,
    in_spine,
    named_family,
    reduce_point,
)
from .gaussian import GaussInt, GaussVec3, gi_gcd
from .group import FORM, GENERATORS, IDENTITY, GMatrix, enumerate_gamma, is_gamma_member, word
from .horo import HoroPoint, SiegelWord, act, horo_to_vector, siegel_reduce, vector_to_horo
from .subgroups import SubgroupClosure, closure, fingerprint, identify

__version__ = "0.1.0"
