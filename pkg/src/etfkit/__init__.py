"""Harmonic equiangular tight frames from difference sets.

Exact construction and certification of difference sets and relative
difference sets (Singer complements, twin prime power complements, McFarland
sets, simplicial RDSs), their fine / amalgam / composite classification, the
regular-simplex decomposition of the associated harmonic ETFs, equi-chordal
and equi-isoclinic fusion-frame checks, and complex circulant conference
matrices by two routes.
"""

from .cyclotomic import Cyclotomic, RootOfUnity, cyclotomic_polynomial
from .groups import (
    AbelianGroup,
    IntVector,
    SearchCapExceeded,
    Subgroup,
    all_subgroups,
    annihilator,
    char_value,
    convolve,
    cosets,
    dft,
    dft_numeric,
    group_new,
    involution,
    quotient_group,
    subgroups_of_order,
)
from .fields import (
    FiniteField,
    ff_dlog,
    ff_generator,
    ff_new,
    ff_trace,
    prime_power,
    squares_nonsquares,
)
from .designs import (
    GroupSubset,
    McFarlandSet,
    RdsParams,
    SimplicialRds,
    SingerComplement,
    TppComplement,
    certify_difference_set,
    certify_rds,
    complement,
    cyclic_subset,
    difference_counts,
    mcfarland,
    quotient_rds,
    simplicial_rds_quadratic,
    singer_complement,
    subset,
    tpp_complement,
    welch_integer_S,
)
from .classify import DesignCertificate, classify, compute_Dg, is_amalgam, is_composite, is_fine
from .matrices import ComplexMatrix, ExactForm, from_cells
from .frames import (
    AngleReport,
    check_tight,
    coherence,
    cross_gram,
    e_gamma,
    ectff_check,
    eitff_check,
    gram,
    harmonic_synthesis,
    phi_gamma,
    principal_angles,
    simplex_psi,
    triple_product_check,
    unbiased_simplices_check,
    welch_bound,
)
from .conference import (
    CirculantConference,
    ConferenceReport,
    conference_from_amalgam,
    conference_from_srds,
    scalar_relation_check,
    verify_conference,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
