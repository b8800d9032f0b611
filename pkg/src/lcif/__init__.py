"""Maximal left-compressed intersecting families, their generator catalogs,
and exact counts of the members meeting a fixed set."""
from .census import (
    AlwaysNonneg,
    CountPoly,
    CountVector,
    EventuallyNegative,
    NonnegFrom,
    XSet,
    binom,
    count_vector,
    diff_poly,
    eval_count,
    family_size,
    sign_threshold,
    star_count,
)
from .family import (
    Family,
    compress_family,
    fully_compress,
    is_intersecting,
    is_left_compressed,
    is_maximal_intersecting,
    materialize,
    maximal_lcifs,
    oracle_count,
)
from .goodness import (
    EventualVerdict,
    Verdict,
    classify_at,
    classify_eventual,
    minimal_good,
    theorem_main_predicate,
    verify_suite,
)
from .mlcif import (
    Catalog,
    CatalogError,
    GenAntichain,
    catalog,
    enumerate_mlcif,
    extract_generators,
    load_catalog,
    save_catalog,
    unique_extension_check,
)
from .setcore import Params, complement, compress_set, generates, leq

__version__ = "0.1.0"
