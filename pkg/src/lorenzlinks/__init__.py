"""Lorenz knots and links from renormalizable kneading pairs."""

from .braid import (
    LorenzBraid,
    OrbitSet,
    TemplateWord,
    braid_word,
    count_inversions,
    crossing_number,
    linking_number,
    lorenz_braid,
    main_theorem_check,
    pair_orbits,
    renorm_template,
)
from .errors import (
    ConsistencyError,
    DegeneratePairError,
    InadmissibleError,
    InvalidOrbitSetError,
    LorenzError,
    NotAKnotError,
    ResourceCapError,
    SamplingError,
    WordParseError,
)
from .invariants import (
    InvariantReport,
    c_star,
    c_star_pair,
    c_star_power,
    closed_form_report,
    direct_report,
    genus_power,
    genus_star_knot,
    genus_star_link,
    l_star,
    string_index_power,
    trip_star,
    trip_star_power,
)
from .symbolic import (
    KneadingPair,
    Word,
    check_admissible,
    parse_pair,
    parse_word,
    sign_case,
    star,
    star_pair,
    star_power,
    trip_number,
)
from .verify import VerifyConfig, growth_table, run_suite
