from .combinators import (
    STRATEGIES,
    Normalization,
    NormalizationLimit,
    PReduction,
    Reduction,
    app,
    comb_normalize,
    is_normal,
    q_exponent,
    q_power,
    random_comb_term,
    separating_exponent,
    spine,
    t_n,
)
from .statman import (
    COMBINATOR_AXIOMS,
    LAMBDA_I,
    LowerBoundFamily,
    bench_statman,
    build_family,
    e_n,
    eq_t,
    gen_eq_t_proof,
    gen_linear_proof,
    member,
    statman_conclusion,
    tower,
)
from .yukami import (
    bench_yukami,
    gen_unrestricted_identity_proof,
    gen_yukami_proof,
    yukami_axioms,
    yukami_contexts,
    zero_power,
)

BENCHMARKS = {"statman": bench_statman, "yukami": bench_yukami}

__all__ = [
    "BENCHMARKS",
    "COMBINATOR_AXIOMS",
    "LAMBDA_I",
    "LowerBoundFamily",
    "Normalization",
    "NormalizationLimit",
    "PReduction",
    "Reduction",
    "STRATEGIES",
    "app",
    "bench_statman",
    "bench_yukami",
    "build_family",
    "comb_normalize",
    "e_n",
    "eq_t",
    "gen_eq_t_proof",
    "gen_linear_proof",
    "gen_unrestricted_identity_proof",
    "gen_yukami_proof",
    "is_normal",
    "member",
    "q_exponent",
    "q_power",
    "random_comb_term",
    "separating_exponent",
    "spine",
    "statman_conclusion",
    "t_n",
    "tower",
    "yukami_axioms",
    "yukami_contexts",
    "zero_power",
]
