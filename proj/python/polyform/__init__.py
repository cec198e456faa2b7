from ._polyform import (  # noqa: F401
    ConjectureReport,
    MGonalForm,
    MVerdict,
    RepTable,
    SearchConfig,
    build_tree,
    check_ell,
    check_multiples_lemma,
    decompose,
    enumerate_values,
    eval_polygonal,
    polygonal_index_of,
    predicted_max_rank,
    predicted_min_rank,
    recompute_s_sets,
    stabilize_gamma,
    verify_builtin_sets,
)

__all__ = [
    "ConjectureReport",
    "MGonalForm",
    "MVerdict",
    "RepTable",
    "SearchConfig",
    "build_tree",
    "check_ell",
    "check_multiples_lemma",
    "decompose",
    "enumerate_values",
    "eval_polygonal",
    "polygonal_index_of",
    "predicted_max_rank",
    "predicted_min_rank",
    "recompute_s_sets",
    "stabilize_gamma",
    "verify_builtin_sets",
]
