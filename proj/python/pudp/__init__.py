from ._core import (
    CodesignError,
    DesignProblem,
    Poset,
    bundle_eval,
    bundle_run,
    cap,
    chain,
    check_laws,
    compose,
    cup,
    diagram_canonical,
    dp_equal,
    fix_fun_min_res,
    grid,
    identity_dp,
    leq_dp,
    min_cost,
    mk_dp,
    opposite,
    poset_equal,
    product,
    sym_dp,
    tensor,
    threshold_dp,
    unit_poset,
)

__all__ = [
    "CodesignError",
    "DesignProblem",
    "Poset",
    "bundle_eval",
    "bundle_run",
    "cap",
    "chain",
    "check_laws",
    "compose",
    "cup",
    "diagram_canonical",
    "dp_equal",
    "fix_fun_min_res",
    "grid",
    "identity_dp",
    "leq_dp",
    "min_cost",
    "mk_dp",
    "opposite",
    "poset_equal",
    "product",
    "sym_dp",
    "tensor",
    "threshold_dp",
    "unit_poset",
]
