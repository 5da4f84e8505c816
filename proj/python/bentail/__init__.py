"""Exact entailment engine and Bayesian-entailment classifier.

Thin sugar over the compiled ``_bentail`` module. Exact probabilities are
``fractions.Fraction`` on both sides of the boundary; floats are refused as
inputs to exact operations so nothing silently rounds.
"""

from _bentail import (  # noqa: F401
    BentailError,
    DataRow,
    Dataset,
    Formula,
    Preference,
    Prior,
    RankWeighting,
    SchemaSpec,
    Space,
    TrainedModel,
    World,
    bayesian_entails,
    classical_entails,
    default_mu_grid,
    encode_query,
    evaluate,
    evaluate_splits,
    fit_worlds,
    load_csv,
    load_model,
    majority_baseline,
    make_prior,
    map_entails,
    map_entails_wrt,
    map_worlds,
    max_support_worlds,
    model_from_json_text,
    model_to_json_text,
    models,
    paraconsistent_entails,
    paraconsistent_predictive,
    parse_csv,
    parse_formulas,
    predict,
    predictive,
    preferential_entails,
    prior_from_preference,
    run_all_suites,
    run_pipeline,
    run_suite,
    save_model,
    select_mu,
    space_over,
    split,
    suite_names,
    uniform_prior,
)


def parse(text, atoms=None):
    """Parse one formula; returns ``(formula, space)`` over its atoms."""
    formulas, space = parse_formulas([text], atoms)
    return formulas[0], space
