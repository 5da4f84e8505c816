// Python bindings. Exact quantities cross the boundary as
// fractions.Fraction (floats are refused on the way in, so nothing silently
// rounds); the classifier side speaks plain floats like the C++ API.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bentail/classifier.hpp"
#include "bentail/consequence.hpp"
#include "bentail/errors.hpp"
#include "bentail/io.hpp"
#include "bentail/logic.hpp"
#include "bentail/model.hpp"
#include "bentail/numeric.hpp"
#include "bentail/suites.hpp"

namespace py = pybind11;
using namespace bentail;

namespace pybind11::detail {

// Rational <-> fractions.Fraction. Ints and numeric strings ("3/5", "0.6")
// also load; floats do not, because 0.6 the double is not 3/5 and silently
// accepting it would wreck the exactness guarantees.
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("Fraction"));

  bool load(handle src, bool) {
    if (isinstance<py::float_>(src)) return false;
    try {
      value = rational_from_string(std::string(py::str(src)));
    } catch (const Error&) {
      return false;
    }
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_fraction_string(r)).release();
  }
};

}  // namespace pybind11::detail

namespace {

KnowledgeBase to_kb(const std::vector<Formula>& formulas) {
  KnowledgeBase kb;
  for (const Formula& f : formulas) kb.add(f);
  return kb;
}

// pybind11 holders cannot be shared_ptr<const T>; the space type is
// immutable anyway, so shed the const at the boundary.
using SpaceRef = std::shared_ptr<WorldSpace>;

SpaceRef unconst(WorldSpacePtr p) { return std::const_pointer_cast<WorldSpace>(std::move(p)); }

// One-shot parse of several formulas over a shared signature so they all
// live in the same world space. Omit `atoms` to collect them from the
// formulas in appearance order.
std::pair<std::vector<Formula>, SpaceRef> parse_formulas(
    const std::vector<std::string>& texts, std::optional<std::vector<std::string>> atoms) {
  Signature sig = atoms ? Signature(*atoms) : Signature({}, true);
  std::vector<Formula> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(parse_formula(text, sig));
  return {std::move(out), unconst(WorldSpace::enumerate(sig))};
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["accuracy"] = m.accuracy;
  d["auc"] = m.auc;
  d["runtime_per_prediction_s"] = m.runtime_per_prediction_s;
  return d;
}

py::dict report_dict(const suites::SuiteReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["trials"] = r.trials;
  d["failures"] = r.failures;
  d["passed"] = r.passed();
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bentail, m) {
  m.doc() = "Exact entailment engine and Bayesian-entailment classifier";

  py::register_exception<Error>(m, "BentailError", PyExc_ValueError);

  // --- logic ---------------------------------------------------------------

  py::class_<Formula>(m, "Formula")
      .def_static("atom", &Formula::atom, py::arg("name"))
      .def("render", &Formula::render)
      .def("atoms",
           [](const Formula& f) {
             std::vector<std::string> out;
             f.collect_atoms(out);
             return out;
           })
      .def("__repr__", [](const Formula& f) { return "Formula(" + f.render() + ")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__invert__", [](const Formula& f) { return Formula::negate(f); })
      .def("__and__", &Formula::conj)
      .def("__or__", &Formula::disj)
      .def("implies", &Formula::implies)
      .def("iff", &Formula::iff);

  py::class_<PossibleWorld>(m, "World")
      .def_property_readonly("index", &PossibleWorld::index)
      .def("bits", &PossibleWorld::bits)
      .def("value", [](const PossibleWorld& w, const std::string& atom) { return w.value(atom); })
      .def("__repr__", [](const PossibleWorld& w) { return "World(" + w.bits() + ")"; })
      .def("__eq__", [](const PossibleWorld& a, const PossibleWorld& b) { return a == b; });

  py::class_<WorldSpace, SpaceRef>(m, "Space")
      .def_property_readonly("atoms", &WorldSpace::atom_names)
      .def("__len__", &WorldSpace::size)
      .def("world", &WorldSpace::world, py::arg("index"))
      .def("bits_of", &WorldSpace::bits_of, py::arg("index"))
      .def("index_from_bits", &WorldSpace::index_from_bits, py::arg("bits"));

  m.def("parse_formulas", &parse_formulas, py::arg("texts"), py::arg("atoms") = py::none());
  m.def("space_over", [](const std::vector<std::string>& atoms) {
    Signature sig(atoms);
    return unconst(WorldSpace::enumerate(sig));
  });
  m.def(
      "evaluate", [](const Formula& f, const PossibleWorld& w) { return evaluate(f, w); },
      py::arg("formula"), py::arg("world"));
  m.def(
      "models",
      [](const std::vector<Formula>& kb, const SpaceRef& s) { return models(to_kb(kb), s); },
      py::arg("kb"), py::arg("space"));
  m.def(
      "max_support_worlds",
      [](const std::vector<Formula>& kb, const SpaceRef& s) {
        return max_support_worlds(to_kb(kb), s);
      },
      py::arg("kb"), py::arg("space"));

  // --- generative model ----------------------------------------------------

  py::class_<WorldDistribution>(m, "Prior")
      .def_property_readonly("space", [](const WorldDistribution& d) { return unconst(d.space); })
      .def_property_readonly("probabilities", [](const WorldDistribution& d) { return d.phi; });

  m.def(
      "make_prior",
      [](const SpaceRef& space, std::vector<Rational> phi) {
        return make_distribution<Rational>(space, std::move(phi));
      },
      py::arg("space"), py::arg("probabilities"),
      "Exact prior over the space's world order; probabilities must sum to 1.");
  m.def("uniform_prior",
        [](const SpaceRef& space) { return uniform_distribution<Rational>(space); });

  m.def(
      "predictive",
      [](const std::string& query, const std::vector<std::string>& kb,
         const WorldDistribution& prior, const Rational& mu) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return predictive(f, to_kb(premises), make_model(prior, mu));
      },
      py::arg("query"), py::arg("kb"), py::arg("prior"), py::arg("mu"),
      "p(query | kb): exact Fraction, or None when the premises have zero mass.");
  m.def(
      "bayesian_entails",
      [](const std::vector<std::string>& kb, const std::string& query,
         const Rational& theta, const WorldDistribution& prior, const Rational& mu) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return bayesian_entails(to_kb(premises), f, theta, make_model(prior, mu));
      },
      py::arg("kb"), py::arg("query"), py::arg("theta"), py::arg("prior"), py::arg("mu"));
  m.def(
      "map_worlds",
      [](const std::vector<std::string>& kb, const WorldDistribution& prior, const Rational& mu) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        return map_worlds(to_kb(premises), make_model(prior, mu));
      },
      py::arg("kb"), py::arg("prior"), py::arg("mu"));
  m.def(
      "map_entails",
      [](const std::vector<std::string>& kb, const std::string& query,
         const WorldDistribution& prior, const Rational& mu) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return map_entails(to_kb(premises), f, make_model(prior, mu));
      },
      py::arg("kb"), py::arg("query"), py::arg("prior"), py::arg("mu"));

  // --- consequence ---------------------------------------------------------

  m.def(
      "classical_entails",
      [](const std::vector<std::string>& kb, const std::string& query,
         std::optional<std::vector<std::string>> atoms) {
        auto [formulas, space] = parse_formulas(kb, std::move(atoms));
        Signature sig(space->atom_names(), true);
        Formula f = parse_formula(query, sig);
        WorldSpacePtr full = WorldSpace::enumerate(sig);
        return classical_entails(to_kb(formulas), f, full);
      },
      py::arg("kb"), py::arg("query"), py::arg("atoms") = py::none());
  m.def(
      "paraconsistent_predictive",
      [](const std::string& query, const std::vector<std::string>& kb,
         const WorldDistribution& prior) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return paraconsistent_predictive(f, to_kb(premises), prior);
      },
      py::arg("query"), py::arg("kb"), py::arg("prior"),
      "The mu -> 1 limit of p(query | kb) under the given prior.");
  m.def(
      "paraconsistent_entails",
      [](const std::vector<std::string>& kb, const std::string& query, const Rational& theta,
         const WorldDistribution& prior) {
        Signature sig(prior.space->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        EntailmentVerdict v = paraconsistent_entails(to_kb(premises), f, theta, prior);
        return py::make_tuple(v.holds, v.probability, v.witness);
      },
      py::arg("kb"), py::arg("query"), py::arg("theta"), py::arg("prior"));

  py::enum_<RankWeighting>(m, "RankWeighting")
      .value("count_below", RankWeighting::count_below)
      .value("chain_height", RankWeighting::chain_height);

  py::class_<PreferentialStructure>(m, "Preference")
      .def_static(
          "from_edges",
          [](const SpaceRef& space, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
            return PreferentialStructure::from_edges(space, std::move(edges));
          },
          py::arg("space"), py::arg("edges"),
          "edges are (preferred, less-preferred) world-index pairs; the "
          "transitive closure is taken and cycles are rejected.")
      .def_property_readonly("space",
                             [](const PreferentialStructure& s) { return unconst(s.space()); })
      .def("prefers", &PreferentialStructure::prefers, py::arg("w"), py::arg("v"))
      .def("pairs", &PreferentialStructure::pairs)
      .def("maximal", &PreferentialStructure::maximal, py::arg("candidates"));

  m.def("prior_from_preference", &prior_from_preference, py::arg("preference"),
        py::arg("weighting") = RankWeighting::count_below);
  m.def(
      "preferential_entails",
      [](const std::vector<std::string>& kb, const std::string& query,
         const PreferentialStructure& s) {
        Signature sig(s.space()->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return preferential_entails(to_kb(premises), f, s);
      },
      py::arg("kb"), py::arg("query"), py::arg("preference"));
  m.def(
      "map_entails_wrt",
      [](const std::vector<std::string>& kb, const std::string& query,
         const PreferentialStructure& s, RankWeighting weighting) {
        Signature sig(s.space()->atom_names());
        std::vector<Formula> premises;
        for (const std::string& text : kb) premises.push_back(parse_formula(text, sig));
        Formula f = parse_formula(query, sig);
        return map_entails_wrt(to_kb(premises), f, s, weighting);
      },
      py::arg("kb"), py::arg("query"), py::arg("preference"),
      py::arg("weighting") = RankWeighting::count_below);

  // --- classifier ----------------------------------------------------------

  py::class_<SchemaSpec>(m, "SchemaSpec")
      .def(py::init<>())
      .def_readwrite("goal", &SchemaSpec::goal)
      .def_readwrite("positive", &SchemaSpec::positive)
      .def_readwrite("drop", &SchemaSpec::drop)
      .def_readwrite("rename", &SchemaSpec::rename)
      .def_static("from_json_text", &SchemaSpec::from_json_text, py::arg("text"))
      .def_static("titanic_default", &SchemaSpec::titanic_default)
      .def("to_json_text", &SchemaSpec::to_json_text);

  py::class_<DataRow>(m, "DataRow")
      .def_readonly("attrs", &DataRow::attrs)
      .def_readonly("goal", &DataRow::goal);

  py::class_<Dataset>(m, "Dataset")
      .def("__len__", &Dataset::size)
      .def_readonly("rows", &Dataset::rows)
      .def_property_readonly("attributes",
                             [](const Dataset& d) { return d.schema->attributes; })
      .def_property_readonly("goal", [](const Dataset& d) { return d.schema->goal; })
      .def("atom_text", [](const Dataset& d, std::size_t attribute, std::int32_t code) {
        return d.schema->atom_text(attribute, code);
      });

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("worlds", &TrainedModel::worlds)
      .def_readonly("counts", &TrainedModel::counts)
      .def_readonly("total", &TrainedModel::total)
      .def_readwrite("mu_hat", &TrainedModel::mu_hat);

  m.def("parse_csv", &parse_csv_text, py::arg("text"), py::arg("spec"));
  m.def("load_csv", &load_csv, py::arg("path"), py::arg("spec"));
  m.def(
      "split",
      [](const Dataset& ds, std::uint64_t seed) {
        SplitResult r = split(ds, SplitConfig{seed});
        return py::make_tuple(std::move(r.train), std::move(r.cv), std::move(r.test));
      },
      py::arg("dataset"), py::arg("seed") = 0);
  m.def("fit_worlds", &fit_worlds, py::arg("train"));
  m.def("select_mu", &select_mu, py::arg("model"), py::arg("cv"), py::arg("grid"));
  m.def("default_mu_grid", &default_mu_grid);
  m.def(
      "predict",
      [](const TrainedModel& model, const std::vector<std::int32_t>& attrs, double theta) {
        Prediction p = predict(model, attrs, theta);
        return py::make_tuple(p.holds, p.probability);
      },
      py::arg("model"), py::arg("attrs"), py::arg("theta") = 0.5);
  m.def(
      "encode_query",
      [](const TrainedModel& model, const std::vector<std::string>& header,
         const std::vector<std::string>& record) {
        return encode_query(*model.schema, header, record);
      },
      py::arg("model"), py::arg("header"), py::arg("record"));
  m.def(
      "evaluate",
      [](const TrainedModel& model, const Dataset& test) {
        return metrics_dict(evaluate(model, test));
      },
      py::arg("model"), py::arg("test"));
  m.def("majority_baseline", &majority_baseline, py::arg("train"), py::arg("test"));
  m.def("model_to_json_text", &model_to_json_text, py::arg("model"));
  m.def("model_from_json_text", &model_from_json_text, py::arg("text"));
  m.def("save_model", &save_model, py::arg("path"), py::arg("model"));
  m.def("load_model", &load_model, py::arg("path"));
  m.def(
      "run_pipeline",
      [](const Dataset& ds, std::uint64_t seed, std::optional<std::vector<double>> grid) {
        PipelineResult r = run_pipeline(ds, seed, grid ? *grid : default_mu_grid());
        return py::make_tuple(std::move(r.model), metrics_dict(r.metrics), r.seed);
      },
      py::arg("dataset"), py::arg("seed") = 0, py::arg("grid") = py::none());
  m.def(
      "evaluate_splits",
      [](const Dataset& ds, int splits, std::uint64_t base_seed,
         std::optional<std::vector<double>> grid) {
        AggregateMetrics a =
            evaluate_splits(ds, splits, base_seed, grid ? *grid : default_mu_grid());
        py::dict d;
        d["splits"] = a.splits;
        d["accuracy_mean"] = a.accuracy_mean;
        d["accuracy_std"] = a.accuracy_std;
        d["auc_mean"] = a.auc_mean;
        d["auc_std"] = a.auc_std;
        d["runtime_mean_s"] = a.runtime_mean_s;
        d["mu_hats"] = a.mu_hats;
        return d;
      },
      py::arg("dataset"), py::arg("splits"), py::arg("base_seed") = 0,
      py::arg("grid") = py::none());

  // --- suites --------------------------------------------------------------

  m.def("suite_names", &suites::suite_names);
  m.def(
      "run_suite", [](const std::string& name) { return report_dict(suites::run_suite(name)); },
      py::arg("name"));
  m.def("run_all_suites", [] {
    py::list out;
    for (const suites::SuiteReport& r : suites::run_all()) out.append(report_dict(r));
    return out;
  });
}
