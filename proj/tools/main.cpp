// Command-line front door. Machine output (JSON, or CSV for `predict`) goes
// to standard output; one-line human summaries go to standard error.
// Exit codes: 0 success, 1 usage error, 2 input error, 3 suite failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
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

namespace {

using json = nlohmann::ordered_json;
using namespace bentail;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitSuite = 3;

// Flag misuse detected after CLI11 parsing (incoherent combinations, bad
// probability literals). Distinct from InputError so it maps to exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

Rational probability_flag(const std::string& text, const char* flag) {
  Rational r;
  try {
    r = rational_from_string(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " expects a probability (decimal or p/q)");
  }
  if (!is_probability(r)) throw UsageError(std::string(flag) + " must lie in [0, 1]");
  return r;
}

// Each --kb item is a file when one exists under that name, otherwise an
// inline formula.
KnowledgeBase gather_kb(const std::vector<std::string>& items, Signature& sig) {
  KnowledgeBase kb;
  for (const std::string& item : items) {
    if (std::filesystem::is_regular_file(item)) {
      for (const Formula& f : io::parse_kb_text(io::read_file(item), sig)) kb.add(f);
    } else {
      kb.add(parse_formula(item, sig));
    }
  }
  return kb;
}

json world_json(const PossibleWorld& w) {
  return json{{"index", w.index()}, {"bits", w.bits()}};
}

json worlds_json(const std::vector<PossibleWorld>& worlds) {
  json arr = json::array();
  for (const PossibleWorld& w : worlds) arr.push_back(world_json(w));
  return arr;
}

json kb_json(const KnowledgeBase& kb) {
  json arr = json::array();
  for (const Formula& f : kb) arr.push_back(f.render());
  return arr;
}

// ---------------------------------------------------------------------------
// entail
// ---------------------------------------------------------------------------

struct EntailArgs {
  std::string mode;
  std::vector<std::string> kb_items;
  std::string query;
  std::string theta, mu;            // empty = not given
  std::string prior_path, pref_path, settings_path;
  std::string arithmetic;           // empty = not given
};

void run_entail(const EntailArgs& a) {
  const bool has_theta = !a.theta.empty(), has_mu = !a.mu.empty();
  const bool has_prior = !a.prior_path.empty(), has_pref = !a.pref_path.empty();

  // Which flags each mode consumes; anything else is a contradiction worth
  // reporting rather than ignoring.
  auto reject = [&](bool given, const char* flag) {
    if (given) throw UsageError(a.mode + " mode takes no " + flag);
  };
  if (a.mode == "classical" || a.mode == "preferential") {
    reject(has_theta, "--theta");
    reject(has_mu, "--mu");
    reject(has_prior, "--prior");
  }
  if (a.mode == "paraconsistent") reject(has_mu, "--mu");
  if (a.mode == "map") {
    reject(has_theta, "--theta");
    if (has_prior && has_pref) throw UsageError("map mode takes --prior or --pref, not both");
    if (has_pref && has_mu) throw UsageError("map mode with --pref is the mu -> 1 limit; drop --mu");
  }
  if (a.mode != "map" && a.mode != "preferential") reject(has_pref, "--pref");
  if (a.mode == "preferential" && !has_pref)
    throw UsageError("preferential mode requires --pref");

  io::Settings settings;
  if (!a.settings_path.empty()) settings = io::load_settings(a.settings_path);
  Rational theta = has_theta ? probability_flag(a.theta, "--theta")
                             : settings.theta.value_or(Rational(1, 2));
  Rational mu = has_mu ? probability_flag(a.mu, "--mu") : settings.mu.value_or(Rational(1));
  if (!is_probability(theta)) throw InputError("settings theta must lie in [0, 1]");
  if (!is_probability(mu)) throw InputError("settings mu must lie in [0, 1]");
  std::string arithmetic =
      !a.arithmetic.empty() ? a.arithmetic : settings.arithmetic.value_or("exact");
  if (arithmetic == "float" && a.mode != "bayesian")
    throw UsageError("--arithmetic float applies to bayesian mode only");

  // The world space comes from the preference file, else the prior file,
  // else the atoms of the formulas themselves in appearance order.
  std::optional<PreferentialStructure> structure;
  std::optional<WorldDistribution> prior;
  WorldSpacePtr space;
  KnowledgeBase kb;
  Formula query = Formula::atom("a");  // overwritten below
  if (has_pref) {
    structure = io::load_preference(a.pref_path);
    space = structure->space();
  } else if (has_prior) {
    prior = io::load_prior(a.prior_path);
    space = prior->space;
  }
  if (space) {
    Signature sig(space->atom_names());
    kb = gather_kb(a.kb_items, sig);
    query = parse_formula(a.query, sig);
  } else {
    Signature sig({}, true);
    kb = gather_kb(a.kb_items, sig);
    query = parse_formula(a.query, sig);
    space = WorldSpace::enumerate(sig);
  }
  if (!prior && (a.mode == "bayesian" || a.mode == "paraconsistent" ||
                 (a.mode == "map" && !has_pref)))
    prior = uniform_distribution<Rational>(space);

  json out;
  out["mode"] = a.mode;
  out["atoms"] = space->atom_names();
  out["kb"] = kb_json(kb);
  out["query"] = query.render();
  const bool uses_theta = a.mode == "bayesian" || a.mode == "paraconsistent";
  const bool uses_mu = a.mode == "bayesian" || (a.mode == "map" && !has_pref);
  out["theta"] = uses_theta ? json(to_fraction_string(theta)) : json(nullptr);
  out["mu"] = uses_mu ? json(to_fraction_string(mu)) : json(nullptr);

  bool holds = false;
  json probability = nullptr, decimal = nullptr;
  json witness = json::array();
  if (a.mode == "classical") {
    holds = classical_entails(kb, query, space);
  } else if (a.mode == "bayesian" && arithmetic == "float") {
    FloatModel m = to_float(make_model(*prior, mu));
    holds = bayesian_entails(kb, query, to_double(theta), m);
    std::optional<double> p = predictive(query, kb, m);
    if (p) decimal = *p;
    else probability = "undefined";
  } else if (a.mode == "bayesian") {
    LogicalModel m = make_model(*prior, mu);
    holds = bayesian_entails(kb, query, theta, m);
    std::optional<Rational> p = predictive(query, kb, m);
    if (p) {
      probability = to_fraction_string(*p);
      decimal = to_double(*p);
    } else {
      probability = "undefined";
    }
  } else if (a.mode == "paraconsistent") {
    EntailmentVerdict v = paraconsistent_entails(kb, query, theta, *prior);
    holds = v.holds;
    probability = to_fraction_string(*v.probability);
    decimal = to_double(*v.probability);
    witness = worlds_json(v.witness);
  } else if (a.mode == "map" && has_pref) {
    holds = map_entails_wrt(kb, query, *structure);
    // The limit-MAP worlds: induced-prior maximisers within ((kb)).
    WorldDistribution induced = prior_from_preference(*structure);
    Rational best = 0;
    std::vector<PossibleWorld> maximisers;
    for (std::uint32_t i : max_support_indices(kb, *space)) {
      if (induced.phi[i] < best) continue;
      if (induced.phi[i] > best) {
        best = induced.phi[i];
        maximisers.clear();
      }
      maximisers.push_back(space->world(i));
    }
    if (best > 0) witness = worlds_json(maximisers);
  } else if (a.mode == "map") {
    LogicalModel m = make_model(*prior, mu);
    holds = map_entails(kb, query, m);
    witness = worlds_json(map_worlds(kb, m));
  } else {  // preferential
    holds = preferential_entails(kb, query, *structure);
    std::vector<PossibleWorld> maximal;
    for (std::uint32_t i : structure->maximal(model_indices(kb, *space)))
      maximal.push_back(space->world(i));
    witness = worlds_json(maximal);
  }
  out["holds"] = holds;
  out["probability"] = probability;
  out["probability_decimal"] = decimal;
  out["witness"] = witness;
  emit(out);

  std::cerr << a.mode << ": " << (holds ? "entailed" : "not entailed");
  if (probability.is_string()) std::cerr << " (p = " << probability.get<std::string>() << ")";
  else if (decimal.is_number()) std::cerr << " (p = " << decimal.dump() << ")";
  std::cerr << "\n";
}

// ---------------------------------------------------------------------------
// worlds
// ---------------------------------------------------------------------------

void run_worlds(const std::vector<std::string>& kb_items) {
  Signature sig({}, true);
  KnowledgeBase kb = gather_kb(kb_items, sig);
  WorldSpacePtr space = WorldSpace::enumerate(sig);
  std::vector<PossibleWorld> mods = models(kb, space);
  std::vector<PossibleWorld> support = max_support_worlds(kb, space);
  std::size_t satisfied = support.empty() ? 0 : satisfied_count(kb, support.front());

  json out;
  out["atoms"] = space->atom_names();
  out["world_count"] = space->size();
  out["kb"] = kb_json(kb);
  out["models"] = worlds_json(mods);
  out["max_support"] = worlds_json(support);
  out["satisfied"] = satisfied;
  emit(out);

  std::cerr << space->size() << " worlds, " << mods.size() << " models, " << support.size()
            << " max-support (satisfying " << satisfied << " of " << kb.size() << ")\n";
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string csv, schema, out;
  std::uint64_t seed = 0;
  std::vector<double> grid = default_mu_grid();
};

void run_train(const TrainArgs& a) {
  SchemaSpec spec = SchemaSpec::load(a.schema);
  Dataset ds = load_csv(a.csv, spec);
  SplitResult parts = split(ds, SplitConfig{a.seed});
  TrainedModel model = fit_worlds(parts.train);
  model.mu_hat = select_mu(model, parts.cv, a.grid);
  save_model(a.out, model);

  json out;
  out["mu_hat"] = model.mu_hat;
  out["seed"] = a.seed;
  out["grid"] = a.grid;
  out["rows"] = ds.size();
  out["train_rows"] = parts.train.size();
  out["cv_rows"] = parts.cv.size();
  out["test_rows"] = parts.test.size();
  out["worlds"] = model.worlds.size();
  out["model"] = a.out;
  emit(out);

  std::cerr << "mu_hat = " << json(model.mu_hat).dump() << " (" << model.worlds.size()
            << " worlds from " << parts.train.size() << " training rows) -> " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// predict / evaluate
// ---------------------------------------------------------------------------

// Working-name header for a raw CSV: apply the schema spec's renames when one
// is supplied so files with pre-rename column names still line up.
std::vector<std::string> working_header(std::vector<std::string> header,
                                        const std::string& schema_path) {
  if (schema_path.empty()) return header;
  SchemaSpec spec = SchemaSpec::load(schema_path);
  for (std::string& name : header) {
    auto it = spec.rename.find(name);
    if (it != spec.rename.end()) name = it->second;
  }
  return header;
}

struct PredictArgs {
  std::string model, csv, schema;
  double theta = 0.5;
};

void run_predict(const PredictArgs& a) {
  TrainedModel model = load_model(a.model);
  std::vector<std::vector<std::string>> records = read_csv_records(io::read_file(a.csv));
  if (records.size() < 2) throw EmptyDatasetError();
  std::vector<std::string> header = working_header(records[0], a.schema);

  std::size_t entailed = 0;
  std::cout << "row,probability,verdict\n";
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size())
      throw MalformedRowError(r, "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(records[r].size()));
    Prediction p = predict(model, encode_query(*model.schema, header, records[r]), a.theta);
    entailed += p.holds;
    std::cout << r << "," << (p.probability ? json(*p.probability).dump() : "undefined") << ","
              << (p.holds ? "true" : "false") << "\n";
  }
  std::cerr << "predicted " << records.size() - 1 << " rows (" << entailed
            << " entailed at theta = " << json(a.theta).dump() << ")\n";
}

struct EvaluateArgs {
  std::string model, csv, schema;
  int splits = 100;
  std::uint64_t seed = 0;
  std::vector<double> grid = default_mu_grid();
};

// Test rows encoded against an already-trained schema: training value maps
// and bin edges apply, and the goal column is read off the raw records.
Dataset encode_test_set(const TrainedModel& model, const std::string& csv_path,
                        const std::string& schema_path) {
  std::vector<std::vector<std::string>> records = read_csv_records(io::read_file(csv_path));
  if (records.size() < 2) throw EmptyDatasetError();
  std::vector<std::string> header = working_header(records[0], schema_path);
  std::size_t goal_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == model.schema->goal) goal_col = c;
  if (goal_col == header.size()) throw MissingColumnError(model.schema->goal);

  Dataset ds{model.schema, {}};
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size())
      throw MalformedRowError(r, "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(records[r].size()));
    const std::string& goal_raw = records[r][goal_col];
    if (goal_raw.empty() || goal_raw == "?") throw MalformedRowError(r, "missing goal value");
    DataRow row;
    row.attrs = encode_query(*model.schema, header, records[r]);
    row.goal = goal_raw == model.schema->positive ? 1 : 0;
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

void run_evaluate(const EvaluateArgs& a) {
  if (!a.model.empty()) {
    TrainedModel model = load_model(a.model);
    Dataset test = encode_test_set(model, a.csv, a.schema);
    Metrics m = evaluate(model, test);
    json out;
    out["rows"] = test.size();
    out["mu_hat"] = model.mu_hat;
    out["accuracy"] = m.accuracy;
    out["auc"] = m.auc;
    out["runtime_per_prediction_s"] = m.runtime_per_prediction_s;
    emit(out);
    std::cerr << "accuracy " << json(m.accuracy).dump() << ", auc " << json(m.auc).dump()
              << " over " << test.size() << " rows\n";
    return;
  }
  if (a.schema.empty()) throw UsageError("evaluate needs --model or --schema");
  SchemaSpec spec = SchemaSpec::load(a.schema);
  Dataset ds = load_csv(a.csv, spec);
  AggregateMetrics agg = evaluate_splits(ds, a.splits, a.seed, a.grid);
  json out;
  out["splits"] = agg.splits;
  out["seed"] = a.seed;
  out["grid"] = a.grid;
  out["accuracy_mean"] = agg.accuracy_mean;
  out["accuracy_std"] = agg.accuracy_std;
  out["auc_mean"] = agg.auc_mean;
  out["auc_std"] = agg.auc_std;
  out["runtime_mean_s"] = agg.runtime_mean_s;
  out["mu_hats"] = agg.mu_hats;
  emit(out);
  std::cerr << "accuracy " << json(agg.accuracy_mean).dump() << " +/- "
            << json(agg.accuracy_std).dump() << ", auc " << json(agg.auc_mean).dump() << " +/- "
            << json(agg.auc_std).dump() << " over " << agg.splits << " splits\n";
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int run_check(const std::string& suite) {
  std::vector<suites::SuiteReport> reports;
  if (suite == "all") reports = suites::run_all();
  else reports.push_back(suites::run_suite(suite));

  json arr = json::array();
  bool passed = true;
  for (const suites::SuiteReport& r : reports) {
    arr.push_back(json{{"name", r.name},
                       {"trials", r.trials},
                       {"failures", r.failures},
                       {"passed", r.passed()},
                       {"notes", r.notes}});
    passed = passed && r.passed();
    std::cerr << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.trials << " trials";
    if (!r.passed()) std::cerr << ", " << r.failures << " failures";
    std::cerr << ")\n";
  }
  emit(json{{"suites", arr}, {"passed", passed}});
  return passed ? kExitOk : kExitSuite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact entailment engine and Bayesian-entailment classifier"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  EntailArgs entail_args;
  CLI::App* entail = app.add_subcommand("entail", "Decide kb |~ query under a chosen relation");
  entail->add_option("--mode", entail_args.mode, "Entailment relation")
      ->required()
      ->check(CLI::IsMember({"classical", "bayesian", "paraconsistent", "map", "preferential"}));
  entail->add_option("--kb", entail_args.kb_items, "Premises: formulas or files, repeatable");
  entail->add_option("--query", entail_args.query, "Conclusion formula")->required();
  entail->add_option("--theta", entail_args.theta, "Entailment threshold (default 1/2)");
  entail->add_option("--mu", entail_args.mu, "Truth-noise parameter (default 1)");
  entail->add_option("--prior", entail_args.prior_path, "Prior CSV (default uniform)");
  entail->add_option("--pref", entail_args.pref_path, "Preference file (map/preferential)");
  entail->add_option("--settings", entail_args.settings_path, "Key = value defaults file");
  entail->add_option("--arithmetic", entail_args.arithmetic, "exact (default) or float")
      ->check(CLI::IsMember({"exact", "float"}));
  entail->callback([&] { run_entail(entail_args); });

  std::vector<std::string> worlds_kb;
  CLI::App* worlds = app.add_subcommand("worlds", "List models and max-support worlds of a kb");
  worlds->add_option("--kb", worlds_kb, "Premises: formulas or files, repeatable")->required();
  worlds->callback([&] { run_worlds(worlds_kb); });

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Fit worlds on the 60% split, pick mu on the 20% cv split");
  train->add_option("--csv", train_args.csv, "Training CSV with header")->required();
  train->add_option("--schema", train_args.schema, "Schema spec JSON")->required();
  train->add_option("--out", train_args.out, "Where to write the model JSON")->required();
  train->add_option("--seed", train_args.seed, "Split seed (default 0)");
  train->add_option("--grid", train_args.grid, "mu grid, comma separated")->delimiter(',');
  train->callback([&] { run_train(train_args); });

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "Per-row goal probabilities as CSV");
  predict->add_option("--model", predict_args.model, "Trained model JSON")->required();
  predict->add_option("--csv", predict_args.csv, "Rows to score")->required();
  predict->add_option("--schema", predict_args.schema, "Schema spec JSON for column renames");
  predict->add_option("--theta", predict_args.theta, "Verdict threshold (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  predict->callback([&] { run_predict(predict_args); });

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Metrics for a saved model on a test CSV, or aggregated over random splits");
  evaluate->add_option("--csv", eval_args.csv, "Dataset CSV")->required();
  evaluate->add_option("--model", eval_args.model, "Trained model JSON (single evaluation)");
  evaluate->add_option("--schema", eval_args.schema, "Schema spec JSON (split protocol)");
  evaluate->add_option("--splits", eval_args.splits, "Number of random splits (default 100)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eval_args.seed, "Base seed; split i uses seed + i");
  evaluate->add_option("--grid", eval_args.grid, "mu grid, comma separated")->delimiter(',');
  evaluate->callback([&] { run_evaluate(eval_args); });

  std::string suite = "all";
  CLI::App* check = app.add_subcommand("check", "Run randomized invariant suites");
  std::vector<std::string> suite_choices = suites::suite_names();
  suite_choices.push_back("all");
  check->add_option("--suite", suite, "Suite name or all (default)")
      ->check(CLI::IsMember(suite_choices));
  check->callback([&] { exit_code = run_check(suite); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return exit_code;
}
