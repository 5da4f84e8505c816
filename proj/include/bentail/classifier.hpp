#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bentail/model.hpp"

namespace bentail {

// ---------------------------------------------------------------------------
// The data-worlds classifier: rows of a categorical table become possible
// worlds, the empirical row distribution is the prior, and prediction is the
// Bayesian entailment of the goal atom from the attribute atoms. Everything
// here runs in double with fixed left-to-right summation over the stored
// world order, so results are bit-reproducible.
// ---------------------------------------------------------------------------

// Per-column categorical encoding. Raw values that look like non-negative
// integers keep that integer as their code (so "3" becomes TC=3); other
// values get the smallest unused positive code in first-appearance order;
// a missing cell ("" or "?") is the sentinel -1, rendered `Attr=?`.
class ValueMap {
 public:
  static constexpr std::int32_t kMissing = -1;
  static constexpr std::int32_t kUnseen = -2;  // lookup-only; never assigned

  std::int32_t encode(const std::string& raw);                  // inserts
  std::int32_t lookup(const std::string& raw) const;            // kUnseen if absent
  std::optional<std::string> label_of(std::int32_t code) const;

  // Verbatim reconstruction for persistence; rejects duplicates and
  // reserved codes.
  void restore(std::string label, std::int32_t code);

  // First-appearance order; missing is not listed.
  const std::vector<std::pair<std::string, std::int32_t>>& entries() const { return entries_; }

 private:
  bool used(std::int32_t code) const;
  std::vector<std::pair<std::string, std::int32_t>> entries_;
};

// How a continuous column is made categorical before encoding.
struct BinRule {
  enum class Kind { equal_width, quantile };
  Kind kind = Kind::equal_width;
  double min = 0;    // equal_width only
  double max = 0;    // equal_width only
  int count = 0;
};

// Declarative description of a table: which column is the goal, which raw
// value counts as the positive class, what to drop, rename, and bin.
struct SchemaSpec {
  std::string goal;
  std::string positive = "1";
  std::vector<std::string> drop;
  std::map<std::string, std::string> rename;  // csv name -> working name
  std::map<std::string, BinRule> bins;        // keyed by working name

  static SchemaSpec from_json_text(const std::string& text);  // InputError
  static SchemaSpec load(const std::string& path);
  std::string to_json_text() const;

  // The Titanic mapping: drop PassengerId and Name, rename Pclass to TC,
  // goal Survived with positive "1", age in eight decade-wide bins over
  // [0, 80], fare in quartiles.
  static SchemaSpec titanic_default();
};

// Fitted schema: attribute order, encodings, and realised bin edges.
struct TableSchema {
  std::vector<std::string> attributes;        // working names, csv order
  std::string goal;
  std::string positive;
  std::vector<ValueMap> value_maps;           // parallel to attributes
  std::map<std::string, std::vector<double>> bin_edges;  // ascending cut points

  std::optional<std::size_t> attribute_index(const std::string& name) const;
  // `Attr=value` rendering for a coded cell.
  std::string atom_text(std::size_t attribute, std::int32_t code) const;
};

using TableSchemaPtr = std::shared_ptr<const TableSchema>;

struct DataRow {
  std::vector<std::int32_t> attrs;  // parallel to schema attributes
  std::int32_t goal = 0;            // 1 positive, 0 otherwise
  bool operator==(const DataRow&) const = default;
};

struct Dataset {
  TableSchemaPtr schema;
  std::vector<DataRow> rows;
  std::size_t size() const { return rows.size(); }
};

// RFC 4180 CSV: quoted fields, doubled-quote escapes, embedded commas and
// newlines. Every record must match the header width.
Dataset load_csv(const std::string& path, const SchemaSpec& spec);
Dataset parse_csv_text(const std::string& text, const SchemaSpec& spec);

// Raw records (header included), for callers that encode rows against an
// already-trained schema instead of fitting a fresh one.
std::vector<std::vector<std::string>> read_csv_records(const std::string& text);

struct SplitConfig {
  std::uint64_t seed = 0;
  // Fractions fixed at 60/20/20: sizes floor(0.6n) / floor(0.2n) / rest.
};

struct SplitResult {
  Dataset train, cv, test;
};

SplitResult split(const Dataset& ds, const SplitConfig& cfg);  // DatasetTooSmall under 5 rows

// Distinct training rows with multiplicities; mass = count/total.
struct TrainedModel {
  TableSchemaPtr schema;
  std::vector<DataRow> worlds;       // first-appearance order
  std::vector<std::int64_t> counts;  // parallel multiplicities
  std::int64_t total = 0;
  double mu_hat = 1.0;
};

TrainedModel fit_worlds(const Dataset& train);  // EmptyDataset on no rows

// mu if the named column's value in the world equals `code`, else 1-mu.
double likelihood_on_row(const TrainedModel& model, const std::string& column, std::int32_t code,
                         const DataRow& world, double mu);  // UnknownColumn

struct Prediction {
  bool holds = false;                    // probability defined and >= theta
  std::optional<double> probability;     // p(goal positive | attrs)
};

// p(goal=positive | attrs) over the training worlds at the model's mu_hat.
// The probability can be undefined only at mu in {0,1}; the verdict is then
// false.
Prediction predict(const TrainedModel& model, const std::vector<std::int32_t>& attrs,
                   double theta);

// Was the row's own goal atom entailed at theta = 0.5? This is the quantity
// both model selection and accuracy count.
bool row_correct(const TrainedModel& model, const DataRow& row);

// Encode a raw CSV record (sans goal requirement) for prediction: seen
// values map to their training codes, missing cells to the sentinel,
// unseen values to a code matching no training world.
std::vector<std::int32_t> encode_query(const TableSchema& schema,
                                       const std::vector<std::string>& header,
                                       const std::vector<std::string>& record);

// Grid search maximising CV correct-count at theta = 0.5; ties prefer the
// largest mu. The model's mu_hat is ignored during the search.
double select_mu(const TrainedModel& model, const Dataset& cv,
                 const std::vector<double>& grid);  // EmptyGrid

inline std::vector<double> default_mu_grid() { return {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}; }

struct Metrics {
  double accuracy = 0;
  double auc = 0;
  double runtime_per_prediction_s = 0;
};

// Accuracy at theta = 0.5, AUC as the positive-vs-negative rank statistic
// (ties half credit, undefined scores rank below everything, single-class
// test sets score 0.5), wall-clock seconds per prediction.
Metrics evaluate(const TrainedModel& model, const Dataset& test);

// Fraction of test rows whose goal equals the training majority class
// (ties favour the positive class).
double majority_baseline(const Dataset& train, const Dataset& test);

// Versioned JSON round trip.
std::string model_to_json_text(const TrainedModel& model);
TrainedModel model_from_json_text(const std::string& text);  // InputError
void save_model(const std::string& path, const TrainedModel& model);
TrainedModel load_model(const std::string& path);

// One full run: split, fit, select mu on CV, evaluate on test.
struct PipelineResult {
  TrainedModel model;
  Metrics metrics;
  std::uint64_t seed = 0;
};

PipelineResult run_pipeline(const Dataset& ds, std::uint64_t seed, const std::vector<double>& grid);

// Table-2 protocol: `splits` runs with seeds base_seed, base_seed+1, ...,
// aggregated in seed order.
struct AggregateMetrics {
  int splits = 0;
  double accuracy_mean = 0, accuracy_std = 0;
  double auc_mean = 0, auc_std = 0;
  double runtime_mean_s = 0;
  std::vector<double> mu_hats;  // one per split, seed order
};

AggregateMetrics evaluate_splits(const Dataset& ds, int splits, std::uint64_t base_seed,
                                 const std::vector<double>& grid);

}  // namespace bentail
