#include "bentail/classifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bentail/detail/random.hpp"
#include "bentail/errors.hpp"

namespace bentail {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ValueMap
// ---------------------------------------------------------------------------

namespace {

bool is_missing_cell(const std::string& raw) { return raw.empty() || raw == "?"; }

// Non-negative integer literals self-map so "3" stays code 3. Negative
// numbers are treated as opaque labels to keep the sentinel codes free.
std::optional<std::int32_t> integer_code(const std::string& raw) {
  if (raw.empty() || raw.size() > 9) return std::nullopt;
  for (char c : raw)
    if (c < '0' || c > '9') return std::nullopt;
  return static_cast<std::int32_t>(std::strtol(raw.c_str(), nullptr, 10));
}

}  // namespace

bool ValueMap::used(std::int32_t code) const {
  for (const auto& [label, c] : entries_)
    if (c == code) return true;
  return false;
}

std::int32_t ValueMap::encode(const std::string& raw) {
  if (is_missing_cell(raw)) return kMissing;
  for (const auto& [label, code] : entries_)
    if (label == raw) return code;
  std::int32_t code;
  if (auto self = integer_code(raw); self && !used(*self)) {
    code = *self;
  } else {
    code = 1;
    while (used(code)) ++code;
  }
  entries_.emplace_back(raw, code);
  return code;
}

std::int32_t ValueMap::lookup(const std::string& raw) const {
  if (is_missing_cell(raw)) return kMissing;
  for (const auto& [label, code] : entries_)
    if (label == raw) return code;
  return kUnseen;
}

std::optional<std::string> ValueMap::label_of(std::int32_t code) const {
  for (const auto& [label, c] : entries_)
    if (c == code) return label;
  return std::nullopt;
}

void ValueMap::restore(std::string label, std::int32_t code) {
  if (is_missing_cell(label)) throw InputError("value map cannot store a missing label");
  if (code == kMissing || code == kUnseen) throw InputError("value map code is reserved");
  if (used(code) || lookup(label) != kUnseen)
    throw InputError("duplicate value map entry '" + label + "'");
  entries_.emplace_back(std::move(label), code);
}

// ---------------------------------------------------------------------------
// SchemaSpec
// ---------------------------------------------------------------------------

namespace {

BinRule bin_rule_from_json(const json& j) {
  BinRule rule;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "equal_width") {
    rule.kind = BinRule::Kind::equal_width;
    rule.min = j.at("min").get<double>();
    rule.max = j.at("max").get<double>();
    if (!(rule.min < rule.max)) throw InputError("bin rule needs min < max");
  } else if (kind == "quantile") {
    rule.kind = BinRule::Kind::quantile;
  } else {
    throw InputError("unknown bin kind '" + kind + "'");
  }
  rule.count = j.at("count").get<int>();
  if (rule.count < 2) throw InputError("bin count must be at least 2");
  return rule;
}

json bin_rule_to_json(const BinRule& rule) {
  json j;
  if (rule.kind == BinRule::Kind::equal_width) {
    j["kind"] = "equal_width";
    j["min"] = rule.min;
    j["max"] = rule.max;
  } else {
    j["kind"] = "quantile";
  }
  j["count"] = rule.count;
  return j;
}

}  // namespace

SchemaSpec SchemaSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("schema spec is not valid JSON: ") + e.what());
  }
  SchemaSpec spec;
  try {
    spec.goal = j.at("goal").get<std::string>();
    if (j.contains("positive")) spec.positive = j.at("positive").get<std::string>();
    if (j.contains("drop")) spec.drop = j.at("drop").get<std::vector<std::string>>();
    if (j.contains("rename"))
      for (const auto& [from, to] : j.at("rename").items())
        spec.rename[from] = to.get<std::string>();
    if (j.contains("bins"))
      for (const auto& [column, rule] : j.at("bins").items())
        spec.bins[column] = bin_rule_from_json(rule);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad schema spec: ") + e.what());
  }
  if (spec.goal.empty()) throw InputError("schema spec needs a goal column");
  return spec;
}

SchemaSpec SchemaSpec::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string SchemaSpec::to_json_text() const {
  json j;
  j["goal"] = goal;
  j["positive"] = positive;
  j["drop"] = drop;
  j["rename"] = json::object();
  for (const auto& [from, to] : rename) j["rename"][from] = to;
  j["bins"] = json::object();
  for (const auto& [column, rule] : bins) j["bins"][column] = bin_rule_to_json(rule);
  return j.dump(2);
}

SchemaSpec SchemaSpec::titanic_default() {
  SchemaSpec spec;
  spec.goal = "Survived";
  spec.positive = "1";
  spec.drop = {"PassengerId", "Name"};
  spec.rename["Pclass"] = "TC";
  spec.bins["Age"] = BinRule{BinRule::Kind::equal_width, 0.0, 80.0, 8};
  spec.bins["Fare"] = BinRule{BinRule::Kind::quantile, 0.0, 0.0, 4};
  return spec;
}

// ---------------------------------------------------------------------------
// TableSchema
// ---------------------------------------------------------------------------

std::optional<std::size_t> TableSchema::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i] == name) return i;
  return std::nullopt;
}

std::string TableSchema::atom_text(std::size_t attribute, std::int32_t code) const {
  const std::string& name = attributes.at(attribute);
  if (code == ValueMap::kMissing) return name + "=?";
  return name + "=" + std::to_string(code);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

// RFC 4180 state machine over the whole text. Records may span lines inside
// quoted fields; a trailing newline does not produce an empty record.
std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  while (i < n) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field += c;
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted)
          throw MalformedRowError(records.size(), "stray quote inside unquoted field");
        in_quotes = true;
        field_was_quoted = true;
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < n && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_record();
        ++i;
        break;
      default:
        if (field_was_quoted)
          throw MalformedRowError(records.size(), "characters after closing quote");
        field += c;
        ++i;
        break;
    }
  }
  if (in_quotes) throw MalformedRowError(records.size(), "unterminated quoted field");
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();
  return records;
}

std::optional<double> parse_double(const std::string& raw) {
  if (raw.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(raw.c_str(), &end);
  if (end != raw.c_str() + raw.size()) return std::nullopt;
  return v;
}

// Bin index = number of cut points <= v; shared by fitting and prediction.
std::int32_t bin_of(double v, const std::vector<double>& edges) {
  std::int32_t bin = 0;
  for (double e : edges)
    if (e <= v) ++bin;
  return bin;
}

std::vector<double> equal_width_edges(const BinRule& rule) {
  std::vector<double> edges;
  double width = (rule.max - rule.min) / rule.count;
  for (int k = 1; k < rule.count; ++k) edges.push_back(rule.min + width * k);
  return edges;
}

std::vector<double> quantile_edges(const BinRule& rule, std::vector<double> values) {
  std::vector<double> edges;
  if (values.empty()) return edges;
  std::sort(values.begin(), values.end());
  for (int k = 1; k < rule.count; ++k)
    edges.push_back(values[std::min(values.size() - 1, k * values.size() / rule.count)]);
  return edges;
}

}  // namespace

std::vector<std::vector<std::string>> read_csv_records(const std::string& text) {
  return csv_records(text);
}

Dataset parse_csv_text(const std::string& text, const SchemaSpec& spec) {
  std::vector<std::vector<std::string>> records = csv_records(text);
  if (records.empty()) throw EmptyDatasetError();
  const std::vector<std::string>& header = records[0];

  // Working name per raw column, applying renames.
  std::vector<std::string> working(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto it = spec.rename.find(header[c]);
    working[c] = it == spec.rename.end() ? header[c] : it->second;
  }
  auto names_column = [&](const std::string& name, std::size_t c) {
    return header[c] == name || working[c] == name;
  };

  std::optional<std::size_t> goal_col;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (names_column(spec.goal, c)) goal_col = c;
  if (!goal_col) throw MissingColumnError(spec.goal);

  std::vector<std::size_t> kept;  // raw column indices that become attributes
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == *goal_col) continue;
    bool dropped = false;
    for (const std::string& d : spec.drop)
      if (names_column(d, c)) dropped = true;
    if (!dropped) kept.push_back(c);
  }

  TableSchema schema;
  schema.goal = working[*goal_col];
  schema.positive = spec.positive;
  std::set<std::string> seen_names{schema.goal};
  for (std::size_t c : kept) {
    if (!seen_names.insert(working[c]).second)
      throw InputError("duplicate column name '" + working[c] + "' after renaming");
    schema.attributes.push_back(working[c]);
  }
  schema.value_maps.resize(schema.attributes.size());

  if (records.size() < 2) throw EmptyDatasetError();
  for (std::size_t r = 1; r < records.size(); ++r)
    if (records[r].size() != header.size())
      throw MalformedRowError(r, "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(records[r].size()));

  // Realise bin edges: equal-width from the rule alone, quantiles from the
  // column's parseable values across the whole file.
  for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
    auto rule_it = spec.bins.find(schema.attributes[a]);
    if (rule_it == spec.bins.end()) continue;
    const BinRule& rule = rule_it->second;
    if (rule.kind == BinRule::Kind::equal_width) {
      schema.bin_edges[schema.attributes[a]] = equal_width_edges(rule);
    } else {
      std::vector<double> values;
      for (std::size_t r = 1; r < records.size(); ++r)
        if (auto v = parse_double(records[r][kept[a]])) values.push_back(*v);
      schema.bin_edges[schema.attributes[a]] = quantile_edges(rule, std::move(values));
    }
  }

  // Encode every row: binned columns go through their cut points first, and
  // any unparseable or absent cell is the missing category.
  Dataset ds;
  ds.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    DataRow row;
    row.attrs.resize(schema.attributes.size());
    for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
      const std::string& raw = records[r][kept[a]];
      auto edges_it = schema.bin_edges.find(schema.attributes[a]);
      if (edges_it != schema.bin_edges.end()) {
        auto v = parse_double(raw);
        row.attrs[a] = v ? schema.value_maps[a].encode(std::to_string(bin_of(*v, edges_it->second)))
                         : ValueMap::kMissing;
      } else {
        row.attrs[a] = schema.value_maps[a].encode(raw);
      }
    }
    const std::string& goal_raw = records[r][*goal_col];
    if (is_missing_cell(goal_raw)) throw MalformedRowError(r, "missing goal value");
    row.goal = goal_raw == spec.positive ? 1 : 0;
    ds.rows.push_back(std::move(row));
  }
  ds.schema = std::make_shared<const TableSchema>(std::move(schema));
  return ds;
}

Dataset load_csv(const std::string& path, const SchemaSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_text(buf.str(), spec);
}

// ---------------------------------------------------------------------------
// Split / fit
// ---------------------------------------------------------------------------

SplitResult split(const Dataset& ds, const SplitConfig& cfg) {
  const std::size_t n = ds.rows.size();
  if (n < 5) throw DatasetTooSmallError();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(cfg.seed);
  detail::shuffle(order, rng);
  const std::size_t n_train = n * 6 / 10;
  const std::size_t n_cv = n * 2 / 10;
  SplitResult out;
  out.train.schema = out.cv.schema = out.test.schema = ds.schema;
  for (std::size_t i = 0; i < n; ++i) {
    Dataset& part = i < n_train ? out.train : (i < n_train + n_cv ? out.cv : out.test);
    part.rows.push_back(ds.rows[order[i]]);
  }
  return out;
}

TrainedModel fit_worlds(const Dataset& train) {
  if (train.rows.empty()) throw EmptyDatasetError();
  TrainedModel model;
  model.schema = train.schema;
  std::map<std::vector<std::int32_t>, std::size_t> seen;  // full row key -> world slot
  for (const DataRow& row : train.rows) {
    std::vector<std::int32_t> key = row.attrs;
    key.push_back(row.goal);
    auto [it, inserted] = seen.emplace(std::move(key), model.worlds.size());
    if (inserted) {
      model.worlds.push_back(row);
      model.counts.push_back(1);
    } else {
      ++model.counts[it->second];
    }
  }
  model.total = static_cast<std::int64_t>(train.rows.size());
  return model;
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

double likelihood_on_row(const TrainedModel& model, const std::string& column, std::int32_t code,
                         const DataRow& world, double mu) {
  auto idx = model.schema->attribute_index(column);
  if (!idx) {
    if (column == model.schema->goal)
      return (world.goal == code) ? mu : 1.0 - mu;
    throw UnknownColumnError(column);
  }
  return (world.attrs[*idx] == code) ? mu : 1.0 - mu;
}

Prediction predict(const TrainedModel& model, const std::vector<std::int32_t>& attrs,
                   double theta) {
  if (attrs.size() != model.schema->attributes.size())
    throw InputError("query has " + std::to_string(attrs.size()) + " attributes, schema expects " +
                     std::to_string(model.schema->attributes.size()));
  if (theta < 0 || theta > 1) throw InputError("theta outside [0,1]");
  const double mu = model.mu_hat;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < model.worlds.size(); ++i) {
    const DataRow& w = model.worlds[i];
    double like = static_cast<double>(model.counts[i]);
    for (std::size_t j = 0; j < attrs.size(); ++j)
      like *= (w.attrs[j] == attrs[j]) ? mu : 1.0 - mu;
    den += like;
    num += like * ((w.goal == 1) ? mu : 1.0 - mu);
  }
  if (den == 0.0) return Prediction{false, std::nullopt};
  double p = num / den;
  return Prediction{p >= theta, p};
}

bool row_correct(const TrainedModel& model, const DataRow& row) {
  Prediction pred = predict(model, row.attrs, 0.5);
  if (!pred.probability) return false;
  // The row's own goal atom at theta = 0.5; the negative side is 1 - p.
  double p = row.goal == 1 ? *pred.probability : 1.0 - *pred.probability;
  return p >= 0.5;
}

std::vector<std::int32_t> encode_query(const TableSchema& schema,
                                       const std::vector<std::string>& header,
                                       const std::vector<std::string>& record) {
  if (header.size() != record.size())
    throw InputError("query record and header differ in width");
  std::vector<std::int32_t> attrs(schema.attributes.size());
  for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
    const std::string& name = schema.attributes[a];
    std::optional<std::size_t> col;
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) col = c;
    if (!col) throw UnknownColumnError(name);
    const std::string& raw = record[*col];
    auto edges_it = schema.bin_edges.find(name);
    if (edges_it != schema.bin_edges.end()) {
      auto v = parse_double(raw);
      attrs[a] = v ? schema.value_maps[a].lookup(std::to_string(bin_of(*v, edges_it->second)))
                   : ValueMap::kMissing;
    } else {
      attrs[a] = schema.value_maps[a].lookup(raw);
    }
  }
  return attrs;
}

// ---------------------------------------------------------------------------
// Selection / evaluation
// ---------------------------------------------------------------------------

double select_mu(const TrainedModel& model, const Dataset& cv, const std::vector<double>& grid) {
  if (grid.empty()) throw EmptyGridError();
  TrainedModel probe = model;
  long best_count = -1;
  double best_mu = 0.0;
  for (double mu : grid) {
    if (mu < 0 || mu > 1) throw InputError("mu grid value outside [0,1]");
    probe.mu_hat = mu;
    long count = 0;
    for (const DataRow& row : cv.rows)
      if (row_correct(probe, row)) ++count;
    if (count > best_count || (count == best_count && mu > best_mu)) {
      best_count = count;
      best_mu = mu;
    }
  }
  return best_mu;
}

Metrics evaluate(const TrainedModel& model, const Dataset& test) {
  if (test.rows.empty()) throw EmptyDatasetError();
  const std::size_t n = test.rows.size();
  std::vector<double> scores(n);
  std::size_t correct = 0;

  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < n; ++i) {
    Prediction pred = predict(model, test.rows[i].attrs, 0.5);
    // Undefined scores get a sentinel strictly below every defined one.
    scores[i] = pred.probability ? *pred.probability : -1.0;
    if (pred.probability) {
      double own = test.rows[i].goal == 1 ? *pred.probability : 1.0 - *pred.probability;
      if (own >= 0.5) ++correct;
    }
  }
  auto t1 = std::chrono::steady_clock::now();

  Metrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  m.runtime_per_prediction_s =
      std::chrono::duration<double>(t1 - t0).count() / static_cast<double>(n);

  // Rank statistic over positive/negative pairs, ties at half credit.
  std::size_t positives = 0;
  for (const DataRow& row : test.rows)
    if (row.goal == 1) ++positives;
  std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    m.auc = 0.5;  // degenerate single-class test set
    return m;
  }
  double credit = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (test.rows[i].goal != 1) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (test.rows[j].goal == 1) continue;
      if (scores[i] > scores[j]) credit += 1.0;
      else if (scores[i] == scores[j]) credit += 0.5;
    }
  }
  m.auc = credit / (static_cast<double>(positives) * static_cast<double>(negatives));
  return m;
}

double majority_baseline(const Dataset& train, const Dataset& test) {
  if (train.rows.empty() || test.rows.empty()) throw EmptyDatasetError();
  std::size_t train_pos = 0;
  for (const DataRow& row : train.rows)
    if (row.goal == 1) ++train_pos;
  std::int32_t majority = 2 * train_pos >= train.rows.size() ? 1 : 0;
  std::size_t hit = 0;
  for (const DataRow& row : test.rows)
    if (row.goal == majority) ++hit;
  return static_cast<double>(hit) / static_cast<double>(test.rows.size());
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {
constexpr const char* kModelFormat = "bentail-model";
constexpr int kModelVersion = 1;
}  // namespace

std::string model_to_json_text(const TrainedModel& model) {
  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  json schema;
  schema["attributes"] = model.schema->attributes;
  schema["goal"] = model.schema->goal;
  schema["positive"] = model.schema->positive;
  json maps = json::array();
  for (const ValueMap& vm : model.schema->value_maps) {
    json entries = json::array();
    for (const auto& [label, code] : vm.entries()) entries.push_back(json::array({label, code}));
    maps.push_back(std::move(entries));
  }
  schema["value_maps"] = std::move(maps);
  schema["bin_edges"] = json::object();
  for (const auto& [column, edges] : model.schema->bin_edges) schema["bin_edges"][column] = edges;
  j["schema"] = std::move(schema);
  json worlds = json::array();
  for (const DataRow& w : model.worlds) worlds.push_back(w.attrs);
  j["worlds"] = std::move(worlds);
  json goals = json::array();
  for (const DataRow& w : model.worlds) goals.push_back(w.goal);
  j["goals"] = std::move(goals);
  j["counts"] = model.counts;
  j["total"] = model.total;
  j["mu_hat"] = model.mu_hat;
  return j.dump(2);
}

TrainedModel model_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kModelFormat)
      throw InputError("not a model file");
    if (j.at("version").get<int>() != kModelVersion)
      throw InputError("unsupported model version " + j.at("version").dump());
    TableSchema schema;
    const json& js = j.at("schema");
    schema.attributes = js.at("attributes").get<std::vector<std::string>>();
    schema.goal = js.at("goal").get<std::string>();
    schema.positive = js.at("positive").get<std::string>();
    // Restore value maps verbatim: encode() would only reproduce the codes
    // if they were assigned under the same rules, so they are not re-derived.
    for (const json& entries : js.at("value_maps")) {
      ValueMap vm;
      for (const json& pair : entries)
        vm.restore(pair.at(0).get<std::string>(), pair.at(1).get<std::int32_t>());
      schema.value_maps.push_back(std::move(vm));
    }
    if (js.contains("bin_edges"))
      for (const auto& [column, edges] : js.at("bin_edges").items())
        schema.bin_edges[column] = edges.get<std::vector<double>>();
    if (schema.value_maps.size() != schema.attributes.size())
      throw InputError("value maps do not match attributes");

    TrainedModel model;
    model.schema = std::make_shared<const TableSchema>(std::move(schema));
    auto worlds = j.at("worlds").get<std::vector<std::vector<std::int32_t>>>();
    auto goals = j.at("goals").get<std::vector<std::int32_t>>();
    if (worlds.size() != goals.size()) throw InputError("worlds and goals differ in length");
    for (std::size_t i = 0; i < worlds.size(); ++i) {
      if (worlds[i].size() != model.schema->attributes.size())
        throw InputError("world width does not match schema");
      model.worlds.push_back(DataRow{std::move(worlds[i]), goals[i]});
    }
    model.counts = j.at("counts").get<std::vector<std::int64_t>>();
    if (model.counts.size() != model.worlds.size())
      throw InputError("counts do not match worlds");
    model.total = j.at("total").get<std::int64_t>();
    std::int64_t sum = 0;
    for (std::int64_t c : model.counts) {
      if (c <= 0) throw InputError("world count must be positive");
      sum += c;
    }
    if (sum != model.total) throw InputError("counts do not sum to total");
    model.mu_hat = j.at("mu_hat").get<double>();
    if (model.mu_hat < 0 || model.mu_hat > 1) throw InputError("mu_hat outside [0,1]");
    return model;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad model file: ") + e.what());
  }
}

void save_model(const std::string& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << model_to_json_text(model) << '\n';
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json_text(buf.str());
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

PipelineResult run_pipeline(const Dataset& ds, std::uint64_t seed,
                            const std::vector<double>& grid) {
  SplitResult parts = split(ds, SplitConfig{seed});
  TrainedModel model = fit_worlds(parts.train);
  model.mu_hat = select_mu(model, parts.cv, grid);
  PipelineResult out;
  out.metrics = evaluate(model, parts.test);
  out.model = std::move(model);
  out.seed = seed;
  return out;
}

AggregateMetrics evaluate_splits(const Dataset& ds, int splits, std::uint64_t base_seed,
                                 const std::vector<double>& grid) {
  if (splits <= 0) throw InputError("need at least one split");
  std::vector<double> accuracy, auc, runtime;
  AggregateMetrics agg;
  agg.splits = splits;
  for (int i = 0; i < splits; ++i) {
    PipelineResult r = run_pipeline(ds, base_seed + static_cast<std::uint64_t>(i), grid);
    accuracy.push_back(r.metrics.accuracy);
    auc.push_back(r.metrics.auc);
    runtime.push_back(r.metrics.runtime_per_prediction_s);
    agg.mu_hats.push_back(r.model.mu_hat);
  }
  auto mean = [](const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  auto sample_std = [&](const std::vector<double>& xs, double m) {
    if (xs.size() < 2) return 0.0;
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
  };
  agg.accuracy_mean = mean(accuracy);
  agg.accuracy_std = sample_std(accuracy, agg.accuracy_mean);
  agg.auc_mean = mean(auc);
  agg.auc_std = sample_std(auc, agg.auc_mean);
  agg.runtime_mean_s = mean(runtime);
  return agg;
}

}  // namespace bentail
