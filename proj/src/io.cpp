#include "bentail/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "bentail/errors.hpp"

namespace bentail::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Split into trimmed lines, keeping 1-based numbering for error messages.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    std::size_t nl = text.find('\n');
    std::string_view line = nl == std::string_view::npos ? text : text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    out.emplace_back(lineno, trim(line));
  }
  return out;
}

bool is_comment(std::string_view line) { return !line.empty() && line.front() == '#'; }

std::vector<std::string> split_csv_names(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    std::size_t comma = s.find(',');
    std::string_view piece = trim(comma == std::string_view::npos ? s : s.substr(0, comma));
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::vector<std::string>> atoms_declaration(std::string_view text) {
  constexpr std::string_view kPrefix = "# atoms:";
  for (auto [lineno, line] : lines_of(text)) {
    (void)lineno;
    if (line.substr(0, kPrefix.size()) == kPrefix) {
      auto names = split_csv_names(line.substr(kPrefix.size()));
      if (names.empty()) throw InputError("empty '# atoms:' declaration");
      return names;
    }
  }
  return std::nullopt;
}

KnowledgeBase parse_kb_text(std::string_view text, Signature& sig) {
  KnowledgeBase kb;
  for (auto [lineno, line] : lines_of(text)) {
    if (line.empty() || is_comment(line)) continue;
    try {
      kb.add(parse_formula(line, sig));
    } catch (const SyntaxError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path, Signature& sig) {
  return parse_kb_text(read_file(path), sig);
}

WorldDistribution parse_prior_text(std::string_view text, WorldSpacePtr space) {
  std::vector<std::optional<Rational>> phi(space->size());
  bool header_seen = false;
  for (auto [lineno, line] : lines_of(text)) {
    if (line.empty() || is_comment(line)) continue;
    if (!header_seen) {
      if (split_csv_names(line) != std::vector<std::string>{"world", "phi"})
        throw InputError("line " + std::to_string(lineno) + ": expected header 'world,phi'");
      header_seen = true;
      continue;
    }
    std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'bits,probability'");
    std::uint32_t index;
    Rational p;
    try {
      index = space->index_from_bits(trim(line.substr(0, comma)));
      p = rational_from_string(trim(line.substr(comma + 1)));
    } catch (const Error& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (phi[index]) throw InputError("line " + std::to_string(lineno) + ": duplicate world");
    if (!is_probability(p))
      throw InputError("line " + std::to_string(lineno) + ": probability outside [0,1]");
    phi[index] = p;
  }
  if (!header_seen) throw InputError("prior file has no 'world,phi' header");
  std::vector<Rational> dense(space->size());
  Rational sum{0};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!phi[i]) throw InputError("prior file misses world " + space->bits_of(static_cast<std::uint32_t>(i)));
    dense[i] = *phi[i];
    sum += dense[i];
  }
  // Exact rationals make "tolerance" precise: renormalise drift up to 1e-9,
  // reject anything larger.
  Rational drift = sum - 1;
  if (drift < 0) drift = -drift;
  if (drift > Rational(1, 1000000000)) throw InputError("prior does not sum to 1");
  if (sum != 1)
    for (Rational& p : dense) p /= sum;
  return WorldDistribution{std::move(space), std::move(dense)};
}

WorldDistribution load_prior(const std::string& path, const WorldSpacePtr& space) {
  std::string text = read_file(path);
  if (auto declared = atoms_declaration(text); declared && *declared != space->atom_names())
    throw InputError("prior file '" + path + "' declares different atoms");
  return parse_prior_text(text, space);
}

WorldDistribution load_prior(const std::string& path) {
  std::string text = read_file(path);
  auto declared = atoms_declaration(text);
  if (!declared) throw InputError("prior file '" + path + "' needs a '# atoms:' declaration");
  Signature sig(*declared, /*extensible=*/false);
  return parse_prior_text(text, WorldSpace::enumerate(sig));
}

PreferentialStructure parse_preference_text(std::string_view text, WorldSpacePtr space) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (auto [lineno, line] : lines_of(text)) {
    if (line.empty() || is_comment(line)) continue;
    std::size_t gt = line.find('>');
    if (gt == std::string_view::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'bits > bits'");
    try {
      edges.emplace_back(space->index_from_bits(trim(line.substr(0, gt))),
                         space->index_from_bits(trim(line.substr(gt + 1))));
    } catch (const Error& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return PreferentialStructure::from_edges(std::move(space), std::move(edges));
}

PreferentialStructure load_preference(const std::string& path, const WorldSpacePtr& space) {
  std::string text = read_file(path);
  if (auto declared = atoms_declaration(text); declared && *declared != space->atom_names())
    throw InputError("preference file '" + path + "' declares different atoms");
  return parse_preference_text(text, space);
}

PreferentialStructure load_preference(const std::string& path) {
  std::string text = read_file(path);
  auto declared = atoms_declaration(text);
  if (!declared) throw InputError("preference file '" + path + "' needs a '# atoms:' declaration");
  Signature sig(*declared, /*extensible=*/false);
  return parse_preference_text(text, WorldSpace::enumerate(sig));
}

Settings parse_settings_text(std::string_view text) {
  Settings out;
  for (auto [lineno, line] : lines_of(text)) {
    if (line.empty() || is_comment(line)) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    try {
      if (key == "mu") {
        out.mu = rational_from_string(value);
        if (!is_probability(*out.mu)) throw InputError("mu outside [0,1]");
      } else if (key == "theta") {
        out.theta = rational_from_string(value);
        if (!is_probability(*out.theta)) throw InputError("theta outside [0,1]");
      } else if (key == "arithmetic") {
        if (value != "exact" && value != "float")
          throw InputError("arithmetic must be 'exact' or 'float'");
        out.arithmetic = value;
      } else {
        throw InputError("unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Settings load_settings(const std::string& path) { return parse_settings_text(read_file(path)); }

}  // namespace bentail::io
