#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bentail/consequence.hpp"
#include "bentail/logic.hpp"
#include "bentail/model.hpp"
#include "bentail/numeric.hpp"

namespace bentail::io {

// ---------------------------------------------------------------------------
// Text-file loaders. All formats share the same line discipline: `#` starts
// a comment, blank lines are ignored, and a `# atoms: a,b` comment may
// declare the atom order where noted.
// ---------------------------------------------------------------------------

// Knowledge base: one formula per line.
KnowledgeBase parse_kb_text(std::string_view text, Signature& sig);
KnowledgeBase load_kb(const std::string& path, Signature& sig);

// Prior CSV: header `world,phi`, then one `bitstring,probability` row per
// world (probability as a decimal or `p/q`). Every world must appear exactly
// once. A sum within 1e-9 of 1 is renormalised exactly; anything further off
// is rejected. The one-argument form requires the `# atoms:` declaration.
WorldDistribution load_prior(const std::string& path);
WorldDistribution load_prior(const std::string& path, const WorldSpacePtr& space);
WorldDistribution parse_prior_text(std::string_view text, WorldSpacePtr space);

// Preference edges: `bits > bits` per line, transitively closed on load,
// cycles rejected. The one-argument form requires the `# atoms:` declaration.
PreferentialStructure load_preference(const std::string& path);
PreferentialStructure load_preference(const std::string& path, const WorldSpacePtr& space);
PreferentialStructure parse_preference_text(std::string_view text, WorldSpacePtr space);

// Key = value settings: recognised keys mu, theta, arithmetic (exact|float).
// Unknown keys are rejected so typos fail loudly.
struct Settings {
  std::optional<Rational> mu;
  std::optional<Rational> theta;
  std::optional<std::string> arithmetic;
};

Settings parse_settings_text(std::string_view text);
Settings load_settings(const std::string& path);

// Shared helpers.
std::string read_file(const std::string& path);                 // InputError if unreadable
std::optional<std::vector<std::string>> atoms_declaration(std::string_view text);

}  // namespace bentail::io
