#include "bentail/logic.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace bentail {

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

Signature::Signature(std::vector<std::string> names, bool extensible, std::size_t max_atoms)
    : extensible_(extensible), max_atoms_(max_atoms) {
  if (names.size() > max_atoms_)
    throw AtomLimitError("signature exceeds the enumeration cap of " + std::to_string(max_atoms_) +
                         " atoms");
  for (auto& n : names) {
    if (n.empty()) throw InputError("empty atom name");
    if (index_.count(n)) throw InputError("duplicate atom name '" + n + "'");
    index_.emplace(n, names_.size());
    names_.push_back(std::move(n));
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Signature::add(std::string_view name) {
  if (name.empty()) throw InputError("empty atom name");
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  if (!extensible_) throw UnknownAtomError(std::string(name));
  if (names_.size() >= max_atoms_)
    throw AtomLimitError("signature exceeds the enumeration cap of " + std::to_string(max_atoms_) +
                         " atoms");
  std::size_t idx = names_.size();
  names_.emplace_back(name);
  index_.emplace(names_.back(), idx);
  return idx;
}

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

struct Formula::Node {
  Connective kind;
  std::string name;  // atom only
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<Node>(Node{Connective::atom, std::move(name), nullptr, nullptr}));
}

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<Node>(Node{Connective::negation, {}, std::move(f.node_), nullptr}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(
      Node{Connective::conjunction, {}, std::move(a.node_), std::move(b.node_)}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(
      Node{Connective::disjunction, {}, std::move(a.node_), std::move(b.node_)}));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(
      Node{Connective::implication, {}, std::move(a.node_), std::move(b.node_)}));
}

Formula Formula::implied_by(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(
      Node{Connective::converse_implication, {}, std::move(a.node_), std::move(b.node_)}));
}

Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(
      Node{Connective::biconditional, {}, std::move(a.node_), std::move(b.node_)}));
}

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  assert(node_->kind == Connective::atom);
  return node_->name;
}

Formula Formula::lhs() const { return Formula(node_->left); }

Formula Formula::rhs() const { return Formula(node_->right); }

bool Formula::operator==(const Formula& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Connective::atom:
      return a->name == b->name;
    case Connective::negation:
      return lhs() == other.lhs();
    default:
      return lhs() == other.lhs() && rhs() == other.rhs();
  }
}

void Formula::collect_atoms(std::vector<std::string>& out) const {
  switch (kind()) {
    case Connective::atom:
      if (std::find(out.begin(), out.end(), atom_name()) == out.end()) out.push_back(atom_name());
      return;
    case Connective::negation:
      lhs().collect_atoms(out);
      return;
    default:
      lhs().collect_atoms(out);
      rhs().collect_atoms(out);
      return;
  }
}

std::vector<std::string> Formula::atoms() const {
  std::vector<std::string> out;
  collect_atoms(out);
  return out;
}

namespace {

// Binding strength; higher binds tighter.
int level_of(Connective k) {
  switch (k) {
    case Connective::atom: return 5;
    case Connective::negation: return 4;
    case Connective::conjunction: return 3;
    case Connective::disjunction: return 2;
    case Connective::implication:
    case Connective::converse_implication: return 1;
    case Connective::biconditional: return 0;
  }
  return 0;
}

const char* symbol_of(Connective k) {
  switch (k) {
    case Connective::conjunction: return " & ";
    case Connective::disjunction: return " | ";
    case Connective::implication: return " -> ";
    case Connective::converse_implication: return " <- ";
    case Connective::biconditional: return " <-> ";
    default: return "";
  }
}

bool right_associative(Connective k) {
  return k == Connective::implication || k == Connective::converse_implication ||
         k == Connective::biconditional;
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::atom:
      out += f.atom_name();
      return;
    case Connective::negation: {
      out += '!';
      bool parens = level_of(f.lhs().kind()) < level_of(Connective::negation);
      if (parens) out += '(';
      render_into(f.lhs(), out);
      if (parens) out += ')';
      return;
    }
    default: {
      int mine = level_of(f.kind());
      bool rassoc = right_associative(f.kind());
      int ll = level_of(f.lhs().kind());
      int rl = level_of(f.rhs().kind());
      bool lp = rassoc ? ll <= mine : ll < mine;
      bool rp = rassoc ? rl < mine : rl <= mine;
      if (lp) out += '(';
      render_into(f.lhs(), out);
      if (lp) out += ')';
      out += symbol_of(f.kind());
      if (rp) out += '(';
      render_into(f.rhs(), out);
      if (rp) out += ')';
      return;
    }
  }
}

}  // namespace

std::string Formula::render() const {
  std::string out;
  render_into(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok { end, lparen, rparen, bang, amp, pipe, arrow, rarrow, darrow, ident };

struct Token {
  Tok kind;
  std::string text;     // ident only
  std::size_t offset;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '=' || c == '?';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view pat) { return text.substr(i).starts_with(pat); };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '(') { out.push_back({Tok::lparen, {}, i}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::rparen, {}, i}); ++i; continue; }
    if (starts("<->") || starts("↔")) {
      out.push_back({Tok::darrow, {}, i});
      i += 3;  // "<->" and U+2194 are both three bytes
      continue;
    }
    if (starts("<-") || starts("←")) {
      out.push_back({Tok::rarrow, {}, i});
      i += starts("<-") ? 2 : 3;
      continue;
    }
    if (starts("->") || starts("→")) {
      out.push_back({Tok::arrow, {}, i});
      i += starts("->") ? 2 : 3;
      continue;
    }
    if (c == '!' || starts("¬")) {
      out.push_back({Tok::bang, {}, i});
      i += c == '!' ? 1 : 2;
      continue;
    }
    if (c == '&' || starts("∧")) {
      out.push_back({Tok::amp, {}, i});
      i += c == '&' ? (starts("&&") ? 2 : 1) : 3;
      continue;
    }
    if (c == '|' || starts("∨")) {
      out.push_back({Tok::pipe, {}, i});
      i += c == '|' ? (starts("||") ? 2 : 1) : 3;
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < text.size() && ident_cont(text[i])) ++i;
      out.push_back({Tok::ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    throw SyntaxError(i, "a formula token");
  }
  out.push_back({Tok::end, {}, text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature& sig) : tokens_(std::move(tokens)), sig_(sig) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::end) throw SyntaxError(peek().offset, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  Formula parse_iff() {
    Formula left = parse_imp();
    if (peek().kind == Tok::darrow) {
      take();
      return Formula::iff(std::move(left), parse_iff());
    }
    return left;
  }

  Formula parse_imp() {
    Formula left = parse_or();
    if (peek().kind == Tok::arrow) {
      take();
      return Formula::implies(std::move(left), parse_imp());
    }
    if (peek().kind == Tok::rarrow) {
      take();
      return Formula::implied_by(std::move(left), parse_imp());
    }
    return left;
  }

  Formula parse_or() {
    Formula left = parse_and();
    while (peek().kind == Tok::pipe) {
      take();
      left = Formula::disj(std::move(left), parse_and());
    }
    return left;
  }

  Formula parse_and() {
    Formula left = parse_unary();
    while (peek().kind == Tok::amp) {
      take();
      left = Formula::conj(std::move(left), parse_unary());
    }
    return left;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::bang) {
      take();
      return Formula::negate(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) {
      take();
      Formula f = parse_iff();
      if (peek().kind != Tok::rparen) throw SyntaxError(peek().offset, "')'");
      take();
      return f;
    }
    if (t.kind == Tok::ident) {
      Token tok = take();
      if (!sig_.index_of(tok.text)) sig_.add(tok.text);
      return Formula::atom(std::move(tok.text));
    }
    throw SyntaxError(t.offset, "a formula");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature& sig) {
  return Parser(tokenize(text), sig).parse();
}

// ---------------------------------------------------------------------------
// Worlds
// ---------------------------------------------------------------------------

PossibleWorld::PossibleWorld(WorldSpacePtr space, std::uint32_t index)
    : space_(std::move(space)), index_(index) {
  assert(index_ < space_->size());
}

bool PossibleWorld::value(std::size_t atom_index) const {
  return space_->truth(index_, atom_index);
}

bool PossibleWorld::value(std::string_view atom_name) const {
  auto idx = space_->index_of_atom(atom_name);
  if (!idx) throw AtomNotInWorldError(std::string(atom_name));
  return space_->truth(index_, *idx);
}

std::string PossibleWorld::bits() const { return space_->bits_of(index_); }

bool PossibleWorld::operator==(const PossibleWorld& other) const {
  return index_ == other.index_ && space_->atom_names() == other.space_->atom_names();
}

WorldSpace::WorldSpace(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

WorldSpacePtr WorldSpace::enumerate(const Signature& sig) {
  if (sig.size() > sig.max_atoms() || sig.size() > 26)
    throw AtomLimitError("cannot enumerate " + std::to_string(sig.size()) + " atoms");
  return WorldSpacePtr(new WorldSpace(sig.names()));
}

PossibleWorld WorldSpace::world(std::uint32_t index) const {
  return PossibleWorld(shared_from_this(), index);
}

std::optional<std::size_t> WorldSpace::index_of_atom(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool WorldSpace::truth(std::uint32_t world_index, std::size_t atom_index) const {
  assert(atom_index < names_.size());
  return (world_index >> (names_.size() - 1 - atom_index)) & 1u;
}

std::string WorldSpace::bits_of(std::uint32_t world_index) const {
  std::string out(names_.size(), '0');
  for (std::size_t j = 0; j < names_.size(); ++j)
    if (truth(world_index, j)) out[j] = '1';
  return out;
}

std::uint32_t WorldSpace::index_from_bits(std::string_view bits) const {
  if (bits.size() != names_.size())
    throw InputError("world bitstring '" + std::string(bits) + "' must have " +
                     std::to_string(names_.size()) + " bits");
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != '0' && bits[j] != '1')
      throw InputError("world bitstring '" + std::string(bits) + "' must be binary");
    if (bits[j] == '1') idx |= 1u << (names_.size() - 1 - j);
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Deliberately strict (no short-circuit): mentioning an atom outside the
// world's signature throws no matter where it sits in the formula.
bool evaluate(const Formula& f, const PossibleWorld& w) {
  switch (f.kind()) {
    case Connective::atom:
      return w.value(f.atom_name());
    case Connective::negation:
      return !evaluate(f.lhs(), w);
    default: {
      bool l = evaluate(f.lhs(), w);
      bool r = evaluate(f.rhs(), w);
      switch (f.kind()) {
        case Connective::conjunction: return l && r;
        case Connective::disjunction: return l || r;
        case Connective::implication: return !l || r;
        case Connective::converse_implication: return l || !r;
        default: return l == r;  // biconditional
      }
    }
  }
}

std::vector<std::uint32_t> model_indices(const KnowledgeBase& kb, const WorldSpace& space) {
  std::vector<std::uint32_t> out;
  const auto n = static_cast<std::uint32_t>(space.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    PossibleWorld w = space.world(i);
    bool all = true;
    for (const Formula& f : kb) {
      if (!evaluate(f, w)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(i);
  }
  return out;
}

std::vector<PossibleWorld> models(const KnowledgeBase& kb, const WorldSpacePtr& space) {
  std::vector<PossibleWorld> out;
  for (std::uint32_t i : model_indices(kb, *space)) out.push_back(space->world(i));
  return out;
}

std::size_t satisfied_count(const KnowledgeBase& kb, const PossibleWorld& w) {
  std::size_t n = 0;
  for (const Formula& f : kb)
    if (evaluate(f, w)) ++n;
  return n;
}

std::vector<std::uint32_t> max_support_indices(const KnowledgeBase& kb, const WorldSpace& space) {
  std::vector<std::uint32_t> out;
  std::size_t best = 0;
  const auto n = static_cast<std::uint32_t>(space.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t c = satisfied_count(kb, space.world(i));
    if (out.empty() || c > best) {
      best = c;
      out.clear();
      out.push_back(i);
    } else if (c == best) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<PossibleWorld> max_support_worlds(const KnowledgeBase& kb, const WorldSpacePtr& space) {
  std::vector<PossibleWorld> out;
  for (std::uint32_t i : max_support_indices(kb, *space)) out.push_back(space->world(i));
  return out;
}

}  // namespace bentail
