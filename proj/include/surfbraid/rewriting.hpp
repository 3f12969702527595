#pragma once

// Identity certificates over a finite presentation and a bounded search that
// produces them.
//
// A certificate replays four moves on a literal word:
//   InsertRelatorConjugate  w[:p] . c r^e c^-1 . w[p:]
//   DeleteRelatorConjugate  w[:p] . (c r^e c^-1)^-1 . w[p:], then cancellation
//                           across the two seams of the inserted block
//   FreeCancel              removes the cancelling pair at p, p+1
//   FreeInsert              inserts x x^-1 at p (x is the one-letter conjugator)
// Each move preserves the group element, so an accepted replay is a proof.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "surfbraid/presentations.hpp"

namespace surfbraid {

class DerivationError : public std::runtime_error {
 public:
  DerivationError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

enum class StepAction { InsertRelatorConjugate, DeleteRelatorConjugate, FreeCancel, FreeInsert };

struct DerivationStep {
  StepAction action = StepAction::FreeCancel;
  std::size_t relator_index = 0;
  bool inverse_flag = false;
  BraidWord conjugator;  // for FreeInsert / FreeCancel: the letter x of the pair x x^-1
  std::size_t position = 0;

  bool operator==(const DerivationStep&) const = default;
};

struct Derivation {
  std::string label;
  BraidWord from;
  BraidWord to;
  std::vector<DerivationStep> steps;

  bool operator==(const Derivation&) const = default;
};

namespace detail {

inline BraidWord relator_block(const Presentation& p, const DerivationStep& s, std::size_t index) {
  if (s.relator_index >= p.relators.size())
    throw DerivationError(index, "relator index " + std::to_string(s.relator_index) + " out of range");
  const auto& r = p.relators[s.relator_index];
  return s.conjugator * (s.inverse_flag ? invert(r) : r) * invert(s.conjugator);
}

}  // namespace detail

/// Applies one step in place; throws DerivationError on a malformed step.
inline void apply_step(const Presentation& p, std::vector<Letter>& w, const DerivationStep& s, std::size_t index) {
  if (s.position > w.size())
    throw DerivationError(index, "position " + std::to_string(s.position) + " beyond word length " +
                                     std::to_string(w.size()));
  if (!p.covers(s.conjugator)) throw DerivationError(index, "conjugator uses letters outside the presentation");
  const auto pos = static_cast<std::ptrdiff_t>(s.position);
  switch (s.action) {
    case StepAction::InsertRelatorConjugate: {
      const auto block = detail::relator_block(p, s, index);
      w.insert(w.begin() + pos, block.begin(), block.end());
      break;
    }
    case StepAction::DeleteRelatorConjugate: {
      const auto block = invert(detail::relator_block(p, s, index));
      std::vector<Letter> out(w.begin(), w.begin() + pos);
      for (const auto& l : block) {
        if (!out.empty() && out.back().cancels(l))
          out.pop_back();
        else
          out.push_back(l);
      }
      auto rest = w.begin() + pos;
      while (rest != w.end() && !out.empty() && out.back().cancels(*rest)) {
        out.pop_back();
        ++rest;
      }
      out.insert(out.end(), rest, w.end());
      w = std::move(out);
      break;
    }
    case StepAction::FreeCancel: {
      if (s.position + 1 >= w.size()) throw DerivationError(index, "free cancel past the end of the word");
      if (!w[s.position].cancels(w[s.position + 1]))
        throw DerivationError(index, "letters at " + std::to_string(s.position) + " do not cancel");
      if (!s.conjugator.empty() && (s.conjugator.size() != 1 || s.conjugator[0] != w[s.position]))
        throw DerivationError(index, "free cancel letter mismatch");
      w.erase(w.begin() + pos, w.begin() + pos + 2);
      break;
    }
    case StepAction::FreeInsert: {
      if (s.conjugator.size() != 1) throw DerivationError(index, "free insert needs exactly one letter");
      const Letter x = s.conjugator[0];
      w.insert(w.begin() + pos, {x, x.inverse()});
      break;
    }
  }
}

struct VerifyResult {
  bool ok = false;
  std::optional<std::size_t> failed_step;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Replays every step; the final word must equal `to` letter for letter.
inline VerifyResult check_derivation(const Presentation& p, const Derivation& d) {
  if (!p.covers(d.from) || !p.covers(d.to)) return {false, std::nullopt, "claim uses letters outside " + p.name};
  std::vector<Letter> w = d.from.letters();
  try {
    for (std::size_t i = 0; i < d.steps.size(); ++i) apply_step(p, w, d.steps[i], i);
  } catch (const DerivationError& e) {
    return {false, e.step(), e.what()};
  }
  if (BraidWord(w) != d.to) return {false, std::nullopt, "replay ends at " + format(BraidWord(w))};
  return {true, std::nullopt, ""};
}

inline bool verify_derivation(const Presentation& p, const Derivation& d) { return check_derivation(p, d).ok; }

/// Every intermediate word of the replay (from, after step 1, ...).
inline std::vector<BraidWord> replay_trace(const Presentation& p, const Derivation& d) {
  std::vector<BraidWord> out{d.from};
  std::vector<Letter> w = d.from.letters();
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    apply_step(p, w, d.steps[i], i);
    out.emplace_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline const char* action_name(StepAction a) {
  switch (a) {
    case StepAction::InsertRelatorConjugate: return "insert";
    case StepAction::DeleteRelatorConjugate: return "delete";
    case StepAction::FreeCancel: return "cancel";
    case StepAction::FreeInsert: return "pair";
  }
  return "?";
}

inline StepAction parse_action(const std::string& s) {
  if (s == "insert") return StepAction::InsertRelatorConjugate;
  if (s == "delete") return StepAction::DeleteRelatorConjugate;
  if (s == "cancel") return StepAction::FreeCancel;
  if (s == "pair") return StepAction::FreeInsert;
  throw std::invalid_argument("unknown step action '" + s + "'");
}

inline nlohmann::ordered_json to_json(const Derivation& d, const std::string& presentation_name) {
  nlohmann::ordered_json j;
  j["format"] = "surfbraid-derivation";
  j["version"] = 1;
  j["presentation"] = presentation_name;
  j["label"] = d.label;
  j["from"] = format(d.from);
  j["to"] = format(d.to);
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : d.steps) {
    nlohmann::ordered_json js = nlohmann::ordered_json::array();
    js.push_back(action_name(s.action));
    js.push_back(s.relator_index);
    js.push_back(s.inverse_flag ? 1 : 0);
    js.push_back(format(s.conjugator));
    js.push_back(s.position);
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

inline Derivation derivation_from_json(const nlohmann::ordered_json& j) {
  if (j.value("format", "") != "surfbraid-derivation") throw std::invalid_argument("not a derivation document");
  if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported derivation version");
  Derivation d;
  d.label = j.value("label", "");
  d.from = parse_word(j.at("from").get<std::string>());
  d.to = parse_word(j.at("to").get<std::string>());
  for (const auto& js : j.at("steps")) {
    DerivationStep s;
    s.action = parse_action(js.at(0).get<std::string>());
    s.relator_index = js.at(1).get<std::size_t>();
    s.inverse_flag = js.at(2).get<int>() != 0;
    s.conjugator = parse_word(js.at(3).get<std::string>());
    s.position = js.at(4).get<std::size_t>();
    d.steps.push_back(std::move(s));
  }
  return d;
}

/// Canonical text: one step per line so large certificates stay diffable.
inline std::string serialize(const Derivation& d, const std::string& presentation_name) {
  const auto j = to_json(d, presentation_name);
  std::string out = "{\n";
  for (const auto& key : {"format", "version", "presentation", "label", "from", "to"})
    out += "  " + nlohmann::ordered_json(key).dump() + ": " + j[key].dump() + ",\n";
  out += "  \"steps\": [";
  const auto& steps = j["steps"];
  for (std::size_t i = 0; i < steps.size(); ++i) out += (i ? ",\n    " : "\n    ") + steps[i].dump();
  out += steps.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

inline Derivation deserialize(const std::string& text) {
  return derivation_from_json(nlohmann::ordered_json::parse(text));
}

// ---------------------------------------------------------------------------
// Certificate construction helpers

/// Appends steps while tracking the current word.
class DerivationBuilder {
 public:
  DerivationBuilder(const Presentation& p, BraidWord from) : p_(p), word_(from.letters()) {
    d_.from = std::move(from);
  }

  std::size_t size() const { return word_.size(); }
  const std::vector<Letter>& word() const { return word_; }

  void push(const DerivationStep& s) {
    apply_step(p_, word_, s, d_.steps.size());
    d_.steps.push_back(s);
  }
  void free_insert(std::size_t pos, Letter x) {
    push({StepAction::FreeInsert, 0, false, BraidWord{x}, pos});
  }
  void free_cancel(std::size_t pos) {
    if (pos >= word_.size()) throw DerivationError(d_.steps.size(), "free cancel past the end of the word");
    push({StepAction::FreeCancel, 0, false, BraidWord{word_[pos]}, pos});
  }
  void insert_relator(std::size_t idx, bool inverse, BraidWord conj, std::size_t pos) {
    push({StepAction::InsertRelatorConjugate, idx, inverse, std::move(conj), pos});
  }
  /// Cancels the nested block u^-1 u (each of length m) starting at pos.
  void cancel_nested(std::size_t pos, std::size_t m) {
    for (std::size_t k = m; k-- > 0;) free_cancel(pos + k);
  }
  /// Inserts a freely trivial word at pos using FreeInsert only.
  void insert_trivial(std::size_t pos, const BraidWord& q) {
    // match each letter with its cancelling partner (stack discipline)
    std::vector<std::size_t> partner(q.size(), q.size()), stack;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (!stack.empty() && q[stack.back()].cancels(q[i])) {
        partner[stack.back()] = i;
        stack.pop_back();
      } else {
        stack.push_back(i);
      }
    }
    if (!stack.empty()) throw std::logic_error("insert_trivial: word is not freely trivial");
    build_trivial(pos, q, partner, 0, q.size());
  }
  /// Replays a certificate whose start word sits at `offset` of the current word.
  void replay(const Derivation& d, std::size_t offset) {
    for (auto s : d.steps) {
      s.position += offset;
      push(s);
    }
  }

  Derivation finish(BraidWord to, std::string label) {
    if (BraidWord(word_) != to) throw std::logic_error("builder did not reach the claimed word");
    d_.to = std::move(to);
    d_.label = std::move(label);
    return std::move(d_);
  }

 private:
  void build_trivial(std::size_t pos, const BraidWord& q, const std::vector<std::size_t>& partner, std::size_t lo,
                     std::size_t hi) {
    while (lo < hi) {
      const std::size_t mate = partner[lo];
      free_insert(pos, q[lo]);
      build_trivial(pos + 1, q, partner, lo + 1, mate);
      pos += mate - lo + 1;
      lo = mate + 1;
    }
  }

  const Presentation& p_;
  std::vector<Letter> word_;
  Derivation d_;
};

namespace detail {

inline std::size_t block_length(const Presentation& p, const DerivationStep& s) {
  return 2 * s.conjugator.size() + p.relators.at(s.relator_index).size();
}

}  // namespace detail

/// empty -> d.from, built from a certificate d.from -> empty.
inline Derivation reverse_certificate(const Presentation& p, const Derivation& d) {
  if (!d.to.empty()) throw std::invalid_argument("reverse_certificate expects a certificate ending at empty");
  Derivation out;
  out.label = d.label + " (reversed)";
  out.to = d.from;
  out.steps.reserve(d.steps.size());
  for (auto it = d.steps.rbegin(); it != d.steps.rend(); ++it) {
    const auto& s = *it;
    switch (s.action) {
      case StepAction::InsertRelatorConjugate: {
        const std::size_t k = detail::block_length(p, s);
        out.steps.push_back({StepAction::InsertRelatorConjugate, s.relator_index, !s.inverse_flag, s.conjugator,
                             s.position + k});
        // block B followed by B^-1: cancel from the middle outwards
        const auto block = detail::relator_block(p, s, 0);
        for (std::size_t j = k; j-- > 0;)
          out.steps.push_back({StepAction::FreeCancel, 0, false, BraidWord{block[j]}, s.position + j});
        break;
      }
      case StepAction::DeleteRelatorConjugate:
        throw std::invalid_argument("reverse_certificate: delete steps are not reversible");
      case StepAction::FreeCancel:
        if (s.conjugator.size() != 1) throw std::invalid_argument("reverse_certificate: free cancel without letter");
        out.steps.push_back({StepAction::FreeInsert, 0, false, s.conjugator, s.position});
        break;
      case StepAction::FreeInsert:
        out.steps.push_back({StepAction::FreeCancel, 0, false, s.conjugator, s.position});
        break;
    }
  }
  return out;
}

/// Certificate for w^-1 -> empty obtained from one for w -> empty by mirroring
/// every intermediate word (reverse the letters, flip exponents).
inline Derivation mirror_certificate(const Presentation& p, const Derivation& d) {
  if (!d.to.empty()) throw std::invalid_argument("mirror_certificate expects a certificate ending at empty");
  Derivation out;
  out.label = d.label + " (mirrored)";
  out.from = invert(d.from);
  std::size_t len = d.from.size();
  for (const auto& s : d.steps) {
    switch (s.action) {
      case StepAction::InsertRelatorConjugate: {
        const std::size_t k = detail::block_length(p, s);
        out.steps.push_back({StepAction::InsertRelatorConjugate, s.relator_index, !s.inverse_flag, s.conjugator,
                             len - s.position});
        len += k;
        break;
      }
      case StepAction::DeleteRelatorConjugate:
        throw std::invalid_argument("mirror_certificate: delete steps are not supported");
      case StepAction::FreeCancel:
        // the mirrored pair starts with S[p+1]^-1 = S[p]
        out.steps.push_back({StepAction::FreeCancel, 0, false, s.conjugator, len - s.position - 2});
        len -= 2;
        break;
      case StepAction::FreeInsert:
        out.steps.push_back({StepAction::FreeInsert, 0, false, s.conjugator, len - s.position});
        len += 2;
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

/// Alphabet of base generators plus macro letters standing for longer words.
class Alphabet {
 public:
  explicit Alphabet(const Presentation& p) {
    for (const auto& g : p.generators) {
      names_.push_back(to_string(g));
      expansion_.push_back(word_of(g));
      definition_.emplace_back();
    }
    base_count_ = static_cast<int>(names_.size());
  }

  int size() const { return static_cast<int>(names_.size()); }
  int base_count() const { return base_count_; }
  bool is_macro(int g) const { return g >= base_count_; }
  const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
  const std::vector<int>& definition(int g) const { return definition_[static_cast<std::size_t>(g)]; }

  /// Macro names are an uppercase letter followed by optional digits.
  int add_macro(const std::string& name, const std::vector<int>& def) {
    if (name.empty() || name[0] < 'A' || name[0] > 'Z') throw std::invalid_argument("bad macro name " + name);
    if (find(name)) throw std::invalid_argument("duplicate macro " + name);
    BraidWord e = expand(def);
    if (e.empty()) throw std::invalid_argument("macro " + name + " expands to the empty word");
    names_.push_back(name);
    expansion_.push_back(std::move(e));
    definition_.push_back(def);
    return size() - 1;
  }

  std::optional<int> find(const std::string& name) const {
    for (int g = 0; g < size(); ++g)
      if (names_[static_cast<std::size_t>(g)] == name) return g;
    return std::nullopt;
  }

  static int letter(int g, bool inverse) { return 2 * g + (inverse ? 1 : 0); }
  static int inv(int code) { return code ^ 1; }

  const BraidWord& expand_positive(int g) const { return expansion_[static_cast<std::size_t>(g)]; }
  BraidWord expand_letter(int code) const {
    const auto& e = expansion_[static_cast<std::size_t>(code / 2)];
    return code % 2 ? invert(e) : e;
  }
  std::size_t letter_length(int code) const { return expansion_[static_cast<std::size_t>(code / 2)].size(); }
  BraidWord expand(const std::vector<int>& w) const {
    BraidWord out;
    for (int c : w) out.append(expand_letter(c));
    return out;
  }
  template <class Seq>
  std::size_t expanded_length(const Seq& w) const {
    std::size_t n = 0;
    for (auto c : w) n += letter_length(static_cast<int>(c));
    return n;
  }

  std::vector<int> from_base(const Presentation& p, const BraidWord& w) const {
    std::vector<int> out;
    for (const auto& l : w) {
      auto idx = p.index_of(l.gen);
      if (!idx) throw std::invalid_argument("letter " + to_string(l.gen) + " not in " + p.name);
      out.push_back(letter(static_cast<int>(*idx), l.exp < 0));
    }
    return out;
  }

  /// Parses words mixing base tokens (s1, r2^-1) and macro names (D5, A^-1).
  std::vector<int> parse(const std::string& text) const {
    std::vector<int> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      bool inverse = false;
      if (tok.size() > 3 && tok.ends_with("^-1")) {
        inverse = true;
        tok.resize(tok.size() - 3);
      }
      auto g = find(tok);
      if (!g) throw std::invalid_argument("unknown letter '" + tok + "'");
      out.push_back(letter(*g, inverse));
    }
    return out;
  }

  std::string format(const std::vector<int>& w) const {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ' ';
      s += names_[static_cast<std::size_t>(w[i] / 2)] + (w[i] % 2 ? "^-1" : "");
    }
    return s;
  }

 private:
  int base_count_ = 0;
  std::vector<std::string> names_;
  std::vector<BraidWord> expansion_;
  std::vector<std::vector<int>> definition_;
};

inline std::vector<int> invert_ext(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (auto& c : out) c = Alphabet::inv(c);
  return out;
}

inline std::vector<int> free_reduce_ext(const std::vector<int>& w) {
  std::vector<int> out;
  for (int c : w) {
    if (!out.empty() && out.back() == Alphabet::inv(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

/// Free and cyclic reduction.
inline std::vector<int> cyclic_reduce_ext(const std::vector<int>& w) {
  auto r = free_reduce_ext(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == Alphabet::inv(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return {r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi)};
}

struct SearchBudget {
  std::size_t max_expansions = 1000000;
  std::size_t max_nodes = 2000000;  // stored search states
  std::size_t max_word_length = 0;  // 0: 4 * max(|from|, |to|, longest rule)
  int max_growth = 2;               // replacement may exceed the matched subword by this much
  int depth_weight = 1;
  int length_weight = 4;
};

struct SearchStats {
  std::size_t expansions = 0;
  std::size_t generated = 0;
  std::size_t word_cap = 0;
  std::size_t path_length = 0;
  bool found = false;
  bool exhausted = false;  // frontier emptied before the budget ran out
};

enum class RuleKind { Relator, Definition, Lemma };

struct Rule {
  RuleKind kind = RuleKind::Relator;
  std::size_t ref = 0;  // relator index, macro generator, or lemma index
  std::vector<int> word;
  std::string label;
};

struct Lemma {
  std::string label;
  std::vector<int> word;  // cyclically reduced; expand(word) = 1
  Derivation certificate;  // expand(word) -> empty
  Derivation built;        // empty -> expand(word)
  Derivation built_inverse;  // empty -> expand(word)^-1
};

/// Rules, macros and proven lemmas over one presentation.
class RuleBook {
 public:
  explicit RuleBook(Presentation p) : p_(std::move(p)), alpha_(p_) {
    for (std::size_t i = 0; i < p_.relators.size(); ++i)
      rules_.push_back({RuleKind::Relator, i, alpha_.from_base(p_, p_.relators[i]),
                        p_.relator_labels.size() > i ? p_.relator_labels[i] : "relator"});
  }

  const Presentation& presentation() const { return p_; }
  const Alphabet& alphabet() const { return alpha_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Lemma>& lemmas() const { return lemmas_; }
  std::vector<int> parse(const std::string& s) const { return alpha_.parse(s); }

  int add_macro(const std::string& name, const std::string& def) {
    const int g = alpha_.add_macro(name, alpha_.parse(def));
    auto w = alpha_.definition(g);
    w.insert(w.begin(), Alphabet::letter(g, true));
    rules_.push_back({RuleKind::Definition, static_cast<std::size_t>(g), cyclic_reduce_ext(w), "def " + name});
    return g;
  }

  void add_lemma(const std::string& label, const std::vector<int>& word, Derivation cert) {
    if (alpha_.expand(word) != cert.from || !cert.to.empty())
      throw std::invalid_argument("lemma " + label + ": certificate does not prove word = 1");
    Lemma l;
    l.label = label;
    l.word = word;
    l.built = reverse_certificate(p_, cert);
    l.built_inverse = reverse_certificate(p_, mirror_certificate(p_, cert));
    l.certificate = std::move(cert);
    rules_.push_back({RuleKind::Lemma, lemmas_.size(), l.word, label});
    lemmas_.push_back(std::move(l));
  }

  /// Restricts the rule set used by the search (all rules by default).
  void set_active(std::vector<bool> mask) { active_ = std::move(mask); }
  bool active(std::size_t rule) const { return active_.empty() || (rule < active_.size() && active_[rule]); }

 private:
  Presentation p_;
  Alphabet alpha_;
  std::vector<Rule> rules_;
  std::vector<Lemma> lemmas_;
  std::vector<bool> active_;
};

namespace detail {

struct Variant {
  std::size_t rule;
  int exponent;          // +1 or -1
  std::size_t rotation;  // rotation of rule^exponent
  std::string u;         // matched subword
  std::string replacement;
};

struct Move {
  std::size_t shift = 0;  // rotate the current word left by this many letters
  std::size_t variant = 0;
};

inline std::string to_key(const std::vector<int>& w) {
  std::string s(w.size(), '\0');
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = static_cast<char>(w[i]);
  return s;
}
inline std::vector<int> from_key(const std::string& s) {
  std::vector<int> w(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) w[i] = static_cast<unsigned char>(s[i]);
  return w;
}

inline bool cancels(char a, char b) { return (static_cast<unsigned char>(a) ^ 1) == static_cast<unsigned char>(b); }

inline std::string reduce_key(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!out.empty() && cancels(out.back(), c))
      out.pop_back();
    else
      out.push_back(c);
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && cancels(out[lo], out[hi - 1])) {
    ++lo;
    --hi;
  }
  return out.substr(lo, hi - lo);
}

/// Least rotation (Booth); keys words up to cyclic permutation.
inline std::string min_rotation(const std::string& s) {
  const std::size_t n = s.size();
  if (n == 0) return s;
  std::string d = s + s;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    long i = f[j - k - 1];
    while (i != -1 && d[j] != d[k + static_cast<std::size_t>(i) + 1]) {
      if (d[j] < d[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && d[j] != d[k]) {
      if (d[j] < d[k]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return d.substr(k, n);
}

inline std::string apply_move(const std::string& w, const Variant& v, std::size_t shift) {
  std::string rotated = w.substr(shift) + w.substr(0, shift);
  return reduce_key(v.replacement + rotated.substr(v.u.size()));
}

}  // namespace detail

/// One search move, stated on the extended alphabet.
struct TraceEntry {
  std::string rule;    // label of the rule that was applied
  std::string before;  // subword replaced
  std::string after;   // replacement
  std::string word;    // resulting cyclic word, freely reduced
};

struct SearchResult {
  std::optional<Derivation> derivation;
  SearchStats stats;
  std::vector<TraceEntry> trace;
  explicit operator bool() const { return derivation.has_value(); }
};

class IdentitySearch {
 public:
  IdentitySearch(const RuleBook& book, SearchBudget budget) : book_(book), budget_(budget) { build_variants(); }

  /// Proves from = to; both words are over the extended alphabet.
  SearchResult prove(const std::vector<int>& from, const std::vector<int>& to, const std::string& label) const {
    const auto& alpha = book_.alphabet();
    SearchResult res;
    std::vector<int> core = from;
    const auto to_inv = invert_ext(to);
    core.insert(core.end(), to_inv.begin(), to_inv.end());

    std::size_t cap = budget_.max_word_length;
    if (cap == 0) {
      std::size_t longest = std::max(from.size(), to.size());
      for (std::size_t r = 0; r < book_.rules().size(); ++r)
        if (book_.active(r)) longest = std::max(longest, book_.rules()[r].word.size());
      cap = 4 * longest;
    }
    res.stats.word_cap = cap;

    const std::string start = detail::reduce_key(detail::to_key(core));
    auto path = search(start, cap, res.stats);
    if (!path) return res;
    res.stats.found = true;
    res.stats.path_length = path->size();
    res.derivation = reconstruct(alpha.expand(from), alpha.expand(to), core, *path, label);
    std::string w = start;
    for (const auto& mv : *path) {
      const auto& v = variants_[mv.variant];
      w = detail::apply_move(w, v, mv.shift);
      res.trace.push_back({book_.rules()[v.rule].label, alpha.format(detail::from_key(v.u)),
                           alpha.format(detail::from_key(v.replacement)), alpha.format(detail::from_key(w))});
    }
    return res;
  }

 private:
  void build_variants() {
    const auto& rules = book_.rules();
    by_first_.assign(static_cast<std::size_t>(2 * book_.alphabet().size()), {});
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (!book_.active(r)) continue;
      const auto& base = rules[r].word;
      for (int e : {1, -1}) {
        const auto w = e > 0 ? base : invert_ext(base);
        const std::size_t L = w.size();
        for (std::size_t k = 0; k < L; ++k) {
          std::vector<int> rot(w.begin() + static_cast<long>(k), w.end());
          rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(k));
          for (std::size_t s = 1; s <= L; ++s) {
            const long growth = static_cast<long>(L - s) - static_cast<long>(s);
            if (growth > budget_.max_growth) continue;
            std::vector<int> u(rot.begin(), rot.begin() + static_cast<long>(s));
            std::vector<int> t(rot.begin() + static_cast<long>(s), rot.end());
            detail::Variant v{r, e, k, detail::to_key(u), detail::to_key(invert_ext(t))};
            if (!seen.insert({v.u, v.replacement}).second) continue;
            by_first_[static_cast<std::size_t>(u[0])].push_back(variants_.size());
            variants_.push_back(std::move(v));
          }
        }
      }
    }
  }

  struct Node {
    std::string word;
    int parent;
    detail::Move move;
    int depth;
  };

  std::optional<std::vector<detail::Move>> search(const std::string& start, std::size_t cap,
                                                  SearchStats& stats) const {
    if (start.empty()) return std::vector<detail::Move>{};
    std::vector<Node> nodes;
    std::unordered_set<std::string> visited;
    using Entry = std::tuple<long, std::size_t, int>;  // score, sequence, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::size_t seq = 0;
    auto score = [&](const std::string& w, int depth) {
      return static_cast<long>(w.size()) * budget_.length_weight + static_cast<long>(depth) * budget_.depth_weight;
    };
    nodes.push_back({start, -1, {}, 0});
    visited.insert(detail::min_rotation(start));
    open.emplace(score(start, 0), seq++, 0);

    while (!open.empty()) {
      if (stats.expansions >= budget_.max_expansions || nodes.size() >= budget_.max_nodes) return std::nullopt;
      const int id = std::get<2>(open.top());
      open.pop();
      ++stats.expansions;
      const std::string w = nodes[static_cast<std::size_t>(id)].word;
      const int depth = nodes[static_cast<std::size_t>(id)].depth;
      const std::size_t L = w.size();
      for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t vid : by_first_[static_cast<unsigned char>(w[i])]) {
          const auto& v = variants_[vid];
          const std::size_t s = v.u.size();
          if (s > L) continue;
          bool match = true;
          for (std::size_t k = 1; k < s && match; ++k) match = w[(i + k) % L] == v.u[k];
          if (!match) continue;
          std::string child = detail::apply_move(w, v, i);
          if (child.size() > cap) continue;
          ++stats.generated;
          if (child.empty()) {
            nodes.push_back({child, id, {i, vid}, depth + 1});
            return path_to(nodes, static_cast<int>(nodes.size()) - 1);
          }
          if (!visited.insert(detail::min_rotation(child)).second) continue;
          nodes.push_back({child, id, {i, vid}, depth + 1});
          open.emplace(score(child, depth + 1), seq++, static_cast<int>(nodes.size()) - 1);
        }
      }
    }
    stats.exhausted = true;
    return std::nullopt;
  }

  static std::vector<detail::Move> path_to(const std::vector<Node>& nodes, int id) {
    std::vector<detail::Move> path;
    for (; nodes[static_cast<std::size_t>(id)].parent >= 0; id = nodes[static_cast<std::size_t>(id)].parent)
      path.push_back(nodes[static_cast<std::size_t>(id)].move);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Replays the search path as base-level steps.
  /// Invariant: word = P . expand(core) . P^-1 . to
  Derivation reconstruct(const BraidWord& from, const BraidWord& to, std::vector<int> core,
                         const std::vector<detail::Move>& path, const std::string& label) const {
    const auto& alpha = book_.alphabet();
    const auto& p = book_.presentation();
    DerivationBuilder b(p, from);
    for (std::size_t j = 0; j < to.size(); ++j) b.free_insert(from.size() + j, to[to.size() - 1 - j].inverse());
    BraidWord prefix;

    auto reduce = [&] {
      for (bool again = true; again;) {
        again = false;
        std::size_t off = prefix.size();
        for (std::size_t j = 0; j + 1 < core.size(); ++j) {
          if (core[j] == Alphabet::inv(core[j + 1])) {
            b.cancel_nested(off, alpha.letter_length(core[j]));
            core.erase(core.begin() + static_cast<long>(j), core.begin() + static_cast<long>(j) + 2);
            again = true;
            break;
          }
          off += alpha.letter_length(core[j]);
        }
      }
      while (core.size() >= 2 && core.front() == Alphabet::inv(core.back())) {
        prefix.append(alpha.expand_letter(core.front()));
        core.pop_back();
        core.erase(core.begin());
      }
    };

    auto rotate_left = [&](std::size_t count) {
      for (std::size_t k = 0; k < count; ++k) {
        const int c = core.front();
        for (const auto& x : alpha.expand_letter(c)) {
          b.free_insert(prefix.size() + alpha.expanded_length(core), x);
          prefix.push_back(x);
        }
        core.erase(core.begin());
        core.push_back(c);
        // the base letters moved one by one; core's expansion is now rotated
      }
    };

    reduce();
    for (const auto& mv : path) {
      const auto& v = variants_[mv.variant];
      rotate_left(mv.shift);
      const auto u = detail::from_key(v.u);
      const auto r = detail::from_key(v.replacement);
      // insert expand(r u^-1), a rotation of the rule to the opposite exponent
      const auto& rule = book_.rules()[v.rule];
      const std::size_t L = rule.word.size();
      const std::size_t rot = (L - v.rotation) % L;
      insert_rotation(b, rule, -v.exponent, rot, prefix.size());
      b.cancel_nested(prefix.size() + alpha.expanded_length(r), alpha.expanded_length(u));
      core.erase(core.begin(), core.begin() + static_cast<long>(u.size()));
      core.insert(core.begin(), r.begin(), r.end());
      reduce();
    }
    if (!core.empty()) throw std::logic_error("search path did not reach the empty word");
    b.cancel_nested(0, prefix.size());
    return b.finish(to, label);
  }

  /// Inserts expand(rotation k of rule^e) at pos.
  void insert_rotation(DerivationBuilder& b, const Rule& rule, int e, std::size_t k, std::size_t pos) const {
    const auto& alpha = book_.alphabet();
    const auto w = e > 0 ? rule.word : invert_ext(rule.word);
    std::vector<int> rot(w.begin() + static_cast<long>(k), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(k));
    if (rule.kind == RuleKind::Definition) {
      b.insert_trivial(pos, alpha.expand(rot));
      return;
    }
    // x^-1 . rule^e . x with x the first k letters, then cancel x^-1 x
    const BraidWord x = alpha.expand(std::vector<int>(w.begin(), w.begin() + static_cast<long>(k)));
    if (rule.kind == RuleKind::Relator) {
      b.insert_relator(rule.ref, e < 0, invert(x), pos);
    } else {
      for (std::size_t j = 0; j < x.size(); ++j) b.free_insert(pos + j, x[x.size() - 1 - j].inverse());
      const auto& lemma = book_.lemmas()[rule.ref];
      b.replay(e > 0 ? lemma.built : lemma.built_inverse, pos + x.size());
    }
    b.cancel_nested(pos, x.size());
  }

  const RuleBook& book_;
  SearchBudget budget_;
  std::vector<detail::Variant> variants_;
  std::vector<std::vector<std::size_t>> by_first_;
};

/// Unseeded search: relators only, base alphabet.
inline SearchResult search_identity(const Presentation& p, const BraidWord& w, SearchBudget budget = {}) {
  RuleBook book(p);
  IdentitySearch s(book, budget);
  return s.prove(book.alphabet().from_base(p, w), {}, "identity");
}

inline SearchResult search_equality(const Presentation& p, const BraidWord& from, const BraidWord& to,
                                    SearchBudget budget = {}) {
  RuleBook book(p);
  IdentitySearch s(book, budget);
  const auto& a = book.alphabet();
  return s.prove(a.from_base(p, from), a.from_base(p, to), "equality");
}

}  // namespace surfbraid
