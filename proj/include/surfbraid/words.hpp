#pragma once

// Braid words over the sigma / rho / tau alphabets, plus abstract letters
// g1, g2, ... used by the finite group presentations.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace surfbraid {

class WordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GenKind : std::uint8_t { Sigma, Rho, Tau, Abstract };

struct Generator {
  GenKind kind = GenKind::Sigma;
  int index = 1;

  auto operator<=>(const Generator&) const = default;
};

inline Generator sigma(int i) { return {GenKind::Sigma, i}; }
inline Generator rho(int j) { return {GenKind::Rho, j}; }
inline Generator tau() { return {GenKind::Tau, 1}; }
inline Generator abstract_gen(int k) { return {GenKind::Abstract, k}; }

struct Letter {
  Generator gen;
  int exp = 1;  // +1 or -1

  auto operator<=>(const Letter&) const = default;

  Letter inverse() const { return {gen, -exp}; }
  bool cancels(const Letter& other) const {
    return gen == other.gen && exp == -other.exp;
  }
};

inline char kind_char(GenKind k) {
  switch (k) {
    case GenKind::Sigma: return 's';
    case GenKind::Rho: return 'r';
    case GenKind::Tau: return 't';
    case GenKind::Abstract: return 'g';
  }
  return '?';
}

inline std::string to_string(const Generator& g) {
  return std::string(1, kind_char(g.kind)) + std::to_string(g.index);
}

inline std::string to_string(const Letter& l) {
  return to_string(l.gen) + (l.exp < 0 ? "^-1" : "");
}

/// A word read left to right in temporal order. Concatenation never reduces.
class BraidWord {
 public:
  BraidWord() = default;
  BraidWord(std::initializer_list<Letter> ls) : letters_(ls) {}
  explicit BraidWord(std::vector<Letter> ls) : letters_(std::move(ls)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  Letter& operator[](std::size_t i) { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  auto begin() { return letters_.begin(); }
  auto end() { return letters_.end(); }
  const std::vector<Letter>& letters() const { return letters_; }
  std::vector<Letter>& letters() { return letters_; }

  void push_back(const Letter& l) { letters_.push_back(l); }
  void append(const BraidWord& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  BraidWord& operator*=(const BraidWord& rhs) {
    append(rhs);
    return *this;
  }
  friend BraidWord operator*(BraidWord lhs, const BraidWord& rhs) {
    lhs.append(rhs);
    return lhs;
  }

  bool operator==(const BraidWord&) const = default;
  auto operator<=>(const BraidWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

inline BraidWord word_of(Generator g, int exp = 1) {
  BraidWord w;
  const int step = exp >= 0 ? 1 : -1;
  for (int k = 0; k != exp; k += step) w.push_back({g, step});
  return w;
}

inline BraidWord concat(const BraidWord& u, const BraidWord& v) { return u * v; }

inline BraidWord invert(const BraidWord& w) {
  BraidWord out;
  out.letters().reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return out;
}

inline BraidWord power(const BraidWord& w, int k) {
  const BraidWord base = k >= 0 ? w : invert(w);
  BraidWord out;
  for (int i = 0; i < std::abs(k); ++i) out.append(base);
  return out;
}

/// Stack-based free reduction; the result has no adjacent cancelling pair.
inline BraidWord free_reduce(const BraidWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().cancels(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return BraidWord(std::move(out));
}

inline bool is_freely_reduced(const BraidWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1].cancels(w[i])) return false;
  return true;
}

inline std::string format(const BraidWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += to_string(w[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const BraidWord& w) {
  return os << '[' << format(w) << ']';
}

/// Parses `s1 s2^-1 r1 t1 g2`; tokens are whitespace separated.
inline BraidWord parse_word(std::string_view text) {
  BraidWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    GenKind kind;
    switch (tok[0]) {
      case 's': kind = GenKind::Sigma; break;
      case 'r': kind = GenKind::Rho; break;
      case 't': kind = GenKind::Tau; break;
      case 'g': kind = GenKind::Abstract; break;
      default: throw WordError("malformed token '" + tok + "'");
    }
    std::string_view rest(tok);
    rest.remove_prefix(1);
    int exp = 1;
    if (rest.ends_with("^-1")) {
      exp = -1;
      rest.remove_suffix(3);
    }
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(),
                                     [](char c) { return c >= '0' && c <= '9'; }))
      throw WordError("malformed token '" + tok + "'");
    if (rest.size() > 6) throw WordError("index too large in '" + tok + "'");
    const int index = std::stoi(std::string(rest));
    if (index <= 0) throw WordError("bad index in '" + tok + "'");
    w.push_back({{kind, index}, exp});
  }
  return w;
}

/// Checks generator indices against an ambient strand count n.
inline void check_bounds(const BraidWord& w, int n) {
  for (const auto& l : w) {
    const int i = l.gen.index;
    bool ok = false;
    switch (l.gen.kind) {
      case GenKind::Sigma: ok = i >= 1 && i <= n - 1; break;
      case GenKind::Rho: ok = i >= 1 && i <= n; break;
      case GenKind::Tau: ok = i == 1; break;
      case GenKind::Abstract: ok = i >= 1; break;
    }
    if (!ok)
      throw WordError("generator " + to_string(l.gen) + " out of bounds for n=" +
                      std::to_string(n));
  }
}

/// images[p-1] is the final position of the strand starting at position p.
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n) {
    Permutation p;
    p.images.resize(static_cast<std::size_t>(n));
    std::iota(p.images.begin(), p.images.end(), 1);
    return p;
  }
  static Permutation transposition(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.images[static_cast<std::size_t>(i - 1)],
              p.images[static_cast<std::size_t>(j - 1)]);
    return p;
  }

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }
  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (images[static_cast<std::size_t>(i)] != i + 1) return false;
    return true;
  }
  /// (f ∘ g)(i) = f(g(i)).
  friend Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.size() != g.size()) throw std::invalid_argument("permutation size mismatch");
    Permutation out;
    out.images.resize(g.images.size());
    for (int i = 1; i <= g.size(); ++i)
      out.images[static_cast<std::size_t>(i - 1)] = f(g(i));
    return out;
  }
  Permutation inverse() const {
    Permutation out;
    out.images.resize(images.size());
    for (int i = 1; i <= size(); ++i) out.images[static_cast<std::size_t>((*this)(i) - 1)] = i;
    return out;
  }
  int order() const {
    int result = 1;
    std::vector<bool> seen(images.size(), false);
    for (int i = 1; i <= size(); ++i) {
      if (seen[static_cast<std::size_t>(i - 1)]) continue;
      int len = 0;
      for (int j = i; !seen[static_cast<std::size_t>(j - 1)]; j = (*this)(j)) {
        seen[static_cast<std::size_t>(j - 1)] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }
  bool operator==(const Permutation&) const = default;
};

/// Braid permutation: sigma_i swaps positions i, i+1; rho and tau letters are pure.
/// The image of uv is pi(v) ∘ pi(u).
inline Permutation permutation_image(const BraidWord& w, int n) {
  check_bounds(w, n);
  auto perm = Permutation::identity(n);
  std::vector<int> occupant = perm.images;  // occupant[pos-1] = starting strand
  for (const auto& l : w) {
    if (l.gen.kind != GenKind::Sigma) continue;
    const int i = l.gen.index;
    auto& a = occupant[static_cast<std::size_t>(i - 1)];
    auto& b = occupant[static_cast<std::size_t>(i)];
    std::swap(a, b);
  }
  for (int pos = 1; pos <= n; ++pos)
    perm.images[static_cast<std::size_t>(occupant[static_cast<std::size_t>(pos - 1)] - 1)] = pos;
  return perm;
}

struct ExponentSums {
  long sigma = 0;
  long rho = 0;
  long tau = 0;

  ExponentSums operator+(const ExponentSums& o) const {
    return {sigma + o.sigma, rho + o.rho, tau + o.tau};
  }
  ExponentSums operator-() const { return {-sigma, -rho, -tau}; }
  bool operator==(const ExponentSums&) const = default;
};

inline ExponentSums exponent_sums(const BraidWord& w) {
  ExponentSums s;
  for (const auto& l : w) {
    switch (l.gen.kind) {
      case GenKind::Sigma: s.sigma += l.exp; break;
      case GenKind::Rho: s.rho += l.exp; break;
      case GenKind::Tau: s.tau += l.exp; break;
      case GenKind::Abstract: break;
    }
  }
  return s;
}

inline bool uses_only(const BraidWord& w, GenKind kind) {
  return std::all_of(w.begin(), w.end(), [&](const Letter& l) { return l.gen.kind == kind; });
}

}  // namespace surfbraid
