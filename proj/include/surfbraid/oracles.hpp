#pragma once

// Word-problem oracles through the Artin action on free groups.
//
// Free words are vectors of nonzero ints: +k is x_k, -k its inverse.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfbraid/presentations.hpp"
#include "surfbraid/rewriting.hpp"
#include "surfbraid/words.hpp"

namespace surfbraid {

using FreeWord = std::vector<int>;

inline FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline FreeWord free_concat(FreeWord a, const FreeWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return free_reduce(a);
}

inline std::string format_free(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += "x" + std::to_string(std::abs(w[i])) + (w[i] < 0 ? "^-1" : "");
  }
  return s;
}

/// Endomorphism of the free group F_rank, given by the images of x_1..x_rank.
struct FreeEndo {
  int rank = 0;
  std::vector<FreeWord> images;

  static FreeEndo identity(int rank) {
    FreeEndo f{rank, {}};
    for (int k = 1; k <= rank; ++k) f.images.push_back({k});
    return f;
  }

  FreeWord apply(const FreeWord& w) const {
    FreeWord out;
    for (int x : w) {
      const auto& img = images.at(static_cast<std::size_t>(std::abs(x) - 1));
      if (x > 0)
        out.insert(out.end(), img.begin(), img.end());
      else
        for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
    return free_reduce(out);
  }

  bool is_identity() const { return *this == identity(rank); }
  bool operator==(const FreeEndo&) const = default;
};

/// (f ∘ g)(x) = f(g(x)).
inline FreeEndo compose(const FreeEndo& f, const FreeEndo& g) {
  if (f.rank != g.rank) throw std::invalid_argument("rank mismatch in compose");
  FreeEndo out{g.rank, {}};
  for (const auto& img : g.images) out.images.push_back(f.apply(img));
  return out;
}

inline std::string to_text(const FreeEndo& f) {
  std::string s;
  for (int k = 1; k <= f.rank; ++k)
    s += "x" + std::to_string(k) + " -> " + format_free(f.images[static_cast<std::size_t>(k - 1)]) + "\n";
  return s;
}

namespace detail {

/// Action of sigma_i^{exp} on F_m: sigma_i sends x_i to x_i x_{i+1} x_i^-1 and x_{i+1} to x_i.
inline FreeEndo artin_letter(int m, int i, int exp) {
  auto f = FreeEndo::identity(m);
  auto& a = f.images[static_cast<std::size_t>(i - 1)];
  auto& b = f.images[static_cast<std::size_t>(i)];
  if (exp > 0) {
    a = {i, i + 1, -i};
    b = {i};
  } else {
    a = {i + 1};
    b = {-(i + 1), i, i + 1};
  }
  return f;
}

/// Replaces the image of each basis letter by applying `letter` afterwards.
inline void act_after(FreeEndo& current, const FreeEndo& letter) {
  for (auto& img : current.images) img = letter.apply(img);
}

}  // namespace detail

/// Artin action of a disc braid on F_m; action(uv) = action(v) ∘ action(u).
inline FreeEndo disc_action(int m, const BraidWord& w) {
  auto f = FreeEndo::identity(m);
  for (const auto& l : w) {
    if (l.gen.kind != GenKind::Sigma) throw WordError("disc_action takes sigma letters only, got " + to_string(l));
    if (l.gen.index < 1 || l.gen.index >= m)
      throw WordError(to_string(l) + " out of bounds for " + std::to_string(m) + " strands");
    detail::act_after(f, detail::artin_letter(m, l.gen.index, l.exp));
  }
  return f;
}

/// The disc action pushed to F_{m-1} = F_m / <<x_1...x_m>>, via x_m := (x_1...x_{m-1})^-1.
/// A mapping class of the punctured sphere only fixes this endomorphism up to an inner
/// automorphism, so compare results with is_inner, not equality.
inline FreeEndo sphere_action(int m, const BraidWord& w) {
  if (m < 1) throw std::invalid_argument("sphere_action requires m >= 1");
  const auto disc = disc_action(m, w);
  FreeEndo sub = FreeEndo::identity(m);
  FreeWord tail;
  for (int k = m - 1; k >= 1; --k) tail.push_back(-k);
  sub.images[static_cast<std::size_t>(m - 1)] = tail;
  FreeEndo out{m - 1, {}};
  for (int k = 0; k < m - 1; ++k) {
    FreeWord img = sub.apply(disc.images[static_cast<std::size_t>(k)]);
    out.images.push_back(std::move(img));
  }
  return out;
}

/// If f is conjugation x -> c x c^-1, returns c (reduced, determined up to the centre, which is trivial
/// for rank >= 2). Rank 1: f is inner iff it is the identity.
inline std::optional<FreeWord> inner_conjugator(const FreeEndo& f) {
  if (f.rank == 0) return FreeWord{};
  if (f.rank == 1) return f.is_identity() ? std::optional<FreeWord>(FreeWord{}) : std::nullopt;
  // f(x1) must read c x1 c^-1 with c not ending in x1^{+-1}; every solution is c x1^k.
  const auto& y = f.images[0];
  if (y.size() % 2 == 0) return std::nullopt;
  const std::size_t h = y.size() / 2;
  if (y[h] != 1) return std::nullopt;
  const FreeWord c0(y.begin(), y.begin() + static_cast<long>(h));
  if (free_reduce(free_concat(free_concat(c0, {1}), free_inverse(c0))) != y) return std::nullopt;
  // pin k with x2: c0^-1 f(x2) c0 = x1^k x2 x1^-k
  const FreeWord z = free_concat(free_concat(free_inverse(c0), f.images[1]), c0);
  if (z.size() % 2 == 0) return std::nullopt;
  const std::size_t hz = z.size() / 2;
  if (z[hz] != 2) return std::nullopt;
  long k = 0;
  for (std::size_t i = 0; i < hz; ++i) {
    if (std::abs(z[i]) != 1 || z[i] != z[0]) return std::nullopt;
    k += z[i];
  }
  FreeWord c = c0;
  for (long i = 0; i < std::abs(k); ++i) c.push_back(k > 0 ? 1 : -1);
  c = free_reduce(c);
  for (int j = 1; j <= f.rank; ++j) {
    const FreeWord expect = free_concat(free_concat(c, {j}), free_inverse(c));
    if (f.images[static_cast<std::size_t>(j - 1)] != expect) return std::nullopt;
  }
  return c;
}

inline bool is_inner(const FreeEndo& f) { return inner_conjugator(f).has_value(); }

// ---------------------------------------------------------------------------
// Sphere word problem

enum class SphereVerdict { Nontrivial, Trivial, FullTwist, TrivialOrFullTwist };
enum class Evidence { Permutation, Action, ExponentClass, Certificate };

inline const char* verdict_name(SphereVerdict v) {
  switch (v) {
    case SphereVerdict::Nontrivial: return "Nontrivial";
    case SphereVerdict::Trivial: return "Trivial";
    case SphereVerdict::FullTwist: return "FullTwist";
    case SphereVerdict::TrivialOrFullTwist: return "TrivialOrFullTwist";
  }
  return "?";
}

inline const char* evidence_name(Evidence e) {
  switch (e) {
    case Evidence::Permutation: return "permutation";
    case Evidence::Action: return "action";
    case Evidence::ExponentClass: return "exponent class";
    case Evidence::Certificate: return "certificate";
  }
  return "?";
}

struct SphereWPVerdict {
  SphereVerdict verdict = SphereVerdict::TrivialOrFullTwist;
  Evidence evidence = Evidence::ExponentClass;
  std::string detail;
  std::optional<Derivation> certificate;
};

/// Sigma exponent sum reduced into [0, 2(m-1)); an invariant of B_m(S^2).
inline long sphere_exponent_class(int m, const BraidWord& w) {
  const long mod = 2L * (m - 1);
  if (mod == 0) return 0;
  const long e = exponent_sums(w).sigma;
  return ((e % mod) + mod) % mod;
}

/// Layered decision: permutation, then the action modulo inner automorphisms (whose kernel
/// is the centre {1, full twist}), then the exponent class; for even m the two central
/// candidates share a class and only a certificate can separate them.
inline SphereWPVerdict sphere_word_problem(int m, const BraidWord& w, SearchBudget budget = {}) {
  if (m < 1) throw std::invalid_argument("sphere_word_problem requires m >= 1");
  check_bounds(w, m);
  for (const auto& l : w)
    if (l.gen.kind != GenKind::Sigma) throw WordError("sphere braid words use sigma letters only");
  SphereWPVerdict out;
  if (!permutation_image(w, m).is_identity()) {
    out.verdict = SphereVerdict::Nontrivial;
    out.evidence = Evidence::Permutation;
    out.detail = "nontrivial permutation";
    return out;
  }
  if (!is_inner(sphere_action(m, w))) {
    out.verdict = SphereVerdict::Nontrivial;
    out.evidence = Evidence::Action;
    out.detail = "induced action on the punctured sphere group is not inner";
    return out;
  }
  const long cls = sphere_exponent_class(m, w);
  const std::string cls_text = "exponent class " + std::to_string(cls) + " mod " + std::to_string(2 * (m - 1));
  // B_1(S^2) and B_2(S^2) are detected by the exponent class alone (trivial, Z/2).
  if (m <= 2) {
    out.verdict = cls == 0 ? SphereVerdict::Trivial : SphereVerdict::Nontrivial;
    out.evidence = Evidence::ExponentClass;
    out.detail = cls_text;
    return out;
  }
  if (m % 2 == 1) {
    out.evidence = Evidence::ExponentClass;
    out.detail = cls_text;
    if (cls == 0)
      out.verdict = SphereVerdict::Trivial;
    else if (cls == m - 1)
      out.verdict = SphereVerdict::FullTwist;
    else
      out.verdict = SphereVerdict::Nontrivial;
    return out;
  }
  if (cls != 0) {
    out.verdict = SphereVerdict::Nontrivial;
    out.evidence = Evidence::ExponentClass;
    out.detail = cls_text;
    return out;
  }
  const auto p = sphere_presentation(m);
  if (auto r = search_identity(p, w, budget)) {
    out.verdict = SphereVerdict::Trivial;
    out.evidence = Evidence::Certificate;
    out.detail = "certificate with " + std::to_string(r.derivation->steps.size()) + " steps";
    out.certificate = std::move(r.derivation);
    return out;
  }
  // the full twist is nontrivial for m >= 3, so this cannot contradict a later Trivial
  if (auto r = search_equality(p, w, named_element(ElementName::FullTwist, m), budget)) {
    out.verdict = SphereVerdict::FullTwist;
    out.evidence = Evidence::Certificate;
    out.detail = "certificate with " + std::to_string(r.derivation->steps.size()) + " steps";
    out.certificate = std::move(r.derivation);
    return out;
  }
  out.verdict = SphereVerdict::TrivialOrFullTwist;
  out.evidence = Evidence::ExponentClass;
  out.detail = cls_text + "; action inner; no certificate within budget";
  return out;
}

inline nlohmann::ordered_json to_json(const SphereWPVerdict& v, int m) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(v.verdict);
  j["evidence"] = evidence_name(v.evidence);
  j["detail"] = v.detail;
  if (v.certificate) j["certificate"] = to_json(*v.certificate, sphere_presentation(m).name);
  return j;
}

// ---------------------------------------------------------------------------
// Annulus

/// B_n(Ann) into B_{n+1}: tau -> sigma_1^2 around an added fixed strand, sigma_i -> sigma_{i+1}.
inline BraidWord annulus_to_disc(int n, const BraidWord& w) {
  BraidWord out;
  for (const auto& l : w) {
    switch (l.gen.kind) {
      case GenKind::Tau:
        out.push_back({sigma(1), l.exp});
        out.push_back({sigma(1), l.exp});
        break;
      case GenKind::Sigma:
        if (l.gen.index < 1 || l.gen.index >= n) throw WordError(to_string(l) + " out of bounds for the annulus");
        out.push_back({sigma(l.gen.index + 1), l.exp});
        break;
      default:
        throw WordError("annulus words use sigma and tau letters only");
    }
  }
  return out;
}

/// Exact: the disc action is faithful and the embedding is injective.
inline bool annulus_oracle(int n, const BraidWord& w) {
  return disc_action(n + 1, annulus_to_disc(n, w)).is_identity();
}

}  // namespace surfbraid
