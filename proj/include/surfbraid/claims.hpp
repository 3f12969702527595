#pragma once

// The canned identities of B_n(RP^2) and a lemma script that certifies them.
//
// Seeded mode proves a fixed chain of auxiliary lemmas over macro letters
// (C_k, E_k, D_k, a, b, ...) and then certifies every claim with that rule
// book. Unseeded mode searches each claim over the bare relators.

#include <functional>
#include <string>
#include <vector>

#include "surfbraid/presentations.hpp"
#include "surfbraid/rewriting.hpp"
#include "surfbraid/words.hpp"

namespace surfbraid {

struct Claim {
  std::string label;
  BraidWord from;
  BraidWord to;
};

namespace detail {

inline BraidWord rho_descending(int from) {
  BraidWord w;
  for (int i = from; i >= 1; --i) w.push_back({rho(i), 1});
  return w;
}

}  // namespace detail

/// (label, from, to) in base letters, as the identities are printed.
inline std::vector<Claim> paper_claims(int n) {
  if (n < 2) throw std::invalid_argument("paper_claims requires n >= 2");
  const BraidWord a = named_element(ElementName::A, n);
  const BraidWord b = named_element(ElementName::B, n);
  const BraidWord delta = garside_word(n);
  const BraidWord a_inv = invert(a), b_inv = invert(b), delta_inv = invert(delta);
  auto s = [](int i, int e = 1) { return word_of(sigma(i), e); };
  auto r = [](int j, int e = 1) { return word_of(rho(j), e); };
  auto num = [](int i) { return std::to_string(i); };

  std::vector<Claim> out;
  for (int j = 1; j <= n; ++j)
    out.push_back({"rjr1_" + num(j), r(j), named_element(ElementName::RhoExpanded, n, j)});

  BraidWord loop;
  for (int i = n - 1; i >= 2; --i) loop.append(s(i));
  loop.append(s(1, 2));
  for (int i = 2; i <= n - 1; ++i) loop.append(s(i));
  out.push_back({"rn2", r(n, -2), loop});

  out.push_back({"powerab_a", power(a, n), detail::rho_descending(n)});
  out.push_back({"powerab_b", power(b, n - 1), detail::rho_descending(n - 1)});

  for (int i = 1; i <= n; ++i)
    out.push_back({"conjri_" + num(i), delta_inv * r(i) * delta, r(n + 1 - i, -1)});

  for (int i = 1; i <= n - 2; ++i)
    out.push_back({"permute_a_" + num(i), a_inv * s(i) * a, s(i + 1)});
  out.push_back({"permute_a_" + num(n - 1), a_inv * a_inv * s(n - 1) * a * a, s(1, -1)});
  for (int i = 1; i <= n - 1; ++i)
    out.push_back({"permute_b_" + num(i), a_inv * r(i) * a, r(i + 1)});
  out.push_back({"permute_b_" + num(n), a_inv * r(n) * a, r(1, -1)});
  for (int i = 1; i <= n - 3; ++i)
    out.push_back({"permute_c_" + num(i), b_inv * s(i) * b, s(i + 1)});
  if (n >= 3) out.push_back({"permute_c_" + num(n - 2), b_inv * b_inv * s(n - 2) * b * b, s(1, -1)});

  out.push_back({"realdic_a", delta * a * delta_inv * a, {}});
  out.push_back({"realdic_b", delta * a_inv * b * a * delta_inv * b, {}});
  out.push_back({"delta4", power(delta, 4), {}});
  return out;
}

enum class SearchMode { Seeded, Unseeded };

inline const char* mode_name(SearchMode m) { return m == SearchMode::Seeded ? "seeded" : "unseeded"; }

struct LemmaReport {
  std::string label;
  std::string statement;  // word over the extended alphabet, claimed = 1
  SearchStats stats;
  std::size_t steps = 0;
};

/// Proves the auxiliary lemma chain for B_n(RP^2) into `book`.
/// Lemmas that are not found are reported and skipped; later lemmas may then fail too.
inline std::vector<LemmaReport> seed_lemmas(RuleBook& book, int n, const SearchBudget& budget,
                                            const std::function<void(const LemmaReport&)>& progress = {}) {
  auto num = [](int i) { return std::to_string(i); };
  auto S = [&](int i) { return "s" + num(i); };
  auto R = [&](int i) { return "r" + num(i); };
  auto C = [&](int k) { return k == 2 ? std::string("s1") : "C" + num(k); };
  auto E = [&](int k) { return k == 2 ? std::string("s1") : "E" + num(k); };
  auto D = [&](int k) { return k == 2 ? std::string("s1") : "D" + num(k); };
  auto pw = [](const std::string& x, int k) {
    std::string out;
    for (int i = 0; i < k; ++i) out += x + " ";
    return out;
  };

  // C_k = s1...s_{k-1}, E_k = s_{k-1}...s1, D_k = C_k D_{k-1} (the half twist on k strands)
  for (int k = 3; k <= n; ++k) {
    book.add_macro("C" + num(k), C(k - 1) + " " + S(k - 1));
    book.add_macro("E" + num(k), S(k - 1) + " " + E(k - 1));
    book.add_macro("D" + num(k), C(k) + " " + D(k - 1));
  }
  book.add_macro("A", C(n) + "^-1 r1");
  book.add_macro("B", n >= 3 ? C(n - 1) + "^-1 r1" : std::string("r1"));

  std::vector<LemmaReport> log;
  auto lemma = [&](const std::string& label, const std::string& statement, const std::string& register_as = "") {
    IdentitySearch search(book, budget);
    auto res = search.prove(book.parse(statement), {}, label);
    LemmaReport rep{label, statement, res.stats, 0};
    if (res.derivation) {
      rep.steps = res.derivation->steps.size();
      book.add_lemma(label, book.parse(register_as.empty() ? statement : register_as), std::move(*res.derivation));
    }
    if (progress) progress(rep);
    log.push_back(std::move(rep));
  };

  for (int k = 3; k <= n; ++k) {
    const std::string kk = num(k) + ",";
    for (int j = k + 1; j <= n - 1; ++j) lemma("CS" + kk + num(j), C(k) + " " + S(j) + " " + C(k) + "^-1 " + S(j) + "^-1");
    for (int j = k + 1; j <= n; ++j) lemma("CR" + kk + num(j), C(k) + " " + R(j) + " " + C(k) + "^-1 " + R(j) + "^-1");
    for (int j = k + 1; j <= n - 1; ++j) lemma("ES" + kk + num(j), E(k) + " " + S(j) + " " + E(k) + "^-1 " + S(j) + "^-1");
    for (int j = k + 1; j <= n; ++j) lemma("ER" + kk + num(j), E(k) + " " + R(j) + " " + E(k) + "^-1 " + R(j) + "^-1");
    for (int j = k + 1; j <= n - 1; ++j) lemma("DS" + kk + num(j), D(k) + " " + S(j) + " " + D(k) + "^-1 " + S(j) + "^-1");
    for (int j = k + 1; j <= n; ++j) lemma("DR" + kk + num(j), D(k) + " " + R(j) + " " + D(k) + "^-1 " + R(j) + "^-1");
  }
  for (int k = 3; k <= n; ++k)
    for (int j = 1; j <= k - 2; ++j)
      lemma("CSC" + num(k) + "," + num(j), C(k) + " " + S(j) + " " + C(k) + "^-1 " + S(j + 1) + "^-1");
  for (int k = 3; k <= n; ++k)
    lemma("CC" + num(k), C(k) + "^-1 s1 " + C(k) + " " + C(k - 1) + " " + S(k - 1) + "^-1 " + C(k - 1) + "^-1");
  for (int k = 3; k <= n; ++k)
    for (int j = 1; j <= k - 1; ++j)
      lemma("DSD" + num(k) + "," + num(j), D(k) + "^-1 " + S(j) + " " + D(k) + " " + S(k - j) + "^-1");

  for (int j = 2; j <= n; ++j) lemma("rjr1_" + num(j), R(j) + "^-1 " + C(j) + "^-1 r1 " + E(j) + "^-1");
  lemma("rn2", pw(R(n) + "^-1", 2) + C(n) + "^-1 " + E(n) + "^-1");
  lemma("CRC", C(n) + "^-1 r1 " + C(n) + " " + R(n));
  for (int i = 1; i <= n; ++i) lemma("conjri_" + num(i), D(n) + "^-1 " + R(i) + " " + D(n) + " " + R(n + 1 - i));

  for (int i = 1; i <= n - 2; ++i) lemma("permute_a_" + num(i), "A^-1 " + S(i) + " A " + S(i + 1) + "^-1");
  lemma("permute_a_" + num(n - 1), "A^-1 A^-1 " + S(n - 1) + " A A s1");
  for (int i = 1; i <= n - 1; ++i) lemma("permute_b_" + num(i), "A^-1 " + R(i) + " A " + R(i + 1) + "^-1");
  lemma("permute_b_" + num(n), "A^-1 " + R(n) + " A r1");
  for (int i = 1; i <= n - 3; ++i) lemma("permute_c_" + num(i), "B^-1 " + S(i) + " B " + S(i + 1) + "^-1");
  if (n >= 3) lemma("permute_c_" + num(n - 2), "B^-1 B^-1 " + S(n - 2) + " B B s1");
  lemma("realdic_a", D(n) + " A " + D(n) + "^-1 A");
  lemma("realdic_b", D(n) + " A^-1 B A " + D(n) + "^-1 B");

  // a^k = W_k^-1 r_k ... r_1, W_k = (s_k..s_{n-1})(s_{k-1}..s_{n-2})...(s_1..s_{n-k})
  for (int k = 2; k < n; ++k) {
    std::string w, rs;
    for (int m = k; m >= 1; --m)
      for (int i = m; i <= n - 1 - (k - m); ++i) w += S(i) + " ";
    for (int i = 1; i <= k; ++i) rs += R(i) + "^-1 ";
    lemma("apow" + num(k), pw("A", k) + rs + w);
  }
  {
    std::string ra, rb;
    for (int i = 1; i <= n; ++i) ra += R(i) + "^-1 ";
    for (int i = 1; i <= n - 1; ++i) rb += R(i) + "^-1 ";
    lemma("powerab_a", pw("A", n) + ra);
    lemma("powerab_b", pw("B", n - 1) + rb);
  }

  // C_n^m = a^-m S_m with S_m = r_{n+1-m}^-1 ... r_n^-1; at m = n this gives C_n^n = a^-2n
  for (int k = 1; k <= n; ++k)
    book.add_macro("S" + num(k), R(n + 1 - k) + "^-1" + (k == 1 ? "" : " S" + num(k - 1)));
  lemma("CA", C(n) + " " + R(n) + " A");
  for (int m = 2; m <= n; ++m) lemma("cpow" + num(m), pw(C(n), m) + "S" + num(m) + "^-1 " + pw("A", m));
  // classical: D_k^2 = C_k^k
  for (int k = 3; k <= n; ++k) lemma("gar" + num(k), pw(D(k), 2) + pw(C(k) + "^-1", k));
  lemma("delta2", pw(D(n), 2) + pw("A", 2 * n));

  // T = a^2n; D T D^-1 = T^-1 by pushing D through one a at a time
  book.add_macro("T", pw("A", 2 * n));
  if (!book.lemmas().empty() && book.lemmas().back().label == "delta2")
    book.add_lemma("delta2T", book.parse(pw(D(n), 2) + "T"), book.lemmas().back().certificate);
  for (int k = 2; k <= 2 * n; ++k)
    lemma("rd" + num(k), D(n) + " " + pw("A", k) + D(n) + "^-1 " + pw("A", k),
          k == 2 * n ? D(n) + " T " + D(n) + "^-1 T" : "");
  lemma("delta4", pw(D(n), 4));
  return log;
}

namespace detail {

/// paper_claims(n) restated over the seeded macro letters, in the same order.
/// Each pair expands letter for letter to the claim's (from, to).
inline std::vector<std::pair<std::string, std::string>> seeded_claim_forms(int n) {
  auto num = [](int i) { return std::to_string(i); };
  auto R = [&](int i) { return "r" + num(i); };
  auto S = [&](int i) { return "s" + num(i); };
  auto C = [&](int k) { return k == 2 ? std::string("s1") : "C" + num(k); };
  auto E = [&](int k) { return k == 2 ? std::string("s1") : "E" + num(k); };
  const std::string D = n == 2 ? std::string("s1") : "D" + num(n);
  std::vector<std::pair<std::string, std::string>> out;
  out.push_back({"r1", "r1"});
  for (int j = 2; j <= n; ++j) out.push_back({R(j), C(j) + "^-1 r1 " + E(j) + "^-1"});
  out.push_back({R(n) + "^-1 " + R(n) + "^-1", E(n) + " " + C(n)});
  std::string an, bn, ra, rb;
  for (int i = 0; i < n; ++i) an += "A ";
  for (int i = 0; i < n - 1; ++i) bn += "B ";
  for (int i = n; i >= 1; --i) ra += R(i) + " ";
  for (int i = n - 1; i >= 1; --i) rb += R(i) + " ";
  out.push_back({an, ra});
  out.push_back({bn, rb});
  for (int i = 1; i <= n; ++i) out.push_back({D + "^-1 " + R(i) + " " + D, R(n + 1 - i) + "^-1"});
  for (int i = 1; i <= n - 2; ++i) out.push_back({"A^-1 " + S(i) + " A", S(i + 1)});
  out.push_back({"A^-1 A^-1 " + S(n - 1) + " A A", "s1^-1"});
  for (int i = 1; i <= n - 1; ++i) out.push_back({"A^-1 " + R(i) + " A", R(i + 1)});
  out.push_back({"A^-1 " + R(n) + " A", "r1^-1"});
  for (int i = 1; i <= n - 3; ++i) out.push_back({"B^-1 " + S(i) + " B", S(i + 1)});
  if (n >= 3) out.push_back({"B^-1 B^-1 " + S(n - 2) + " B B", "s1^-1"});
  out.push_back({D + " A " + D + "^-1 A", ""});
  out.push_back({D + " A^-1 B A " + D + "^-1 B", ""});
  out.push_back({D + " " + D + " " + D + " " + D, ""});
  return out;
}

}  // namespace detail

struct ClaimOutcome {
  Claim claim;
  SearchStats stats;
  std::optional<Derivation> derivation;
  bool verified = false;
};

struct ClaimRun {
  int n = 0;
  SearchMode mode = SearchMode::Seeded;
  std::vector<LemmaReport> lemmas;
  std::vector<ClaimOutcome> claims;

  bool all_verified() const {
    for (const auto& c : claims)
      if (!c.verified) return false;
    return true;
  }
};

/// Certifies every claim of paper_claims(n) and checks each certificate with the verifier.
inline ClaimRun prove_claims(int n, SearchMode mode, const SearchBudget& budget = {},
                             const std::function<void(const std::string&, bool)>& progress = {}) {
  ClaimRun run;
  run.n = n;
  run.mode = mode;
  RuleBook book(van_buskirk(n));
  if (mode == SearchMode::Seeded)
    run.lemmas = seed_lemmas(book, n, budget, [&](const LemmaReport& r) {
      if (progress) progress("lemma " + r.label, r.stats.found);
    });
  const auto& p = book.presentation();
  const auto& alpha = book.alphabet();
  IdentitySearch search(book, budget);
  auto claims = paper_claims(n);
  const auto forms = mode == SearchMode::Seeded ? detail::seeded_claim_forms(n)
                                                : std::vector<std::pair<std::string, std::string>>{};
  for (std::size_t i = 0; i < claims.size(); ++i) {
    auto& c = claims[i];
    ClaimOutcome out;
    std::vector<int> from = alpha.from_base(p, c.from), to = alpha.from_base(p, c.to);
    if (!forms.empty()) {
      from = book.parse(forms[i].first);
      to = book.parse(forms[i].second);
      if (alpha.expand(from) != c.from || alpha.expand(to) != c.to)
        throw std::logic_error("seeded form of " + c.label + " does not expand to the claim");
    }
    auto res = search.prove(from, to, c.label);
    out.stats = res.stats;
    if (res.derivation) out.verified = verify_derivation(p, *res.derivation);
    out.derivation = std::move(res.derivation);
    out.claim = std::move(c);
    if (progress) progress(out.claim.label, out.verified);
    run.claims.push_back(std::move(out));
  }
  return run;
}

}  // namespace surfbraid
