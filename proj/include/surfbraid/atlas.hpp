#pragma once

// Classification lists for finite subgroups of B_n(RP^2), B_n(S^2) and MCG(RP^2, n), the
// arithmetic that reduces the sphere list at 2n to the projective-plane list at n, and a
// report tying the machine checks together.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfbraid/claims.hpp"
#include "surfbraid/covering.hpp"
#include "surfbraid/enumeration.hpp"
#include "surfbraid/presentations.hpp"
#include "surfbraid/rewriting.hpp"

namespace surfbraid {

enum class Surface { RP2, S2, MCG_RP2 };

inline const char* surface_name(Surface s) {
  switch (s) {
    case Surface::RP2: return "rp2";
    case Surface::S2: return "s2";
    case Surface::MCG_RP2: return "mcg_rp2";
  }
  return "?";
}

inline Surface parse_surface(const std::string& s) {
  if (s == "rp2") return Surface::RP2;
  if (s == "s2") return Surface::S2;
  if (s == "mcg_rp2") return Surface::MCG_RP2;
  throw std::invalid_argument("unknown surface '" + s + "' (rp2, s2, mcg_rp2)");
}

// ---------------------------------------------------------------------------
// Conditions and rules

/// n >= min_n, n <= max_n if set, and n mod modulus in residues.
struct ResidueClause {
  int min_n = 0;
  std::optional<int> max_n;
  int modulus = 1;
  std::vector<int> residues{0};

  bool holds(int n) const {
    if (n < min_n || (max_n && n > *max_n)) return false;
    const int r = ((n % modulus) + modulus) % modulus;
    return std::find(residues.begin(), residues.end(), r) != residues.end();
  }
  std::string text() const {
    std::string s;
    if (max_n && *max_n == min_n)
      s = "n=" + std::to_string(min_n);
    else {
      if (min_n > 0) s = "n>=" + std::to_string(min_n);
      if (max_n) s += (s.empty() ? "" : ", ") + std::string("n<=") + std::to_string(*max_n);
    }
    if (modulus > 1) {
      std::string rs;
      for (std::size_t i = 0; i < residues.size(); ++i) rs += (i ? "," : "") + std::to_string(residues[i]);
      s += (s.empty() ? "" : ", ") + std::string("n = ") + rs + " mod " + std::to_string(modulus);
    }
    return s.empty() ? "all n" : s;
  }
};

/// Finite union of residue clauses.
struct Condition {
  std::vector<ResidueClause> clauses;

  bool holds(int n) const {
    return std::any_of(clauses.begin(), clauses.end(), [&](const auto& c) { return c.holds(n); });
  }
  std::string text() const {
    std::string s;
    for (std::size_t i = 0; i < clauses.size(); ++i) s += (i ? " or " : "") + clauses[i].text();
    return s;
  }

  static Condition at_least(int n0) { return {{ResidueClause{n0, std::nullopt, 1, {0}}}}; }
  static Condition residues(int n0, int modulus, std::vector<int> rs) {
    return {{ResidueClause{n0, std::nullopt, modulus, std::move(rs)}}};
  }
};

/// The family parameter as a*n + b.
struct ParamFormula {
  int a = 0, b = 0;
  int at(int n) const { return a * n + b; }
};

struct ClassificationRule {
  FiniteFamily family = FiniteFamily::Dic;
  ParamFormula param;
  Condition condition;
  std::string source;
};

struct ClassificationEntry {
  FiniteFamily family = FiniteFamily::Dic;
  int param = 0;
  std::string label;
  long order = 0;
  std::string condition;
  std::string source;

  bool operator==(const ClassificationEntry& o) const { return family == o.family && param == o.param; }
};

inline int min_strands(Surface s) { return s == Surface::S2 ? 3 : 2; }

inline std::vector<ClassificationRule> classification_rules(Surface s) {
  using F = FiniteFamily;
  switch (s) {
    case Surface::RP2: {
      const std::string src = "maximal finite subgroups of B_n(RP2)";
      return {{F::Dic, {2, 0}, Condition::at_least(2), src + ", item 1"},
              {F::Dic, {2, -2}, Condition::at_least(3), src + ", item 2"},
              {F::Ostar, {0, 0}, Condition::residues(2, 3, {0, 1}), src + ", item 3"},
              {F::Istar, {0, 0}, Condition::residues(2, 15, {0, 1, 6, 10}), src + ", item 4"}};
    }
    case Surface::S2: {
      const std::string src = "maximal finite subgroups of B_n(S2)";
      return {{F::Cyclic, {2, -2}, Condition::at_least(5), src + ", item 1"},
              {F::Dic, {1, 0}, Condition::at_least(3), src + ", item 2"},
              {F::Dic, {1, -2}, Condition{{ResidueClause{5, 5, 1, {0}}, ResidueClause{7, std::nullopt, 1, {0}}}},
               src + ", item 3"},
              {F::Tstar, {0, 0}, Condition::residues(3, 6, {4}), src + ", item 4"},
              {F::Ostar, {0, 0}, Condition::residues(3, 6, {0, 2}), src + ", item 5"},
              {F::Istar, {0, 0}, Condition::residues(3, 30, {0, 2, 12, 20}), src + ", item 6"}};
    }
    case Surface::MCG_RP2: {
      const std::string src = "maximal finite subgroups of MCG(RP2,n)";
      return {{F::Dih, {2, 0}, Condition::at_least(2), src + ", item 1"},
              {F::Dih, {2, -2}, Condition::at_least(3), src + ", item 2"},
              {F::Sym4, {0, 0}, Condition::residues(2, 3, {0, 1}), src + ", item 3"},
              {F::Alt5, {0, 0}, Condition::residues(2, 15, {0, 1, 6, 10}), src + ", item 4"}};
    }
  }
  return {};
}

inline ClassificationEntry make_entry(FiniteFamily f, int param, std::string condition = {}, std::string source = {}) {
  return {f, param, family_label(f, param), family_order(f, param), std::move(condition), std::move(source)};
}

inline std::vector<ClassificationEntry> classify(Surface s, int n) {
  if (n < min_strands(s))
    throw std::invalid_argument(std::string("classify(") + surface_name(s) + ") requires n >= " +
                                std::to_string(min_strands(s)));
  std::vector<ClassificationEntry> out;
  for (const auto& r : classification_rules(s))
    if (r.condition.holds(n)) out.push_back(make_entry(r.family, r.param.at(n), r.condition.text(), r.source));
  return out;
}

/// Image of a group with a central involution under the quotient by it.
inline ClassificationEntry center_quotient_entry(const ClassificationEntry& e) {
  switch (e.family) {
    case FiniteFamily::Dic: return make_entry(FiniteFamily::Dih, e.param);
    case FiniteFamily::Q8: return make_entry(FiniteFamily::Dih, 2);
    case FiniteFamily::Tstar: return make_entry(FiniteFamily::Alt4, 0);
    case FiniteFamily::Ostar: return make_entry(FiniteFamily::Sym4, 0);
    case FiniteFamily::Istar: return make_entry(FiniteFamily::Alt5, 0);
    case FiniteFamily::Cyclic:
      if (e.param % 2 == 0) return make_entry(FiniteFamily::Cyclic, e.param / 2);
      break;
    default: break;
  }
  throw std::invalid_argument(e.label + " has no central involution");
}

// ---------------------------------------------------------------------------
// Element orders and torsion

inline std::set<long> divisors(long k) {
  std::set<long> out;
  for (long d = 1; d * d <= k; ++d)
    if (k % d == 0) {
      out.insert(d);
      out.insert(k / d);
    }
  return out;
}

/// Orders of the elements of a family member.
inline std::set<long> family_element_orders(FiniteFamily f, int param) {
  switch (f) {
    case FiniteFamily::Q8: return {1, 2, 4};
    case FiniteFamily::Dic: {
      auto s = divisors(2L * param);
      s.insert(4);
      return s;
    }
    case FiniteFamily::Cyclic: return divisors(param);
    case FiniteFamily::Tstar: return {1, 2, 3, 4, 6};
    case FiniteFamily::Ostar: return {1, 2, 3, 4, 6, 8};
    case FiniteFamily::Istar: return {1, 2, 3, 4, 5, 6, 10};
    case FiniteFamily::Dih: {
      auto s = divisors(param);
      s.insert(2);
      return s;
    }
    case FiniteFamily::Alt4: return {1, 2, 3};
    case FiniteFamily::Sym4: return {1, 2, 3, 4};
    case FiniteFamily::Alt5: return {1, 2, 3, 5};
  }
  return {};
}

/// B_n(RP^2) has an element of order l iff l divides 4n or 4(n-1).
inline bool rp2_has_order(int n, long l) { return (4L * n) % l == 0 || (4L * (n - 1)) % l == 0; }

/// First n in [3, limit] where gcd(2n-1, 2n) or gcd(2n-1, 2(n-1)) differs from 1.
inline std::optional<long> gcd_scan(long limit) {
  for (long n = 3; n <= limit; ++n)
    if (std::gcd(2 * n - 1, 2 * n) != 1 || std::gcd(2 * n - 1, 2 * (n - 1)) != 1) return n;
  return std::nullopt;
}

/// First n in [3, limit] where the rp2 condition at n and the s2 condition at 2n disagree
/// for O* or I*.
inline std::optional<int> residue_translation_scan(int limit) {
  auto rule = [](Surface s, FiniteFamily f) {
    for (const auto& r : classification_rules(s))
      if (r.family == f) return r.condition;
    throw std::logic_error("missing rule");
  };
  for (FiniteFamily f : {FiniteFamily::Ostar, FiniteFamily::Istar}) {
    const auto a = rule(Surface::RP2, f), b = rule(Surface::S2, f);
    for (int n = 3; n <= limit; ++n)
      if (a.holds(n) != b.holds(2 * n)) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Candidate elimination

enum class EliminationAction { Start, Retain, Eliminate, Add };

inline const char* action_name(EliminationAction a) {
  switch (a) {
    case EliminationAction::Start: return "start";
    case EliminationAction::Retain: return "retain";
    case EliminationAction::Eliminate: return "eliminate";
    case EliminationAction::Add: return "add";
  }
  return "?";
}

struct EliminationStep {
  std::string candidate;
  EliminationAction action = EliminationAction::Retain;
  std::string justification;
};

struct EliminationTrace {
  int n = 0;
  std::vector<ClassificationEntry> start;
  std::vector<EliminationStep> steps;
  std::vector<ClassificationEntry> result;
};

/// Finite subgroups of B_n(RP^2) embed in B_2n(S^2); every candidate from the sphere list at
/// 2n is kept only if all its element orders occur in B_n(RP^2), or else replaced by a
/// subgroup already covered by Dic_8n.
inline EliminationTrace eliminate_candidates(int n) {
  if (n < 3) throw std::invalid_argument("eliminate_candidates requires n >= 3");
  EliminationTrace tr;
  tr.n = n;
  tr.start = classify(Surface::S2, 2 * n);
  for (const auto& e : tr.start)
    tr.steps.push_back({e.label, EliminationAction::Start, "listed for B_" + std::to_string(2 * n) + "(S2): " + e.condition});

  auto bad_orders = [&](const ClassificationEntry& e) {
    std::vector<long> bad;
    for (long l : family_element_orders(e.family, e.param))
      if (!rp2_has_order(n, l)) bad.push_back(l);
    return bad;
  };
  auto join = [](const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  const std::string torsion = "4n=" + std::to_string(4 * n) + ", 4(n-1)=" + std::to_string(4 * (n - 1));

  for (const auto& e : tr.start) {
    const auto bad = bad_orders(e);
    if (bad.empty()) {
      tr.steps.push_back({e.label, EliminationAction::Retain, "all element orders divide " + torsion});
      tr.result.push_back(e);
      continue;
    }
    std::string why = "element orders " + join(bad) + " divide neither " + torsion;
    if (e.family == FiniteFamily::Cyclic) {
      std::vector<long> kept;
      for (long l : divisors(e.param))
        if (rp2_has_order(n, l)) kept.push_back(l);
      why += "; gcd(2n-1,2n)=" + std::to_string(std::gcd(2L * n - 1, 2L * n)) +
             ", gcd(2n-1,2(n-1))=" + std::to_string(std::gcd(2L * n - 1, 2L * (n - 1))) +
             "; surviving subgroup orders " + join(kept) + " lie in Dic" + std::to_string(8 * n);
    } else if (e.family == FiniteFamily::Tstar) {
      why += "; a subgroup without elements of order 3 lies in Q8, hence in Dic" + std::to_string(8 * n);
    }
    tr.steps.push_back({e.label, EliminationAction::Eliminate, why});
  }
  // Dic_8(n-1) is absent from the sphere list at 2n = 6 only because it is not maximal there
  const auto dic = make_entry(FiniteFamily::Dic, 2 * n - 2);
  if (std::find(tr.result.begin(), tr.result.end(), dic) == tr.result.end()) {
    std::string why = "subgroup of B_" + std::to_string(2 * n) + "(S2) (contained in a listed group there)";
    if (bad_orders(dic).empty()) {
      why += "; all element orders divide " + torsion;
      tr.steps.push_back({dic.label, EliminationAction::Add, why});
      tr.result.push_back(dic);
    }
  }
  std::sort(tr.result.begin(), tr.result.end(), [](const auto& a, const auto& b) {
    return std::tie(a.order, a.label) > std::tie(b.order, b.label);
  });
  return tr;
}

inline bool same_entries(std::vector<ClassificationEntry> a, std::vector<ClassificationEntry> b) {
  auto key = [](const ClassificationEntry& e) { return e.label; };
  std::vector<std::string> ka, kb;
  std::transform(a.begin(), a.end(), std::back_inserter(ka), key);
  std::transform(b.begin(), b.end(), std::back_inserter(kb), key);
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// ---------------------------------------------------------------------------
// Order ledger

struct OrderLedger {
  int n = 0;
  int pi_a_order = 0;
  bool pi_a_n_identity = false;
  bool pi_delta_identity = false;
  std::optional<int> a_order;           // exact, from the group table (n = 2)
  std::optional<bool> a_delta_generate; // <a, Delta> is the whole group (n = 2)

  bool passed() const {
    return pi_a_order == n && pi_a_n_identity && !pi_delta_identity && (!a_order || *a_order == 4 * n) &&
           (!a_delta_generate || *a_delta_generate);
  }
};

inline OrderLedger order_ledger(int n) {
  if (n < 2) throw std::invalid_argument("order_ledger requires n >= 2");
  OrderLedger out;
  out.n = n;
  const auto a = named_element(ElementName::A, n);
  const auto delta = garside_word(n);
  out.pi_a_order = permutation_image(a, n).order();
  out.pi_a_n_identity = permutation_image(power(a, n), n).is_identity();
  out.pi_delta_identity = permutation_image(delta, n).is_identity();
  if (n == 2) {
    const auto p = van_buskirk(2);
    const auto t = materialize(p);
    if (!t) throw EnumerationError("B_2(RP2) did not enumerate");
    const int ea = evaluate(*t, p, a), ed = evaluate(*t, p, delta);
    out.a_order = t->element_order(ea);
    out.a_delta_generate = static_cast<int>(t->generated_by({ea, ed}).size()) == t->order();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

enum class Status { Verified, PartiallyVerified, StatementOnly, Failed };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::PartiallyVerified: return "partially-verified";
    case Status::StatementOnly: return "statement-only";
    case Status::Failed: return "failed";
  }
  return "?";
}

struct CheckRecord {
  std::string id;
  std::string description;
  Status status = Status::Verified;
  std::vector<std::string> gaps;
  std::string detail;
  std::optional<Derivation> certificate;
  std::string certificate_presentation;
};

struct EntryRecord {
  ClassificationEntry entry;
  Status status = Status::StatementOnly;
  std::vector<std::string> gaps;
  std::vector<std::string> evidence;
};

struct ClassificationReport {
  static constexpr const char* kSchema = "surfbraid-report/1";
  Surface surface = Surface::RP2;
  int n = 0;
  std::vector<EntryRecord> entries;
  std::vector<CheckRecord> checks;
  std::optional<EliminationTrace> elimination;

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; }));
  }
  /// 0: every check verified; 2: gaps; 1: a hard failure.
  int exit_code() const {
    if (count(Status::Failed)) return 1;
    if (count(Status::PartiallyVerified)) return 2;
    return 0;
  }
};

struct SuiteOptions {
  SearchBudget budget{};
  int relator_image_max_n = 4;
  bool attach_certificates = true;
};

namespace detail {

inline CheckRecord check(std::string id, std::string description, bool ok, std::string detail = {}) {
  return {std::move(id), std::move(description), ok ? Status::Verified : Status::Failed, {}, std::move(detail), {}, {}};
}

inline GroupTable table_of_family(FiniteFamily f, int param) {
  auto t = materialize(finite_group_presentation(f, param), 200000);
  if (!t) throw EnumerationError("enumeration of " + family_label(f, param) + " overflowed");
  return *t;
}

}  // namespace detail

/// Runs every available machine check at n. Theorem content that is not computed here is
/// marked statement-only; exhausted budgets give partially-verified with a gap note.
inline ClassificationReport verify_suite(int n, const SuiteOptions& opt = {}) {
  if (n < 2) throw std::invalid_argument("verify_suite requires n >= 2");
  ClassificationReport rep;
  rep.surface = Surface::RP2;
  rep.n = n;
  const auto rp2 = classify(Surface::RP2, n);
  const auto mcg = classify(Surface::MCG_RP2, n);

  // certificates
  const auto run = prove_claims(n, SearchMode::Seeded, opt.budget);
  const std::string pname = van_buskirk(n).name;
  std::map<std::string, bool> claim_ok;
  for (const auto& c : run.claims) {
    CheckRecord r{"claim/" + c.claim.label, format(c.claim.from) + " = " + format(c.claim.to),
                  c.verified ? Status::Verified : Status::PartiallyVerified, {}, {}, {}, {}};
    r.detail = std::to_string(c.stats.expansions) + " expansions";
    if (c.derivation) r.detail += ", " + std::to_string(c.derivation->steps.size()) + " steps";
    if (!c.verified) r.gaps.push_back(c.derivation ? "certificate rejected by the verifier" : "search budget exhausted");
    if (c.derivation && !c.verified) r.status = Status::Failed;
    if (opt.attach_certificates && c.derivation) {
      r.certificate = c.derivation;
      r.certificate_presentation = pname;
    }
    claim_ok[c.claim.label] = c.verified;
    rep.checks.push_back(std::move(r));
  }

  // enumeration
  if (n == 2) {
    const auto p = van_buskirk(2);
    const auto t = materialize(p);
    const bool ok = t && t->order() == 16 && isomorphic(*t, detail::table_of_family(FiniteFamily::Dic, 4));
    rep.checks.push_back(detail::check("enumeration/group", "B_2(RP2) has order 16 and is isomorphic to Dic16", ok,
                                       t ? "order " + std::to_string(t->order()) : "overflow"));
  }

  // center quotients of the listed groups
  for (std::size_t k = 0; k < rp2.size(); ++k) {
    const auto& e = rp2[k];
    const auto q = center_quotient_entry(e);
    const bool matches = k < mcg.size() && mcg[k] == q;
    const auto g = detail::table_of_family(e.family, e.param);
    const auto cq = center_and_quotient(g);
    const bool iso = isomorphic(cq.quotient, detail::table_of_family(q.family, q.param));
    rep.checks.push_back(detail::check("quotient/" + e.label, e.label + "/center = " + q.label + ", listed for MCG",
                                       matches && iso && g.order() == e.order,
                                       "order " + std::to_string(g.order()) + ", center " +
                                           std::to_string(cq.center.size())));
  }

  // covering relator images
  if (n <= opt.relator_image_max_n) {
    const auto ri = verify_relator_images(n, opt.budget);
    CheckRecord r{"covering/relator-images", "lifted relators are trivial in B_" + std::to_string(2 * n) + "(S2)",
                  Status::Verified, {}, {}, {}, {}};
    for (const auto& i : ri.images) {
      if (i.status == ImageStatus::Failed) r.status = Status::Failed;
      if (i.status == ImageStatus::Unverified) {
        if (r.status == Status::Verified) r.status = Status::PartiallyVerified;
        r.gaps.push_back(i.label + " " + format(i.relator) + ": trivial or the full twist, no certificate in budget");
      }
    }
    r.detail = std::to_string(ri.count(ImageStatus::Verified)) + "/" + std::to_string(ri.images.size()) +
               " certified trivial";
    rep.checks.push_back(std::move(r));
  } else {
    rep.checks.push_back({"covering/relator-images", "lifted relators are trivial in B_" + std::to_string(2 * n) + "(S2)",
                          Status::PartiallyVerified,
                          {"not run above n=" + std::to_string(opt.relator_image_max_n)}, {}, {}, {}});
  }

  // order ledger
  const auto led = order_ledger(n);
  rep.checks.push_back(detail::check("order/pi-a", "the permutation of a has order n", led.pi_a_order == n,
                                     "order " + std::to_string(led.pi_a_order)));
  rep.checks.push_back(detail::check("order/pi-a-power", "the permutation of a^n is trivial", led.pi_a_n_identity));
  rep.checks.push_back(detail::check("order/pi-delta", "the permutation of Delta is not trivial", !led.pi_delta_identity));
  if (led.a_order) {
    rep.checks.push_back(detail::check("order/a-exact", "a has order 4n and <a, Delta> is the whole group",
                                       *led.a_order == 4 * n && *led.a_delta_generate,
                                       "order " + std::to_string(*led.a_order)));
  } else {
    rep.checks.push_back({"order/a-exact", "a has order 4n", Status::PartiallyVerified,
                          {"only n divides the order of a (from its permutation) and a^" + std::to_string(4 * n) +
                           " = 1 follows from certified relations; exact order not machine-checked"},
                          {}, {}, {}});
  }

  // classification arithmetic
  if (n >= 3) {
    auto tr = eliminate_candidates(n);
    rep.checks.push_back(detail::check("classification/elimination",
                                       "sphere candidates at 2n reduce to the list for B_n(RP2)",
                                       same_entries(tr.result, rp2)));
    rep.elimination = std::move(tr);
  }
  rep.checks.push_back(detail::check("classification/mcg-quotient", "MCG list is the center quotient of the B_n(RP2) list",
                                     [&] {
                                       if (rp2.size() != mcg.size()) return false;
                                       for (std::size_t k = 0; k < rp2.size(); ++k)
                                         if (!(center_quotient_entry(rp2[k]) == mcg[k])) return false;
                                       return true;
                                     }()));

  // entries
  auto claims_hold = [&](std::initializer_list<const char*> labels) {
    for (const char* l : labels)
      if (!claim_ok[l]) return false;
    return true;
  };
  for (const auto& e : rp2) {
    EntryRecord r{e, Status::StatementOnly, {}, {}};
    const bool first = e.family == FiniteFamily::Dic && e.param == 2 * n;
    const bool second = e.family == FiniteFamily::Dic && e.param == 2 * n - 2;
    if (first && n == 2) {
      r.status = Status::Verified;
      r.evidence.push_back("B_2(RP2) itself is isomorphic to Dic16 by exhaustive enumeration");
    } else if (first || second) {
      const bool rel = first ? claims_hold({"powerab_a", "realdic_a", "delta4"})
                             : claims_hold({"powerab_b", "realdic_b", "delta4"});
      r.status = Status::PartiallyVerified;
      r.evidence.push_back(std::string("dicyclic relations for ") + (first ? "<a, Delta>" : "<b, a^-1 Delta a>") +
                           (rel ? " certified" : " not all certified"));
      r.gaps.push_back("exact order of the generator is bounded below only by its permutation");
      if (!rel) r.gaps.push_back("some realising relations lack certificates");
    } else {
      r.gaps.push_back("no computation realises this subgroup here");
    }
    r.gaps.push_back("maximality is statement-only");
    rep.entries.push_back(std::move(r));
  }
  rep.checks.push_back({"classification/maximality", "listed subgroups are maximal", Status::StatementOnly,
                        {"proof-level content, transcribed not computed"}, {}, {}, {}});
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json to_json(const ClassificationEntry& e) {
  nlohmann::ordered_json j;
  j["group"] = e.label;
  j["order"] = e.order;
  if (!e.condition.empty()) j["condition"] = e.condition;
  if (!e.source.empty()) j["source"] = e.source;
  return j;
}

inline nlohmann::ordered_json to_json(const EliminationTrace& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  j["start"] = nlohmann::ordered_json::array();
  for (const auto& e : t.start) j["start"].push_back(e.label);
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : t.steps)
    j["steps"].push_back({{"candidate", s.candidate}, {"action", action_name(s.action)}, {"justification", s.justification}});
  j["result"] = nlohmann::ordered_json::array();
  for (const auto& e : t.result) j["result"].push_back(e.label);
  return j;
}

inline nlohmann::ordered_json to_json(const ClassificationReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = ClassificationReport::kSchema;
  j["surface"] = surface_name(r.surface);
  j["n"] = r.n;
  j["exit_code"] = r.exit_code();
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    auto je = to_json(e.entry);
    je["status"] = status_name(e.status);
    je["evidence"] = e.evidence;
    je["gaps"] = e.gaps;
    j["entries"].push_back(je);
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["description"] = c.description;
    jc["status"] = status_name(c.status);
    if (!c.detail.empty()) jc["detail"] = c.detail;
    if (!c.gaps.empty()) jc["gaps"] = c.gaps;
    if (c.certificate) jc["certificate"] = to_json(*c.certificate, c.certificate_presentation);
    j["checks"].push_back(jc);
  }
  if (r.elimination) j["elimination"] = to_json(*r.elimination);
  return j;
}

inline std::string to_markdown(const ClassificationReport& r) {
  std::ostringstream os;
  os << "# Finite subgroups of B_" << r.n << "(RP2)\n\n";
  os << "| group | order | status | notes |\n|---|---|---|---|\n";
  for (const auto& e : r.entries) {
    std::string notes;
    for (const auto& s : e.evidence) notes += s + "; ";
    for (const auto& s : e.gaps) notes += "gap: " + s + "; ";
    os << "| " << e.entry.label << " | " << e.entry.order << " | " << status_name(e.status) << " | " << notes << "|\n";
  }
  os << "\n## Checks\n\n| id | status | detail |\n|---|---|---|\n";
  for (const auto& c : r.checks) {
    std::string d = c.detail;
    for (const auto& g : c.gaps) d += (d.empty() ? "" : "; ") + std::string("gap: ") + g;
    os << "| " << c.id << " | " << status_name(c.status) << " | " << d << " |\n";
  }
  if (r.elimination) {
    os << "\n## Elimination from B_" << 2 * r.n << "(S2)\n\n";
    for (const auto& s : r.elimination->steps)
      os << "- " << action_name(s.action) << " " << s.candidate << ": " << s.justification << "\n";
  }
  os << "\nverified " << r.count(Status::Verified) << ", partially-verified " << r.count(Status::PartiallyVerified)
     << ", statement-only " << r.count(Status::StatementOnly) << ", failed " << r.count(Status::Failed) << "\n";
  return os.str();
}

}  // namespace surfbraid
