#include <gtest/gtest.h>

#include "surfbraid/atlas.hpp"

using namespace surfbraid;

namespace {

std::vector<std::string> labels(const std::vector<ClassificationEntry>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.label);
  return out;
}

std::set<long> orders_in_table(FiniteFamily f, int param) {
  const auto t = materialize(finite_group_presentation(f, param));
  std::set<long> out;
  for (const auto& [o, count] : t->order_histogram()) out.insert(o);
  return out;
}

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(labels(classify(Surface::RP2, 7)), (std::vector<std::string>{"Dic56", "Dic48", "O*"}));
  EXPECT_EQ(labels(classify(Surface::RP2, 6)), (std::vector<std::string>{"Dic48", "Dic40", "O*", "I*"}));
  EXPECT_EQ(labels(classify(Surface::S2, 6)), (std::vector<std::string>{"Z10", "Dic24", "O*"}));
  EXPECT_EQ(labels(classify(Surface::RP2, 2)), (std::vector<std::string>{"Dic16"}));
  EXPECT_EQ(labels(classify(Surface::S2, 5)), (std::vector<std::string>{"Z8", "Dic20", "Dic12"}));
  EXPECT_EQ(labels(classify(Surface::S2, 4)), (std::vector<std::string>{"Dic16", "T*"}));
  EXPECT_EQ(labels(classify(Surface::MCG_RP2, 10)), (std::vector<std::string>{"Dih40", "Dih36", "S4", "A5"}));
  EXPECT_THROW(classify(Surface::S2, 2), std::invalid_argument);
  EXPECT_THROW(classify(Surface::RP2, 1), std::invalid_argument);
  EXPECT_THROW(parse_surface("torus"), std::invalid_argument);
}

TEST(Classify, ConditionsAreResidueUnions) {
  const auto rules = classification_rules(Surface::S2);
  EXPECT_EQ(rules[2].condition.text(), "n=5 or n>=7");
  EXPECT_EQ(rules[5].condition.text(), "n>=3, n = 0,2,12,20 mod 30");
  for (const auto& s : {Surface::RP2, Surface::S2, Surface::MCG_RP2})
    for (const auto& r : classification_rules(s))
      for (int n = min_strands(s); n <= 200; ++n)
        if (r.condition.holds(n)) EXPECT_GE(family_order(r.family, r.param.at(n)), 1) << r.source;
}

TEST(Classify, McgIsCenterQuotient) {
  for (int n = 2; n <= 1000; ++n) {
    const auto rp2 = classify(Surface::RP2, n), mcg = classify(Surface::MCG_RP2, n);
    ASSERT_EQ(rp2.size(), mcg.size()) << n;
    for (std::size_t k = 0; k < rp2.size(); ++k) EXPECT_EQ(center_quotient_entry(rp2[k]), mcg[k]) << n;
  }
}

// Independent check of the quotient map on small members, by enumeration.
TEST(Classify, CenterQuotientMatchesTables) {
  std::vector<ClassificationEntry> es;
  for (int n = 2; n <= 5; ++n)
    for (const auto& e : classify(Surface::RP2, n)) es.push_back(e);
  es.push_back(make_entry(FiniteFamily::Tstar, 0));
  for (const auto& e : es) {
    const auto q = center_quotient_entry(e);
    const auto g = *materialize(finite_group_presentation(e.family, e.param), 200000);
    const auto cq = center_and_quotient(g);
    EXPECT_TRUE(isomorphic(cq.quotient, *materialize(finite_group_presentation(q.family, q.param)))) << e.label;
  }
}

TEST(Elimination, Examples) {
  const auto t5 = eliminate_candidates(5);
  EXPECT_EQ(labels(t5.result), (std::vector<std::string>{"Dic40", "Dic32"}));
  auto action_for = [](const EliminationTrace& t, const std::string& label) {
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it)
      if (it->candidate == label) return it->action;
    return EliminationAction::Start;
  };
  EXPECT_EQ(action_for(t5, "T*"), EliminationAction::Eliminate);
  EXPECT_EQ(action_for(t5, "Z18"), EliminationAction::Eliminate);
  const auto t4 = eliminate_candidates(4);
  EXPECT_EQ(action_for(t4, "O*"), EliminationAction::Retain);
  EXPECT_EQ(labels(t4.result), (std::vector<std::string>{"O*", "Dic32", "Dic24"}));
  const auto t3 = eliminate_candidates(3);
  EXPECT_EQ(action_for(t3, "Dic16"), EliminationAction::Add);
  EXPECT_THROW(eliminate_candidates(2), std::invalid_argument);
}

TEST(Elimination, MatchesClassificationUpToThousand) {
  for (int n = 3; n <= 1000; ++n) {
    const auto t = eliminate_candidates(n);
    EXPECT_TRUE(same_entries(t.result, classify(Surface::RP2, n))) << n;
    EXPECT_EQ(labels(t.start), labels(classify(Surface::S2, 2 * n))) << n;
  }
}

TEST(Elimination, ResidueTranslationAndGcd) {
  EXPECT_FALSE(residue_translation_scan(1000));
  EXPECT_FALSE(gcd_scan(10000));
}

// The element-order sets used by the elimination, checked against enumerated tables.
TEST(Elimination, ElementOrdersAgreeWithTables) {
  for (int m = 2; m <= 12; ++m) EXPECT_EQ(family_element_orders(FiniteFamily::Dic, m), orders_in_table(FiniteFamily::Dic, m)) << m;
  for (int k = 2; k <= 12; ++k) {
    EXPECT_EQ(family_element_orders(FiniteFamily::Cyclic, k), orders_in_table(FiniteFamily::Cyclic, k)) << k;
    EXPECT_EQ(family_element_orders(FiniteFamily::Dih, k), orders_in_table(FiniteFamily::Dih, k)) << k;
  }
  for (auto f : {FiniteFamily::Q8, FiniteFamily::Tstar, FiniteFamily::Ostar, FiniteFamily::Istar, FiniteFamily::Alt4,
                 FiniteFamily::Sym4, FiniteFamily::Alt5})
    EXPECT_EQ(family_element_orders(f, 0), orders_in_table(f, 0)) << family_label(f, 0);
}

TEST(OrderLedger, SmallN) {
  for (int n = 2; n <= 8; ++n) {
    const auto l = order_ledger(n);
    EXPECT_TRUE(l.passed()) << n;
    EXPECT_EQ(l.pi_a_order, n);
    EXPECT_EQ(l.a_order.has_value(), n == 2);
  }
  EXPECT_EQ(*order_ledger(2).a_order, 8);
}

TEST(Suite, TwoStrandsAllVerified) {
  const auto r = verify_suite(2);
  EXPECT_EQ(r.exit_code(), 0);
  for (const auto& c : r.checks)
    EXPECT_TRUE(c.status == Status::Verified || c.status == Status::StatementOnly) << c.id;
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, Status::Verified);
  const auto j = to_json(r);
  EXPECT_EQ(j["schema"], ClassificationReport::kSchema);
  EXPECT_EQ(j["exit_code"], 0);
  // attached certificates deserialize and verify
  for (const auto& c : j["checks"])
    if (c.contains("certificate")) EXPECT_TRUE(verify_derivation(van_buskirk(2), derivation_from_json(c["certificate"])));
}

TEST(Suite, ThreeStrandsReportsGapsNotFailures) {
  const auto r = verify_suite(3);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(r.count(Status::Failed), 0u);
  bool order_gap = false;
  for (const auto& c : r.checks) {
    if (c.id.rfind("claim/", 0) == 0) EXPECT_EQ(c.status, Status::Verified) << c.id;
    if (c.id == "order/a-exact") order_gap = c.status == Status::PartiallyVerified && !c.gaps.empty();
  }
  EXPECT_TRUE(order_gap);
  for (const auto& e : r.entries) {
    EXPECT_NE(e.status, Status::Verified);
    EXPECT_FALSE(e.gaps.empty());
  }
  ASSERT_TRUE(r.elimination);
  EXPECT_NE(to_markdown(r).find("| O* | 48 | statement-only |"), std::string::npos);
}

TEST(Suite, ExhaustedBudgetIsAGap) {
  SuiteOptions opt;
  opt.budget.max_expansions = 0;
  opt.relator_image_max_n = 0;
  const auto r = verify_suite(3, opt);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(r.count(Status::Failed), 0u);
}

TEST(Suite, Deterministic) {
  SuiteOptions opt;
  opt.attach_certificates = false;
  EXPECT_EQ(to_json(verify_suite(2, opt)).dump(), to_json(verify_suite(2, opt)).dump());
}
