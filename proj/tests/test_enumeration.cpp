#include <gtest/gtest.h>

#include "surfbraid/enumeration.hpp"

using namespace surfbraid;

namespace {

GroupTable table_of(const Presentation& p, Strategy s = Strategy::HLT) {
  auto t = materialize(p, 100000, s);
  if (!t) throw std::runtime_error("overflow enumerating " + p.name);
  return *t;
}

GroupTable fam(FiniteFamily f, int param = 0) { return table_of(finite_group_presentation(f, param)); }

// Independent abelianization oracle: add all generator commutators and
// enumerate; only usable when the abelianization is finite.
GroupTable abelianized_table(Presentation p) {
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    for (std::size_t j = i + 1; j < p.generators.size(); ++j) {
      auto x = word_of(p.generators[i]), y = word_of(p.generators[j]);
      p.add_relator(x * y * invert(x) * invert(y), "comm");
    }
  return table_of(p);
}

}  // namespace

TEST(CosetEnumerate, PaperOrders) {
  auto t1 = coset_enumerate(van_buskirk(1));
  ASSERT_TRUE(std::holds_alternative<CosetTable>(t1));
  EXPECT_EQ(std::get<CosetTable>(t1).coset_count, 2);
  auto t2 = coset_enumerate(van_buskirk(2));
  ASSERT_TRUE(std::holds_alternative<CosetTable>(t2));
  EXPECT_EQ(std::get<CosetTable>(t2).coset_count, 16);
  EXPECT_TRUE(relators_hold(van_buskirk(2), std::get<CosetTable>(t2)));
  auto t3 = coset_enumerate(finite_group_presentation(FiniteFamily::Dic, 3));
  EXPECT_EQ(std::get<CosetTable>(t3).coset_count, 12);
}

TEST(CosetEnumerate, SubgroupIndex) {
  // <sigma_1> has index 4 in the order-16 group (sigma_1 has order 4)
  auto t = coset_enumerate(van_buskirk(2), {parse_word("s1")});
  ASSERT_TRUE(std::holds_alternative<CosetTable>(t));
  EXPECT_EQ(std::get<CosetTable>(t).coset_count, 4);
  EXPECT_FALSE(std::get<CosetTable>(t).trivial_subgroup);
  EXPECT_THROW(group_table(std::get<CosetTable>(t)), EnumerationError);
}

TEST(CosetEnumerate, Overflow) {
  // the annulus group is infinite
  auto t = coset_enumerate(annulus_presentation(2), {}, 500);
  ASSERT_TRUE(std::holds_alternative<Overflow>(t));
  EXPECT_EQ(std::get<Overflow>(t).limit, 500u);
}

TEST(CosetEnumerate, StrategiesAndRelatorOrderAgree) {
  std::vector<Presentation> targets = {van_buskirk(1), van_buskirk(2), sphere_presentation(2), sphere_presentation(3),
                                       finite_group_presentation(FiniteFamily::Tstar),
                                       finite_group_presentation(FiniteFamily::Ostar),
                                       finite_group_presentation(FiniteFamily::Istar)};
  for (int m = 2; m <= 10; ++m) targets.push_back(finite_group_presentation(FiniteFamily::Dic, m));
  for (int k = 2; k <= 10; ++k) targets.push_back(finite_group_presentation(FiniteFamily::Dih, k));
  for (auto p : targets) {
    const int hlt = table_of(p, Strategy::HLT).order();
    const int felsch = table_of(p, Strategy::Felsch).order();
    EXPECT_EQ(hlt, felsch) << p.name;
    std::reverse(p.relators.begin(), p.relators.end());
    EXPECT_EQ(table_of(p, Strategy::HLT).order(), hlt) << p.name;
    EXPECT_EQ(table_of(p, Strategy::Felsch).order(), hlt) << p.name;
  }
}

TEST(CosetEnumerate, FamilyOrders) {
  for (int m = 2; m <= 10; ++m) EXPECT_EQ(fam(FiniteFamily::Dic, m).order(), 4 * m);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(fam(FiniteFamily::Dih, k).order(), 2 * k);
  EXPECT_EQ(fam(FiniteFamily::Q8).order(), 8);
  EXPECT_EQ(fam(FiniteFamily::Tstar).order(), 24);
  EXPECT_EQ(fam(FiniteFamily::Ostar).order(), 48);
  EXPECT_EQ(fam(FiniteFamily::Istar).order(), 120);
  EXPECT_EQ(fam(FiniteFamily::Alt4).order(), 12);
  EXPECT_EQ(fam(FiniteFamily::Sym4).order(), 24);
  EXPECT_EQ(fam(FiniteFamily::Alt5).order(), 60);
  EXPECT_EQ(fam(FiniteFamily::Cyclic, 7).order(), 7);
  EXPECT_EQ(table_of(sphere_presentation(3)).order(), 12);
}

TEST(GroupTable, TrivialPresentation) {
  Presentation p;
  p.name = "trivial";
  p.generators = {abstract_gen(1)};
  p.add_relator(parse_word("g1"), "x");
  auto t = table_of(p);
  EXPECT_EQ(t.order(), 1);
}

TEST(GroupTable, VanBuskirkTwo) {
  const auto p = van_buskirk(2);
  auto g = table_of(p);
  ASSERT_EQ(g.order(), 16);
  EXPECT_TRUE(g.is_associative());
  const int s1 = evaluate(g, p, parse_word("s1"));
  EXPECT_EQ(g.element_order(s1), 4);
  // witness words evaluate back to their element
  for (int e = 0; e < g.order(); ++e) EXPECT_EQ(evaluate(g, p, g.word(e)), e);
}

TEST(GroupTable, QuaternionHasOneInvolution) {
  auto g = fam(FiniteFamily::Dic, 2);
  int involutions = 0;
  for (int e = 0; e < g.order(); ++e) involutions += g.element_order(e) == 2;
  EXPECT_EQ(involutions, 1);
}

TEST(GroupTable, AssociativeCorpus) {
  for (auto f : {FiniteFamily::Tstar, FiniteFamily::Ostar, FiniteFamily::Istar})
    EXPECT_TRUE(fam(f).is_associative()) << family_label(f, 0);
}

TEST(Isomorphism, PaperExamples) {
  const auto p = van_buskirk(2);
  auto g = table_of(p);
  EXPECT_TRUE(isomorphic(g, fam(FiniteFamily::Dic, 4)));
  std::vector<int> pure;
  for (int e = 0; e < g.order(); ++e)
    if (permutation_image(g.word(e), 2).is_identity()) pure.push_back(e);
  auto sub = subgroup_table(g, pure, "P2(RP2)");
  EXPECT_EQ(sub.order(), 8);
  EXPECT_TRUE(isomorphic(sub, fam(FiniteFamily::Q8)));
  EXPECT_FALSE(isomorphic(fam(FiniteFamily::Dic, 3), fam(FiniteFamily::Dih, 6)));
  EXPECT_FALSE(isomorphic(fam(FiniteFamily::Tstar), fam(FiniteFamily::Sym4)));
  EXPECT_TRUE(isomorphic(fam(FiniteFamily::Dih, 3), table_of(sphere_presentation(3))) ==
              isomorphic(table_of(sphere_presentation(3)), fam(FiniteFamily::Dih, 3)));
}

TEST(Isomorphism, WitnessIsHomomorphism) {
  auto a = table_of(van_buskirk(2));
  auto b = fam(FiniteFamily::Dic, 4);
  auto w = find_isomorphism(a, b);
  ASSERT_TRUE(w.has_value());
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      EXPECT_EQ(w->map[static_cast<std::size_t>(a.mul(x, y))],
                b.mul(w->map[static_cast<std::size_t>(x)], w->map[static_cast<std::size_t>(y)]));
}

TEST(Isomorphism, ReflexiveSymmetricOnCorpus) {
  std::vector<GroupTable> corpus = {fam(FiniteFamily::Cyclic, 2), fam(FiniteFamily::Q8)};
  for (int m = 3; m <= 10; ++m) corpus.push_back(fam(FiniteFamily::Dic, m));
  for (int k = 4; k <= 10; ++k) corpus.push_back(fam(FiniteFamily::Dih, k));
  corpus.push_back(fam(FiniteFamily::Tstar));
  corpus.push_back(fam(FiniteFamily::Ostar));
  corpus.push_back(fam(FiniteFamily::Istar));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_TRUE(isomorphic(corpus[i], corpus[i])) << corpus[i].label();
    for (std::size_t j = i + 1; j < corpus.size(); ++j)
      if (corpus[i].order() == corpus[j].order())
        EXPECT_EQ(isomorphic(corpus[i], corpus[j]), isomorphic(corpus[j], corpus[i]));
  }
  // Dic24 and Dih24 share an order but not a structure.
  EXPECT_FALSE(isomorphic(fam(FiniteFamily::Dic, 6), fam(FiniteFamily::Dih, 12)));
  // O* and T* x Z2 style confusions: different histograms
  EXPECT_FALSE(isomorphic(fam(FiniteFamily::Ostar), fam(FiniteFamily::Dic, 12)));
}

TEST(CenterQuotient, PaperExamples) {
  for (int n = 2; n <= 6; ++n) {
    auto cq = center_and_quotient(fam(FiniteFamily::Dic, 2 * n));
    EXPECT_EQ(cq.quotient.order(), 4 * n);
    EXPECT_TRUE(isomorphic(cq.quotient, fam(FiniteFamily::Dih, 2 * n))) << n;
  }
  EXPECT_TRUE(isomorphic(center_and_quotient(fam(FiniteFamily::Ostar)).quotient, fam(FiniteFamily::Sym4)));
  EXPECT_TRUE(isomorphic(center_and_quotient(fam(FiniteFamily::Istar)).quotient, fam(FiniteFamily::Alt5)));
  EXPECT_TRUE(isomorphic(center_and_quotient(fam(FiniteFamily::Tstar)).quotient, fam(FiniteFamily::Alt4)));
  EXPECT_EQ(center_and_quotient(fam(FiniteFamily::Istar)).center.size(), 2u);
  EXPECT_THROW(center_and_quotient(fam(FiniteFamily::Cyclic, 3)), EnumerationError);
}

TEST(VanBuskirkTwo, DicyclicRealisation) {
  const auto p = van_buskirk(2);
  auto g = table_of(p);
  const int a = evaluate(g, p, named_element(ElementName::A, 2));
  const int d = evaluate(g, p, named_element(ElementName::Delta, 2));
  EXPECT_EQ(g.element_order(a), 8);
  EXPECT_EQ(g.element_order(d), 4);
  EXPECT_EQ(g.power(a, 4), g.mul(d, d));
  EXPECT_EQ(static_cast<int>(g.generated_by({a, d}).size()), 16);
  const int ft = evaluate(g, p, named_element(ElementName::FullTwist, 2));
  std::vector<int> involutions;
  for (int e = 0; e < g.order(); ++e)
    if (g.element_order(e) == 2) involutions.push_back(e);
  EXPECT_EQ(involutions, std::vector<int>{ft});
}

TEST(Abelianization, AgainstEnumerationOracle) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(abelianization(van_buskirk(n)), (AbelianInvariants{{2, 2}})) << n;
    auto ab = abelianized_table(van_buskirk(n));
    EXPECT_EQ(ab.order(), 4);
    EXPECT_EQ(ab.order_histogram(), (std::map<int, int>{{1, 1}, {2, 3}}));
  }
  for (int m = 3; m <= 6; ++m) {
    EXPECT_EQ(abelianization(sphere_presentation(m)), (AbelianInvariants{{2LL * (m - 1)}})) << m;
    auto ab = abelianized_table(sphere_presentation(m));
    EXPECT_EQ(ab.order(), 2 * (m - 1));
    EXPECT_EQ(ab.order_histogram().rbegin()->first, 2 * (m - 1));
  }
  EXPECT_EQ(abelianization(annulus_presentation(1)), (AbelianInvariants{{0}}));
  EXPECT_EQ(abelianization(annulus_presentation(3)), (AbelianInvariants{{0, 0}}));
  EXPECT_EQ(abelianization(van_buskirk(1)), (AbelianInvariants{{2}}));
  EXPECT_EQ(abelianization(finite_group_presentation(FiniteFamily::Dic, 3)), (AbelianInvariants{{4}}));
  EXPECT_EQ(abelianization(finite_group_presentation(FiniteFamily::Dic, 4)), (AbelianInvariants{{2, 2}}));
}

TEST(Export, TextFormats) {
  auto g = fam(FiniteFamily::Q8);
  auto text = to_text(g);
  EXPECT_NE(text.find("order: 8"), std::string::npos);
  EXPECT_NE(text.find("row 7:"), std::string::npos);
  auto t = std::get<CosetTable>(coset_enumerate(van_buskirk(1)));
  EXPECT_NE(to_text(t).find("cosets: 2"), std::string::npos);
}
