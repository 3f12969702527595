#include <gtest/gtest.h>

#include "surfbraid/presentations.hpp"

using namespace surfbraid;

namespace {

std::vector<std::string> formatted(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relators) out.push_back(format(r));
  return out;
}

}  // namespace

TEST(VanBuskirk, TwoStrands) {
  auto p = van_buskirk(2);
  EXPECT_EQ(p.generators, (std::vector<Generator>{sigma(1), rho(1), rho(2)}));
  EXPECT_EQ(formatted(p), (std::vector<std::string>{"r2 s1 r1^-1 s1", "r2^-1 r1^-1 r2 r1 s1^-1 s1^-1",
                                                    "r1 r1 s1^-1 s1^-1"}));
}

TEST(VanBuskirk, OneStrand) {
  auto p = van_buskirk(1);
  EXPECT_EQ(p.generators, (std::vector<Generator>{rho(1)}));
  EXPECT_EQ(formatted(p), (std::vector<std::string>{"r1 r1"}));
  EXPECT_THROW(van_buskirk(0), PresentationError);
}

TEST(VanBuskirk, FamilyCounts) {
  for (int n = 2; n <= 8; ++n) {
    auto p = van_buskirk(n);
    EXPECT_EQ(p.generators.size(), static_cast<std::size_t>(2 * n - 1));
    std::map<std::string, int> count;
    for (const auto& l : p.relator_labels) ++count[l];
    EXPECT_EQ(count["commute"], (n - 2) * (n - 3) / 2);
    EXPECT_EQ(count["braid"], std::max(0, n - 2));
    EXPECT_EQ(count["sigma-rho"], (n - 1) * (n - 2));
    EXPECT_EQ(count["rho-shift"], n - 1);
    EXPECT_EQ(count["rho-commutator"], n - 1);
    EXPECT_EQ(count["surface"], 1);
  }
  EXPECT_EQ(van_buskirk(3).relators.size(), 8u);
}

TEST(VanBuskirk, RelatorsArePermutationTrivial) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& r : van_buskirk(n).relators) EXPECT_TRUE(permutation_image(r, n).is_identity()) << format(r);
}

TEST(VanBuskirk, RelatorsAreFreelyReducedAndValid) {
  for (int n = 1; n <= 8; ++n) {
    auto p = van_buskirk(n);
    EXPECT_NO_THROW(p.validate());
    for (const auto& r : p.relators) {
      EXPECT_TRUE(is_freely_reduced(r));
      EXPECT_NO_THROW(check_bounds(r, n));
    }
  }
}

TEST(Sphere, Relators) {
  EXPECT_EQ(formatted(sphere_presentation(2)), (std::vector<std::string>{"s1 s1"}));
  EXPECT_EQ(formatted(sphere_presentation(3)),
            (std::vector<std::string>{"s1 s2 s1 s2^-1 s1^-1 s2^-1", "s1 s2 s2 s1"}));
  auto p4 = sphere_presentation(4);
  EXPECT_EQ(p4.generators.size(), 3u);
  EXPECT_EQ(p4.relators.size(), 4u);
  EXPECT_THROW(sphere_presentation(1), PresentationError);
}

TEST(Sphere, SurfaceRelatorExponent) {
  for (int m = 2; m <= 9; ++m)
    EXPECT_EQ(exponent_sums(sphere_presentation(m).relators.back()).sigma, 2 * (m - 1));
}

TEST(Annulus, Relators) {
  auto p1 = annulus_presentation(1);
  EXPECT_EQ(p1.generators, (std::vector<Generator>{tau()}));
  EXPECT_TRUE(p1.relators.empty());
  auto p2 = annulus_presentation(2);
  EXPECT_EQ(p2.generators, (std::vector<Generator>{sigma(1), tau()}));
  EXPECT_EQ(formatted(p2), (std::vector<std::string>{"t1 s1 t1 s1 t1^-1 s1^-1 t1^-1 s1^-1"}));
  auto p3 = annulus_presentation(3);
  EXPECT_NE(std::find(p3.relators.begin(), p3.relators.end(), parse_word("t1 s2 t1^-1 s2^-1")), p3.relators.end());
}

TEST(NamedElements, Words) {
  EXPECT_EQ(format(named_element(ElementName::A, 3)), "s2^-1 s1^-1 r1");
  EXPECT_EQ(format(named_element(ElementName::B, 3)), "s1^-1 r1");
  EXPECT_EQ(format(named_element(ElementName::B, 2)), "r1");
  EXPECT_EQ(format(named_element(ElementName::Delta, 2)), "s1");
  EXPECT_EQ(format(named_element(ElementName::Delta, 4)), "s1 s2 s3 s1 s2 s1");
  EXPECT_EQ(format(named_element(ElementName::FullTwist, 3)), "s1 s2 s1 s2 s1 s2");
  EXPECT_EQ(format(named_element(ElementName::RhoExpanded, 3, 3)), "s2^-1 s1^-1 r1 s1^-1 s2^-1");
  EXPECT_THROW(named_element(ElementName::B, 1), PresentationError);
  EXPECT_THROW(named_element(ElementName::RhoExpanded, 3, 4), PresentationError);
  for (int n = 2; n <= 6; ++n)
    for (auto e : {ElementName::A, ElementName::B, ElementName::Delta, ElementName::FullTwist})
      EXPECT_NO_THROW(check_bounds(named_element(e, n), n));
}

TEST(FiniteGroups, Shapes) {
  auto dic = finite_group_presentation(FiniteFamily::Dic, 3);
  EXPECT_EQ(dic.name, "Dic12");
  EXPECT_EQ(formatted(dic), (std::vector<std::string>{"g1 g1 g1 g2^-1 g2^-1", "g2 g1 g2^-1 g1"}));
  EXPECT_THROW(finite_group_presentation(FiniteFamily::Dic, 1), PresentationError);
  EXPECT_EQ(finite_group_presentation(FiniteFamily::Istar).generators.size(), 3u);
}

TEST(TextFormat, RoundTrip) {
  for (const auto& p : {van_buskirk(3), sphere_presentation(4), annulus_presentation(3),
                        finite_group_presentation(FiniteFamily::Ostar)}) {
    auto q = parse_presentation(to_text(p));
    EXPECT_EQ(q.name, p.name);
    EXPECT_EQ(q.generators, p.generators);
    EXPECT_EQ(q.relators, p.relators);
  }
  EXPECT_THROW(parse_presentation("name: x\ngenerators: s1\ns2\n"), PresentationError);
}
