#include <gtest/gtest.h>

#include <random>

#include "surfbraid/oracles.hpp"

using namespace surfbraid;

namespace {

BraidWord random_sigma_word(std::mt19937& rng, int m, int len) {
  BraidWord w;
  for (int i = 0; i < len; ++i)
    w.push_back({sigma(1 + static_cast<int>(rng() % static_cast<unsigned>(m - 1))), rng() % 2 ? 1 : -1});
  return w;
}

}  // namespace

TEST(DiscAction, Convention) {
  const auto f = disc_action(2, parse_word("s1"));
  EXPECT_EQ(f.images[0], (FreeWord{1, 2, -1}));
  EXPECT_EQ(f.images[1], (FreeWord{1}));
  EXPECT_TRUE(disc_action(3, parse_word("s1 s1^-1")).is_identity());
  EXPECT_TRUE(disc_action(3, {}).is_identity());
  EXPECT_THROW(disc_action(3, parse_word("r1")), WordError);
  EXPECT_THROW(disc_action(3, parse_word("s3")), WordError);
}

TEST(DiscAction, AntiHomomorphismOnRandomPairs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const auto u = random_sigma_word(rng, m, static_cast<int>(rng() % 6));
    const auto v = random_sigma_word(rng, m, static_cast<int>(rng() % 6));
    EXPECT_EQ(disc_action(m, u * v), compose(disc_action(m, v), disc_action(m, u)));
  }
}

TEST(DiscAction, ArtinRelatorsAct) {
  for (int m = 2; m <= 7; ++m)
    for (const auto& r : disc_presentation(m).relators) EXPECT_TRUE(disc_action(m, r).is_identity()) << m;
}

TEST(DiscAction, FullTwistIsConjugationByBoundary) {
  for (int m = 2; m <= 6; ++m) {
    const auto f = disc_action(m, named_element(ElementName::FullTwist, m));
    FreeWord boundary;
    for (int k = 1; k <= m; ++k) boundary.push_back(k);
    for (int k = 1; k <= m; ++k) {
      const auto& img = f.images[static_cast<std::size_t>(k - 1)];
      const auto a = free_concat(free_concat(boundary, {k}), free_inverse(boundary));
      const auto b = free_concat(free_concat(free_inverse(boundary), {k}), boundary);
      EXPECT_TRUE(img == a || img == b) << m;
    }
  }
}

TEST(DiscAction, PropGarsideExact) {
  for (int n = 2; n <= 7; ++n) {
    const auto delta = garside_word(n);
    for (int i = 1; i <= n - 1; ++i)
      EXPECT_EQ(disc_action(n, invert(delta) * word_of(sigma(i)) * delta), disc_action(n, word_of(sigma(n - i))))
          << n << " " << i;
  }
}

TEST(DiscAction, SeparatesNontrivialWords) {
  EXPECT_FALSE(disc_action(3, parse_word("s1 s2 s1 s2^-1 s1^-1")).is_identity());
  EXPECT_FALSE(disc_action(3, parse_word("s1 s1")).is_identity());
}

TEST(SphereAction, RelatorsActByInnerAutomorphisms) {
  for (int m = 2; m <= 6; ++m)
    for (const auto& r : sphere_presentation(m).relators) EXPECT_TRUE(is_inner(sphere_action(m, r))) << m;
  // the sphere relator itself is conjugation by a generator, not the identity
  EXPECT_FALSE(sphere_action(3, surface_loop_word(3)).is_identity());
}

TEST(SphereAction, Examples) {
  EXPECT_FALSE(is_inner(sphere_action(3, parse_word("s1"))));
  EXPECT_TRUE(sphere_action(3, named_element(ElementName::FullTwist, 3)).is_identity());
  EXPECT_EQ(sphere_action(3, {}).rank, 2);
}

TEST(SphereAction, ConstantOnCertificateCorpus) {
  // random derivations built from relator insertions are valid by construction
  std::mt19937 rng(5);
  for (int m = 3; m <= 5; ++m) {
    const auto p = sphere_presentation(m);
    for (int trial = 0; trial < 40; ++trial) {
      const auto from = random_sigma_word(rng, m, 4);
      DerivationBuilder b(p, from);
      for (int k = 0; k < 3; ++k) {
        const auto conj = random_sigma_word(rng, m, static_cast<int>(rng() % 3));
        b.insert_relator(rng() % p.relators.size(), rng() % 2, conj, rng() % (b.size() + 1));
      }
      const BraidWord to(b.word());
      const auto d = b.finish(to, "corpus");
      ASSERT_TRUE(verify_derivation(p, d));
      EXPECT_TRUE(is_inner(sphere_action(m, d.from * invert(d.to))));
      SearchBudget quick;
      quick.max_expansions = 200;
      EXPECT_NE(sphere_word_problem(m, d.from * invert(d.to), quick).verdict, SphereVerdict::Nontrivial);
    }
  }
}

TEST(InnerConjugator, RecoversConjugator) {
  const FreeWord c{2, -1, 3};
  FreeEndo f{3, {}};
  for (int k = 1; k <= 3; ++k) f.images.push_back(free_concat(free_concat(c, {k}), free_inverse(c)));
  auto got = inner_conjugator(f);
  ASSERT_TRUE(got);
  EXPECT_EQ(*got, c);
  f.images[2] = {3, 3};
  EXPECT_FALSE(is_inner(f));
}

TEST(SphereWordProblem, Examples) {
  auto v = sphere_word_problem(3, parse_word("s1"));
  EXPECT_EQ(v.verdict, SphereVerdict::Nontrivial);
  EXPECT_EQ(v.evidence, Evidence::Permutation);

  v = sphere_word_problem(3, named_element(ElementName::FullTwist, 3));
  EXPECT_EQ(v.verdict, SphereVerdict::FullTwist);
  EXPECT_EQ(sphere_exponent_class(3, named_element(ElementName::FullTwist, 3)), 2);

  v = sphere_word_problem(4, surface_loop_word(4));
  EXPECT_EQ(v.verdict, SphereVerdict::Trivial);
  EXPECT_EQ(v.evidence, Evidence::Certificate);
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(verify_derivation(sphere_presentation(4), *v.certificate));

  // a pure braid with non-inner action
  v = sphere_word_problem(4, parse_word("s1 s1"));
  EXPECT_EQ(v.verdict, SphereVerdict::Nontrivial);
  EXPECT_EQ(v.evidence, Evidence::Action);

  EXPECT_EQ(sphere_word_problem(3, {}).verdict, SphereVerdict::Trivial);
  EXPECT_EQ(sphere_word_problem(2, parse_word("s1 s1")).verdict, SphereVerdict::Trivial);
  EXPECT_EQ(sphere_word_problem(2, parse_word("s1")).verdict, SphereVerdict::Nontrivial);
}

TEST(SphereWordProblem, EvenFullTwistAmbiguity) {
  // the full twist spelled as (s3 s2 s1)^4; the literal word would certify itself
  const auto ft = power(parse_word("s3 s2 s1"), 4);
  EXPECT_TRUE(disc_action(4, ft) == disc_action(4, named_element(ElementName::FullTwist, 4)));
  SearchBudget tiny, medium;
  tiny.max_expansions = 10;
  medium.max_expansions = 20000;
  const auto weak = sphere_word_problem(4, ft, tiny);
  EXPECT_EQ(weak.verdict, SphereVerdict::TrivialOrFullTwist);
  EXPECT_EQ(weak.evidence, Evidence::ExponentClass);
  const auto strong = sphere_word_problem(4, ft, medium);
  EXPECT_TRUE(strong.verdict == SphereVerdict::FullTwist || strong.verdict == SphereVerdict::TrivialOrFullTwist);
  EXPECT_NE(strong.verdict, SphereVerdict::Trivial);
}

TEST(SphereWordProblem, MonotoneInBudget) {
  std::mt19937 rng(3);
  const auto p = sphere_presentation(4);
  for (int trial = 0; trial < 10; ++trial) {
    DerivationBuilder b(p, {});
    for (int k = 0; k < 2; ++k) b.insert_relator(rng() % p.relators.size(), rng() % 2, random_sigma_word(rng, 4, 1), 0);
    const BraidWord w(b.word());
    SearchBudget small, large;
    small.max_expansions = 5;
    large.max_expansions = 20000;
    const auto a = sphere_word_problem(4, w, small).verdict;
    const auto c = sphere_word_problem(4, w, large).verdict;
    EXPECT_NE(a, SphereVerdict::Nontrivial);
    if (a == SphereVerdict::Trivial) EXPECT_EQ(c, SphereVerdict::Trivial);
    if (a == SphereVerdict::FullTwist) EXPECT_EQ(c, SphereVerdict::FullTwist);
    EXPECT_NE(c, SphereVerdict::FullTwist);
  }
}

TEST(Annulus, Examples) {
  EXPECT_TRUE(annulus_oracle(2, parse_word("t1 s1 t1 s1") * invert(parse_word("s1 t1 s1 t1"))));
  EXPECT_FALSE(annulus_oracle(2, parse_word("t1")));
  EXPECT_FALSE(annulus_oracle(2, parse_word("s1 s1")));
  EXPECT_TRUE(annulus_oracle(3, parse_word("t1 s2 t1^-1 s2^-1")));
  EXPECT_EQ(annulus_to_disc(2, parse_word("t1 s1")), parse_word("s1 s1 s2"));
}

TEST(Annulus, RelatorsAreTrivial) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& r : annulus_presentation(n).relators) EXPECT_TRUE(annulus_oracle(n, r)) << n;
}
