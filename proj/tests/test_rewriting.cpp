#include <gtest/gtest.h>

#include <random>

#include "surfbraid/claims.hpp"
#include "surfbraid/enumeration.hpp"
#include "surfbraid/rewriting.hpp"

using namespace surfbraid;

namespace {

const GroupTable& vb2_table() {
  static const GroupTable t = *materialize(van_buskirk(2));
  return t;
}

bool holds_in_vb2(const BraidWord& from, const BraidWord& to) {
  const auto p = van_buskirk(2);
  return evaluate(vb2_table(), p, from) == evaluate(vb2_table(), p, to);
}

std::size_t relator_index(const Presentation& p, const std::string& label) {
  for (std::size_t i = 0; i < p.relator_labels.size(); ++i)
    if (p.relator_labels[i] == label) return i;
  throw std::runtime_error("no relator " + label);
}

}  // namespace

TEST(Verify, EmptyDerivation) {
  Derivation d{"id", parse_word("s1 r2"), parse_word("s1 r2"), {}};
  EXPECT_TRUE(verify_derivation(van_buskirk(2), d));
  d.to = parse_word("s1");
  EXPECT_FALSE(verify_derivation(van_buskirk(2), d));
}

TEST(Verify, SingleFreeCancel) {
  Derivation d{"cancel", parse_word("s1 s1^-1"), {}, {{StepAction::FreeCancel, 0, false, {}, 0}}};
  EXPECT_TRUE(verify_derivation(van_buskirk(2), d));
}

TEST(Verify, SurfaceRelatorDeletion) {
  const auto p = van_buskirk(2);
  const std::size_t surface = relator_index(p, "surface");
  EXPECT_EQ(surface, 2u);
  Derivation d{"surface", parse_word("r1 r1"), parse_word("s1 s1"),
               {{StepAction::DeleteRelatorConjugate, surface, false, {}, 0}}};
  EXPECT_TRUE(verify_derivation(p, d));
  d.steps[0].action = StepAction::InsertRelatorConjugate;
  EXPECT_FALSE(verify_derivation(p, d));
}

TEST(Verify, MalformedStepsReportIndex) {
  const auto p = van_buskirk(2);
  Derivation d{"bad", parse_word("s1 s1^-1 r1"), parse_word("r1"),
               {{StepAction::FreeInsert, 0, false, parse_word("r1"), 0},
                {StepAction::InsertRelatorConjugate, 99, false, {}, 0}}};
  auto r = check_derivation(p, d);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.failed_step);
  EXPECT_EQ(*r.failed_step, 1u);

  d.steps = {{StepAction::FreeCancel, 0, false, {}, 1}};
  r = check_derivation(p, d);
  ASSERT_TRUE(r.failed_step);
  EXPECT_EQ(*r.failed_step, 0u);

  d.steps = {{StepAction::FreeCancel, 0, false, {}, 7}};
  EXPECT_EQ(check_derivation(p, d).failed_step, std::optional<std::size_t>(0));

  d.steps = {{StepAction::FreeInsert, 0, false, parse_word("s5"), 0}};
  EXPECT_FALSE(check_derivation(p, d).ok);
}

TEST(Verify, ClaimOutsidePresentation) {
  Derivation d{"x", parse_word("s3"), parse_word("s3"), {}};
  EXPECT_FALSE(verify_derivation(van_buskirk(2), d));
}

TEST(Search, EmptyWord) {
  auto r = search_identity(van_buskirk(3), {});
  ASSERT_TRUE(r);
  EXPECT_TRUE(r.derivation->steps.empty());
  EXPECT_TRUE(verify_derivation(van_buskirk(3), *r.derivation));
}

TEST(Search, ConjriWitnessTwoStrands) {
  const auto p = van_buskirk(2);
  const auto w = parse_word("s1^-1 r1 s1 r2");
  auto r = search_identity(p, w);
  ASSERT_TRUE(r);
  EXPECT_TRUE(verify_derivation(p, *r.derivation));
  EXPECT_EQ(r.derivation->from, w);
  EXPECT_TRUE(r.derivation->to.empty());
  EXPECT_TRUE(holds_in_vb2(w, {}));
}

TEST(Search, PowerabTwoStrands) {
  const auto p = van_buskirk(2);
  const auto a = named_element(ElementName::A, 2);
  const auto w = a * a * invert(parse_word("r2 r1"));
  auto r = search_identity(p, w);
  ASSERT_TRUE(r);
  EXPECT_TRUE(verify_derivation(p, *r.derivation));
}

TEST(Search, BudgetExhaustionIsNotFound) {
  SearchBudget tiny;
  tiny.max_expansions = 3;
  // a^4 is the central involution of the order-16 group, so this word is not trivial.
  const auto a = named_element(ElementName::A, 2);
  auto r = search_identity(van_buskirk(2), power(a, 4), tiny);
  EXPECT_FALSE(r);
  EXPECT_FALSE(r.stats.found);
  EXPECT_LE(r.stats.expansions, 3u);
  EXPECT_FALSE(holds_in_vb2(power(a, 4), {}));
}

TEST(Search, Deterministic) {
  const auto p = van_buskirk(2);
  const auto w = parse_word("s1^-1 r1 s1 r2");
  auto r1 = search_identity(p, w), r2 = search_identity(p, w);
  ASSERT_TRUE(r1 && r2);
  EXPECT_EQ(*r1.derivation, *r2.derivation);
  EXPECT_EQ(r1.stats.expansions, r2.stats.expansions);
  EXPECT_EQ(replay_trace(p, *r1.derivation), replay_trace(p, *r2.derivation));
}

TEST(Search, EqualityCertificateEndsAtTarget) {
  const auto p = van_buskirk(2);
  auto r = search_equality(p, parse_word("r1 r1"), parse_word("s1 s1"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r.derivation->to, parse_word("s1 s1"));
  EXPECT_TRUE(verify_derivation(p, *r.derivation));
}

// Soundness: words that search proves trivial must be trivial in the table.
TEST(Search, SoundAgainstOrderSixteenTable) {
  const auto p = van_buskirk(2);
  std::mt19937 rng(7);
  const std::vector<Letter> letters{{sigma(1), 1}, {sigma(1), -1}, {rho(1), 1},
                                    {rho(1), -1},  {rho(2), 1},    {rho(2), -1}};
  SearchBudget budget;
  budget.max_expansions = 2000;
  int proven = 0;
  for (int trial = 0; trial < 60; ++trial) {
    BraidWord w;
    const int len = 2 + static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) w.push_back(letters[rng() % letters.size()]);
    auto r = search_identity(p, w, budget);
    if (!r) continue;
    ++proven;
    EXPECT_TRUE(verify_derivation(p, *r.derivation));
    EXPECT_EQ(evaluate(vb2_table(), p, w), 0) << format(w);
  }
  EXPECT_GT(proven, 0);
}

TEST(Serialization, JsonRoundTripIsBitExact) {
  const auto p = van_buskirk(2);
  auto r = search_identity(p, parse_word("s1^-1 r1 s1 r2"));
  ASSERT_TRUE(r);
  const std::string text = serialize(*r.derivation, p.name);
  const Derivation back = deserialize(text);
  EXPECT_EQ(back, *r.derivation);
  EXPECT_EQ(serialize(back, p.name), text);
  EXPECT_TRUE(verify_derivation(p, back));
  EXPECT_THROW(deserialize("{\"format\": \"other\"}"), std::invalid_argument);
}

TEST(Certificates, ReverseAndMirror) {
  const auto p = van_buskirk(2);
  auto r = search_identity(p, parse_word("s1^-1 r1 s1 r2"));
  ASSERT_TRUE(r);
  const auto rev = reverse_certificate(p, *r.derivation);
  EXPECT_EQ(rev.from, r.derivation->to);
  EXPECT_EQ(rev.to, r.derivation->from);
  EXPECT_TRUE(verify_derivation(p, rev));
  const auto mir = mirror_certificate(p, *r.derivation);
  EXPECT_EQ(mir.from, invert(r.derivation->from));
  EXPECT_TRUE(verify_derivation(p, mir));
}

TEST(RuleBookTest, MacrosAndLemmas) {
  RuleBook book(van_buskirk(3));
  book.add_macro("C3", "s1 s2");
  book.add_macro("A", "C3^-1 r1");
  EXPECT_EQ(book.alphabet().expand(book.parse("A")), parse_word("s2^-1 s1^-1 r1"));
  EXPECT_THROW(book.add_macro("A", "s1"), std::invalid_argument);
  EXPECT_THROW(book.add_macro("x", "s1"), std::invalid_argument);

  IdentitySearch s(book, {});
  auto r = s.prove(book.parse("C3^-1 r1 C3 r3"), {}, "CR");
  ASSERT_TRUE(r);
  EXPECT_TRUE(verify_derivation(book.presentation(), *r.derivation));
  EXPECT_FALSE(r.trace.empty());
  EXPECT_THROW(book.add_lemma("bad", book.parse("C3 r3"), *r.derivation), std::invalid_argument);
  book.add_lemma("CR", book.parse("C3^-1 r1 C3 r3"), *r.derivation);
  EXPECT_EQ(book.lemmas().size(), 1u);
}

TEST(Claims, Examples) {
  auto has = [](const std::vector<Claim>& cs, const std::string& label, const BraidWord& from, const BraidWord& to) {
    for (const auto& c : cs)
      if (c.label == label) return c.from == from && c.to == to;
    return false;
  };
  const auto c2 = paper_claims(2);
  EXPECT_TRUE(has(c2, "conjri_1", parse_word("s1^-1 r1 s1"), parse_word("r2^-1")));
  EXPECT_TRUE(has(c2, "realdic_a", parse_word("s1 s1^-1 r1 s1^-1 s1^-1 r1"), {}));
  const auto c3 = paper_claims(3);
  EXPECT_TRUE(has(c3, "rn2", parse_word("r3^-1 r3^-1"), parse_word("s2 s1 s1 s2")));
  EXPECT_TRUE(has(c3, "permute_c_1", parse_word("r1^-1 s1 r1^-1 s1 s1 s1^-1 r1 s1^-1 r1"), parse_word("s1^-1")));
  EXPECT_THROW(paper_claims(1), std::invalid_argument);
}

TEST(Claims, CountsAndBounds) {
  for (int n = 2; n <= 6; ++n) {
    const auto cs = paper_claims(n);
    // rjr1 (n) + rn2 + powerab (2) + conjri (n) + permute (a: n-1, b: n, c: n-2) + realdic (2) + delta4
    const std::size_t expected = static_cast<std::size_t>(n + 1 + 2 + n + (n - 1) + n + (n - 2) + 2 + 1);
    EXPECT_EQ(cs.size(), expected) << n;
    for (const auto& c : cs) {
      EXPECT_NO_THROW(check_bounds(c.from, n));
      EXPECT_NO_THROW(check_bounds(c.to, n));
      // every claim is permutation-consistent
      EXPECT_EQ(permutation_image(c.from, n), permutation_image(c.to, n)) << c.label;
    }
  }
}

TEST(Claims, TwoStrandsHoldInTable) {
  for (const auto& c : paper_claims(2)) EXPECT_TRUE(holds_in_vb2(c.from, c.to)) << c.label;
}

TEST(Claims, SeededTwoAndThree) {
  for (int n : {2, 3}) {
    const auto run = prove_claims(n, SearchMode::Seeded);
    for (const auto& c : run.claims) EXPECT_TRUE(c.verified) << n << " " << c.claim.label;
    for (const auto& l : run.lemmas) EXPECT_TRUE(l.stats.found) << n << " " << l.label;
  }
}

TEST(Claims, UnseededTwoStrandsAgreeWithTable) {
  const auto p = van_buskirk(2);
  const auto run = prove_claims(2, SearchMode::Unseeded);
  EXPECT_TRUE(run.lemmas.empty());
  for (const auto& c : run.claims) {
    EXPECT_TRUE(c.verified) << c.claim.label;
    if (c.derivation) EXPECT_TRUE(holds_in_vb2(c.derivation->from, c.derivation->to));
  }
}

TEST(Claims, UnseededThreeStrands) {
  const auto run = prove_claims(3, SearchMode::Unseeded);
  for (const auto& c : run.claims) EXPECT_TRUE(c.verified) << c.claim.label;
}
