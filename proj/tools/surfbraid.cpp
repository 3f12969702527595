#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "surfbraid/atlas.hpp"
#include "surfbraid/claims.hpp"
#include "surfbraid/covering.hpp"
#include "surfbraid/enumeration.hpp"
#include "surfbraid/oracles.hpp"

using namespace surfbraid;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kGaps = 2;

struct Settings {
  SearchBudget budget;
  std::uint64_t seed = 1;
  int trials = 500;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Precedence: defaults < config file < SURFBRAID_BUDGET < --budget.
Settings load_settings(const std::string& config_path, std::size_t budget_flag) {
  Settings s;
  if (!config_path.empty()) {
    const auto j = json::parse(read_file(config_path));
    if (j.contains("budget")) {
      const auto& b = j["budget"];
      s.budget.max_expansions = b.value("max_expansions", s.budget.max_expansions);
      s.budget.max_nodes = b.value("max_nodes", s.budget.max_nodes);
      s.budget.max_word_length = b.value("max_word_length", s.budget.max_word_length);
      s.budget.max_growth = b.value("max_growth", s.budget.max_growth);
    }
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      auto& tol = geometry::tolerances();
      tol.base_samples = t.value("base_samples", tol.base_samples);
      tol.min_separation = t.value("min_separation", tol.min_separation);
      tol.perturbation_step = t.value("perturbation_step", tol.perturbation_step);
      tol.max_perturbations = t.value("max_perturbations", tol.max_perturbations);
    }
    if (j.contains("seeds")) s.seed = j["seeds"].value("spotcheck", s.seed);
    s.trials = j.value("spotcheck_trials", s.trials);
  }
  if (const char* env = std::getenv("SURFBRAID_BUDGET")) s.budget.max_expansions = std::stoull(env);
  if (budget_flag) s.budget.max_expansions = budget_flag;
  return s;
}

Presentation surface_presentation(const std::string& surface, int n) {
  if (surface == "rp2") return van_buskirk(n);
  if (surface == "s2") return sphere_presentation(n);
  if (surface == "disc") return disc_presentation(n);
  if (surface == "annulus") return annulus_presentation(n);
  throw std::invalid_argument("unknown surface '" + surface + "' (rp2, s2, disc, annulus)");
}

// Inverse of the naming used by the presentation constructors.
Presentation presentation_by_name(const std::string& name) {
  static const std::regex re(R"(B_(\d+)(\((RP2|S2|Ann)\))?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown presentation '" + name + "'");
  const int n = std::stoi(m[1]);
  if (!m[2].matched) return disc_presentation(n);
  if (m[3] == "RP2") return van_buskirk(n);
  if (m[3] == "S2") return sphere_presentation(n);
  return annulus_presentation(n);
}

int cmd_present(const std::string& surface, int n, bool abelian) {
  const auto p = surface_presentation(surface, n);
  std::cout << to_text(p);
  if (abelian) std::cout << "abelianization " << abelianization(p).str() << "\n";
  return kOk;
}

int cmd_enumerate(const std::string& path, const std::vector<std::string>& subgroup, std::size_t max_cosets,
                  const std::string& strategy, bool table) {
  const auto p = parse_presentation(read_file(path));
  std::vector<BraidWord> gens;
  for (const auto& s : subgroup) gens.push_back(parse_word(s));
  const auto r = coset_enumerate(p, gens, max_cosets, strategy == "felsch" ? Strategy::Felsch : Strategy::HLT);
  if (const auto* o = std::get_if<Overflow>(&r)) {
    std::cout << "overflow: " << o->defined << " cosets defined, limit " << o->limit << "\n";
    return kGaps;
  }
  const auto& t = std::get<CosetTable>(r);
  std::cout << (gens.empty() ? "order " : "index ") << t.coset_count << "\n";
  if (table) std::cout << to_text(t);
  return kOk;
}

int cmd_derive(const std::string& id, int n, const std::string& mode, const std::string& save,
               const Settings& settings) {
  const auto claims = paper_claims(n);
  if (std::none_of(claims.begin(), claims.end(), [&](const Claim& c) { return c.label == id; })) {
    std::cerr << "unknown claim '" << id << "'; claims for n=" << n << ":";
    for (const auto& c : claims) std::cerr << " " << c.label;
    std::cerr << "\n";
    return kFailure;
  }
  const auto run = prove_claims(n, mode == "unseeded" ? SearchMode::Unseeded : SearchMode::Seeded, settings.budget);
  for (const auto& c : run.claims) {
    if (c.claim.label != id) continue;
    std::cout << c.claim.label << ": " << format(c.claim.from) << " = " << (c.claim.to.empty() ? "1" : format(c.claim.to))
              << "\n";
    if (!c.derivation) {
      std::cout << "not found within budget (" << c.stats.expansions << " expansions)\n";
      return kGaps;
    }
    std::cout << "certificate: " << c.derivation->steps.size() << " steps, "
              << (c.verified ? "verified" : "REJECTED by verifier") << "\n";
    if (!save.empty()) write_file(save, serialize(*c.derivation, van_buskirk(n).name));
    return c.verified ? kOk : kFailure;
  }
  return kFailure;
}

int cmd_check(const std::string& path) {
  const auto text = read_file(path);
  const auto j = json::parse(text);
  const auto d = derivation_from_json(j);
  const auto p = presentation_by_name(j.at("presentation").get<std::string>());
  const auto res = check_derivation(p, d);
  const bool exact = serialize(d, p.name) == text;
  std::cout << d.label << " in " << p.name << ": " << (res.ok ? "verified" : "rejected") << "\n";
  if (!res.ok) std::cout << res.message << "\n";
  std::cout << "round trip " << (exact ? "bit-exact" : "differs") << "\n";
  return res.ok && exact ? kOk : kFailure;
}

int cmd_wp(const std::string& surface, int m, const std::string& word_text, bool as_json, const Settings& settings) {
  const auto w = parse_word(word_text);
  if (surface == "s2") {
    const auto v = sphere_word_problem(m, w, settings.budget);
    if (as_json)
      std::cout << to_json(v, m).dump(2) << "\n";
    else
      std::cout << verdict_name(v.verdict) << "\nevidence: " << evidence_name(v.evidence) << "\n" << v.detail << "\n";
    return v.verdict == SphereVerdict::TrivialOrFullTwist ? kGaps : kOk;
  }
  if (surface == "disc" || surface == "annulus") {
    const bool trivial = surface == "disc" ? disc_action(m, w).is_identity() : annulus_oracle(m, w);
    const char* verdict = trivial ? "trivial" : "nontrivial";
    const char* evidence = surface == "disc" ? "Artin action on the free group" : "Artin action of the disc embedding";
    if (as_json)
      std::cout << json{{"verdict", verdict}, {"evidence", evidence}}.dump(2) << "\n";
    else
      std::cout << verdict << "\nevidence: " << evidence << "\n";
    return kOk;
  }
  if (surface == "rp2") {
    // Nontriviality through the covering map; triviality only by certificate.
    std::string verdict = "undecided", evidence, detail;
    std::optional<Derivation> cert;
    const auto p = van_buskirk(m);
    if (m <= 2) {
      const auto g = *materialize(p);
      verdict = evaluate(g, p, w) == g.identity() ? "trivial" : "nontrivial";
      evidence = "group table", detail = "order " + std::to_string(g.order());
    } else if (!permutation_image(w, m).is_identity()) {
      verdict = "nontrivial", evidence = "permutation";
    } else if (const auto img = sphere_word_problem(2 * m, psi(m, w), settings.budget);
               img.verdict == SphereVerdict::Nontrivial || img.verdict == SphereVerdict::FullTwist) {
      // the full twist is nontrivial in B_2m(S2) for m >= 2
      verdict = "nontrivial", evidence = "covering image", detail = img.detail;
    } else {
      auto r = search_identity(p, w, settings.budget);
      if (r.derivation && verify_derivation(p, *r.derivation)) {
        verdict = "trivial", evidence = "certificate", cert = r.derivation;
      } else {
        evidence = "none", detail = "no certificate within budget";
      }
    }
    if (as_json) {
      json j{{"verdict", verdict}, {"evidence", evidence}, {"detail", detail}};
      if (cert) j["certificate"] = to_json(*cert, van_buskirk(m).name);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << verdict << "\nevidence: " << evidence << "\n";
      if (!detail.empty()) std::cout << detail << "\n";
    }
    return verdict == "undecided" ? kGaps : kOk;
  }
  throw std::invalid_argument("unknown surface '" + surface + "' (rp2, s2, disc, annulus)");
}

int cmd_lift(int n, const std::string& word_text, const std::string& cover_name, int d, const std::string& svg,
             const std::string& paths) {
  const auto w = parse_word(word_text);
  const bool annulus = cover_name == "annulus";
  const auto cover = annulus ? CoverSpec::annulus_dfold(d) : CoverSpec::antipodal_sphere();
  const auto motion = word_motion(annulus ? BaseSurface::Annulus : BaseSurface::ProjectivePlane, n, w);
  const auto scene = lift_motion(motion, cover);
  const auto ex = extract(scene);
  const auto expected = annulus ? psi_annulus(d, n, w) : psi(n, w);
  const bool agree = disc_action(ex.strands, ex.word) == disc_action(ex.strands, expected);
  std::cout << "base     " << format(w) << "\n";
  std::cout << "lifted   " << format(ex.word) << "  (" << ex.strands << " strands";
  if (ex.hole_position) std::cout << ", hole at " << *ex.hole_position;
  std::cout << ")\n";
  std::cout << "formula  " << format(expected) << (agree ? "  agrees" : "  DISAGREES") << "\n";
  if (ex.perturbations) std::cout << "perturbed " << ex.perturbations << " times\n";
  if (!svg.empty()) write_file(svg, to_svg(scene));
  if (!paths.empty()) write_file(paths, to_path_text(scene));
  return agree ? kOk : kFailure;
}

int cmd_classify(const std::string& surface, int n, bool as_json) {
  const auto entries = classify(parse_surface(surface), n);
  if (as_json) {
    json j = json::array();
    for (const auto& e : entries) j.push_back(to_json(e));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& e : entries) std::cout << e.label << "\torder " << e.order << "\t" << e.condition << "\n";
  return kOk;
}

SuiteOptions suite_options(const Settings& settings) {
  SuiteOptions opt;
  opt.budget = settings.budget;
  return opt;
}

int cmd_verify(int n, const Settings& settings) {
  const auto r = verify_suite(n, suite_options(settings));
  for (const auto& c : r.checks) {
    std::cout << status_name(c.status) << "\t" << c.id;
    if (!c.detail.empty()) std::cout << "\t" << c.detail;
    std::cout << "\n";
    for (const auto& g : c.gaps) std::cout << "\tgap: " << g << "\n";
  }
  for (const auto& e : r.entries) std::cout << status_name(e.status) << "\tentry/" << e.entry.label << "\n";
  return r.exit_code();
}

int cmd_report(int n, const std::string& format_name, const std::string& out, const Settings& settings) {
  const auto r = verify_suite(n, suite_options(settings));
  const std::string text = format_name == "md" ? to_markdown(r) : to_json(r).dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return r.exit_code();
}

int cmd_spotcheck(int d, int n, const Settings& settings) {
  const auto r = injectivity_spotcheck_annulus(d, n, settings.trials, settings.seed);
  std::cout << "d=" << d << " n=" << n << ": " << r.trials << " nontrivial words, " << r.failures.size()
            << " failures, " << r.discarded_trivial << " trivial draws discarded\n";
  for (const auto& f : r.failures) std::cout << "  " << format(f) << "\n";
  return r.passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface braid group computations"};
  app.require_subcommand(1);
  std::string config;
  std::size_t budget = 0;
  app.add_option("--config", config, "JSON file with budget, tolerances and seeds")->check(CLI::ExistingFile);
  app.add_option("--budget", budget, "maximum search expansions (overrides SURFBRAID_BUDGET)");

  std::string surface, word, path, id, mode = "seeded", save, strategy = "hlt", cover = "sphere", svg, paths,
                                        format_name = "json", out;
  int n = 0, d = 2;
  bool flag = false;
  std::size_t max_cosets = 100000;
  std::vector<std::string> subgroup;

  auto* present = app.add_subcommand("present", "print a presentation (rp2, s2, disc, annulus)");
  present->add_option("surface", surface)->required();
  present->add_option("n", n)->required();
  present->add_flag("--abelianization", flag, "also print abelian invariants");

  auto* enumerate = app.add_subcommand("enumerate", "coset enumeration of a presentation file");
  enumerate->add_option("file", path)->required()->check(CLI::ExistingFile);
  enumerate->add_option("--subgroup", subgroup, "subgroup generator word (repeatable)");
  enumerate->add_option("--max-cosets", max_cosets);
  enumerate->add_option("--strategy", strategy)->check(CLI::IsMember({"hlt", "felsch"}));
  enumerate->add_flag("--table", flag, "print the coset table");

  auto* derive = app.add_subcommand("derive", "certify a claimed identity");
  derive->add_option("claim", id)->required();
  derive->add_option("n", n)->required();
  derive->add_option("--mode", mode)->check(CLI::IsMember({"seeded", "unseeded"}));
  derive->add_option("--save", save, "write the certificate to this file");

  auto* check = app.add_subcommand("check", "re-verify a saved certificate file");
  check->add_option("file", path)->required()->check(CLI::ExistingFile);

  auto* wp = app.add_subcommand("wp", "word problem (rp2, s2, disc, annulus)");
  wp->add_option("surface", surface)->required();
  wp->add_option("m", n)->required();
  wp->add_option("word", word)->required();
  wp->add_flag("--json", flag);

  auto* lift = app.add_subcommand("lift", "lift a braid through a covering and read off the word");
  lift->add_option("n", n)->required();
  lift->add_option("word", word)->required();
  lift->add_option("--cover", cover)->check(CLI::IsMember({"sphere", "annulus"}));
  lift->add_option("-d,--degree", d, "degree of the annulus cover");
  lift->add_option("--svg", svg);
  lift->add_option("--paths", paths);

  auto* cls = app.add_subcommand("classify", "finite subgroups (rp2, s2, mcg_rp2)");
  cls->add_option("surface", surface)->required();
  cls->add_option("n", n)->required();
  cls->add_flag("--json", flag);

  auto* verify = app.add_subcommand("verify", "run every check for B_n(RP2)");
  verify->add_option("n", n)->required();

  auto* report = app.add_subcommand("report", "verification report");
  report->add_option("n", n)->required();
  report->add_option("--format", format_name)->check(CLI::IsMember({"json", "md"}));
  report->add_option("-o,--out", out);

  auto* spot = app.add_subcommand("spotcheck", "random injectivity check of the annulus cover");
  spot->add_option("d", d)->required();
  spot->add_option("n", n)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto settings = load_settings(config, budget);
    if (*present) return cmd_present(surface, n, flag);
    if (*enumerate) return cmd_enumerate(path, subgroup, max_cosets, strategy, flag);
    if (*derive) return cmd_derive(id, n, mode, save, settings);
    if (*check) return cmd_check(path);
    if (*wp) return cmd_wp(surface, n, word, flag, settings);
    if (*lift) return cmd_lift(n, word, cover, d, svg, paths);
    if (*cls) return cmd_classify(surface, n, flag);
    if (*verify) return cmd_verify(n, settings);
    if (*report) return cmd_report(n, format_name, out, settings);
    if (*spot) return cmd_spotcheck(d, n, settings);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
