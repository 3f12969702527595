#pragma once

// Presentations of the groups handled by the toolkit: Van Buskirk's
// presentation of B_n(RP^2), sphere and annulus braid groups, and a small
// zoo of finite groups (dicyclic, dihedral, binary polyhedral, ...).

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "surfbraid/words.hpp"

namespace surfbraid {

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Presentation {
  std::string name;
  std::vector<Generator> generators;
  std::vector<BraidWord> relators;
  std::vector<std::string> relator_labels;  // parallel to relators

  std::optional<std::size_t> index_of(const Generator& g) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == g) return i;
    return std::nullopt;
  }
  bool contains(const Generator& g) const { return index_of(g).has_value(); }
  bool covers(const BraidWord& w) const {
    for (const auto& l : w)
      if (!contains(l.gen)) return false;
    return true;
  }
  std::size_t longest_relator() const {
    std::size_t best = 0;
    for (const auto& r : relators) best = std::max(best, r.size());
    return best;
  }

  /// Stores lhs * rhs^-1 free-reduced; vacuous relations are dropped.
  void add_relation(const BraidWord& lhs, const BraidWord& rhs, std::string label) {
    add_relator(lhs * invert(rhs), std::move(label));
  }
  void add_relator(const BraidWord& r, std::string label) {
    auto reduced = free_reduce(r);
    if (reduced.empty()) return;
    relators.push_back(std::move(reduced));
    relator_labels.push_back(std::move(label));
  }

  void validate() const {
    for (const auto& r : relators) {
      if (r.empty()) throw PresentationError("empty relator in " + name);
      if (!covers(r))
        throw PresentationError("relator '" + format(r) + "' uses a letter outside the generators of " +
                                name);
    }
  }
};

namespace detail {

inline BraidWord sigma_run(int from, int to, int exp) {
  BraidWord w;
  const int step = from <= to ? 1 : -1;
  for (int i = from; i != to + step; i += step) w.push_back({sigma(i), exp});
  return w;
}

inline void add_artin_relations(Presentation& p, int strands) {
  for (int i = 1; i <= strands - 1; ++i)
    for (int j = i + 2; j <= strands - 1; ++j)
      p.add_relation(word_of(sigma(i)) * word_of(sigma(j)), word_of(sigma(j)) * word_of(sigma(i)),
                     "commute");
  for (int i = 1; i <= strands - 2; ++i) {
    const auto a = word_of(sigma(i)), b = word_of(sigma(i + 1));
    p.add_relation(a * b * a, b * a * b, "braid");
  }
}

}  // namespace detail

/// sigma_1 ... sigma_{m-2} sigma_{m-1}^2 sigma_{m-2} ... sigma_1.
inline BraidWord surface_loop_word(int m) {
  if (m < 2) return {};
  return detail::sigma_run(1, m - 1, 1) * detail::sigma_run(m - 1, 1, 1);
}

inline Presentation van_buskirk(int n) {
  if (n < 1) throw PresentationError("van_buskirk requires n >= 1");
  Presentation p;
  p.name = "B_" + std::to_string(n) + "(RP2)";
  for (int i = 1; i <= n - 1; ++i) p.generators.push_back(sigma(i));
  for (int j = 1; j <= n; ++j) p.generators.push_back(rho(j));

  detail::add_artin_relations(p, n);
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1)
        p.add_relation(word_of(sigma(i)) * word_of(rho(j)), word_of(rho(j)) * word_of(sigma(i)),
                       "sigma-rho");
  for (int i = 1; i <= n - 1; ++i) {
    const auto s_inv = word_of(sigma(i), -1);
    p.add_relation(word_of(rho(i + 1)), s_inv * word_of(rho(i)) * s_inv, "rho-shift");
  }
  for (int i = 1; i <= n - 1; ++i)
    p.add_relation(word_of(rho(i + 1), -1) * word_of(rho(i), -1) * word_of(rho(i + 1)) *
                       word_of(rho(i)),
                   word_of(sigma(i), 2), "rho-commutator");
  p.add_relation(word_of(rho(1), 2), surface_loop_word(n), "surface");
  return p;
}

inline Presentation sphere_presentation(int m) {
  if (m < 2) throw PresentationError("sphere_presentation requires m >= 2");
  Presentation p;
  p.name = "B_" + std::to_string(m) + "(S2)";
  for (int i = 1; i <= m - 1; ++i) p.generators.push_back(sigma(i));
  detail::add_artin_relations(p, m);
  p.add_relator(surface_loop_word(m), "sphere");
  return p;
}

inline Presentation disc_presentation(int m) {
  if (m < 1) throw PresentationError("disc_presentation requires m >= 1");
  Presentation p;
  p.name = "B_" + std::to_string(m);
  for (int i = 1; i <= m - 1; ++i) p.generators.push_back(sigma(i));
  detail::add_artin_relations(p, m);
  return p;
}

inline Presentation annulus_presentation(int n) {
  if (n < 1) throw PresentationError("annulus_presentation requires n >= 1");
  Presentation p;
  p.name = "B_" + std::to_string(n) + "(Ann)";
  for (int i = 1; i <= n - 1; ++i) p.generators.push_back(sigma(i));
  p.generators.push_back(tau());
  detail::add_artin_relations(p, n);
  const auto t = word_of(tau());
  if (n >= 2) {
    const auto s1 = word_of(sigma(1));
    p.add_relation(t * s1 * t * s1, s1 * t * s1 * t, "type-b");
  }
  for (int i = 2; i <= n - 1; ++i)
    p.add_relation(t * word_of(sigma(i)), word_of(sigma(i)) * t, "tau-commute");
  return p;
}

enum class ElementName { A, B, Delta, FullTwist, RhoExpanded };

inline std::optional<ElementName> parse_element_name(const std::string& s) {
  static const std::map<std::string, ElementName> names = {
      {"a", ElementName::A},
      {"b", ElementName::B},
      {"delta", ElementName::Delta},
      {"full_twist", ElementName::FullTwist},
      {"rho_expanded", ElementName::RhoExpanded}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

/// sigma_1 sigma_2 ... sigma_{k-1}
inline BraidWord sigma_ascending(int k) {
  return k >= 2 ? detail::sigma_run(1, k - 1, 1) : BraidWord{};
}

/// (sigma_1...sigma_{n-1})(sigma_1...sigma_{n-2}) ... (sigma_1 sigma_2) sigma_1
inline BraidWord garside_word(int n) {
  BraidWord w;
  for (int k = n; k >= 2; --k) w.append(sigma_ascending(k));
  return w;
}

/// Words exactly as printed for the named elements of B_n(RP^2).
/// `j` is only used by RhoExpanded (1 <= j <= n).
inline BraidWord named_element(ElementName name, int n, int j = 0) {
  if (n < 1) throw PresentationError("named_element requires n >= 1");
  switch (name) {
    case ElementName::A: {
      BraidWord w = n >= 2 ? detail::sigma_run(n - 1, 1, -1) : BraidWord{};
      w.push_back({rho(1), 1});
      return w;
    }
    case ElementName::B: {
      if (n < 2) throw PresentationError("element b requires n >= 2");
      BraidWord w = n >= 3 ? detail::sigma_run(n - 2, 1, -1) : BraidWord{};
      w.push_back({rho(1), 1});
      return w;
    }
    case ElementName::Delta:
      return garside_word(n);
    case ElementName::FullTwist:
      return power(sigma_ascending(n), n);
    case ElementName::RhoExpanded: {
      if (j < 1 || j > n) throw PresentationError("rho_expanded index out of range");
      BraidWord w = j >= 2 ? detail::sigma_run(j - 1, 1, -1) : BraidWord{};
      w.push_back({rho(1), 1});
      if (j >= 2) w.append(detail::sigma_run(1, j - 1, -1));
      return w;
    }
  }
  return {};
}

enum class FiniteFamily { Dic, Dih, Q8, Tstar, Ostar, Istar, Cyclic, Alt4, Sym4, Alt5 };

inline std::string family_label(FiniteFamily f, int param) {
  switch (f) {
    case FiniteFamily::Dic: return "Dic" + std::to_string(4 * param);
    case FiniteFamily::Dih: return "Dih" + std::to_string(2 * param);
    case FiniteFamily::Q8: return "Q8";
    case FiniteFamily::Tstar: return "T*";
    case FiniteFamily::Ostar: return "O*";
    case FiniteFamily::Istar: return "I*";
    case FiniteFamily::Cyclic: return "Z" + std::to_string(param);
    case FiniteFamily::Alt4: return "A4";
    case FiniteFamily::Sym4: return "S4";
    case FiniteFamily::Alt5: return "A5";
  }
  return "?";
}

/// Expected order of the presented group.
inline long family_order(FiniteFamily f, int param) {
  switch (f) {
    case FiniteFamily::Dic: return 4L * param;
    case FiniteFamily::Dih: return 2L * param;
    case FiniteFamily::Q8: return 8;
    case FiniteFamily::Tstar: return 24;
    case FiniteFamily::Ostar: return 48;
    case FiniteFamily::Istar: return 120;
    case FiniteFamily::Cyclic: return param;
    case FiniteFamily::Alt4: return 12;
    case FiniteFamily::Sym4: return 24;
    case FiniteFamily::Alt5: return 60;
  }
  return 0;
}

/// Dic_{4m} = <x,y | x^m = y^2, y x y^-1 = x^-1>; Dih with param k has order 2k;
/// the binary polyhedral groups use <p,q,r | p^2 = q^3 = r^k = pqr>, k = 3,4,5.
inline Presentation finite_group_presentation(FiniteFamily family, int param = 0) {
  Presentation p;
  p.name = family_label(family, param);
  const auto x = word_of(abstract_gen(1));
  const auto y = word_of(abstract_gen(2));
  auto two_gens = [&] {
    p.generators = {abstract_gen(1), abstract_gen(2)};
  };
  auto triangle = [&](int k) {
    two_gens();
    p.add_relator(power(x, 2), "a^2");
    p.add_relator(power(y, 3), "b^3");
    p.add_relator(power(x * y, k), "(ab)^k");
  };
  auto binary = [&](int k) {
    const auto z = word_of(abstract_gen(3));
    p.generators = {abstract_gen(1), abstract_gen(2), abstract_gen(3)};
    p.add_relation(power(x, 2), power(y, 3), "p^2=q^3");
    p.add_relation(power(y, 3), power(z, k), "q^3=r^k");
    p.add_relation(power(z, k), x * y * z, "r^k=pqr");
  };
  switch (family) {
    case FiniteFamily::Q8:
      param = 2;
      [[fallthrough]];
    case FiniteFamily::Dic:
      if (param < 2) throw PresentationError("Dic requires m >= 2");
      two_gens();
      p.add_relation(power(x, param), power(y, 2), "x^m=y^2");
      p.add_relation(y * x * invert(y), invert(x), "yxy^-1=x^-1");
      break;
    case FiniteFamily::Dih:
      if (param < 1) throw PresentationError("Dih requires k >= 1");
      two_gens();
      p.add_relator(power(x, param), "x^k");
      p.add_relator(power(y, 2), "y^2");
      p.add_relator(power(x * y, 2), "(xy)^2");
      break;
    case FiniteFamily::Tstar: binary(3); break;
    case FiniteFamily::Ostar: binary(4); break;
    case FiniteFamily::Istar: binary(5); break;
    case FiniteFamily::Cyclic:
      if (param < 1) throw PresentationError("cyclic group requires k >= 1");
      p.generators = {abstract_gen(1)};
      p.add_relator(power(x, param), "x^k");
      break;
    case FiniteFamily::Alt4: triangle(3); break;
    case FiniteFamily::Sym4: triangle(4); break;
    case FiniteFamily::Alt5: triangle(5); break;
  }
  return p;
}

// Text format:
//   # surfbraid presentation v1
//   name: <label>
//   generators: s1 s2 r1 ...
//   <one relator per line, word grammar>
inline std::string to_text(const Presentation& p) {
  std::ostringstream out;
  out << "# surfbraid presentation v1\n";
  out << "name: " << p.name << "\n";
  out << "generators:";
  for (const auto& g : p.generators) out << ' ' << to_string(g);
  out << "\n";
  for (const auto& r : p.relators) out << format(r) << "\n";
  return out.str();
}

inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  bool have_gens = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.rfind("name:", 0) == 0) {
      const auto v = line.find_first_not_of(' ', 5);
      p.name = v == std::string::npos ? "" : line.substr(v);
    } else if (line.rfind("generators:", 0) == 0) {
      for (const auto& l : parse_word(line.substr(11))) {
        if (l.exp != 1) throw PresentationError("generator list may not contain inverses");
        p.generators.push_back(l.gen);
      }
      have_gens = true;
    } else {
      if (!have_gens)
        throw PresentationError("line " + std::to_string(line_no) + ": relator before generators");
      p.add_relator(parse_word(line), "file");
    }
  }
  if (!have_gens) throw PresentationError("missing generators line");
  p.validate();
  return p;
}

}  // namespace surfbraid
