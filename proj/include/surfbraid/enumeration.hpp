#pragma once

// Coset enumeration and finite group materialization.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "surfbraid/presentations.hpp"

namespace surfbraid {

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Column of a letter in a coset table: 2*generator + (inverse ? 1 : 0).
inline std::vector<int> to_columns(const Presentation& p, const BraidWord& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    auto idx = p.index_of(l.gen);
    if (!idx) throw EnumerationError("letter " + to_string(l.gen) + " not in " + p.name);
    out.push_back(static_cast<int>(*idx) * 2 + (l.exp < 0 ? 1 : 0));
  }
  return out;
}

}  // namespace detail

enum class Strategy { HLT, Felsch };

struct CosetTable {
  std::string label;
  std::vector<Generator> generators;
  bool trivial_subgroup = true;
  int coset_count = 0;
  std::vector<int> action;  // action[c * columns() + col]

  int columns() const { return static_cast<int>(generators.size()) * 2; }
  int act(int coset, int column) const {
    return action[static_cast<std::size_t>(coset * columns() + column)];
  }
};

struct Overflow {
  std::size_t limit = 0;
  std::size_t defined = 0;
};

using EnumerationResult = std::variant<CosetTable, Overflow>;

namespace detail {

class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, const std::vector<BraidWord>& subgroup, std::size_t max_cosets)
      : pres_(p), cols_(static_cast<int>(p.generators.size()) * 2), limit_(max_cosets) {
    for (const auto& r : p.relators) relators_.push_back(to_columns(p, r));
    for (const auto& h : subgroup) subgroup_.push_back(to_columns(p, free_reduce(h)));
    new_coset();
  }

  std::optional<CosetTable> run(Strategy s) {
    try {
      if (s == Strategy::HLT)
        run_hlt();
      else
        run_felsch();
    } catch (const OverflowSignal&) {
      return std::nullopt;
    }
    return compact();
  }

  std::size_t defined() const { return total_defined_; }

 private:
  struct OverflowSignal {};

  int& entry(int c, int col) { return table_[static_cast<std::size_t>(c * cols_ + col)]; }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  int new_coset() {
    if (active_ >= limit_) {
      if (!lookahead_done_) {
        lookahead();
      }
      if (active_ >= limit_) throw OverflowSignal{};
    }
    const int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    table_.insert(table_.end(), static_cast<std::size_t>(cols_), -1);
    ++active_;
    ++total_defined_;
    return id;
  }

  void define(int c, int col) {
    const int d = new_coset();
    entry(c, col) = d;
    entry(d, col ^ 1) = c;
    deductions_.push_back({c, col});
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    --active_;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int col = 0; col < cols_; ++col) {
        const int f = entry(e, col);
        if (f < 0) continue;
        if (entry(f, col ^ 1) == e) entry(f, col ^ 1) = -1;
        const int e1 = rep(e), f1 = rep(f);
        if (entry(e1, col) >= 0) {
          merge(f1, entry(e1, col), queue);
        } else if (entry(f1, col ^ 1) >= 0) {
          merge(e1, entry(f1, col ^ 1), queue);
        } else {
          entry(e1, col) = f1;
          entry(f1, col ^ 1) = e1;
          deductions_.push_back({e1, col});
        }
      }
    }
  }

  /// Scans `w` at coset c; defines new cosets when `fill` is set.
  void scan(int c, const std::vector<int>& w, bool fill) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) >= 0) {
        f = entry(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, w[static_cast<std::size_t>(j)] ^ 1) >= 0) {
        b = entry(b, w[static_cast<std::size_t>(j)] ^ 1);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const int col = w[static_cast<std::size_t>(i)];
        entry(f, col) = b;
        entry(b, col ^ 1) = f;
        deductions_.push_back({f, col});
        return;
      }
      if (!fill) return;
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  void lookahead() {
    lookahead_done_ = true;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r, false);
      }
    }
    deductions_.clear();
    lookahead_done_ = active_ >= limit_;
  }

  void run_hlt() {
    for (const auto& h : subgroup_) scan(0, h, true);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r, true);
      }
      if (!live(c)) continue;
      for (int col = 0; col < cols_; ++col)
        if (live(c) && entry(c, col) < 0) define(c, col);
    }
    deductions_.clear();
    close_up();
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (const auto& [rot, first] : rotations()) {
        if (first == col) {
          if (live(c)) scan(c, rot, false);
        } else if (first == (col ^ 1)) {
          const int d = entry(c, col);
          if (d >= 0 && live(d)) scan(d, rot, false);
        }
      }
    }
  }

  const std::vector<std::pair<std::vector<int>, int>>& rotations() {
    if (rotations_.empty()) {
      for (const auto& r : relators_) {
        for (std::size_t k = 0; k < r.size(); ++k) {
          std::vector<int> rot(r.begin() + static_cast<long>(k), r.end());
          rot.insert(rot.end(), r.begin(), r.begin() + static_cast<long>(k));
          const int first = rot.front();
          rotations_.push_back({std::move(rot), first});
        }
      }
    }
    return rotations_;
  }

  void run_felsch() {
    for (const auto& h : subgroup_) scan(0, h, true);
    for (const auto& r : relators_) scan(0, r, true);
    process_deductions();
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (int col = 0; col < cols_; ++col) {
        if (!live(c)) break;
        if (entry(c, col) < 0) {
          define(c, col);
          process_deductions();
        }
      }
    }
    close_up();
  }

  /// Repeats full relator scans until every live coset satisfies every relator.
  void close_up() {
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t before = active_;
      for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
        for (const auto& r : relators_) {
          if (!live(c)) break;
          scan(c, r, true);
        }
        for (const auto& h : subgroup_)
          if (live(0)) scan(0, h, true);
      }
      deductions_.clear();
      if (active_ != before) changed = true;
      for (int c = 0; c < static_cast<int>(parent_.size()) && !changed; ++c) {
        if (!live(c)) continue;
        for (int col = 0; col < cols_; ++col)
          if (entry(c, col) < 0) {
            define(c, col);
            changed = true;
            break;
          }
      }
    }
  }

  CosetTable compact() {
    CosetTable t;
    t.label = pres_.name;
    t.generators = pres_.generators;
    t.trivial_subgroup = subgroup_.empty() ||
                         std::all_of(subgroup_.begin(), subgroup_.end(), [](auto& h) { return h.empty(); });
    std::vector<int> newid(parent_.size(), -1);
    int n = 0;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (live(c)) newid[static_cast<std::size_t>(c)] = n++;
    t.coset_count = n;
    t.action.assign(static_cast<std::size_t>(n * cols_), -1);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      if (!live(c)) continue;
      for (int col = 0; col < cols_; ++col) {
        const int d = entry(c, col);
        if (d < 0) throw EnumerationError("coset table not closed");
        t.action[static_cast<std::size_t>(newid[static_cast<std::size_t>(c)] * cols_ + col)] =
            newid[static_cast<std::size_t>(rep(d))];
      }
    }
    return t;
  }

  const Presentation& pres_;
  int cols_;
  std::size_t limit_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgroup_;
  std::vector<std::pair<std::vector<int>, int>> rotations_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> deductions_;
  std::size_t active_ = 0;
  std::size_t total_defined_ = 0;
  bool lookahead_done_ = false;
};

}  // namespace detail

inline EnumerationResult coset_enumerate(const Presentation& p, const std::vector<BraidWord>& subgroup_gens = {},
                                         std::size_t max_cosets = 100000, Strategy strategy = Strategy::HLT) {
  p.validate();
  for (const auto& h : subgroup_gens)
    if (!p.covers(h)) throw EnumerationError("subgroup generator outside " + p.name);
  detail::CosetEnumerator e(p, subgroup_gens, max_cosets);
  auto table = e.run(strategy);
  if (!table) return Overflow{max_cosets, e.defined()};
  return std::move(*table);
}

/// Checks that every relator acts trivially on every coset.
inline bool relators_hold(const Presentation& p, const CosetTable& t) {
  for (const auto& r : p.relators) {
    const auto cols = detail::to_columns(p, r);
    for (int c = 0; c < t.coset_count; ++c) {
      int d = c;
      for (int col : cols) d = t.act(d, col);
      if (d != c) return false;
    }
  }
  return true;
}

class GroupTable {
 public:
  GroupTable() = default;
  GroupTable(std::string label, std::vector<int> mult, int order, std::vector<int> generator_ids,
             std::vector<BraidWord> words)
      : label_(std::move(label)),
        order_(order),
        mult_(std::move(mult)),
        generator_ids_(std::move(generator_ids)),
        words_(std::move(words)) {
    if (static_cast<int>(mult_.size()) != order_ * order_) throw EnumerationError("bad multiplication table size");
    find_identity_and_inverses();
  }

  const std::string& label() const { return label_; }
  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a * order_ + b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& generator_ids() const { return generator_ids_; }
  const std::vector<BraidWord>& words() const { return words_; }
  const BraidWord& word(int e) const { return words_[static_cast<std::size_t>(e)]; }

  int power(int a, long k) const {
    int base = k >= 0 ? a : inverse(a);
    int out = identity_;
    for (long i = 0; i < std::abs(k); ++i) out = mul(out, base);
    return out;
  }
  int element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }
  std::map<int, int> order_histogram() const {
    std::map<int, int> h;
    for (int a = 0; a < order_; ++a) ++h[element_order(a)];
    return h;
  }
  bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }

  /// Exhaustive associativity check.
  bool is_associative() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) {
        const int ab = mul(a, b);
        for (int c = 0; c < order_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) return false;
      }
    return true;
  }

  /// Closure of a generating set, in BFS order.
  std::vector<int> generated_by(const std::vector<int>& gens) const {
    std::vector<char> seen(static_cast<std::size_t>(order_), 0);
    std::vector<int> out{identity_};
    seen[static_cast<std::size_t>(identity_)] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (int g : gens) {
        const int x = mul(out[i], g);
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          out.push_back(x);
        }
      }
    return out;
  }

 private:
  void find_identity_and_inverses() {
    identity_ = -1;
    for (int e = 0; e < order_ && identity_ < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < order_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw EnumerationError("table has no identity");
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == identity_) {
          inverse_[static_cast<std::size_t>(a)] = b;
          break;
        }
    for (int a = 0; a < order_; ++a)
      if (inverse_[static_cast<std::size_t>(a)] < 0) throw EnumerationError("element without inverse");
  }

  std::string label_;
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> mult_;
  std::vector<int> inverse_;
  std::vector<int> generator_ids_;
  std::vector<BraidWord> words_;
};

/// Materializes the group from a complete coset table of the trivial subgroup.
/// Element e is the coset reached from 0 by its witness word.
inline GroupTable group_table(const CosetTable& t) {
  if (!t.trivial_subgroup) throw EnumerationError("group_table requires the trivial subgroup");
  const int n = t.coset_count;
  const int cols = t.columns();
  if (static_cast<int>(t.action.size()) != n * cols) throw EnumerationError("table not closed");
  for (int v : t.action)
    if (v < 0 || v >= n) throw EnumerationError("table not closed");

  std::vector<std::vector<int>> paths(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> order{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = order[i];
    for (int col = 0; col < cols; ++col) {
      const int d = t.act(c, col);
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        paths[static_cast<std::size_t>(d)] = paths[static_cast<std::size_t>(c)];
        paths[static_cast<std::size_t>(d)].push_back(col);
        order.push_back(d);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw EnumerationError("coset table is not connected");

  std::vector<int> mult(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = a;
      for (int col : paths[static_cast<std::size_t>(b)]) c = t.act(c, col);
      mult[static_cast<std::size_t>(a * n + b)] = c;
    }
  std::vector<BraidWord> words;
  words.reserve(static_cast<std::size_t>(n));
  for (const auto& path : paths) {
    BraidWord w;
    for (int col : path) w.push_back({t.generators[static_cast<std::size_t>(col / 2)], col % 2 ? -1 : 1});
    words.push_back(std::move(w));
  }
  std::vector<int> gens;
  for (std::size_t g = 0; g < t.generators.size(); ++g) gens.push_back(t.act(0, static_cast<int>(2 * g)));
  return GroupTable(t.label, std::move(mult), n, std::move(gens), std::move(words));
}

/// Evaluates a word in a table built from presentation p.
inline int evaluate(const GroupTable& g, const Presentation& p, const BraidWord& w) {
  int x = g.identity();
  for (const auto& l : w) {
    auto idx = p.index_of(l.gen);
    if (!idx) throw EnumerationError("letter " + to_string(l.gen) + " not in " + p.name);
    const int gen = g.generator_ids()[*idx];
    x = g.mul(x, l.exp > 0 ? gen : g.inverse(gen));
  }
  return x;
}

/// Enumerates p with the trivial subgroup and returns its table, or nullopt on overflow.
inline std::optional<GroupTable> materialize(const Presentation& p, std::size_t max_cosets = 100000,
                                             Strategy s = Strategy::HLT) {
  auto r = coset_enumerate(p, {}, max_cosets, s);
  if (auto* t = std::get_if<CosetTable>(&r)) return group_table(*t);
  return std::nullopt;
}

/// Subgroup given by an element list that must be closed under multiplication.
inline GroupTable subgroup_table(const GroupTable& g, const std::vector<int>& elements, std::string label) {
  std::vector<int> index(static_cast<std::size_t>(g.order()), -1);
  std::vector<int> elems = elements;
  if (std::find(elems.begin(), elems.end(), g.identity()) == elems.end())
    throw EnumerationError("subgroup lacks the identity");
  // identity first so witness words stay meaningful
  std::stable_partition(elems.begin(), elems.end(), [&](int e) { return e == g.identity(); });
  for (std::size_t i = 0; i < elems.size(); ++i) index[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<int> mult(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int prod = g.mul(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]);
      const int k = index[static_cast<std::size_t>(prod)];
      if (k < 0) throw EnumerationError("element set is not closed under multiplication");
      mult[static_cast<std::size_t>(a * n + b)] = k;
    }
  std::vector<BraidWord> words;
  for (int e : elems) words.push_back(g.word(e));
  return GroupTable(std::move(label), std::move(mult), n, {}, std::move(words));
}

struct IsomorphismWitness {
  std::vector<int> generators;  // generators of A
  std::vector<int> images;      // their images in B
  std::vector<int> map;         // full element map A -> B
};

namespace detail {

inline std::vector<int> small_generating_set(const GroupTable& a) {
  std::vector<int> gens;
  std::vector<int> span{a.identity()};
  std::vector<int> by_order(static_cast<std::size_t>(a.order()));
  std::iota(by_order.begin(), by_order.end(), 0);
  std::vector<int> ord(static_cast<std::size_t>(a.order()));
  for (int x = 0; x < a.order(); ++x) ord[static_cast<std::size_t>(x)] = a.element_order(x);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](int x, int y) { return ord[static_cast<std::size_t>(x)] > ord[static_cast<std::size_t>(y)]; });
  while (static_cast<int>(span.size()) < a.order()) {
    std::vector<char> in(static_cast<std::size_t>(a.order()), 0);
    for (int x : span) in[static_cast<std::size_t>(x)] = 1;
    // Prefer the candidate that enlarges the span most.
    int best = -1;
    std::size_t best_size = 0;
    for (int x : by_order) {
      if (in[static_cast<std::size_t>(x)]) continue;
      auto trial = gens;
      trial.push_back(x);
      const auto s = a.generated_by(trial).size();
      if (s > best_size) {
        best_size = s;
        best = x;
      }
      if (static_cast<int>(s) == a.order()) break;
    }
    gens.push_back(best);
    span = a.generated_by(gens);
  }
  return gens;
}

}  // namespace detail

/// Generator-image backtracking after an element-order prefilter.
inline std::optional<IsomorphismWitness> find_isomorphism(const GroupTable& a, const GroupTable& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order_histogram() != b.order_histogram()) return std::nullopt;
  const int n = a.order();
  const auto gens = detail::small_generating_set(a);
  std::vector<int> ord_b(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) ord_b[static_cast<std::size_t>(x)] = b.element_order(x);

  std::vector<int> images(gens.size(), -1);
  std::vector<int> map;

  // Extends the map over <gens[0..k]>; returns false on conflict.
  auto closure = [&](std::size_t k, std::vector<int>& phi) {
    phi.assign(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    phi[static_cast<std::size_t>(a.identity())] = b.identity();
    used[static_cast<std::size_t>(b.identity())] = 1;
    std::vector<int> queue{a.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int x = queue[i];
      for (std::size_t j = 0; j <= k; ++j) {
        const int y = a.mul(x, gens[j]);
        const int img = b.mul(phi[static_cast<std::size_t>(x)], images[j]);
        if (phi[static_cast<std::size_t>(y)] < 0) {
          if (used[static_cast<std::size_t>(img)]) return false;
          phi[static_cast<std::size_t>(y)] = img;
          used[static_cast<std::size_t>(img)] = 1;
          queue.push_back(y);
        } else if (phi[static_cast<std::size_t>(y)] != img) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<int> phi;
      if (!closure(k - 1, phi)) return false;
      for (int x = 0; x < n; ++x)
        if (phi[static_cast<std::size_t>(x)] < 0) return false;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (phi[static_cast<std::size_t>(a.mul(x, y))] !=
              b.mul(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)]))
            return false;
      map = std::move(phi);
      return true;
    }
    const int want = a.element_order(gens[k]);
    for (int cand = 0; cand < n; ++cand) {
      if (ord_b[static_cast<std::size_t>(cand)] != want) continue;
      images[k] = cand;
      std::vector<int> phi;
      if (!closure(k, phi)) continue;
      if (assign(k + 1)) return true;
    }
    images[k] = -1;
    return false;
  };

  if (n == 1) return IsomorphismWitness{{}, {}, {b.identity()}};
  if (!assign(0)) return std::nullopt;
  return IsomorphismWitness{gens, images, map};
}

inline bool isomorphic(const GroupTable& a, const GroupTable& b) { return find_isomorphism(a, b).has_value(); }

struct CenterQuotient {
  std::vector<int> center;
  int central_involution = -1;
  GroupTable quotient;
};

/// Center by commutation scan, then the quotient by a central subgroup of order 2.
inline CenterQuotient center_and_quotient(const GroupTable& g) {
  CenterQuotient out;
  for (int z = 0; z < g.order(); ++z) {
    bool central = true;
    for (int x = 0; x < g.order() && central; ++x) central = g.commute(z, x);
    if (central) out.center.push_back(z);
  }
  for (int z : out.center)
    if (g.element_order(z) == 2) {
      out.central_involution = z;
      break;
    }
  if (out.central_involution < 0) throw EnumerationError("no central subgroup of order 2 in " + g.label());
  const int z = out.central_involution;
  std::vector<int> cls(static_cast<std::size_t>(g.order()), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    cls[static_cast<std::size_t>(x)] = static_cast<int>(reps.size());
    cls[static_cast<std::size_t>(g.mul(x, z))] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  const int m = static_cast<int>(reps.size());
  std::vector<int> mult(static_cast<std::size_t>(m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      mult[static_cast<std::size_t>(a * m + b)] =
          cls[static_cast<std::size_t>(g.mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
  std::vector<BraidWord> words;
  for (int r : reps) words.push_back(g.word(r));
  std::vector<int> gens;
  for (int id : g.generator_ids()) gens.push_back(cls[static_cast<std::size_t>(id)]);
  out.quotient = GroupTable(g.label() + "/Z", std::move(mult), m, std::move(gens), std::move(words));
  return out;
}

// Tabular text export:
//   # surfbraid group table v1
//   label: <label>
//   order: N
//   generators: id id ...
//   element <id>: <witness word>
//   row <id>: <N products>
inline std::string to_text(const GroupTable& g) {
  std::ostringstream out;
  out << "# surfbraid group table v1\n";
  out << "label: " << g.label() << "\n";
  out << "order: " << g.order() << "\n";
  out << "generators:";
  for (int id : g.generator_ids()) out << ' ' << id;
  out << "\n";
  for (int e = 0; e < g.order(); ++e) out << "element " << e << ": " << format(g.word(e)) << "\n";
  for (int a = 0; a < g.order(); ++a) {
    out << "row " << a << ":";
    for (int b = 0; b < g.order(); ++b) out << ' ' << g.mul(a, b);
    out << "\n";
  }
  return out.str();
}

inline std::string to_text(const CosetTable& t) {
  std::ostringstream out;
  out << "# surfbraid coset table v1\n";
  out << "label: " << t.label << "\n";
  out << "cosets: " << t.coset_count << "\n";
  out << "columns:";
  for (const auto& g : t.generators) out << ' ' << to_string(g) << ' ' << to_string(g) << "^-1";
  out << "\n";
  for (int c = 0; c < t.coset_count; ++c) {
    out << c << ":";
    for (int col = 0; col < t.columns(); ++col) out << ' ' << t.act(c, col);
    out << "\n";
  }
  return out.str();
}

inline std::string to_text(const IsomorphismWitness& w, const GroupTable& a) {
  std::ostringstream out;
  out << "# surfbraid isomorphism witness v1\n";
  for (std::size_t i = 0; i < w.generators.size(); ++i)
    out << w.generators[i] << " [" << format(a.word(w.generators[i])) << "] -> " << w.images[i] << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Abelianization

struct AbelianInvariants {
  std::vector<long long> factors;  // each divides the next; zeros (free factors) last

  bool operator==(const AbelianInvariants&) const = default;
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + std::to_string(factors[i]);
    return s + ")";
  }
};

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw EnumerationError("integer overflow in Smith normal form");
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw EnumerationError("integer overflow in Smith normal form");
  return r;
}

/// Diagonal of the Smith normal form (exact int64 arithmetic, overflow-checked).
inline std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<long long> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: smallest nonzero |entry| in the trailing block
      std::size_t pr = rows, pc = cols;
      long long best = std::numeric_limits<long long>::max();
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && std::llabs(m[i][j]) < best) {
            best = std::llabs(m[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;  // trailing block is zero
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const long long q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[t][j]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const long long q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[i][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a violating row into row t
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(std::llabs(m[t][t]));
  }
  return diag;
}

}  // namespace detail

inline std::vector<std::vector<long long>> relation_matrix(const Presentation& p) {
  std::vector<std::vector<long long>> m;
  for (const auto& r : p.relators) {
    std::vector<long long> row(p.generators.size(), 0);
    for (const auto& l : r) row[*p.index_of(l.gen)] += l.exp;
    m.push_back(std::move(row));
  }
  return m;
}

inline AbelianInvariants abelianization(const Presentation& p) {
  const std::size_t cols = p.generators.size();
  auto diag = detail::smith_diagonal(relation_matrix(p), cols);
  AbelianInvariants inv;
  for (long long d : diag)
    if (d != 1) inv.factors.push_back(d);
  std::sort(inv.factors.begin(), inv.factors.end());
  for (std::size_t k = diag.size(); k < cols; ++k) inv.factors.push_back(0);
  return inv;
}

}  // namespace surfbraid
