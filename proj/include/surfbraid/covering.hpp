#pragma once

// Strand motions on RP^2 and the annulus, lifts to the antipodal sphere cover and to the
// d-fold annulus covers, and braid words read off from a planar projection of the lifts.
//
// Motions are sampled curves. A word is turned into a motion by concatenating one
// representative loop per letter; lifting follows each strand continuously, and
// extraction records a sigma letter whenever two strands swap order along the
// projection axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "surfbraid/oracles.hpp"
#include "surfbraid/presentations.hpp"
#include "surfbraid/words.hpp"

namespace surfbraid {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kUnitTolerance = 1e-9;

struct SurfacePoint {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double norm() const { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
  SurfacePoint operator-() const { return {{-v[0], -v[1], -v[2]}}; }
  bool operator==(const SurfacePoint&) const = default;

  static SurfacePoint unit(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) throw GeometryError("cannot normalize the zero vector");
    return {{x / r, y / r, z / r}};
  }
  static SurfacePoint planar(double x, double y) { return {{x, y, 0.0}}; }
};

inline double distance(const SurfacePoint& a, const SurfacePoint& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (a.v[k] - b.v[k]) * (a.v[k] - b.v[k]);
  return std::sqrt(s);
}

/// Distance between the antipodal pairs {a, -a} and {b, -b}.
inline double projective_distance(const SurfacePoint& a, const SurfacePoint& b) {
  return std::min(distance(a, b), distance(a, -b));
}

enum class BaseSurface { ProjectivePlane, Annulus };

/// paths[s][k] is the position of strand s (numbered by starting basepoint) at times[k].
/// On RP^2 a position is a unit representative of the antipodal pair.
struct StrandMotion {
  BaseSurface surface = BaseSurface::ProjectivePlane;
  int n = 0;
  std::vector<double> times;
  std::vector<std::vector<SurfacePoint>> paths;

  std::size_t samples() const { return times.size(); }
};

struct CoverSpec {
  enum class Kind { AntipodalSphere, AnnulusDFold } kind = Kind::AntipodalSphere;
  int d = 2;

  static CoverSpec antipodal_sphere() { return {Kind::AntipodalSphere, 2}; }
  static CoverSpec annulus_dfold(int d) {
    if (d < 1) throw std::invalid_argument("annulus cover degree must be positive");
    return {Kind::AnnulusDFold, d};
  }
  BaseSurface base() const {
    return kind == Kind::AntipodalSphere ? BaseSurface::ProjectivePlane : BaseSurface::Annulus;
  }
};

/// Sheet s (1-based) lies over strand block[s-1]; sheets i, i+n, ..., i+(d-1)n lie over strand i.
struct LiftScene {
  StrandMotion source;
  CoverSpec cover;
  std::vector<std::vector<SurfacePoint>> lifted;
  std::vector<int> block;

  int sheets() const { return static_cast<int>(lifted.size()); }
};

// ---------------------------------------------------------------------------
// Model geometry

namespace geometry {

inline constexpr double kCapSpacing = 0.08;
inline constexpr double kAnnulusInner = 1.0;
inline constexpr double kAnnulusOuter = 3.0;
inline constexpr double kAnnulusFirst = 1.6;
// any point of the hole stands in for the removed disc
inline constexpr double kHoleX = 0.3;
inline constexpr double kHoleY = 0.2;
inline constexpr double kProjectionAngle = 0.35;

/// Numerical settings of sampling and extraction. Set them before the first lift: generator
/// lifts are cached per process.
struct Tolerances {
  int base_samples = 1000;
  double min_separation = 1e-6;
  double perturbation_step = 1e-3;
  int max_perturbations = 16;
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

/// Tangent coordinate of basepoint j on the cap around the north pole; decreasing in j so
/// that the projection below orders the basepoints 1..n.
inline double cap_coordinate(int n, int j) { return kCapSpacing * ((n + 1) / 2.0 - j); }

inline double annulus_spacing(int n) { return std::min(0.2, 1.2 / std::max(n, 1)); }

inline SurfacePoint basepoint(BaseSurface s, int n, int j) {
  if (s == BaseSurface::ProjectivePlane) return SurfacePoint::unit(cap_coordinate(n, j), 0.0, 1.0);
  return SurfacePoint::planar(kAnnulusFirst + annulus_spacing(n) * (j - 1), 0.0);
}

inline SurfacePoint hole_point() { return SurfacePoint::planar(kHoleX, kHoleY); }

}  // namespace geometry

// ---------------------------------------------------------------------------
// Generator motions

namespace detail {

/// Position at time t in [0,1] of every strand, indexed by starting position.
using MotionFn = std::function<std::vector<SurfacePoint>(double)>;

inline void check_generator(BaseSurface s, int n, const Letter& l) {
  const auto& g = l.gen;
  const bool ok = (g.kind == GenKind::Sigma && g.index >= 1 && g.index <= n - 1) ||
                  (s == BaseSurface::ProjectivePlane && g.kind == GenKind::Rho && g.index >= 1 &&
                   g.index <= n) ||
                  (s == BaseSurface::Annulus && g.kind == GenKind::Tau);
  if (!ok) throw WordError("generator " + to_string(g) + " invalid for this surface with n=" + std::to_string(n));
  if (l.exp != 1 && l.exp != -1) throw WordError("generator motions take exponent +1 or -1");
}

inline MotionFn letter_fn(BaseSurface s, int n, const Letter& l) {
  check_generator(s, n, l);
  const int i = l.gen.index;
  const double e = l.exp;
  std::vector<SurfacePoint> base;
  for (int j = 1; j <= n; ++j) base.push_back(geometry::basepoint(s, n, j));
  const double pi = std::numbers::pi;

  if (l.gen.kind == GenKind::Sigma) {
    if (s == BaseSurface::ProjectivePlane) {
      const double a = geometry::cap_coordinate(n, i), b = geometry::cap_coordinate(n, i + 1);
      const double c = (a + b) / 2, h = (a - b) / 2;
      return [=](double t) {
        auto pts = base;
        const double phi = pi * t * e;
        pts[static_cast<std::size_t>(i - 1)] = SurfacePoint::unit(c + h * std::cos(phi), h * std::sin(phi), 1.0);
        pts[static_cast<std::size_t>(i)] = SurfacePoint::unit(c - h * std::cos(phi), -h * std::sin(phi), 1.0);
        return pts;
      };
    }
    const double a = base[static_cast<std::size_t>(i - 1)].v[0], b = base[static_cast<std::size_t>(i)].v[0];
    const double c = (a + b) / 2, h = (b - a) / 2;
    return [=](double t) {
      auto pts = base;
      const double phi = pi * t * e;
      pts[static_cast<std::size_t>(i - 1)] = SurfacePoint::planar(c - h * std::cos(phi), h * std::sin(phi));
      pts[static_cast<std::size_t>(i)] = SurfacePoint::planar(c + h * std::cos(phi), -h * std::sin(phi));
      return pts;
    };
  }
  if (l.gen.kind == GenKind::Rho) {
    // along the great circle through the basepoint and (0, e, 0); ends at the antipode
    const SurfacePoint p = base[static_cast<std::size_t>(i - 1)];
    return [=](double t) {
      auto pts = base;
      const double th = pi * t;
      pts[static_cast<std::size_t>(i - 1)] =
          SurfacePoint::unit(std::cos(th) * p.v[0], std::sin(th) * e, std::cos(th) * p.v[2]);
      return pts;
    };
  }
  // tau: strand 1 once around the hole, clockwise
  const double r = base[0].v[0];
  return [=](double t) {
    auto pts = base;
    pts[0] = SurfacePoint::planar(r * std::cos(2 * pi * t * e), -r * std::sin(2 * pi * t * e));
    return pts;
  };
}

inline double separation(BaseSurface s, const std::vector<SurfacePoint>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      best = std::min(best, s == BaseSurface::ProjectivePlane ? projective_distance(pts[a], pts[b])
                                                              : distance(pts[a], pts[b]));
  return best;
}

inline double max_step(const std::vector<SurfacePoint>& x, const std::vector<SurfacePoint>& y) {
  double best = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) best = std::max(best, distance(x[a], y[a]));
  return best;
}

/// Uniform samples at the default step, refined until no strand moves more than a quarter
/// of the minimum separation between consecutive samples.
inline std::pair<std::vector<double>, std::vector<std::vector<SurfacePoint>>> sample_adaptive(
    BaseSurface s, const MotionFn& f) {
  std::vector<double> ts;
  const int samples = geometry::tolerances().base_samples;
  for (int k = 0; k <= samples; ++k) ts.push_back(static_cast<double>(k) / samples);
  std::vector<std::vector<SurfacePoint>> frames;
  for (double t : ts) frames.push_back(f(t));
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& fr : frames) sep = std::min(sep, separation(s, fr));
  if (!(sep > geometry::tolerances().min_separation)) throw GeometryError("strands collide in generator motion");
  for (int round = 0; round < 8; ++round) {
    std::vector<double> nt{ts[0]};
    std::vector<std::vector<SurfacePoint>> nf{frames[0]};
    bool refined = false;
    for (std::size_t k = 1; k < ts.size(); ++k) {
      if (max_step(frames[k - 1], frames[k]) > sep / 4) {
        const double mid = (ts[k - 1] + ts[k]) / 2;
        auto fm = f(mid);
        sep = std::min(sep, separation(s, fm));
        nt.push_back(mid);
        nf.push_back(std::move(fm));
        refined = true;
      }
      nt.push_back(ts[k]);
      nf.push_back(frames[k]);
    }
    ts = std::move(nt);
    frames = std::move(nf);
    if (!refined) break;
  }
  return {ts, frames};
}

}  // namespace detail

/// Representative loop for a single letter, strands indexed by starting basepoint.
inline StrandMotion generator_motion(BaseSurface s, const Letter& l, int n) {
  if (n < 1) throw std::invalid_argument("generator_motion requires n >= 1");
  auto [ts, frames] = detail::sample_adaptive(s, detail::letter_fn(s, n, l));
  StrandMotion m{s, n, ts, std::vector<std::vector<SurfacePoint>>(static_cast<std::size_t>(n))};
  for (const auto& fr : frames)
    for (int j = 0; j < n; ++j) m.paths[static_cast<std::size_t>(j)].push_back(fr[static_cast<std::size_t>(j)]);
  return m;
}

inline StrandMotion generator_motion(const Generator& g, int n) {
  return generator_motion(g.kind == GenKind::Tau ? BaseSurface::Annulus : BaseSurface::ProjectivePlane,
                          Letter{g, 1}, n);
}

inline StrandMotion constant_motion(BaseSurface s, int n) {
  StrandMotion m{s, n, {0.0, 1.0}, {}};
  for (int j = 1; j <= n; ++j) m.paths.push_back({geometry::basepoint(s, n, j), geometry::basepoint(s, n, j)});
  return m;
}

/// Basepoint index occupied by each position; nullopt if a point is not a basepoint.
inline std::optional<int> basepoint_index(BaseSurface s, int n, const SurfacePoint& p, double tol = 1e-7) {
  for (int j = 1; j <= n; ++j) {
    const auto q = geometry::basepoint(s, n, j);
    const double dist = s == BaseSurface::ProjectivePlane ? projective_distance(p, q) : distance(p, q);
    if (dist < tol) return j;
  }
  return std::nullopt;
}

/// Endpoint permutation of a motion in the braid convention: images[s-1] is the final
/// basepoint of strand s.
inline Permutation motion_permutation(const StrandMotion& m) {
  Permutation perm = Permutation::identity(m.n);
  for (int s = 1; s <= m.n; ++s) {
    const auto q = basepoint_index(m.surface, m.n, m.paths[static_cast<std::size_t>(s - 1)].back());
    if (!q) throw GeometryError("motion does not end on the basepoint set");
    perm.images[static_cast<std::size_t>(s - 1)] = *q;
  }
  return perm;
}

/// Concatenation of the representative loops of the letters of w, rescaled to [0,1].
/// On RP^2 representatives are kept continuous across letters.
inline StrandMotion word_motion(BaseSurface s, int n, const BraidWord& w) {
  if (w.empty()) return constant_motion(s, n);
  StrandMotion out{s, n, {}, std::vector<std::vector<SurfacePoint>>(static_cast<std::size_t>(n))};
  std::vector<int> occupant(static_cast<std::size_t>(n));  // occupant[pos-1] = strand
  std::vector<double> sign(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < n; ++j) occupant[static_cast<std::size_t>(j)] = j + 1;
  const double L = static_cast<double>(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (int e = 0; e < std::abs(w[k].exp); ++e) {
      const Letter unit{w[k].gen, w[k].exp > 0 ? 1 : -1};
      const auto g = generator_motion(s, unit, n);
      const std::size_t first = out.times.empty() ? 0 : 1;
      for (std::size_t q = first; q < g.samples(); ++q) {
        out.times.push_back((static_cast<double>(k) + (e + g.times[q]) / std::abs(w[k].exp)) / L);
        for (int pos = 1; pos <= n; ++pos) {
          const int strand = occupant[static_cast<std::size_t>(pos - 1)];
          SurfacePoint pt = g.paths[static_cast<std::size_t>(pos - 1)][q];
          if (sign[static_cast<std::size_t>(strand - 1)] < 0) pt = -pt;
          out.paths[static_cast<std::size_t>(strand - 1)].push_back(pt);
        }
      }
      std::vector<int> next(occupant.size());
      for (int pos = 1; pos <= n; ++pos) {
        const int strand = occupant[static_cast<std::size_t>(pos - 1)];
        const auto& end = out.paths[static_cast<std::size_t>(strand - 1)].back();
        const auto q = basepoint_index(s, n, end);
        if (!q) throw GeometryError("generator motion does not end on the basepoint set");
        next[static_cast<std::size_t>(*q - 1)] = strand;
        if (s == BaseSurface::ProjectivePlane)
          sign[static_cast<std::size_t>(strand - 1)] =
              distance(end, geometry::basepoint(s, n, *q)) < 1e-7 ? 1.0 : -1.0;
      }
      occupant = next;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting

inline LiftScene lift_motion(const StrandMotion& m, const CoverSpec& cover) {
  if (m.surface != cover.base()) throw GeometryError("cover does not match the surface of the motion");
  if (m.paths.size() != static_cast<std::size_t>(m.n)) throw GeometryError("motion has the wrong number of paths");
  const int d = cover.d, n = m.n;
  LiftScene scene{m, cover, std::vector<std::vector<SurfacePoint>>(static_cast<std::size_t>(d * n)), {}};
  for (int sh = 1; sh <= d * n; ++sh) scene.block.push_back((sh - 1) % n + 1);
  const double pi = std::numbers::pi;

  for (int s = 0; s < n; ++s) {
    const auto& path = m.paths[static_cast<std::size_t>(s)];
    if (path.size() != m.samples()) throw GeometryError("path length differs from the time grid");
    if (cover.kind == CoverSpec::Kind::AntipodalSphere) {
      SurfacePoint cur = path.front();
      if (cur.v[2] < 0) cur = -cur;
      for (std::size_t k = 0; k < path.size(); ++k) {
        const auto& p = path[k];
        if (std::abs(p.norm() - 1.0) > kUnitTolerance) throw GeometryError("point off the unit sphere");
        const SurfacePoint next = distance(p, cur) <= distance(-p, cur) ? p : -p;
        if (distance(next, cur) > 0.5) throw GeometryError("lifting failure: path is not continuous");
        cur = next;
        scene.lifted[static_cast<std::size_t>(s)].push_back(cur);
        scene.lifted[static_cast<std::size_t>(s + n)].push_back(-cur);
      }
    } else {
      double theta = 0.0;
      bool first = true;
      for (const auto& p : path) {
        const double r = std::hypot(p.v[0], p.v[1]);
        if (r < geometry::kAnnulusInner || r > geometry::kAnnulusOuter) throw GeometryError("point off the annulus");
        const double raw = std::atan2(p.v[1], p.v[0]);
        if (first) {
          theta = raw;
          first = false;
        } else {
          double delta = std::remainder(raw - theta, 2 * pi);
          if (std::abs(delta) > 0.5) throw GeometryError("lifting failure: path is not continuous");
          theta += delta;
        }
        for (int k = 0; k < d; ++k) {
          const double phi = (theta + 2 * pi * k) / d;
          scene.lifted[static_cast<std::size_t>(s + k * n)].push_back(SurfacePoint::planar(r * std::cos(phi), r * std::sin(phi)));
        }
      }
    }
  }
  return scene;
}

/// The covering map applied to a point of the cover.
inline SurfacePoint cover_projection(const CoverSpec& cover, const SurfacePoint& p) {
  if (cover.kind == CoverSpec::Kind::AntipodalSphere) return p;
  const double r = std::hypot(p.v[0], p.v[1]);
  const double phi = std::atan2(p.v[1], p.v[0]) * cover.d;
  return SurfacePoint::planar(r * std::cos(phi), r * std::sin(phi));
}

/// Largest deviation between the projected lift and the source path.
inline double projection_error(const LiftScene& s) {
  double worst = 0.0;
  for (int sh = 0; sh < s.sheets(); ++sh) {
    const auto& src = s.source.paths[static_cast<std::size_t>(s.block[static_cast<std::size_t>(sh)] - 1)];
    const auto& lift = s.lifted[static_cast<std::size_t>(sh)];
    for (std::size_t k = 0; k < lift.size(); ++k) {
      const auto q = cover_projection(s.cover, lift[k]);
      worst = std::max(worst, s.cover.kind == CoverSpec::Kind::AntipodalSphere ? projective_distance(q, src[k])
                                                                              : distance(q, src[k]));
    }
  }
  return worst;
}

inline double min_lifted_separation(const LiftScene& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.source.samples(); ++k)
    for (int a = 0; a < s.sheets(); ++a)
      for (int b = a + 1; b < s.sheets(); ++b)
        best = std::min(best, distance(s.lifted[static_cast<std::size_t>(a)][k], s.lifted[static_cast<std::size_t>(b)][k]));
  return best;
}

// ---------------------------------------------------------------------------
// Extraction

struct Extraction {
  BraidWord word;
  int strands = 0;
  /// sheet_at_position[p-1] is the sheet starting at position p; 0 marks the hole strand.
  std::vector<int> sheet_at_position;
  std::optional<int> hole_position;
  int perturbations = 0;
};

namespace detail {

/// Planar chart (kappa, u): strands are ordered by kappa, u decides over and under.
/// The sphere is projected stereographically from (1,0,0), which no model loop visits.
inline std::array<double, 2> chart(const CoverSpec& cover, const SurfacePoint& p, double alpha) {
  double kappa, u;
  if (cover.kind == CoverSpec::Kind::AntipodalSphere) {
    const double den = 1.0 - p.v[0];
    if (den < 1e-6) throw GeometryError("path passes the projection pole");
    kappa = -p.v[2] / den;
    u = p.v[1] / den;
  } else {
    const double a = geometry::kProjectionAngle;
    kappa = p.v[0] * std::cos(a) + p.v[1] * std::sin(a);
    u = -p.v[0] * std::sin(a) + p.v[1] * std::cos(a);
  }
  return {kappa * std::cos(alpha) + u * std::sin(alpha), -kappa * std::sin(alpha) + u * std::cos(alpha)};
}

struct Degenerate {};

inline Extraction extract_once(const CoverSpec& cover, const std::vector<std::vector<SurfacePoint>>& paths,
                               const std::vector<int>& labels, bool with_hole, double alpha) {
  std::vector<std::vector<std::array<double, 2>>> xy;
  for (const auto& p : paths) {
    std::vector<std::array<double, 2>> c;
    for (const auto& q : p) c.push_back(chart(cover, q, alpha));
    xy.push_back(std::move(c));
  }
  std::vector<int> lab = labels;
  if (with_hole) {
    const auto h = chart(cover, geometry::hole_point(), alpha);
    xy.emplace_back(paths.front().size(), h);
    lab.push_back(0);
  }
  const std::size_t m = xy.size(), T = xy.empty() ? 0 : xy[0].size();
  constexpr double eps = 1e-12;

  std::vector<std::size_t> order(m);  // order[pos] = strand slot
  for (std::size_t a = 0; a < m; ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xy[a][0][0] < xy[b][0][0]; });
  for (std::size_t p = 1; p < m; ++p)
    if (xy[order[p]][0][0] - xy[order[p - 1]][0][0] < eps) throw Degenerate{};
  Extraction ex;
  ex.strands = static_cast<int>(m);
  for (std::size_t p = 0; p < m; ++p) {
    ex.sheet_at_position.push_back(lab[order[p]]);
    if (lab[order[p]] == 0 && with_hole) ex.hole_position = static_cast<int>(p + 1);
  }
  std::vector<std::size_t> pos(m);
  for (std::size_t p = 0; p < m; ++p) pos[order[p]] = p;

  struct Event {
    double lambda;
    std::size_t a, b;
  };
  for (std::size_t k = 1; k < T; ++k) {
    std::vector<Event> events;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const double d0 = xy[a][k - 1][0] - xy[b][k - 1][0];
        const double d1 = xy[a][k][0] - xy[b][k][0];
        if (std::abs(d1) < eps) throw Degenerate{};
        if ((d0 < 0) != (d1 < 0)) events.push_back({d0 / (d0 - d1), a, b});
      }
    std::sort(events.begin(), events.end(), [&](const Event& x, const Event& y) {
      if (x.lambda != y.lambda) return x.lambda < y.lambda;
      return std::min(pos[x.a], pos[x.b]) < std::min(pos[y.a], pos[y.b]);
    });
    for (std::size_t e = 0; e < events.size(); ++e) {
      const auto& ev = events[e];
      if (e + 1 < events.size() && events[e + 1].lambda - ev.lambda < eps) {
        const auto& nx = events[e + 1];
        if (nx.a == ev.a || nx.a == ev.b || nx.b == ev.a || nx.b == ev.b) throw Degenerate{};
      }
      std::size_t lo = ev.a, hi = ev.b;
      if (pos[lo] > pos[hi]) std::swap(lo, hi);
      if (pos[hi] != pos[lo] + 1) throw Degenerate{};
      const double ulo = xy[lo][k - 1][1] + ev.lambda * (xy[lo][k][1] - xy[lo][k - 1][1]);
      const double uhi = xy[hi][k - 1][1] + ev.lambda * (xy[hi][k][1] - xy[hi][k - 1][1]);
      if (std::abs(ulo - uhi) < eps) throw Degenerate{};
      ex.word.push_back({sigma(static_cast<int>(pos[lo]) + 1), ulo > uhi ? 1 : -1});
      std::swap(pos[lo], pos[hi]);
    }
  }
  ex.word = free_reduce(ex.word);
  return ex;
}

inline Extraction extract_paths(const CoverSpec& cover, const std::vector<std::vector<SurfacePoint>>& paths,
                                const std::vector<int>& labels, bool with_hole) {
  const auto& tol = geometry::tolerances();
  for (int k = 0; k <= tol.max_perturbations; ++k) {
    try {
      auto ex = extract_once(cover, paths, labels, with_hole, k * tol.perturbation_step);
      ex.perturbations = k;
      return ex;
    } catch (const Degenerate&) {
    }
  }
  throw GeometryError("configuration stays non-generic under perturbation");
}

}  // namespace detail

/// Full extraction; for annulus covers the hole is an extra fixed strand, so the word lives
/// in the disc braid group on dn+1 strands.
inline Extraction extract(const LiftScene& s) {
  std::vector<int> labels;
  for (int sh = 1; sh <= s.sheets(); ++sh) labels.push_back(sh);
  return detail::extract_paths(s.cover, s.lifted, labels, s.cover.kind == CoverSpec::Kind::AnnulusDFold);
}

inline BraidWord extract_word(const LiftScene& s) { return extract(s).word; }

/// Word of a motion read in the base. On RP^2 every strand must stay in the upper
/// hemisphere; on the annulus the hole strand is included.
inline Extraction extract_base(const StrandMotion& m) {
  std::vector<int> labels;
  for (int s = 1; s <= m.n; ++s) labels.push_back(s);
  if (m.surface == BaseSurface::ProjectivePlane) {
    for (const auto& p : m.paths)
      for (const auto& q : p)
        if (q.v[2] <= 0) throw GeometryError("motion leaves the base disc");
    return detail::extract_paths(CoverSpec::antipodal_sphere(), m.paths, labels, false);
  }
  return detail::extract_paths(CoverSpec::annulus_dfold(1), m.paths, labels, true);
}

// ---------------------------------------------------------------------------
// psi

namespace detail {

struct LiftTable {
  std::vector<int> sheet_at_position;
  std::optional<int> hole_position;
  std::map<Generator, BraidWord> words;
};

inline const LiftTable& lift_table(const CoverSpec& cover, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, LiftTable> cache;
  const std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(static_cast<int>(cover.kind), cover.d, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  LiftTable t;
  std::vector<Generator> gens;
  for (int i = 1; i <= n - 1; ++i) gens.push_back(sigma(i));
  if (cover.kind == CoverSpec::Kind::AntipodalSphere)
    for (int j = 1; j <= n; ++j) gens.push_back(rho(j));
  else
    gens.push_back(tau());
  const auto constant = extract(lift_motion(constant_motion(cover.base(), n), cover));
  t.sheet_at_position = constant.sheet_at_position;
  t.hole_position = constant.hole_position;
  for (const auto& g : gens) {
    const auto ex = extract(lift_motion(generator_motion(cover.base(), Letter{g, 1}, n), cover));
    if (ex.sheet_at_position != t.sheet_at_position) throw GeometryError("inconsistent basepoint order");
    t.words[g] = ex.word;
  }
  return cache.emplace(key, std::move(t)).first->second;
}

inline BraidWord lift_word(const CoverSpec& cover, int n, const BraidWord& w) {
  const auto& t = lift_table(cover, n);
  BraidWord out;
  for (const auto& l : w) {
    check_generator(cover.base(), n, Letter{l.gen, 1});
    const auto& img = t.words.at(l.gen);
    const BraidWord piece = l.exp > 0 ? img : invert(img);
    for (int e = 0; e < std::abs(l.exp); ++e) out.append(piece);
  }
  return out;
}

}  // namespace detail

/// B_n(RP^2) -> B_{2n}(S^2), the homomorphic extension of the extracted generator lifts.
/// Positions 1..n are the upper sheets and n+i lies antipodal to i.
inline BraidWord psi(int n, const BraidWord& w) {
  if (n < 1) throw std::invalid_argument("psi requires n >= 1");
  check_bounds(w, n);
  return detail::lift_word(CoverSpec::antipodal_sphere(), n, w);
}

/// B_n(Ann) -> B_{dn}(Ann), as words in the disc braid group on dn+1 strands with the hole
/// strand at annulus_lift_hole_position(d, n).
inline BraidWord psi_annulus(int d, int n, const BraidWord& w) {
  if (n < 1) throw std::invalid_argument("psi_annulus requires n >= 1");
  return detail::lift_word(CoverSpec::annulus_dfold(d), n, w);
}

inline int annulus_lift_hole_position(int d, int n) {
  return *detail::lift_table(CoverSpec::annulus_dfold(d), n).hole_position;
}

/// Sheet starting at each position of the extracted words (0 is the hole strand).
inline std::vector<int> lift_positions(const CoverSpec& cover, int n) {
  return detail::lift_table(cover, n).sheet_at_position;
}

// ---------------------------------------------------------------------------
// Block properties

/// Each block {jn+1, ..., jn+n} is mapped into itself.
inline bool preserves_blocks(const Permutation& p, int n) {
  for (int s = 1; s <= p.size(); ++s)
    if ((p(s) - 1) / n != (s - 1) / n) return false;
  return true;
}

/// Each fibre {i, i+n, ..., i+(d-1)n} is mapped into itself.
inline bool preserves_fibres(const Permutation& p, int n) {
  for (int s = 1; s <= p.size(); ++s)
    if ((p(s) - 1) % n != (s - 1) % n) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Relator images

enum class ImageStatus { Verified, Unverified, Failed };

inline const char* status_name(ImageStatus s) {
  switch (s) {
    case ImageStatus::Verified: return "verified";
    case ImageStatus::Unverified: return "unverified";
    case ImageStatus::Failed: return "failed";
  }
  return "?";
}

struct RelatorImage {
  std::string label;
  BraidWord relator;
  BraidWord image;
  SphereWPVerdict verdict;
  ImageStatus status = ImageStatus::Unverified;
};

struct RelatorImageReport {
  int n = 0;
  std::vector<RelatorImage> images;

  std::size_t count(ImageStatus s) const {
    return static_cast<std::size_t>(std::count_if(images.begin(), images.end(), [&](const auto& i) { return i.status == s; }));
  }
  bool no_failures() const { return count(ImageStatus::Failed) == 0; }
  bool all_verified() const { return count(ImageStatus::Verified) == images.size(); }
};

inline RelatorImage check_relator_image(int n, const BraidWord& r, std::string label, SearchBudget budget = {}) {
  RelatorImage out{std::move(label), r, free_reduce(psi(n, r)), {}, ImageStatus::Unverified};
  out.verdict = sphere_word_problem(2 * n, out.image, budget);
  switch (out.verdict.verdict) {
    case SphereVerdict::Trivial: out.status = ImageStatus::Verified; break;
    case SphereVerdict::TrivialOrFullTwist: out.status = ImageStatus::Unverified; break;
    default: out.status = ImageStatus::Failed; break;
  }
  return out;
}

inline RelatorImageReport verify_relator_images(int n, SearchBudget budget = {}) {
  if (n < 2) throw std::invalid_argument("verify_relator_images requires n >= 2");
  const auto p = van_buskirk(n);
  RelatorImageReport rep{n, {}};
  for (std::size_t k = 0; k < p.relators.size(); ++k)
    rep.images.push_back(check_relator_image(n, p.relators[k], p.relator_labels[k], budget));
  return rep;
}

// ---------------------------------------------------------------------------
// Annulus spot-check

struct AnnulusSpotcheck {
  int d = 0, n = 0;
  int trials = 0;
  int discarded_trivial = 0;
  std::vector<BraidWord> failures;

  bool passed() const { return failures.empty(); }
};

inline BraidWord random_annulus_word(std::mt19937_64& rng, int n, int max_len) {
  BraidWord w;
  const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
  for (int k = 0; k < len; ++k) {
    const int pick = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int e = rng() % 2 ? 1 : -1;
    w.push_back(pick == 0 ? Letter{tau(), e} : Letter{sigma(pick), e});
  }
  return free_reduce(w);
}

/// Random words certified nontrivial in B_n(Ann); every lift must also be nontrivial.
inline AnnulusSpotcheck injectivity_spotcheck_annulus(int d, int n, int trials, std::uint64_t seed = 1) {
  if (d < 2 || n < 1) throw std::invalid_argument("spot-check requires d >= 2 and n >= 1");
  AnnulusSpotcheck out{d, n, 0, 0, {}};
  std::mt19937_64 rng(seed);
  while (out.trials < trials) {
    const auto w = random_annulus_word(rng, n, 10);
    if (annulus_oracle(n, w)) {
      ++out.discarded_trivial;
      continue;
    }
    ++out.trials;
    if (disc_action(d * n + 1, psi_annulus(d, n, w)).is_identity()) out.failures.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export

/// One line per sample and sheet: time, sheet, block, coordinates.
inline std::string to_path_text(const LiftScene& s) {
  std::ostringstream os;
  os.precision(12);
  os << "# sheets " << s.sheets() << " base-strands " << s.source.n << " samples " << s.source.samples() << "\n";
  for (std::size_t k = 0; k < s.source.samples(); ++k)
    for (int sh = 0; sh < s.sheets(); ++sh) {
      const auto& p = s.lifted[static_cast<std::size_t>(sh)][k];
      os << s.source.times[k] << " " << sh + 1 << " " << s.block[static_cast<std::size_t>(sh)] << " " << p.v[0]
         << " " << p.v[1] << " " << p.v[2] << "\n";
    }
  return os.str();
}

/// Braid diagram: time runs left to right, the projection coordinate top to bottom.
inline std::string to_svg(const LiftScene& s) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
  const double W = 800, H = 60.0 * std::max(s.sheets(), 2);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::vector<std::vector<std::array<double, 2>>> xy;
  for (const auto& path : s.lifted) {
    std::vector<std::array<double, 2>> c;
    for (const auto& p : path) {
      c.push_back(detail::chart(s.cover, p, 0.0));
      lo = std::min(lo, c.back()[0]);
      hi = std::max(hi, c.back()[0]);
    }
    xy.push_back(std::move(c));
  }
  if (hi - lo < 1e-12) hi = lo + 1;
  const std::size_t stride = std::max<std::size_t>(1, s.source.samples() / 400);
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  for (int sh = 0; sh < s.sheets(); ++sh) {
    os << "  <polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << colors[(s.block[static_cast<std::size_t>(sh)] - 1) % 7]
       << "\" points=\"";
    for (std::size_t k = 0; k < s.source.samples(); k += stride) {
      const double x = 20 + (W - 40) * s.source.times[k];
      const double y = 20 + (H - 40) * (xy[static_cast<std::size_t>(sh)][k][0] - lo) / (hi - lo);
      os << x << "," << y << " ";
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace surfbraid
