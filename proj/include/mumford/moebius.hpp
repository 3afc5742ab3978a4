#pragma once

#include <utility>

#include "mumford/padic.hpp"

namespace mumford {

// Point of P^1(K) in homogeneous coordinates, normalized so that the
// coordinate of smaller valuation is 1.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  ProjectivePoint(PadicElement x0, PadicElement x1);

  static ProjectivePoint infinity(const FieldPtr& k);
  static ProjectivePoint affine(const PadicElement& value);
  static ProjectivePoint from_rational(const FieldPtr& k, const Rational& q);

  const PadicElement& x0() const { return x0_; }
  const PadicElement& x1() const { return x1_; }
  bool is_infinity() const;          // x1 vanishes to precision
  PadicElement affine_value() const;  // x0 / x1

  // x0 a1 - x1 a0; vanishes to precision iff the points agree
  PadicElement cross(const ProjectivePoint& o) const;
  bool same_point(const ProjectivePoint& o) const;

  std::string str() const;

 private:
  PadicElement x0_, x1_;
};

enum class MapClass { hyperbolic, non_hyperbolic };

// Open disk |z - center| < p^{-radius_val}.
struct UltrametricDisk {
  ProjectivePoint center;  // affine
  Rational radius_val;
};

// Projective 2x2 matrix over the tower; entries are shared up to a scalar.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(PadicElement a, PadicElement b, PadicElement c, PadicElement d);

  static MoebiusMap identity(const FieldPtr& k);

  const PadicElement& a() const { return a_; }
  const PadicElement& b() const { return b_; }
  const PadicElement& c() const { return c_; }
  const PadicElement& d() const { return d_; }
  const PadicElement& det() const { return det_; }
  PadicElement trace() const { return a_ + d_; }

  MoebiusMap operator*(const MoebiusMap& o) const;
  // adjugate; equals the inverse in PGL_2
  MoebiusMap inverse() const;
  MoebiusMap pow(long long n) const;

  bool proportional_to(const MoebiusMap& o) const;
  bool is_identity() const;

  ProjectivePoint apply(const ProjectivePoint& x) const;

 private:
  PadicElement a_, b_, c_, d_, det_;
};

// Hyperbolic iff |tr|^2 / |det| > 1, i.e. 2 v(tr) < v(det); certified
// equality at the boundary reports non_hyperbolic.
MapClass classify_map(const MoebiusMap& g);

// Both fixed points, in descending order of the valuation of the affine
// value (so 0 sorts before units before infinity). A parabolic map yields a
// coincident pair. ExtensionRequired when the discriminant is a non-square.
std::pair<ProjectivePoint, ProjectivePoint> fixed_points(const MoebiusMap& g);

// Ford isometric disk of a map not fixing infinity: center -d/c,
// radius valuation v(det)/2 - v(c); invariant under scalar rescaling.
UltrametricDisk isometric_circle(const MoebiusMap& g);

// Open disks are nested or disjoint; disjoint iff
// v(c1 - c2) <= min(radius_val1, radius_val2).
bool disks_disjoint(const UltrametricDisk& d1, const UltrametricDisk& d2);

// For the ball dichotomy: d1 contained in d2.
bool disk_contained(const UltrametricDisk& d1, const UltrametricDisk& d2);

// The unique map sending p1, p2, p3 to 0, infinity, 1.
MoebiusMap normalize_triple(const ProjectivePoint& p1, const ProjectivePoint& p2,
                            const ProjectivePoint& p3);

}  // namespace mumford
