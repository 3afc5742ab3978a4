#pragma once

#include <string>
#include <vector>

#include "mumford/moebius.hpp"

namespace mumford {

// Geodesic in the Bruhat-Tits tree, given by its two distinct ends in P^1.
struct GeodesicLine {
  ProjectivePoint end_a;
  ProjectivePoint end_b;

  GeodesicLine(ProjectivePoint a, ProjectivePoint b);
};

// The three mutual positions of two geodesics.
struct LineArrangement {
  enum class Kind { cross_at_vertex, disjoint, overlap_segment } kind;
  Rational distance;  // disjoint: gap length; overlap: segment length; else 0

  bool is_disjoint() const { return kind == Kind::disjoint; }
};

// R(a,b;c,d) = (a1 c0 - a0 c1)(b1 d0 - b0 d1) / ((a0 b1 - a1 b0)(c0 d1 - c1 d0))
PadicElement cross_ratio(const ProjectivePoint& a, const ProjectivePoint& b,
                         const ProjectivePoint& c, const ProjectivePoint& d);

// Trichotomy on |v(R(a,b;c,d))| vs |v(R(b,a;c,d))|. SharedEnd when the lines
// have a common end (the trichotomy presupposes four distinct points).
LineArrangement arrange(const GeodesicLine& l1, const GeodesicLine& l2);

// Geodesic between the two fixed points of a finite-order map.
// max_order 0 means "up to 2m" for the ambient tower.
GeodesicLine mirror(const MoebiusMap& g, uint32_t max_order = 0);

// Quotient *-tree data of a free product C_m * C_n over Q_p: the four ends,
// two mirror-offset segments and the central trivially-stabilized edge.
struct QuotientTreeDescriptor {
  uint32_t p, m, n;
  Rational dist_x_v;  // eps_m * v(zeta_p - 1)
  Rational dist_v_w;  // lambda_val - dist_x_v - dist_w_y, positive
  Rational dist_w_y;  // eps_n * v(zeta_p - 1)

  struct Segment {
    std::string from, to;
    Rational length;
    uint64_t edge_stabilizer;
    // only the total length of the C_{p^r}-stabilized part is determined;
    // its interior subdivision is flagged instead of guessed
    bool interior_subdivision_unresolved;
  };
  struct Vertex {
    std::string name;
    uint64_t stabilizer;
  };
  std::vector<Vertex> vertices;
  std::vector<Segment> segments;
  // four ends: orders m, m at x and n, n at y
  struct End {
    std::string at;
    uint32_t order;
  };
  std::vector<End> ends;

  std::string to_dot() const;
};

// lambda_val = v(lambda - 1) must exceed (eps_m + eps_n) v(zeta_p - 1);
// BoundViolated otherwise (no such discrete free product exists).
QuotientTreeDescriptor quotient_tree(uint32_t p, uint32_t m, uint32_t n,
                                     const Rational& lambda_val);

}  // namespace mumford
