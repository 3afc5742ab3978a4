#include "mumford/tree.hpp"

#include <sstream>

namespace mumford {

GeodesicLine::GeodesicLine(ProjectivePoint a, ProjectivePoint b)
    : end_a(std::move(a)), end_b(std::move(b)) {
  if (end_a.same_point(end_b)) fail(errc::degenerate_tuple, "geodesic needs two distinct ends");
}

PadicElement cross_ratio(const ProjectivePoint& a, const ProjectivePoint& b,
                         const ProjectivePoint& c, const ProjectivePoint& d) {
  PadicElement den1 = a.x0() * b.x1() - a.x1() * b.x0();
  PadicElement den2 = c.x0() * d.x1() - c.x1() * d.x0();
  if (den1.is_zero_to_precision() || den2.is_zero_to_precision())
    fail(errc::degenerate_tuple, "cross ratio needs a != b and c != d");
  PadicElement num1 = a.x1() * c.x0() - a.x0() * c.x1();
  PadicElement num2 = b.x1() * d.x0() - b.x0() * d.x1();
  return (num1 * num2) / (den1 * den2);
}

LineArrangement arrange(const GeodesicLine& l1, const GeodesicLine& l2) {
  const ProjectivePoint& a = l1.end_a;
  const ProjectivePoint& b = l1.end_b;
  const ProjectivePoint& c = l2.end_a;
  const ProjectivePoint& d = l2.end_b;
  if (a.same_point(c) || a.same_point(d) || b.same_point(c) || b.same_point(d))
    fail(errc::shared_end, "lines share an end; the trichotomy does not apply");

  PadicElement r1 = cross_ratio(a, b, c, d);
  PadicElement r2 = cross_ratio(b, a, c, d);
  Valuation v1 = r1.val(), v2 = r2.val();
  if (v1.is_zero_to_precision() || v2.is_zero_to_precision())
    fail(errc::insufficient_precision, "cross ratio vanishes to precision");
  Rational a1 = v1.value().abs(), a2 = v2.value().abs();
  if (a1 == a2) {
    if (a1 == Rational(0)) return {LineArrangement::Kind::cross_at_vertex, Rational(0)};
    return {LineArrangement::Kind::disjoint, a1};
  }
  return {LineArrangement::Kind::overlap_segment, a1 > a2 ? a1 : a2};
}

GeodesicLine mirror(const MoebiusMap& g, uint32_t max_order) {
  const FieldPtr& k = g.a().field();
  if (max_order == 0) max_order = 2 * k->m;
  if (g.is_identity()) fail(errc::invalid_argument, "mirror of the identity");
  bool finite = false;
  MoebiusMap w = g;
  for (uint32_t ord = 2; ord <= max_order; ++ord) {
    w = w * g;
    if (w.is_identity()) {
      finite = true;
      break;
    }
  }
  if (!finite) fail(errc::not_finite_order, "map has no order up to the declared bound");
  auto [f1, f2] = fixed_points(g);
  return GeodesicLine(f1, f2);
}

QuotientTreeDescriptor quotient_tree(uint32_t p, uint32_t m, uint32_t n,
                                     const Rational& lambda_val) {
  if (!is_prime(p)) fail(errc::invalid_argument, "p must be prime");
  if (m < 2 || n < 2) fail(errc::invalid_argument, "factor orders must be >= 2");
  auto p_part = [&](uint32_t x) {
    uint64_t pr = 1;
    while (x % p == 0) {
      pr *= p;
      x /= p;
    }
    return pr;
  };
  uint64_t pr = p_part(m), ps = p_part(n);
  Rational unit(1, (long long)p - 1);  // v(zeta_p - 1)
  Rational dxv = pr > 1 ? unit : Rational(0);
  Rational dwy = ps > 1 ? unit : Rational(0);
  if (!(lambda_val > dxv + dwy))
    fail(errc::bound_violated,
         "v(lambda-1) must strictly exceed (eps_m + eps_n) v(zeta_p - 1); no such discrete group");

  QuotientTreeDescriptor q;
  q.p = p;
  q.m = m;
  q.n = n;
  q.dist_x_v = dxv;
  q.dist_w_y = dwy;
  q.dist_v_w = lambda_val - dxv - dwy;

  q.vertices.push_back({"x", m});
  if (dxv > Rational(0)) {
    q.vertices.push_back({"v", p});
    q.segments.push_back({"x", "v", dxv, pr, pr > p});
  }
  std::string left = dxv > Rational(0) ? "v" : "x";
  std::string right = dwy > Rational(0) ? "w" : "y";
  if (dwy > Rational(0)) q.vertices.push_back({"w", p});
  q.vertices.push_back({"y", n});
  q.segments.push_back({left, right, q.dist_v_w, 1, false});
  if (dwy > Rational(0)) q.segments.push_back({"w", "y", dwy, ps, ps > p});

  q.ends = {{"x", m}, {"x", m}, {"y", n}, {"y", n}};
  return q;
}

std::string QuotientTreeDescriptor::to_dot() const {
  std::ostringstream os;
  os << "graph quotient_star_tree {\n  rankdir=LR;\n";
  for (const auto& v : vertices)
    os << "  " << v.name << " [label=\"" << v.name << ": C_" << v.stabilizer << "\"];\n";
  int eid = 0;
  for (const auto& e : ends) {
    std::string node = "end" + std::to_string(eid++);
    os << "  " << node << " [shape=none,label=\"" << e.order << "\"];\n";
    os << "  " << e.at << " -- " << node << " [style=bold];\n";
  }
  for (const auto& s : segments) {
    os << "  " << s.from << " -- " << s.to << " [label=\"len " << s.length.str() << ", stab C_"
       << s.edge_stabilizer << (s.interior_subdivision_unresolved ? ", interior unresolved" : "")
       << "\"" << (s.edge_stabilizer > 1 ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mumford
