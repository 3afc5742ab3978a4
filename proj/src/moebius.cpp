#include "mumford/moebius.hpp"

namespace mumford {

// ---------------------------------------------------------------------------
// ProjectivePoint
// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(PadicElement x0, PadicElement x1)
    : x0_(std::move(x0)), x1_(std::move(x1)) {
  bool z0 = x0_.is_zero_to_precision(), z1 = x1_.is_zero_to_precision();
  if (z0 && z1) fail(errc::insufficient_precision, "projective point with both coordinates zero");
  // normalize by the coordinate of smaller valuation so one entry is 1
  if (z1 || (!z0 && !(x0_.val() > x1_.val()))) {
    x1_ = x1_ / x0_;
    x0_ = PadicElement::one(x0_.field());
  } else {
    x0_ = x0_ / x1_;
    x1_ = PadicElement::one(x1_.field());
  }
}

ProjectivePoint ProjectivePoint::infinity(const FieldPtr& k) {
  return ProjectivePoint(PadicElement::one(k), PadicElement::zero(k));
}

ProjectivePoint ProjectivePoint::affine(const PadicElement& value) {
  return ProjectivePoint(value, PadicElement::one(value.field()));
}

ProjectivePoint ProjectivePoint::from_rational(const FieldPtr& k, const Rational& q) {
  return affine(PadicElement::from_rational(k, q));
}

bool ProjectivePoint::is_infinity() const { return x1_.is_zero_to_precision(); }

PadicElement ProjectivePoint::affine_value() const {
  if (is_infinity()) fail(errc::invalid_argument, "affine value of the point at infinity");
  return x0_ / x1_;
}

PadicElement ProjectivePoint::cross(const ProjectivePoint& o) const {
  return x0_ * o.x1_ - x1_ * o.x0_;
}

bool ProjectivePoint::same_point(const ProjectivePoint& o) const {
  return cross(o).is_zero_to_precision();
}

std::string ProjectivePoint::str() const {
  if (is_infinity()) return "inf";
  return affine_value().str();
}

// ---------------------------------------------------------------------------
// MoebiusMap
// ---------------------------------------------------------------------------

MoebiusMap::MoebiusMap(PadicElement a, PadicElement b, PadicElement c, PadicElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  // canonicalize the projective representative by an integer power of p so
  // the smallest entry valuation lies in [0, 1); keeps long word products
  // from drifting out of the precision window
  bool have = false;
  Rational vmin;
  for (const PadicElement* e : {&a_, &b_, &c_, &d_}) {
    Valuation v = e->val();
    if (v.is_zero_to_precision()) continue;
    if (!have || v.value() < vmin) vmin = v.value();
    have = true;
  }
  if (!have) fail(errc::invalid_argument, "matrix vanishes to working precision");
  long long shift = vmin.floor();
  if (shift != 0) {
    PadicElement scale = PadicElement::from_integer(a_.field(), (long long)a_.field()->p).pow(-shift);
    a_ = a_ * scale;
    b_ = b_ * scale;
    c_ = c_ * scale;
    d_ = d_ * scale;
  }
  det_ = a_ * d_ - b_ * c_;
  if (det_.is_zero_to_precision())
    fail(errc::invalid_argument, "matrix is singular to working precision");
}

MoebiusMap MoebiusMap::identity(const FieldPtr& k) {
  return MoebiusMap(PadicElement::one(k), PadicElement::zero(k), PadicElement::zero(k),
                    PadicElement::one(k));
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
  return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                    c_ * o.b_ + d_ * o.d_);
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

MoebiusMap MoebiusMap::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  MoebiusMap r = identity(a_.field());
  MoebiusMap base = *this;
  unsigned long long e = (unsigned long long)n;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool MoebiusMap::proportional_to(const MoebiusMap& o) const {
  const PadicElement* x[4] = {&a_, &b_, &c_, &d_};
  const PadicElement* y[4] = {&o.a_, &o.b_, &o.c_, &o.d_};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!((*x[i]) * (*y[j]) - (*x[j]) * (*y[i])).is_zero_to_precision()) return false;
  return true;
}

bool MoebiusMap::is_identity() const { return proportional_to(identity(a_.field())); }

ProjectivePoint MoebiusMap::apply(const ProjectivePoint& x) const {
  return ProjectivePoint(a_ * x.x0() + b_ * x.x1(), c_ * x.x0() + d_ * x.x1());
}

// ---------------------------------------------------------------------------
// classification and Ford circles
// ---------------------------------------------------------------------------

MapClass classify_map(const MoebiusMap& g) {
  PadicElement tr = g.trace();
  Valuation vdet = g.det().val();  // certified nonzero by construction
  Valuation vtr = tr.val();
  if (vtr.is_zero_to_precision()) {
    // |tr|^2 <= p^{-2P}; decidable whenever v(det) < 2P
    Rational prec = tr.known_precision().value();
    if (vdet.value() < prec * Rational(2)) return MapClass::non_hyperbolic;
    fail(errc::insufficient_precision, "trace vanishes to precision at the hyperbolicity boundary");
  }
  Rational two_vtr = vtr.value() * Rational(2);
  if (two_vtr < vdet.value()) return MapClass::hyperbolic;
  return MapClass::non_hyperbolic;
}

namespace {

// order key: descending valuation of the affine value, infinity last
int point_rank(const ProjectivePoint& pt) {
  if (pt.is_infinity()) return 2;
  return 0;
}

Rational point_val(const ProjectivePoint& pt) {
  Valuation v = pt.affine_value().val();
  if (v.is_zero_to_precision()) return Rational(1000000);  // zero: sorts first
  return v.value();
}

}  // namespace

std::pair<ProjectivePoint, ProjectivePoint> fixed_points(const MoebiusMap& g) {
  const FieldPtr& k = g.a().field();
  if (g.is_identity()) fail(errc::invalid_argument, "fixed points of the identity");
  PadicElement two = PadicElement::from_integer(k, 2);
  if (g.c().is_zero_to_precision()) {
    ProjectivePoint inf = ProjectivePoint::infinity(k);
    PadicElement ad = g.a() - g.d();
    if (ad.is_zero_to_precision()) return {inf, inf};  // translation: parabolic at infinity
    ProjectivePoint other = ProjectivePoint(g.b(), ad);
    if (other.is_infinity()) return {inf, inf};
    return {other, inf};
  }
  // c z^2 + (d - a) z - b = 0
  PadicElement disc = g.trace() * g.trace() - PadicElement::from_integer(k, 4) * g.det();
  ProjectivePoint z1 = ProjectivePoint::infinity(k), z2 = z1;
  if (disc.is_zero_to_precision()) {
    PadicElement z = (g.a() - g.d()) / (two * g.c());
    return {ProjectivePoint::affine(z), ProjectivePoint::affine(z)};
  }
  PadicElement root = disc.sqrt();
  PadicElement num1 = g.a() - g.d() + root;
  PadicElement num2 = g.a() - g.d() - root;
  PadicElement den = two * g.c();
  z1 = ProjectivePoint::affine(num1 / den);
  z2 = ProjectivePoint::affine(num2 / den);
  // sort: 0 first, infinity last, otherwise by descending valuation
  bool swap = false;
  if (point_rank(z1) != point_rank(z2)) {
    swap = point_rank(z1) > point_rank(z2);
  } else if (!z1.is_infinity() && !z2.is_infinity()) {
    swap = point_val(z1) < point_val(z2);
  }
  if (swap) std::swap(z1, z2);
  return {z1, z2};
}

UltrametricDisk isometric_circle(const MoebiusMap& g) {
  if (g.c().is_zero_to_precision())
    fail(errc::fixes_infinity, "isometric circle undefined: map fixes infinity");
  PadicElement center = -(g.d() / g.c());
  // radius |det|^{1/2} / |c|, i.e. p^{-(v(det)/2 - v(c))}
  Rational rv = g.det().val().value() / Rational(2) - g.c().val().value();
  return UltrametricDisk{ProjectivePoint::affine(center), rv};
}

bool disks_disjoint(const UltrametricDisk& d1, const UltrametricDisk& d2) {
  Rational rmin = d1.radius_val < d2.radius_val ? d1.radius_val : d2.radius_val;
  PadicElement diff = d1.center.affine_value() - d2.center.affine_value();
  Valuation v = diff.val();
  if (v.is_zero_to_precision()) {
    if (diff.known_precision().value() > rmin) return false;  // certified nested
    fail(errc::insufficient_precision, "disk centers coincide to working precision");
  }
  return v.value() <= rmin;
}

bool disk_contained(const UltrametricDisk& d1, const UltrametricDisk& d2) {
  // d1 inside d2: radius1 <= radius2 and centers closer than radius2
  if (d1.radius_val < d2.radius_val) return false;
  PadicElement diff = d1.center.affine_value() - d2.center.affine_value();
  Valuation v = diff.val();
  if (v.is_zero_to_precision()) {
    if (diff.known_precision().value() > d2.radius_val) return true;
    fail(errc::insufficient_precision, "disk centers coincide to working precision");
  }
  return v.value() > d2.radius_val;
}

MoebiusMap normalize_triple(const ProjectivePoint& p1, const ProjectivePoint& p2,
                            const ProjectivePoint& p3) {
  if (p1.same_point(p2) || p1.same_point(p3) || p2.same_point(p3))
    fail(errc::coincident_points, "normalize_triple requires three distinct points");
  // z -> [z p1][p3 p2] / ([z p2][p3 p1])
  PadicElement k1 = p3.cross(p2);
  PadicElement k2 = p3.cross(p1);
  return MoebiusMap(k1 * p1.x1(), -(k1 * p1.x0()), k2 * p2.x1(), -(k2 * p2.x0()));
}

}  // namespace mumford
