#include "mumford/json_io.hpp"

namespace mumford {

namespace {

uint32_t get_u32(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    fail(errc::parse_error, "missing or invalid field '" + key + "'");
  return j[key].get<uint32_t>();
}

std::string get_str(const ordered_json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_string())
    fail(errc::parse_error, "missing or invalid field '" + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

ordered_json field_to_json(const FieldDescriptor& k) {
  return ordered_json{{"p", k.p}, {"m", k.m}, {"precision", k.precision}};
}

FieldPtr field_from_json(const ordered_json& j) {
  return make_field(get_u32(j, "p"), get_u32(j, "m"), get_u32(j, "precision"));
}

std::string point_to_string(const ProjectivePoint& pt) {
  return pt.is_infinity() ? "inf" : pt.affine_value().str();
}

ProjectivePoint point_from_string(const FieldPtr& k, const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "oo") return ProjectivePoint::infinity(k);
  return ProjectivePoint::affine(PadicElement::parse(k, s));
}

ordered_json matrix_to_json(const MoebiusMap& m) {
  return ordered_json::array(
      {ordered_json::array({m.a().str(), m.b().str()}), ordered_json::array({m.c().str(), m.d().str()})});
}

MoebiusMap matrix_from_json(const FieldPtr& k, const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    fail(errc::parse_error, "matrix must be a 2x2 array of element strings");
  return MoebiusMap(PadicElement::parse(k, j[0][0].get<std::string>()),
                    PadicElement::parse(k, j[0][1].get<std::string>()),
                    PadicElement::parse(k, j[1][0].get<std::string>()),
                    PadicElement::parse(k, j[1][1].get<std::string>()));
}

ordered_json disk_to_json(const UltrametricDisk& d) {
  return ordered_json{{"center", point_to_string(d.center)}, {"radius_val", d.radius_val.str()}};
}

KummerEquation kummer_from_json(const ordered_json& j, uint32_t default_p,
                                uint32_t default_precision) {
  uint32_t p = j.contains("p") ? get_u32(j, "p") : default_p;
  uint32_t precision = j.contains("precision") ? get_u32(j, "precision") : default_precision;
  uint32_t m = j.contains("m") ? get_u32(j, "m") : 1;
  if (p == 0) fail(errc::parse_error, "prime p required (flag --p or payload field)");
  FieldPtr k = make_field(p, m, precision);
  uint32_t degree = get_u32(j, "degree");
  if (!j.contains("terms") || !j["terms"].is_array())
    fail(errc::parse_error, "terms array required");
  std::vector<KummerEquation::Term> terms;
  for (const auto& t : j["terms"]) {
    terms.push_back({point_from_string(k, get_str(t, "point")), get_u32(t, "exp")});
  }
  return KummerEquation::make(k, degree, std::move(terms));
}

ordered_json verdict_to_json(const MumfordVerdict& v) {
  ordered_json out;
  out["is_mumford"] = v.is_mumford;
  if (v.failure) out["failure"] = failure_name(*v.failure);
  if (v.witness) {
    ordered_json pairs = ordered_json::array();
    for (const auto& pr : v.witness->pairs)
      pairs.push_back(ordered_json{{"points", {pr.idx1, pr.idx2}}, {"ram_index", pr.ram_index}});
    out["witness"] = std::move(pairs);
  }
  if (!v.witness_distances.empty()) {
    ordered_json dists = ordered_json::array(), thr = ordered_json::array();
    for (const auto& d : v.witness_distances) dists.push_back(d.str());
    for (const auto& t : v.thresholds) thr.push_back(t.str());
    out["distances"] = std::move(dists);
    out["thresholds"] = std::move(thr);
  }
  return out;
}

ordered_json tree_to_json(const QuotientTreeDescriptor& q) {
  ordered_json out;
  out["p"] = q.p;
  out["m"] = q.m;
  out["n"] = q.n;
  out["dist_x_v"] = q.dist_x_v.str();
  out["dist_v_w"] = q.dist_v_w.str();
  out["dist_w_y"] = q.dist_w_y.str();
  ordered_json vs = ordered_json::array();
  for (const auto& v : q.vertices) vs.push_back(ordered_json{{"name", v.name}, {"stabilizer", v.stabilizer}});
  out["vertices"] = std::move(vs);
  ordered_json segs = ordered_json::array();
  for (const auto& s : q.segments)
    segs.push_back(ordered_json{{"from", s.from},
                                {"to", s.to},
                                {"length", s.length.str()},
                                {"edge_stabilizer", s.edge_stabilizer},
                                {"interior_subdivision_unresolved", s.interior_subdivision_unresolved}});
  out["segments"] = std::move(segs);
  ordered_json ends = ordered_json::array();
  for (const auto& e : q.ends) ends.push_back(ordered_json{{"at", e.at}, {"order", e.order}});
  out["ends"] = std::move(ends);
  return out;
}

ordered_json presentation_to_json(const SchottkyPresentation& pres) {
  ordered_json out;
  out["case"] = case_name(pres.case_tag);
  out["field"] = field_to_json(*pres.spec.field);
  out["d"] = pres.spec.d;
  out["e"] = pres.spec.e;
  out["f"] = pres.spec.f;
  out["k"] = pres.spec.k;
  out["l"] = pres.spec.l;
  out["lambda"] = pres.spec.lambda.str();
  out["rank"] = pres.expected_rank;
  out["rep"] = ordered_json{{"s", matrix_to_json(pres.rep_s)}, {"t", matrix_to_json(pres.rep_t)}};
  ordered_json gens = ordered_json::array();
  for (const auto& g : pres.generators)
    gens.push_back(
        ordered_json{{"label", g.label}, {"word", g.word}, {"matrix", matrix_to_json(g.matrix)}});
  out["generators"] = std::move(gens);
  return out;
}

SchottkyPresentation presentation_from_json(const ordered_json& j) {
  FieldPtr k = field_from_json(j.at("field"));
  CoverSpec spec = CoverSpec::make(k, get_u32(j, "d"), get_u32(j, "e"),
                                   PadicElement::parse(k, get_str(j, "lambda")), get_u32(j, "f"),
                                   get_u32(j, "k"), get_u32(j, "l"));
  SchottkyPresentation pres;
  pres.spec = spec;
  std::string case_tag = get_str(j, "case");
  if (case_tag == "prime")
    pres.case_tag = SchottkyCase::prime;
  else if (case_tag == "total_ram")
    pres.case_tag = SchottkyCase::total_ram;
  else if (case_tag == "divisor")
    pres.case_tag = SchottkyCase::divisor;
  else if (case_tag == "coprime")
    pres.case_tag = SchottkyCase::coprime;
  else if (case_tag == "mixed")
    pres.case_tag = SchottkyCase::mixed;
  else
    fail(errc::parse_error, "unknown case tag '" + case_tag + "'");
  pres.expected_rank = get_u32(j, "rank");
  pres.rep_s = matrix_from_json(k, j.at("rep").at("s"));
  pres.rep_t = matrix_from_json(k, j.at("rep").at("t"));
  FreeProduct fp({spec.d, spec.e});
  for (const auto& g : j.at("generators")) {
    LabeledGenerator lg;
    lg.label = get_str(g, "label");
    lg.word = get_str(g, "word");
    lg.matrix = matrix_from_json(k, g.at("matrix"));
    // word strings use s/t letters; map to factor indices for the oracle form
    std::string translated;
    for (char c : lg.word) {
      if (c == 's')
        translated += "s0";
      else if (c == 't')
        translated += "s1";
      else
        translated += c;
    }
    lg.word_nf = fp.parse(translated);
    pres.generators.push_back(std::move(lg));
  }
  if (pres.generators.size() != pres.expected_rank)
    fail(errc::parse_error, "generator count does not match the declared rank");
  return pres;
}

ordered_json report_to_json(const VerificationReport& rep) {
  ordered_json out;
  out["is_schottky_certified"] = rep.is_schottky_certified;
  out["all_hyperbolic"] = rep.all_hyperbolic;
  if (!rep.first_non_hyperbolic.empty()) out["first_non_hyperbolic"] = rep.first_non_hyperbolic;
  out["circles_disjoint"] = rep.circles_disjoint;
  if (!rep.first_intersecting_a.empty())
    out["first_intersecting"] = ordered_json::array({rep.first_intersecting_a, rep.first_intersecting_b});
  out["genus"] = rep.genus;
  if (rep.min_center_gap_val) out["min_center_gap_val"] = rep.min_center_gap_val->str();
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

}  // namespace mumford
