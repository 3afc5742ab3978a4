#pragma once

#include <optional>

#include "mumford/words.hpp"

namespace mumford {

enum class SchottkyCase { prime, total_ram, divisor, coprime, mixed };

// Four-point cover datum: s of order d with fixed points {0, inf}, t of
// order e with fixed points {1, lambda}, |lambda| = 1, lambda != 1.
struct CoverSpec {
  FieldPtr field;
  uint32_t d = 0, e = 0;
  PadicElement lambda;
  uint32_t f = 1;  // prime case: t -> zeta^f with gcd(f, q) = 1
  uint32_t k = 1;  // divisor-case twist, gcd(k, e) = 1
  uint32_t l = 1;  // coprime-case twist, gcd(l, d) = 1

  static CoverSpec make(FieldPtr field, uint32_t d, uint32_t e, PadicElement lambda,
                        uint32_t f = 1, uint32_t k = 1, uint32_t l = 1);
  // degree of the cyclic quotient the kernel lives under
  uint32_t quotient_order() const;
};

struct LabeledGenerator {
  std::string label;        // provenance within the construction
  std::string word;         // signed word, e.g. "s^2 t s^-3"
  FreeProductWord word_nf;  // normal form in C_d * C_e
  MoebiusMap matrix;
};

struct SchottkyPresentation {
  SchottkyCase case_tag;
  CoverSpec spec;
  uint32_t expected_rank = 0;
  std::vector<LabeledGenerator> generators;
  MoebiusMap rep_s, rep_t;  // representation the word labels refer to
};

const char* case_name(SchottkyCase c);

// s = diag(zeta_d, 1), t = phi diag(zeta_e, 1) phi^{-1} with phi = (l 1; 1 1),
// stored with the 1/(lambda-1) prefactor cleared.
std::pair<MoebiusMap, MoebiusMap> base_matrices(const CoverSpec& spec);

// unique f with a f == 1 mod q
uint32_t exponents_to_f(uint32_t a, uint32_t q);

// d = e = q prime: gamma_{if} = s^i t s^{-f-i}, i = 1..q-1, rank q - 1;
// matrices are the displayed closed forms.
SchottkyPresentation synth_prime(const CoverSpec& spec);

// d = e = m: descent over the smallest prime q | m,
// Gamma_{m,m} = < Gamma_{q,q} on (s^{m'}, t^{m'}),
//                 s^{m' i} Gamma_{m',m'} s^{-m' i} >, rank m - 1.
SchottkyPresentation synth_total_ram(const CoverSpec& spec);

// e | d (or d | e with roles swapped), n = max: B_k = { s^{ik} gamma_{jk} s^{-ik} },
// gamma_{jk} = (s^{fk})^j t (s^{fk})^{-j-1}, f = n/e; rank (d/e)(e-1).
SchottkyPresentation synth_divisor(const CoverSpec& spec);

// gcd(d, e) = 1, n = de: commutators sigma^{-i} tau^{-j} sigma^i tau^j with
// sigma = s^e, tau = t^d; rank (d-1)(e-1); displayed closed-form matrices.
SchottkyPresentation synth_coprime(const CoverSpec& spec);

// d, e with l = gcd > 1 and neither dividing the other: coprime part on
// (s^l, t^l) plus conjugates of the Gamma_{l,l} part, conjugated by powers
// of an element mapping to a generator of C_m inside C_n (m = d'e');
// rank (d'-1)(e'-1) + (l-1) d'e'.
SchottkyPresentation synth_mixed(const CoverSpec& spec);

// case dispatch on (d, e) arithmetic
SchottkyPresentation synthesize(const CoverSpec& spec);

// word-level free basis s_0^j s_i s_0^{-j-1} of the kernel of the
// (m+1)-fold free product of C_n mapping every generator to the same
// generator of C_n; rank m(n-1)
struct ReidemeisterBasis {
  FreeProduct group;
  std::vector<FreeProductWord> words;
  std::vector<std::string> labels;
};
ReidemeisterBasis synth_reidemeister(uint32_t m, uint32_t n);

// 2g - 2 = -2n + sum (n/e_i)(e_i - 1) over branch points
long long expected_genus(uint32_t degree, const std::vector<uint32_t>& ram_indices);

struct VerificationReport {
  bool all_hyperbolic = false;
  std::string first_non_hyperbolic;  // generator label when a check fails
  bool circles_disjoint = false;
  std::string first_intersecting_a, first_intersecting_b;
  bool is_schottky_certified = false;
  uint32_t genus = 0;
  std::optional<Rational> min_center_gap_val;  // over all disjoint disk pairs
  std::string note;
};

// Ford certificate: every generator hyperbolic and the isometric disks of
// generators and inverses pairwise disjoint (a good fundamental domain).
// Sufficient, not a general discreteness decision.
VerificationReport verify_schottky(const SchottkyPresentation& pres);

}  // namespace mumford
