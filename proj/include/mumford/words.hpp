#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mumford/moebius.hpp"

namespace mumford {

// Normal-form word in a free product of finite cyclic groups: alternating
// syllables (factor, exponent) with exponents in 1..order-1.
struct FreeProductWord {
  struct Syllable {
    uint32_t factor;
    uint32_t exponent;
  };
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }
  bool operator==(const FreeProductWord& o) const;
  std::string str() const;  // "s0^2 s1^-1" style
};

// The ambient free product C_{orders[0]} * ... * C_{orders[k-1]}.
class FreeProduct {
 public:
  explicit FreeProduct(std::vector<uint32_t> orders);

  const std::vector<uint32_t>& orders() const { return orders_; }
  size_t factors() const { return orders_.size(); }

  // generator_power(i, e) = s_i^e reduced
  FreeProductWord generator(uint32_t factor, long long exponent = 1) const;
  FreeProductWord reduce(const FreeProductWord& w) const;  // idempotent normal form
  FreeProductWord mul(const FreeProductWord& a, const FreeProductWord& b) const;
  FreeProductWord inverse(const FreeProductWord& w) const;
  FreeProductWord conjugate(const FreeProductWord& g, const FreeProductWord& w) const;  // g w g^-1
  FreeProductWord power(const FreeProductWord& w, long long n) const;

  FreeProductWord parse(const std::string& s) const;

 private:
  std::vector<uint32_t> orders_;
};

// Homomorphism to C_n determined by the images of the factor generators.
struct CyclicAssignment {
  uint32_t n;
  std::vector<uint32_t> images;  // image exponent per factor

  // images generate C_n
  bool generates(const FreeProduct& fp) const;
  // every factor embeds (image order equals factor order) -- torsion-free kernel
  bool factor_faithful(const FreeProduct& fp) const;
};

uint32_t hom_image(const FreeProductWord& w, const CyclicAssignment& a);

// Coset table of ker(phi) with a minimal-length Schreier transversal.
struct CosetTable {
  uint32_t n;
  std::vector<std::vector<uint32_t>> action;  // [coset][factor] -> coset
  std::vector<FreeProductWord> transversal;   // representative per coset

  std::string to_csv() const;
};

CosetTable coset_table(const FreeProduct& fp, const CyclicAssignment& a);

struct KernelGenerators {
  std::vector<FreeProductWord> generators;  // free basis of the kernel
  CosetTable table;
  // Schreier pair (coset, factor): -1 trivial, -2 eliminated by the factor
  // relator, else index into generators
  std::vector<std::vector<long long>> schreier_class;
  size_t rank() const { return generators.size(); }
};

// Reidemeister-Schreier: Schreier generators minus one per torsion-relator
// orbit; requires a generating, factor-faithful assignment.
KernelGenerators kernel_generators_rs(const FreeProduct& fp, const CyclicAssignment& a);

// Reidemeister rewriting of a kernel word over the free basis of kg:
// signed 1-based indices, negative for inverses, freely reduced.
std::vector<long long> rewrite_in_basis(const FreeProduct& fp, const CyclicAssignment& a,
                                        const KernelGenerators& kg, const FreeProductWord& w);

// Stallings-folding check that the given kernel elements generate the whole
// kernel (membership of every basis element in the folded subgroup graph).
bool generates_kernel(const FreeProduct& fp, const CyclicAssignment& a,
                      const std::vector<FreeProductWord>& gens);

// Enumerates reduced words of at most max_syllables syllables (kernel words
// when `assignment` is non-null) and checks that no nontrivial power up to
// lcm(orders) reduces to the identity. True iff no torsion was found.
bool torsion_scan(const FreeProduct& fp, const CyclicAssignment* assignment,
                  uint32_t max_syllables);

// Enumerate the scanned words instead of just scanning (for spot checks).
std::vector<FreeProductWord> enumerate_words(const FreeProduct& fp, uint32_t max_syllables);

// Product of matrix powers per syllable; rep[i] must have order orders[i].
MoebiusMap word_to_matrix(const FreeProductWord& w, const std::vector<MoebiusMap>& rep,
                          const FieldPtr& field);

}  // namespace mumford
