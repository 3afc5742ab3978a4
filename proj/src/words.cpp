#include "mumford/words.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <sstream>

namespace mumford {

bool FreeProductWord::operator==(const FreeProductWord& o) const {
  if (syllables.size() != o.syllables.size()) return false;
  for (size_t i = 0; i < syllables.size(); ++i)
    if (syllables[i].factor != o.syllables[i].factor ||
        syllables[i].exponent != o.syllables[i].exponent)
      return false;
  return true;
}

std::string FreeProductWord::str() const {
  if (syllables.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& s : syllables) {
    if (!first) os << " ";
    first = false;
    os << "s" << s.factor << "^" << s.exponent;
  }
  return os.str();
}

FreeProduct::FreeProduct(std::vector<uint32_t> orders) : orders_(std::move(orders)) {
  if (orders_.size() < 1) fail(errc::invalid_argument, "free product needs at least one factor");
  for (uint32_t o : orders_)
    if (o < 2) fail(errc::invalid_argument, "factor orders must be >= 2");
}

FreeProductWord FreeProduct::generator(uint32_t factor, long long exponent) const {
  if (factor >= orders_.size()) fail(errc::invalid_argument, "factor index out of range");
  long long o = orders_[factor];
  long long e = ((exponent % o) + o) % o;
  FreeProductWord w;
  if (e != 0) w.syllables.push_back({factor, (uint32_t)e});
  return w;
}

FreeProductWord FreeProduct::reduce(const FreeProductWord& w) const {
  FreeProductWord r;
  for (const auto& s : w.syllables) {
    if (s.factor >= orders_.size()) fail(errc::invalid_argument, "factor index out of range");
    uint64_t e = s.exponent % orders_[s.factor];
    if (e == 0) continue;
    if (!r.syllables.empty() && r.syllables.back().factor == s.factor) {
      uint64_t merged = (r.syllables.back().exponent + e) % orders_[s.factor];
      r.syllables.pop_back();
      if (merged != 0) {
        // merging may cascade with the new last syllable
        FreeProductWord tail;
        tail.syllables.push_back({s.factor, (uint32_t)merged});
        r = mul(r, tail);
      }
    } else {
      r.syllables.push_back({s.factor, (uint32_t)e});
    }
  }
  return r;
}

FreeProductWord FreeProduct::mul(const FreeProductWord& a, const FreeProductWord& b) const {
  FreeProductWord r = a;
  for (const auto& s : b.syllables) {
    if (!r.syllables.empty() && r.syllables.back().factor == s.factor) {
      uint64_t merged = (r.syllables.back().exponent + (uint64_t)s.exponent) % orders_[s.factor];
      r.syllables.pop_back();
      if (merged != 0) r.syllables.push_back({s.factor, (uint32_t)merged});
    } else {
      r.syllables.push_back(s);
    }
  }
  return r;
}

FreeProductWord FreeProduct::inverse(const FreeProductWord& w) const {
  FreeProductWord r;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    r.syllables.push_back({it->factor, orders_[it->factor] - it->exponent});
  return r;
}

FreeProductWord FreeProduct::conjugate(const FreeProductWord& g, const FreeProductWord& w) const {
  return mul(mul(g, w), inverse(g));
}

FreeProductWord FreeProduct::power(const FreeProductWord& w, long long n) const {
  FreeProductWord base = n < 0 ? inverse(w) : w;
  unsigned long long e = n < 0 ? (unsigned long long)(-n) : (unsigned long long)n;
  FreeProductWord r;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FreeProductWord FreeProduct::parse(const std::string& str) const {
  FreeProductWord w;
  std::istringstream is(str);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 's') fail(errc::parse_error, "bad syllable '" + tok + "'");
    auto caret = tok.find('^');
    long long factor, exp = 1;
    try {
      factor = std::stoll(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) exp = std::stoll(tok.substr(caret + 1));
    } catch (...) {
      fail(errc::parse_error, "bad syllable '" + tok + "'");
    }
    if (factor < 0 || (size_t)factor >= orders_.size())
      fail(errc::parse_error, "factor out of range in '" + tok + "'");
    w = mul(w, generator((uint32_t)factor, exp));
  }
  return w;
}

bool CyclicAssignment::generates(const FreeProduct& fp) const {
  if (images.size() != fp.factors()) fail(errc::invalid_argument, "one image per factor required");
  uint32_t g = n;
  for (uint32_t im : images) g = std::gcd(g, im % n);
  return g == 1;
}

bool CyclicAssignment::factor_faithful(const FreeProduct& fp) const {
  for (size_t i = 0; i < images.size(); ++i) {
    uint32_t ord = n / std::gcd(n, images[i] % n == 0 ? n : images[i] % n);
    if (images[i] % n == 0 || ord != fp.orders()[i]) return false;
  }
  return true;
}

uint32_t hom_image(const FreeProductWord& w, const CyclicAssignment& a) {
  uint64_t acc = 0;
  for (const auto& s : w.syllables) {
    if (s.factor >= a.images.size()) fail(errc::invalid_argument, "factor index out of range");
    acc = (acc + (uint64_t)s.exponent * a.images[s.factor]) % a.n;
  }
  return (uint32_t)acc;
}

CosetTable coset_table(const FreeProduct& fp, const CyclicAssignment& a) {
  if (!a.generates(fp))
    fail(errc::non_generating_assignment, "images do not generate the cyclic target");
  CosetTable t;
  t.n = a.n;
  t.action.assign(a.n, std::vector<uint32_t>(fp.factors(), 0));
  for (uint32_t c = 0; c < a.n; ++c)
    for (size_t i = 0; i < fp.factors(); ++i) t.action[c][i] = (c + a.images[i]) % a.n;

  // BFS over single letters s_i^{+1}, s_i^{-1} gives a minimal-length
  // Schreier (prefix-closed) transversal; ties resolved by letter order
  t.transversal.assign(a.n, FreeProductWord{});
  std::vector<bool> seen(a.n, false);
  seen[0] = true;
  std::deque<uint32_t> queue{0};
  while (!queue.empty()) {
    uint32_t c = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < fp.factors(); ++i) {
      for (int sign : {+1, -1}) {
        uint32_t img = a.images[i] % a.n;
        uint32_t next = sign > 0 ? (c + img) % a.n : (c + a.n - img) % a.n;
        if (seen[next]) continue;
        seen[next] = true;
        t.transversal[next] = fp.mul(t.transversal[c], fp.generator((uint32_t)i, sign));
        queue.push_back(next);
      }
    }
  }
  return t;
}

std::string CosetTable::to_csv() const {
  std::ostringstream os;
  os << "coset,transversal";
  size_t cols = action.empty() ? 0 : action[0].size();
  for (size_t i = 0; i < cols; ++i) os << ",s" << i;
  os << "\n";
  for (uint32_t c = 0; c < n; ++c) {
    os << c << "," << transversal[c].str();
    for (uint32_t a : action[c]) os << "," << a;
    os << "\n";
  }
  return os.str();
}

KernelGenerators kernel_generators_rs(const FreeProduct& fp, const CyclicAssignment& a) {
  if (!a.generates(fp))
    fail(errc::non_generating_assignment, "images do not generate the cyclic target");
  if (!a.factor_faithful(fp))
    fail(errc::torsion_in_kernel,
         "factor image of non-maximal order: the kernel meets a factor and is not free");
  KernelGenerators out;
  out.table = coset_table(fp, a);
  const CosetTable& t = out.table;

  // Schreier generators g_{c,i} = T_c s_i T_{c s_i}^{-1}
  std::vector<std::vector<FreeProductWord>> sgen(a.n, std::vector<FreeProductWord>(fp.factors()));
  for (uint32_t c = 0; c < a.n; ++c)
    for (size_t i = 0; i < fp.factors(); ++i) {
      FreeProductWord w = fp.mul(fp.mul(t.transversal[c], fp.generator((uint32_t)i)),
                                 fp.inverse(t.transversal[t.action[c][i]]));
      sgen[c][i] = w;
    }

  // The relator s_i^{orders[i]} rewrites, for each orbit of the s_i-action
  // on cosets, to the product of the orbit's Schreier generators, each
  // exactly once (image order equals factor order). Drop one nontrivial
  // generator per orbit: the first along the orbit of its smallest coset.
  out.schreier_class.assign(a.n, std::vector<long long>(fp.factors(), -1));
  std::vector<std::vector<bool>> drop(a.n, std::vector<bool>(fp.factors(), false));
  for (size_t i = 0; i < fp.factors(); ++i) {
    std::vector<bool> visited(a.n, false);
    for (uint32_t start = 0; start < a.n; ++start) {
      if (visited[start]) continue;
      uint32_t c = start;
      bool any_nontrivial = false;
      do {
        visited[c] = true;
        if (!sgen[c][i].empty()) any_nontrivial = true;
        c = t.action[c][i];
      } while (c != start);
      if (!any_nontrivial) continue;
      c = start;
      do {
        if (!sgen[c][i].empty()) {
          drop[c][i] = true;
          break;
        }
        c = t.action[c][i];
      } while (c != start);
    }
  }
  for (uint32_t c = 0; c < a.n; ++c)
    for (size_t i = 0; i < fp.factors(); ++i) {
      if (sgen[c][i].empty()) continue;
      if (drop[c][i]) {
        out.schreier_class[c][i] = -2;
      } else {
        out.schreier_class[c][i] = (long long)out.generators.size();
        out.generators.push_back(sgen[c][i]);
      }
    }
  return out;
}

std::vector<long long> rewrite_in_basis(const FreeProduct& fp, const CyclicAssignment& a,
                                        const KernelGenerators& kg, const FreeProductWord& w) {
  if (hom_image(w, a) != 0) fail(errc::invalid_argument, "word is not in the kernel");
  std::vector<long long> out;
  auto push = [&](long long signed_idx) {
    if (!out.empty() && out.back() == -signed_idx)
      out.pop_back();  // free reduction
    else
      out.push_back(signed_idx);
  };
  // a dropped generator expands through its relator orbit:
  // g_{c0} = (g_{c1} ... g_{c_{o-1}})^{-1}
  auto emit = [&](uint32_t c, size_t i) {
    long long cls = kg.schreier_class[c][i];
    if (cls == -1) return;
    if (cls >= 0) {
      push(cls + 1);
      return;
    }
    std::vector<uint32_t> orbit;
    uint32_t cc = kg.table.action[c][i];
    while (cc != c) {
      orbit.push_back(cc);
      cc = kg.table.action[cc][i];
    }
    for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) {
      long long k = kg.schreier_class[*it][i];
      if (k >= 0) push(-(k + 1));
    }
  };
  uint32_t c = 0;
  for (const auto& syl : w.syllables) {
    for (uint32_t step = 0; step < syl.exponent; ++step) {
      emit(c, syl.factor);
      c = kg.table.action[c][syl.factor];
    }
  }
  if (c != 0) fail(errc::invalid_argument, "rewriting did not return to the base coset");
  (void)fp;
  return out;
}

namespace {

// Stallings folding over the free group F_rank: vertices with labeled edges,
// merged until deterministic
struct FoldGraph {
  std::vector<size_t> parent;
  // edges as (src, label, dst); label in 1..rank
  std::vector<std::array<size_t, 3>> edges;

  size_t find(size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
  size_t fresh() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }

  void add_loop(const std::vector<long long>& word) {
    size_t cur = 0;
    for (size_t k = 0; k < word.size(); ++k) {
      size_t next = (k + 1 == word.size()) ? 0 : fresh();
      long long x = word[k];
      if (x > 0)
        edges.push_back({cur, (size_t)x, next});
      else
        edges.push_back({next, (size_t)(-x), cur});
      cur = next;
    }
  }

  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < edges.size() && !changed; ++i) {
        for (size_t j = i + 1; j < edges.size() && !changed; ++j) {
          if (edges[i][1] != edges[j][1]) continue;
          size_t si = find(edges[i][0]), sj = find(edges[j][0]);
          size_t di = find(edges[i][2]), dj = find(edges[j][2]);
          if (si == sj && di != dj) {
            unite(di, dj);
            changed = true;
          } else if (di == dj && si != sj) {
            unite(si, sj);
            changed = true;
          }
        }
      }
    }
  }

  bool traces_loop(const std::vector<long long>& word) {
    size_t cur = find(0);
    for (long long x : word) {
      size_t label = (size_t)(x > 0 ? x : -x);
      bool fwd = x > 0;
      bool found = false;
      for (const auto& e : edges) {
        if (e[1] != label) continue;
        if (fwd && find(e[0]) == cur) {
          cur = find(e[2]);
          found = true;
          break;
        }
        if (!fwd && find(e[2]) == cur) {
          cur = find(e[0]);
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return cur == find(0);
  }
};

}  // namespace

bool generates_kernel(const FreeProduct& fp, const CyclicAssignment& a,
                      const std::vector<FreeProductWord>& gens) {
  KernelGenerators kg = kernel_generators_rs(fp, a);
  FoldGraph graph;
  graph.fresh();  // base vertex 0
  for (const auto& g : gens) {
    auto coords = rewrite_in_basis(fp, a, kg, g);
    if (!coords.empty()) graph.add_loop(coords);
  }
  graph.fold();
  for (size_t i = 0; i < kg.rank(); ++i) {
    std::vector<long long> letter{(long long)i + 1};
    if (!graph.traces_loop(letter)) return false;
  }
  return true;
}

namespace {

void enumerate_rec(const FreeProduct& fp, uint32_t max_syll, FreeProductWord& cur,
                   std::vector<FreeProductWord>& out) {
  if (cur.syllables.size() >= max_syll) return;
  for (uint32_t f = 0; f < fp.factors(); ++f) {
    if (!cur.syllables.empty() && cur.syllables.back().factor == f) continue;
    for (uint32_t e = 1; e < fp.orders()[f]; ++e) {
      cur.syllables.push_back({f, e});
      out.push_back(cur);
      enumerate_rec(fp, max_syll, cur, out);
      cur.syllables.pop_back();
    }
  }
}

}  // namespace

std::vector<FreeProductWord> enumerate_words(const FreeProduct& fp, uint32_t max_syllables) {
  std::vector<FreeProductWord> out;
  FreeProductWord cur;
  enumerate_rec(fp, max_syllables, cur, out);
  return out;
}

bool torsion_scan(const FreeProduct& fp, const CyclicAssignment* assignment,
                  uint32_t max_syllables) {
  if (max_syllables < 1) fail(errc::invalid_argument, "scan length must be >= 1");
  uint64_t bound = 1;
  for (uint32_t o : fp.orders()) bound = std::lcm(bound, (uint64_t)o);
  for (const auto& w : enumerate_words(fp, max_syllables)) {
    if (assignment && hom_image(w, *assignment) != 0) continue;
    // a torsion element has a power <= lcm(orders) equal to 1
    FreeProductWord acc = w;
    for (uint64_t k = 2; k <= bound; ++k) {
      acc = fp.mul(acc, w);
      if (acc.empty()) return false;  // w^k = 1 with w != 1
    }
  }
  return true;
}

MoebiusMap word_to_matrix(const FreeProductWord& w, const std::vector<MoebiusMap>& rep,
                          const FieldPtr& field) {
  MoebiusMap acc = MoebiusMap::identity(field);
  for (const auto& s : w.syllables) {
    if (s.factor >= rep.size()) fail(errc::invalid_argument, "representation misses a factor");
    acc = acc * rep[s.factor].pow(s.exponent);
  }
  return acc;
}

}  // namespace mumford
