#include "krq/character.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "krq/errors.hpp"

namespace krq {

namespace {

struct IrrepKey {
  int family, rank;
  Weight lam;
  bool operator==(const IrrepKey& o) const { return family == o.family && rank == o.rank && lam == o.lam; }
};
struct IrrepKeyHash {
  size_t operator()(const IrrepKey& k) const { return WeightHash{}(k.lam) * 31 + k.family * 7 + k.rank; }
};

std::mutex g_irrep_mu;
std::unordered_map<IrrepKey, std::shared_ptr<const DominantMultiplicities>, IrrepKeyHash> g_irrep_cache;

DominantMultiplicities freudenthal(const RootDatum& d, const Weight& lam) {
  const auto& pos = d.positive_roots();
  std::unordered_set<Weight, WeightHash> seen{lam};
  std::vector<Weight> dom{lam};
  for (size_t k = 0; k < dom.size(); ++k)
    for (const auto& a : pos) {
      Weight mu = dom[k] - a;
      if (d.is_dominant(mu) && seen.insert(mu).second) dom.push_back(mu);
    }
  std::sort(dom.begin(), dom.end(), [&](const Weight& x, const Weight& y) { return d.term_less(y, x); });

  std::unordered_map<Weight, size_t, WeightHash> index;
  index.reserve(dom.size() * 2);
  for (size_t i = 0; i < dom.size(); ++i) index.emplace(dom[i], i);
  std::vector<BigInt> mult(dom.size());
  mult[0] = 1;

  Weight lr = lam + d.rho();
  int64_t top = d.scaled_inner(lr, lr);
  std::vector<int64_t> root_norm(pos.size());
  for (size_t j = 0; j < pos.size(); ++j) root_norm[j] = d.scaled_inner(pos[j], pos[j]);

  BigInt num;
  for (size_t i = 1; i < dom.size(); ++i) {
    const Weight& mu = dom[i];
    num = 0;
    for (size_t j = 0; j < pos.size(); ++j) {
      const Weight& a = pos[j];
      Weight nu = mu + a;
      int64_t ip = d.scaled_inner(nu, a);
      while (true) {
        auto it = index.find(d.dominant_representative(nu));
        if (it == index.end()) break;
        if (ip >= 0)
          mpz_addmul_ui(num.get_mpz_t(), mult[it->second].get_mpz_t(), static_cast<unsigned long>(ip));
        else
          mpz_submul_ui(num.get_mpz_t(), mult[it->second].get_mpz_t(), static_cast<unsigned long>(-ip));
        nu += a;
        ip += root_norm[j];
      }
    }
    Weight mr = mu + d.rho();
    int64_t den = top - d.scaled_inner(mr, mr);
    BigInt m2 = 2 * num;
    if (den <= 0 || m2 % den != 0) throw Error("Freudenthal recursion produced a non-integral multiplicity");
    mult[i] = m2 / den;
  }
  DominantMultiplicities out;
  out.reserve(dom.size());
  for (size_t i = 0; i < dom.size(); ++i)
    if (mult[i] != 0) out.emplace_back(dom[i], mult[i]);
  return out;
}

// Reflects k into the dominant chamber. Returns false if k lies on a wall.
inline bool straighten(const RootDatum& d, Weight& k, int& parity) {
  const int r = d.rank();
  parity = 0;
  while (true) {
    int i = 0;
    while (i < r && k.c[i] >= 0) ++i;
    if (i == r) break;
    k = d.reflect(i, k);
    parity ^= 1;
  }
  for (int i = 0; i < r; ++i)
    if (k.c[i] == 0) return false;
  return true;
}

}  // namespace

const DominantMultiplicities& weights_of_irrep(const RootDatum& d, const Weight& lam) {
  if (!d.is_dominant(lam)) throw InvalidArgument("weights_of_irrep needs a dominant weight");
  IrrepKey key{static_cast<int>(d.type().family), d.rank(), lam};
  {
    std::lock_guard<std::mutex> lock(g_irrep_mu);
    auto it = g_irrep_cache.find(key);
    if (it != g_irrep_cache.end()) return *it->second;
  }
  auto res = std::make_shared<const DominantMultiplicities>(freudenthal(d, lam));
  std::lock_guard<std::mutex> lock(g_irrep_mu);
  auto [it, ins] = g_irrep_cache.emplace(key, res);
  return *it->second;
}

LaurentPoly char_irrep(const RootDatum& d, const Weight& lam) {
  LaurentPoly p;
  for (const auto& [mu, m] : weights_of_irrep(d, lam))
    for (const auto& w : d.orbit(mu)) p.add_term(w, m);
  return p;
}

BigInt dim_irrep(const RootDatum& d, const Weight& lam) {
  if (!d.is_dominant(lam)) throw InvalidArgument("dim_irrep needs a dominant weight");
  BigInt num = 1, den = 1;
  Weight lr = lam + d.rho();
  for (const auto& a : d.positive_roots()) {
    num *= d.scaled_inner(lr, a);
    den *= d.scaled_inner(d.rho(), a);
  }
  if (num % den != 0) throw Error("Weyl dimension formula is not integral");
  return num / den;
}

BigInt support_size(const RootDatum& d, const Weight& lam) {
  BigInt s = 0;
  for (const auto& [mu, m] : weights_of_irrep(d, lam)) s += d.orbit_size(mu);
  return s;
}

void Character::add(const Weight& lam, const BigInt& c) {
  if (c == 0) return;
  auto [it, ins] = comps.try_emplace(lam, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) comps.erase(it);
  }
}

Character& Character::operator+=(const Character& o) {
  for (const auto& [w, c] : o.comps) add(w, c);
  return *this;
}

Character& Character::operator-=(const Character& o) {
  for (const auto& [w, c] : o.comps) add(w, -c);
  return *this;
}

BigInt Character::dimension(const RootDatum& d) const {
  BigInt s = 0;
  for (const auto& [w, c] : comps) s += c * dim_irrep(d, w);
  return s;
}

std::pair<Weight, BigInt> Character::leading(const RootDatum& d) const {
  if (comps.empty()) throw InvalidArgument("leading term of zero");
  auto best = comps.begin();
  for (auto it = comps.begin(); it != comps.end(); ++it)
    if (d.term_less(best->first, it->first)) best = it;
  return *best;
}

OrbitSums orbit_sums(const RootDatum& d, const Character& x) {
  OrbitSums s;
  for (const auto& [lam, c] : x.comps)
    for (const auto& [mu, m] : weights_of_irrep(d, lam)) {
      auto& slot = s[mu];
      slot += c * m;
    }
  for (auto it = s.begin(); it != s.end();) it = it->second == 0 ? s.erase(it) : std::next(it);
  return s;
}

TermList expand_orbits(const RootDatum& d, const OrbitSums& s) {
  std::vector<std::pair<Weight, BigInt>> dom(s.begin(), s.end());
  std::sort(dom.begin(), dom.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  TermList out;
  for (const auto& [mu, c] : dom)
    for (const auto& w : d.orbit(mu)) out.emplace_back(w, c);
  return out;
}

TermList full_terms(const RootDatum& d, const Character& x) { return expand_orbits(d, orbit_sums(d, x)); }

LaurentPoly to_laurent(const RootDatum& d, const Character& x) {
  LaurentPoly p;
  for (const auto& [w, c] : full_terms(d, x)) p.add_term(w, c);
  return p;
}

namespace {

// Open-addressing accumulator keyed by weight; the set of distinct outputs of a
// product is small compared with the number of contributions, so this stays in cache.
class WeightAccumulator {
 public:
  WeightAccumulator() { resize(1024); }
  __int128& slot(const Weight& w) {
    if ((used_ + 1) * 2 > keys_.size()) resize(keys_.size() * 2);
    size_t mask = keys_.size() - 1, i = WeightHash{}(w) & mask;
    while (full_[i]) {
      if (keys_[i] == w) return vals_[i];
      i = (i + 1) & mask;
    }
    full_[i] = 1;
    keys_[i] = w;
    vals_[i] = 0;
    ++used_;
    return vals_[i];
  }
  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < keys_.size(); ++i)
      if (full_[i]) f(keys_[i], vals_[i]);
  }

 private:
  void resize(size_t n) {
    std::vector<Weight> k(n);
    std::vector<__int128> v(n);
    std::vector<char> f(n, 0);
    std::swap(k, keys_);
    std::swap(v, vals_);
    std::swap(f, full_);
    used_ = 0;
    for (size_t i = 0; i < k.size(); ++i)
      if (f[i]) slot(k[i]) = v[i];
  }
  std::vector<Weight> keys_;
  std::vector<__int128> vals_;
  std::vector<char> full_;
  size_t used_ = 0;
};

BigInt from_int128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  BigInt out = hi << 64;
  out += BigInt(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  return neg ? BigInt(-out) : out;
}

size_t max_bits(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

Character klimyk_mpz(const RootDatum& d, const Character& x, const TermList& g) {
  std::unordered_map<Weight, BigInt, WeightHash> acc;
  const Weight& rho = d.rho();
  int parity;
  for (const auto& [lam, a] : x.comps) {
    Weight base = lam + rho;
    for (const auto& [nu, c] : g) {
      Weight k = base + nu;
      if (!straighten(d, k, parity)) continue;
      k -= rho;
      BigInt& slot = acc[k];
      if (parity)
        mpz_submul(slot.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      else
        mpz_addmul(slot.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    }
  }
  Character out;
  for (auto& [w, c] : acc)
    if (c != 0) out.comps.emplace(w, std::move(c));
  return out;
}

}  // namespace

Character klimyk(const RootDatum& d, const Character& x, const TermList& g) {
  if (x.is_zero() || g.empty()) return {};
  size_t abits = 0, cbits = 0;
  for (const auto& [lam, a] : x.comps) abits = std::max(abits, max_bits(a));
  for (const auto& [nu, c] : g) cbits = std::max(cbits, max_bits(c));
  size_t nbits = max_bits(BigInt(static_cast<unsigned long>(x.comps.size() * g.size())));
  // every partial sum is bounded by count * max|a| * max|c|, so 126 bits cannot overflow
  if (abits > 62 || cbits > 62 || abits + cbits + nbits > 125) return klimyk_mpz(d, x, g);

  std::vector<std::pair<Weight, int64_t>> gs;
  gs.reserve(g.size());
  for (const auto& [nu, c] : g) gs.emplace_back(nu, c.get_si());
  WeightAccumulator acc;
  const Weight& rho = d.rho();
  int parity;
  for (const auto& [lam, a] : x.comps) {
    Weight base = lam + rho;
    __int128 av = a.get_si();
    for (const auto& [nu, c] : gs) {
      Weight k = base + nu;
      if (!straighten(d, k, parity)) continue;
      k -= rho;
      __int128 term = av * c;
      __int128& s = acc.slot(k);
      s = parity ? s - term : s + term;
    }
  }
  Character out;
  acc.for_each([&](const Weight& w, __int128 v) {
    if (v != 0) out.comps.emplace(w, from_int128(v));
  });
  return out;
}

namespace {

BigInt expansion_cost(const RootDatum& d, const Character& x) {
  BigInt best = 0;
  for (const auto& [lam, c] : x.comps) {
    BigInt s = support_size(d, lam);
    if (s > best) best = s;
  }
  return best;
}

}  // namespace

Character multiply(const RootDatum& d, const Character& a, const Character& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BigInt cost_expand_b = expansion_cost(d, b) * static_cast<unsigned long>(a.comps.size());
  BigInt cost_expand_a = expansion_cost(d, a) * static_cast<unsigned long>(b.comps.size());
  if (cost_expand_b <= cost_expand_a) return klimyk(d, a, full_terms(d, b));
  return klimyk(d, b, full_terms(d, a));
}

Character multiply(const RootDatum& d, const Character& a, const LaurentPoly& w_invariant) {
  TermList g(w_invariant.terms().begin(), w_invariant.terms().end());
  return klimyk(d, a, g);
}

Character exact_divide(const RootDatum& d, const Character& r, const Character& q) {
  return exact_divide(d, r, q, full_terms(d, q));
}

Character exact_divide(const RootDatum& d, const Character& r, const Character& q, const TermList& q_full) {
  if (q.is_zero()) throw InvalidArgument("division by zero character");
  auto [qt, qc] = q.leading(d);
  // remainder kept in term order so the leading component is always at the back
  auto cmp = [&d](const Weight& a, const Weight& b) { return d.term_less(a, b); };
  std::map<Weight, BigInt, decltype(cmp)> rem(cmp);
  for (const auto& [w, c] : r.comps) rem.emplace(w, c);
  Character quot;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const Weight rt = top->first;
    const BigInt rc = top->second;
    Weight s = rt - qt;
    if (!d.is_dominant(s) || rc % qc != 0) {
      std::ostringstream os;
      os << "exact division failed: remainder has " << rem.size() << " components, leading " << d.weight_str(rt)
         << " with coefficient " << rc.get_str();
      throw DivisionError(os.str());
    }
    BigInt k = rc / qc;
    quot.add(s, k);
    for (const auto& [w, c] : klimyk(d, Character::irreducible(s, k), q_full).comps) {
      auto [it, ins] = rem.try_emplace(w, 0);
      it->second -= c;
      if (it->second == 0) rem.erase(it);
    }
  }
  return quot;
}

Rational evaluate(const RootDatum& d, const Character& x, MonomialEvaluator& ev) {
  Rational total = 0;
  for (const auto& [mu, c] : orbit_sums(d, x)) {
    Rational s = 0;
    for (const auto& w : d.orbit(mu)) s += ev.value(w);
    total += Rational(c) * s;
  }
  return total;
}

Character character_from_laurent(const RootDatum& d, const LaurentPoly& p) {
  if (!is_w_invariant(d, p)) throw InvalidArgument("polynomial is not W-invariant");
  std::map<Weight, BigInt> dom;
  for (const auto& [w, c] : p.terms())
    if (d.is_dominant(w)) dom.emplace(w, c);
  Character out;
  while (!dom.empty()) {
    auto best = dom.begin();
    for (auto it = dom.begin(); it != dom.end(); ++it)
      if (d.term_less(best->first, it->first)) best = it;
    Weight lam = best->first;
    BigInt c = best->second;
    out.add(lam, c);
    for (const auto& [mu, m] : weights_of_irrep(d, lam)) {
      auto it = dom.find(mu);
      if (it == dom.end()) {
        dom.emplace(mu, -c * m);
      } else {
        it->second -= c * m;
        if (it->second == 0) dom.erase(it);
      }
    }
  }
  return out;
}

DecompositionTable to_table(const Character& x) {
  for (const auto& [w, c] : x.comps)
    if (c < 0) throw InvalidArgument("not a genuine character: negative multiplicity");
  return x.comps;
}

DecompositionTable decompose_character(const RootDatum& d, const LaurentPoly& p) {
  return to_table(character_from_laurent(d, p));
}

}  // namespace krq
