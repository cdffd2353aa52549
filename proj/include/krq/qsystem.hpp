#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "krq/character.hpp"
#include "krq/errors.hpp"
#include "krq/rootdata.hpp"

namespace krq {

struct EvalPoint {
  std::vector<Rational> y;
  std::string str() const;
};

// Q_1 from the fermionic formula, in the irreducible basis. Nodes are 1-based.
Character q_initial(const RootDatum& d, int node);

// Ring adaptors for the generic engine below.
struct CharacterRing {
  using Value = Character;
  const RootDatum& d;
  Value one() const { return Character::one(); }
  Value initial(int node) const { return q_initial(d, node); }
  Value mul(const Value& a, const Value& b) const { return multiply(d, a, b); }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value div(const Value& a, const Value& b) const { return exact_divide(d, a, b); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
};

struct DimRing {
  using Value = BigInt;
  const RootDatum& d;
  Value one() const { return 1; }
  Value initial(int node) const { return q_initial(d, node).dimension(d); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value div(const Value& a, const Value& b) const;
  bool equal(const Value& a, const Value& b) const { return a == b; }
};

struct EvalRing {
  using Value = Rational;
  const RootDatum& d;
  EvalPoint pt;
  Value one() const { return 1; }
  Value initial(int node) const;
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value div(const Value& a, const Value& b) const;
  bool equal(const Value& a, const Value& b) const { return a == b; }
};

// Demand-driven solver of the Q-system. get(a, n) computes exactly the
// entries it needs across all nodes, following the floor-index couplings.
template <class Ring>
class QSystem {
 public:
  using Value = typename Ring::Value;

  explicit QSystem(Ring ring) : ring_(std::move(ring)), seq_(ring_.d.rank()) {}

  const Value& get(int node, int n) {
    ensure(node - 1, n);
    return seq_[node - 1][n];
  }
  std::vector<Value> sequence(int node, int M) {
    ensure(node - 1, M);
    return std::vector<Value>(seq_[node - 1].begin(), seq_[node - 1].begin() + M + 1);
  }
  int computed(int node) const { return static_cast<int>(seq_[node - 1].size()) - 1; }
  void seed(int node, std::vector<Value> values) { seq_[node - 1] = std::move(values); }

  // (Q_m)^2 - Q_{m+1} Q_{m-1} - neighbour product, which must vanish.
  bool relation_holds(int node, int m) {
    int a = node - 1;
    ensure(a, m + 1);
    Value lhs = ring_.mul(seq_[a][m], seq_[a][m]);
    Value rhs = ring_.mul(seq_[a][m + 1], seq_[a][m - 1]);
    Value nb = neighbour_product(a, m);
    return ring_.equal(ring_.sub(lhs, rhs), nb);
  }

  const Ring& ring() const { return ring_; }

 private:
  Value neighbour_product(int a, int m) {
    const RootDatum& d = ring_.d;
    std::optional<Value> prod;
    for (int b = 0; b < d.rank(); ++b) {
      int cab = d.cartan(a, b);
      if (b == a || cab >= 0) continue;
      for (int k = 0; k < -cab; ++k) {
        long idx = floor_div(static_cast<long>(d.cartan(b, a)) * m - k, cab);
        ensure(b, static_cast<int>(idx));
        const Value& q = seq_[b][idx];
        prod = prod ? ring_.mul(*prod, q) : q;
      }
    }
    return prod ? *prod : ring_.one();
  }

  void ensure(int a, int n) {
    if (n < 0) throw Error("negative Q-system index requested");
    auto& s = seq_[a];
    if (s.empty()) s.push_back(ring_.one());
    if (n >= 1 && s.size() < 2) s.push_back(ring_.initial(a + 1));
    while (static_cast<int>(s.size()) <= n) {
      int m = static_cast<int>(s.size()) - 1;
      Value nb = neighbour_product(a, m);
      if (static_cast<int>(s.size()) != m + 1) continue;  // filled in by a nested request
      Value num = ring_.sub(ring_.mul(seq_[a][m], seq_[a][m]), nb);
      Value next = ring_.div(num, seq_[a][m - 1]);
      seq_[a].push_back(std::move(next));
    }
  }

  Ring ring_;
  std::vector<std::vector<Value>> seq_;
};

std::vector<Character> char_sequence(const RootDatum& d, int node, int M);
std::vector<BigInt> dim_sequence(const RootDatum& d, int node, int M);
std::vector<Rational> eval_sequence(const RootDatum& d, int node, const EvalPoint& pt, int M);

// Reproducible evaluation points: coordinates p/q with distinct small primes.
std::vector<EvalPoint> draw_points(int rank, int count, uint64_t seed);

// Canonical JSON of a character: components sorted by weight, coefficients as decimal strings.
std::string character_json(const RootDatum& d, const Character& x);
Character character_from_json(const std::string& text);

// On-disk cache of Q_m^(a), one file per (type, node, m). The directory comes
// from the argument, else KRQ_CACHE_DIR, else caching is disabled.
class CharCache {
 public:
  explicit CharCache(std::optional<std::filesystem::path> dir = std::nullopt);
  bool enabled() const { return !dir_.empty(); }
  std::optional<Character> load(const RootDatum& d, int node, int m) const;
  void store(const RootDatum& d, int node, int m, const Character& x) const;
  std::filesystem::path path(const RootDatum& d, int node, int m) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

// Symbolic sequence through index M, reading and writing the cache.
std::vector<Character> cached_char_sequence(const RootDatum& d, int node, int M, const CharCache& cache);

}  // namespace krq
