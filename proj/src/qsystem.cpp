#include "krq/qsystem.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "krq/fermionic.hpp"

namespace krq {

std::string EvalPoint::str() const {
  std::string s = "(";
  for (size_t i = 0; i < y.size(); ++i) s += (i ? "," : "") + to_string(y[i]);
  return s + ")";
}

Character q_initial(const RootDatum& d, int node) { return Character::from_table(kr_decomposition(d, node, 1)); }

BigInt DimRing::div(const BigInt& a, const BigInt& b) const {
  if (b == 0 || a % b != 0) throw DivisionError("dimension recursion is not exact");
  return a / b;
}

Rational EvalRing::initial(int node) const {
  MonomialEvaluator ev(pt.y, d.rank());
  return evaluate(d, q_initial(d, node), ev);
}

Rational EvalRing::div(const Rational& a, const Rational& b) const {
  if (b == 0) throw EvaluationError("Q-system divisor vanishes at " + pt.str() + "; re-draw the evaluation point");
  return a / b;
}

std::vector<Character> char_sequence(const RootDatum& d, int node, int M) {
  QSystem<CharacterRing> qs(CharacterRing{d});
  return qs.sequence(node, M);
}

std::vector<BigInt> dim_sequence(const RootDatum& d, int node, int M) {
  QSystem<DimRing> qs(DimRing{d});
  return qs.sequence(node, M);
}

std::vector<Rational> eval_sequence(const RootDatum& d, int node, const EvalPoint& pt, int M) {
  if (static_cast<int>(pt.y.size()) != d.rank()) throw InvalidArgument("evaluation point has the wrong length");
  for (const auto& v : pt.y)
    if (v == 0) throw EvaluationError("evaluation point has a zero coordinate");
  QSystem<EvalRing> qs(EvalRing{d, pt});
  return qs.sequence(node, M);
}

std::vector<EvalPoint> draw_points(int rank, int count, uint64_t seed) {
  static const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::mt19937_64 rng(seed);
  std::vector<EvalPoint> out;
  for (int n = 0; n < count; ++n) {
    std::vector<int> primes(std::begin(kPrimes), std::end(kPrimes));
    std::shuffle(primes.begin(), primes.end(), rng);
    EvalPoint pt;
    for (int i = 0; i < rank; ++i) {
      int den = 2 + static_cast<int>(rng() % 4);
      pt.y.push_back(Rational(primes[i]) + Rational(1, den));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::string character_json(const RootDatum& d, const Character& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : x.comps) arr.push_back(nlohmann::json::array({w.to_vector(d.rank()), c.get_str()}));
  return arr.dump();
}

Character character_from_json(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  Character x;
  for (const auto& item : arr) {
    auto coords = item.at(0).get<std::vector<int>>();
    x.add(Weight::from_vector(coords), BigInt(item.at(1).get<std::string>()));
  }
  return x;
}

CharCache::CharCache(std::optional<std::filesystem::path> dir) {
  if (dir) {
    dir_ = *dir;
  } else if (const char* env = std::getenv("KRQ_CACHE_DIR"); env && *env) {
    dir_ = env;
  }
}

std::filesystem::path CharCache::path(const RootDatum& d, int node, int m) const {
  return dir_ / d.type().name() / ("node" + std::to_string(node)) / ("m" + std::to_string(m) + ".json");
}

std::optional<Character> CharCache::load(const RootDatum& d, int node, int m) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path(d, node, m));
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto doc = nlohmann::json::parse(ss.str());
    if (doc.at("type") != d.type().name() || doc.at("node") != node || doc.at("m") != m) return std::nullopt;
    return character_from_json(doc.at("components").dump());
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // a truncated file is treated as a miss
  }
}

void CharCache::store(const RootDatum& d, int node, int m, const Character& x) const {
  if (!enabled()) return;
  auto p = path(d, node, m);
  std::filesystem::create_directories(p.parent_path());
  nlohmann::json doc;
  doc["type"] = d.type().name();
  doc["node"] = node;
  doc["m"] = m;
  doc["components"] = nlohmann::json::parse(character_json(d, x));
  // write then rename so an interrupted run never leaves a half-written entry
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump() << '\n';
  }
  std::filesystem::rename(tmp, p);
}

std::vector<Character> cached_char_sequence(const RootDatum& d, int node, int M, const CharCache& cache) {
  QSystem<CharacterRing> qs(CharacterRing{d});
  std::vector<int> loaded(d.rank(), -1);
  if (cache.enabled()) {
    for (int b = 1; b <= d.rank(); ++b) {
      std::vector<Character> pre;
      while (auto x = cache.load(d, b, static_cast<int>(pre.size()))) pre.push_back(std::move(*x));
      loaded[b - 1] = static_cast<int>(pre.size()) - 1;
      if (!pre.empty()) qs.seed(b, std::move(pre));
    }
  }
  auto out = qs.sequence(node, M);
  if (cache.enabled())
    for (int b = 1; b <= d.rank(); ++b)
      for (int m = loaded[b - 1] + 1; m <= qs.computed(b); ++m) cache.store(d, b, m, qs.get(b, m));
  return out;
}

}  // namespace krq
