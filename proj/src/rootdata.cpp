#include "krq/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "krq/errors.hpp"

namespace krq {

std::string Weight::str(int rank) const {
  std::string s = "[";
  for (int i = 0; i < rank; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

std::string LieType::name() const {
  static const char* letters = "ABCDEFG";
  return std::string(1, letters[static_cast<int>(family)]) + std::to_string(rank);
}

LieType LieType::parse(const std::string& s) {
  if (s.size() < 2) throw InvalidArgument("bad Lie type: " + s);
  char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (f < 'A' || f > 'G') throw InvalidArgument("bad Lie type: " + s);
  int r = 0;
  try {
    r = std::stoi(s.substr(1));
  } catch (...) {
    throw InvalidArgument("bad Lie type: " + s);
  }
  LieType lt{static_cast<Family>(f - 'A'), r};
  bool ok = false;
  switch (lt.family) {
    case Family::A: ok = r >= 1; break;
    case Family::B:
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 4; break;
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok || r > kMaxRank) throw InvalidArgument("invalid rank for family: " + s);
  return lt;
}

namespace {

std::vector<std::vector<int>> build_cartan(const LieType& lt) {
  int r = lt.rank;
  std::vector<std::vector<int>> C(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) C[i][i] = 2;
  auto link = [&](int i, int j) { C[i][j] = C[j][i] = -1; };
  switch (lt.family) {
    case Family::A:
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      C[r - 1][r - 2] = -2;  // node r short
      break;
    case Family::C:
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      C[r - 2][r - 1] = -2;  // node r long
      break;
    case Family::D:
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
      link(r - 3, r - 1);
      break;
    case Family::E:
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
      link(2, r - 1);
      break;
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      C[2][1] = -2;
      break;
    case Family::G:
      C[0][1] = -1;
      C[1][0] = -3;
      break;
  }
  return C;
}

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& C) {
  int n = static_cast<int>(C.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = C[i][j];
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    Rational p = a[col][col];
    for (auto& x : a[col]) x /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

BigInt component_weyl_order(const RootDatum& d, const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  int max_prod = 0;
  std::vector<int> degree(n, 0);
  int dbl_a = -1, dbl_b = -1;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      int p = d.cartan(nodes[x], nodes[y]) * d.cartan(nodes[y], nodes[x]);
      if (p == 0) continue;
      ++degree[x];
      ++degree[y];
      if (p > max_prod) max_prod = p;
      if (p == 2) dbl_a = x, dbl_b = y;
    }
  if (max_prod == 3) return 12;
  if (max_prod == 2) {
    if (n == 4 && degree[dbl_a] == 2 && degree[dbl_b] == 2) return 1152;
    return (BigInt(1) << (n)) * factorial(n);
  }
  int branch = -1;
  for (int x = 0; x < n; ++x)
    if (degree[x] == 3) branch = x;
  if (branch < 0) return factorial(n + 1);
  // arm lengths from the branch node
  std::vector<int> arms;
  for (int y = 0; y < n; ++y) {
    if (y == branch || d.cartan(nodes[branch], nodes[y]) == 0) continue;
    int len = 1, prev = branch, cur = y;
    while (true) {
      int next = -1;
      for (int z = 0; z < n; ++z)
        if (z != prev && z != cur && d.cartan(nodes[cur], nodes[z]) != 0) next = z;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return (BigInt(1) << (n - 1)) * factorial(n);
  if (n == 6) return 51840;
  if (n == 7) return 2903040;
  return 696729600;
}

size_t expected_positive_roots(const LieType& lt) {
  size_t r = lt.rank;
  switch (lt.family) {
    case Family::A: return r * (r + 1) / 2;
    case Family::B:
    case Family::C: return r * r;
    case Family::D: return r * (r - 1);
    case Family::E: return r == 6 ? 36 : (r == 7 ? 63 : 120);
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

}  // namespace

RootDatum::RootDatum(LieType lt) : type_(lt), rank_(lt.rank) {
  cartan_ = build_cartan(lt);
  cartan_inv_ = invert(cartan_);

  // determinant via a common denominator of the inverse
  BigInt den = 1;
  for (auto& row : cartan_inv_)
    for (auto& x : row) {
      BigInt g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
      den = g;
    }
  det_ = den.get_si();
  inv_scaled_.assign(rank_, std::vector<int64_t>(rank_, 0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      Rational v = cartan_inv_[i][j] * det_;
      inv_scaled_[i][j] = v.get_num().get_si();
    }

  // half squared lengths: C_ab len_a = C_ba len_b
  std::vector<Rational> len(rank_, Rational(0));
  len[0] = 1;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < rank_; ++b) {
      if (b == a || cartan_[a][b] == 0 || len[b] != 0) continue;
      len[b] = len[a] * cartan_[a][b] / cartan_[b][a];
      stack.push_back(b);
    }
  }
  Rational mx = *std::max_element(len.begin(), len.end());
  t_.resize(rank_);
  for (int a = 0; a < rank_; ++a) {
    Rational tv = mx / len[a];
    t_[a] = static_cast<int>(tv.get_num().get_si());
  }

  int64_t L = 1;
  for (int a = 0; a < rank_; ++a) L = std::lcm(L, static_cast<int64_t>(t_[a]));
  ip_scale_ = det_ * L;
  gram_.assign(rank_, std::vector<int64_t>(rank_, 0));
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) gram_[a][b] = inv_scaled_[b][a] * (L / t_[b]);

  height_coeff_.assign(rank_, 0);
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < rank_; ++i) height_coeff_[j] += inv_scaled_[i][j];

  for (int i = 0; i < rank_; ++i) rho_.c[i] = 1;

  // all roots: closure of the simple roots under reflections
  std::unordered_set<Weight, WeightHash> roots;
  std::vector<Weight> todo;
  for (int i = 0; i < rank_; ++i) {
    Weight a = simple_root(i);
    if (roots.insert(a).second) todo.push_back(a);
  }
  while (!todo.empty()) {
    Weight w = todo.back();
    todo.pop_back();
    for (int i = 0; i < rank_; ++i) {
      Weight r = reflect(i, w);
      if (roots.insert(r).second) todo.push_back(r);
    }
  }
  for (const auto& w : roots)
    if (scaled_height(w) > 0) pos_roots_.push_back(w);
  std::sort(pos_roots_.begin(), pos_roots_.end(),
            [this](const Weight& a, const Weight& b) { return term_less(a, b); });
  if (pos_roots_.size() != expected_positive_roots(lt))
    throw Error("positive root count mismatch for " + lt.name());
  theta_ = pos_roots_.back();

  auto rc = root_coordinates(theta_);
  Rational hv = 1;
  for (int a = 0; a < rank_; ++a) hv += rc[a] / t_[a];
  dual_coxeter_ = static_cast<int>(hv.get_num().get_si());
}

int RootDatum::t_max() const { return *std::max_element(t_.begin(), t_.end()); }

Weight RootDatum::simple_root(int i) const {
  Weight w;
  for (int b = 0; b < rank_; ++b) w.c[b] = cartan_[b][i];
  return w;
}

Weight RootDatum::fundamental(int i) const {
  Weight w;
  w.c[i] = 1;
  return w;
}

Weight RootDatum::dominant_representative(const Weight& w) const { return dominant_with_parity(w).first; }

std::pair<Weight, int> RootDatum::dominant_with_parity(const Weight& w) const {
  Weight x = w;
  int parity = 0;
  while (true) {
    int i = 0;
    while (i < rank_ && x.c[i] >= 0) ++i;
    if (i == rank_) break;
    x = reflect(i, x);
    parity ^= 1;
  }
  return {x, parity};
}

std::vector<Weight> RootDatum::orbit(const Weight& lam) const {
  Weight top = dominant_representative(lam);
  std::unordered_set<Weight, WeightHash> seen{top};
  std::vector<Weight> out{top};
  for (size_t k = 0; k < out.size(); ++k) {
    Weight w = out[k];
    for (int i = 0; i < rank_; ++i) {
      if (w.c[i] <= 0) continue;  // only descend; every orbit element is reachable this way
      Weight r = reflect(i, w);
      if (seen.insert(r).second) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt RootDatum::weyl_group_order() const {
  return weyl_order_of_subdiagram(*this, std::vector<bool>(rank_, true));
}

BigInt RootDatum::orbit_size(const Weight& dominant) const {
  if (!is_dominant(dominant)) throw InvalidArgument("orbit_size needs a dominant weight");
  std::vector<bool> mask(rank_);
  for (int i = 0; i < rank_; ++i) mask[i] = dominant.c[i] == 0;
  return weyl_group_order() / weyl_order_of_subdiagram(*this, mask);
}

BigInt weyl_order_of_subdiagram(const RootDatum& d, const std::vector<bool>& mask) {
  int r = d.rank();
  std::vector<int> comp(r, -1);
  BigInt total = 1;
  for (int s = 0; s < r; ++s) {
    if (!mask[s] || comp[s] >= 0) continue;
    std::vector<int> nodes = {s};
    comp[s] = s;
    for (size_t k = 0; k < nodes.size(); ++k)
      for (int b = 0; b < r; ++b)
        if (mask[b] && comp[b] < 0 && d.cartan(nodes[k], b) != 0) {
          comp[b] = s;
          nodes.push_back(b);
        }
    total *= component_weyl_order(d, nodes);
  }
  return total;
}

std::vector<Rational> RootDatum::root_coordinates(const Weight& w) const {
  std::vector<Rational> out(rank_);
  for (int i = 0; i < rank_; ++i) {
    int64_t s = 0;
    for (int j = 0; j < rank_; ++j) s += inv_scaled_[i][j] * w.c[j];
    out[i] = Rational(s, det_);
    out[i].canonicalize();
  }
  return out;
}

bool RootDatum::in_root_lattice(const Weight& w) const {
  for (int i = 0; i < rank_; ++i) {
    int64_t s = 0;
    for (int j = 0; j < rank_; ++j) s += inv_scaled_[i][j] * w.c[j];
    if (s % det_ != 0) return false;
  }
  return true;
}

bool RootDatum::dominance_leq(const Weight& lam, const Weight& mu) const {
  Weight diff = mu - lam;
  for (int i = 0; i < rank_; ++i) {
    int64_t s = 0;
    for (int j = 0; j < rank_; ++j) s += inv_scaled_[i][j] * diff.c[j];
    if (s < 0) return false;
  }
  return true;
}

int64_t RootDatum::scaled_inner(const Weight& x, const Weight& y) const {
  int64_t s = 0;
  for (int a = 0; a < rank_; ++a) {
    if (x.c[a] == 0) continue;
    int64_t row = 0;
    for (int b = 0; b < rank_; ++b) row += gram_[a][b] * y.c[b];
    s += x.c[a] * row;
  }
  return s;
}

Rational RootDatum::inner_product(const Weight& x, const Weight& y) const {
  Rational r(scaled_inner(x, y), ip_scale_);
  r.canonicalize();
  return r;
}

RootDatumPtr root_datum(const LieType& lt) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, RootDatumPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(lt.family), lt.rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const RootDatum>(lt);
  cache[key] = p;
  return p;
}

RootDatumPtr root_datum(const std::string& name) { return root_datum(LieType::parse(name)); }

}  // namespace krq
