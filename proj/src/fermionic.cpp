#include "krq/fermionic.hpp"

#include <algorithm>
#include <mutex>

#include "krq/errors.hpp"

namespace krq {

const std::vector<std::vector<int>>& partitions(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> mult(n + 1, 0);
  // parts in nonincreasing order; largest allowed part shrinks as we recurse
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(mult);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      ++mult[p];
      self(self, rest - p, p);
      --mult[p];
    }
  };
  rec(rec, n, n);
  return cache.emplace(n, std::move(out)).first->second;
}

namespace {

struct VacancyContext {
  const RootDatum& d;
  std::vector<std::vector<int>> nu;  // nu[a][j]
  int max_width(const MConfig& cfg, int a) const {
    int w = static_cast<int>(nu[a].size()) - 1;
    for (int b = 0; b < d.rank(); ++b) {
      if (d.cartan(a, b) == 0) continue;
      int kmax = 0;
      for (int k = 1; k < static_cast<int>(cfg[b].size()); ++k)
        if (cfg[b][k] > 0) kmax = k;
      // beyond t_a*kmax/t_b every min() has saturated
      w = std::max(w, (d.t(a) * kmax + d.t(b) - 1) / d.t(b));
    }
    return std::max(w, 1);
  }
  long vacancy(const MConfig& cfg, int a, int i) const {
    long first = 0;
    for (int j = 1; j < static_cast<int>(nu[a].size()); ++j) first += static_cast<long>(nu[a][j]) * std::min(i, j);
    long second = 0;  // times t_a
    for (int b = 0; b < d.rank(); ++b) {
      int cab = d.cartan(a, b);
      if (cab == 0) continue;
      long s = 0;
      for (int k = 1; k < static_cast<int>(cfg[b].size()); ++k)
        if (cfg[b][k]) s += static_cast<long>(cfg[b][k]) * std::min(d.t(b) * i, d.t(a) * k);
      second += cab * s;
    }
    if (second % d.t(a) != 0) throw Error("non-integral vacancy number");
    return first - second / d.t(a);
  }
};

VacancyContext make_context(const RootDatum& d, const NuSpec& nu) {
  VacancyContext ctx{d, std::vector<std::vector<int>>(d.rank(), std::vector<int>(1, 0))};
  for (const auto& [key, count] : nu) {
    auto [node, width] = key;
    if (node < 1 || node > d.rank() || width < 1) throw InvalidArgument("bad nu specification");
    auto& row = ctx.nu[node - 1];
    if (static_cast<int>(row.size()) <= width) row.resize(width + 1, 0);
    row[width] += count;
  }
  return ctx;
}

}  // namespace

long vacancy(const RootDatum& d, const NuSpec& nu, const MConfig& cfg, int node, int i) {
  auto ctx = make_context(d, nu);
  MConfig c = cfg;
  c.resize(d.rank());
  for (auto& row : c)
    if (row.empty()) row.assign(1, 0);
  return ctx.vacancy(c, node - 1, i);
}

BigInt fermionic_multiplicity(const RootDatum& d, const NuSpec& nu, const Weight& lam) {
  if (!d.is_dominant(lam)) throw InvalidArgument("fermionic multiplicity needs a dominant weight");
  const int r = d.rank();
  auto ctx = make_context(d, nu);
  Weight top;
  for (const auto& [key, count] : nu) top.c[key.first - 1] += key.second * count;
  auto rc = d.root_coordinates(top - lam);
  std::vector<int> target(r);
  for (int a = 0; a < r; ++a) {
    if (rc[a].get_den() != 1 || rc[a] < 0) return 0;
    target[a] = static_cast<int>(rc[a].get_num().get_si());
  }

  // breadth-first node order so each node's neighbourhood completes early
  std::vector<int> order{0};
  std::vector<bool> placed(r, false);
  placed[0] = true;
  for (size_t k = 0; k < order.size(); ++k)
    for (int b = 0; b < r; ++b)
      if (!placed[b] && d.cartan(order[k], b) != 0) {
        placed[b] = true;
        order.push_back(b);
      }
  std::vector<int> pos(r);
  for (int k = 0; k < r; ++k) pos[order[k]] = k;
  // nodes whose vacancies become checkable once position k is assigned
  std::vector<std::vector<int>> ready(r);
  for (int a = 0; a < r; ++a) {
    int last = pos[a];
    for (int b = 0; b < r; ++b)
      if (d.cartan(a, b) != 0) last = std::max(last, pos[b]);
    ready[last].push_back(a);
  }

  MConfig cfg(r, std::vector<int>(1, 0));
  BigInt total = 0;
  auto rec = [&](auto&& self, int k, const BigInt& acc) -> void {
    if (k == r) {
      total += acc;
      return;
    }
    int a = order[k];
    for (const auto& part : partitions(target[a])) {
      cfg[a] = part;
      if (cfg[a].empty()) cfg[a].assign(1, 0);
      BigInt prod = acc;
      bool ok = true;
      for (int b : ready[k]) {
        int wmax = ctx.max_width(cfg, b);
        for (int i = 1; i <= wmax && ok; ++i) {
          long p = ctx.vacancy(cfg, b, i);
          if (p < 0) {
            ok = false;
            break;
          }
          int mi = i < static_cast<int>(cfg[b].size()) ? cfg[b][i] : 0;
          if (mi > 0) prod *= binomial(p + mi, mi);
        }
        if (!ok) break;
      }
      if (ok) self(self, k + 1, prod);
    }
    cfg[a].assign(1, 0);
  };
  rec(rec, 0, BigInt(1));
  return total;
}

DecompositionTable kr_decomposition(const RootDatum& d, int node, int m) {
  if (node < 1 || node > d.rank()) throw InvalidArgument("node out of range");
  DecompositionTable out;
  if (m == 0) {
    out.emplace(Weight{}, 1);
    return out;
  }
  NuSpec nu{{{node, m}, 1}};
  Weight top = m * d.fundamental(node - 1);
  for (const auto& [lam, mult] : weights_of_irrep(d, top)) {
    BigInt c = fermionic_multiplicity(d, nu, lam);
    if (c > 0) out.emplace(lam, c);
  }
  return out;
}

}  // namespace krq
