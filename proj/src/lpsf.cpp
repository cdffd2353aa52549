#include "krq/lpsf.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <atomic>
#include <set>
#include <thread>

#include "krq/errors.hpp"

namespace krq {

namespace {

std::string no_table(const RootDatum& d, int node) {
  return "no proven lattice point summation table for " + d.type().name() + " node " + std::to_string(node);
}

// Fundamental weight by 1-based index, with index 0 standing for the zero weight.
Weight fw(const RootDatum& d, int i) { return i == 0 ? Weight{} : d.fundamental(i - 1); }

bool build_table(const RootDatum& d, int a, LpsfTable& t) {
  const int r = d.rank();
  t.node = a;
  auto push = [&](int b, const Weight& w) {
    t.b.push_back(b);
    t.lambda.push_back(w);
  };
  // parity ladder omega_{a mod 2}, ..., omega_a with a common step b
  auto ladder = [&](int top, int b) {
    for (int i = top % 2; i <= top; i += 2) push(b, fw(d, i));
  };
  switch (d.type().family) {
    case Family::A:
      push(1, fw(d, a));
      return true;
    case Family::B:
      if (a < r) {
        ladder(a, 1);
      } else {
        ladder(r - 2, 2);
        push(1, fw(d, r));
      }
      return true;
    case Family::C:
      if (a < r) {
        // step-two parts carry doubled weights; see the decisions note in the README
        for (int i = 0; i < a; ++i) push(2, 2 * fw(d, i));
        push(1, fw(d, a));
      } else {
        push(1, fw(d, a));
      }
      return true;
    case Family::D:
      if (a <= r - 2)
        ladder(a, 1);
      else
        push(1, fw(d, a));
      return true;
    case Family::E: {
      using Row = std::vector<std::pair<int, int>>;  // (b, fundamental index)
      std::map<int, Row> rows;
      if (r == 6) rows = {{1, {{1, 1}}}, {2, {{1, 2}, {1, 5}}}, {4, {{1, 1}, {1, 4}}}, {5, {{1, 5}}}, {6, {{1, 0}, {1, 6}}}};
      if (r == 7) rows = {{1, {{1, 0}, {1, 1}}}, {5, {{1, 0}, {1, 1}, {1, 5}}}, {6, {{1, 6}}}, {7, {{1, 6}, {1, 7}}}};
      if (r == 8) rows = {{1, {{1, 0}, {1, 1}, {1, 7}}}, {7, {{1, 0}, {1, 7}}}};
      auto it = rows.find(a);
      if (it == rows.end()) return false;
      for (auto [b, i] : it->second) push(b, fw(d, i));
      return true;
    }
    case Family::F:
      if (a == 1) {
        push(1, fw(d, 0));
        push(1, fw(d, 1));
        return true;
      }
      if (a == 4) {
        push(2, fw(d, 0));
        push(2, fw(d, 1));
        push(1, fw(d, 4));
        return true;
      }
      return false;
    case Family::G:
      if (a != 1) return false;
      push(1, fw(d, 0));
      push(1, fw(d, 1));
      return true;
  }
  return false;
}

}  // namespace

bool lpsf_covered(const RootDatum& d, int node) {
  if (node < 1 || node > d.rank()) return false;
  LpsfTable t;
  return build_table(d, node, t);
}

LpsfTable lpsf_table(const RootDatum& d, int node) {
  if (node < 1 || node > d.rank()) throw InvalidArgument("node out of range");
  LpsfTable t;
  if (!build_table(d, node, t)) throw UncoveredNode(no_table(d, node));
  return t;
}

std::vector<std::vector<int>> lattice_points(const std::vector<int>& b, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> x(b.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t j, int rest) {
    if (j + 1 == b.size()) {
      if (rest % b[j] == 0) {
        x[j] = rest / b[j];
        out.push_back(x);
      }
      return;
    }
    for (int v = 0; v * b[j] <= rest; ++v) {
      x[j] = v;
      rec(j + 1, rest - v * b[j]);
    }
  };
  if (!b.empty()) rec(0, m);
  return out;
}

Character lpsf_character(const RootDatum& d, int node, int m) {
  auto t = lpsf_table(d, node);
  Character out;
  for (const auto& x : lattice_points(t.b, m)) {
    Weight lam;
    for (size_t j = 0; j < x.size(); ++j) lam += x[j] * t.lambda[j];
    out.add(lam, 1);
  }
  return out;
}

long p_ef(int m, int j1, int j2, int j3, int j4) {
  return std::min(1L + j3, 1L + m - j1 - 2L * j2 - j3 - j4) * (j4 + 1L);
}

long p_g2(int j0, int j1, int j2) {
  long f0 = floor_div(j0, 3);
  return (std::min(f0, floor_div(j2 - j0, 3) + f0) + 1) * (j1 + 1L);
}

bool ef_covered(const RootDatum& d, int node) {
  const auto& lt = d.type();
  return (lt.family == Family::E && ((lt.rank == 6 && node == 3) || (lt.rank == 7 && node == 2) ||
                                     (lt.rank == 8 && node == 6))) ||
         (lt.family == Family::F && node == 2);
}

std::vector<Weight> ef_weights(const RootDatum& d, int node) {
  if (!ef_covered(d, node))
    throw UncoveredNode("no conjectural step-polynomial formula for " + d.type().name() + " node " +
                        std::to_string(node));
  auto f = [&](int i) { return d.fundamental(i - 1); };
  if (d.type().family == Family::F) return {2 * f(4), 2 * f(3), f(2), f(1)};
  switch (d.rank()) {
    case 6:
      return {f(1) + f(5), f(2) + f(4), f(3), f(6)};
    case 7:
      return {f(5), f(3), f(2), f(1)};
    default:
      return {f(1), f(5), f(6), f(7)};
  }
}

DecompositionTable conj_ef_table(const RootDatum& d, int node, int m) {
  auto lam = ef_weights(d, node);
  DecompositionTable out;
  for (int j1 = 0; j1 <= m; ++j1)
    for (int j2 = 0; j1 + 2 * j2 <= m; ++j2)
      for (int j3 = 0; j1 + 2 * j2 + j3 <= m; ++j3)
        for (int j4 = 0; j1 + 2 * j2 + j3 + j4 <= m; ++j4) {
          long p = p_ef(m, j1, j2, j3, j4);
          if (p <= 0) continue;
          Weight w = j1 * lam[0] + j2 * lam[1] + j3 * lam[2] + j4 * lam[3];
          out[w] += p;
        }
  return out;
}

DecompositionTable g2_node2_table(int m) {
  DecompositionTable out;
  for (int j1 = 0; 3 * j1 <= m; ++j1)
    for (int j2 = 0; 3 * j1 + j2 <= m; ++j2) {
      int j0 = m - 3 * j1 - j2;
      long p = p_g2(j0, j1, j2);
      if (p < 0) throw Error("negative multiplicity in the G2 step-polynomial");
      if (p > 0) out[Weight{j1, j2}] += p;
    }
  return out;
}

namespace {

// Power series in t truncated at t^N with polynomial coefficients in x_1..x_k.
using Series = std::vector<LaurentPoly>;

Series series_one(int N) {
  Series s(N + 1);
  s[0] = LaurentPoly::constant(1);
  return s;
}

Series series_mul(const Series& a, const Series& b) {
  const int N = static_cast<int>(a.size()) - 1;
  Series out(N + 1);
  for (int i = 0; i <= N; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= N; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

// 1 / (1 - c t^k) for a monomial c.
Series geometric(const LaurentPoly& c, int k, int N) {
  Series s(N + 1);
  LaurentPoly p = LaurentPoly::constant(1);
  for (int j = 0; j * k <= N; ++j) {
    s[j * k] = p;
    p = p * c;
  }
  return s;
}

LaurentPoly xv(int i) {
  Weight w;
  w[i - 1] = 1;
  return LaurentPoly::monomial(w);
}

LaurentPoly xmono(std::initializer_list<int> e) { return LaurentPoly::monomial(Weight(e)); }

// Product of 1/(1 - c t^k) over the given factors, times an optional numerator.
Series rational(const std::vector<std::pair<LaurentPoly, int>>& den, int N, const Series* num = nullptr) {
  Series s = num ? *num : series_one(N);
  for (const auto& [c, k] : den) s = series_mul(s, geometric(c, k, N));
  return s;
}

void compare(GfReport& rep, const std::string& what, const Series& lhs, const Series& rhs) {
  for (size_t m = 0; m < lhs.size(); ++m)
    if (lhs[m] != rhs[m]) {
      rep.ok = false;
      rep.failures.push_back(what + " differs at t^" + std::to_string(m));
      return;
    }
}

}  // namespace

GfReport gf_check_ef(int N) {
  GfReport rep;
  rep.truncation = N;
  Series P(N + 1), A(N + 1), B(N + 1);
  for (int m = 0; m <= N; ++m) {
    for (int j1 = 0; j1 <= m; ++j1)
      for (int j2 = 0; j1 + 2 * j2 <= m; ++j2)
        for (int j3 = 0; j1 + 2 * j2 + j3 <= m; ++j3)
          for (int j4 = 0; j1 + 2 * j2 + j3 + j4 <= m; ++j4) {
            LaurentPoly x = xmono({j1, j2, j3, j4});
            x *= BigInt(p_ef(m, j1, j2, j3, j4));
            P[m] += x;
            int j0 = m - j1 - 2 * j2 - j3 - j4;
            LaurentPoly y = xmono({j1, j2, j3, j4});
            if (j0 >= j3) {
              y *= BigInt((1L + j3) * (1L + j4));
              A[m] += y;
            } else {
              y *= BigInt((1L + j0) * (1L + j4));
              B[m] += y;
            }
          }
  }
  LaurentPoly one = LaurentPoly::constant(1);
  Series closed_p = rational({{one, 1}, {xv(1), 1}, {xv(2), 2}, {xv(3), 1}, {xv(3), 2}, {xv(4), 1}, {xv(4), 1}}, N);
  Series closed_a = rational({{one, 1}, {xv(1), 1}, {xv(2), 2}, {xv(3), 2}, {xv(3), 2}, {xv(4), 1}, {xv(4), 1}}, N);
  Series numb(N + 1);
  if (N >= 1) numb[1] = xv(3);
  Series closed_b = rational({{xv(1), 1}, {xv(2), 2}, {xv(3), 1}, {xv(3), 2}, {xv(3), 2}, {xv(4), 1}, {xv(4), 1}}, N, &numb);
  Series sum(N + 1);
  for (int m = 0; m <= N; ++m) sum[m] = A[m] + B[m];
  compare(rep, "direct sum vs closed form", P, closed_p);
  compare(rep, "split a_m + b_m vs direct sum", sum, P);
  compare(rep, "a_m vs its closed form", A, closed_a);
  compare(rep, "b_m vs its closed form", B, closed_b);
  return rep;
}

GfReport gf_check_g2(int N) {
  GfReport rep;
  rep.truncation = N;
  Series P(N + 1), Aser(N + 1), Bs(N + 1), Cs(N + 1), Ds(N + 1);
  for (int m = 0; m <= N; ++m)
    for (int j1 = 0; 3 * j1 <= m; ++j1)
      for (int j2 = 0; 3 * j1 + j2 <= m; ++j2) {
        int j0 = m - 3 * j1 - j2;
        LaurentPoly x = xmono({j1, j2});
        auto add = [&](Series& s, long c) {
          if (c == 0) return;
          LaurentPoly y = x;
          y *= BigInt(c);
          s[m] += y;
        };
        add(P, p_g2(j0, j1, j2));
        add(Aser, p_g2(j0, 0, j2));
        add(Bs, floor_div(j0, 3));
        if (j2 <= j0) add(Cs, floor_div(j2 - j0, 3));
        add(Ds, 1);
      }
  LaurentPoly one = LaurentPoly::constant(1);
  compare(rep, "direct sum vs closed form", P,
          rational({{one, 3}, {xv(1), 3}, {xv(1), 3}, {xv(2), 1}, {xv(2), 2}}, N));
  compare(rep, "a_m vs its closed form", Aser, rational({{one, 3}, {xv(1), 3}, {xv(2), 1}, {xv(2), 2}}, N));
  Series t3(N + 1), mt1(N + 1);
  if (N >= 3) t3[3] = one;
  if (N >= 1) mt1[1] = LaurentPoly::constant(-1);
  compare(rep, "b_m vs its closed form", Bs, rational({{one, 1}, {one, 3}, {xv(1), 3}, {xv(2), 1}}, N, &t3));
  compare(rep, "c_m vs its closed form", Cs, rational({{one, 1}, {one, 3}, {xv(1), 3}, {xv(2), 2}}, N, &mt1));
  compare(rep, "d_m vs its closed form", Ds, rational({{one, 1}, {xv(1), 3}, {xv(2), 1}}, N));
  Series split(N + 1), euler(N + 1);
  for (int m = 0; m <= N; ++m) {
    split[m] = Bs[m] + Cs[m] + Ds[m];
    // (1 + x_1 d/dx_1) applied coefficientwise
    for (const auto& [w, c] : Aser[m].terms()) euler[m].add_term(w, c * (1 + w[0]));
  }
  compare(rep, "b_m + c_m + d_m vs a_m", split, Aser);
  compare(rep, "(1 + x1 d/dx1) A vs direct sum", euler, P);
  return rep;
}

namespace {

using Frame = std::array<Weight, 5>;

// W listed through the images of (rho, lambda_1..lambda_4) with signs; rho is
// regular, so its image identifies the element. Breadth-first, hence deterministic.
std::vector<std::pair<Frame, int>> weyl_frames(const RootDatum& d, const std::vector<Weight>& lam) {
  if (d.weyl_group_order() > 100000)
    throw InvalidArgument("Weyl group of " + d.type().name() + " is too large for the alternating-sum evaluation");
  std::vector<std::pair<Frame, int>> elements;
  std::set<Weight> seen{d.rho()};
  std::vector<std::pair<Frame, int>> level{{Frame{d.rho(), lam[0], lam[1], lam[2], lam[3]}, 1}};
  while (!level.empty()) {
    std::vector<std::pair<Frame, int>> next;
    for (const auto& [f, sign] : level) {
      for (int k = 0; k < d.rank(); ++k) {
        Frame g;
        for (size_t j = 0; j < f.size(); ++j) g[j] = d.reflect(k, f[j]);
        if (seen.insert(g[0]).second) next.emplace_back(g, -sign);
      }
    }
    elements.insert(elements.end(), level.begin(), level.end());
    level = std::move(next);
  }
  return elements;
}

}  // namespace

size_t ef_weyl_element_count(const RootDatum& d) {
  if (d.weyl_group_order() > 100000)
    throw InvalidArgument("Weyl group of " + d.type().name() + " is too large for the alternating-sum evaluation");
  return static_cast<size_t>(d.weyl_group_order().get_ui());
}

EfPartialSum conj_ef_partial_sum(const RootDatum& d, int node, const std::vector<Rational>& y, int M, size_t begin,
                                 size_t end) {
  auto lam = ef_weights(d, node);
  auto elements = weyl_frames(d, lam);
  end = std::min(end, elements.size());
  // factors (1 - t^b e^mu) of the generating function; index -1 is the trivial weight
  const std::pair<int, int> factors[] = {{1, -1}, {1, 0}, {2, 1}, {1, 2}, {2, 2}, {1, 3}, {1, 3}};
  unsigned workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  std::vector<EfPartialSum> partial(workers);
  std::atomic<size_t> cursor{begin};
  auto work = [&](unsigned id) {
    MonomialEvaluator ev(y, d.rank());
    auto& out = partial[id];
    out.numer.assign(static_cast<size_t>(M) + 1, 0);
    std::vector<Rational> s(static_cast<size_t>(M) + 1);
    for (size_t e = cursor++; e < end; e = cursor++) {
      const auto& [f, sign] = elements[e];
      Rational lead = ev.value(f[0]);
      if (sign < 0) lead = -lead;
      out.denom += lead;
      std::fill(s.begin(), s.end(), Rational(0));
      s[0] = 1;
      for (const auto& [b, i] : factors) {
        Rational x = i < 0 ? Rational(1) : ev.value(f[static_cast<size_t>(i) + 1]);
        for (int m = b; m <= M; ++m) s[m] += x * s[m - b];
      }
      for (int m = 0; m <= M; ++m) out.numer[m] += lead * s[m];
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
  for (auto& th : pool) th.join();
  EfPartialSum total;
  total.numer.assign(static_cast<size_t>(M) + 1, 0);
  for (const auto& p : partial) {
    total.denom += p.denom;
    for (int m = 0; m <= M; ++m) total.numer[m] += p.numer[m];
  }
  return total;
}

std::vector<Rational> conj_ef_eval_sequence(const RootDatum& d, int node, const std::vector<Rational>& y, int M) {
  auto sum = conj_ef_partial_sum(d, node, y, M, 0, ef_weyl_element_count(d));
  if (sum.denom == 0) throw EvaluationError("Weyl denominator vanishes at this point; re-draw the evaluation point");
  for (auto& v : sum.numer) v /= sum.denom;
  return sum.numer;
}

}  // namespace krq
