#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "krq/arith.hpp"
#include "krq/weight.hpp"

namespace krq {

enum class Family { A, B, C, D, E, F, G };

struct LieType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;
  static LieType parse(const std::string& s);  // "G2", "E6", "a3", ...
  bool operator==(const LieType& o) const { return family == o.family && rank == o.rank; }
};

// Immutable Cartan data for a simple Lie algebra. Node numbering (1-based in the
// public vocabulary, 0-based in arrays):
//   B_r node r short, C_r node r long, D_r fork at r-2,
//   E_n chain 1..n-1 with node n attached to node 3,
//   F4 chain 1-2-3-4 with 1,2 long, G2 node 1 long.
class RootDatum {
 public:
  explicit RootDatum(LieType lt);

  const LieType& type() const { return type_; }
  int rank() const { return rank_; }

  int cartan(int i, int j) const { return cartan_[i][j]; }
  const Rational& cartan_inv(int i, int j) const { return cartan_inv_[i][j]; }
  int t(int i) const { return t_[i]; }
  int t_max() const;

  const std::vector<Weight>& positive_roots() const { return pos_roots_; }
  Weight simple_root(int i) const;
  Weight fundamental(int i) const;
  const Weight& theta() const { return theta_; }
  const Weight& rho() const { return rho_; }
  int dual_coxeter() const { return dual_coxeter_; }

  Weight reflect(int i, const Weight& w) const {
    Weight r = w;
    int k = w.c[i];
    if (k != 0)
      for (int b = 0; b < rank_; ++b) r.c[b] -= k * cartan_[b][i];
    return r;
  }
  bool is_dominant(const Weight& w) const {
    for (int i = 0; i < rank_; ++i)
      if (w.c[i] < 0) return false;
    return true;
  }
  Weight dominant_representative(const Weight& w) const;
  // Dominant representative together with the parity of the number of reflections used.
  std::pair<Weight, int> dominant_with_parity(const Weight& w) const;

  std::vector<Weight> orbit(const Weight& lam) const;
  BigInt orbit_size(const Weight& dominant) const;
  BigInt weyl_group_order() const;

  // Coefficients of w in the simple-root basis.
  std::vector<Rational> root_coordinates(const Weight& w) const;
  bool in_root_lattice(const Weight& w) const;
  bool dominance_leq(const Weight& lam, const Weight& mu) const;

  Rational inner_product(const Weight& x, const Weight& y) const;
  // inner_product scaled by ip_scale(), exact integer.
  int64_t scaled_inner(const Weight& x, const Weight& y) const;
  int64_t ip_scale() const { return ip_scale_; }

  // Height in the simple-root basis multiplied by height_scale() (an integer).
  int64_t scaled_height(const Weight& w) const {
    int64_t h = 0;
    for (int i = 0; i < rank_; ++i) h += height_coeff_[i] * w.c[i];
    return h;
  }
  // Total order used for leading terms: height first, then lexicographic.
  bool term_less(const Weight& a, const Weight& b) const {
    int64_t ha = scaled_height(a), hb = scaled_height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  }

  std::string weight_str(const Weight& w) const { return w.str(rank_); }

 private:
  LieType type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> cartan_inv_;
  std::vector<int> t_;
  std::vector<Weight> pos_roots_;
  Weight theta_, rho_;
  int dual_coxeter_ = 0;
  std::vector<std::vector<int64_t>> gram_;  // scaled (omega_a, omega_b)
  int64_t ip_scale_ = 1;
  std::vector<int64_t> height_coeff_;
  std::vector<std::vector<int64_t>> inv_scaled_;  // det * C^{-1}
  int64_t det_ = 1;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

// Cached construction; the same LieType always yields the same instance.
RootDatumPtr root_datum(const LieType& lt);
RootDatumPtr root_datum(const std::string& name);

// Weyl group order of the sub-diagram on the nodes with mask[i] true.
BigInt weyl_order_of_subdiagram(const RootDatum& d, const std::vector<bool>& mask);

}  // namespace krq
