#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace krq {

constexpr int kMaxRank = 8;

// Integral vector in the fundamental-weight basis. Entries past the rank of the
// ambient root datum are always zero, so equality and hashing need no rank.
struct Weight {
  std::array<int32_t, kMaxRank> c{};

  Weight() = default;
  Weight(std::initializer_list<int> xs) {
    int i = 0;
    for (int x : xs) c[i++] = x;
  }
  static Weight from_vector(const std::vector<int>& xs) {
    Weight w;
    for (size_t i = 0; i < xs.size(); ++i) w.c[i] = xs[i];
    return w;
  }

  int32_t& operator[](int i) { return c[i]; }
  int32_t operator[](int i) const { return c[i]; }

  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return c != o.c; }
  bool operator<(const Weight& o) const { return c < o.c; }

  Weight& operator+=(const Weight& o) {
    for (int i = 0; i < kMaxRank; ++i) c[i] += o.c[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (int i = 0; i < kMaxRank; ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int k, Weight a) {
    for (auto& x : a.c) x *= k;
    return a;
  }
  Weight operator-() const { return (-1) * *this; }

  bool is_zero() const {
    for (auto x : c)
      if (x != 0) return false;
    return true;
  }

  std::vector<int> to_vector(int rank) const { return std::vector<int>(c.begin(), c.begin() + rank); }
  std::string str(int rank) const;
};

struct WeightHash {
  size_t operator()(const Weight& w) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (auto x : w.c) {
      h ^= static_cast<uint32_t>(x);
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace krq
