#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace nilkl {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-8;   // residual threshold for boolean decisions
inline constexpr double kRankRelTol = 1e-9;   // singular-value cutoff, relative to sigma_max

// Dense rank-3 / rank-4 arrays over a small frame. All index accessors are
// 1-based to match the interface convention used throughout this project.
template <typename S>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int m) : m_(m), v_(static_cast<size_t>(m) * m * m, S{}) {}

  int dim() const { return m_; }
  S& at(int a, int b, int c) { return v_[idx(a, b, c)]; }
  const S& at(int a, int b, int c) const { return v_[idx(a, b, c)]; }

  double max_abs() const {
    double r = 0.0;
    for (const auto& x : v_) r = std::max(r, std::abs(x));
    return r;
  }
  const std::vector<S>& raw() const { return v_; }
  std::vector<S>& raw() { return v_; }

 private:
  size_t idx(int a, int b, int c) const {
    return ((static_cast<size_t>(a - 1) * m_) + (b - 1)) * m_ + (c - 1);
  }
  int m_ = 0;
  std::vector<S> v_;
};

template <typename S>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int m) : m_(m), v_(static_cast<size_t>(m) * m * m * m, S{}) {}

  int dim() const { return m_; }
  S& at(int a, int b, int c, int d) { return v_[idx(a, b, c, d)]; }
  const S& at(int a, int b, int c, int d) const { return v_[idx(a, b, c, d)]; }

  double max_abs() const {
    double r = 0.0;
    for (const auto& x : v_) r = std::max(r, std::abs(x));
    return r;
  }
  const std::vector<S>& raw() const { return v_; }

 private:
  size_t idx(int a, int b, int c, int d) const {
    return (((static_cast<size_t>(a - 1) * m_) + (b - 1)) * m_ + (c - 1)) * m_ + (d - 1);
  }
  int m_ = 0;
  std::vector<S> v_;
};

using CTensor3 = Tensor3<cplx>;
using CTensor4 = Tensor4<cplx>;
using RTensor3 = Tensor3<double>;
using RTensor4 = Tensor4<double>;

// splitmix64. Self-contained so that seeded output is identical on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  cplx cbox() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  uint64_t state_;
};

}  // namespace nilkl
