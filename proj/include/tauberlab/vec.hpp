#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace tauberlab {

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;
using Cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm2(const CVec& z) {
  double s = 0.0;
  for (const auto& zi : z) s += std::norm(zi);
  return std::sqrt(s);
}

inline Vec real_part(const CVec& z) {
  Vec x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i].real();
  return x;
}

inline Vec imag_part(const CVec& z) {
  Vec y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i].imag();
  return y;
}

inline CVec to_cvec(const Vec& x, const Vec& y) {
  CVec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = {x[i], y[i]};
  return z;
}

inline Vec scaled(const Vec& a, double c) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline CVec scaled(const CVec& a, double c) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline int order(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

// Iterate all multi-indices of dimension n with each entry <= per_dim_max and
// total order <= total_max.  Returns false when exhausted.
inline bool next_multi_index(MultiIndex& alpha, int per_dim_max, int total_max) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    ++alpha[i];
    if (alpha[i] <= per_dim_max && order(alpha) <= total_max) return true;
    alpha[i] = 0;
  }
  return false;
}

// Kahan-compensated accumulator; used where cancellation matters.
template <typename T>
class KahanSum {
 public:
  void add(T x) {
    const T y = x - c_;
    const T t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  T value() const { return s_; }

 private:
  T s_{};
  T c_{};
};

}  // namespace tauberlab
