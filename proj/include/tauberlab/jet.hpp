#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tauberlab/errors.hpp"

namespace tauberlab {

// Truncated Taylor series in one variable: a[k] is the k-th Taylor
// coefficient, so f^(k) = k! * a[k].  Used to get exact higher derivatives of
// composite expressions (bump profiles and friends) without symbolic algebra.
class Jet {
 public:
  Jet(std::size_t length, double value) : a_(length, 0.0) { a_[0] = value; }

  static Jet variable(std::size_t length, double value) {
    Jet j(length, value);
    if (length > 1) j.a_[1] = 1.0;
    return j;
  }

  std::size_t length() const { return a_.size(); }
  double coeff(std::size_t k) const { return a_[k]; }

  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= double(i);
    return a_[k] * f;
  }

  friend Jet operator+(const Jet& x, const Jet& y) {
    Jet r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }
  friend Jet operator-(const Jet& x, const Jet& y) {
    Jet r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }
  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet r(x.a_.size(), 0.0);
    for (std::size_t i = 0; i < x.a_.size(); ++i) {
      if (x.a_[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < x.a_.size(); ++j)
        r.a_[i + j] += x.a_[i] * y.a_[j];
    }
    return r;
  }
  friend Jet operator*(double c, const Jet& x) {
    Jet r = x;
    for (auto& v : r.a_) v *= c;
    return r;
  }
  friend Jet operator+(const Jet& x, double c) {
    Jet r = x;
    r.a_[0] += c;
    return r;
  }
  friend Jet operator-(double c, const Jet& x) {
    Jet r = -1.0 * x;
    r.a_[0] += c;
    return r;
  }

  // 1 / x, requires x(0) != 0.
  Jet reciprocal() const {
    if (a_[0] == 0.0) throw DomainError("jet: reciprocal of zero");
    Jet r(a_.size(), 1.0 / a_[0]);
    for (std::size_t k = 1; k < a_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += a_[j] * r.a_[k - j];
      r.a_[k] = -s / a_[0];
    }
    return r;
  }

  Jet exp() const {
    Jet r(a_.size(), std::exp(a_[0]));
    // r' = x' r  =>  (k+1) r[k+1] = sum_{j} (j+1) x[j+1] r[k-j]
    for (std::size_t k = 0; k + 1 < a_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j)
        s += double(j + 1) * a_[j + 1] * r.a_[k - j];
      r.a_[k + 1] = s / double(k + 1);
    }
    return r;
  }

 private:
  std::vector<double> a_;
};

}  // namespace tauberlab
