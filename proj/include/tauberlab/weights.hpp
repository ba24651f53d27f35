#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tauberlab/report.hpp"

namespace tauberlab {

// A weight sequence M_p held in log scale (the sequences of interest overflow
// double well before p = 200).  Gevrey sequences are generator backed and can
// be evaluated at arbitrary p; table sequences are fixed.
class WeightSequence {
 public:
  static WeightSequence gevrey(double s, std::size_t depth = 64);
  static WeightSequence table(const std::vector<double>& values);
  // Internal: a sequence given directly by its logs (used for scaled views).
  static WeightSequence from_logs(std::vector<double> log_values);

  std::size_t depth() const { return depth_; }
  // Largest index p for which log_value(p) is computable.
  std::size_t max_index() const;
  bool extendable() const { return generator_ == Generator::kGevrey; }

  double log_value(std::size_t p) const;  // log M_p
  double value(std::size_t p) const;      // M_p; may overflow for large p
  double ratio(std::size_t p) const;      // m_p = M_p / M_{p-1}, p >= 1
  // Generator formula continued to real p (gevrey: p^s); table sequences
  // have no continuation and throw TruncationError.
  double ratio_smooth(double p) const;
  double log_star(std::size_t p) const;   // log M*_p = log(M_p / p!)
  double star_ratio(std::size_t p) const; // m*_p = m_p / p, p >= 1

  bool is_gevrey() const { return generator_ == Generator::kGevrey; }
  double gevrey_s() const { return s_; }
  std::string describe() const;

 private:
  enum class Generator { kGevrey, kTable };
  Generator generator_ = Generator::kTable;
  double s_ = 0.0;
  std::size_t depth_ = 0;
  std::vector<double> log_values_;  // cache for p <= depth_ (table: all)
};

// An (l_p) family: constant in the Beurling case, nondecreasing unbounded in
// the Roumieu case.
class RSequence {
 public:
  static RSequence beurling(double ell);
  static RSequence roumieu_log(double scale = 1.0);  // l_p = scale*log(e + p)
  static RSequence roumieu_pow(double scale, double gamma);
  static RSequence roumieu_table(const std::vector<double>& ells);

  double ell(std::size_t p) const;             // l_p, p >= 1
  double ell_smooth(double p) const;           // formula continued to real p
  double log_cumulative(std::size_t p) const;  // log L_p, L_0 = 1
  std::size_t max_index() const;
  bool is_beurling() const { return kind_ == Kind::kBeurling; }
  std::string describe() const;

 private:
  enum class Kind { kBeurling, kLog, kPow, kTable };
  Kind kind_ = Kind::kBeurling;
  double scale_ = 1.0;
  double gamma_ = 0.0;
  std::vector<double> table_;
  mutable std::vector<double> log_cum_;  // lazily extended prefix of log L_p
};

struct ConditionFit {
  bool flag = false;
  double A = 1.0;
  double H = 1.0;
  double c0 = 0.0;
};

struct ConditionReport {
  std::size_t depth = 0;
  ConditionFit m1, m1_star, m2_prime, m2, m3_prime, m3;
  double sum_inverse_ratios = 0.0;  // partial sum + tail estimate when finite
};

struct AssociatedResult {
  double value = 0.0;
  std::size_t maximizer = 0;  // certified to lie strictly inside the range
};

// spec = "gevrey:<s>" or a value table; depth = cached index count.
WeightSequence build_sequence(const std::string& generator_tag, double param,
                              std::size_t depth);

ConditionReport check_conditions(const WeightSequence& W, std::size_t depth);

// Associated function M(t) = sup_p log(t^p M_0 / M_p), with the supremum
// located through the (M.1) maximizer count.
double associated(const WeightSequence& W, double t);
AssociatedResult associated_info(const WeightSequence& W, double t);

// Associated function of M*_p = M_p / p!; requires (M.1)*.
double star_associated(const WeightSequence& W, double t);

// Associated function of M_p L_p.
double scaled_associated(const WeightSequence& W, const RSequence& R, double t);
// Associated function of (M_p / p!) L_p; this is the N*_{l_p} of the bound
// checks.
double scaled_star_associated(const WeightSequence& W, const RSequence& R,
                              double t);

// Verifies the inequality suite for the scaled sequence M_p L_p on t_grid:
// the (M.2)' consequence for each k in k_list, the (M.2) doubling identity,
// and the star-associated bound (fitted additive constant).
BoundReport verify_condition_bounds(const WeightSequence& W, const RSequence& R,
                                    const std::vector<double>& t_grid,
                                    const std::vector<double>& k_list);

}  // namespace tauberlab
