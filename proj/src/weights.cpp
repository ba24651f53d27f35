#include "tauberlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "tauberlab/errors.hpp"

namespace tauberlab {

namespace {

constexpr std::size_t kGevreyMaxIndex = 1'000'000'000;
// The supremum scan widens the maximizer count by this window; under (M.1)
// the float argmax cannot drift further (consecutive gaps dwarf rounding).
constexpr std::size_t kScanWindow = 8;

// View of a log-convex sequence: logs plus nondecreasing ratios.
struct SeqView {
  std::function<double(std::size_t)> log_value;
  std::function<double(std::size_t)> ratio;
  std::size_t max_index;
};

AssociatedResult associated_view(const SeqView& v, double t) {
  if (t < 0.0) throw DomainError("associated: t must be nonnegative");
  if (t == 0.0) return {0.0, 0};
  // p* = #{p >= 1 : m_p <= t} by exponential + binary search.
  std::size_t p_star = 0;
  if (v.max_index >= 1 && v.ratio(1) <= t) {
    std::size_t lo = 1, hi = 1;
    while (hi < v.max_index && v.ratio(hi) <= t) {
      lo = hi;
      hi = std::min(v.max_index, hi * 2);
    }
    // invariant: ratio(lo) <= t; either hi == max or ratio(hi) > t
    while (lo + 1 < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (v.ratio(mid) <= t)
        lo = mid;
      else
        hi = mid;
    }
    p_star = (v.ratio(hi) <= t) ? hi : lo;
  }
  if (p_star + kScanWindow > v.max_index)
    throw TruncationError(
        "associated: maximizer at or beyond cached index range (p* ~ " +
        std::to_string(p_star) + ", max " + std::to_string(v.max_index) + ")");
  const double log_t = std::log(t);
  const double log_m0 = v.log_value(0);
  const std::size_t p_lo = p_star > kScanWindow ? p_star - kScanWindow : 0;
  const std::size_t p_hi = p_star + kScanWindow;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_p = p_lo;
  for (std::size_t p = p_lo; p <= p_hi; ++p) {
    const double val = double(p) * log_t + log_m0 - v.log_value(p);
    // >= so ties resolve to the largest index, matching the count p*.
    if (val >= best) {
      best = val;
      best_p = p;
    }
  }
  if (best < 0.0) {  // the p = 0 term is 0; guard when the window excludes it
    best = 0.0;
    best_p = 0;
  }
  return {best, best_p};
}

// Fits minimal-on-range constants A, H >= 1 with f(p) <= log A + p log H,
// taking log H from a power-of-2^(1/4) ladder and requiring the residual to
// be nonincreasing on the second half of the range (so the fit dominates the
// growth trend, not just the checked indices).
std::optional<std::pair<double, double>> ladder_fit(
    const std::vector<double>& f) {
  const std::size_t n = f.size();
  if (n < 3) return std::nullopt;
  const double step = std::log(2.0) / 4.0;
  for (int j = 0; j <= 48; ++j) {
    const double log_h = j * step;
    bool dominated = true;
    for (std::size_t p = n / 2; p + 1 < n; ++p) {
      const double g0 = f[p] - double(p) * log_h;
      const double g1 = f[p + 1] - double(p + 1) * log_h;
      if (g1 > g0 + 1e-9) {
        dominated = false;
        break;
      }
    }
    if (!dominated) continue;
    double log_a = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      log_a = std::max(log_a, f[p] - double(p) * log_h);
    return std::make_pair(log_a, log_h);
  }
  return std::nullopt;
}

SeqView plain_view(const WeightSequence& W) {
  return {[&W](std::size_t p) { return W.log_value(p); },
          [&W](std::size_t p) { return W.ratio(p); }, W.max_index()};
}

SeqView star_view(const WeightSequence& W) {
  return {[&W](std::size_t p) { return W.log_star(p); },
          [&W](std::size_t p) { return W.star_ratio(p); }, W.max_index()};
}

SeqView scaled_view(const WeightSequence& W, const RSequence& R) {
  return {[&W, &R](std::size_t p) {
            return W.log_value(p) + R.log_cumulative(p);
          },
          [&W, &R](std::size_t p) { return W.ratio(p) * R.ell(p); },
          std::min(W.max_index(), R.max_index())};
}

SeqView scaled_star_view(const WeightSequence& W, const RSequence& R) {
  return {[&W, &R](std::size_t p) {
            return W.log_star(p) + R.log_cumulative(p);
          },
          [&W, &R](std::size_t p) { return W.star_ratio(p) * R.ell(p); },
          std::min(W.max_index(), R.max_index())};
}

void require_monotone_ratios(const SeqView& v, std::size_t upto,
                             const char* what) {
  double prev = v.ratio(1);
  for (std::size_t p = 2; p <= upto; ++p) {
    const double r = v.ratio(p);
    if (r < prev * (1.0 - 1e-12))
      throw PreconditionError(std::string(what) +
                              ": ratios not nondecreasing (log-convexity "
                              "fails near p = " +
                              std::to_string(p) + ")");
    prev = r;
  }
}

}  // namespace

WeightSequence WeightSequence::gevrey(double s, std::size_t depth) {
  if (!(s > 0.0)) throw DomainError("gevrey: s must be positive");
  if (depth < 8) throw DomainError("gevrey: depth must be at least 8");
  WeightSequence w;
  w.generator_ = Generator::kGevrey;
  w.s_ = s;
  w.depth_ = depth;
  w.log_values_.resize(depth + 1);
  for (std::size_t p = 0; p <= depth; ++p)
    w.log_values_[p] = s * std::lgamma(double(p) + 1.0);
  return w;
}

WeightSequence WeightSequence::table(const std::vector<double>& values) {
  if (values.size() < 9)
    throw DomainError("table: need at least 9 values (depth >= 8)");
  WeightSequence w;
  w.generator_ = Generator::kTable;
  w.depth_ = values.size() - 1;
  w.log_values_.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0)) throw DomainError("table: values must be positive");
    w.log_values_.push_back(std::log(v));
  }
  return w;
}

WeightSequence WeightSequence::from_logs(std::vector<double> log_values) {
  WeightSequence w;
  w.generator_ = Generator::kTable;
  w.depth_ = log_values.size() - 1;
  w.log_values_ = std::move(log_values);
  return w;
}

std::size_t WeightSequence::max_index() const {
  return generator_ == Generator::kGevrey ? kGevreyMaxIndex : depth_;
}

double WeightSequence::log_value(std::size_t p) const {
  if (p < log_values_.size()) return log_values_[p];
  if (generator_ == Generator::kGevrey)
    return s_ * std::lgamma(double(p) + 1.0);
  throw TruncationError("weight sequence: index " + std::to_string(p) +
                        " beyond table depth " + std::to_string(depth_));
}

double WeightSequence::value(std::size_t p) const {
  return std::exp(log_value(p));
}

double WeightSequence::ratio(std::size_t p) const {
  if (p == 0) throw DomainError("ratio: p must be >= 1");
  if (generator_ == Generator::kGevrey) return std::pow(double(p), s_);
  return std::exp(log_value(p) - log_value(p - 1));
}

double WeightSequence::log_star(std::size_t p) const {
  return log_value(p) - std::lgamma(double(p) + 1.0);
}

double WeightSequence::ratio_smooth(double p) const {
  if (!(p >= 1.0)) throw DomainError("ratio_smooth: p must be >= 1");
  if (generator_ != Generator::kGevrey)
    throw TruncationError("ratio_smooth: table sequence has no continuation");
  return std::pow(p, s_);
}

double WeightSequence::star_ratio(std::size_t p) const {
  if (p == 0) throw DomainError("star_ratio: p must be >= 1");
  return ratio(p) / double(p);
}

std::string WeightSequence::describe() const {
  if (generator_ == Generator::kGevrey)
    return "gevrey(s=" + std::to_string(s_) + ")";
  return "table(depth=" + std::to_string(depth_) + ")";
}

RSequence RSequence::beurling(double ell) {
  if (!(ell > 0.0)) throw DomainError("RSequence: ell must be positive");
  RSequence r;
  r.kind_ = Kind::kBeurling;
  r.scale_ = ell;
  return r;
}

RSequence RSequence::roumieu_log(double scale) {
  if (!(scale > 0.0)) throw DomainError("RSequence: scale must be positive");
  RSequence r;
  r.kind_ = Kind::kLog;
  r.scale_ = scale;
  return r;
}

RSequence RSequence::roumieu_pow(double scale, double gamma) {
  if (!(scale > 0.0) || !(gamma > 0.0))
    throw DomainError("RSequence: scale and gamma must be positive");
  RSequence r;
  r.kind_ = Kind::kPow;
  r.scale_ = scale;
  r.gamma_ = gamma;
  return r;
}

RSequence RSequence::roumieu_table(const std::vector<double>& ells) {
  if (ells.size() < 2) throw DomainError("RSequence: table too short");
  double prev = 0.0;
  for (double e : ells) {
    if (!(e > 0.0) || e < prev)
      throw DomainError("RSequence: table must be positive nondecreasing");
    prev = e;
  }
  RSequence r;
  r.kind_ = Kind::kTable;
  r.table_ = ells;
  return r;
}

double RSequence::ell(std::size_t p) const {
  if (p == 0) throw DomainError("RSequence: p must be >= 1");
  switch (kind_) {
    case Kind::kBeurling:
      return scale_;
    case Kind::kLog:
      return scale_ * std::log(std::exp(1.0) + double(p));
    case Kind::kPow:
      return scale_ * std::pow(double(p), gamma_);
    case Kind::kTable:
      if (p > table_.size())
        throw TruncationError("RSequence: index beyond table");
      return table_[p - 1];
  }
  return scale_;
}

double RSequence::ell_smooth(double p) const {
  if (!(p >= 1.0)) throw DomainError("RSequence: p must be >= 1");
  switch (kind_) {
    case Kind::kBeurling:
      return scale_;
    case Kind::kLog:
      return scale_ * std::log(std::exp(1.0) + p);
    case Kind::kPow:
      return scale_ * std::pow(p, gamma_);
    case Kind::kTable:
      throw TruncationError("RSequence: table has no continuation");
  }
  return scale_;
}

double RSequence::log_cumulative(std::size_t p) const {
  if (log_cum_.empty()) log_cum_.push_back(0.0);
  while (log_cum_.size() <= p)
    log_cum_.push_back(log_cum_.back() + std::log(ell(log_cum_.size())));
  return log_cum_[p];
}

std::size_t RSequence::max_index() const {
  return kind_ == Kind::kTable ? table_.size() : kGevreyMaxIndex;
}

std::string RSequence::describe() const {
  switch (kind_) {
    case Kind::kBeurling:
      return "beurling(" + std::to_string(scale_) + ")";
    case Kind::kLog:
      return "roumieu_log(" + std::to_string(scale_) + ")";
    case Kind::kPow:
      return "roumieu_pow(" + std::to_string(scale_) + "," +
             std::to_string(gamma_) + ")";
    case Kind::kTable:
      return "roumieu_table(n=" + std::to_string(table_.size()) + ")";
  }
  return "?";
}

WeightSequence build_sequence(const std::string& generator_tag, double param,
                              std::size_t depth) {
  if (depth < 8) throw DomainError("build_sequence: depth must be >= 8");
  if (generator_tag == "gevrey") return WeightSequence::gevrey(param, depth);
  throw DomainError("build_sequence: unknown generator tag '" + generator_tag +
                    "'");
}

namespace {

// Tail-ratio convergence test for sum 1/m_p: compares the second-half block
// sum against the preceding block.  Ratio below 0.75 marks geometric-style
// decay of the blocks, i.e. a numerically certified convergent sum.
struct TailEstimate {
  bool convergent = false;
  double block_ratio = 0.0;
  double tail = 0.0;  // estimated sum beyond the checked depth
};

TailEstimate inverse_ratio_tail(const SeqView& v, std::size_t depth) {
  const std::size_t q1 = depth / 4, q2 = depth / 2;
  double t1 = 0.0, t2 = 0.0;
  for (std::size_t p = q1 + 1; p <= q2; ++p) t1 += 1.0 / v.ratio(p);
  for (std::size_t p = q2 + 1; p <= depth; ++p) t2 += 1.0 / v.ratio(p);
  TailEstimate e;
  e.block_ratio = t1 > 0.0 ? t2 / t1 : 1.0;
  e.convergent = t1 > 0.0 && e.block_ratio <= 0.75;
  if (e.convergent) e.tail = t2 * e.block_ratio / (1.0 - e.block_ratio);
  return e;
}

}  // namespace

ConditionReport check_conditions(const WeightSequence& W, std::size_t depth) {
  if (depth < 3)
    throw InsufficientDataError("check_conditions: depth must be >= 3");
  if (depth > W.max_index())
    throw InsufficientDataError(
        "check_conditions: depth exceeds available indices");
  ConditionReport rep;
  rep.depth = depth;

  auto logconvex = [&](auto log_value) {
    for (std::size_t p = 1; p + 1 <= depth; ++p) {
      const double lhs = 2.0 * log_value(p);
      const double rhs = log_value(p - 1) + log_value(p + 1);
      if (lhs > rhs + 1e-9 + 1e-12 * std::abs(rhs)) return false;
    }
    return true;
  };
  rep.m1.flag = logconvex([&](std::size_t p) { return W.log_value(p); });
  rep.m1_star.flag = logconvex([&](std::size_t p) { return W.log_star(p); });

  // (M.2)': m_{p+1} <= A H^p.
  {
    std::vector<double> f(depth);
    for (std::size_t p = 0; p < depth; ++p)
      f[p] = std::log(W.ratio(p + 1));
    if (auto fit = ladder_fit(f)) {
      rep.m2_prime.flag = true;
      rep.m2_prime.A = std::exp(fit->first);
      rep.m2_prime.H = std::exp(fit->second);
    }
  }
  // (M.2): M_{p+q} <= A H^{p+q} M_p M_q.
  {
    std::vector<double> f(depth + 1);
    for (std::size_t k = 0; k <= depth; ++k) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p <= k; ++p)
        m = std::max(m, W.log_value(k) - W.log_value(p) - W.log_value(k - p));
      f[k] = m;
    }
    if (auto fit = ladder_fit(f)) {
      rep.m2.flag = true;
      rep.m2.A = std::exp(fit->first);
      rep.m2.H = std::exp(fit->second);
    }
  }
  if (rep.m2.flag && !rep.m2_prime.flag) {
    // (M.2) implies (M.2)' (take q = 1); keep the implication in the report.
    rep.m2_prime.flag = true;
    rep.m2_prime.A = rep.m2.A * W.value(1);
    rep.m2_prime.H = rep.m2.H;
  }

  // (M.3)': sum 1/m_p < infinity, certified through block-decay.
  const auto tail = inverse_ratio_tail(plain_view(W), depth);
  rep.m3_prime.flag = tail.convergent;
  if (tail.convergent) {
    double partial = 0.0;
    for (std::size_t p = 1; p <= depth; ++p) partial += 1.0 / W.ratio(p);
    rep.sum_inverse_ratios = partial + tail.tail;
  }

  // (M.3): tail sums dominated by c0 q / m_q; fitted on the checked range and
  // required stable against halving the depth.
  if (rep.m3_prime.flag && depth >= 16) {
    auto fit_c0 = [&](std::size_t d) {
      const auto te = inverse_ratio_tail(plain_view(W), d);
      if (!te.convergent) return std::numeric_limits<double>::infinity();
      std::vector<double> suffix(d + 2, 0.0);
      for (std::size_t p = d; p >= 1; --p)
        suffix[p] = suffix[p + 1] + 1.0 / W.ratio(p);
      double c0 = 0.0;
      for (std::size_t q = 1; q <= d / 2; ++q)
        c0 = std::max(c0, (suffix[q] + te.tail) * W.ratio(q) / double(q));
      return c0;
    };
    const double c_full = fit_c0(depth);
    const double c_half = fit_c0(depth / 2);
    if (std::isfinite(c_full) && std::isfinite(c_half) &&
        std::abs(c_full - c_half) <= 0.25 * std::max(1.0, c_full)) {
      rep.m3.flag = true;
      rep.m3.c0 = c_full;
    }
  }
  return rep;
}

double associated(const WeightSequence& W, double t) {
  return associated_info(W, t).value;
}

AssociatedResult associated_info(const WeightSequence& W, double t) {
  return associated_view(plain_view(W), t);
}

double star_associated(const WeightSequence& W, double t) {
  const auto v = star_view(W);
  require_monotone_ratios(v, std::min<std::size_t>(64, W.max_index()),
                          "star_associated");
  return associated_view(v, t).value;
}

double scaled_associated(const WeightSequence& W, const RSequence& R,
                         double t) {
  return associated_view(scaled_view(W, R), t).value;
}

double scaled_star_associated(const WeightSequence& W, const RSequence& R,
                              double t) {
  const auto v = scaled_star_view(W, R);
  require_monotone_ratios(
      v, std::min<std::size_t>(64, std::min(W.max_index(), R.max_index())),
      "scaled_star_associated");
  return associated_view(v, t).value;
}

namespace {

struct IneqSweep {
  double worst_residual = -std::numeric_limits<double>::infinity();
  double attaining_t = 0.0;
  double a_prime = 0.0;  // fitted constant of the star bound
};

IneqSweep sweep_condition_bounds(const WeightSequence& W, const RSequence& R,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& k_list,
                                 const ConditionFit& m2p,
                                 const ConditionFit& m2,
                                 std::vector<std::pair<std::vector<double>,
                                                       double>>* dump) {
  IneqSweep out;
  const double log_m0 = W.log_value(0);
  const double m1s = W.ratio(1) * R.ell(1);
  auto note = [&](double t, double residual) {
    if (residual > out.worst_residual) {
      out.worst_residual = residual;
      out.attaining_t = t;
    }
    if (dump) dump->push_back({{t}, residual});
  };
  // Fitted constant of the star bound first (its residual is measured
  // against the fitted value).
  double a_prime = 0.0;
  for (double t : t_grid) {
    if (t < m1s + 1.0) continue;
    const double mt = scaled_associated(W, R, t);
    const double arg = t / (4.0 * (m1s + 1.0) * mt);
    a_prime = std::max(a_prime, scaled_star_associated(W, R, arg) - mt);
  }
  out.a_prime = a_prime;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("verify_condition_bounds: t_grid > 0");
    const double mt = scaled_associated(W, R, t);
    // (2.2)
    if (std::log(m2p.H) > 1e-12) {
      for (double k : k_list) {
        const double lhs = mt - scaled_associated(W, R, k * t);
        const double rhs =
            -std::log(t / m2p.A) * std::log(k) / std::log(m2p.H);
        note(t, lhs - rhs);
      }
    }
    // (2.3)
    {
      const double rhs =
          scaled_associated(W, R, m2.H * t) + std::log(m2.A) + log_m0;
      note(t, 2.0 * mt - rhs);
    }
    // (2.4) relative to the fitted constant
    if (t >= m1s + 1.0) {
      const double arg = t / (4.0 * (m1s + 1.0) * mt);
      note(t, scaled_star_associated(W, R, arg) - mt - a_prime);
    }
  }
  return out;
}

}  // namespace

BoundReport verify_condition_bounds(const WeightSequence& W, const RSequence& R,
                                    const std::vector<double>& t_grid,
                                    const std::vector<double>& k_list) {
  if (t_grid.empty()) throw DomainError("verify_condition_bounds: empty grid");
  // Hypotheses are checked for the scaled sequence M_p L_p itself.
  std::vector<double> logs(65);
  for (std::size_t p = 0; p <= 64; ++p)
    logs[p] = W.log_value(p) + R.log_cumulative(p);
  const auto scaled_seq = WeightSequence::from_logs(std::move(logs));
  const auto cond = check_conditions(scaled_seq, 64);
  if (!cond.m2_prime.flag || !cond.m2.flag || !cond.m1_star.flag)
    throw PreconditionError(
        "verify_condition_bounds: scaled sequence fails (M.2)'/(M.2)/(M.1)*");

  BoundReport rep;
  rep.bound_id = "weights/ineq-2.2-2.4";
  rep.grid_description = "t-grid n=" + std::to_string(t_grid.size());
  const auto base = sweep_condition_bounds(W, R, t_grid, k_list,
                                           cond.m2_prime, cond.m2,
                                           &rep.residuals);
  // Refined grid: doubled density and doubled upper range.
  std::vector<double> refined;
  const double t_min = *std::min_element(t_grid.begin(), t_grid.end());
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const std::size_t n_ref = 2 * t_grid.size();
  for (std::size_t i = 0; i < n_ref; ++i)
    refined.push_back(t_min * std::pow(2.0 * t_max / t_min,
                                       double(i) / double(n_ref - 1)));
  const auto ref = sweep_condition_bounds(W, R, refined, k_list,
                                          cond.m2_prime, cond.m2, nullptr);

  rep.log_constant = base.a_prime;
  rep.worst_residual = base.worst_residual;
  rep.attaining_point = {base.attaining_t};
  rep.refinement_stable =
      stable_drift(base.a_prime, ref.a_prime) && ref.worst_residual <= 1e-9;
  rep.pass = base.worst_residual <= 1e-9 && rep.refinement_stable;
  rep.params["A_m2prime"] = cond.m2_prime.A;
  rep.params["H_m2prime"] = cond.m2_prime.H;
  rep.params["A_m2"] = cond.m2.A;
  rep.params["H_m2"] = cond.m2.H;
  rep.params["A_prime"] = base.a_prime;
  return rep;
}

}  // namespace tauberlab
