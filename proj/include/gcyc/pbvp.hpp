#pragma once

// Periodic boundary value problems u' = f(t, u), u(0) = u(T), solved as fixed
// points of the Green's-kernel integral operator on a uniform time grid.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gcyc {

class TimeGrid {
 public:
  /// Throws `Error{InvalidInput}` unless period > 0 and n >= 3.
  TimeGrid(double period, std::size_t n);

  double period() const noexcept { return period_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return period_ / static_cast<double>(n_ - 1); }
  /// Exact endpoints: node(0) = 0, node(n-1) = period.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

 private:
  double period_;
  std::size_t n_;
};

struct GridFunction {
  TimeGrid grid;
  std::vector<double> values;

  static GridFunction constant(const TimeGrid& grid, double c);
  static GridFunction sample(const TimeGrid& grid, const std::function<double(double)>& fn);

  double sup_norm() const;
  /// |u(0) - u(T)|.
  double periodicity_gap() const;
};

double sup_distance(const GridFunction& u, const GridFunction& v);

class GreensKernel {
 public:
  /// Throws `Error{InvalidInput}` unless alpha > 0 and period > 0.
  GreensKernel(double alpha, double period);

  double alpha() const noexcept { return alpha_; }
  double period() const noexcept { return period_; }

  /// Two-branch kernel; at s = t the s < t branch is used, except at t = 0 where
  /// only the s > t branch exists. Throws `Error{OutOfDomain}` outside [0, T]^2.
  double operator()(double t, double s) const;
  /// Branch values with s on the given side of t, allowing s = t.
  double below(double t, double s) const;
  double above(double t, double s) const;

 private:
  double alpha_;
  double period_;
  double scale_;  // 1 / (1 - e^{-alpha T})
};

/// Right-hand side f(t, s) of the ODE.
class RhsFunction {
 public:
  enum class Kind { Linear, ExpLinear, CosineForced, Table };

  /// a s + b.
  static RhsFunction linear(double a, double b = 0.0);
  /// c e^t s.
  static RhsFunction exp_linear(double c);
  /// -lambda s + amplitude cos(2 pi freq t).
  static RhsFunction cosine_forced(double lambda = 1.0, double amplitude = 1.0, double freq = 1.0);
  /// Bilinear interpolation of values[i][j] at (t[i], s[j]); no extrapolation.
  static RhsFunction table(std::vector<double> t, std::vector<double> s, std::vector<std::vector<double>> values);

  /// Throws `Error{EvaluationFailure}` outside a table's range or on a non-finite value.
  double operator()(double t, double s) const;

  Kind kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  explicit RhsFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  double p0_ = 0.0;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::vector<double> t_;
  std::vector<double> s_;
  std::vector<std::vector<double>> values_;
};

/// Comparison function h(t) bounding the one-sided Lipschitz gap.
class HFunction {
 public:
  static HFunction constant(double value);
  /// a - e^t.
  static HFunction exp_gap(double a);
  static HFunction table(std::vector<double> t, std::vector<double> values);

  double operator()(double t) const;
  std::string describe() const;

 private:
  enum class Kind { Constant, ExpGap, Table };
  explicit HFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  double p0_ = 0.0;
  std::vector<double> t_;
  std::vector<double> v_;
};

/// Trapezoid weights W[i][j] for the integral of G(t_i, s) g(s) over [0, T],
/// with each row split at s = t_i.
class IntegralOperator {
 public:
  IntegralOperator(const GreensKernel& kernel, const TimeGrid& grid);

  const TimeGrid& grid() const noexcept { return grid_; }
  double alpha() const noexcept { return alpha_; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i * grid_.size() + j]; }

  /// Integral of G(t_i, s) g(s) for each node, summed left to right.
  std::vector<double> integrate(const std::vector<double>& g) const;
  /// (F u)(t) = integral of G(t, s) [f(s, u(s)) + alpha u(s)].
  GridFunction apply(const RhsFunction& f, const GridFunction& u) const;
  /// Row sums; each approximates 1/alpha.
  std::vector<double> kernel_mass() const;

 private:
  TimeGrid grid_;
  double alpha_;
  std::vector<double> weights_;
};

GridFunction integral_operator(const GreensKernel& kernel, const RhsFunction& f, const GridFunction& u);

/// Finite-difference derivative: central inside, second-order one-sided at the ends.
std::vector<double> fd_derivative(const GridFunction& u);
/// Same, but the ends use the periodic wrap u(-h) = u(T - h).
std::vector<double> fd_derivative_periodic(const GridFunction& u);

struct NodeWitness {
  std::size_t node = 0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

struct GridCheck {
  bool holds = true;
  std::optional<NodeWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// w' <= f(t, w) + tol at every node and w(0) <= w(T) + tol.
GridCheck is_lower_solution(const RhsFunction& f, const GridFunction& w, double tol = 1e-9);

struct PbvpProblem {
  RhsFunction f;
  double alpha = 1.0;
  HFunction h;
  TimeGrid grid;
  GridFunction w0;
};

struct PicardOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  bool check_lower_solution = true;
  double lower_tol = 1e-9;
  /// Increments below this are too small for a meaningful ratio.
  double ratio_floor = 1e-13;
};

struct PbvpReport {
  std::size_t iterations = 0;
  bool converged = false;
  double beta = 0.0;             // sup h / alpha on the grid
  double beta_quadrature = 0.0;  // max_i sum_j W_ij h(t_j)
  std::vector<double> increments;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double periodicity = 0.0;
  double ode_residual = 0.0;
  double ode_residual_periodic = 0.0;
  double sup_norm = 0.0;
  bool lower_solution = false;
  bool first_step_monotone = false;
};

struct PbvpResult {
  GridFunction u;
  PbvpReport report;
};

/// Picard iteration u_{k+1} = F u_k from u_1 = F w0. Throws
/// `Error{BetaNotContractive}`, `Error{NotLowerSolution}` or `Error{NoConvergence}`.
PbvpResult solve_pbvp(const PbvpProblem& problem, const PicardOptions& options = {});

struct ConditionSamples {
  std::vector<double> t;  // empty: the grid nodes
  std::vector<double> s;  // empty: 21 points on [-R, R] with R = max(1, 4 |w0|)
};

struct ConditionWitness {
  double t = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

struct ConditionCheck {
  bool holds = true;
  std::optional<ConditionWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// |f1(t,s2) + alpha s2 - (f2(t,s1) + alpha s1)| <= h(t)(s2 - s1) + tol for every
/// sampled s1 <= s2, and sup h < alpha.
ConditionCheck verify_condition_iv(const RhsFunction& f1, const RhsFunction& f2, double alpha, const HFunction& h,
                                   const std::vector<double>& t_samples,
                                   const std::vector<std::pair<double, double>>& s_pairs, double tol = 1e-9);

/// 0 <= f(t,s2) + alpha s2 - (f(t,s1) + alpha s1) <= h(t)(s2 - s1) + tol for
/// every sampled s1 <= s2, and sup h < alpha.
ConditionCheck verify_one_sided_condition(const RhsFunction& f, double alpha, const HFunction& h,
                                          const std::vector<double>& t_samples,
                                          const std::vector<std::pair<double, double>>& s_pairs, double tol = 1e-9);

/// All ordered pairs (s_i, s_k) with s_i <= s_k.
std::vector<std::pair<double, double>> ordered_pairs(const std::vector<double>& s);

struct CommonPbvpProblem {
  RhsFunction f1;
  RhsFunction f2;
  double alpha = 1.0;
  HFunction h;
  TimeGrid grid;
  GridFunction w0;
};

struct CommonPbvpOptions {
  PicardOptions picard;
  ConditionSamples samples;
  bool check_condition_iv = true;
  /// Fail when an iterate drops below its predecessor by more than this.
  double monotone_tol = 1e-10;
  bool enforce_monotone = true;
};

struct CommonPbvpReport {
  PbvpReport picard;
  std::vector<bool> monotone_steps;
  double residual_f1 = 0.0;  // |u - F1 u|
  double residual_f2 = 0.0;  // |u - F2 u|
};

struct CommonPbvpResult {
  GridFunction u;
  CommonPbvpReport report;
};

/// Alternates F1 (built on f2) and F2 (built on f1) from x0 = F2 w0. Throws
/// `Error{ConditionIvViolated}`, `Error{NotLowerSolution}`,
/// `Error{MonotonicityBroken}` or `Error{NoConvergence}`.
CommonPbvpResult solve_common_pbvp(const CommonPbvpProblem& problem, const CommonPbvpOptions& options = {});

}  // namespace gcyc
