#include "gcyc/pbvp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gcyc/error.hpp"

namespace gcyc {

TimeGrid::TimeGrid(double period, std::size_t n) : period_(period), n_(n) {
  if (!std::isfinite(period) || period <= 0.0) throw Error(ErrorCode::InvalidInput, "time period must be positive");
  if (n < 3) throw Error(ErrorCode::InvalidInput, "time grid needs at least 3 nodes");
}

double TimeGrid::node(std::size_t i) const noexcept {
  if (i + 1 >= n_) return period_;
  return period_ * static_cast<double>(i) / static_cast<double>(n_ - 1);
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = node(i);
  return out;
}

GridFunction GridFunction::constant(const TimeGrid& grid, double c) {
  return GridFunction{grid, std::vector<double>(grid.size(), c)};
}

GridFunction GridFunction::sample(const TimeGrid& grid, const std::function<double(double)>& fn) {
  GridFunction out{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = fn(grid.node(i));
  return out;
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::periodicity_gap() const { return std::abs(values.front() - values.back()); }

double sup_distance(const GridFunction& u, const GridFunction& v) {
  if (u.values.size() != v.values.size()) throw Error(ErrorCode::InvalidInput, "grid functions live on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) m = std::max(m, std::abs(u.values[i] - v.values[i]));
  return m;
}

GreensKernel::GreensKernel(double alpha, double period) : alpha_(alpha), period_(period) {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw Error(ErrorCode::InvalidInput, "kernel needs alpha > 0");
  if (!std::isfinite(period) || period <= 0.0) throw Error(ErrorCode::InvalidInput, "kernel needs a positive period");
  // e^{a(T+s-t)} / (e^{aT} - 1) = e^{a(s-t)} / (1 - e^{-aT})
  scale_ = -1.0 / std::expm1(-alpha * period);
}

double GreensKernel::below(double t, double s) const { return scale_ * std::exp(alpha_ * (s - t)); }

double GreensKernel::above(double t, double s) const { return scale_ * std::exp(alpha_ * (s - t - period_)); }

double GreensKernel::operator()(double t, double s) const {
  if (!(t >= 0.0 && t <= period_ && s >= 0.0 && s <= period_))
    throw Error(ErrorCode::OutOfDomain, "kernel arguments must lie in [0, T]", nlohmann::json{{"t", t}, {"s", s}});
  if (s < t) return below(t, s);
  if (s > t) return above(t, s);
  return t == 0.0 ? above(t, s) : below(t, s);
}

RhsFunction RhsFunction::linear(double a, double b) {
  RhsFunction f(Kind::Linear);
  f.p0_ = a;
  f.p1_ = b;
  return f;
}

RhsFunction RhsFunction::exp_linear(double c) {
  RhsFunction f(Kind::ExpLinear);
  f.p0_ = c;
  return f;
}

RhsFunction RhsFunction::cosine_forced(double lambda, double amplitude, double freq) {
  RhsFunction f(Kind::CosineForced);
  f.p0_ = lambda;
  f.p1_ = amplitude;
  f.p2_ = freq;
  return f;
}

RhsFunction RhsFunction::table(std::vector<double> t, std::vector<double> s, std::vector<std::vector<double>> values) {
  auto increasing = [](const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
      if (!(v[k] > v[k - 1])) return false;
    return v.size() >= 2;
  };
  if (!increasing(t) || !increasing(s))
    throw Error(ErrorCode::InvalidInput, "rhs table axes need at least two strictly increasing values");
  if (values.size() != t.size()) throw Error(ErrorCode::InvalidInput, "rhs table needs one row per t value");
  for (const auto& row : values)
    if (row.size() != s.size()) throw Error(ErrorCode::InvalidInput, "rhs table rows need one value per s value");
  RhsFunction f(Kind::Table);
  f.t_ = std::move(t);
  f.s_ = std::move(s);
  f.values_ = std::move(values);
  return f;
}

namespace {

// Index lo with axis[lo] <= x <= axis[lo+1], or npos outside the axis.
std::size_t bracket(const std::vector<double>& axis, double x) {
  if (!(x >= axis.front() && x <= axis.back())) return static_cast<std::size_t>(-1);
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - axis.begin()), axis.size() - 1);
  return std::max<std::size_t>(hi, 1) - 1;
}

}  // namespace

double RhsFunction::operator()(double t, double s) const {
  double value = 0.0;
  switch (kind_) {
    case Kind::Linear: value = p0_ * s + p1_; break;
    case Kind::ExpLinear: value = p0_ * std::exp(t) * s; break;
    case Kind::CosineForced: value = -p0_ * s + p1_ * std::cos(2.0 * std::numbers::pi * p2_ * t); break;
    case Kind::Table: {
      const std::size_t i = bracket(t_, t);
      const std::size_t j = bracket(s_, s);
      if (i == static_cast<std::size_t>(-1) || j == static_cast<std::size_t>(-1))
        throw Error(ErrorCode::EvaluationFailure, "rhs table has no value at this (t, s)", nlohmann::json{{"t", t}, {"s", s}});
      const double wt = (t - t_[i]) / (t_[i + 1] - t_[i]);
      const double ws = (s - s_[j]) / (s_[j + 1] - s_[j]);
      value = (1 - wt) * (1 - ws) * values_[i][j] + (1 - wt) * ws * values_[i][j + 1] +
              wt * (1 - ws) * values_[i + 1][j] + wt * ws * values_[i + 1][j + 1];
      break;
    }
  }
  if (!std::isfinite(value))
    throw Error(ErrorCode::EvaluationFailure, "rhs is not finite at this (t, s)", nlohmann::json{{"t", t}, {"s", s}});
  return value;
}

std::string RhsFunction::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Linear: out << "linear(a=" << p0_ << ", b=" << p1_ << ")"; break;
    case Kind::ExpLinear: out << "exp_linear(c=" << p0_ << ")"; break;
    case Kind::CosineForced: out << "cosine_forced(lambda=" << p0_ << ", amplitude=" << p1_ << ", freq=" << p2_ << ")"; break;
    case Kind::Table: out << "table(" << t_.size() << "x" << s_.size() << ")"; break;
  }
  return out.str();
}

HFunction HFunction::constant(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidInput, "h must be finite");
  HFunction h(Kind::Constant);
  h.p0_ = value;
  return h;
}

HFunction HFunction::exp_gap(double a) {
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidInput, "h must be finite");
  HFunction h(Kind::ExpGap);
  h.p0_ = a;
  return h;
}

HFunction HFunction::table(std::vector<double> t, std::vector<double> values) {
  if (t.size() < 2 || t.size() != values.size()) throw Error(ErrorCode::InvalidInput, "h table needs at least two knots");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw Error(ErrorCode::InvalidInput, "h table knots must increase");
  HFunction h(Kind::Table);
  h.t_ = std::move(t);
  h.v_ = std::move(values);
  return h;
}

double HFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant: return p0_;
    case Kind::ExpGap: return p0_ - std::exp(t);
    case Kind::Table: {
      if (t <= t_.front()) return v_.front();
      if (t >= t_.back()) return v_.back();
      const std::size_t i = bracket(t_, t);
      const double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
      return v_[i] + w * (v_[i + 1] - v_[i]);
    }
  }
  return 0.0;
}

std::string HFunction::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Constant: out << "const(" << p0_ << ")"; break;
    case Kind::ExpGap: out << "exp_gap(a=" << p0_ << ")"; break;
    case Kind::Table: out << "table(" << t_.size() << ")"; break;
  }
  return out.str();
}

IntegralOperator::IntegralOperator(const GreensKernel& kernel, const TimeGrid& grid)
    : grid_(grid), alpha_(kernel.alpha()) {
  if (std::abs(kernel.period() - grid.period()) > 1e-12 * grid.period())
    throw Error(ErrorCode::InvalidInput, "kernel and grid periods differ");
  const std::size_t n = grid.size();
  const double h = grid.step();
  weights_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.node(i);
    double* row = &weights_[i * n];
    if (i > 0)
      for (std::size_t j = 0; j <= i; ++j) {
        const double w = (j == 0 || j == i) ? 0.5 * h : h;
        row[j] += w * kernel.below(t, grid.node(j));
      }
    if (i + 1 < n)
      for (std::size_t j = i; j < n; ++j) {
        const double w = (j == i || j + 1 == n) ? 0.5 * h : h;
        row[j] += w * kernel.above(t, grid.node(j));
      }
  }
}

std::vector<double> IntegralOperator::integrate(const std::vector<double>& g) const {
  const std::size_t n = grid_.size();
  if (g.size() != n) throw Error(ErrorCode::InvalidInput, "integrand has the wrong length");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = &weights_[i * n];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * g[j];
    out[i] = acc;
  }
  return out;
}

GridFunction IntegralOperator::apply(const RhsFunction& f, const GridFunction& u) const {
  const std::size_t n = grid_.size();
  if (u.values.size() != n) throw Error(ErrorCode::InvalidInput, "grid function does not match the operator grid");
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = f(grid_.node(j), u.values[j]) + alpha_ * u.values[j];
  return GridFunction{grid_, integrate(g)};
}

std::vector<double> IntegralOperator::kernel_mass() const { return integrate(std::vector<double>(grid_.size(), 1.0)); }

GridFunction integral_operator(const GreensKernel& kernel, const RhsFunction& f, const GridFunction& u) {
  return IntegralOperator(kernel, u.grid).apply(f, u);
}

std::vector<double> fd_derivative(const GridFunction& u) {
  const auto& v = u.values;
  const std::size_t n = v.size();
  const double h = u.grid.step();
  std::vector<double> d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> fd_derivative_periodic(const GridFunction& u) {
  auto d = fd_derivative(u);
  const auto& v = u.values;
  const std::size_t n = v.size();
  const double wrap = (v[1] - v[n - 2]) / (2.0 * u.grid.step());
  d[0] = wrap;
  d[n - 1] = wrap;
  return d;
}

GridCheck is_lower_solution(const RhsFunction& f, const GridFunction& w, double tol) {
  const auto d = fd_derivative(w);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = w.grid.node(i);
    const double rhs = f(t, w.values[i]);
    if (d[i] > rhs + tol) return {false, NodeWitness{i, t, d[i], rhs, "w'(t) > f(t, w(t))"}};
  }
  if (w.values.front() > w.values.back() + tol)
    return {false, NodeWitness{0, 0.0, w.values.front(), w.values.back(), "w(0) > w(T)"}};
  return {};
}

namespace {

double ode_residual(const RhsFunction& f, const GridFunction& u, const std::vector<double>& du) {
  double m = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) m = std::max(m, std::abs(du[i] - f(u.grid.node(i), u.values[i])));
  return m;
}

nlohmann::json node_detail(const NodeWitness& w) {
  return {{"node", w.node}, {"t", w.t}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"note", w.note}};
}

void check_beta(PbvpReport& report, const IntegralOperator& op, const HFunction& h, double alpha) {
  const auto& grid = op.grid();
  std::vector<double> hv(grid.size());
  double sup_h = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    hv[i] = h(grid.node(i));
    sup_h = std::max(sup_h, hv[i]);
  }
  report.beta = sup_h / alpha;
  const auto weighted = op.integrate(hv);
  report.beta_quadrature = *std::max_element(weighted.begin(), weighted.end());
  if (!(report.beta < 1.0))
    throw Error(ErrorCode::BetaNotContractive, "sup h / alpha must be below 1",
                nlohmann::json{{"beta", report.beta}, {"sup_h", sup_h}, {"alpha", alpha}});
}

void record_increment(PbvpReport& report, double inc, double floor) {
  if (!report.increments.empty() && report.increments.back() > floor) {
    const double ratio = inc / report.increments.back();
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.increments.push_back(inc);
}

bool pointwise_leq(const GridFunction& a, const GridFunction& b, double tol) {
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] > b.values[i] + tol) return false;
  return true;
}

void finish_report(PbvpReport& report, const RhsFunction& f, const GridFunction& u) {
  report.periodicity = u.periodicity_gap();
  report.ode_residual = ode_residual(f, u, fd_derivative(u));
  report.ode_residual_periodic = ode_residual(f, u, fd_derivative_periodic(u));
  report.sup_norm = u.sup_norm();
}

}  // namespace

PbvpResult solve_pbvp(const PbvpProblem& problem, const PicardOptions& options) {
  const GreensKernel kernel(problem.alpha, problem.grid.period());
  const IntegralOperator op(kernel, problem.grid);
  if (problem.w0.values.size() != problem.grid.size())
    throw Error(ErrorCode::InvalidInput, "w0 does not match the time grid");

  PbvpResult result{problem.w0, {}};
  PbvpReport& report = result.report;
  check_beta(report, op, problem.h, problem.alpha);

  const GridCheck lower = is_lower_solution(problem.f, problem.w0, options.lower_tol);
  report.lower_solution = lower.holds;
  if (options.check_lower_solution && !lower)
    throw Error(ErrorCode::NotLowerSolution, "w0 is not a lower solution: " + lower.witness->note,
                node_detail(*lower.witness));

  GridFunction u = op.apply(problem.f, problem.w0);
  report.iterations = 1;
  report.first_step_monotone = pointwise_leq(problem.w0, u, 1e-12);
  while (report.iterations < options.max_iter) {
    GridFunction next = op.apply(problem.f, u);
    ++report.iterations;
    const double inc = sup_distance(next, u);
    record_increment(report, inc, options.ratio_floor);
    u = std::move(next);
    if (inc <= options.tol) {
      report.converged = true;
      break;
    }
  }
  finish_report(report, problem.f, u);
  result.u = std::move(u);
  if (!report.converged)
    throw Error(ErrorCode::NoConvergence, "Picard iteration did not reach the tolerance",
                nlohmann::json{{"iterations", report.iterations}, {"last_increment", report.increments.back()}});
  return result;
}

std::vector<std::pair<double, double>> ordered_pairs(const std::vector<double>& s) {
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t k = i; k < sorted.size(); ++k) out.emplace_back(sorted[i], sorted[k]);
  return out;
}

namespace {

ConditionCheck check_sup_h(const HFunction& h, double alpha, const std::vector<double>& t_samples) {
  for (double t : t_samples) {
    const double v = h(t);
    if (!(v < alpha)) return {false, ConditionWitness{t, 0.0, 0.0, v, alpha, "sup h >= alpha"}};
  }
  return {};
}

}  // namespace

ConditionCheck verify_condition_iv(const RhsFunction& f1, const RhsFunction& f2, double alpha, const HFunction& h,
                                   const std::vector<double>& t_samples,
                                   const std::vector<std::pair<double, double>>& s_pairs, double tol) {
  if (auto sup = check_sup_h(h, alpha, t_samples); !sup) return sup;
  for (double t : t_samples) {
    const double ht = h(t);
    for (const auto& [s1, s2] : s_pairs) {
      if (s1 > s2) continue;
      const double lhs = std::abs(f1(t, s2) + alpha * s2 - (f2(t, s1) + alpha * s1));
      const double rhs = ht * (s2 - s1);
      if (lhs > rhs + tol) return {false, ConditionWitness{t, s1, s2, lhs, rhs, "two-sided bound fails"}};
    }
  }
  return {};
}

ConditionCheck verify_one_sided_condition(const RhsFunction& f, double alpha, const HFunction& h,
                                          const std::vector<double>& t_samples,
                                          const std::vector<std::pair<double, double>>& s_pairs, double tol) {
  if (auto sup = check_sup_h(h, alpha, t_samples); !sup) return sup;
  for (double t : t_samples) {
    const double ht = h(t);
    for (const auto& [s1, s2] : s_pairs) {
      if (s1 > s2) continue;
      const double gap = f(t, s2) + alpha * s2 - (f(t, s1) + alpha * s1);
      const double rhs = ht * (s2 - s1);
      if (gap < -tol) return {false, ConditionWitness{t, s1, s2, gap, 0.0, "f + alpha I decreases"}};
      if (gap > rhs + tol) return {false, ConditionWitness{t, s1, s2, gap, rhs, "increment exceeds h(t)(s2 - s1)"}};
    }
  }
  return {};
}

CommonPbvpResult solve_common_pbvp(const CommonPbvpProblem& problem, const CommonPbvpOptions& options) {
  const GreensKernel kernel(problem.alpha, problem.grid.period());
  const IntegralOperator op(kernel, problem.grid);
  if (problem.w0.values.size() != problem.grid.size())
    throw Error(ErrorCode::InvalidInput, "w0 does not match the time grid");
  const PicardOptions& picard = options.picard;

  if (options.check_condition_iv) {
    std::vector<double> ts = options.samples.t.empty() ? problem.grid.nodes() : options.samples.t;
    std::vector<double> ss = options.samples.s;
    if (ss.empty()) {
      const double r = std::max(1.0, 4.0 * problem.w0.sup_norm());
      for (int k = 0; k <= 20; ++k) ss.push_back(-r + 2.0 * r * k / 20.0);
    }
    const ConditionCheck iv = verify_condition_iv(problem.f1, problem.f2, problem.alpha, problem.h, ts, ordered_pairs(ss));
    if (!iv) {
      const auto& w = *iv.witness;
      throw Error(ErrorCode::ConditionIvViolated, "condition (iv) fails: " + w.note,
                  nlohmann::json{{"t", w.t}, {"s1", w.s1}, {"s2", w.s2}, {"lhs", w.lhs}, {"rhs", w.rhs}});
    }
  }

  CommonPbvpResult result{problem.w0, {}};
  CommonPbvpReport& report = result.report;
  check_beta(report.picard, op, problem.h, problem.alpha);

  const GridCheck lower = is_lower_solution(problem.f1, problem.w0, picard.lower_tol);
  report.picard.lower_solution = lower.holds;
  if (picard.check_lower_solution && !lower)
    throw Error(ErrorCode::NotLowerSolution, "w0 is not a lower solution: " + lower.witness->note,
                node_detail(*lower.witness));

  // F1 integrates f2 and F2 integrates f1.
  auto step = [&](const GridFunction& x, bool first) { return op.apply(first ? problem.f2 : problem.f1, x); };

  GridFunction u = step(problem.w0, false);
  report.picard.iterations = 1;
  report.picard.first_step_monotone = pointwise_leq(problem.w0, u, options.monotone_tol);
  report.monotone_steps.push_back(report.picard.first_step_monotone);
  if (options.enforce_monotone && !report.picard.first_step_monotone)
    throw Error(ErrorCode::MonotonicityBroken, "first iterate is not above w0", nlohmann::json{{"iteration", 1}});
  bool use_f1_operator = true;
  while (report.picard.iterations < picard.max_iter) {
    GridFunction next = step(u, use_f1_operator);
    use_f1_operator = !use_f1_operator;
    ++report.picard.iterations;
    const double inc = sup_distance(next, u);
    record_increment(report.picard, inc, picard.ratio_floor);
    report.monotone_steps.push_back(pointwise_leq(u, next, options.monotone_tol));
    u = std::move(next);
    if (options.enforce_monotone && !report.monotone_steps.back())
      throw Error(ErrorCode::MonotonicityBroken, "iterate dropped below its predecessor",
                  nlohmann::json{{"iteration", report.picard.iterations}});
    if (inc <= picard.tol) {
      report.residual_f1 = sup_distance(u, step(u, true));
      report.residual_f2 = sup_distance(u, step(u, false));
      if (report.residual_f1 <= picard.tol && report.residual_f2 <= picard.tol) {
        report.picard.converged = true;
        break;
      }
    }
  }
  finish_report(report.picard, problem.f1, u);
  result.u = std::move(u);
  if (!report.picard.converged)
    throw Error(ErrorCode::NoConvergence, "alternating iteration did not reach the tolerance",
                nlohmann::json{{"iterations", report.picard.iterations}});
  return result;
}

}  // namespace gcyc
