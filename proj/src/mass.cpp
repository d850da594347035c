#include "quelab/mass.hpp"

#include <cmath>

#include "quelab/quadrature.hpp"
#include "quelab/zeta.hpp"

namespace quelab {

double bianchi_volume(const ImagQuadField& K) {
  const double d = -double(K.d_K);
  return std::pow(d, 1.5) * dedekind_zeta(K, 2.0).real() / (4.0 * kPi * kPi);
}

std::vector<cplx> SurfaceEvaluator::values(const std::vector<Point>& points, double t) const {
  const cplx s = spectral_s(t);
  if (const auto* e = h2()) {
    std::vector<PointH2> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
      if (!std::holds_alternative<PointH2>(p)) throw UsageError("evaluator: expected points of H^2");
      pts.push_back(std::get<PointH2>(p));
    }
    return e->eval_many(pts, s);
  }
  std::vector<PointH3> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (!std::holds_alternative<PointH3>(p)) throw UsageError("evaluator: expected points of H^3");
    pts.push_back(std::get<PointH3>(p));
  }
  return h3()->eval_many(pts, s);
}

cplx SurfaceEvaluator::value(const Point& p, double t) const { return values({p}, t).front(); }

double SurfaceEvaluator::manifold_volume() const {
  if (h2()) return kPi / 3.0;
  return bianchi_volume(h3()->options().field);
}

double SurfaceEvaluator::main_term() const {
  if (h2()) return 1.0 / manifold_volume();
  const ImagQuadField& K = h3()->options().field;
  return K.unit_count * K.sqrt_abs_dK() / (4.0 * manifold_volume());
}

double SurfaceEvaluator::log_factor(double t) const {
  return std::log((dim() == 2 ? 0.25 : 1.0) + t * t);
}

std::string SurfaceEvaluator::main_term_convention() const {
  return h2() ? "3/pi" : "units*sqrt|d_K|/(4 vol)";
}

MassResult ball_mass(const GeodesicBall& ball, double t, const SurfaceEvaluator& evaluator,
                     const MassOptions& options) {
  ball.validate();
  if (ball.n != evaluator.dim()) throw UsageError("ball_mass: ball and evaluator dimensions differ");
  const double vol = ball_volume(ball.n, ball.R);
  const double logf = evaluator.log_factor(t);
  if (!(logf > 0.0)) throw DomainError("ball_mass: log factor must be positive");
  MassResult out;
  out.method = options.method;
  if (options.method == MassMethod::quadrature) {
    const BallNodes nodes = ball_nodes(ball, options.order);
    const std::vector<cplx> v = evaluator.values(nodes.points, t);
    std::vector<double> terms(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) terms[i] = nodes.weights[i] * std::norm(v[i]);
    out.raw_mass = pairwise_sum(terms);
  } else {
    if (options.samples < 1000) throw UsageError("ball_mass: Monte Carlo needs at least 1000 samples");
    const std::vector<cplx> v = evaluator.values(sample_ball(ball, options.seed, options.samples), t);
    std::vector<double> f(v.size()), f2(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      f[i] = std::norm(v[i]);
      f2[i] = f[i] * f[i];
    }
    const double n = double(v.size());
    const double mean = pairwise_sum(f) / n;
    const double var = std::max(0.0, pairwise_sum(f2) / n - mean * mean) * n / (n - 1.0);
    out.raw_mass = vol * mean;
    out.std_error = vol * std::sqrt(var / n);
  }
  out.normalized_mass = out.raw_mass / (logf * vol);
  out.main_term = evaluator.main_term();
  out.deviation = out.normalized_mass - out.main_term;
  return out;
}

std::optional<double> mean_value_residual(const MeanValue& mv) {
  if (std::abs(mv.predicted) < 1e-12) return std::nullopt;
  return std::abs(mv.avg - mv.predicted) / std::abs(mv.predicted);
}

std::optional<double> mean_value_residual(const GeodesicBall& ball, double t,
                                          const SurfaceEvaluator& evaluator, int order) {
  ball.validate();
  if (ball.n != evaluator.dim()) throw UsageError("mean_value_residual: dimension mismatch");
  BallNodes nodes = ball_nodes(ball, order);
  nodes.points.push_back(ball.center);
  const std::vector<cplx> v = evaluator.values(nodes.points, t);
  std::vector<cplx> terms(nodes.weights.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = nodes.weights[i] * v[i];
  MeanValue mv;
  mv.avg = pairwise_sum(terms) / ball_volume(ball.n, ball.R);
  mv.predicted = h_char({ball.n, ball.R}, t) * v.back();
  return mean_value_residual(mv);
}

double variance_window(const std::function<double(double)>& deviation, double T, double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 0.5) throw UsageError("variance_window: grid_step must be in (0, 0.5]");
  if (!(T >= 5.0)) throw UsageError("variance_window: T must be at least 5");
  const long n = static_cast<long>(std::ceil(T / grid_step - 1e-9));
  const double h = T / double(n);
  std::vector<double> terms(n + 1);
  for (long i = 0; i <= n; ++i) {
    const double d = deviation(T + h * double(i));
    terms[i] = (i == 0 || i == n ? 0.5 : 1.0) * h * d * d;
  }
  return pairwise_sum(terms);
}

double variance_window(const GeodesicBall& ball, double T, double grid_step,
                       const SurfaceEvaluator& evaluator, const MassOptions& options) {
  return variance_window([&](double t) { return ball_mass(ball, t, evaluator, options).deviation; },
                         T, grid_step);
}

}  // namespace quelab
