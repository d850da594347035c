#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quelab/eisenstein.hpp"
#include "quelab/geometry.hpp"
#include "quelab/selberg.hpp"

namespace quelab {

// |E|^2 on one surface: the modular surface (s = 1/2 + it) or a Bianchi
// manifold (s = 1 + it).
class SurfaceEvaluator {
 public:
  SurfaceEvaluator() : SurfaceEvaluator(EisensteinH2{}) {}
  explicit SurfaceEvaluator(EisensteinH2 e) : impl_(std::move(e)) {}
  explicit SurfaceEvaluator(EisensteinH3 e) : impl_(std::move(e)) {}

  int dim() const { return impl_.index() == 0 ? 2 : 3; }
  cplx spectral_s(double t) const { return {dim() == 2 ? 0.5 : 1.0, t}; }

  std::vector<cplx> values(const std::vector<Point>& points, double t) const;
  cplx value(const Point& p, double t) const;

  double manifold_volume() const;
  // 1 / vol for the modular surface, |O^*| sqrt|d_K| / (4 vol) for Bianchi.
  double main_term() const;
  // log(1/4 + t^2) in dimension 2, log(1 + t^2) in dimension 3.
  double log_factor(double t) const;
  std::string main_term_convention() const;

  const EisensteinH2* h2() const { return std::get_if<EisensteinH2>(&impl_); }
  const EisensteinH3* h3() const { return std::get_if<EisensteinH3>(&impl_); }

 private:
  std::variant<EisensteinH2, EisensteinH3> impl_;
};

// |d_K|^{3/2} zeta_K(2) / (4 pi^2).
double bianchi_volume(const ImagQuadField& K);

enum class MassMethod { quadrature, monte_carlo };

struct MassOptions {
  MassMethod method = MassMethod::quadrature;
  int order = 32;         // quadrature nodes per polar coordinate
  long samples = 20000;   // Monte Carlo
  std::uint64_t seed = 0;
};

struct MassResult {
  double raw_mass = 0.0;
  double normalized_mass = 0.0;
  double main_term = 0.0;
  double deviation = 0.0;  // normalized_mass - main_term
  MassMethod method = MassMethod::quadrature;
  double std_error = 0.0;  // Monte Carlo only
};

// int_B |E(., s)|^2 with its normalization by log-factor * vol(B).
MassResult ball_mass(const GeodesicBall& ball, double t, const SurfaceEvaluator& evaluator,
                     const MassOptions& options = {});

// |avg - h E(center)| / |h E(center)|; empty when |h E(center)| < 1e-12.
std::optional<double> mean_value_residual(const GeodesicBall& ball, double t,
                                          const SurfaceEvaluator& evaluator, int order = 32);
std::optional<double> mean_value_residual(const MeanValue& mv);

// Trapezoidal int_T^{2T} deviation(t)^2 dt.
double variance_window(const std::function<double(double)>& deviation, double T, double grid_step);
double variance_window(const GeodesicBall& ball, double T, double grid_step,
                       const SurfaceEvaluator& evaluator, const MassOptions& options = {});

}  // namespace quelab
