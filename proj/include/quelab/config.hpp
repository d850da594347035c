#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quelab/common.hpp"
#include "quelab/eisenstein.hpp"
#include "quelab/mass.hpp"
#include "quelab/zeta.hpp"

namespace quelab {

enum class ExperimentKind { omega_scan, qe_scan, variance, moments, selberg_check, eval };

enum class RadiusKind { fixed, power, planck };

struct RadiusRule {
  RadiusKind kind = RadiusKind::fixed;
  double R = 0.5;      // fixed
  double delta = 0.5;  // power: R = t^{-delta}
  double a = 1.0;      // planck: R = (log t)^a / t

  double radius(double t) const;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::qe_scan;
  bool kind_given = false;  // set when the file names a kind
  int surface_D = 0;  // 0: modular surface, otherwise Bianchi over Q(sqrt D)
  double t_start = 10.0, t_stop = 10.0, t_step = 1.0;
  std::vector<double> t_values;  // overrides the grid when non-empty
  RadiusRule radius;

  // Center: a Heegner form, or explicit coordinates.
  std::optional<BinaryQuadraticForm> heegner;
  PointH2 center_h2{0.0, 1.0};
  PointH3 center_h3{0.0, 1.0};

  // Numerics.
  MassOptions mass;
  long truncation = 0;
  long norm_cap = 0;
  H2Normalization normalization = H2Normalization::standard;
  ZetaMethod zeta_method = ZetaMethod::euler_maclaurin;
  double grid_step = 0.5;  // variance
  int moment_k = 2;        // moments: integrand |zeta|^{2k}

  std::uint64_t seed = 0;

  int dim() const { return surface_D == 0 ? 2 : 3; }
  std::vector<double> t_grid() const;
  Point center() const;
  void validate() const;
};

// Config text:
//   [experiment] kind, surface (h2 | bianchi(D)), t_start, t_stop, t_step,
//                t_values, radius (fixed | power | planck), R, delta, a,
//                preset, seed
//   [center]     heegner = a, b, c | x, y | z_re, z_im, r
//   [numerics]   method, order, samples, truncation, norm_cap,
//                normalization, zeta, grid_step, moment_k
// Throws UsageError naming the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

ExperimentKind parse_kind(const std::string& name);  // "omega-scan" or "omega_scan"
std::string kind_name(ExperimentKind kind);

// Radius presets with R = t^{-delta}: delta-third (1/3), delta-two-fifths
// (2/5), delta-three-quarters (3/4).
RadiusRule radius_preset(const std::string& name);

}  // namespace quelab
