#include "quelab/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <json.hpp>

#include "quelab/parallel.hpp"
#include "quelab/selberg.hpp"

namespace quelab {

namespace {

SurfaceEvaluator make_evaluator(const ExperimentConfig& cfg) {
  if (cfg.dim() == 2) {
    EisensteinH2::Options o;
    o.truncation = cfg.truncation;
    o.normalization = cfg.normalization;
    return SurfaceEvaluator(EisensteinH2(o));
  }
  EisensteinH3::Options o;
  o.field = make_field(cfg.surface_D);
  o.norm_cap = cfg.norm_cap;
  return SurfaceEvaluator(EisensteinH3(o));
}

void fill_mass(ResultRow& row, const MassResult& m, const SurfaceEvaluator& ev) {
  row.raw_mass = m.raw_mass;
  row.normalized_mass = m.normalized_mass;
  row.main_term = m.main_term;
  row.deviation = m.deviation;
  row.main_term_convention = ev.main_term_convention();
}

ResultRow compute_row(const ExperimentConfig& cfg, const SurfaceEvaluator& ev, const ZetaBackend& backend,
                      std::size_t index, double t) {
  ResultRow row;
  row.t = t;
  const int n = cfg.dim();
  MassOptions mass = cfg.mass;
  mass.seed = cfg.seed + index;
  auto ball = [&](double R) { return GeodesicBall{n, cfg.center(), R}; };
  switch (cfg.kind) {
    case ExperimentKind::omega_scan: {
      const double R = cfg.radius.radius(t);
      row.R = R;
      const HeegnerPoint w = make_heegner(cfg.heegner->a, cfg.heegner->b, cfg.heegner->c);
      fill_mass(row, ball_mass(ball(R), t, ev, mass), ev);
      const LowerBound lb = lower_bound_avg(w, R, t, *ev.h2());
      row.lower_bound = lb.bound;
      row.h_value = lb.h;
      break;
    }
    case ExperimentKind::qe_scan: {
      const double R = cfg.radius.radius(t);
      row.R = R;
      fill_mass(row, ball_mass(ball(R), t, ev, mass), ev);
      row.h_value = h_char({n, R}, t).real();
      if (cfg.heegner) {
        const HeegnerPoint w = make_heegner(cfg.heegner->a, cfg.heegner->b, cfg.heegner->c);
        row.lower_bound = lower_bound_avg(w, R, t, *ev.h2()).bound;
      }
      break;
    }
    case ExperimentKind::variance: {
      const double R = cfg.radius.radius(t);
      row.R = R;
      row.value = variance_window(ball(R), t, cfg.grid_step, ev, mass);
      break;
    }
    case ExperimentKind::moments: {
      if (n == 2) {
        row.value = zeta_moment(cfg.moment_k, t, backend, 1);
      } else {
        if (cfg.moment_k != 2) throw UsageError("moments: Bianchi surfaces support moment_k = 2 only");
        row.value = dedekind_fourth_moment(make_field(cfg.surface_D), t, backend, 1).direct;
      }
      break;
    }
    case ExperimentKind::selberg_check: {
      const double R = cfg.radius.radius(t);
      row.R = R;
      row.h_value = h_char({n, R}, t).real();
      if (n == 3) {
        row.value = h_closed_h3(R, t).real();
      } else if (R * t >= 5.0 && R <= 0.2) {
        row.value = h_bessel_asym({n, R}, t);
      }
      break;
    }
    case ExperimentKind::eval:
      row.value = std::abs(ev.value(cfg.center(), t));
      break;
  }
  return row;
}

std::string format_number(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  const SurfaceEvaluator ev = make_evaluator(config);
  const ZetaBackend backend(config.zeta_method);
  const std::vector<double> grid = config.t_grid();
  std::vector<ResultRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      rows[i] = compute_row(config, ev, backend, i, grid[i]);
    } catch (const std::exception& e) {
      rows[i] = ResultRow{};
      rows[i].t = grid[i];
      rows[i].error = e.what();
    }
    rows[i].wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.R) << ',' << format_number(r.raw_mass) << ','
        << format_number(r.normalized_mass) << ',' << format_number(r.main_term) << ','
        << format_number(r.deviation) << ',' << format_number(r.lower_bound) << ','
        << format_number(r.h_value) << ','
        << (timing ? format_number(r.wall_time_ms) : std::string()) << ',' << format_number(r.value) << ','
        << csv_escape(r.error) << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows, const ExperimentConfig& config,
                 bool timing) {
  auto cell = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(config.kind);
    j["t"] = r.t;
    j["R"] = cell(r.R);
    j["raw_mass"] = cell(r.raw_mass);
    j["normalized_mass"] = cell(r.normalized_mass);
    j["main_term"] = cell(r.main_term);
    j["deviation"] = cell(r.deviation);
    j["lower_bound"] = cell(r.lower_bound);
    j["h_value"] = cell(r.h_value);
    j["wall_time_ms"] = timing ? nlohmann::json(r.wall_time_ms) : nlohmann::json(nullptr);
    j["value"] = cell(r.value);
    j["error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
    if (!r.main_term_convention.empty()) j["main_term_convention"] = r.main_term_convention;
    out << j.dump() << '\n';
  }
}

std::size_t failed_rows(const std::vector<ResultRow>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.error.empty() ? 0 : 1;
  return n;
}

}  // namespace quelab
