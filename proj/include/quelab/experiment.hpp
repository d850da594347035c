#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "quelab/config.hpp"

namespace quelab {

// One output row. Blank cells are empty optionals.
struct ResultRow {
  double t = 0.0;
  std::optional<double> R, raw_mass, normalized_mass, main_term, deviation, lower_bound, h_value;
  double wall_time_ms = 0.0;
  std::optional<double> value;
  std::string main_term_convention;
  std::string error;  // empty on success
};

inline constexpr const char* kCsvHeader =
    "t,R,raw_mass,normalized_mass,main_term,deviation,lower_bound,h_value,wall_time_ms,value,error";

// One row per grid point, in grid order. A row that throws records the
// message in `error` and leaves its numeric cells blank.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int threads = 1);

// wall_time_ms is written only when `timing` is set, so runs stay
// byte-identical by default.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing = false);
void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows, const ExperimentConfig& config,
                 bool timing = false);

std::size_t failed_rows(const std::vector<ResultRow>& rows);

}  // namespace quelab
