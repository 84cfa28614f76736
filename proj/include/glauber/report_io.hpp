#pragma once

#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "glauber/format.hpp"
#include "glauber/perturbation.hpp"

namespace glauber {

inline constexpr const char* kSweepCsvHeader =
    "n,J,H,lambda2,gap,t_rel,hf_derivative,fd_derivative,sign_ok";

struct CsvMetadata {
  std::string version;
  std::string command_line;
  std::string timestamp;
};

/// Doubles are written with format_double, so parsing restores them exactly;
/// sign_ok is true/false/na.
///
/// `#` metadata lines, the header, then one row per point. With a
/// temperature constant c two columns T = c/J and t_rel are appended
/// (blank where J = 0).
void write_sweep_csv(std::ostream& os, const SweepReport& report, const CsvMetadata& meta,
                     std::optional<double> temperature_c = std::nullopt);

/// Inverse of write_sweep_csv. Metadata and appended columns are ignored; the
/// monotonicity summary is recomputed from the rows. Throws
/// std::invalid_argument on malformed input.
SweepReport read_sweep_csv(std::istream& is);

std::string sweep_to_json(const SweepReport& report, int indent = 2);
SweepReport sweep_from_json(const std::string& text);

bool same_report(const SweepReport& a, const SweepReport& b);

}  // namespace glauber
