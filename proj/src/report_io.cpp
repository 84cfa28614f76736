#include "glauber/report_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace glauber {

namespace {

constexpr int kSweepColumns = 9;
constexpr const char* kErrorTag = "# point-error ";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string sign_text(const std::optional<bool>& v) {
  if (!v) return "na";
  return *v ? "true" : "false";
}

std::optional<bool> parse_sign(const std::string& s) {
  if (s == "na") return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("sign_ok must be true, false or na, got '" + s + "'");
}

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

nlohmann::json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepReport& report, const CsvMetadata& meta,
                     std::optional<double> temperature_c) {
  os << "# version: " << meta.version << '\n';
  os << "# command: " << meta.command_line << '\n';
  os << "# timestamp: " << meta.timestamp << '\n';
  for (std::size_t i = 0; i < report.points.size(); ++i)
    if (!report.points[i].ok()) os << kErrorTag << i << ' ' << report.points[i].error << '\n';
  os << kSweepCsvHeader;
  if (temperature_c) os << ",T,t_rel_by_T";
  os << '\n';
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const SweepPoint& p = report.points[i];
    os << p.n << ',' << format_double(p.J) << ',' << format_double(p.H) << ','
       << format_double(p.lambda2) << ',' << format_double(p.gap) << ','
       << format_double(p.t_rel) << ',' << format_double(p.hf_derivative) << ','
       << format_double(p.fd_derivative) << ',' << sign_text(p.sign_terms_ok);
    if (temperature_c) {
      // J = 0 is infinite temperature; left blank
      os << ',';
      if (p.J > 0.0) os << format_double(*temperature_c / p.J) << ',' << format_double(p.t_rel);
      else os << ',';
    }
    os << '\n';
  }
}

SweepReport read_sweep_csv(std::istream& is) {
  SweepReport report;
  std::vector<std::pair<std::size_t, std::string>> errors;
  std::string line;
  bool header_seen = false;
  const std::string tag = kErrorTag;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(tag, 0) == 0) {
        const std::string rest = line.substr(tag.size());
        const auto space = rest.find(' ');
        errors.emplace_back(std::stoul(rest.substr(0, space)),
                            space == std::string::npos ? "" : rest.substr(space + 1));
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind(kSweepCsvHeader, 0) != 0)
        throw std::invalid_argument("sweep CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() < kSweepColumns)
      throw std::invalid_argument("sweep CSV: short row '" + line + "'");
    SweepPoint p;
    p.n = std::stoi(cells[0]);
    p.J = parse_double(cells[1]);
    p.H = parse_double(cells[2]);
    p.lambda2 = parse_double(cells[3]);
    p.gap = parse_double(cells[4]);
    p.t_rel = parse_double(cells[5]);
    p.hf_derivative = parse_double(cells[6]);
    p.fd_derivative = parse_double(cells[7]);
    p.sign_terms_ok = parse_sign(cells[8]);
    report.points.push_back(p);
  }
  if (!header_seen) throw std::invalid_argument("sweep CSV: missing header");
  for (auto& [index, message] : errors) {
    if (index >= report.points.size())
      throw std::invalid_argument("sweep CSV: error line refers to a missing row");
    report.points[index].error = message;
  }
  summarize_monotonicity(report);
  return report;
}

std::string sweep_to_json(const SweepReport& report, int indent) {
  nlohmann::json points = nlohmann::json::array();
  for (const SweepPoint& p : report.points) {
    nlohmann::json j;
    j["n"] = p.n;
    j["J"] = p.J;
    j["H"] = p.H;
    j["lambda2"] = number_or_null(p.lambda2);
    j["gap"] = number_or_null(p.gap);
    j["t_rel"] = number_or_null(p.t_rel);
    j["hf_derivative"] = number_or_null(p.hf_derivative);
    j["fd_derivative"] = number_or_null(p.fd_derivative);
    j["sign_terms_ok"] = p.sign_terms_ok ? nlohmann::json(*p.sign_terms_ok) : nullptr;
    if (!p.ok()) j["error"] = p.error;
    points.push_back(std::move(j));
  }
  nlohmann::json doc;
  doc["points"] = std::move(points);
  doc["monotone_in_J"] = report.monotone_in_J;
  doc["max_violation"] = report.max_violation;
  return doc.dump(indent);
}

SweepReport sweep_from_json(const std::string& text) {
  SweepReport report;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("points")) {
      SweepPoint p;
      p.n = j.at("n").get<int>();
      p.J = j.at("J").get<double>();
      p.H = j.at("H").get<double>();
      p.lambda2 = number_from(j.at("lambda2"));
      p.gap = number_from(j.at("gap"));
      p.t_rel = number_from(j.at("t_rel"));
      p.hf_derivative = number_from(j.at("hf_derivative"));
      p.fd_derivative = number_from(j.at("fd_derivative"));
      if (!j.at("sign_terms_ok").is_null()) p.sign_terms_ok = j["sign_terms_ok"].get<bool>();
      if (j.contains("error")) p.error = j["error"].get<std::string>();
      report.points.push_back(std::move(p));
    }
    report.monotone_in_J = doc.at("monotone_in_J").get<bool>();
    report.max_violation = doc.at("max_violation").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sweep JSON: ") + e.what());
  }
  return report;
}

bool same_report(const SweepReport& a, const SweepReport& b) {
  if (a.points.size() != b.points.size() || a.monotone_in_J != b.monotone_in_J ||
      !same_double(a.max_violation, b.max_violation))
    return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const SweepPoint& p = a.points[i];
    const SweepPoint& q = b.points[i];
    if (p.n != q.n || !same_double(p.J, q.J) || !same_double(p.H, q.H) ||
        !same_double(p.lambda2, q.lambda2) || !same_double(p.gap, q.gap) ||
        !same_double(p.t_rel, q.t_rel) || !same_double(p.hf_derivative, q.hf_derivative) ||
        !same_double(p.fd_derivative, q.fd_derivative) || p.sign_terms_ok != q.sign_terms_ok ||
        p.error != q.error)
      return false;
  }
  return true;
}

}  // namespace glauber
