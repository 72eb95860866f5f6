#include "mbw/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "mbw/format.hpp"

namespace mbw::verify {

namespace {

const char* comparison_token(Comparison c) {
  switch (c) {
    case Comparison::AtMost: return "le";
    case Comparison::AtLeast: return "ge";
    case Comparison::Above: return "gt";
  }
  return "?";
}

bool evaluate(double value, double tolerance, Comparison c) {
  if (!std::isfinite(value)) return c == Comparison::Above && value > tolerance;
  switch (c) {
    case Comparison::AtMost: return value <= tolerance;
    case Comparison::AtLeast: return value >= tolerance;
    case Comparison::Above: return value > tolerance;
  }
  return false;
}

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject();
  j["t"] = number_or_null(r.t());
  j["passed"] = r.passed();
  auto params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters()) params[k] = number_or_null(v);
  j["parameters"] = params;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks()) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = number_or_null(c.value);
    cj["comparison"] = comparison_token(c.comparison);
    cj["tolerance"] = number_or_null(c.tolerance);
    cj["passed"] = c.passed;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace

const Check& VerificationReport::add(std::string name, double value, double tolerance, Comparison cmp,
                                     std::string note) {
  checks_.push_back(Check{std::move(name), value, tolerance, cmp, evaluate(value, tolerance, cmp), std::move(note)});
  return checks_.back();
}

const Check& VerificationReport::add_failure(std::string name, std::string note) {
  checks_.push_back(Check{std::move(name), std::nan(""), 0.0, Comparison::AtMost, false, std::move(note)});
  return checks_.back();
}

void VerificationReport::set_parameter(std::string key, double value) {
  parameters_.emplace_back(std::move(key), value);
}

bool VerificationReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "report " << subject_ << '\n';
  os << "t " << format_double(t_) << '\n';
  for (const auto& [k, v] : parameters_) os << "param " << k << ' ' << format_double(v) << '\n';
  for (const auto& c : checks_) {
    os << "check " << c.name << ' ' << format_double(c.value) << ' ' << comparison_token(c.comparison) << ' '
       << format_double(c.tolerance) << ' ' << (c.passed ? "PASS" : "FAIL");
    if (!c.note.empty()) os << " # " << c.note;
    os << '\n';
  }
  return os.str();
}

std::string VerificationReport::to_json() const { return report_json(*this).dump(2); }

std::string reports_to_text(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += r.to_text();
    out += '\n';
  }
  return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  nlohmann::ordered_json root;
  root["reports"] = arr;
  root["passed"] = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  return root.dump(2);
}

}  // namespace mbw::verify
