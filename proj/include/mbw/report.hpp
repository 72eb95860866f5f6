#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mbw::verify {

enum class Comparison {
  AtMost,   // passes when value <= tolerance
  AtLeast,  // passes when value >= tolerance
  Above,    // passes when value > tolerance; used by negative controls
};

struct Check {
  std::string name;
  double value;
  double tolerance;
  Comparison comparison;
  bool passed;
  std::string note;
};

/// Named checks with explicit tolerances, plus the stencil/step metadata used.
/// Serializes deterministically to a line-oriented text form and to JSON.
class VerificationReport {
 public:
  VerificationReport(std::string subject, double t) : subject_(std::move(subject)), t_(t) {}

  const Check& add(std::string name, double value, double tolerance, Comparison cmp = Comparison::AtMost,
                   std::string note = {});
  /// A check that could not be evaluated (the computation threw).
  const Check& add_failure(std::string name, std::string note);
  void set_parameter(std::string key, double value);

  const std::string& subject() const noexcept { return subject_; }
  double t() const noexcept { return t_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::pair<std::string, double>>& parameters() const noexcept { return parameters_; }
  bool passed() const;

  /// report <subject>
  /// t <t>
  /// param <key> <value>
  /// check <name> <value> <le|ge|gt> <tolerance> <PASS|FAIL>[ # note]
  std::string to_text() const;
  std::string to_json() const;

 private:
  std::string subject_;
  double t_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, double>> parameters_;
};

std::string reports_to_text(const std::vector<VerificationReport>& reports);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace mbw::verify
