#pragma once

// Sampled datasets (figure data, propagation snapshots) and their CSV form.
//
// CSV columns: t,x,re,im,density,potential
// Wall rows carry the literal `wall` in the potential column.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mbw/core_types.hpp"
#include "mbw/families.hpp"

namespace mbw::io {

struct CsvRow {
  double t;
  double x;
  double re;
  double im;
  double density;
  std::optional<double> potential;  // nullopt at the walls

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline constexpr const char* kCsvHeader = "t,x,re,im,density,potential";

std::string to_csv(const std::vector<CsvRow>& rows);
/// Throws std::invalid_argument on a bad header, field count or number.
std::vector<CsvRow> parse_csv(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

struct SampleRequest {
  FamilyId family;
  std::vector<StateSelector> states;
  std::vector<double> times;
  int points = 1001;
  WellConfig cfg{};
};

struct Dataset {
  std::string name;  // file stem, e.g. "confluent_eps"
  StateSelector state;
  std::vector<CsvRow> rows;
};

/// One dataset per state, rows ordered by time then x, walls included.
/// phi_n is emitted as-is; every other state is divided by its numeric norm
/// at each time. Throws NonNormalizable if a value is not finite.
std::vector<Dataset> build_datasets(const SampleRequest& req);

struct FigureSpec {
  std::string name;
  SampleRequest request;
};

/// The five figure configurations: box n=1,2,3; pt n=2,3,4; confluent m=2
/// with omega 0.4 (n=1,eps,3), -1 and 0 (n=1,3,4); all at t = 1/4..1.
std::vector<FigureSpec> figure_specs();

/// Simpson integral of the density column for one time slice.
double integrate_density(const std::vector<CsvRow>& rows, double t);

}  // namespace mbw::io
