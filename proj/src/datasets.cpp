#include "mbw/datasets.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mbw/format.hpp"
#include "mbw/verify.hpp"

namespace mbw::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonNormalizable, what + " is not finite");
}

}  // namespace

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += format_double(r.t) + ',' + format_double(r.x) + ',' + format_double(r.re) + ',' + format_double(r.im) +
           ',' + format_double(r.density) + ',' + (r.potential ? format_double(*r.potential) : "wall") + '\n';
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::invalid_argument("missing CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw std::invalid_argument("expected 6 fields: " + line);
    CsvRow r{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]), parse_double(f[4]),
             std::nullopt};
    if (f[5] != "wall") r.potential = parse_double(f[5]);
    rows.push_back(r);
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<Dataset> build_datasets(const SampleRequest& req) {
  if (req.points < 3) throw Error(ErrorKind::InvalidConfig, "need at least 3 points per time");
  for (const auto& s : req.states) validate_selector(req.family, s);
  for (double t : req.times) req.cfg.check_time(t);

  std::vector<Dataset> out;
  for (const auto& sel : req.states) {
    Dataset ds{req.family.name() + "_" + sel.label(), sel, {}};
    const WaveFunction psi = [&, sel](double x, double t) { return family_state(req.family, sel, x, t, req.cfg); };
    for (double t : req.times) {
      const bool unit_norm = req.family.kind == FamilyKind::MovingBox;
      const double scale = unit_norm ? 1.0 : 1.0 / std::sqrt(verify::norm(psi, t, req.cfg));
      const double lo = fixed_wall_position(req.cfg);
      const double hi = wall_position(t, req.cfg);
      const double h = (hi - lo) / (req.points - 1);
      for (int i = 0; i < req.points; ++i) {
        const double x = (i == req.points - 1) ? hi : lo + i * h;
        const Complex value = scale * psi(x, t);
        const ExtendedReal v = family_potential(req.family, x, t, req.cfg);
        CsvRow row{t, x, value.real(), value.imag(), std::norm(value), std::nullopt};
        if (v.is_finite()) row.potential = v.value();
        require_finite(row.re, "state value");
        require_finite(row.im, "state value");
        if (row.potential) require_finite(*row.potential, "potential");
        ds.rows.push_back(row);
      }
    }
    out.push_back(std::move(ds));
  }
  return out;
}

std::vector<FigureSpec> figure_specs() {
  const std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  using S = StateSelector;
  std::vector<FigureSpec> specs;
  specs.push_back({"fig1", {FamilyId::box(), {S::level(1), S::level(2), S::level(3)}, times}});
  specs.push_back({"fig2", {FamilyId::poschl_teller(), {S::level(2), S::level(3), S::level(4)}, times}});
  specs.push_back({"fig3", {FamilyId::confluent_family(ConfluentConfig(2, 0.4)),
                            {S::level(1), S::missing_state(), S::level(3)}, times}});
  specs.push_back({"fig4", {FamilyId::confluent_family(ConfluentConfig(2, -1.0)),
                            {S::level(1), S::level(3), S::level(4)}, times}});
  specs.push_back({"fig5", {FamilyId::confluent_family(ConfluentConfig(2, 0.0)),
                            {S::level(1), S::level(3), S::level(4)}, times}});
  return specs;
}

double integrate_density(const std::vector<CsvRow>& rows, double t) {
  std::vector<double> values;
  double lo = 0.0, hi = 0.0;
  for (const auto& r : rows) {
    if (r.t != t) continue;
    if (values.empty()) lo = r.x;
    hi = r.x;
    values.push_back(r.density);
  }
  if (values.size() < 3 || values.size() % 2 == 0) {
    throw std::invalid_argument("Simpson needs an odd number (>= 3) of samples per time");
  }
  const std::size_t n = values.size() - 1;
  double sum = values.front() + values.back();
  for (std::size_t i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * values[i];
  return sum * (hi - lo) / static_cast<double>(n) / 3.0;
}

}  // namespace mbw::io
