#include "cltscope/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "cltscope/errors.hpp"

namespace cltscope {

namespace {

void check_grid(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() < 2 || grid.size() != values.size()) {
    throw InvalidInputError(
        "GridFunction: grid and values need equal length >= 2");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(values[i])) {
      throw InvalidInputError("GridFunction: entries must be finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidInputError("GridFunction: grid must be strictly increasing");
    }
  }
}

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    total += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  }
  return total;
}

}  // namespace

GridFunction::GridFunction(Kind kind, std::vector<double> grid,
                           std::vector<double> values)
    : kind_(kind), grid_(std::move(grid)), values_(std::move(values)) {}

GridFunction GridFunction::cdf(std::vector<double> grid, std::vector<double> values) {
  check_grid(grid, values);
  constexpr double kTol = 1e-12;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < -kTol || values[i] > 1.0 + kTol) {
      throw InvalidInputError("GridFunction: CDF values must lie in [0,1]");
    }
    if (i > 0 && values[i] < values[i - 1] - kTol) {
      throw InvalidInputError("GridFunction: CDF values must be non-decreasing");
    }
  }
  return GridFunction(Kind::kCdf, std::move(grid), std::move(values));
}

GridFunction GridFunction::pdf(std::vector<double> grid, std::vector<double> values) {
  check_grid(grid, values);
  for (double v : values) {
    if (v < 0.0) {
      throw InvalidInputError("GridFunction: PDF values must be non-negative");
    }
  }
  const double mass = trapezoid(grid, values);
  if (mass < 0.98 || mass > 1.02) {
    throw InvalidInputError(
        "GridFunction: PDF mass " + std::to_string(mass) +
        " outside the tolerated [0.98, 1.02] truncation window");
  }
  return GridFunction(Kind::kPdf, std::move(grid), std::move(values));
}

double GridFunction::operator()(double x) const {
  if (x <= grid_.front()) {
    return kind_ == Kind::kCdf ? values_.front() : 0.0;
  }
  if (x >= grid_.back()) {
    return kind_ == Kind::kCdf ? values_.back() : 0.0;
  }
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> GridFunction::sample(const std::vector<double>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

double GridFunction::integral() const { return trapezoid(grid_, values_); }

std::vector<double> default_comparison_grid() {
  constexpr int kPoints = 4097;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[i] = -8.0 + 16.0 * static_cast<double>(i) / (kPoints - 1);
  }
  return grid;
}

GridFunction step_cdf(const std::vector<double>& jump_points,
                      const std::vector<double>& levels, double lo, double hi) {
  if (jump_points.empty() || jump_points.size() != levels.size()) {
    throw InvalidInputError("step_cdf: need matching non-empty jumps/levels");
  }
  if (!(lo < jump_points.front()) || !(hi > jump_points.back())) {
    throw InvalidInputError("step_cdf: [lo, hi] must bracket the jumps");
  }
  std::vector<double> grid, values;
  grid.reserve(2 * jump_points.size() + 2);
  values.reserve(grid.capacity());
  grid.push_back(lo);
  values.push_back(0.0);
  double level = 0.0;
  for (std::size_t i = 0; i < jump_points.size(); ++i) {
    const double x = jump_points[i];
    grid.push_back(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    values.push_back(level);
    grid.push_back(x);
    level = levels[i];
    values.push_back(level);
  }
  grid.push_back(hi);
  values.push_back(level);
  return GridFunction::cdf(std::move(grid), std::move(values));
}

GridFunction read_grid_function_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("read_grid_function_csv: cannot open '" + path + "'");
  }
  std::string line;
  long line_no = 0;
  std::optional<GridFunction::Kind> kind;
  std::vector<double> grid, values;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("kind:");
      if (pos != std::string::npos) {
        std::string k = line.substr(pos + 5);
        k.erase(0, k.find_first_not_of(" \t"));
        if (k.rfind("cdf", 0) == 0) {
          kind = GridFunction::Kind::kCdf;
        } else if (k.rfind("pdf", 0) == 0) {
          kind = GridFunction::Kind::kPdf;
        } else {
          throw ParseError(path, line_no, "unknown kind '" + k + "'");
        }
      }
      continue;
    }
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) {
      throw ParseError(path, line_no, "expected 'abscissa,value'");
    }
    try {
      grid.push_back(std::stod(a));
      values.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "not numeric: '" + line + "'");
    }
  }
  if (!kind) {
    throw ParseError(path, 1, "missing '# kind: cdf|pdf' header comment");
  }
  return *kind == GridFunction::Kind::kCdf
             ? GridFunction::cdf(std::move(grid), std::move(values))
             : GridFunction::pdf(std::move(grid), std::move(values));
}

void write_grid_function_csv(const GridFunction& f, const std::string& path,
                             int precision) {
  std::ofstream out(path);
  if (!out) {
    throw Error("write_grid_function_csv: cannot open '" + path + "' for writing");
  }
  out << "# kind: " << (f.kind() == GridFunction::Kind::kCdf ? "cdf" : "pdf")
      << "\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.*g,%.*g\n", precision, f.grid()[i],
                  precision, f.values()[i]);
    out << buf;
  }
}

}  // namespace cltscope
