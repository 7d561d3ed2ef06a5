#pragma once

#include <string>
#include <vector>

namespace cltscope {

// A function tabulated on a strictly increasing grid. CDF tabulations must
// be non-decreasing with values in [0,1]; PDF tabulations must be
// non-negative with trapezoid mass in [0.98, 1.02] (tails may be truncated).
class GridFunction {
 public:
  enum class Kind { kCdf, kPdf };

  static GridFunction cdf(std::vector<double> grid, std::vector<double> values);
  static GridFunction pdf(std::vector<double> grid, std::vector<double> values);

  Kind kind() const { return kind_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return grid_.size(); }

  // Piecewise-linear evaluation; clamps to the end values outside the grid
  // for CDFs and to 0 for PDFs.
  double operator()(double x) const;

  // Resamples onto an arbitrary increasing grid (same interpolation rule).
  std::vector<double> sample(const std::vector<double>& xs) const;

  // Trapezoid integral of the tabulated values over the whole grid.
  double integral() const;

 private:
  GridFunction(Kind kind, std::vector<double> grid, std::vector<double> values);

  Kind kind_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

// The default comparison grid for standardized quantities: 4097 uniform
// points on [-8, 8].
std::vector<double> default_comparison_grid();

// Right-continuous step CDF tabulated with paired points at every jump
// (the left limit sits one ulp below the jump abscissa), so that sup-based
// metrics see both sides. `jump_points` strictly increasing; `levels[i]` is
// the CDF value at and after jump_points[i]. The grid is padded flat to
// [lo, hi].
GridFunction step_cdf(const std::vector<double>& jump_points,
                      const std::vector<double>& levels, double lo, double hi);

// Two-column CSV with a "# kind: cdf|pdf" comment line.
GridFunction read_grid_function_csv(const std::string& path);
void write_grid_function_csv(const GridFunction& f, const std::string& path,
                             int precision = 12);

}  // namespace cltscope
