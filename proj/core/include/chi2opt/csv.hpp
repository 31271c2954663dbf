#pragma once

#include <string>
#include <vector>

namespace chi2opt {

/// Two- or three-column numeric table read from CSV. Lines starting with '#'
/// are comments. The first column (an angular frequency axis) must be
/// strictly increasing.
struct Table {
  std::vector<double> x;
  std::vector<double> col1;
  std::vector<double> col2;  // empty for two-column tables
};

Table load_table(const std::string& path);

/// Piecewise-linear interpolant over a table column; evaluates to 0 outside
/// the tabulated range.
class LinearInterpolant {
 public:
  LinearInterpolant() = default;
  LinearInterpolant(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace chi2opt
