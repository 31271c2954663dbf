#include "chi2opt/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chi2opt/errors.hpp"

namespace chi2opt {

Table load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open table file: " + path);

  Table t;
  std::string line;
  int lineno = 0;
  std::size_t ncols = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::vector<double> vals;
    double v;
    while (row >> v) vals.push_back(v);
    if (vals.size() < 2 || vals.size() > 3) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected 2 or 3 numeric columns");
    }
    if (ncols == 0) ncols = vals.size();
    if (vals.size() != ncols) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": inconsistent column count");
    }
    if (!t.x.empty() && vals[0] <= t.x.back()) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": frequency column must be strictly increasing");
    }
    t.x.push_back(vals[0]);
    t.col1.push_back(vals[1]);
    if (ncols == 3) t.col2.push_back(vals[2]);
  }
  if (t.x.empty()) throw ValidationError(path + ": no data rows");
  return t;
}

LinearInterpolant::LinearInterpolant(std::vector<double> x,
                                     std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw ValidationError("interpolant needs at least two matching samples");
  }
}

double LinearInterpolant::operator()(double x) const {
  // Outside the tabulated range the coupling evaluates to 0.
  if (x_.empty() || x < x_.front() || x > x_.back()) return 0.0;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return y_.front();
  if (it == x_.end()) return y_.back();
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return y_[i - 1] + t * (y_[i] - y_[i - 1]);
}

}  // namespace chi2opt
