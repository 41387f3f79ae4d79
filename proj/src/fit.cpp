#include "heckesign/fit.hpp"

#include <stdexcept>

#include "heckesign/summation.hpp"

namespace heckesign {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    double n = static_cast<double>(xs.size());
    CompensatedSum sx, sy, sxx, sxy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
        sxx.add(xs[i] * xs[i]);
        sxy.add(xs[i] * ys[i]);
    }
    double det = n * sxx.value() - sx.value() * sx.value();
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy.value() - sx.value() * sy.value()) / det;
    fit.intercept = (sy.value() - fit.slope * sx.value()) / n;
    return fit;
}

}  // namespace heckesign
