#ifndef HECKESIGN_FIT_HPP
#define HECKESIGN_FIT_HPP

#include <vector>

namespace heckesign {

// Ordinary least squares y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace heckesign

#endif
