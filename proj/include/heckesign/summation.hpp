#ifndef HECKESIGN_SUMMATION_HPP
#define HECKESIGN_SUMMATION_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace heckesign {

// Neumaier-compensated accumulator. Tracks the running compensation plus the
// total absolute mass, which bounds the accumulated rounding error by
// 2*eps*abs_sum regardless of term count.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_sum_ += std::abs(x);
        ++terms_;
    }

    // Merge another accumulator; merge order must be fixed by the caller for
    // deterministic results.
    void merge(const CompensatedSum& o) {
        add(o.sum_);
        comp_ += o.comp_;
        abs_sum_ += o.abs_sum_ - std::abs(o.sum_);
        terms_ += o.terms_ - 1;
    }

    double value() const { return sum_ + comp_; }
    double abs_sum() const { return abs_sum_; }
    std::int64_t terms() const { return terms_; }

    double error_bound() const {
        return 4.0 * std::numeric_limits<double>::epsilon() * abs_sum_;
    }
    double relative_error_bound() const {
        double v = std::abs(value());
        if (v == 0.0) return abs_sum_ == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return error_bound() / v;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
    std::int64_t terms_ = 0;
};

struct SumResult {
    double value = 0.0;
    double error_bound = 0.0;
    double relative_error_bound = 0.0;
    std::int64_t terms = 0;
};

inline SumResult finish(const CompensatedSum& acc) {
    return {acc.value(), acc.error_bound(), acc.relative_error_bound(), acc.terms()};
}

}  // namespace heckesign

#endif
