#ifndef HECKESIGN_SIGNSCAN_HPP
#define HECKESIGN_SIGNSCAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckesign/forms.hpp"

namespace heckesign {

// Pointwise product lambda_f(n) lambda_g(n), n = 1..N. Zero classification:
// synthesized tables compare against exact zero; ingested data uses a
// per-block threshold eps_build * (1 + max |v| over the fixed scan block).
class ProductSequence {
public:
    ProductSequence(const CoefficientTable& f, const CoefficientTable& g);
    // For tooling and tests: an explicit value vector (1-indexed slot 0 unused).
    ProductSequence(std::string f_id, std::string g_id, std::vector<double> values_1_indexed,
                    double zero_eps_scale = 0.0);

    const std::string& f_id() const { return f_id_; }
    const std::string& g_id() const { return g_id_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    double operator()(std::int64_t n) const { return values_[n]; }
    const std::vector<double>& raw() const { return values_; }

    // -1, 0, +1 under the zero rule above.
    int sign_class(std::int64_t n) const;

private:
    void build_block_thresholds(double scale);

    std::string f_id_, g_id_;
    std::vector<double> values_;
    std::vector<double> zero_thresholds_;  // one per fixed scan block; empty = exact zero rule
};

ProductSequence product_sequence(const CoefficientTable& f, const CoefficientTable& g);

struct DyadicCensusRow {
    double x = 0.0;
    std::int64_t count_pos = 0;
    std::int64_t count_neg = 0;
    std::int64_t count_zero = 0;
};

struct SignReport {
    std::string f_id, g_id;
    std::int64_t N = 0;
    std::optional<std::int64_t> first_negative;
    std::optional<std::int64_t> first_positive_after_1;
    std::vector<std::int64_t> change_positions;
    std::vector<DyadicCensusRow> dyadic;
};

// Smallest n with a strictly negative entry (zeros never count).
std::optional<std::int64_t> first_negative(const ProductSequence& seq, int workers = -1);

// All n whose entry has the opposite strict sign to the previous nonzero
// entry.
std::vector<std::int64_t> sign_change_positions(const ProductSequence& seq, int workers = -1);

// Sign counts over (x, 2x] for each x; requires 2x <= N.
std::vector<DyadicCensusRow> dyadic_sign_census(const ProductSequence& seq,
                                                const std::vector<double>& x_list,
                                                int workers = -1);

SignReport scan_report(const ProductSequence& seq, const std::vector<double>& x_list,
                       int workers = -1);

std::string sign_report_to_json(const SignReport& report);
std::string dyadic_census_to_csv(const std::vector<DyadicCensusRow>& rows);

}  // namespace heckesign

#endif
