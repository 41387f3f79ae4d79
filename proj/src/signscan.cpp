#include "heckesign/signscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "heckesign/parallel.hpp"

namespace heckesign {

ProductSequence::ProductSequence(const CoefficientTable& f, const CoefficientTable& g)
    : f_id_(f.descriptor().id), g_id_(g.descriptor().id) {
    const std::int64_t N = std::min(f.size(), g.size());
    values_.assign(N + 1, 0.0);
    for (std::int64_t n = 1; n <= N; ++n) values_[n] = f(n) * g(n);
    if (!f.synthesized() || !g.synthesized())
        build_block_thresholds(std::max(f.eps_build(), g.eps_build()));
}

ProductSequence::ProductSequence(std::string f_id, std::string g_id, std::vector<double> values,
                                 double zero_eps_scale)
    : f_id_(std::move(f_id)), g_id_(std::move(g_id)), values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("ProductSequence: needs N >= 1");
    if (zero_eps_scale > 0.0) build_block_thresholds(zero_eps_scale);
}

void ProductSequence::build_block_thresholds(double scale) {
    const std::int64_t N = size();
    zero_thresholds_.assign(block_count(1, N), 0.0);
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(zero_thresholds_.size()); ++b) {
        std::int64_t lo = 1 + b * kScanBlock;
        std::int64_t hi = std::min(N, lo + kScanBlock - 1);
        double mx = 0.0;
        for (std::int64_t n = lo; n <= hi; ++n) mx = std::max(mx, std::abs(values_[n]));
        zero_thresholds_[b] = scale * (1.0 + mx);
    }
}

int ProductSequence::sign_class(std::int64_t n) const {
    double v = values_[n];
    if (zero_thresholds_.empty()) {
        if (v > 0.0) return 1;
        if (v < 0.0) return -1;
        return 0;
    }
    double thr = zero_thresholds_[(n - 1) / kScanBlock];
    if (v > thr) return 1;
    if (v < -thr) return -1;
    return 0;
}

ProductSequence product_sequence(const CoefficientTable& f, const CoefficientTable& g) {
    return ProductSequence(f, g);
}

namespace {

struct BlockScan {
    std::optional<std::int64_t> first_negative;
    std::optional<std::int64_t> first_positive_after_1;
    std::vector<std::int64_t> changes;  // internal sign changes
    int first_sign = 0;                 // first nonzero sign in block, 0 if none
    std::int64_t first_sign_pos = 0;
    int last_sign = 0;                  // last nonzero sign in block
};

std::vector<BlockScan> scan_blocks(const ProductSequence& seq, int workers) {
    const std::int64_t N = seq.size();
    std::vector<BlockScan> blocks(block_count(1, N));
    parallel_blocks(
        1, N,
        [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
            BlockScan& bs = blocks[b];
            int prev = 0;
            for (std::int64_t n = lo; n <= hi; ++n) {
                int s = seq.sign_class(n);
                if (s == 0) continue;
                if (s < 0 && !bs.first_negative) bs.first_negative = n;
                if (s > 0 && n >= 2 && !bs.first_positive_after_1) bs.first_positive_after_1 = n;
                if (bs.first_sign == 0) {
                    bs.first_sign = s;
                    bs.first_sign_pos = n;
                }
                if (prev != 0 && s * prev < 0) bs.changes.push_back(n);
                prev = s;
            }
            bs.last_sign = prev;
        },
        workers);
    return blocks;
}

}  // namespace

std::optional<std::int64_t> first_negative(const ProductSequence& seq, int workers) {
    for (const auto& b : scan_blocks(seq, workers))
        if (b.first_negative) return b.first_negative;
    return std::nullopt;
}

namespace {

std::vector<std::int64_t> merge_change_positions(const std::vector<BlockScan>& blocks) {
    std::vector<std::int64_t> out;
    int carry = 0;  // last nonzero sign seen before the current block
    for (const auto& b : blocks) {
        if (b.first_sign != 0 && carry != 0 && b.first_sign * carry < 0)
            out.push_back(b.first_sign_pos);
        out.insert(out.end(), b.changes.begin(), b.changes.end());
        if (b.last_sign != 0) carry = b.last_sign;
    }
    return out;
}

}  // namespace

std::vector<std::int64_t> sign_change_positions(const ProductSequence& seq, int workers) {
    return merge_change_positions(scan_blocks(seq, workers));
}

std::vector<DyadicCensusRow> dyadic_sign_census(const ProductSequence& seq,
                                                const std::vector<double>& x_list, int workers) {
    const std::int64_t N = seq.size();
    std::string offending;
    for (double x : x_list) {
        if (!(x > 0) || 2.0 * x > static_cast<double>(N)) {
            if (!offending.empty()) offending += ", ";
            offending += std::to_string(x);
        }
    }
    if (!offending.empty())
        throw std::out_of_range("dyadic_sign_census: interval (x,2x] outside table at x = " +
                                offending);
    std::vector<DyadicCensusRow> rows(x_list.size());
    for (std::size_t i = 0; i < x_list.size(); ++i) {
        double x = x_list[i];
        std::int64_t lo = static_cast<std::int64_t>(std::floor(x)) + 1;
        std::int64_t hi = static_cast<std::int64_t>(std::floor(2.0 * x));
        DyadicCensusRow row;
        row.x = x;
        if (lo <= hi) {
            std::vector<DyadicCensusRow> partial(block_count(lo, hi));
            parallel_blocks(
                lo, hi,
                [&](std::int64_t b, std::int64_t blo, std::int64_t bhi) {
                    DyadicCensusRow r;
                    for (std::int64_t n = blo; n <= bhi; ++n) {
                        int s = seq.sign_class(n);
                        if (s > 0)
                            ++r.count_pos;
                        else if (s < 0)
                            ++r.count_neg;
                        else
                            ++r.count_zero;
                    }
                    partial[b] = r;
                },
                workers);
            for (const auto& p : partial) {
                row.count_pos += p.count_pos;
                row.count_neg += p.count_neg;
                row.count_zero += p.count_zero;
            }
        }
        rows[i] = row;
    }
    return rows;
}

SignReport scan_report(const ProductSequence& seq, const std::vector<double>& x_list,
                       int workers) {
    SignReport rep;
    rep.f_id = seq.f_id();
    rep.g_id = seq.g_id();
    rep.N = seq.size();
    auto blocks = scan_blocks(seq, workers);
    for (const auto& b : blocks) {
        if (b.first_negative) {
            rep.first_negative = b.first_negative;
            break;
        }
    }
    for (const auto& b : blocks) {
        if (b.first_positive_after_1) {
            rep.first_positive_after_1 = b.first_positive_after_1;
            break;
        }
    }
    rep.change_positions = merge_change_positions(blocks);
    if (!x_list.empty()) rep.dyadic = dyadic_sign_census(seq, x_list, workers);
    return rep;
}

namespace {

double round15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::string sign_report_to_json(const SignReport& report) {
    nlohmann::ordered_json j;
    j["f_id"] = report.f_id;
    j["g_id"] = report.g_id;
    j["N"] = report.N;
    if (report.first_negative)
        j["first_negative"] = *report.first_negative;
    else
        j["first_negative"] = nullptr;
    if (report.first_positive_after_1)
        j["first_positive_after_1"] = *report.first_positive_after_1;
    else
        j["first_positive_after_1"] = nullptr;
    j["change_positions"] = report.change_positions;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : report.dyadic) {
        nlohmann::ordered_json row;
        row["x"] = round15(r.x);
        row["pos"] = r.count_pos;
        row["neg"] = r.count_neg;
        row["zero"] = r.count_zero;
        rows.push_back(row);
    }
    j["dyadic"] = rows;
    return j.dump(2) + "\n";
}

std::string dyadic_census_to_csv(const std::vector<DyadicCensusRow>& rows) {
    std::ostringstream out;
    char buf[64];
    out << "x,pos,neg,zero\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.15g", r.x);
        out << buf << ',' << r.count_pos << ',' << r.count_neg << ',' << r.count_zero << '\n';
    }
    return out.str();
}

}  // namespace heckesign
