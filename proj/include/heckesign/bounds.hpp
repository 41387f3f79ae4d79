#ifndef HECKESIGN_BOUNDS_HPP
#define HECKESIGN_BOUNDS_HPP

#include <optional>

#include "heckesign/rational.hpp"

namespace heckesign {

// q(sym^2 f) = 3 (3 + u)^2.
double analytic_conductor(double u);

struct BoundInputs {
    double u = 0.0;
    double v = 0.0;
    double c = 81.0;  // the absolute constant in the prime-sum error term; never
                      // pinned down analytically, so configurable (81 makes
                      // c_tilde = (81/c)^2 equal 1)
    Rational delta{1, 5208};

    void validate() const;
};

struct BoundResult {
    double q_f = 0.0;
    double q_g = 0.0;
    double c_tilde = 0.0;         // (81/c)^2
    double threshold_x = 0.0;     // exp(c_tilde log^2 sqrt(max q))
    double spectral_bound = 0.0;  // (1+u+v)^{5.34}, or (1+u+v)^{1+eps} conditionally
    double final_bound = 0.0;     // max of the two
    std::optional<Rational> exponent_ratio;  // (3/2-2d)/(9/32-2d) when d < 9/64
};

// First-negative-index bound. If ramanujan_eps is set, the spectral exponent
// 5.34 is replaced by 1 + eps (the bound conditional on Ramanujan).
BoundResult firstn_bound(const BoundInputs& inputs,
                         std::optional<double> ramanujan_eps = std::nullopt);

// (3/2 - 2 delta) / (9/32 - 2 delta), exact. Accepts delta = 0 (the limit,
// 16/3); rejects delta >= 9/64 where the denominator is nonpositive.
Rational exponent_from_delta(const Rational& delta);

struct ExponentGap {
    Rational gap;  // 25/32 - 12/17 = 41/544 exactly
    bool feasible = false;
};

// Feasibility of the exponent gap: eps + 2 alpha < 25/32 - 12/17.
ExponentGap signc_exponent_gap(const Rational& eps, const Rational& alpha);

struct LowerBoundExponents {
    Rational main;        // 25/32
    Rational subtracted;  // 23/32
    Rational half;        // 1/2
    bool identities_hold = false;
};

// Exact-arithmetic closure of the lower-bound exponent chain:
// 2*(1/2) - 7/32 = 25/32 and 23/32 < 25/32.
LowerBoundExponents lowerbound_exponent_check();

}  // namespace heckesign

#endif
