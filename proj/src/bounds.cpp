#include "heckesign/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace heckesign {

double analytic_conductor(double u) {
    if (!(u > 0)) throw std::invalid_argument("analytic_conductor: u must be > 0");
    return 3.0 * (3.0 + u) * (3.0 + u);
}

void BoundInputs::validate() const {
    if (!(u > 0)) throw std::invalid_argument("BoundInputs.u must be > 0");
    if (!(v > 0)) throw std::invalid_argument("BoundInputs.v must be > 0");
    if (!(c > 0)) throw std::invalid_argument("BoundInputs.c must be > 0");
    if (!(delta > Rational(0) && delta <= Rational(3, 4)))
        throw std::invalid_argument("BoundInputs.delta must lie in (0, 3/4]");
}

BoundResult firstn_bound(const BoundInputs& inputs, std::optional<double> ramanujan_eps) {
    inputs.validate();
    if (ramanujan_eps && !(*ramanujan_eps > 0))
        throw std::invalid_argument("firstn_bound: ramanujan eps must be > 0");
    BoundResult out;
    out.q_f = analytic_conductor(inputs.u);
    out.q_g = analytic_conductor(inputs.v);
    out.c_tilde = (81.0 / inputs.c) * (81.0 / inputs.c);
    double log_sqrt_q = 0.5 * std::log(std::max(out.q_f, out.q_g));
    out.threshold_x = std::exp(out.c_tilde * log_sqrt_q * log_sqrt_q);
    double exponent = ramanujan_eps ? 1.0 + *ramanujan_eps : 5.34;
    out.spectral_bound = std::pow(1.0 + inputs.u + inputs.v, exponent);
    out.final_bound = std::max(out.threshold_x, out.spectral_bound);
    if (inputs.delta < Rational(9, 64)) out.exponent_ratio = exponent_from_delta(inputs.delta);
    return out;
}

Rational exponent_from_delta(const Rational& delta) {
    if (delta < Rational(0))
        throw std::invalid_argument("exponent_from_delta: delta must be >= 0");
    Rational den = Rational(9, 32) - Rational(2) * delta;
    if (den <= Rational(0))
        throw std::invalid_argument("exponent_from_delta: delta >= 9/64 makes the denominator nonpositive");
    return (Rational(3, 2) - Rational(2) * delta) / den;
}

ExponentGap signc_exponent_gap(const Rational& eps, const Rational& alpha) {
    if (eps < Rational(0) || alpha < Rational(0))
        throw std::invalid_argument("signc_exponent_gap: eps and alpha must be >= 0");
    ExponentGap out;
    out.gap = Rational(25, 32) - Rational(12, 17);
    out.feasible = eps + Rational(2) * alpha < out.gap;
    return out;
}

LowerBoundExponents lowerbound_exponent_check() {
    LowerBoundExponents out;
    out.main = Rational(25, 32);
    out.subtracted = Rational(23, 32);
    out.half = Rational(1, 2);
    bool square_identity = Rational(2) * out.half - Rational(7, 32) == out.main;
    bool lower_order = out.subtracted < out.main;
    out.identities_hold = square_identity && lower_order;
    return out;
}

}  // namespace heckesign
