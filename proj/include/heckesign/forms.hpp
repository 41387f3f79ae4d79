#ifndef HECKESIGN_FORMS_HPP
#define HECKESIGN_FORMS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckesign {

enum class FormKind { maass_cusp, eisenstein_oracle, holomorphic_oracle, file_ingested };

std::string to_string(FormKind kind);
FormKind form_kind_from_string(const std::string& s);

// Identity and provenance of a coefficient sequence.
struct FormDescriptor {
    std::string id;
    FormKind kind = FormKind::file_ingested;
    std::optional<double> spectral;  // u > 0 for maass_cusp, t for eisenstein_oracle
    int parity = 0;                  // 0 even, 1 odd

    void validate() const;  // throws std::invalid_argument naming the field
};

FormDescriptor descriptor_from_json(const std::string& text);
std::string descriptor_to_json(const FormDescriptor& d);

// lambda(p) for every prime p <= prime_bound, sorted by p.
class PrimeCoefficientSet {
public:
    PrimeCoefficientSet(std::vector<std::pair<std::int64_t, double>> entries,
                        std::int64_t prime_bound);

    std::int64_t prime_bound() const { return prime_bound_; }
    const std::vector<std::pair<std::int64_t, double>>& entries() const { return entries_; }
    std::optional<double> lambda(std::int64_t p) const;

private:
    std::vector<std::pair<std::int64_t, double>> entries_;
    std::int64_t prime_bound_;
};

// lambda(1..N), normalized (lambda(1) = 1), Hecke-consistent within
// eps_build. Immutable after construction; safe to share across threads.
class CoefficientTable {
public:
    CoefficientTable(FormDescriptor descriptor, std::vector<double> values_1_indexed,
                     double eps_build);

    const FormDescriptor& descriptor() const { return descriptor_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()) - 1; }
    double eps_build() const { return eps_build_; }

    double lambda(std::int64_t n) const;                        // range-checked
    double operator()(std::int64_t n) const { return values_[n]; }  // hot path
    const std::vector<double>& raw() const { return values_; }      // [0] unused

    bool synthesized() const { return descriptor_.kind != FormKind::file_ingested; }

private:
    FormDescriptor descriptor_;
    std::vector<double> values_;
    double eps_build_;
};

// Multiplicative extension of prime data by the smallest-prime-factor sieve:
// lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}) at prime powers,
// lambda(ab) = lambda(a) lambda(b) for coprime a, b.
CoefficientTable hecke_extend(const PrimeCoefficientSet& primes, FormDescriptor descriptor,
                              std::int64_t N, double eps_build = 1e-10);

struct PairingCheck {
    bool pass = false;
    double lhs = 0.0;  // lambda(m) lambda(n)
    double rhs = 0.0;  // sum over d | (m,n) of lambda(mn/d^2)
};

// Checks lambda(m)lambda(n) = sum_{d|(m,n)} lambda(mn/d^2);
// pass iff |lhs - rhs| <= tol * (1 + |lhs|). Requires m*n <= N.
PairingCheck hecke_pairing_check(const CoefficientTable& table, std::int64_t m, std::int64_t n,
                                 double tol);

// Analytic oracle: lambda_t(n) = sum_{d|n} cos(t log(d^2/n)), i.e. the real
// divisor sum sum_{ad=n} (a/d)^{it}. At t=0 this is the divisor count.
CoefficientTable eisenstein_coefficients(double t, std::int64_t N);

// Exactly-known holomorphic oracle: tau(n)/n^{11/2} with tau from the integer
// q-expansion (see tau.hpp).
CoefficientTable tau_oracle(std::int64_t N);

struct KimSarnakMargin {
    double min_margin = 0.0;
    std::int64_t argmin_n = 0;
};

// min over 1 <= n <= N of d(n) n^{7/64} - |lambda(n)|.
KimSarnakMargin kim_sarnak_margin(const CoefficientTable& table);

// CSV ingestion ("n,lambda" header, rows n = 1..N in order). Hecke
// invariants are re-derived and checked at eps_build; violations fail
// ingestion. Errors carry the offending line number.
class IngestError : public std::runtime_error {
public:
    IngestError(std::int64_t line, const std::string& msg);
    std::int64_t line() const { return line_; }

private:
    std::int64_t line_;
};

CoefficientTable ingest_coefficients(std::istream& source, FormDescriptor descriptor,
                                     double eps_build = 1e-8);

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table);

}  // namespace heckesign

#endif
