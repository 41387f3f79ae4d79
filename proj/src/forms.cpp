#include "heckesign/forms.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "heckesign/parallel.hpp"
#include "heckesign/primes.hpp"
#include "heckesign/tau.hpp"

namespace heckesign {

std::string to_string(FormKind kind) {
    switch (kind) {
        case FormKind::maass_cusp: return "maass-cusp";
        case FormKind::eisenstein_oracle: return "eisenstein-oracle";
        case FormKind::holomorphic_oracle: return "holomorphic-oracle";
        case FormKind::file_ingested: return "file-ingested";
    }
    throw std::logic_error("unknown FormKind");
}

FormKind form_kind_from_string(const std::string& s) {
    if (s == "maass-cusp") return FormKind::maass_cusp;
    if (s == "eisenstein-oracle") return FormKind::eisenstein_oracle;
    if (s == "holomorphic-oracle") return FormKind::holomorphic_oracle;
    if (s == "file-ingested") return FormKind::file_ingested;
    throw std::invalid_argument("unknown form kind: " + s);
}

void FormDescriptor::validate() const {
    if (parity != 0 && parity != 1)
        throw std::invalid_argument("FormDescriptor.parity must be 0 or 1");
    if (kind == FormKind::maass_cusp) {
        if (!spectral || *spectral <= 0)
            throw std::invalid_argument("FormDescriptor.spectral must be > 0 for maass-cusp");
    }
    if (kind == FormKind::eisenstein_oracle && !spectral)
        throw std::invalid_argument("FormDescriptor.spectral required for eisenstein-oracle");
    if (spectral && !std::isfinite(*spectral))
        throw std::invalid_argument("FormDescriptor.spectral must be finite");
}

FormDescriptor descriptor_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FormDescriptor d;
    d.id = j.at("id").get<std::string>();
    d.kind = form_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("spectral") && !j["spectral"].is_null())
        d.spectral = j["spectral"].get<double>();
    d.parity = j.at("parity").get<int>();
    d.validate();
    return d;
}

std::string descriptor_to_json(const FormDescriptor& d) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["kind"] = to_string(d.kind);
    if (d.spectral)
        j["spectral"] = *d.spectral;
    else
        j["spectral"] = nullptr;
    j["parity"] = d.parity;
    return j.dump();
}

PrimeCoefficientSet::PrimeCoefficientSet(std::vector<std::pair<std::int64_t, double>> entries,
                                         std::int64_t prime_bound)
    : entries_(std::move(entries)), prime_bound_(prime_bound) {
    if (prime_bound_ < 2) throw std::invalid_argument("PrimeCoefficientSet: prime_bound < 2");
    std::sort(entries_.begin(), entries_.end());
    auto sieve = shared_sieve(prime_bound_);
    std::int64_t prev = 0;
    for (const auto& [p, v] : entries_) {
        if (p == prev)
            throw std::invalid_argument("PrimeCoefficientSet: duplicate prime " + std::to_string(p));
        if (p > prime_bound_ || !sieve->is_prime(p))
            throw std::invalid_argument("PrimeCoefficientSet: key " + std::to_string(p) +
                                        " is not a prime <= prime_bound");
        if (!std::isfinite(v))
            throw std::invalid_argument("PrimeCoefficientSet: non-finite value at p = " +
                                        std::to_string(p));
        prev = p;
    }
}

std::optional<double> PrimeCoefficientSet::lambda(std::int64_t p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const auto& e, std::int64_t key) { return e.first < key; });
    if (it == entries_.end() || it->first != p) return std::nullopt;
    return it->second;
}

CoefficientTable::CoefficientTable(FormDescriptor descriptor, std::vector<double> values,
                                   double eps_build)
    : descriptor_(std::move(descriptor)), values_(std::move(values)), eps_build_(eps_build) {
    descriptor_.validate();
    if (values_.size() < 2) throw std::invalid_argument("CoefficientTable: needs N >= 1");
    if (eps_build_ <= 0) throw std::invalid_argument("CoefficientTable: eps_build must be > 0");
    if (std::abs(values_[1] - 1.0) > eps_build_)
        throw std::invalid_argument("CoefficientTable: lambda(1) must equal 1");
}

double CoefficientTable::lambda(std::int64_t n) const {
    if (n < 1 || n > size())
        throw std::out_of_range("CoefficientTable: n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(size()) + "]");
    return values_[n];
}

CoefficientTable hecke_extend(const PrimeCoefficientSet& primes, FormDescriptor descriptor,
                              std::int64_t N, double eps_build) {
    if (N < 1) throw std::invalid_argument("hecke_extend: N must be >= 1");
    if (primes.prime_bound() < N && N >= 2)
        throw std::invalid_argument("hecke_extend: prime_bound below N");
    auto sieve = shared_sieve(N);
    std::vector<double> v(N + 1, 0.0);
    v[1] = 1.0;

    // Prime values first, so the single forward pass below only ever looks
    // backwards.
    for (std::int64_t p : sieve->primes()) {
        if (p > N) break;
        auto lp = primes.lambda(p);
        if (!lp)
            throw std::invalid_argument("hecke_extend: missing prime coefficient for p = " +
                                        std::to_string(p));
        v[p] = *lp;
    }

    for (std::int64_t n = 2; n <= N; ++n) {
        std::int64_t pk = sieve->prime_power_part(n);
        if (pk != n) {
            v[n] = v[pk] * v[n / pk];  // coprime split
        } else if (!sieve->is_prime(n)) {
            std::int64_t p = sieve->spf(n);
            v[n] = v[p] * v[n / p] - v[n / (p * p)];
        }
    }
    return CoefficientTable(std::move(descriptor), std::move(v), eps_build);
}

PairingCheck hecke_pairing_check(const CoefficientTable& table, std::int64_t m, std::int64_t n,
                                 double tol) {
    if (m < 1 || n < 1) throw std::invalid_argument("hecke_pairing_check: m, n must be >= 1");
    if (m > table.size() || n > table.size() || m > table.size() / n)
        throw std::out_of_range("hecke_pairing_check: m*n exceeds table length");
    std::int64_t g = std::gcd(m, n);
    double rhs = 0.0;
    for (std::int64_t d = 1; d * d <= g; ++d) {
        if (g % d != 0) continue;
        rhs += table(m * n / (d * d));
        std::int64_t e = g / d;
        if (e != d) rhs += table(m * n / (e * e));
    }
    double lhs = table(m) * table(n);
    PairingCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.pass = std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs));
    return out;
}

CoefficientTable eisenstein_coefficients(double t, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("eisenstein_coefficients: N must be >= 1");
    if (!std::isfinite(t)) throw std::invalid_argument("eisenstein_coefficients: t must be finite");
    std::vector<double> tlog(N + 1, 0.0);
    for (std::int64_t n = 1; n <= N; ++n) tlog[n] = t * std::log(static_cast<double>(n));

    std::vector<double> v(N + 1, 0.0);
    // Per-index accumulation runs over divisors in ascending order in every
    // block, so blocked and serial fills agree bitwise.
    parallel_blocks(1, N, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t d = 1; d <= hi; ++d) {
            double two_logd = 2.0 * tlog[d];
            std::int64_t first = std::max((lo + d - 1) / d, std::int64_t(1)) * d;
            for (std::int64_t n = first; n <= hi; n += d) v[n] += std::cos(two_logd - tlog[n]);
        }
    });

    FormDescriptor d;
    d.id = "eisenstein(t=" + std::to_string(t) + ")";
    d.kind = FormKind::eisenstein_oracle;
    d.spectral = t;
    d.parity = 0;
    v[1] = 1.0;  // cos(0), exactly
    return CoefficientTable(std::move(d), std::move(v), 1e-10);
}

CoefficientTable tau_oracle(std::int64_t N) {
    std::vector<i128> tau = tau_qexpansion(N);
    std::vector<double> v(N + 1, 0.0);
    for (std::int64_t n = 1; n <= N; ++n) v[n] = tau_normalized(tau[n], n);
    FormDescriptor d;
    d.id = "tau";
    d.kind = FormKind::holomorphic_oracle;
    d.parity = 0;
    return CoefficientTable(std::move(d), std::move(v), 1e-10);
}

KimSarnakMargin kim_sarnak_margin(const CoefficientTable& table) {
    const std::int64_t N = table.size();
    auto sieve = shared_sieve(N);

    // d(n) by one linear pass over the spf decomposition.
    std::vector<std::int32_t> dcount(N + 1, 1);
    for (std::int64_t n = 2; n <= N; ++n) {
        std::int64_t pk = sieve->prime_power_part(n);
        if (pk == n) {
            std::int64_t p = sieve->spf(n), e = 0, m = n;
            while (m > 1) {
                m /= p;
                ++e;
            }
            dcount[n] = static_cast<std::int32_t>(e + 1);
        } else {
            dcount[n] = dcount[pk] * dcount[n / pk];
        }
    }

    const std::int64_t nblocks = block_count(1, N);
    std::vector<KimSarnakMargin> best(nblocks);
    parallel_blocks(1, N, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
        double m = std::numeric_limits<double>::infinity();
        std::int64_t arg = lo;
        for (std::int64_t n = lo; n <= hi; ++n) {
            double bound = dcount[n] * std::pow(static_cast<double>(n), 7.0 / 64.0);
            double margin = bound - std::abs(table(n));
            if (margin < m) {
                m = margin;
                arg = n;
            }
        }
        best[b] = {m, arg};
    });
    KimSarnakMargin out = best[0];
    for (const auto& cand : best)
        if (cand.min_margin < out.min_margin) out = cand;
    return out;
}

IngestError::IngestError(std::int64_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

// Complete Hecke consistency check in O(N): prime-power recursion at every
// p^k <= N plus the coprime split of every composite. Together these generate
// all pairing identities.
void check_hecke_consistency(const std::vector<double>& v, double eps) {
    const std::int64_t N = static_cast<std::int64_t>(v.size()) - 1;
    auto sieve = shared_sieve(N);
    for (std::int64_t n = 4; n <= N; ++n) {
        std::int64_t pk = sieve->prime_power_part(n);
        double expected;
        if (pk != n) {
            expected = v[pk] * v[n / pk];
        } else if (sieve->is_prime(n)) {
            continue;
        } else {
            std::int64_t p = sieve->spf(n);
            expected = v[p] * v[n / p] - v[n / (p * p)];
        }
        if (std::abs(v[n] - expected) > eps * (1.0 + std::abs(expected)))
            throw IngestError(n + 1, "Hecke violation at n = " + std::to_string(n) +
                                         ": lambda = " + std::to_string(v[n]) +
                                         ", derived = " + std::to_string(expected));
    }
}

}  // namespace

CoefficientTable ingest_coefficients(std::istream& source, FormDescriptor descriptor,
                                     double eps_build) {
    descriptor.validate();
    if (eps_build <= 0) throw std::invalid_argument("ingest_coefficients: eps_build must be > 0");
    std::string line;
    std::int64_t lineno = 0;

    auto next_line = [&](std::string& out) -> bool {
        if (!std::getline(source, out)) return false;
        ++lineno;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
    };

    if (!next_line(line)) throw IngestError(1, "empty stream, expected header \"n,lambda\"");
    if (line != "n,lambda") throw IngestError(lineno, "bad header, expected \"n,lambda\"");

    std::vector<double> v;
    v.push_back(0.0);
    std::int64_t expected_n = 1;
    while (next_line(line)) {
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw IngestError(lineno, "malformed line, expected \"n,lambda\"");
        std::int64_t n;
        double value;
        try {
            std::size_t used = 0;
            n = std::stoll(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing junk");
            std::string val = line.substr(comma + 1);
            value = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("trailing junk");
        } catch (const IngestError&) {
            throw;
        } catch (const std::exception&) {
            throw IngestError(lineno, "malformed line: " + line);
        }
        if (n != expected_n) {
            if (n > expected_n)
                throw IngestError(lineno, "gap in n: expected " + std::to_string(expected_n));
            throw IngestError(lineno, "out-of-order n = " + std::to_string(n));
        }
        if (!std::isfinite(value)) throw IngestError(lineno, "non-finite lambda");
        v.push_back(value);
        ++expected_n;
    }
    if (v.size() < 2) throw IngestError(lineno + 1, "no coefficient rows");
    if (std::abs(v[1] - 1.0) > eps_build)
        throw IngestError(2, "lambda(1) = " + std::to_string(v[1]) + ", expected 1 after normalization");

    check_hecke_consistency(v, eps_build);
    return CoefficientTable(std::move(descriptor), std::move(v), eps_build);
}

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table) {
    out << "n,lambda\n";
    char buf[64];
    for (std::int64_t n = 1; n <= table.size(); ++n) {
        std::snprintf(buf, sizeof(buf), "%.15g", table(n));
        out << n << ',' << buf << '\n';
    }
}

}  // namespace heckesign
