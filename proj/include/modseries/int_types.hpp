#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modseries {

using Int = mpz_class;
using Rat = mpq_class;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signals a violated exactness assumption (inexact division, non-integral
// coefficient where integrality is required). Distinct from DomainError so
// callers can tell bad input from a mistranscribed formula.
struct ExactnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int divexact(const Int& a, const Int& b) {
    if (sgn(b) == 0) throw DomainError("divexact: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sgn(r) != 0) throw ExactnessError("divexact: inexact division");
    return q;
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

inline Int to_int(const Rat& x) {
    if (!is_integral(x)) throw ExactnessError("to_int: non-integral rational");
    return x.get_num();
}

// Residue of a rational mod m; requires gcd(den, m) = 1.
inline std::uint64_t residue(const Rat& x, std::uint64_t m) {
    Int mm(static_cast<unsigned long>(m));
    Int num = x.get_num() % mm;
    if (sgn(num) < 0) num += mm;
    Int den = x.get_den() % mm;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0)
        throw DomainError("residue: the modular inverse does not exist");
    Int r = (num * inv) % mm;
    return r.get_ui();
}

inline std::uint64_t residue(const Int& x, std::uint64_t m) {
    Int mm(static_cast<unsigned long>(m));
    Int r = x % mm;
    if (sgn(r) < 0) r += mm;
    return r.get_ui();
}

}  // namespace modseries
