#include "modseries/hypergeom_reduce.hpp"

namespace modseries {

TruncationResult truncation_polynomial(const IntegerSeries& s, u64 p, long e_max) {
    if (!is_prime_u64(p)) throw DomainError("truncation_polynomial: p must be prime");
    if (residue(s.coeff(0), p) != 1)
        throw DomainError("truncation_polynomial: constant term must be 1 mod p");
    ModSeries v = reduce(s, p).inverse();
    ModSeries step = v.pow(static_cast<unsigned long>(p - 1));
    ModSeries cur = step;
    int n = s.order();
    TruncationResult res;
    for (long e = static_cast<long>(p) - 1; e <= e_max; e += static_cast<long>(p) - 1) {
        int d = 0;
        for (int k = 0; k <= n; ++k)
            if (cur[k]) d = k;
        // zeros above d are automatic; the zero-tail length decides
        if (n >= 4 * d && d < n) {
            res.status = TruncationResult::Status::FOUND;
            res.e = e;
            res.poly.assign(cur.coeffs().begin(), cur.coeffs().begin() + d + 1);
            res.margin = d > 0 ? n / d : n;
            return res;
        }
        if (n - d >= 16) {
            // a long run of zeros but margin below 4x: suspicious, not proof
            res.status = TruncationResult::Status::INCONCLUSIVE;
            res.e = e;
            res.poly.assign(cur.coeffs().begin(), cur.coeffs().begin() + d + 1);
            res.margin = d > 0 ? n / d : n;
            return res;
        }
        cur = cur * step;
    }
    res.status = TruncationResult::Status::NONE;
    return res;
}

FrobeniusCheckResult frobenius_truncation_check(const IntegerSeries& s, u64 p, int head_terms) {
    if (!is_prime_u64(p)) throw DomainError("frobenius_truncation_check: p must be prime");
    ModSeries sp = reduce(s, p);
    ModSeries powp = sp.pow(static_cast<unsigned long>(p));
    ModSeries frob = sp.substitute_power(static_cast<int>(p)).truncated(sp.order());
    FrobeniusCheckResult res;
    res.holds = (powp == frob);
    ModSeries head = powp;
    head[0] = submod(head[0], 1 % p, p);
    for (int k = 0; k <= head.order() && static_cast<int>(res.head.size()) < head_terms; ++k)
        if (head[k]) res.head.push_back({k, head[k]});
    return res;
}

bool power_pattern_check(const IntegerSeries& s, const std::vector<long>& m_values) {
    if (s.order() < 3) throw DomainError("power_pattern_check: need at least 4 coefficients");
    IntegerSeries s3 = s.truncated(3);
    for (long m : m_values) {
        if (m < 1) throw DomainError("power_pattern_check: M must be positive");
        IntegerSeries pm = s3.pow(static_cast<unsigned long>(m));
        Int M(m);
        if (pm.coeff(1) != 16 * M) return false;
        if (pm.coeff(2) != 16 * M * (8 * M + 73)) return false;
        Int x3 = divexact(Int(256) * M * (8 * M * M + 219 * M + 1648), Int(3));
        if (pm.coeff(3) != x3) return false;
    }
    return true;
}

}  // namespace modseries
