#include "modseries/relation.hpp"

#include <algorithm>

#include "modseries/fp_linalg.hpp"
#include "modseries/zm_solve.hpp"

namespace modseries {

namespace {

// Power cache: s^0 .. s^bmax reused across budgets.
struct PowerCache {
    std::vector<ModSeries> pw;
    const ModSeries* s = nullptr;
    void ensure(const ModSeries& base, int bmax) {
        if (s != &base) {
            pw.clear();
            s = &base;
        }
        if (pw.empty()) {
            ModSeries one(base.var(), base.modulus(), base.order());
            one[0] = 1 % base.modulus();
            pw.push_back(one);
        }
        while (static_cast<int>(pw.size()) <= bmax) pw.push_back(pw.back() * base);
    }
};

std::optional<GuessRelationResult> guess_relation_impl(const ModSeries& s, int degS, int degW,
                                                       int guard, PowerCache& cache) {
    u64 m = s.modulus();
    long U = static_cast<long>(degS + 1) * (degW + 1);
    long rows = U + guard;
    if (rows > s.order() + 1) throw DomainError("guess_relation: series too short");
    cache.ensure(s, degS);
    // columns ordered b ascending then a ascending
    auto col = [&](int a, int b) { return static_cast<size_t>(b) * (degW + 1) + a; };
    std::vector<std::vector<u64>> candidates;
    int nullity = 0;

    if (is_prime_u64(m)) {
        SmallField F(m);
        FpMatrix M(static_cast<int>(rows), static_cast<int>(U));
        for (int k = 0; k < rows; ++k) {
            u64* row = M.row(k);
            for (int b = 0; b <= degS; ++b) {
                const auto& pw = cache.pw[b];
                for (int a = 0; a <= degW && a <= k; ++a) row[col(a, b)] = pw[k - a];
            }
        }
        RrefResult rr = rref(M, F);
        candidates = nullspace_basis(M, rr, F);
        nullity = static_cast<int>(candidates.size());
    } else if (prime_power_base(m)) {
        std::vector<std::vector<u64>> rowsA(rows, std::vector<u64>(U, 0));
        for (int k = 0; k < rows; ++k)
            for (int b = 0; b <= degS; ++b) {
                const auto& pw = cache.pw[b];
                for (int a = 0; a <= degW && a <= k; ++a) rowsA[k][col(a, b)] = pw[k - a];
            }
        candidates = kernel_zm(rowsA, static_cast<int>(U), m);
        nullity = static_cast<int>(candidates.size());
    } else {
        throw DomainError("guess_relation: composite non-prime-power modulus unsupported");
    }
    if (candidates.empty()) return std::nullopt;

    // fewest nonzero terms first; must involve S
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        int cx = 0, cy = 0;
        for (u64 v : x) cx += (v != 0);
        for (u64 v : y) cy += (v != 0);
        return cx < cy;
    });
    for (const auto& v : candidates) {
        BivariateRelation rel;
        rel.modulus = m;
        bool has_s = false;
        for (int b = 0; b <= degS; ++b)
            for (int a = 0; a <= degW; ++a) {
                u64 c = v[col(a, b)];
                if (!c) continue;
                rel.terms.push_back({a, b, c});
                if (b >= 1) has_s = true;
            }
        if (!has_s) continue;
        rel.recompute_degrees();
        if (verify_relation(rel, s)) {
            rel.normalize();
            return GuessRelationResult{rel, nullity};
        }
    }
    return std::nullopt;
}

}  // namespace

void BivariateRelation::recompute_degrees() {
    degW = degS = 0;
    for (const auto& t : terms) {
        degW = std::max(degW, t.a);
        degS = std::max(degS, t.b);
    }
}

void BivariateRelation::normalize() {
    if (terms.empty()) return;
    auto key = [](const Term& t) { return std::pair<int, int>(t.b, t.a); };
    const Term* top = &terms[0];
    for (const auto& t : terms)
        if (key(t) > key(*top)) top = &t;
    auto inv = invmod(top->c, modulus);
    if (!inv) return;  // non-unit leading coefficient: leave as is
    for (auto& t : terms) t.c = mulmod(t.c, *inv, modulus);
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        return std::pair(x.b, x.a) < std::pair(y.b, y.a);
    });
}

ModSeries relation_residual(const BivariateRelation& P, const ModSeries& s) {
    if (P.modulus != s.modulus()) throw DomainError("verify_relation: modulus mismatch");
    int n = s.order();
    u64 m = s.modulus();
    ModSeries acc(s.var(), m, n);
    // power cache up to degS
    std::vector<ModSeries> pw;
    ModSeries one(s.var(), m, n);
    one[0] = 1 % m;
    pw.push_back(one);
    for (int b = 1; b <= P.degS; ++b) pw.push_back(pw.back() * s);
    for (const auto& t : P.terms) {
        const ModSeries& sb = pw[t.b];
        for (int k = t.a; k <= n; ++k) {
            u64 v = sb[k - t.a];
            if (v) acc[k] = addmod(acc[k], mulmod(t.c, v, m), m);
        }
    }
    return acc;
}

bool verify_relation(const BivariateRelation& P, const ModSeries& s) {
    return relation_residual(P, s).is_zero();
}

std::optional<GuessRelationResult> guess_relation(const ModSeries& s, int degS, int degW,
                                                  int guard) {
    PowerCache cache;
    return guess_relation_impl(s, degS, degW, guard, cache);
}

std::optional<BivariateRelation> search_relation(const ModSeries& s, long budget_bound,
                                                 int guard) {
    PowerCache cache;
    for (long B = 2; B <= budget_bound; ++B) {
        for (int degS = 1; degS + 1 <= B; ++degS) {
            if (B % (degS + 1)) continue;
            int degW = static_cast<int>(B / (degS + 1)) - 1;
            if (degW < 0) continue;
            long rows = B + guard;
            if (rows > s.order() + 1) continue;
            auto r = guess_relation_impl(s, degS, degW, guard, cache);
            if (r) return r->rel;
        }
    }
    return std::nullopt;
}

bool verify_frobenius(const FrobeniusRelation& R, const ModSeries& s) {
    if (R.p != s.modulus()) throw DomainError("verify_frobenius: modulus mismatch");
    int n = s.order();
    u64 p = R.p;
    ModSeries acc(s.var(), p, n);
    for (const auto& t : R.terms) {
        ModSeries base(s.var(), p, n);
        if (t.exponent == 0) {
            base[0] = 1 % p;
        } else {
            // s^{p^i}(x) = s(x^{p^i}) mod p
            for (long k = 0; k * t.exponent <= n; ++k)
                base[static_cast<int>(k * t.exponent)] = s[static_cast<int>(k)];
        }
        for (int d = 0; d < static_cast<int>(t.poly.size()); ++d) {
            u64 c = t.poly[d];
            if (!c) continue;
            for (int k = d; k <= n; ++k) {
                u64 v = base[k - d];
                if (v) acc[k] = addmod(acc[k], mulmod(c, v, p), p);
            }
        }
    }
    return acc.is_zero();
}

std::optional<FrobeniusRelation> guess_frobenius(const ModSeries& s, int i_max, int deg_bound) {
    u64 p = s.modulus();
    if (!is_prime_u64(p)) throw DomainError("guess_frobenius: modulus must be prime");
    int n = s.order();
    long pe = 1;
    std::vector<long> exponents{0};  // constant column block
    for (int i = 0; i <= i_max; ++i) {
        exponents.push_back(pe);
        if (pe > (n + 1)) break;
        pe *= static_cast<long>(p);
    }
    int blocks = static_cast<int>(exponents.size());
    long U = static_cast<long>(blocks) * (deg_bound + 1);
    if (U >= n + 1) throw DomainError("guess_frobenius: series too short");
    SmallField F(p);
    FpMatrix M(n + 1, static_cast<int>(U));
    for (int k = 0; k <= n; ++k) {
        u64* row = M.row(k);
        for (int blk = 0; blk < blocks; ++blk) {
            long e = exponents[blk];
            for (int d = 0; d <= deg_bound && d <= k; ++d) {
                u64 v;
                if (e == 0) {
                    v = (k == d) ? 1 : 0;
                } else {
                    long q = k - d;
                    v = (q % e == 0) ? s[static_cast<int>(q / e)] : 0;
                }
                row[static_cast<size_t>(blk) * (deg_bound + 1) + d] = v;
            }
        }
    }
    RrefResult rr = rref(M, F);
    auto basis = nullspace_basis(M, rr, F);
    if (basis.empty()) return std::nullopt;
    std::sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) {
        int cx = 0, cy = 0;
        for (u64 v : x) cx += (v != 0);
        for (u64 v : y) cy += (v != 0);
        return cx < cy;
    });
    for (const auto& v : basis) {
        FrobeniusRelation R;
        R.p = p;
        bool has_s = false;
        for (int blk = 0; blk < blocks; ++blk) {
            std::vector<u64> poly(deg_bound + 1, 0);
            bool nz = false;
            for (int d = 0; d <= deg_bound; ++d) {
                poly[d] = v[static_cast<size_t>(blk) * (deg_bound + 1) + d];
                nz |= (poly[d] != 0);
            }
            if (!nz) continue;
            while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
            R.terms.push_back({exponents[blk], std::move(poly)});
            if (exponents[blk] > 0) has_s = true;
        }
        if (!has_s) continue;
        if (verify_frobenius(R, s)) {
            // normalize: leading coefficient of the highest-exponent term -> 1
            u64 lead = R.terms.back().poly.back();
            if (auto inv = invmod(lead, p)) {
                for (auto& t : R.terms)
                    for (auto& c : t.poly) c = mulmod(c, *inv, p);
            }
            return R;
        }
    }
    return std::nullopt;
}

}  // namespace modseries
