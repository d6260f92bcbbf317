#pragma once

#include <string>
#include <vector>

#include "modseries/modring.hpp"
#include "modseries/series.hpp"

namespace modseries {

// Truncated series over Z/m, m >= 2 (prime, prime power or composite).
// Coefficients are canonical residues in [0, m).
class ModSeries {
  public:
    ModSeries() : var_("w"), m_(2), n_(-1) {}
    ModSeries(std::string var, u64 m, int n) : var_(std::move(var)), m_(m), n_(n) {
        if (m < 2) throw DomainError("ModSeries: modulus must be >= 2");
        if (n < 0) throw DomainError("ModSeries: negative order");
        c_.assign(n + 1, 0);
    }
    ModSeries(std::string var, u64 m, std::vector<u64> coeffs)
        : var_(std::move(var)), m_(m), n_(static_cast<int>(coeffs.size()) - 1), c_(std::move(coeffs)) {
        if (m < 2) throw DomainError("ModSeries: modulus must be >= 2");
        for (auto& v : c_) v %= m_;
    }

    const std::string& var() const { return var_; }
    u64 modulus() const { return m_; }
    int order() const { return n_; }
    const std::vector<u64>& coeffs() const { return c_; }
    u64 operator[](int k) const { return c_[k]; }
    u64& operator[](int k) { return c_[k]; }
    u64 coeff(int k) const { return (k >= 0 && k <= n_) ? c_[k] : 0; }
    bool is_zero() const {
        for (u64 v : c_)
            if (v) return false;
        return true;
    }

    ModSeries truncated(int m) const {
        if (m >= n_) return *this;
        ModSeries r(var_, m_, m);
        for (int k = 0; k <= m; ++k) r.c_[k] = c_[k];
        return r;
    }

    friend ModSeries operator+(const ModSeries& a, const ModSeries& b) {
        a.check(b);
        int n = std::min(a.n_, b.n_);
        ModSeries r(a.var_, a.m_, n);
        for (int k = 0; k <= n; ++k) r.c_[k] = addmod(a.c_[k], b.c_[k], a.m_);
        return r;
    }
    friend ModSeries operator-(const ModSeries& a, const ModSeries& b) {
        a.check(b);
        int n = std::min(a.n_, b.n_);
        ModSeries r(a.var_, a.m_, n);
        for (int k = 0; k <= n; ++k) r.c_[k] = submod(a.c_[k], b.c_[k], a.m_);
        return r;
    }
    friend ModSeries operator*(const ModSeries& a, const ModSeries& b) {
        a.check(b);
        int n = std::min(a.n_, b.n_);
        ModSeries r(a.var_, a.m_, n);
        Barrett bar(a.m_);
        for (int i = 0; i <= n; ++i) {
            if (!a.c_[i]) continue;
            for (int j = 0; j + i <= n; ++j)
                if (b.c_[j]) r.c_[i + j] = bar.addmul(r.c_[i + j], a.c_[i], b.c_[j]);
        }
        return r;
    }
    friend ModSeries operator*(u64 s, const ModSeries& a) {
        ModSeries r = a;
        s %= a.m_;
        for (auto& v : r.c_) v = mulmod(v, s, a.m_);
        return r;
    }
    friend bool operator==(const ModSeries& a, const ModSeries& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.c_ == b.c_;
    }

    ModSeries pow(unsigned long e) const {
        ModSeries r(var_, m_, n_);
        r.c_[0] = 1 % m_;
        ModSeries b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Substitution w -> w^k.
    ModSeries substitute_power(int k) const {
        if (k < 1) throw DomainError("substitute_power: exponent must be >= 1");
        ModSeries r(var_, m_, n_ * k);
        for (int i = 0; i <= n_; ++i) r.c_[static_cast<long>(i) * k] = c_[i];
        return r;
    }

    ModSeries shift_up(int a) const {
        ModSeries r(var_, m_, n_ + a);
        for (int k = 0; k <= n_; ++k) r.c_[k + a] = c_[k];
        return r;
    }

    ModSeries theta() const {
        ModSeries r(var_, m_, n_);
        for (int k = 0; k <= n_; ++k) r.c_[k] = mulmod(c_[k], static_cast<u64>(k) % m_, m_);
        return r;
    }

    // Truncated inverse; constant term must be a unit.
    ModSeries inverse() const {
        auto inv0 = invmod(c_[0], m_);
        if (!inv0) throw DomainError("ModSeries::inverse: constant term not a unit");
        ModSeries r(var_, m_, n_);
        Barrett bar(m_);
        r.c_[0] = *inv0;
        for (int k = 1; k <= n_; ++k) {
            u64 acc = 0;
            for (int j = 1; j <= k; ++j)
                if (c_[j]) acc = bar.addmul(acc, c_[j], r.c_[k - j]);
            r.c_[k] = bar.mul(submod(0, acc, m_), *inv0);
        }
        return r;
    }

    // Canonical integer lift with coefficients in [0, m).
    IntegerSeries lift() const {
        IntegerSeries r(var_, n_);
        for (int k = 0; k <= n_; ++k) r[k] = Int(static_cast<unsigned long>(c_[k]));
        return r;
    }

  private:
    void check(const ModSeries& b) const {
        if (m_ != b.m_) throw DomainError("ModSeries: modulus mismatch");
    }
    std::string var_;
    u64 m_;
    int n_;
    std::vector<u64> c_;
};

inline ModSeries reduce(const IntegerSeries& s, u64 m) {
    ModSeries r(s.var(), m, s.order());
    for (int k = 0; k <= s.order(); ++k) r[k] = residue(s.coeff(k), m);
    return r;
}

// Requires every denominator coprime to m.
inline ModSeries reduce(const RationalSeries& s, u64 m) {
    ModSeries r(s.var(), m, s.order());
    for (int k = 0; k <= s.order(); ++k) r[k] = residue(s.coeff(k), m);
    return r;
}

enum class LacKind { L2, L3, L6 };

inline const char* lac_name(LacKind k) {
    switch (k) {
        case LacKind::L2: return "L2";
        case LacKind::L3: return "L3";
        default: return "L6";
    }
}

// Truncation of sum(w^{2^i}), sum(w^{3^i}) or sum(w^{2*3^i}) mod m: all
// terms with exponent <= n, no partial terms.
inline ModSeries lacunary_series(LacKind kind, u64 m, int n) {
    if (n < 1) throw DomainError("lacunary_series: order must be >= 1");
    ModSeries r("w", m, n);
    unsigned long base = (kind == LacKind::L2) ? 2 : 3;
    unsigned long mul = (kind == LacKind::L6) ? 2 : 1;
    Int e(static_cast<unsigned long>(mul));
    while (e <= n) {
        r[static_cast<int>(e.get_ui())] = 1 % m;
        e *= base;
    }
    return r;
}

// Exact integer lift of a lacunary function, truncated at order n.
inline IntegerSeries lacunary_lift(LacKind kind, int n) {
    IntegerSeries r("w", n);
    unsigned long base = (kind == LacKind::L2) ? 2 : 3;
    unsigned long mul = (kind == LacKind::L6) ? 2 : 1;
    Int e(mul);
    while (e <= n) {
        r[static_cast<int>(e.get_ui())] = 1;
        e *= base;
    }
    return r;
}

}  // namespace modseries
