#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "modseries/int_types.hpp"
#include "modseries/qpoly.hpp"

namespace modseries {

template <class C>
struct coeff_traits {
    static C zero() { return C(0); }
    static bool is_zero(const C& v) { return v == C(0); }
    static C from_long(long v) { return C(v); }
};
template <>
struct coeff_traits<Int> {
    static Int zero() { return Int(0); }
    static bool is_zero(const Int& v) { return sgn(v) == 0; }
    static Int from_long(long v) { return Int(v); }
};
template <>
struct coeff_traits<Rat> {
    static Rat zero() { return Rat(0); }
    static bool is_zero(const Rat& v) { return sgn(v) == 0; }
    static Rat from_long(long v) { return Rat(v); }
};
template <>
struct coeff_traits<QPoly> {
    static QPoly zero() { return QPoly(); }
    static bool is_zero(const QPoly& v) { return v.is_zero(); }
    static QPoly from_long(long v) { return QPoly(v); }
};

// Truncated power series: coefficients for degrees 0..n, exactly n+1 entries.
// Arithmetic never silently changes the order; binary operations carry the
// min of the operand orders.
template <class C>
class Series {
  public:
    using traits = coeff_traits<C>;

    Series() : var_("w"), n_(-1) {}
    Series(std::string var, int n) : var_(std::move(var)), n_(n) {
        if (n < 0) throw DomainError("Series: negative order");
        c_.assign(n + 1, traits::zero());
    }
    Series(std::string var, std::vector<C> coeffs)
        : var_(std::move(var)), n_(static_cast<int>(coeffs.size()) - 1), c_(std::move(coeffs)) {
        if (n_ < 0) throw DomainError("Series: empty coefficient list");
    }

    const std::string& var() const { return var_; }
    int order() const { return n_; }
    const std::vector<C>& coeffs() const { return c_; }
    const C& operator[](int k) const { return c_[k]; }
    C& operator[](int k) { return c_[k]; }
    C coeff(int k) const {
        return (k >= 0 && k <= n_) ? c_[k] : traits::zero();
    }
    bool is_zero() const {
        for (const auto& v : c_)
            if (!traits::is_zero(v)) return false;
        return true;
    }

    Series truncated(int m) const {
        if (m >= n_) return *this;
        Series r(var_, m);
        for (int k = 0; k <= m; ++k) r.c_[k] = c_[k];
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int n = std::min(a.n_, b.n_);
        Series r(a.var_, n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        int n = std::min(a.n_, b.n_);
        Series r(a.var_, n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend Series operator-(const Series& a) {
        Series r = a;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        int n = std::min(a.n_, b.n_);
        Series r(a.var_, n);
        for (int i = 0; i <= n; ++i) {
            if (traits::is_zero(a.c_[i])) continue;
            for (int j = 0; j + i <= n; ++j)
                if (!traits::is_zero(b.c_[j])) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend Series operator*(const C& s, const Series& a) {
        Series r = a;
        for (auto& v : r.c_) v = s * v;
        return r;
    }
    friend bool operator==(const Series& a, const Series& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    // Truncated integer power (binary powering).
    Series pow(unsigned long e) const {
        Series r(var_, n_);
        r.c_[0] = traits::from_long(1);
        Series b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // d/dw. Order drops by one.
    Series derivative() const {
        if (n_ == 0) return Series(var_, std::vector<C>{traits::zero()});
        Series r(var_, n_ - 1);
        for (int k = 1; k <= n_; ++k) r.c_[k - 1] = traits::from_long(k) * c_[k];
        return r;
    }

    // theta = w * d/dw; acts diagonally, order preserved.
    Series theta() const {
        Series r(var_, n_);
        for (int k = 0; k <= n_; ++k) r.c_[k] = traits::from_long(k) * c_[k];
        return r;
    }

    // Multiplication by w^a; order grows by a (exact, no information lost).
    Series shift_up(int a) const {
        if (a < 0) throw DomainError("shift_up: negative shift");
        Series r(var_, n_ + a);
        for (int k = 0; k <= n_; ++k) r.c_[k + a] = c_[k];
        return r;
    }

    // Substitution w -> c * w^k.
    Series substitute(const C& scale, int k) const {
        if (k < 1) throw DomainError("substitute: exponent must be >= 1");
        Series r(var_, n_ * k);
        C p = traits::from_long(1);
        for (int i = 0; i <= n_; ++i) {
            r.c_[static_cast<long>(i) * k] = p * c_[i];
            p = p * scale;
        }
        return r;
    }

    std::string var_;
    int n_;
    std::vector<C> c_;
};

using IntegerSeries = Series<Int>;
using RationalSeries = Series<Rat>;
using QPolySeries = Series<QPoly>;

// Truncated division a/b where b has an invertible constant term.
// For C = Int the divisions must all be exact (unit constant term over Z).
template <class C>
Series<C> divide_unit(const Series<C>& a, const Series<C>& b);

template <>
inline Series<Rat> divide_unit(const Series<Rat>& a, const Series<Rat>& b) {
    if (coeff_traits<Rat>::is_zero(b.coeff(0)))
        throw DomainError("divide_unit: zero constant term");
    int n = std::min(a.order(), b.order());
    Series<Rat> q(a.var(), n);
    for (int k = 0; k <= n; ++k) {
        Rat acc = a.coeff(k);
        for (int j = 1; j <= k; ++j) acc -= b.coeff(j) * q[k - j];
        q[k] = acc / b.coeff(0);
    }
    return q;
}

template <>
inline Series<Int> divide_unit(const Series<Int>& a, const Series<Int>& b) {
    if (coeff_traits<Int>::is_zero(b.coeff(0)))
        throw DomainError("divide_unit: zero constant term");
    int n = std::min(a.order(), b.order());
    Series<Int> q(a.var(), n);
    for (int k = 0; k <= n; ++k) {
        Int acc = a.coeff(k);
        for (int j = 1; j <= k; ++j) acc -= b.coeff(j) * q[k - j];
        q[k] = divexact(acc, b.coeff(0));
    }
    return q;
}

inline RationalSeries to_rational(const IntegerSeries& s) {
    RationalSeries r(s.var(), s.order());
    for (int k = 0; k <= s.order(); ++k) r[k] = Rat(s.coeff(k));
    return r;
}

inline IntegerSeries to_integer(const RationalSeries& s) {
    IntegerSeries r(s.var(), s.order());
    for (int k = 0; k <= s.order(); ++k) r[k] = to_int(s.coeff(k));
    return r;
}

// Specialize a symbolic-q series at a numeric q.
inline IntegerSeries specialize(const QPolySeries& s, const Int& q) {
    IntegerSeries r(s.var(), s.order());
    for (int k = 0; k <= s.order(); ++k) r[k] = s.coeff(k).eval(q);
    return r;
}

// Laurent series: coefficients for exponents lead..hi. Exponents may be
// negative. Invariant: the coefficient at lead is nonzero unless the series
// is identically zero.
template <class C>
class LaurentSeries {
  public:
    using traits = coeff_traits<C>;

    LaurentSeries() : var_("w"), lead_(0) {}
    LaurentSeries(std::string var, int lead, std::vector<C> coeffs)
        : var_(std::move(var)), lead_(lead), c_(std::move(coeffs)) {
        normalize();
    }
    static LaurentSeries from_series(const Series<C>& s, int shift = 0) {
        return LaurentSeries(s.var(), shift, s.coeffs());
    }

    const std::string& var() const { return var_; }
    int lead() const { return lead_; }
    int hi() const { return lead_ + static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    C coeff(int e) const {
        int i = e - lead_;
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : traits::zero();
    }

    LaurentSeries truncated(int hi_new) const {
        if (hi_new >= hi()) return *this;
        if (hi_new < lead_) return LaurentSeries(var_, 0, {});
        std::vector<C> c(c_.begin(), c_.begin() + (hi_new - lead_ + 1));
        return LaurentSeries(var_, lead_, std::move(c));
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_zero()) return b.truncated(std::min(a.hi(), b.hi()));
        if (b.is_zero()) return a.truncated(std::min(a.hi(), b.hi()));
        int lead = std::min(a.lead_, b.lead_);
        int hi = std::min(a.hi(), b.hi());
        std::vector<C> c(std::max(0, hi - lead + 1), traits::zero());
        for (int e = lead; e <= hi; ++e) c[e - lead] = a.coeff(e) + b.coeff(e);
        return LaurentSeries(a.var_, lead, std::move(c));
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (traits::from_long(-1) * b);
    }
    friend LaurentSeries operator*(const C& s, const LaurentSeries& a) {
        LaurentSeries r = a;
        for (auto& v : r.c_) v = s * v;
        r.normalize();
        return r;
    }
    // Truncated product: reliable up to min(a.hi + b.lead, b.hi + a.lead).
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_zero() || b.is_zero()) return LaurentSeries(a.var_, 0, {});
        int lead = a.lead_ + b.lead_;
        int hi = std::min(a.hi() + b.lead_, b.hi() + a.lead_);
        std::vector<C> c(hi - lead + 1, traits::zero());
        for (int i = a.lead_; i <= a.hi(); ++i) {
            if (traits::is_zero(a.coeff(i))) continue;
            for (int j = b.lead_; j <= b.hi() && i + j <= hi; ++j)
                c[i + j - lead] += a.coeff(i) * b.coeff(j);
        }
        return LaurentSeries(a.var_, lead, std::move(c));
    }

    LaurentSeries derivative() const {
        std::vector<C> c;
        c.reserve(c_.size());
        for (int e = lead_; e <= hi(); ++e) c.push_back(traits::from_long(e) * coeff(e));
        return LaurentSeries(var_, lead_ - 1, std::move(c));
    }
    LaurentSeries theta() const {
        std::vector<C> c;
        c.reserve(c_.size());
        for (int e = lead_; e <= hi(); ++e) c.push_back(traits::from_long(e) * coeff(e));
        return LaurentSeries(var_, lead_, std::move(c));
    }
    LaurentSeries shifted(int a) const {
        LaurentSeries r = *this;
        r.lead_ += a;
        return r;
    }

    // a / b where b has invertible leading coefficient (C a field).
    friend LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b) {
        if (b.is_zero()) throw DomainError("Laurent divide: zero divisor");
        int qlead = a.lead_ - b.lead_;
        int terms = std::min(static_cast<int>(a.c_.size()), static_cast<int>(b.c_.size()));
        if (terms <= 0) return LaurentSeries(a.var_, 0, {});
        std::vector<C> q(terms, traits::zero());
        for (int k = 0; k < terms; ++k) {
            C acc = a.coeff(a.lead_ + k);
            for (int j = 1; j <= k; ++j) acc = acc - b.coeff(b.lead_ + j) * q[k - j];
            q[k] = acc / b.c_[0];
        }
        return LaurentSeries(a.var_, qlead, std::move(q));
    }

  private:
    void normalize() {
        size_t i = 0;
        while (i < c_.size() && traits::is_zero(c_[i])) ++i;
        if (i > 0) {
            c_.erase(c_.begin(), c_.begin() + i);
            lead_ += static_cast<int>(i);
        }
        if (c_.empty()) lead_ = 0;
    }
    std::string var_;
    int lead_;
    std::vector<C> c_;
};

using LaurentRationalSeries = LaurentSeries<Rat>;

}  // namespace modseries
