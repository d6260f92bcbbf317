#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "modseries/int_types.hpp"

namespace modseries {

// Dense univariate polynomial in the colour parameter q with integer
// coefficients. Used as the coefficient domain of the symbolic-q series.
class QPoly {
  public:
    QPoly() = default;
    QPoly(long v) : c_{Int(v)} { trim(); }
    QPoly(const Int& v) : c_{v} { trim(); }
    explicit QPoly(std::vector<Int> c) : c_(std::move(c)) { trim(); }
    QPoly(std::initializer_list<long> c) {
        for (long v : c) c_.emplace_back(v);
        trim();
    }

    static QPoly variable() { return QPoly(std::vector<Int>{Int(0), Int(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Int(0);
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] += a.c_[i];
            if (i < b.c_.size()) r.c_[i] += b.c_[i];
        }
        r.trim();
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        QPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] += a.c_[i];
            if (i < b.c_.size()) r.c_[i] -= b.c_[i];
        }
        r.trim();
        return r;
    }
    friend QPoly operator-(const QPoly& a) {
        QPoly r = a;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        QPoly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (sgn(b.c_[j]) != 0)
                    mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(),
                               b.c_[j].get_mpz_t());
        }
        r.trim();
        return r;
    }
    QPoly& operator+=(const QPoly& b) { return *this = *this + b; }
    QPoly& operator-=(const QPoly& b) { return *this = *this - b; }
    QPoly& operator*=(const QPoly& b) { return *this = *this * b; }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    // Exact division by an integer constant; throws ExactnessError otherwise.
    QPoly divexact_int(const Int& d) const {
        QPoly r;
        r.c_.reserve(c_.size());
        for (const auto& v : c_) r.c_.push_back(divexact(v, d));
        return r;
    }

    // Exact division by the monomial q; requires zero constant term.
    QPoly divexact_q() const {
        if (c_.empty()) return QPoly();
        if (sgn(c_[0]) != 0)
            throw ExactnessError("QPoly: division by q with nonzero constant term");
        QPoly r;
        r.c_.assign(c_.begin() + 1, c_.end());
        r.trim();
        return r;
    }

    Rat eval(const Rat& q) const {
        Rat r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * q + Rat(c_[i]);
        return r;
    }
    Int eval(const Int& q) const {
        Int r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * q + c_[i];
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += c_[i].get_str();
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

}  // namespace modseries
