#pragma once

#include <cstdint>
#include <optional>

#include "modseries/int_types.hpp"

namespace modseries {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 r = a + b;
    return (r >= m || r < a) ? r - m : r;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline std::optional<u64> invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

// Fixed-modulus reduction helper for inner loops. For m < 2^31 a reciprocal
// multiplier replaces the hardware divide; larger moduli fall back to %.
class Barrett {
  public:
    Barrett() : m_(1), magic_(0), small_(true) {}
    explicit Barrett(u64 m) : m_(m), small_(m < (1ull << 31)) {
        magic_ = small_ ? (~u64(0) / m) : 0;
    }
    u64 modulus() const { return m_; }
    u64 reduce(u128 a) const {
        if (small_) {
            // q = hi(magic*v) underestimates v/m by at most 2
            u64 v = static_cast<u64>(a);
            u64 q = static_cast<u64>(((u128)magic_ * v) >> 64);
            u64 r = v - q * m_;
            while (r >= m_) r -= m_;
            return r;
        }
        return static_cast<u64>(a % m_);
    }
    u64 mul(u64 a, u64 b) const { return reduce((u128)a * b); }
    u64 addmul(u64 a, u64 b, u64 c) const { return reduce((u128)b * c + a); }

  private:
    u64 m_;
    u64 magic_;
    bool small_;
};

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// m = p^k for some prime p? Returns p if so.
inline std::optional<u64> prime_power_base(u64 m) {
    if (m < 2) return std::nullopt;
    u64 p = 2;
    while (p * p <= m && m % p != 0) p += (p == 2) ? 1 : 2;
    if (p * p > m) p = m;  // m prime
    u64 t = m;
    while (t % p == 0) t /= p;
    if (t != 1) return std::nullopt;
    return p;
}

}  // namespace modseries
