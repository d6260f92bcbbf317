#include "modseries/linear_ode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "modseries/fp_linalg.hpp"
#include "modseries/stirling.hpp"

namespace modseries {

namespace {

int thread_count() {
    if (const char* e = std::getenv("MODSERIES_THREADS")) {
        int t = std::atoi(e);
        if (t >= 1) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Deterministic descending sequence of 62-bit primes for CRT work.
u64 nth_crt_prime(int idx) {
    static std::vector<u64> cache;
    static u64 cursor = (1ull << 62) - 1;
    while (static_cast<int>(cache.size()) <= idx) {
        while (!is_prime_u64(cursor)) cursor -= 2;
        cache.push_back(cursor);
        cursor -= 2;
    }
    return cache[static_cast<size_t>(idx)];
}

// Residues of the series prefix.
std::vector<u64> series_residues(const IntegerSeries& s, int count, u64 p) {
    std::vector<u64> r(count);
    for (int k = 0; k < count; ++k) r[k] = residue(s.coeff(k), p);
    return r;
}

// Row k of the guessing matrix: entry for column (i,j) is (k-j)^i s_{k-j}.
// Columns ordered i ascending, then j ascending; only i <= Q, j <= D kept.
template <class Field>
void fill_rows(FpMatrix& M, const std::vector<u64>& sres, const Field& F, int Q, int D,
               int row0, int k0) {
    std::vector<u64> powbuf(static_cast<size_t>(Q) + 1);
    for (int r = 0; r < M.rows - row0; ++r) {
        int k = k0 + r;
        u64* row = M.row(row0 + r);
        for (int j = 0; j <= D && j <= k; ++j) {
            u64 sv = sres[k - j];
            if (!sv) continue;
            u64 sm = F.to(sv);
            u64 base = F.to(static_cast<u64>(k - j));
            u64 pw = F.to(1);
            for (int i = 0; i <= Q; ++i) {
                row[static_cast<size_t>(i) * (D + 1) + j] = F.mul(pw, sm);
                pw = F.mul(pw, base);
            }
        }
    }
}

struct Profile {
    int Q = 0, D = 0;
    int unknowns() const { return (Q + 1) * (D + 1); }
};

int effective_order(const std::vector<u64>& v, int Q, int D) {
    for (int i = Q; i >= 0; --i)
        for (int j = 0; j <= D; ++j)
            if (v[static_cast<size_t>(i) * (D + 1) + j]) return i;
    return -1;
}
int effective_degree(const std::vector<u64>& v, int Q, int D) {
    int d = -1;
    for (int i = 0; i <= Q; ++i)
        for (int j = 0; j <= D; ++j)
            if (v[static_cast<size_t>(i) * (D + 1) + j]) d = std::max(d, j);
    return d;
}

}  // namespace

int ModOperator::order() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        for (u64 c : coeffs[i])
            if (c) return i;
    return -1;
}

int ModOperator::degree() const {
    int d = -1;
    for (const auto& poly : coeffs)
        for (int j = 0; j < static_cast<int>(poly.size()); ++j)
            if (poly[j]) d = std::max(d, j);
    return d;
}

ModSeries ModOperator::apply(const ModSeries& s) const {
    if (s.modulus() != p) throw DomainError("ModOperator::apply: modulus mismatch");
    int n = s.order();
    SmallField F(p);
    if (form == OperatorForm::Theta) {
        ModSeries r(s.var(), p, n);
        for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
            for (int j = 0; j < static_cast<int>(coeffs[i].size()); ++j) {
                u64 c = coeffs[i][j];
                if (!c) continue;
                for (int k = j; k <= n; ++k) {
                    u64 sv = s[k - j];
                    if (!sv) continue;
                    u64 t = F.mul(c, F.mul(powmod(static_cast<u64>(k - j), i, p), sv));
                    r[k] = addmod(r[k], t, p);
                }
            }
        }
        return r;
    }
    int out = n - order();
    if (out < 0) throw DomainError("ModOperator::apply: series too short for D form");
    ModSeries r(s.var(), p, out);
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
        for (int j = 0; j < static_cast<int>(coeffs[i].size()); ++j) {
            u64 c = coeffs[i][j];
            if (!c) continue;
            for (int k = j; k <= out; ++k) {
                int src = k - j + i;
                u64 sv = s[src];
                if (!sv) continue;
                // falling factorial (src)(src-1)...(src-i+1)
                u64 ffv = 1;
                for (int t = 0; t < i; ++t) ffv = F.mul(ffv, F.to(static_cast<u64>(src - t)));
                r[k] = addmod(r[k], F.mul(c, F.mul(ffv, sv)), p);
            }
        }
    }
    return r;
}

void ModOperator::normalize() {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        for (int j = static_cast<int>(coeffs[i].size()) - 1; j >= 0; --j) {
            if (coeffs[i][j]) {
                u64 inv = *invmod(coeffs[i][j], p);
                for (auto& poly : coeffs)
                    for (auto& c : poly) c = mulmod(c, inv, p);
                return;
            }
        }
    }
}

int RationalOperator::order() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        for (const Rat& c : coeffs[i])
            if (sgn(c) != 0) return i;
    return -1;
}

int RationalOperator::degree() const {
    int d = -1;
    for (const auto& poly : coeffs)
        for (int j = 0; j < static_cast<int>(poly.size()); ++j)
            if (sgn(poly[j]) != 0) d = std::max(d, j);
    return d;
}

void RationalOperator::normalize() {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        for (int j = static_cast<int>(coeffs[i].size()) - 1; j >= 0; --j) {
            if (sgn(coeffs[i][j]) != 0) {
                Rat lead = coeffs[i][j];
                for (auto& poly : coeffs)
                    for (auto& c : poly) c /= lead;
                return;
            }
        }
    }
}

RationalOperator compose(const RationalOperator& A, const RationalOperator& B) {
    if (A.form != OperatorForm::D || B.form != OperatorForm::D)
        throw DomainError("compose: operators must be in D form");
    auto polyadd = [](std::vector<Rat>& dst, const std::vector<Rat>& src,
                      const std::vector<Rat>& mul) {
        for (size_t a = 0; a < src.size(); ++a) {
            if (sgn(src[a]) == 0) continue;
            for (size_t b = 0; b < mul.size(); ++b) {
                if (sgn(mul[b]) == 0) continue;
                if (dst.size() < a + b + 1) dst.resize(a + b + 1, Rat(0));
                dst[a + b] += src[a] * mul[b];
            }
        }
    };
    int out_order = A.order() + B.order();
    std::vector<std::vector<Rat>> out(out_order + 1);
    // binomial table
    std::vector<std::vector<Int>> C(A.order() + 1, std::vector<Int>(A.order() + 1, Int(0)));
    for (int i = 0; i <= A.order(); ++i) {
        C[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[i][j] = C[i - 1][j - 1] + ((j <= i - 1) ? C[i - 1][j] : Int(0));
    }
    for (int jb = 0; jb < static_cast<int>(A.coeffs.size()); ++jb) {
        if (A.coeffs[jb].empty()) continue;
        for (int ia = 0; ia < static_cast<int>(B.coeffs.size()); ++ia) {
            if (B.coeffs[ia].empty()) continue;
            // D^jb (a_i(x) D^ia y) = sum_t C(jb,t) a_i^{(jb-t)} D^{ia+t} y
            std::vector<Rat> deriv = B.coeffs[ia];
            for (int t = jb; t >= 0; --t) {
                // deriv currently holds a_i^{(jb-t)}
                std::vector<Rat> scaled(deriv.size());
                for (size_t m = 0; m < deriv.size(); ++m)
                    scaled[m] = Rat(C[jb][t]) * deriv[m];
                polyadd(out[ia + t], scaled, A.coeffs[jb]);
                if (t > 0) {
                    // differentiate once more
                    std::vector<Rat> d(deriv.size() > 1 ? deriv.size() - 1 : 1, Rat(0));
                    for (size_t m = 1; m < deriv.size(); ++m) d[m - 1] = Rat(m) * deriv[m];
                    deriv = std::move(d);
                }
            }
        }
    }
    return RationalOperator(A.var, OperatorForm::D, std::move(out));
}

RationalOperator to_d_form(const RationalOperator& L) {
    if (L.form == OperatorForm::D) return L;
    int Q = L.order();
    auto S2 = stirling2_table(std::max(Q, 0));
    std::vector<std::vector<Rat>> out(Q + 1);
    for (int k = 0; k <= Q; ++k) {
        // a_k(w) = w^k * sum_{i>=k} S2(i,k) p_i(w)
        std::vector<Rat> acc;
        for (int i = k; i < static_cast<int>(L.coeffs.size()); ++i) {
            if (L.coeffs[i].empty() || sgn(S2[i][k]) == 0) continue;
            if (acc.size() < L.coeffs[i].size()) acc.resize(L.coeffs[i].size(), Rat(0));
            for (size_t j = 0; j < L.coeffs[i].size(); ++j)
                acc[j] += Rat(S2[i][k]) * L.coeffs[i][j];
        }
        if (!acc.empty()) {
            std::vector<Rat> shifted(acc.size() + k, Rat(0));
            for (size_t j = 0; j < acc.size(); ++j) shifted[j + k] = acc[j];
            out[k] = std::move(shifted);
        }
    }
    return RationalOperator(L.var, OperatorForm::D, std::move(out));
}

bool solve_series_prefix(const RationalOperator& L, RationalSeries& y, int first_unknown) {
    const RationalOperator Ld = to_d_form(L);
    int R = Ld.order();
    int n = y.order();
    // coefficient of x^m of sum_i a_i(x) y^{(i)}:
    //   sum_{i,j} a_{i,j} * ff(k,i) * c_k  with k = m - j + i
    auto ff = [](long k, int i) {
        Rat r(1);
        for (int t = 0; t < i; ++t) r *= Rat(k - t);
        return r;
    };
    std::vector<char> known(n + 1, 0);
    for (int k = 0; k < first_unknown && k <= n; ++k) known[k] = 1;
    int solved = first_unknown - 1;
    for (long m = 0; solved < n; ++m) {
        Rat acc(0);
        long top = -1;
        Rat top_mult(0);
        int unknowns = 0;
        for (int i = 0; i <= R; ++i) {
            if (i >= static_cast<int>(Ld.coeffs.size())) break;
            for (int j = 0; j < static_cast<int>(Ld.coeffs[i].size()); ++j) {
                if (sgn(Ld.coeffs[i][j]) == 0) continue;
                long k = m - j + i;
                if (k < 0) continue;
                Rat mult = Ld.coeffs[i][j] * ff(k, i);
                if (sgn(mult) == 0) continue;
                if (k <= n && !known[k]) {
                    if (top == k) top_mult += mult;
                    else if (k > top) {
                        if (top >= 0 && sgn(top_mult) != 0) ++unknowns;
                        top = k;
                        top_mult = mult;
                    } else {
                        ++unknowns;  // second distinct unknown
                    }
                } else if (k <= n) {
                    acc += mult * y[k];
                }
                // k > n: beyond the requested order, ignore (equation only
                // used while it still pins a coefficient <= n)
            }
        }
        if (top < 0 || sgn(top_mult) == 0) {
            if (unknowns == 0 && sgn(acc) != 0) return false;  // inconsistent
            continue;
        }
        if (unknowns > 0) return false;  // not a one-unknown recurrence step
        y[static_cast<int>(top)] = -acc / top_mult;
        known[static_cast<size_t>(top)] = 1;
        while (solved < n && known[solved + 1]) ++solved;
        if (m > 3L * n + 16) return false;
    }
    return true;
}

std::optional<GuessOdeResult> guess_ode_modp(const ModSeries& s, int Q, int D, int guard) {
    u64 p = s.modulus();
    if (!is_prime_u64(p)) throw DomainError("guess_ode_modp: modulus must be prime");
    long U = static_cast<long>(Q + 1) * (D + 1);
    if (U + guard > s.order() + 1) throw DomainError("guess_ode_modp: series too short for budget + guard");
    SmallField F(p);
    FpMatrix M(s.order() + 1, static_cast<int>(U));
    std::vector<u64> sres(s.coeffs().begin(), s.coeffs().end());
    fill_rows(M, sres, F, Q, D, 0, 0);
    RrefResult rr = rref(M, F);
    auto basis = nullspace_basis(M, rr, F);
    if (basis.empty()) return std::nullopt;
    // choose element minimizing (order, degree), subject to order < p
    int best = -1;
    std::pair<int, int> best_key{1 << 30, 1 << 30};
    for (int t = 0; t < static_cast<int>(basis.size()); ++t) {
        int o = effective_order(basis[t], Q, D);
        if (o < 0 || o >= static_cast<int>(p)) continue;
        std::pair<int, int> key{o, effective_degree(basis[t], Q, D)};
        if (key < best_key) { best_key = key; best = t; }
    }
    if (best < 0) return std::nullopt;
    GuessOdeResult res;
    res.nullity = static_cast<int>(basis.size());
    res.op.p = p;
    res.op.coeffs.assign(best_key.first + 1, {});
    for (int i = 0; i <= best_key.first; ++i) {
        std::vector<u64> poly(D + 1, 0);
        for (int j = 0; j <= D; ++j) poly[j] = basis[best][static_cast<size_t>(i) * (D + 1) + j];
        while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
        res.op.coeffs[i] = std::move(poly);
    }
    res.op.normalize();
    if (!res.op.annihilates(s)) return std::nullopt;  // guard property
    return res;
}

namespace {

// One modular snapshot of the fit system at a fixed column profile.
struct PrimeShot {
    u64 p = 0;
    bool usable = false;
    std::vector<int> pivot_cols;
    std::vector<u64> scaled_vec;  // det * echelon nullspace vector (plain residues)
    int nullity = 0;
};

PrimeShot solve_mod_prime(const IntegerSeries& s, int rows, int Q, int D, u64 p) {
    PrimeShot shot;
    shot.p = p;
    MontField F(p);
    int U = (Q + 1) * (D + 1);
    FpMatrix M(rows, U);
    auto sres = series_residues(s, rows, p);
    fill_rows(M, sres, F, Q, D, 0, 0);
    RrefResult rr = rref(M, F);
    shot.nullity = U - rr.rank;
    if (shot.nullity < 1) return shot;
    shot.pivot_cols = rr.pivot_col;
    // first free column
    std::vector<char> is_pivot(U, 0);
    for (int c : rr.pivot_col) is_pivot[c] = 1;
    int fc = -1;
    for (int c = 0; c < U; ++c)
        if (!is_pivot[c]) { fc = c; break; }
    shot.scaled_vec.assign(U, 0);
    u64 det = rr.det_pivots;  // Montgomery form
    shot.scaled_vec[fc] = F.from(det);
    for (int r = 0; r < rr.rank; ++r) {
        u64 e = M.row(r)[fc];
        if (e) shot.scaled_vec[rr.pivot_col[r]] = F.from(F.mul(det, F.neg(e)));
    }
    shot.usable = true;
    return shot;
}

}  // namespace

std::optional<HermiteResult> hermite_pade_ode(const IntegerSeries& s, int Q, int D, int n_use) {
    long U = static_cast<long>(Q + 1) * (D + 1);
    if (U > n_use) throw DomainError("hermite_pade_ode: budget exceeds n_use");
    if (n_use > s.order() + 1) throw DomainError("hermite_pade_ode: n_use exceeds series length");
    int rows = static_cast<int>(U) - 1;

    // Profile selection: smallest (unknowns, Q') sub-budget whose restricted
    // system already has a nontrivial nullspace mod the first two primes.
    u64 p0 = nth_crt_prime(0), p1 = nth_crt_prime(1);
    Profile prof{Q, D};
    {
        std::vector<Profile> cand;
        for (int q2 = 0; q2 <= Q; ++q2)
            for (int d2 = 0; d2 <= D; ++d2) cand.push_back({q2, d2});
        std::sort(cand.begin(), cand.end(), [](const Profile& a, const Profile& b) {
            if (a.unknowns() != b.unknowns()) return a.unknowns() < b.unknowns();
            return a.Q < b.Q;
        });
        auto sres0 = series_residues(s, rows, p0);
        auto sres1 = series_residues(s, rows, p1);
        MontField F0(p0), F1(p1);
        for (const Profile& c : cand) {
            if (c.unknowns() > rows + 1) break;  // larger budgets can only appear at full size
            if (c.Q == Q && c.D == D) break;
            FpMatrix M0(rows, c.unknowns());
            fill_rows(M0, sres0, F0, c.Q, c.D, 0, 0);
            if (rref(M0, F0).rank == c.unknowns()) continue;
            FpMatrix M1(rows, c.unknowns());
            fill_rows(M1, sres1, F1, c.Q, c.D, 0, 0);
            if (rref(M1, F1).rank == c.unknowns()) continue;
            prof = c;
            break;
        }
    }

    const int Uc = prof.unknowns();
    // Hadamard-style cap on CRT size (bits)
    double bits = 0;
    for (int k = 0; k < rows; ++k) {
        size_t mx = 0;
        for (int j = 0; j <= prof.D && j <= k; ++j)
            mx = std::max(mx, mpz_sizeinbase(s.coeff(k - j).get_mpz_t(), 2));
        bits += static_cast<double>(mx) + prof.Q * std::log2(std::max(2, k)) + 4.0;
    }
    int max_primes = static_cast<int>(bits / 61.0) + 6;

    std::vector<Int> combined(Uc, Int(0));
    std::vector<Int> lifted_prev;
    Int modulus(1);
    int consumed = 0;
    bool done = false;
    std::vector<Int> result;

    auto exact_verify = [&](const std::vector<Int>& vec) -> bool {
        Int acc, tmp, pw;
        for (int k = 0; k < rows; ++k) {
            acc = 0;
            for (int j = 0; j <= prof.D && j <= k; ++j) {
                const Int& sv = s.coeff(k - j);
                if (sgn(sv) == 0) continue;
                pw = 1;
                for (int i = 0; i <= prof.Q; ++i) {
                    const Int& c = vec[static_cast<size_t>(i) * (prof.D + 1) + j];
                    if (sgn(c) != 0) {
                        tmp = c * pw;
                        mpz_addmul(acc.get_mpz_t(), tmp.get_mpz_t(), sv.get_mpz_t());
                    }
                    pw *= (k - j);
                }
            }
            if (sgn(acc) != 0) return false;
        }
        return true;
    };

    int chunk = 4;
    std::vector<int> ref_pivots;
    while (!done && consumed < max_primes) {
        int batch = std::min(chunk, max_primes - consumed);
        std::vector<PrimeShot> shots(batch);
        std::atomic<int> next{0};
        int nthreads = std::min(thread_count(), batch);
        auto worker = [&]() {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= batch) return;
                shots[t] = solve_mod_prime(s, rows, prof.Q, prof.D, nth_crt_prime(consumed + t));
            }
        };
        std::vector<std::thread> th;
        for (int t = 1; t < nthreads; ++t) th.emplace_back(worker);
        worker();
        for (auto& t : th) t.join();
        for (const auto& shot : shots) {
            if (!shot.usable) continue;
            if (ref_pivots.empty()) ref_pivots = shot.pivot_cols;
            if (shot.pivot_cols != ref_pivots) continue;  // unlucky prime
            // incremental CRT
            Int P(static_cast<unsigned long>(shot.p >> 32));
            P <<= 32;
            P += static_cast<unsigned long>(shot.p & 0xFFFFFFFFull);
            Int inv;
            Int mod_old = modulus;
            Int newmod = modulus * P;
            mpz_invert(inv.get_mpz_t(), mod_old.get_mpz_t(), P.get_mpz_t());
            for (int c = 0; c < Uc; ++c) {
                Int rp(static_cast<unsigned long>(shot.scaled_vec[c] >> 32));
                rp <<= 32;
                rp += static_cast<unsigned long>(shot.scaled_vec[c] & 0xFFFFFFFFull);
                Int cur = combined[c] % mod_old;
                Int diff = ((rp - cur) * inv) % P;
                if (sgn(diff) < 0) diff += P;
                combined[c] = cur + mod_old * diff;
            }
            modulus = newmod;
        }
        consumed += batch;
        chunk = std::min(chunk * 2, 512);
        // balanced lift + stabilization check
        std::vector<Int> lifted(Uc);
        Int half = modulus / 2;
        for (int c = 0; c < Uc; ++c) {
            Int v = combined[c] % modulus;
            if (v > half) v -= modulus;
            lifted[c] = v;
        }
        if (!lifted_prev.empty() && lifted == lifted_prev) {
            // make primitive
            Int g(0);
            for (const Int& v : lifted) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (sgn(g) != 0) {
                std::vector<Int> prim(Uc);
                for (int c = 0; c < Uc; ++c) prim[c] = divexact(lifted[c], g);
                if (exact_verify(prim)) {
                    result = std::move(prim);
                    done = true;
                }
            }
        }
        lifted_prev = std::move(lifted);
    }
    if (!done) {
        // final attempt at the Hadamard cap
        Int g(0);
        std::vector<Int> prim(Uc);
        Int half = modulus / 2;
        for (int c = 0; c < Uc; ++c) {
            Int v = combined[c] % modulus;
            if (v > half) v -= modulus;
            prim[c] = v;
        }
        for (const Int& v : prim) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (sgn(g) == 0) return std::nullopt;
        for (Int& v : prim) v = divexact(v, g);
        if (!exact_verify(prim)) return std::nullopt;
        result = std::move(prim);
    }

    HermiteResult hr;
    hr.Q = prof.Q;
    hr.D = prof.D;
    hr.fit_rows = rows;
    hr.primitive = result;
    hr.op.var = s.var();
    hr.op.form = OperatorForm::Theta;
    hr.op.coeffs.assign(prof.Q + 1, {});
    for (int i = 0; i <= prof.Q; ++i) {
        std::vector<Rat> poly(prof.D + 1, Rat(0));
        for (int j = 0; j <= prof.D; ++j) poly[j] = Rat(result[static_cast<size_t>(i) * (prof.D + 1) + j]);
        hr.op.coeffs[i] = std::move(poly);
    }
    hr.op.normalize();
    return hr;
}

std::vector<BudgetReport> holonomy_rejection_test(const IntegerSeries& s,
                                                  const std::vector<std::pair<int, int>>& budgets,
                                                  int n_use, int holdout) {
    if (n_use + holdout > s.order() + 1)
        throw DomainError("holonomy_rejection_test: series shorter than n_use + holdout");
    u64 p = nth_crt_prime(0);
    MontField F(p);
    auto sres = series_residues(s, n_use + holdout, p);
    std::vector<BudgetReport> reports;
    reports.reserve(budgets.size());
    for (auto [Q, D] : budgets) {
        long U = static_cast<long>(Q + 1) * (D + 1);
        if (U > n_use) throw DomainError("holonomy_rejection_test: budget exceeds n_use");
        int rows = static_cast<int>(U) - 1;
        FpMatrix M(rows, static_cast<int>(U));
        fill_rows(M, sres, F, Q, D, 0, 0);
        RrefResult rr = rref(M, F);
        auto basis = nullspace_basis(M, rr, F);
        BudgetReport rep;
        rep.Q = Q;
        rep.D = D;
        rep.fit_found = !basis.empty();
        if (basis.empty()) {
            reports.push_back(rep);
            continue;
        }
        std::vector<u64> pow(static_cast<size_t>(Q) + 1);
        auto row_dot = [&](long k, const std::vector<u64>& v) -> u64 {
            u64 acc = 0;
            for (int j = 0; j <= D && j <= k; ++j) {
                u64 sv = sres[k - j];
                if (!sv) continue;
                u64 sm = F.to(sv);
                u64 base = F.to(static_cast<u64>(k - j));
                u64 pw = F.to(1);
                for (int i = 0; i <= Q; ++i) {
                    u64 c = v[static_cast<size_t>(i) * (D + 1) + j];
                    if (c) acc = addmod(acc, F.from(F.mul(F.mul(pw, sm), F.to(c))), p);
                    pw = F.mul(pw, base);
                }
            }
            return acc;
        };
        if (basis.size() == 1) {
            for (long k = n_use; k < n_use + holdout; ++k) {
                if (row_dot(k, basis[0]) != 0) {
                    rep.first_failing_index = k;
                    break;
                }
            }
        } else {
            // several fit candidates: pass iff some combination annihilates the
            // holdout, i.e. the stacked system keeps a nontrivial nullspace
            FpMatrix M2(rows + holdout, static_cast<int>(U));
            fill_rows(M2, sres, F, Q, D, 0, 0);
            fill_rows(M2, sres, F, Q, D, rows, n_use);
            RrefResult rr2 = rref(M2, F);
            if (rr2.rank == static_cast<int>(U)) {
                // find first prefix of holdout rows that kills the nullspace
                for (long k = n_use; k < n_use + holdout; ++k) {
                    FpMatrix M3(rows + static_cast<int>(k - n_use) + 1, static_cast<int>(U));
                    fill_rows(M3, sres, F, Q, D, 0, 0);
                    fill_rows(M3, sres, F, Q, D, rows, n_use);
                    M3.rows = rows + static_cast<int>(k - n_use) + 1;
                    if (rref(M3, F).rank == static_cast<int>(U)) {
                        rep.first_failing_index = k;
                        break;
                    }
                }
            }
        }
        reports.push_back(rep);
    }
    return reports;
}

// ---------- singularity analysis ----------

namespace {

using cld = std::complex<long double>;

std::vector<cld> aberth_roots(std::vector<cld> c) {
    // strip leading zeros
    while (c.size() > 1 && std::abs(c.back()) == 0.0L) c.pop_back();
    int d = static_cast<int>(c.size()) - 1;
    std::vector<cld> roots;
    if (d <= 0) return roots;
    // strip zero roots
    int zero_roots = 0;
    while (zero_roots < d && std::abs(c[zero_roots]) == 0.0L) ++zero_roots;
    if (zero_roots) c.erase(c.begin(), c.begin() + zero_roots);
    d = static_cast<int>(c.size()) - 1;
    long double R = 0;
    for (int j = 0; j < d; ++j) R = std::max(R, std::abs(c[j] / c[d]));
    R = 1 + R;
    std::vector<cld> z(d);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int j = 0; j < d; ++j) {
        long double ang = 2 * pi * (j + 0.25L) / d;
        z[j] = R * cld(std::cos(ang), std::sin(ang));
    }
    auto eval = [&](cld x, cld& f, cld& fp) {
        f = c[d];
        fp = 0;
        for (int j = d - 1; j >= 0; --j) {
            fp = fp * x + f;
            f = f * x + c[j];
        }
    };
    for (int iter = 0; iter < 400; ++iter) {
        long double maxcorr = 0;
        for (int j = 0; j < d; ++j) {
            cld f, fp;
            eval(z[j], f, fp);
            if (std::abs(f) == 0.0L) continue;
            cld ratio = (std::abs(fp) == 0.0L) ? cld(0) : f / fp;
            cld sum = 0;
            for (int k = 0; k < d; ++k)
                if (k != j) sum += cld(1) / (z[j] - z[k]);
            cld corr = (std::abs(fp) == 0.0L) ? std::pow(f / c[d], 1.0L / (d))
                                              : ratio / (cld(1) - ratio * sum);
            z[j] -= corr;
            maxcorr = std::max(maxcorr, std::abs(corr) / (1 + std::abs(z[j])));
        }
        if (maxcorr < 1e-16L) break;
    }
    for (int j = 0; j < zero_roots; ++j) z.push_back(cld(0));
    return z;
}

// Exact squarefree part of an integer polynomial, returned as Int coefficients.
std::vector<Rat> squarefree_part(std::vector<Rat> a) {
    auto deg = [](const std::vector<Rat>& p) {
        int d = static_cast<int>(p.size()) - 1;
        while (d >= 0 && sgn(p[d]) == 0) --d;
        return d;
    };
    auto normalize = [&](std::vector<Rat>& p) {
        int d = deg(p);
        p.resize(d + 1 < 1 ? 1 : d + 1);
        if (d >= 0 && sgn(p[d]) != 0)
            for (auto& v : p) v /= p[d];
    };
    auto rem = [&](std::vector<Rat> num, const std::vector<Rat>& den) {
        int dn = deg(num), dd = deg(den);
        while (dn >= dd && dn >= 0) {
            Rat f = num[dn] / den[dd];
            for (int j = 0; j <= dd; ++j) num[dn - dd + j] -= f * den[j];
            dn = deg(num);
        }
        num.resize(std::max(dn + 1, 1));
        return num;
    };
    int d = deg(a);
    if (d <= 1) return a;
    std::vector<Rat> ap(d);
    for (int j = 1; j <= d; ++j) ap[j - 1] = Rat(j) * a[j];
    // monic Euclidean gcd(a, a')
    std::vector<Rat> x = a, y = ap;
    normalize(x);
    normalize(y);
    while (deg(y) >= 1) {
        auto r = rem(x, y);
        x = y;
        y = r;
        normalize(y);
    }
    bool coprime = (deg(y) == 0 && sgn(y[0]) != 0);
    std::vector<Rat>& g = x;
    if (coprime || deg(g) <= 0) return a;
    // a / g exact
    std::vector<Rat> q(deg(a) - deg(g) + 1, Rat(0));
    std::vector<Rat> numI = a;
    int dg = deg(g);
    for (int dn = deg(numI); dn >= dg; dn = deg(numI)) {
        Rat f = numI[dn] / g[dg];
        q[dn - dg] = f;
        for (int j = 0; j <= dg; ++j) numI[dn - dg + j] -= f * g[j];
    }
    return q;
}

}  // namespace

SingularityReport singularity_report(const RationalOperator& L) {
    if (L.order() < 1) throw DomainError("singularity_report: trivial operator");
    SingularityReport rep;
    // exponents at infinity (theta form): roots of sum_i a_{i,Dmax} rho^i
    if (L.form == OperatorForm::Theta) {
        int Dmax = L.degree();
        std::vector<Rat> phi(L.order() + 1, Rat(0));
        for (int i = 0; i <= L.order(); ++i)
            if (i < static_cast<int>(L.coeffs.size()) &&
                Dmax < static_cast<int>(L.coeffs[i].size()))
                phi[i] = L.coeffs[i][Dmax];
        std::vector<cld> pc(phi.size());
        long double scale = 0;
        for (const auto& v : phi) scale = std::max(scale, static_cast<long double>(std::fabs(mpq_get_d(v.get_mpq_t()))));
        for (size_t i = 0; i < phi.size(); ++i)
            pc[i] = cld(mpq_get_d(phi[i].get_mpq_t()) / (scale > 0 ? scale : 1), 0);
        for (cld r : aberth_roots(pc))
            rep.exponents_at_infinity.push_back(std::complex<double>(
                static_cast<double>(r.real()), static_cast<double>(r.imag())));
        std::sort(rep.exponents_at_infinity.begin(), rep.exponents_at_infinity.end(),
                  [](auto a, auto b) { return a.real() < b.real(); });
    }

    RationalOperator Ld = to_d_form(L);
    int R = Ld.order();
    // scale all coefficients to long double with a shared exponent offset
    long emax = 0;
    for (const auto& poly : Ld.coeffs)
        for (const Rat& v : poly) {
            if (sgn(v) == 0) continue;
            long e = static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(v.get_den().get_mpz_t(), 2));
            emax = std::max(emax, e);
        }
    auto to_ld = [&](const Rat& v) -> long double {
        if (sgn(v) == 0) return 0.0L;
        // v ~ num/den scaled by 2^-emax
        mpq_class t = v;
        Int shift = 1;
        // divide numerator by 2^emax via mpq: t / 2^emax
        mpz_mul_2exp(shift.get_mpz_t(), shift.get_mpz_t(), static_cast<unsigned long>(emax > 0 ? emax : 0));
        t /= Rat(shift);
        return static_cast<long double>(mpq_get_d(t.get_mpq_t()));
    };
    std::vector<std::vector<long double>> A(R + 1);
    for (int i = 0; i <= R; ++i) {
        A[i].resize(Ld.coeffs[i].size());
        for (size_t j = 0; j < Ld.coeffs[i].size(); ++j) A[i][j] = to_ld(Ld.coeffs[i][j]);
    }
    // roots of squarefree part of the leading polynomial
    std::vector<Rat> lead = Ld.coeffs[R];
    std::vector<Rat> sf = squarefree_part(lead);
    std::vector<cld> pc(sf.size());
    {
        long double scale = 0;
        std::vector<long double> tmp(sf.size());
        for (size_t j = 0; j < sf.size(); ++j) {
            tmp[j] = to_ld(sf[j]);
            scale = std::max(scale, std::fabs(tmp[j]));
        }
        for (size_t j = 0; j < sf.size(); ++j) pc[j] = cld(tmp[j] / (scale > 0 ? scale : 1), 0);
    }
    std::vector<cld> roots = aberth_roots(pc);
    // drop w = 0 (regular singular origin handled by the series itself)
    std::vector<cld> finite_roots;
    for (cld r : roots)
        if (std::abs(r) > 1e-12L) finite_roots.push_back(r);
    std::sort(finite_roots.begin(), finite_roots.end(), [](cld a, cld b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a.imag() < b.imag();
    });

    for (cld x0 : finite_roots) {
        // Taylor shift of each coefficient to x0, keep (i, m) with m - i minimal
        long double totmax = 0;
        std::vector<std::vector<cld>> sh(R + 1);
        for (int i = 0; i <= R; ++i) {
            const auto& poly = A[i];
            int dpi = static_cast<int>(poly.size()) - 1;
            if (dpi < 0) continue;
            std::vector<cld> cshift(poly.begin(), poly.end());
            // synthetic Taylor shift: repeated Horner division by (x - x0)
            for (int t = 0; t <= dpi; ++t)
                for (int j = dpi - 1; j >= t; --j) cshift[j] += x0 * cshift[j + 1];
            sh[i] = std::move(cshift);
            for (const auto& v : sh[i]) totmax = std::max(totmax, std::abs(v));
        }
        long double tol = totmax * 1e-15L;
        int sigma = 1 << 30;
        for (int i = 0; i <= R; ++i)
            for (int m = 0; m < static_cast<int>(sh[i].size()); ++m)
                if (std::abs(sh[i][m]) > tol) sigma = std::min(sigma, m - i);
        // indicial polynomial: sum over (i, m=i+sigma) of A_im * rho(rho-1)..(rho-i+1)
        std::vector<cld> f{cld(0)};
        for (int i = 0; i <= R; ++i) {
            int m = i + sigma;
            if (m < 0 || m >= static_cast<int>(sh[i].size())) continue;
            cld a = sh[i][m];
            if (std::abs(a) <= tol) continue;
            std::vector<cld> ffpoly{cld(1)};  // falling factorial rho(rho-1)...(rho-i+1)
            for (int t = 0; t < i; ++t) {
                std::vector<cld> nf(ffpoly.size() + 1, cld(0));
                for (size_t u = 0; u < ffpoly.size(); ++u) {
                    nf[u + 1] += ffpoly[u];
                    nf[u] -= cld(static_cast<long double>(t)) * ffpoly[u];
                }
                ffpoly = std::move(nf);
            }
            if (f.size() < ffpoly.size()) f.resize(ffpoly.size(), cld(0));
            for (size_t u = 0; u < ffpoly.size(); ++u) f[u] += a * ffpoly[u];
        }
        SingularEntry entry;
        entry.location = std::complex<double>(static_cast<double>(x0.real()),
                                              static_cast<double>(x0.imag()));
        for (cld r : aberth_roots(f))
            entry.exponents.push_back(std::complex<double>(static_cast<double>(r.real()),
                                                           static_cast<double>(r.imag())));
        std::sort(entry.exponents.begin(), entry.exponents.end(),
                  [](auto a, auto b) { return a.real() < b.real(); });
        rep.entries.push_back(std::move(entry));
    }
    rep.radius = rep.entries.empty() ? 0.0 : std::abs(rep.entries.front().location);
    return rep;
}

}  // namespace modseries
