#pragma once

// Slow reference implementations used only by the tests. None of them call
// the library kernels.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using CL = std::complex<long double>;

inline constexpr long double kPiL = std::numbers::pi_v<long double>;

// Stirling series at z + shift, then the recursion Γ(z) = Γ(z + shift) / (z (z+1) ... (z + shift - 1)).
// Returns Γ(z) itself, so branch choices do not matter.
inline C gamma(C z, int shift = 20) {
    static const long double b2k[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                                      -691.0L / 2730, 7.0L / 6, -3617.0L / 510, 43867.0L / 798, -174611.0L / 330};
    const CL w = CL(z) + static_cast<long double>(shift);
    CL lg = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2.0L * kPiL);
    CL wp = w;
    const CL w2 = w * w;
    for (int k = 1; k <= 10; ++k) {
        lg += b2k[k - 1] / (static_cast<long double>(2 * k) * (2 * k - 1) * wp);
        wp *= w2;
    }
    CL v = std::exp(lg);
    for (int k = 0; k < shift; ++k) v /= (CL(z) + static_cast<long double>(k));
    return C(v);
}

// ζ(s, a) for σ > 1: 10^5 terms plus the integral tail and two Euler–Maclaurin corrections.
inline C hurwitz_series(C s, double a, long n_terms = 100000) {
    CL sum = 0;
    const CL sl(s);
    for (long n = n_terms - 1; n >= 0; --n) sum += std::pow(static_cast<long double>(n) + a, -sl);
    const long double x = static_cast<long double>(n_terms) + a;
    sum += std::pow(x, 1.0L - sl) / (sl - 1.0L) + 0.5L * std::pow(x, -sl) + sl * std::pow(x, -sl - 1.0L) / 12.0L;
    return C(sum);
}

// Partial sums S_N .. S_{N+K} of Σ e^{2πian} n^{-s}, averaged K times. Each averaging
// damps the oscillating tail by |cos πa|, so the limit comes out even for 0 < σ <= 1.
inline C periodic_series(C s, double a, long n_terms = 100000, int passes = 160) {
    const CL sl(s);
    CL partial = 0;
    std::vector<CL> sums;
    sums.reserve(static_cast<std::size_t>(passes) + 1);
    for (long n = 1; n <= n_terms + passes; ++n) {
        const long double turn = std::fmod(static_cast<long double>(a) * n, 1.0L);
        partial += std::polar(1.0L, 2.0L * kPiL * turn) * std::pow(static_cast<long double>(n), -sl);
        if (n >= n_terms) sums.push_back(partial);
    }
    for (int k = 0; k < passes; ++k) {
        for (std::size_t i = 0; i + 1 < sums.size(); ++i) sums[i] = 0.5L * (sums[i] + sums[i + 1]);
        sums.pop_back();
    }
    return C(sums.front());
}

// Σ χ(n) n^{-s} over whole periods, with each residue class finished by hurwitz_series.
inline C dirichlet_series(C s, const std::vector<C>& chi) {
    const int q = static_cast<int>(chi.size());
    C sum = 0;
    for (int r = 1; r <= q; ++r) {
        const C c = chi[static_cast<std::size_t>(r % q)];
        if (c == C(0)) continue;
        sum += c * hurwitz_series(s, static_cast<double>(r) / q, 20000);
    }
    return sum * std::exp(-s * std::log(static_cast<double>(q)));
}

inline long gcd(long a, long b) {
    while (b) {
        const long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

inline int totient(int q) {
    int n = 0;
    for (int r = 1; r <= q; ++r) n += gcd(r, q) == 1;
    return q == 1 ? 1 : n;
}

// Smallest d | q such that χ(n) = 1 for every unit n ≡ 1 mod d.
inline int conductor(const std::vector<C>& chi) {
    const int q = static_cast<int>(chi.size());
    for (int d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool induced = true;
        for (int n = 1; n < q && induced; ++n) {
            if (gcd(n, q) == 1 && n % d == 1 % d && std::abs(chi[static_cast<std::size_t>(n)] - 1.0) > 1e-9) induced = false;
        }
        if (induced) return d;
    }
    return q;
}

// Σ_{r=1}^{q} χ(r) e^{2πir/q}, plain loop.
inline C gauss_sum(const std::vector<C>& chi) {
    const int q = static_cast<int>(chi.size());
    CL g = 0;
    for (int r = 1; r <= q; ++r) g += CL(chi[static_cast<std::size_t>(r % q)]) * std::polar(1.0L, 2.0L * kPiL * r / q);
    return C(g);
}

// Legendre / Jacobi-free Kronecker symbol by factoring n.
inline int kronecker(long a, long n) {
    if (n == 0) return std::abs(a) == 1 ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    for (long p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            int f;
            if (p == 2) {
                if (a % 2 == 0) {
                    f = 0;
                } else {
                    const long m = ((a % 8) + 8) % 8;
                    f = (m == 1 || m == 7) ? 1 : -1;
                }
            } else {
                // Euler's criterion.
                long am = ((a % p) + p) % p;
                if (am == 0) {
                    f = 0;
                } else {
                    long e = (p - 1) / 2, base = am, acc = 1;
                    while (e) {
                        if (e & 1) acc = acc * base % p;
                        base = base * base % p;
                        e >>= 1;
                    }
                    f = acc == 1 ? 1 : -1;
                }
            }
            result *= f;
        }
    }
    return result;
}

}  // namespace oracle
