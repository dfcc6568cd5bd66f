#include "zetalab/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/gamma.hpp"

namespace zetalab {

namespace {

constexpr std::array<std::array<long double, 2>, 30> kBernoulli = {{
    {1.0L, 6.0L},  // B_2
    {-1.0L, 30.0L},  // B_4
    {1.0L, 42.0L},  // B_6
    {-1.0L, 30.0L},  // B_8
    {5.0L, 66.0L},  // B_10
    {-691.0L, 2730.0L},  // B_12
    {7.0L, 6.0L},  // B_14
    {-3617.0L, 510.0L},  // B_16
    {43867.0L, 798.0L},  // B_18
    {-174611.0L, 330.0L},  // B_20
    {854513.0L, 138.0L},  // B_22
    {-236364091.0L, 2730.0L},  // B_24
    {8553103.0L, 6.0L},  // B_26
    {-23749461029.0L, 870.0L},  // B_28
    {8615841276005.0L, 14322.0L},  // B_30
    {-7709321041217.0L, 510.0L},  // B_32
    {2577687858367.0L, 6.0L},  // B_34
    {-26315271553053477373.0L, 1919190.0L},  // B_36
    {2929993913841559.0L, 6.0L},  // B_38
    {-261082718496449122051.0L, 13530.0L},  // B_40
    {1520097643918070802691.0L, 1806.0L},  // B_42
    {-27833269579301024235023.0L, 690.0L},  // B_44
    {596451111593912163277961.0L, 282.0L},  // B_46
    {-5609403368997817686249127547.0L, 46410.0L},  // B_48
    {495057205241079648212477525.0L, 66.0L},  // B_50
    {-801165718135489957347924991853.0L, 1590.0L},  // B_52
    {29149963634884862421418123812691.0L, 798.0L},  // B_54
    {-2479392929313226753685415739663229.0L, 870.0L},  // B_56
    {84483613348880041862046775994036021.0L, 354.0L},  // B_58
    {-1215233140483755572040304994079820246041491.0L, 56786730.0L},  // B_60
}};

// B_{2k} / (2k)! for k = 1..30, index k - 1.
const std::array<double, 30>& bernoulli_over_factorial() {
    static const std::array<double, 30> table = [] {
        std::array<double, 30> out{};
        long double fact = 1.0L;
        for (int k = 1; k <= 30; ++k) {
            fact *= static_cast<long double>((2 * k - 1) * (2 * k));
            out[k - 1] = static_cast<double>(kBernoulli[k - 1][0] / kBernoulli[k - 1][1] / fact);
        }
        return out;
    }();
    return table;
}

void require_shift(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("shift a must lie in (0, 1], got " + std::to_string(a));
}

void require_point(Complex s) { require_finite(s, "s"); }

// x^{-s} for real x > 0
Complex real_pow_neg(double x, Complex s) { return std::exp(-s * std::log(x)); }

// (e^x - 1) / x
Complex phi1(Complex x) {
    if (std::abs(x) < 1.0) {
        Complex term = 1.0, sum = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= x / static_cast<double>(k + 1);
            sum += term;
        }
        return sum;
    }
    return (std::exp(x) - 1.0) / x;
}

// e^{2πia}
Complex unit_phase(double a) {
    const Complex u(2.0 * a);
    return {cos_pi(u).real(), sin_pi(u).real()};
}

Complex em_sum(Complex s, double a, bool regularized) {
    const HurwitzParams p = hurwitz_params(s, a);
    Complex sum{};
    for (int n = p.em_terms - 1; n >= 0; --n) sum += real_pow_neg(n + a, s);
    const double x = p.em_terms + a;
    const double lx = std::log(x);
    const Complex xs = std::exp(-s * lx);
    if (regularized) {
        // ((N+a)^{1-s} - 1) / (s - 1)
        const Complex u = 1.0 - s;
        sum += -lx * phi1(u * lx);
    } else {
        sum += x * xs / (s - 1.0);
    }
    sum += 0.5 * xs;
    const auto& b = bernoulli_over_factorial();
    Complex poch = s;
    Complex pw = xs / x;
    const double inv_x2 = 1.0 / (x * x);
    for (int k = 1; k <= p.bernoulli_terms; ++k) {
        sum += b[k - 1] * poch * pw;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        pw *= inv_x2;
    }
    return sum;
}

}  // namespace

bool EvalDomain::contains(Complex s) const {
    return s.real() >= sigma_min && s.real() <= sigma_max && std::abs(s.imag()) <= t_max;
}

void EvalDomain::require(Complex s) const {
    if (!contains(s)) {
        throw AccuracyError("point " + std::to_string(s.real()) + (s.imag() < 0 ? "" : "+") +
                            std::to_string(s.imag()) + "i lies outside the certified window sigma in [" +
                            std::to_string(sigma_min) + ", " + std::to_string(sigma_max) + "], |t| <= " +
                            std::to_string(t_max));
    }
}

HurwitzParams hurwitz_params(Complex s, double a) {
    HurwitzParams p;
    p.a = a;
    p.em_terms = std::max(static_cast<int>(std::ceil(std::abs(s.imag()) / 2.0)), 15) + 10;
    p.bernoulli_terms = 12;
    return p;
}

double bernoulli_b2k(int k) {
    if (k < 1 || k > 30) throw DomainError("Bernoulli index out of range");
    return static_cast<double>(kBernoulli[k - 1][0] / kBernoulli[k - 1][1]);
}

namespace kernel {

Complex hurwitz_em(Complex s, double a) { return em_sum(s, a, false); }

Complex hurwitz_regularized(Complex s, double a) {
    if (std::abs(s - 1.0) < 0.5) return em_sum(s, a, true);
    return hurwitz(s, a) - 1.0 / (s - 1.0);
}

Complex periodic_direct(Complex s, double a) {
    constexpr int kTailTerms = 24;
    const Complex z = unit_phase(a);
    const double d = kTwoPi * std::min(a, 1.0 - a);
    const int n_cut = std::max(10, static_cast<int>(std::ceil(4.0 * (std::abs(s) + kTailTerms) / d)));

    Complex partial{};
    for (int n = n_cut - 1; n >= 1; --n) {
        partial += unit_phase(std::fmod(n * a, 1.0)) * real_pow_neg(n, s);
    }

    // Σ_{m>=0} z^m f(N+m) = Σ_k c_k f^{(k)}(N), c_k the Taylor coefficients of 1/(1 - z e^x).
    std::array<Complex, kTailTerms + 1> c{};
    const Complex one_minus_z(2.0 * std::pow(sin_pi(Complex(a)).real(), 2), -sin_pi(Complex(2.0 * a)).real());
    c[0] = 1.0 / one_minus_z;
    const Complex ratio = z / one_minus_z;
    for (int k = 1; k <= kTailTerms; ++k) {
        Complex acc{};
        double inv_fact = 1.0;
        for (int j = 1; j <= k; ++j) {
            inv_fact /= j;
            acc += c[k - j] * inv_fact;
        }
        c[k] = ratio * acc;
    }
    const double nd = n_cut;
    Complex deriv = real_pow_neg(nd, s);
    Complex tail{};
    for (int k = 0; k <= kTailTerms; ++k) {
        tail += c[k] * deriv;
        deriv *= (-s - static_cast<double>(k)) / nd;
    }
    return partial + unit_phase(std::fmod(n_cut * a, 1.0)) * tail;
}

Complex periodic_fe(Complex s, double a) {
    const Complex w = 1.0 - s;
    const Complex lg = log_gamma_pi(w).as_log();
    const Complex half = kI * kPi * w / 2.0;
    return std::exp(lg + half) * hurwitz(w, a) + std::exp(lg - half) * hurwitz(w, 1.0 - a);
}

Complex riemann(Complex s) {
    if (s == Complex(1.0)) throw PoleError("zeta has a pole at s = 1");
    if (s.real() >= -0.25) return hurwitz_em(s, 1.0);
    const Complex w = 1.0 - s;
    return gamma_cos(w) * hurwitz_em(w, 1.0);
}

Complex hurwitz(Complex s, double a) {
    if (s == Complex(1.0)) throw PoleError("Hurwitz zeta has a pole at s = 1");
    if (a == 1.0) return riemann(s);
    if (s.real() >= -0.25) return hurwitz_em(s, a);
    const Complex w = 1.0 - s;
    const Complex lg = log_gamma_pi(w).as_log();
    const Complex half = kI * kPi * w / 2.0;
    return std::exp(lg - half) * periodic_direct(w, a) + std::exp(lg + half) * periodic_direct(w, 1.0 - a);
}

Complex periodic(Complex s, double a) {
    if (a == 1.0) return riemann(s);
    if (s.real() >= 1.25) return periodic_direct(s, a);
    if (s == Complex(1.0)) {
        // -log(1 - e^{2πia})
        const Complex one_minus_z(2.0 * std::pow(sin_pi(Complex(a)).real(), 2), -sin_pi(Complex(2.0 * a)).real());
        return -std::log(one_minus_z);
    }
    if (std::abs(s - 1.0) < 0.25) return periodic_direct(s, a);
    return periodic_fe(s, a);
}

Complex dirichlet(Complex s, const DirichletCharacter& chi) {
    const int q = chi.modulus();
    if (q == 1) return riemann(s);
    const bool principal = chi.is_principal();
    if (principal && s == Complex(1.0)) {
        throw PoleError("L(s, chi) has a pole at s = 1 for principal chi (B0 != 0)");
    }
    Complex sum{};
    for (int r = 1; r < q; ++r) {
        if (chi.vanishes_at(r)) continue;
        const double a = static_cast<double>(r) / q;
        sum += chi(r) * (principal ? hurwitz(s, a) : hurwitz_regularized(s, a));
    }
    return real_pow_neg(q, s) * sum;
}

}  // namespace kernel

const char* hurwitz_route(Complex s) { return s.real() >= -0.25 ? "euler-maclaurin" : "functional-equation"; }

const char* periodic_route(Complex s) {
    if (s.real() >= 1.25) return "direct";
    if (s == Complex(1.0)) return "closed-form";
    if (std::abs(s - 1.0) < 0.25) return "direct";
    return "functional-equation";
}

Complex hurwitz_zeta(Complex s, double a, const EvalDomain& domain) {
    require_point(s);
    require_shift(a);
    domain.require(s);
    return kernel::hurwitz(s, a);
}

Complex periodic_zeta(Complex s, double a, const EvalDomain& domain) {
    require_point(s);
    require_shift(a);
    domain.require(s);
    return kernel::periodic(s, a);
}

Complex riemann_zeta(Complex s, const EvalDomain& domain) {
    require_point(s);
    domain.require(s);
    return kernel::riemann(s);
}

Complex dirichlet_l(Complex s, const DirichletCharacter& chi, const EvalDomain& domain) {
    require_point(s);
    domain.require(s);
    return kernel::dirichlet(s, chi);
}

}  // namespace zetalab
