#include "zetalab/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kLn2 = std::numbers::ln2;
const double kLnPi = std::log(kPi);
const double kLnTwoPi = std::log(kTwoPi);

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczosCoef = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

// log Γ(s) for Re s >= 1/2.
Complex lanczos_log_gamma(Complex s) {
    const Complex t = s + (kLanczosG + 0.5);
    Complex ser = kLanczosC0;
    Complex y = s;
    for (double c : kLanczosCoef) {
        y += 1.0;
        ser += c / y;
    }
    return (s + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * ser / s);
}

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

void reduce_half(double x, double& delta, int& quadrant) {
    const double n = std::nearbyint(2.0 * x);
    delta = x - 0.5 * n;
    long long k = static_cast<long long>(std::fmod(n, 4.0));
    if (k < 0) k += 4;
    quadrant = static_cast<int>(k);
}

// log sin(πz) for Im z >= 0, on the branch that is continuous over the upper
// half plane and real for z = 1/2 + iy.
Complex log_sin_pi_upper(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    if (y > 20.0) {
        return {kPi * y - kLn2, kPi / 2.0 - kPi * x};
    }
    Complex principal = std::log(sin_pi(z));
    const Complex e = std::exp(Complex(0.0, kTwoPi) * z);
    const double branch_imag = kPi / 2.0 - kPi * x + std::arg(1.0 - e);
    const double k = std::nearbyint((branch_imag - principal.imag()) / kTwoPi);
    principal.imag(principal.imag() + kTwoPi * k);
    return principal;
}

Complex log_cos_pi(Complex u) {
    const double y = u.imag();
    if (y > 20.0) return -kI * kPi * u - kLn2;
    if (y < -20.0) return kI * kPi * u - kLn2;
    return std::log(cos_pi(u));
}

Complex log_sin_pi(Complex u) {
    const double y = u.imag();
    if (y > 20.0) return -kI * kPi * u + Complex(-kLn2, kPi / 2.0);
    if (y < -20.0) return kI * kPi * u + Complex(-kLn2, -kPi / 2.0);
    return std::log(sin_pi(u));
}

LogComplex conj(LogComplex v) { return {v.log_abs, -v.arg}; }

void require_regular(Complex s) {
    require_finite(s);
    if (is_nonpositive_integer(s)) {
        throw PoleError("Gamma has a pole at s = " + std::to_string(s.real()));
    }
}

}  // namespace

Complex LogComplex::value() const {
    if (is_zero()) return {0.0, 0.0};
    return std::exp(as_log());
}

bool LogComplex::is_zero() const { return log_abs == -std::numeric_limits<double>::infinity(); }

LogComplex LogComplex::pow(int n) const {
    if (n == 0) return {};
    return {n * log_abs, n * arg};
}

Complex cos_pi(Complex u) {
    double delta = 0.0;
    int quadrant = 0;
    reduce_half(u.real(), delta, quadrant);
    const Complex w = kPi * Complex(delta, u.imag());
    switch (quadrant) {
        case 0: return std::cos(w);
        case 1: return -std::sin(w);
        case 2: return -std::cos(w);
        default: return std::sin(w);
    }
}

Complex sin_pi(Complex u) {
    double delta = 0.0;
    int quadrant = 0;
    reduce_half(u.real(), delta, quadrant);
    const Complex w = kPi * Complex(delta, u.imag());
    switch (quadrant) {
        case 0: return std::sin(w);
        case 1: return std::cos(w);
        case 2: return -std::sin(w);
        default: return -std::cos(w);
    }
}

LogComplex log_gamma(Complex s) {
    require_regular(s);
    if (s.imag() < 0.0) return conj(log_gamma(std::conj(s)));
    if (s.real() >= 0.5) return LogComplex::from_log(lanczos_log_gamma(s));
    // Γ(s) Γ(1-s) = π / sin(πs)
    const Complex reflected = kLnPi - log_sin_pi_upper(s) - lanczos_log_gamma(1.0 - s);
    return LogComplex::from_log(reflected);
}

LogComplex log_gamma_pi(Complex s) {
    LogComplex g = log_gamma(s);
    g.log_abs -= s.real() * kLnTwoPi;
    g.arg -= s.imag() * kLnTwoPi;
    return g;
}

LogComplex log_gamma_cos(Complex s) {
    require_regular(s);
    if (s.imag() < 0.0) return conj(log_gamma_cos(std::conj(s)));
    LogComplex g = log_gamma_pi(s);
    g += LogComplex::from_log(log_cos_pi(0.5 * s));
    g.log_abs += kLn2;
    return g;
}

LogComplex log_gamma_sin(Complex s) {
    require_regular(s);
    if (s.imag() < 0.0) return conj(log_gamma_sin(std::conj(s)));
    LogComplex g = log_gamma_pi(s);
    g += LogComplex::from_log(log_sin_pi(0.5 * s));
    g.log_abs += kLn2;
    return g;
}

namespace {

// Real input gives a real factor; drop the rounding residue of e^{iπ}.
Complex real_if(Complex s, Complex v) { return s.imag() == 0.0 ? Complex(v.real(), 0.0) : v; }

}  // namespace

Complex gamma_pi(Complex s) { return real_if(s, log_gamma_pi(s).value()); }
Complex gamma_cos(Complex s) { return real_if(s, log_gamma_cos(s).value()); }
Complex gamma_sin(Complex s) { return real_if(s, log_gamma_sin(s).value()); }

Complex gamma_power(int cos_power, int sin_power, Complex s) {
    require_regular(s);
    LogComplex total;
    if (cos_power != 0) total += log_gamma_cos(s).pow(cos_power);
    if (sin_power != 0) total += log_gamma_sin(s).pow(sin_power);
    return real_if(s, total.value());
}

Complex a_factor(int r1, int r2, Complex s) {
    if (r1 < 0 || r2 < 0) throw DomainError("A(r1, r2; s) needs non-negative r1, r2");
    return gamma_power(r1 + r2, r2, s);
}

}  // namespace zetalab
