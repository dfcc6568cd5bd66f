#pragma once

#include "zetalab/types.hpp"

namespace zetalab {

/// log|z| together with an unwrapped argument. Products of gamma factors are
/// assembled here and exponentiated once, so that Γcos^r at large |t| does
/// not overflow in the intermediate steps.
struct LogComplex {
    double log_abs = 0.0;
    double arg = 0.0;

    static LogComplex from_log(Complex log_value) { return {log_value.real(), log_value.imag()}; }
    Complex as_log() const { return {log_abs, arg}; }
    /// exp(log_abs + i arg); an exact zero is encoded as log_abs = -inf.
    Complex value() const;
    bool is_zero() const;

    LogComplex& operator+=(const LogComplex& o) {
        log_abs += o.log_abs;
        arg += o.arg;
        return *this;
    }
    friend LogComplex operator+(LogComplex a, const LogComplex& b) { return a += b; }
    friend LogComplex operator-(LogComplex a, const LogComplex& b) {
        a.log_abs -= b.log_abs;
        a.arg -= b.arg;
        return a;
    }
    /// Integer power; power 0 yields the multiplicative identity even for zero.
    LogComplex pow(int n) const;
};

/// Principal-branch log Γ(s). Lanczos form on Re s >= 1/2, reflection below.
/// Throws PoleError at s = 0, -1, -2, ...
LogComplex log_gamma(Complex s);

/// Γπ(s) = Γ(s) / (2π)^s
Complex gamma_pi(Complex s);
/// Γcos(s) = 2 Γπ(s) cos(πs/2); exact 0 at odd positive integers.
Complex gamma_cos(Complex s);
/// Γsin(s) = 2 Γπ(s) sin(πs/2); exact 0 at even positive integers.
Complex gamma_sin(Complex s);

LogComplex log_gamma_pi(Complex s);
LogComplex log_gamma_cos(Complex s);
LogComplex log_gamma_sin(Complex s);

/// Γcos(s)^cos_power · Γsin(s)^sin_power, assembled in log space.
Complex gamma_power(int cos_power, int sin_power, Complex s);

/// A(r1, r2; s) = Γcos(s)^(r1+r2) · Γsin(s)^r2
Complex a_factor(int r1, int r2, Complex s);

/// cos(πu) and sin(πu) with exact reduction of the real part.
Complex cos_pi(Complex u);
Complex sin_pi(Complex u);

}  // namespace zetalab
