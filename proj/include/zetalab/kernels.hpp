#pragma once

#include "zetalab/characters.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

/// Window in which kernel values are certified.
struct EvalDomain {
    double sigma_min = -10.0;
    double sigma_max = 12.0;
    double t_max = 400.0;

    bool contains(Complex s) const;
    /// Throws AccuracyError when s lies outside the window.
    void require(Complex s) const;
};

/// Euler–Maclaurin plumbing for ζ(s, a).
struct HurwitzParams {
    double a = 1.0;
    int em_terms = 25;
    int bernoulli_terms = 12;
};

/// N = max(ceil(|t|/2), 15) + 10, M = 12.
HurwitzParams hurwitz_params(Complex s, double a);

/// B_{2k} for k = 1..30.
double bernoulli_b2k(int k);

/// Hurwitz zeta ζ(s, a), a in (0, 1]. Simple pole at s = 1.
Complex hurwitz_zeta(Complex s, double a, const EvalDomain& domain = {});

/// Li_s(e^{2πia}), a in (0, 1]. Entire in s for a < 1; a = 1 is ζ(s).
Complex periodic_zeta(Complex s, double a, const EvalDomain& domain = {});

/// Riemann zeta.
Complex riemann_zeta(Complex s, const EvalDomain& domain = {});

/// L(s, χ) = q^{-s} Σ χ(r) ζ(s, r/q). Finite at s = 1 unless B0(χ) != 0.
Complex dirichlet_l(Complex s, const DirichletCharacter& chi, const EvalDomain& domain = {});

/// Route taken by the Hurwitz kernel at s: "euler-maclaurin" or "functional-equation".
const char* hurwitz_route(Complex s);
/// Route taken by the periodic kernel at s for a < 1: "direct", "closed-form" or "functional-equation".
const char* periodic_route(Complex s);

namespace kernel {

/// Euler–Maclaurin sum for ζ(s, a); valid for any s != 1 but accurate only for σ > -1/4 or so.
Complex hurwitz_em(Complex s, double a);

/// ζ(s, a) - 1/(s - 1), finite at s = 1.
Complex hurwitz_regularized(Complex s, double a);

/// Li_s(e^{2πia}) by partial sum plus the twisted tail expansion; a in (0, 1).
Complex periodic_direct(Complex s, double a);

/// Li_s(e^{2πia}) through ζ(1 - s, a) and ζ(1 - s, 1 - a); a in (0, 1), s != 1.
Complex periodic_fe(Complex s, double a);

/// Unchecked versions of the public kernels (no domain test).
Complex hurwitz(Complex s, double a);
Complex periodic(Complex s, double a);
Complex riemann(Complex s);
Complex dirichlet(Complex s, const DirichletCharacter& chi);

}  // namespace kernel

}  // namespace zetalab
