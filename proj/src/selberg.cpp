#include <cmath>

#include "zetalab/composed.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {

std::pair<double, double> degree_conductor(const GammaFactorSpec& spec) {
    double degree = 0.0;
    double product = 1.0;
    for (const auto& [lambda, mu] : spec.factors) {
        degree += 2.0 * lambda;
        product *= std::pow(lambda, 2.0 * lambda);
    }
    const double conductor = std::pow(kTwoPi, degree) * spec.q_factor * spec.q_factor * product;
    return {degree, conductor};
}

SelbergDescriptor selberg_descriptor(const FunctionHandle& h) {
    if (identically_zero(h)) throw DomainError(h.describe() + " vanishes identically");
    FunctionalEquationSpec spec;
    Complex root = 1.0;
    switch (h.kind) {
        case Kind::RawZeta:
        case Kind::SelbergEv:
        case Kind::SelbergOd:
        case Kind::DH:
        case Kind::QuadraticDedekind:
            spec = fe_spec(h);
            root = 1.0 / spec.constant;
            break;
        case Kind::RawL:
            spec = fe_spec(h);  // throws for imprimitive χ
            root = h.lambda;
            break;
        case Kind::FChi:
            if (!h.chi->is_real()) {
                throw UnsupportedError("q^-s f(s,chi) for non-real chi has no self-dual functional equation");
            }
            [[fallthrough]];
        case Kind::Qfun:
        case Kind::X: {
            // F(1-s) = c Γ(s) F(s) turns into (q^2)^{s-1/2} for q^{-s} F.
            spec = fe_spec(h);
            const double q = h.kind == Kind::FChi ? h.chi->modulus() : static_cast<double>(h.a.den());
            spec.scale_base *= q * q;
            root = 1.0 / spec.constant;
            break;
        }
        default:
            throw UnsupportedError(h.describe() + " is not a member of the extended Selberg class in this catalog");
    }

    SelbergDescriptor d;
    const int n = spec.cos_power + spec.sin_power;
    d.gamma.q_factor = std::sqrt(spec.scale_base) * std::pow(kPi, -0.5 * n);
    for (int k = 0; k < spec.cos_power; ++k) d.gamma.factors.emplace_back(0.5, 0.0);
    for (int k = 0; k < spec.sin_power; ++k) d.gamma.factors.emplace_back(0.5, 0.5);
    std::tie(d.degree, d.conductor) = degree_conductor(d.gamma);
    d.root_number = root;
    return d;
}

}  // namespace zetalab
