#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/characters.hpp"
#include "zetalab/kernels.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

enum class Kind {
    Z,
    P,
    Y,
    O,
    Qfun,
    X,
    DH,
    FChi,
    GChi,
    VPlus,
    VMinus,
    DedekindComposite,
    SelbergEv,
    SelbergOd,
    QuadraticDedekind,
    RawL,
    RawZeta,
};

std::string kind_name(Kind kind);
/// Inverse of kind_name; throws DomainError for unknown names.
Kind kind_from_name(const std::string& name);

/// Slots of ζ_D(l; s, r, q):
///   Z^{l1+l2}(a1) P^{l1+l2}(a2) Q^{l3+l4}(a3) f^{l5+l6}(χ_ev) Y^{l2}(a4) O^{l2}(a5) X^{l4}(a6) f^{l6}(χ_od)
/// with the prefactor N^{-s/2}.
struct DedekindParams {
    std::array<int, 6> l{};
    std::array<Rational, 6> a{Rational(1, 2), Rational(1, 2), Rational(1, 2),
                              Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CharacterPtr chi_ev;
    CharacterPtr chi_od;
    double n = 1.0;
};

/// Default N: the product of q_i^{2w} over the slots that carry a q^s growth
/// (Z, Q, Y, X and both f factors), w being the slot's exponent.
double default_dedekind_n(const DedekindParams& p);

/// Immutable description of one composite function. Build through the make_* factories.
struct FunctionHandle {
    Kind kind = Kind::RawZeta;
    Rational a;
    CharacterPtr chi;
    std::int64_t discriminant = 0;
    DedekindParams dedekind;

    // Derived from chi by the factories.
    CharacterPtr chi_bar;
    Complex gauss{};
    Complex lambda{};

    std::string describe() const;
};

FunctionHandle make_shifted(Kind kind, const Rational& a);  // Z, P, Y, O, Qfun, X, SelbergEv, SelbergOd
FunctionHandle make_dh();
FunctionHandle make_character_handle(Kind kind, CharacterPtr chi);  // FChi, GChi, VPlus, VMinus, RawL
FunctionHandle make_dedekind(const std::array<int, 6>& l, const std::array<Rational, 6>& a, CharacterPtr chi_ev,
                             CharacterPtr chi_od, std::optional<double> n = std::nullopt);
FunctionHandle make_quadratic_dedekind(std::int64_t discriminant);
FunctionHandle make_raw_zeta();

/// Value of the handle at s. Throws PoleError on the pole set and AccuracyError outside the domain.
Complex eval(const FunctionHandle& h, Complex s, const EvalDomain& domain = {});

/// Kernel routes used by eval at s, e.g. "hurwitz:euler-maclaurin;periodic:direct".
std::string eval_route(const FunctionHandle& h, Complex s);

/// Order of the pole at s = 1 (0 when the function is regular there).
int pole_order_at_one(const FunctionHandle& h);

/// True when the handle is identically zero (Y, O, X at a = 1/2).
bool identically_zero(const FunctionHandle& h);

/// F(1 - s) = constant · B^{s-1/2} · Γcos(s)^cos_power · Γsin(s)^sin_power · partner(s)
struct FunctionalEquationSpec {
    double scale_base = 1.0;
    int cos_power = 0;
    int sin_power = 0;
    Complex constant = 1.0;
    /// Offset κ in Γcos(s - κ); 0 for every cataloged handle.
    int shift = 0;
    FunctionHandle partner;

    Complex factor(Complex s) const;
};

/// Throws UnsupportedError for handles without a cataloged equation.
FunctionalEquationSpec fe_spec(const FunctionHandle& h);

/// |F(1-s) - spec(s) partner(s)| / (|F(1-s)| + |spec(s) partner(s)| + 1)
double fe_residual(const FunctionHandle& h, Complex s, const EvalDomain& domain = {});

// Building blocks on arbitrary a in (0, 1); the handle forms restrict a further.
Complex z_function(Complex s, double a);
Complex p_function(Complex s, double a);
Complex y_function(Complex s, double a);
Complex o_function(Complex s, double a);
Complex q_function(Complex s, double a);
Complex x_function(Complex s, double a);
/// f(s, χ) = q^s L(s, χ) + i^{-κ} G(χ) L(s, χ̄)
Complex f_chi(Complex s, const DirichletCharacter& chi);

/// tan θ = ξ = (√(10 - 2√5) - 2) / (√5 - 1)
double dh_xi();
double dh_theta();
/// 5^{-s}(ζ(s,1/5) + tan θ ζ(s,2/5) - tan θ ζ(s,3/5) - ζ(s,4/5))
Complex dh_hurwitz_form(Complex s);
/// (μ, ν) with μ O(s,1/5) + ν O(s,2/5) = f(s).
std::pair<double, double> dh_mu_nu();

/// H(s, q) = 1 / (q^s + q^{1-s}). Throws PoleError where the denominator vanishes.
Complex h_factor(Complex s, double q);

struct RelationResult {
    std::string name;
    bool applicable = true;
    int checks = 0;
    double max_mismatch = 0.0;
    /// Mismatch relative to max(1, |lhs|) at the worst point.
    double max_relative = 0.0;
    std::string note;
};

struct RelationReport {
    int q = 1;
    Complex s;
    std::vector<RelationResult> relations;
};

/// Checks the eight character-sum relations between ζ(s,r/q), Li_s, Z, P, Y, O and L(s,χ) mod q.
RelationReport verify_linear_relations(int q, Complex s);

struct GammaFactorSpec {
    double q_factor = 1.0;
    /// (λ_j, μ_j) of Γ(λ_j s + μ_j)
    std::vector<std::pair<double, Complex>> factors;
};

struct SelbergDescriptor {
    GammaFactorSpec gamma;
    double degree = 0.0;
    double conductor = 0.0;
    Complex root_number = 1.0;
};

/// (d_L, q_L) = (2 Σ λ_j, (2π)^{d_L} Q² Π λ_j^{2λ_j})
std::pair<double, double> degree_conductor(const GammaFactorSpec& spec);

/// Descriptor of the Dirichlet series attached to the handle. FChi, Qfun and X
/// are taken with the q^{-s} normalization that makes them Dirichlet series.
SelbergDescriptor selberg_descriptor(const FunctionHandle& h);

}  // namespace zetalab
