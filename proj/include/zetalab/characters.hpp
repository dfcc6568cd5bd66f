#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

/// Root of unity e^{2πi num/den}, stored exactly.
struct TurnFraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    TurnFraction reduced() const;
    Complex value() const;
};

/// A Dirichlet character mod q with its values tabulated on 0..q-1.
///
/// Values on units are stored as exact turn fractions num/E, where E is the
/// exponent of (Z/qZ)^x, so products stay in integer arithmetic mod E. The
/// label is the mixed-radix index of the exponent vector on the fixed cyclic
/// generators of (Z/qZ)^x; see enumerate_characters.
class DirichletCharacter {
public:
    DirichletCharacter(int modulus, int label, std::vector<int> exponents, std::int64_t exponent_of_group,
                       std::vector<std::int64_t> turns);

    int modulus() const { return modulus_; }
    int label() const { return label_; }
    const std::vector<int>& exponents() const { return exponents_; }
    /// Common denominator of the stored turn fractions.
    std::int64_t group_exponent() const { return group_exponent_; }

    /// χ(n) for any integer n (reduced mod q).
    Complex operator()(std::int64_t n) const;
    /// Turn fraction of χ(n); only meaningful when gcd(n, q) = 1.
    TurnFraction turn(std::int64_t n) const;
    bool vanishes_at(std::int64_t n) const;
    const std::vector<Complex>& values() const { return values_; }

    int kappa() const { return kappa_; }
    bool is_even() const { return kappa_ == 0; }
    int conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == modulus_; }
    bool is_principal() const;
    bool is_real() const;

private:
    std::size_t index(std::int64_t n) const;

    int modulus_;
    int label_;
    std::vector<int> exponents_;
    std::int64_t group_exponent_;
    std::vector<std::int64_t> turns_;  // -1 where gcd(n, q) > 1
    std::vector<Complex> values_;
    int kappa_ = 0;
    int conductor_ = 1;
};

using CharacterPtr = std::shared_ptr<const DirichletCharacter>;

/// Cyclic decomposition of (Z/qZ)^x on fixed generators, with discrete logs.
class UnitGroup {
public:
    static constexpr int kDefaultMaxModulus = 1'000'000;

    explicit UnitGroup(int modulus, int max_modulus = kDefaultMaxModulus);

    int modulus() const { return modulus_; }
    /// Orders n_i of the cyclic factors, in generator order.
    const std::vector<int>& orders() const { return orders_; }
    const std::vector<std::int64_t>& generators() const { return generators_; }
    std::int64_t exponent() const { return exponent_; }
    int totient() const { return totient_; }
    int character_count() const { return totient_; }

    /// Exponent vector for a mixed-radix label.
    std::vector<int> exponents_for_label(int label) const;
    int label_for_exponents(const std::vector<int>& exponents) const;
    /// Builds the character with the given label.
    DirichletCharacter character(int label) const;

private:
    int modulus_;
    std::vector<int> orders_;
    std::vector<std::int64_t> generators_;
    std::vector<std::vector<int>> logs_;  // logs_[i][n] = discrete log of n on factor i, -1 if not a unit
    std::int64_t exponent_ = 1;
    int totient_ = 1;
};

/// All φ(q) characters mod q, sorted by (conductor, label).
/// Throws OverflowError when q exceeds max_modulus.
std::vector<CharacterPtr> enumerate_characters(int q, int max_modulus = UnitGroup::kDefaultMaxModulus);

/// The character mod q with the given label (labels run over 0..φ(q)-1).
CharacterPtr character_from_label(int q, int label);

DirichletCharacter conjugate(const DirichletCharacter& chi);
int kappa(const DirichletCharacter& chi);
/// B0(χ) = Σ_{r=0}^{q-1} χ(r) / q
Complex b0(const DirichletCharacter& chi);
bool is_primitive(const DirichletCharacter& chi);
int conductor(const DirichletCharacter& chi);

struct GaussSumValue {
    Complex value;
    int modulus = 1;
};

/// G(χ) = Σ_{r=1}^{q} χ(r) e^{2πir/q}, pairwise summed.
GaussSumValue gauss_sum(const DirichletCharacter& chi);

/// λ(χ) = G(χ) / (i^κ √q). Throws NonPrimitiveError for imprimitive χ.
Complex lambda_chi(const DirichletCharacter& chi);

/// Kronecker symbol (a/n) for any integers with n != 0, and (a/0) = [|a| == 1].
int kronecker_symbol(std::int64_t a, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t d);

/// The real primitive character n -> (D/n) mod |D|.
/// Throws NotFundamentalError unless D is a fundamental discriminant.
CharacterPtr kronecker_character(std::int64_t d);

}  // namespace zetalab
