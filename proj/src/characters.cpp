#include "zetalab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "zetalab/errors.hpp"
#include "zetalab/gamma.hpp"

namespace zetalab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (e > 0) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    return mod(old_s, m);
}

std::vector<std::pair<int, int>> factorize(int n) {
    std::vector<std::pair<int, int>> out;
    for (int p = 2; static_cast<std::int64_t>(p) * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (auto [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

// Smallest primitive root modulo p^e for an odd prime p.
std::int64_t primitive_root(int p, int e) {
    std::int64_t pe = 1;
    for (int k = 0; k < e; ++k) pe *= p;
    const std::int64_t phi = pe / p * (p - 1);
    const auto primes = prime_divisors(static_cast<int>(phi));
    for (std::int64_t g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (int ell : primes) {
            if (pow_mod(g, phi / ell, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

Complex pairwise_sum(const Complex* first, std::size_t n) {
    if (n == 0) return {};
    if (n <= 8) {
        Complex acc{};
        for (std::size_t k = 0; k < n; ++k) acc += first[k];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(first, half) + pairwise_sum(first + half, n - half);
}

}  // namespace

TurnFraction TurnFraction::reduced() const {
    const std::int64_t n = mod(num, den);
    const std::int64_t g = std::gcd(n, den);
    return {n / g, den / g};
}

Complex TurnFraction::value() const {
    const std::int64_t n = mod(num, den);
    const double u = 2.0 * static_cast<double>(n) / static_cast<double>(den);
    return {cos_pi(Complex(u)).real(), sin_pi(Complex(u)).real()};
}

DirichletCharacter::DirichletCharacter(int modulus, int label, std::vector<int> exponents,
                                       std::int64_t exponent_of_group, std::vector<std::int64_t> turns)
    : modulus_(modulus),
      label_(label),
      exponents_(std::move(exponents)),
      group_exponent_(exponent_of_group),
      turns_(std::move(turns)) {
    values_.resize(turns_.size());
    for (std::size_t n = 0; n < turns_.size(); ++n) {
        values_[n] = turns_[n] < 0 ? Complex{} : TurnFraction{turns_[n], group_exponent_}.value();
    }
    kappa_ = turns_[index(modulus_ - 1)] == 0 ? 0 : 1;

    // Smallest f | q such that χ is trivial on units congruent to 1 mod f.
    for (int f = 1; f <= modulus_; ++f) {
        if (modulus_ % f != 0) continue;
        bool induced = true;
        for (int n = 1; n < modulus_ && induced; n += f) {
            if (turns_[n] > 0) induced = false;
        }
        if (induced) {
            conductor_ = f;
            break;
        }
    }
}

std::size_t DirichletCharacter::index(std::int64_t n) const { return static_cast<std::size_t>(mod(n, modulus_)); }

Complex DirichletCharacter::operator()(std::int64_t n) const { return values_[index(n)]; }

TurnFraction DirichletCharacter::turn(std::int64_t n) const { return {std::max<std::int64_t>(turns_[index(n)], 0), group_exponent_}; }

bool DirichletCharacter::vanishes_at(std::int64_t n) const { return turns_[index(n)] < 0; }

bool DirichletCharacter::is_principal() const {
    return std::all_of(turns_.begin(), turns_.end(), [](std::int64_t t) { return t <= 0; });
}

bool DirichletCharacter::is_real() const {
    return std::all_of(turns_.begin(), turns_.end(),
                       [this](std::int64_t t) { return t <= 0 || 2 * t == group_exponent_; });
}

UnitGroup::UnitGroup(int modulus, int max_modulus) : modulus_(modulus) {
    if (modulus < 1) throw DomainError("modulus must be positive");
    if (modulus > max_modulus) {
        throw OverflowError("modulus " + std::to_string(modulus) + " exceeds the configured bound " +
                            std::to_string(max_modulus));
    }
    const std::int64_t q = modulus;

    auto add_factor = [&](std::int64_t pe, std::int64_t local_generator, int order,
                          const std::vector<int>& local_logs) {
        // Lift to x = g mod p^e, x = 1 mod q / p^e.
        const std::int64_t rest = q / pe;
        const std::int64_t x = mod(local_generator * rest % q * inverse_mod(rest, pe) +
                                       pe * inverse_mod(pe, rest == 1 ? 1 : rest) % q,
                                   q);
        generators_.push_back(rest == 1 ? mod(local_generator, q) : x);
        orders_.push_back(order);
        std::vector<int> logs(static_cast<std::size_t>(q), -1);
        for (std::int64_t n = 0; n < q; ++n) {
            if (std::gcd(n, q) == 1) logs[static_cast<std::size_t>(n)] = local_logs[static_cast<std::size_t>(n % pe)];
        }
        logs_.push_back(std::move(logs));
    };

    for (auto [p, e] : factorize(modulus)) {
        std::int64_t pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        if (p != 2) {
            const std::int64_t g = primitive_root(p, e);
            const int order = static_cast<int>(pe / p * (p - 1));
            std::vector<int> table(static_cast<std::size_t>(pe), -1);
            std::int64_t x = 1;
            for (int k = 0; k < order; ++k) {
                table[static_cast<std::size_t>(x)] = k;
                x = x * g % pe;
            }
            add_factor(pe, g, order, table);
        } else if (e == 2) {
            std::vector<int> table = {-1, 0, -1, 1};
            add_factor(4, 3, 2, table);
        } else if (e >= 3) {
            // (Z/2^e)^x = <-1> x <5>
            std::vector<int> sign_table(static_cast<std::size_t>(pe), -1);
            std::vector<int> five_table(static_cast<std::size_t>(pe), -1);
            std::vector<int> five_logs(static_cast<std::size_t>(pe), -1);
            const int five_order = static_cast<int>(pe / 4);
            std::int64_t x = 1;
            for (int k = 0; k < five_order; ++k) {
                five_logs[static_cast<std::size_t>(x)] = k;
                x = x * 5 % pe;
            }
            for (std::int64_t n = 1; n < pe; n += 2) {
                const bool plus = n % 4 == 1;
                sign_table[static_cast<std::size_t>(n)] = plus ? 0 : 1;
                five_table[static_cast<std::size_t>(n)] = five_logs[static_cast<std::size_t>(plus ? n : pe - n)];
            }
            add_factor(pe, pe - 1, 2, sign_table);
            add_factor(pe, 5, five_order, five_table);
        }
    }

    for (int n : orders_) {
        exponent_ = std::lcm(exponent_, static_cast<std::int64_t>(n));
        totient_ *= n;
    }
}

std::vector<int> UnitGroup::exponents_for_label(int label) const {
    if (label < 0 || label >= totient_) {
        throw DomainError("character label " + std::to_string(label) + " out of range for modulus " +
                          std::to_string(modulus_));
    }
    std::vector<int> k(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        k[i] = label % orders_[i];
        label /= orders_[i];
    }
    return k;
}

int UnitGroup::label_for_exponents(const std::vector<int>& exponents) const {
    int label = 0;
    int radix = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        label += static_cast<int>(mod(exponents[i], orders_[i])) * radix;
        radix *= orders_[i];
    }
    return label;
}

DirichletCharacter UnitGroup::character(int label) const {
    const auto k = exponents_for_label(label);
    std::vector<std::int64_t> turns(static_cast<std::size_t>(modulus_), -1);
    for (int n = 0; n < modulus_; ++n) {
        if (std::gcd(n, modulus_) != 1) continue;
        std::int64_t t = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            t += static_cast<std::int64_t>(k[i]) * logs_[i][static_cast<std::size_t>(n)] * (exponent_ / orders_[i]);
        }
        turns[static_cast<std::size_t>(n)] = mod(t, exponent_);
    }
    return DirichletCharacter(modulus_, label, k, exponent_, std::move(turns));
}

std::vector<CharacterPtr> enumerate_characters(int q, int max_modulus) {
    const UnitGroup group(q, max_modulus);
    std::vector<CharacterPtr> out;
    out.reserve(static_cast<std::size_t>(group.character_count()));
    for (int label = 0; label < group.character_count(); ++label) {
        out.push_back(std::make_shared<const DirichletCharacter>(group.character(label)));
    }
    std::stable_sort(out.begin(), out.end(), [](const CharacterPtr& a, const CharacterPtr& b) {
        return std::pair(a->conductor(), a->label()) < std::pair(b->conductor(), b->label());
    });
    return out;
}

CharacterPtr character_from_label(int q, int label) {
    return std::make_shared<const DirichletCharacter>(UnitGroup(q).character(label));
}

DirichletCharacter conjugate(const DirichletCharacter& chi) {
    const UnitGroup group(chi.modulus());
    std::vector<int> k = chi.exponents();
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = (group.orders()[i] - k[i]) % group.orders()[i];
    return group.character(group.label_for_exponents(k));
}

int kappa(const DirichletCharacter& chi) { return chi.kappa(); }

Complex b0(const DirichletCharacter& chi) {
    const auto& v = chi.values();
    return pairwise_sum(v.data(), v.size()) / static_cast<double>(chi.modulus());
}

bool is_primitive(const DirichletCharacter& chi) { return chi.is_primitive(); }

int conductor(const DirichletCharacter& chi) { return chi.conductor(); }

GaussSumValue gauss_sum(const DirichletCharacter& chi) {
    const std::int64_t q = chi.modulus();
    const std::int64_t e = chi.group_exponent();
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(q));
    for (std::int64_t r = 1; r <= q; ++r) {
        if (chi.vanishes_at(r)) continue;
        // χ(r) e^{2πir/q} as one exact turn fraction over e*q.
        const TurnFraction t{chi.turn(r).num * q + r * e, e * q};
        terms.push_back(t.value());
    }
    return {pairwise_sum(terms.data(), terms.size()), static_cast<int>(q)};
}

Complex lambda_chi(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) {
        throw NonPrimitiveError("lambda(chi) needs a primitive character; conductor " +
                                std::to_string(chi.conductor()) + " != modulus " + std::to_string(chi.modulus()));
    }
    const Complex i_kappa = chi.kappa() == 0 ? Complex(1.0) : kI;
    return gauss_sum(chi).value / (i_kappa * std::sqrt(static_cast<double>(chi.modulus())));
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    static constexpr int kTab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int v = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++v;
    }
    int k = (v % 2 == 0) ? 1 : kTab[a & 7];
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    while (true) {
        if (a == 0) return n > 1 ? 0 : k;
        v = 0;
        while ((a & 1) == 0) {
            a /= 2;
            ++v;
        }
        if (v & 1) k *= kTab[n & 7];
        if (a & n & 2) k = -k;
        const std::int64_t r = a < 0 ? -a : a;
        a = n % r;
        n = r;
    }
}

namespace {

bool squarefree(std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return n != 0;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::int64_t r = mod(d, 4);
    if (r == 1) return squarefree(d);
    if (r == 0) {
        const std::int64_t m = d / 4;
        const std::int64_t rm = mod(m, 4);
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

CharacterPtr kronecker_character(std::int64_t d) {
    if (!is_fundamental_discriminant(d)) {
        throw NotFundamentalError(std::to_string(d) + " is not a fundamental discriminant");
    }
    const std::int64_t q = d < 0 ? -d : d;
    if (q > UnitGroup::kDefaultMaxModulus) throw OverflowError("discriminant too large");
    const UnitGroup group(static_cast<int>(q));
    std::vector<int> k(group.orders().size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] = kronecker_symbol(d, group.generators()[i]) == 1 ? 0 : group.orders()[i] / 2;
    }
    auto chi = std::make_shared<const DirichletCharacter>(group.character(group.label_for_exponents(k)));
    for (std::int64_t n = 0; n < q; ++n) {
        if (std::abs((*chi)(n) - static_cast<double>(kronecker_symbol(d, n))) > 1e-12) {
            throw std::logic_error("Kronecker character table mismatch");
        }
    }
    return chi;
}

}  // namespace zetalab
