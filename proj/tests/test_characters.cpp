#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "zetalab/characters.hpp"
#include "zetalab/errors.hpp"

using namespace zetalab;

namespace {

std::vector<Complex> table(const DirichletCharacter& chi) {
    std::vector<Complex> v(static_cast<std::size_t>(chi.modulus()));
    for (int n = 0; n < chi.modulus(); ++n) v[static_cast<std::size_t>(n)] = chi(n);
    return v;
}

}  // namespace

TEST_CASE("modulus 1 has the trivial character") {
    const auto chars = enumerate_characters(1);
    REQUIRE(chars.size() == 1);
    CHECK(chars[0]->operator()(0) == Complex(1.0));
    CHECK(chars[0]->is_primitive());
    CHECK(chars[0]->conductor() == 1);
}

TEST_CASE("modulus 5: values 1, i, -i, -1 on the non-real pair") {
    const auto chars = enumerate_characters(5);
    REQUIRE(chars.size() == 4);
    int non_real = 0;
    for (const auto& c : chars) {
        if (c->is_real()) continue;
        ++non_real;
        std::multiset<std::pair<double, double>> seen;
        for (int r = 1; r < 5; ++r) seen.insert({std::round(c->operator()(r).real()), std::round(c->operator()(r).imag())});
        const std::multiset<std::pair<double, double>> want{{1, 0}, {0, 1}, {0, -1}, {-1, 0}};
        CHECK(seen == want);
        CHECK(c->operator()(1) == Complex(1.0));
        CHECK(c->operator()(4) == Complex(-1.0));
    }
    CHECK(non_real == 2);
    // Label 1 sends the generator 2 to i; label 3 is its conjugate.
    CHECK(std::abs(character_from_label(5, 1)->operator()(2) - kI) < 1e-15);
    CHECK(std::abs(character_from_label(5, 3)->operator()(2) + kI) < 1e-15);
}

TEST_CASE("modulus 8: four real characters") {
    const auto chars = enumerate_characters(8);
    REQUIRE(chars.size() == 4);
    for (const auto& c : chars) CHECK(c->is_real());
}

TEST_CASE("character invariants up to modulus 30") {
    for (int q = 1; q <= 30; ++q) {
        const auto chars = enumerate_characters(q);
        CHECK(static_cast<int>(chars.size()) == oracle::totient(q));
        std::set<std::vector<std::pair<long, long>>> distinct;
        int prev_conductor = 0, prev_label = -1;
        for (const auto& c : chars) {
            CHECK(c->modulus() == q);
            // Sorted by (conductor, label).
            CHECK((c->conductor() > prev_conductor || (c->conductor() == prev_conductor && c->label() > prev_label)));
            prev_conductor = c->conductor();
            prev_label = c->label();

            std::vector<std::pair<long, long>> key;
            for (int a = 0; a < q; ++a) {
                const bool unit = oracle::gcd(a, q) == 1 || q == 1;
                CHECK(c->vanishes_at(a) == !unit);
                CHECK((c->operator()(a) == Complex(0.0)) == !unit);
                if (!unit) continue;
                const TurnFraction t = c->turn(a).reduced();
                key.emplace_back(t.num, t.den);
                for (int b = 1; b < q; ++b) {
                    if (oracle::gcd(b, q) != 1) continue;
                    // Exact turn arithmetic: turn(ab) = turn(a) + turn(b) mod 1.
                    const TurnFraction ta = c->turn(a), tb = c->turn(b), tab = c->turn((static_cast<long>(a) * b) % q);
                    CHECK(ta.den == tab.den);
                    CHECK((ta.num + tb.num - tab.num) % ta.den == 0);
                }
            }
            distinct.insert(key);
            CHECK(c->operator()(1) == Complex(1.0));
            const Complex minus_one = c->operator()(q - 1);
            CHECK(c->kappa() == (std::abs(minus_one - 1.0) < 1e-12 ? 0 : 1));
            CHECK(c->conductor() == oracle::conductor(table(*c)));
            CHECK(c->is_primitive() == (c->conductor() == q));
        }
        CHECK(distinct.size() == chars.size());
    }
}

TEST_CASE("orthogonality up to modulus 30") {
    for (int q = 2; q <= 30; ++q) {
        const auto chars = enumerate_characters(q);
        const double phi = static_cast<double>(chars.size());
        for (int r = 1; r < q; ++r) {
            if (oracle::gcd(r, q) != 1) continue;
            for (int a = 0; a < q; ++a) {
                Complex sum = 0.0;
                for (const auto& c : chars) sum += std::conj(c->operator()(r)) * c->operator()(a);
                const double want = a == r ? 1.0 : 0.0;
                CHECK(std::abs(sum / phi - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("b0") {
    for (const auto& c : enumerate_characters(5)) {
        if (c->is_principal()) {
            CHECK(std::abs(b0(*c) - 4.0 / 5.0) < 1e-15);
        } else {
            CHECK(std::abs(b0(*c)) < 1e-15);
        }
    }
    for (int q : {6, 12, 30}) {
        const auto principal = enumerate_characters(q).front();
        REQUIRE(principal->is_principal());
        CHECK(std::abs(b0(*principal) - oracle::totient(q) / static_cast<double>(q)) < 1e-15);
    }
}

TEST_CASE("parity and conductor examples") {
    const auto chi3 = enumerate_characters(3).back();
    CHECK(chi3->is_real());
    CHECK(chi3->kappa() == 1);

    for (int q : {4, 9, 12}) {
        const auto principal = enumerate_characters(q).front();
        CHECK(principal->is_principal());
        CHECK(principal->conductor() == 1);
        CHECK_FALSE(principal->is_primitive());
    }
    for (int p : {3, 5, 7, 11, 13}) {
        for (const auto& c : enumerate_characters(p)) {
            if (!c->is_principal()) CHECK(c->is_primitive());
        }
    }
    int from_three = 0;
    for (const auto& c : enumerate_characters(6)) {
        if (!c->is_principal()) {
            CHECK(c->conductor() == 3);
            ++from_three;
        }
    }
    CHECK(from_three == 1);
}

TEST_CASE("conjugate") {
    for (const auto& c : enumerate_characters(13)) {
        const DirichletCharacter bar = conjugate(*c);
        for (int n = 0; n < 13; ++n) CHECK(std::abs(bar(n) - std::conj(c->operator()(n))) < 1e-15);
        CHECK(bar.conductor() == c->conductor());
    }
}

TEST_CASE("Gauss sums") {
    const auto real5 = character_from_label(5, 2);
    CHECK(real5->is_real());
    CHECK(real5->is_even());
    CHECK(std::abs(gauss_sum(*real5).value - std::sqrt(5.0)) < 1e-14);

    const auto real3 = enumerate_characters(3).back();
    CHECK(std::abs(gauss_sum(*real3).value - kI * std::sqrt(3.0)) < 1e-14);

    for (int q = 1; q <= 50; ++q) {
        for (const auto& c : enumerate_characters(q)) {
            const Complex g = gauss_sum(*c).value;
            CHECK(std::abs(g - oracle::gauss_sum(table(*c))) < 1e-12);
            if (c->is_primitive()) CHECK(std::abs(std::norm(g) - q) < 1e-10);
            const Complex g_bar = gauss_sum(conjugate(*c)).value;
            CHECK(std::abs(g_bar - c->operator()(q - 1) * std::conj(g)) < 1e-12);
        }
    }
}

TEST_CASE("root numbers") {
    CHECK(std::abs(lambda_chi(*character_from_label(5, 2)) - 1.0) < 1e-14);
    CHECK(std::abs(lambda_chi(*enumerate_characters(3).back()) - 1.0) < 1e-14);
    const Complex l = lambda_chi(*character_from_label(5, 1));
    CHECK(std::abs(std::abs(l) - 1.0) < 1e-14);
    CHECK(std::abs(l.imag()) > 0.1);
    CHECK_THROWS_AS(lambda_chi(*enumerate_characters(6).back()), NonPrimitiveError);
    for (int q = 3; q <= 40; ++q) {
        for (const auto& c : enumerate_characters(q)) {
            if (c->is_primitive()) CHECK(std::abs(std::abs(lambda_chi(*c)) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("Kronecker symbol agrees with the factoring oracle") {
    for (long a = -40; a <= 40; ++a) {
        for (long n = -40; n <= 40; ++n) {
            CHECK(kronecker_symbol(a, n) == oracle::kronecker(a, n));
        }
    }
}

TEST_CASE("fundamental discriminants") {
    for (long d : {-3, -4, 5, -7, 8, -8, 12, 13, -15, 17, -20, 21, 24, -24, 28, 29})
        CHECK(is_fundamental_discriminant(d));
    for (long d : {0, 1, 2, 3, -1, 4, 9, 16, 20, -12, 25, 32, -16})
        CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("Kronecker characters") {
    const auto m3 = kronecker_character(-3);
    CHECK(m3->modulus() == 3);
    CHECK(m3->kappa() == 1);
    CHECK(m3->is_primitive());
    const auto p5 = kronecker_character(5);
    CHECK(p5->modulus() == 5);
    CHECK(p5->kappa() == 0);
    const auto p8 = kronecker_character(8);
    CHECK(p8->modulus() == 8);
    CHECK(p8->kappa() == 0);
    const auto p12 = kronecker_character(12);
    CHECK(p12->modulus() == 12);
    CHECK(p12->is_primitive());
    CHECK_THROWS_AS(kronecker_character(20), NotFundamentalError);
    CHECK_THROWS_AS(kronecker_character(-12), NotFundamentalError);

    for (long d : {-3, -4, 5, -7, 8, -8, 12, 13, -15, -20, 21, 24}) {
        const auto chi = kronecker_character(d);
        CHECK(chi->modulus() == std::abs(d));
        CHECK(chi->kappa() == (d > 0 ? 0 : 1));
        for (long n = 0; n < 3 * std::abs(d); ++n) CHECK(chi->operator()(n) == Complex(oracle::kronecker(d, n)));
    }
}

TEST_CASE("modulus limits and labels") {
    CHECK_THROWS_AS(enumerate_characters(100, 50), OverflowError);
    CHECK_THROWS_AS(character_from_label(5, 4), DomainError);
    CHECK_THROWS_AS(character_from_label(0, 0), DomainError);
    const UnitGroup g(24);
    CHECK(g.totient() == 8);
    CHECK(g.exponent() == 2);
    for (int label = 0; label < g.totient(); ++label) CHECK(g.label_for_exponents(g.exponents_for_label(label)) == label);
}
