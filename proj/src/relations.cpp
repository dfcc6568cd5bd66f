#include <cmath>
#include <functional>

#include "zetalab/composed.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

struct CharacterData {
    CharacterPtr chi;
    Complex l_value;
    Complex gauss_of_conjugate;
};

std::vector<CharacterData> character_data(int m, Complex s) {
    std::vector<CharacterData> out;
    for (const auto& chi : enumerate_characters(m)) {
        out.push_back({chi, kernel::dirichlet(s, *chi), gauss_sum(conjugate(*chi)).value});
    }
    return out;
}

class Tracker {
public:
    explicit Tracker(std::string name) { result_.name = std::move(name); }

    void add(Complex lhs, Complex rhs) {
        const double diff = std::abs(lhs - rhs);
        result_.max_mismatch = std::max(result_.max_mismatch, diff);
        result_.max_relative = std::max(result_.max_relative, diff / std::max(1.0, std::abs(lhs)));
        ++result_.checks;
    }

    RelationResult skip(std::string why) {
        result_.applicable = false;
        result_.note = std::move(why);
        return result_;
    }

    RelationResult& result() { return result_; }

private:
    RelationResult result_;
};

RelationResult guarded(const std::string& name, const std::function<RelationResult(Tracker&)>& body) {
    Tracker tracker(name);
    try {
        return body(tracker);
    } catch (const ZetaError& e) {
        return tracker.skip(e.what());
    }
}

}  // namespace

RelationReport verify_linear_relations(int q, Complex s) {
    require_finite(s, "s");
    if (q < 1) throw DomainError("modulus must be positive");
    RelationReport report;
    report.q = q;
    report.s = s;

    const auto chars = character_data(q, s);
    const double phi = static_cast<double>(chars.size());
    const Complex q_s = std::exp(s * std::log(static_cast<double>(q)));

    // Li_s(e^{2πir/q}) = Σ_{d|q} d^{-s} φ(q/d)^{-1} Σ_{ψ mod q/d} ψ(r) G(ψ̄) L(s,ψ)
    std::vector<std::pair<int, std::vector<CharacterData>>> by_divisor;
    for (int d = 1; d <= q; ++d) {
        if (q % d == 0) by_divisor.emplace_back(d, character_data(q / d, s));
    }
    auto li_from_l = [&](int r) {
        Complex total{};
        for (const auto& [d, data] : by_divisor) {
            Complex inner{};
            for (const auto& c : data) inner += (*c.chi)(r) * c.gauss_of_conjugate * c.l_value;
            total += std::exp(-s * std::log(static_cast<double>(d))) * inner / static_cast<double>(data.size());
        }
        return total;
    };
    // (q^s / φ(q)) Σ_χ w(χ) χ̄(r) L(s,χ)
    auto hurwitz_sum = [&](int r, const std::function<double(const DirichletCharacter&)>& weight) {
        Complex total{};
        for (const auto& c : chars) total += weight(*c.chi) * std::conj((*c.chi)(r)) * c.l_value;
        return q_s * total / phi;
    };
    auto units = [&] {
        std::vector<int> rs;
        for (int r = 1; r <= q; ++r) {
            if (gcd64(r, q) == 1 && (r < q || q == 1)) rs.push_back(r);
        }
        return rs;
    }();
    auto ratio = [&](int r) { return static_cast<double>(r) / q; };

    report.relations.push_back(guarded("hurwitz_from_l", [&](Tracker& t) {
        for (int r : units) t.add(kernel::hurwitz(s, ratio(r)), hurwitz_sum(r, [](const auto&) { return 1.0; }));
        return t.result();
    }));

    auto need = [&](Tracker& t, int min_q) -> bool {
        if (q < min_q) {
            t.skip("needs q >= " + std::to_string(min_q));
            return false;
        }
        return true;
    };

    report.relations.push_back(guarded("periodic_from_l", [&](Tracker& t) {
        if (!need(t, 2)) return t.result();
        for (int r : units) t.add(kernel::periodic(s, ratio(r)), li_from_l(r));
        return t.result();
    }));

    report.relations.push_back(guarded("z_from_l", [&](Tracker& t) {
        if (!need(t, 2)) return t.result();
        for (int r : units) {
            t.add(z_function(s, ratio(r)), hurwitz_sum(r, [](const auto& chi) { return chi.is_even() ? 2.0 : 0.0; }));
        }
        return t.result();
    }));

    report.relations.push_back(guarded("p_from_l", [&](Tracker& t) {
        if (!need(t, 2)) return t.result();
        for (int r : units) t.add(p_function(s, ratio(r)), li_from_l(r) + li_from_l(q - r));
        return t.result();
    }));

    report.relations.push_back(guarded("y_from_l", [&](Tracker& t) {
        if (!need(t, 3)) return t.result();
        for (int r : units) {
            t.add(y_function(s, ratio(r)), hurwitz_sum(r, [](const auto& chi) { return chi.is_even() ? 0.0 : 2.0; }));
        }
        return t.result();
    }));

    report.relations.push_back(guarded("o_from_l", [&](Tracker& t) {
        if (!need(t, 3)) return t.result();
        for (int r : units) t.add(o_function(s, ratio(r)), -kI * (li_from_l(r) - li_from_l(q - r)));
        return t.result();
    }));

    // L from Z (all even χ) and from P (primitive even χ); odd analogue with Y and O.
    auto l_from_pair = [&](Tracker& t, bool even) {
        for (const auto& c : chars) {
            const auto& chi = *c.chi;
            if (chi.is_even() != even) continue;
            Complex first{}, second{};
            for (int r = 1; r < q; ++r) {
                if (chi.vanishes_at(r)) continue;
                const double a = ratio(r);
                first += chi(r) * (even ? z_function(s, a) : y_function(s, a));
                if (chi.is_primitive()) second += std::conj(chi(r)) * (even ? p_function(s, a) : o_function(s, a));
            }
            t.add(c.l_value, first / (2.0 * q_s));
            if (chi.is_primitive()) {
                const Complex scale = even ? Complex(1.0) : kI;
                t.add(c.l_value, scale * second / (2.0 * c.gauss_of_conjugate));
            }
        }
        if (t.result().checks == 0) t.skip(std::string("no ") + (even ? "even" : "odd") + " characters");
        return t.result();
    };

    report.relations.push_back(guarded("l_from_zp", [&](Tracker& t) {
        if (!need(t, 2)) return t.result();
        return l_from_pair(t, true);
    }));
    report.relations.push_back(guarded("l_from_yo", [&](Tracker& t) {
        if (!need(t, 3)) return t.result();
        return l_from_pair(t, false);
    }));
    return report;
}

}  // namespace zetalab
