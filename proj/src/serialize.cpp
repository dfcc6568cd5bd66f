#include "zetalab/serialize.hpp"

#include <cstdio>

#include "zetalab/errors.hpp"

namespace zetalab {

using nlohmann::json;

namespace {

json chi_ref(const DirichletCharacter& chi) { return {{"q", chi.modulus()}, {"label", chi.label()}}; }

CharacterPtr chi_from_ref(const json& j, const char* field) {
    if (!j.is_object() || !j.contains("q") || !j.contains("label")) {
        throw DomainError(std::string(field) + " must be an object {q, label}");
    }
    return character_from_label(j.at("q").get<int>(), j.at("label").get<int>());
}

Rational rational_field(const json& j) {
    if (!j.is_string()) throw DomainError("shift parameters are written as \"r/q\" strings");
    return Rational::parse(j.get<std::string>());
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json character_to_json(const DirichletCharacter& chi) {
    json values = json::array();
    for (int n = 0; n < chi.modulus(); ++n) {
        if (chi.vanishes_at(n)) {
            values.push_back(nullptr);
        } else {
            const TurnFraction t = chi.turn(n).reduced();
            values.push_back({t.num, t.den});
        }
    }
    return {{"q", chi.modulus()},
            {"label", chi.label()},
            {"values", values},
            {"kappa", chi.kappa()},
            {"conductor", chi.conductor()}};
}

json handle_to_json(const FunctionHandle& h) {
    json j = {{"kind", kind_name(h.kind)}};
    switch (h.kind) {
        case Kind::Z:
        case Kind::P:
        case Kind::Y:
        case Kind::O:
        case Kind::Qfun:
        case Kind::X:
        case Kind::SelbergEv:
        case Kind::SelbergOd:
            j["a"] = h.a.str();
            break;
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
        case Kind::RawL:
            j["chi"] = chi_ref(*h.chi);
            break;
        case Kind::QuadraticDedekind:
            j["D"] = h.discriminant;
            break;
        case Kind::DedekindComposite: {
            const auto& p = h.dedekind;
            j["l"] = p.l;
            json a = json::array();
            for (const auto& r : p.a) a.push_back(r.str());
            j["a"] = a;
            j["N"] = p.n;
            if (p.chi_ev) j["chi_ev"] = chi_ref(*p.chi_ev);
            if (p.chi_od) j["chi_od"] = chi_ref(*p.chi_od);
            break;
        }
        default:
            break;
    }
    return j;
}

FunctionHandle handle_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw DomainError("handle JSON needs a \"kind\" field");
    const Kind kind = kind_from_name(j.at("kind").get<std::string>());
    try {
        switch (kind) {
            case Kind::Z:
            case Kind::P:
            case Kind::Y:
            case Kind::O:
            case Kind::Qfun:
            case Kind::X:
            case Kind::SelbergEv:
            case Kind::SelbergOd:
                if (!j.contains("a")) throw DomainError(kind_name(kind) + " needs \"a\"");
                return make_shifted(kind, rational_field(j.at("a")));
            case Kind::FChi:
            case Kind::GChi:
            case Kind::VPlus:
            case Kind::VMinus:
            case Kind::RawL:
                if (!j.contains("chi")) throw DomainError(kind_name(kind) + " needs \"chi\"");
                return make_character_handle(kind, chi_from_ref(j.at("chi"), "chi"));
            case Kind::QuadraticDedekind:
                if (!j.contains("D")) throw DomainError("qd needs \"D\"");
                return make_quadratic_dedekind(j.at("D").get<std::int64_t>());
            case Kind::DedekindComposite: {
                if (!j.contains("l")) throw DomainError("zd needs \"l\"");
                const auto l = j.at("l").get<std::vector<int>>();
                if (l.size() != 6) throw DomainError("zd needs six exponents");
                std::array<int, 6> la{};
                std::copy(l.begin(), l.end(), la.begin());
                DedekindParams defaults;
                std::array<Rational, 6> a = defaults.a;
                if (j.contains("a")) {
                    const auto& arr = j.at("a");
                    if (!arr.is_array() || arr.size() != 6) throw DomainError("zd \"a\" needs six \"r/q\" entries");
                    for (std::size_t i = 0; i < 6; ++i) a[i] = rational_field(arr[i]);
                }
                CharacterPtr ev = j.contains("chi_ev") ? chi_from_ref(j.at("chi_ev"), "chi_ev") : nullptr;
                CharacterPtr od = j.contains("chi_od") ? chi_from_ref(j.at("chi_od"), "chi_od") : nullptr;
                std::optional<double> n;
                if (j.contains("N") && !j.at("N").is_null()) n = j.at("N").get<double>();
                return make_dedekind(la, a, ev, od, n);
            }
            case Kind::DH:
                return make_dh();
            case Kind::RawZeta:
                return make_raw_zeta();
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed handle JSON: ") + e.what());
    }
    throw DomainError("unsupported handle kind");
}

json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json rectangle_to_json(const Rectangle& r) {
    return {{"sigma1", r.sigma1}, {"sigma2", r.sigma2}, {"t1", r.t1}, {"t2", r.t2}};
}

json zero_to_json(const ZeroRecord& z) {
    return {{"sigma", z.location.real()},
            {"t", z.location.imag()},
            {"residual", z.residual},
            {"multiplicity", z.multiplicity},
            {"method", z.method == ZeroMethod::Refinement ? "refinement" : "winding"},
            {"rect", rectangle_to_json(z.rect)}};
}

json count_to_json(const CountResult& c) {
    return {{"count", c.count},
            {"winding_integral", c.winding_integral},
            {"boundary_margin", c.boundary_margin},
            {"poles_inside", c.poles_inside},
            {"perturbations", c.perturbations},
            {"samples", c.samples},
            {"rect", rectangle_to_json(c.rect)}};
}

}  // namespace zetalab
