#include "zetalab/composed.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zetalab/errors.hpp"
#include "zetalab/gamma.hpp"

namespace zetalab {

namespace {

const std::map<Kind, std::string>& kind_names() {
    static const std::map<Kind, std::string> names = {
        {Kind::Z, "z"},
        {Kind::P, "p"},
        {Kind::Y, "y"},
        {Kind::O, "o"},
        {Kind::Qfun, "q"},
        {Kind::X, "x"},
        {Kind::DH, "dh"},
        {Kind::FChi, "fchi"},
        {Kind::GChi, "gchi"},
        {Kind::VPlus, "vplus"},
        {Kind::VMinus, "vminus"},
        {Kind::DedekindComposite, "zd"},
        {Kind::SelbergEv, "zsev"},
        {Kind::SelbergOd, "zsod"},
        {Kind::QuadraticDedekind, "qd"},
        {Kind::RawL, "rawl"},
        {Kind::RawZeta, "rawzeta"},
    };
    return names;
}

Complex i_pow_minus_kappa(int kappa) { return kappa == 0 ? Complex(1.0) : -kI; }

Complex real_pow(double base, Complex s) { return std::exp(s * std::log(base)); }

Complex int_pow(Complex z, int n) {
    Complex out = 1.0;
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}

bool is_half(const Rational& a) { return a.num() * 2 == a.den(); }

void require_shift(const Rational& a, bool allow_half, const std::string& what) {
    const bool ok = a.num() > 0 && (allow_half ? 2 * a.num() <= a.den() : 2 * a.num() < a.den());
    if (!ok) {
        throw DomainError(what + " needs " + (allow_half ? "0 < a <= 1/2" : "0 < a < 1/2") + ", got a = " +
                          a.str());
    }
}

void require_primitive(const DirichletCharacter& chi, const std::string& what) {
    if (!chi.is_primitive()) {
        throw NonPrimitiveError(what + " needs a primitive character; chi mod " + std::to_string(chi.modulus()) +
                                " label " + std::to_string(chi.label()) + " has conductor " +
                                std::to_string(chi.conductor()));
    }
}

Complex f_chi_cached(Complex s, const DirichletCharacter& chi, const DirichletCharacter& chi_bar, Complex g) {
    const double q = chi.modulus();
    return real_pow(q, s) * kernel::dirichlet(s, chi) + i_pow_minus_kappa(chi.kappa()) * g * kernel::dirichlet(s, chi_bar);
}

const DirichletCharacter& dh_character(int label) {
    static const CharacterPtr l1 = character_from_label(5, 1);
    static const CharacterPtr l2 = character_from_label(5, 3);
    return label == 1 ? *l1 : *l2;
}

Complex dh_value(Complex s) {
    const double theta = dh_theta();
    const Complex e = std::polar(1.0, theta);
    return (0.5 / std::cos(theta)) * (std::conj(e) * kernel::dirichlet(s, dh_character(1)) +
                                      e * kernel::dirichlet(s, dh_character(3)));
}

Complex dedekind_value(const DedekindParams& p, Complex s) {
    const auto& l = p.l;
    auto av = [&](int i) { return p.a[static_cast<std::size_t>(i)].value(); };
    Complex v = std::exp(-0.5 * s * std::log(p.n));
    if (l[0] + l[1] > 0) {
        v *= int_pow(z_function(s, av(0)), l[0] + l[1]) * int_pow(p_function(s, av(1)), l[0] + l[1]);
    }
    if (l[2] + l[3] > 0) v *= int_pow(q_function(s, av(2)), l[2] + l[3]);
    if (l[1] > 0) v *= int_pow(y_function(s, av(3)), l[1]) * int_pow(o_function(s, av(4)), l[1]);
    if (l[3] > 0) v *= int_pow(x_function(s, av(5)), l[3]);
    if (l[4] + l[5] > 0) v *= int_pow(f_chi(s, *p.chi_ev), l[4] + l[5]);
    if (l[5] > 0) v *= int_pow(f_chi(s, *p.chi_od), l[5]);
    return v;
}

}  // namespace

std::string kind_name(Kind kind) { return kind_names().at(kind); }

Kind kind_from_name(const std::string& name) {
    for (const auto& [k, n] : kind_names()) {
        if (n == name) return k;
    }
    throw DomainError("unknown handle kind '" + name + "'");
}

double default_dedekind_n(const DedekindParams& p) {
    const auto& l = p.l;
    double n = 1.0;
    auto mul = [&](double q, int w) { n *= std::pow(q, 2.0 * w); };
    mul(static_cast<double>(p.a[0].den()), l[0] + l[1]);
    mul(static_cast<double>(p.a[2].den()), l[2] + l[3]);
    mul(static_cast<double>(p.a[3].den()), l[1]);
    mul(static_cast<double>(p.a[5].den()), l[3]);
    if (p.chi_ev) mul(p.chi_ev->modulus(), l[4] + l[5]);
    if (p.chi_od) mul(p.chi_od->modulus(), l[5]);
    return n;
}

std::string FunctionHandle::describe() const {
    std::string out = kind_name(kind);
    switch (kind) {
        case Kind::Z:
        case Kind::P:
        case Kind::Y:
        case Kind::O:
        case Kind::Qfun:
        case Kind::X:
        case Kind::SelbergEv:
        case Kind::SelbergOd:
            return out + "(a=" + a.str() + ")";
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
        case Kind::RawL:
            return out + "(q=" + std::to_string(chi->modulus()) + ",label=" + std::to_string(chi->label()) + ")";
        case Kind::QuadraticDedekind:
            return out + "(D=" + std::to_string(discriminant) + ")";
        case Kind::DedekindComposite: {
            out += "(l=";
            for (std::size_t i = 0; i < 6; ++i) out += (i ? "," : "") + std::to_string(dedekind.l[i]);
            return out + ")";
        }
        default:
            return out;
    }
}

FunctionHandle make_shifted(Kind kind, const Rational& a) {
    switch (kind) {
        case Kind::Z:
        case Kind::P:
        case Kind::Qfun:
        case Kind::SelbergEv:
        case Kind::Y:
        case Kind::O:
        case Kind::X:
        case Kind::SelbergOd:
            // a = 1/2 is admitted for Y, O, X and the odd Selberg product, which then vanish identically.
            require_shift(a, true, kind_name(kind));
            break;
        default:
            throw DomainError("handle kind " + kind_name(kind) + " does not take a shift parameter");
    }
    FunctionHandle h;
    h.kind = kind;
    h.a = a;
    return h;
}

FunctionHandle make_dh() {
    FunctionHandle h;
    h.kind = Kind::DH;
    return h;
}

FunctionHandle make_character_handle(Kind kind, CharacterPtr chi) {
    if (!chi) throw DomainError("missing character");
    FunctionHandle h;
    h.kind = kind;
    h.chi = chi;
    switch (kind) {
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
            require_primitive(*chi, kind_name(kind));
            break;
        case Kind::RawL:
            break;
        default:
            throw DomainError("handle kind " + kind_name(kind) + " does not take a character");
    }
    h.chi_bar = std::make_shared<const DirichletCharacter>(conjugate(*chi));
    h.gauss = gauss_sum(*chi).value;
    if (chi->is_primitive()) h.lambda = lambda_chi(*chi);
    if ((kind == Kind::VPlus || kind == Kind::VMinus) &&
        (std::abs(1.0 + h.lambda) < 1e-12 || std::abs(1.0 - h.lambda) < 1e-12)) {
        throw DomainError(kind_name(kind) + " needs lambda(chi) != +-1; real primitive characters have lambda = 1");
    }
    return h;
}

FunctionHandle make_dedekind(const std::array<int, 6>& l, const std::array<Rational, 6>& a, CharacterPtr chi_ev,
                             CharacterPtr chi_od, std::optional<double> n) {
    for (int li : l) {
        if (li < 0 || li > 3) throw DomainError("zd exponents must satisfy 0 <= l_i <= 3");
    }
    if (std::min(2 * l[0] + l[2] + l[4], 2 * l[1] + l[3] + l[5]) < 1) {
        throw DomainError("zd exponents need min{2l1+l3+l5, 2l2+l4+l6} >= 1");
    }
    for (int i = 0; i < 3; ++i) require_shift(a[static_cast<std::size_t>(i)], true, "zd slot a" + std::to_string(i + 1));
    for (int i = 3; i < 6; ++i) require_shift(a[static_cast<std::size_t>(i)], false, "zd slot a" + std::to_string(i + 1));
    DedekindParams p;
    p.l = l;
    p.a = a;
    if (l[4] + l[5] > 0) {
        if (!chi_ev) throw DomainError("zd with l5 + l6 > 0 needs an even character");
        require_primitive(*chi_ev, "zd even slot");
        if (!chi_ev->is_even()) throw DomainError("zd even slot needs an even character");
        p.chi_ev = chi_ev;
    }
    if (l[5] > 0) {
        if (!chi_od) throw DomainError("zd with l6 > 0 needs an odd character");
        require_primitive(*chi_od, "zd odd slot");
        if (chi_od->is_even()) throw DomainError("zd odd slot needs an odd character");
        p.chi_od = chi_od;
    }
    p.n = n ? *n : default_dedekind_n(p);
    if (!(p.n > 0.0) || !std::isfinite(p.n)) throw DomainError("zd needs a finite N > 0");
    FunctionHandle h;
    h.kind = Kind::DedekindComposite;
    h.dedekind = p;
    return h;
}

FunctionHandle make_quadratic_dedekind(std::int64_t discriminant) {
    FunctionHandle h;
    h.kind = Kind::QuadraticDedekind;
    h.discriminant = discriminant;
    h.chi = kronecker_character(discriminant);
    return h;
}

FunctionHandle make_raw_zeta() { return FunctionHandle{}; }

Complex z_function(Complex s, double a) { return kernel::hurwitz(s, a) + kernel::hurwitz(s, 1.0 - a); }

Complex p_function(Complex s, double a) { return kernel::periodic(s, a) + kernel::periodic(s, 1.0 - a); }

Complex y_function(Complex s, double a) {
    if (a == 0.5) return 0.0;
    return kernel::hurwitz_regularized(s, a) - kernel::hurwitz_regularized(s, 1.0 - a);
}

Complex o_function(Complex s, double a) {
    if (a == 0.5) return 0.0;
    return -kI * (kernel::periodic(s, a) - kernel::periodic(s, 1.0 - a));
}

Complex q_function(Complex s, double a) { return 0.5 * (z_function(s, a) + p_function(s, a)); }

Complex x_function(Complex s, double a) { return 0.5 * (y_function(s, a) + o_function(s, a)); }

Complex f_chi(Complex s, const DirichletCharacter& chi) {
    const DirichletCharacter bar = conjugate(chi);
    return f_chi_cached(s, chi, bar, gauss_sum(chi).value);
}

double dh_xi() {
    static const double xi = (std::sqrt(10.0 - 2.0 * std::sqrt(5.0)) - 2.0) / (std::sqrt(5.0) - 1.0);
    return xi;
}

double dh_theta() {
    static const double theta = std::atan(dh_xi());
    return theta;
}

Complex dh_hurwitz_form(Complex s) {
    const double xi = dh_xi();
    using kernel::hurwitz_regularized;
    const Complex sum = hurwitz_regularized(s, 0.2) + xi * hurwitz_regularized(s, 0.4) -
                        xi * hurwitz_regularized(s, 0.6) - hurwitz_regularized(s, 0.8);
    return std::exp(-s * std::log(5.0)) * sum;
}

std::pair<double, double> dh_mu_nu() {
    // Match the n = 1, 2 coefficients of μ O(s,1/5) + ν O(s,2/5), where O(s,a) = 2 Σ sin(2πna) n^{-s}.
    const double a11 = 2.0 * std::sin(2.0 * kPi / 5.0), a12 = 2.0 * std::sin(4.0 * kPi / 5.0);
    const double a21 = 2.0 * std::sin(4.0 * kPi / 5.0), a22 = 2.0 * std::sin(8.0 * kPi / 5.0);
    const double b1 = 1.0, b2 = dh_xi();
    const double det = a11 * a22 - a12 * a21;
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

Complex h_factor(Complex s, double q) {
    const Complex u = real_pow(q, s);
    const Complex v = real_pow(q, 1.0 - s);
    const Complex den = u + v;
    if (std::abs(den) <= 1e-12 * (std::abs(u) + std::abs(v))) {
        throw PoleError("H(s, q) has a pole where q^s + q^(1-s) = 0");
    }
    return 1.0 / den;
}

Complex eval(const FunctionHandle& h, Complex s, const EvalDomain& domain) {
    require_finite(s, "s");
    domain.require(s);
    const double a = h.a.value();
    switch (h.kind) {
        case Kind::Z: return z_function(s, a);
        case Kind::P: return p_function(s, a);
        case Kind::Y: return y_function(s, a);
        case Kind::O: return o_function(s, a);
        case Kind::Qfun: return q_function(s, a);
        case Kind::X: return x_function(s, a);
        case Kind::DH: return dh_value(s);
        case Kind::FChi: return f_chi_cached(s, *h.chi, *h.chi_bar, h.gauss);
        case Kind::GChi: {
            const Complex hf = h_factor(s, h.chi->modulus());
            return f_chi_cached(s, *h.chi, *h.chi_bar, h.gauss) * hf;
        }
        case Kind::VPlus:
        case Kind::VMinus: {
            const double sign = h.kind == Kind::VPlus ? 1.0 : -1.0;
            return (kernel::dirichlet(s, *h.chi) + sign * h.lambda * kernel::dirichlet(s, *h.chi_bar)) /
                   (1.0 + sign * h.lambda);
        }
        case Kind::DedekindComposite: return dedekind_value(h.dedekind, s);
        case Kind::SelbergEv:
        case Kind::SelbergOd: {
            const Complex scale = std::exp(-s * std::log(static_cast<double>(h.a.den())));
            if (h.kind == Kind::SelbergEv) return scale * z_function(s, a) * p_function(s, a);
            return scale * y_function(s, a) * o_function(s, a);
        }
        case Kind::QuadraticDedekind: return kernel::riemann(s) * kernel::dirichlet(s, *h.chi);
        case Kind::RawL: return kernel::dirichlet(s, *h.chi);
        case Kind::RawZeta: return kernel::riemann(s);
    }
    throw std::logic_error("unhandled kind");
}

std::string eval_route(const FunctionHandle& h, Complex s) {
    bool hurwitz = true;
    bool periodic = false;
    switch (h.kind) {
        case Kind::P:
        case Kind::O:
            hurwitz = false;
            periodic = true;
            break;
        case Kind::Qfun:
        case Kind::X:
        case Kind::SelbergEv:
        case Kind::SelbergOd:
            periodic = true;
            break;
        case Kind::DedekindComposite: {
            const auto& l = h.dedekind.l;
            periodic = l[0] + l[1] + l[2] + l[3] > 0;
            break;
        }
        default:
            break;
    }
    std::string out;
    if (hurwitz) out = std::string("hurwitz:") + hurwitz_route(s);
    if (periodic) out += std::string(out.empty() ? "" : ";") + "periodic:" + periodic_route(s);
    return out;
}

int pole_order_at_one(const FunctionHandle& h) {
    switch (h.kind) {
        case Kind::Z:
        case Kind::Qfun:
        case Kind::RawZeta:
        case Kind::QuadraticDedekind:
            return 1;
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
            return h.chi->modulus() == 1 ? 1 : 0;
        case Kind::RawL:
            return h.chi->is_principal() ? 1 : 0;
        case Kind::SelbergEv:
            // P(1, a) = -2 log(2 sin πa) vanishes at a = 1/6 and cancels the pole of Z.
            return h.a == Rational(1, 6) ? 0 : 1;
        case Kind::DedekindComposite: {
            const auto& p = h.dedekind;
            const int w = p.l[0] + p.l[1];
            int order = w + p.l[2] + p.l[3];
            if (p.a[1] == Rational(1, 6)) order -= w;
            if (p.chi_ev && p.chi_ev->modulus() == 1) order += p.l[4] + p.l[5];
            return std::max(order, 0);
        }
        default:
            return 0;
    }
}

bool identically_zero(const FunctionHandle& h) {
    switch (h.kind) {
        case Kind::Y:
        case Kind::O:
        case Kind::X:
        case Kind::SelbergOd:
            return is_half(h.a);
        case Kind::DedekindComposite:
            return (h.dedekind.l[1] > 0 && (is_half(h.dedekind.a[3]) || is_half(h.dedekind.a[4]))) ||
                   (h.dedekind.l[3] > 0 && is_half(h.dedekind.a[5]));
        default:
            return false;
    }
}

Complex FunctionalEquationSpec::factor(Complex s) const {
    Complex v = constant * gamma_power(cos_power, sin_power, s - static_cast<double>(shift));
    if (scale_base != 1.0) v *= std::exp((s - 0.5) * std::log(scale_base));
    return v;
}

FunctionalEquationSpec fe_spec(const FunctionHandle& h) {
    FunctionalEquationSpec spec;
    spec.partner = h;
    const bool odd = h.chi && !h.chi->is_even();
    switch (h.kind) {
        case Kind::Z:
            spec.cos_power = 1;
            spec.partner = make_shifted(Kind::P, h.a);
            break;
        case Kind::P:
            spec.cos_power = 1;
            spec.partner = make_shifted(Kind::Z, h.a);
            break;
        case Kind::Y:
            spec.sin_power = 1;
            spec.partner = make_shifted(Kind::O, h.a);
            break;
        case Kind::O:
            spec.sin_power = 1;
            spec.partner = make_shifted(Kind::Y, h.a);
            break;
        case Kind::Qfun:
        case Kind::RawZeta:
            spec.cos_power = 1;
            break;
        case Kind::X:
            spec.sin_power = 1;
            break;
        case Kind::DH:
            spec.scale_base = 5.0;
            spec.sin_power = 1;
            break;
        case Kind::FChi:
        case Kind::GChi:
            (odd ? spec.sin_power : spec.cos_power) = 1;
            break;
        case Kind::VPlus:
        case Kind::VMinus:
            spec.scale_base = h.chi->modulus();
            (odd ? spec.sin_power : spec.cos_power) = 1;
            spec.constant = h.kind == Kind::VPlus ? 1.0 : -1.0;
            break;
        case Kind::RawL:
            if (!h.chi->is_primitive()) {
                throw UnsupportedError("rawl functional equation is cataloged for primitive characters only");
            }
            spec.scale_base = h.chi->modulus();
            (odd ? spec.sin_power : spec.cos_power) = 1;
            spec.constant = h.lambda;
            spec.partner = make_character_handle(Kind::RawL, h.chi_bar);
            break;
        case Kind::DedekindComposite: {
            const auto& l = h.dedekind.l;
            const int r1 = 2 * l[0] + l[2] + l[4];
            const int r2 = 2 * l[1] + l[3] + l[5];
            spec.scale_base = h.dedekind.n;
            spec.cos_power = r1 + r2;
            spec.sin_power = r2;
            // Z(1-s,a1) P(1-s,a2) = Γcos² P(s,a1) Z(s,a2): the partner swaps slots 1<->2 and 4<->5.
            auto a = h.dedekind.a;
            std::swap(a[0], a[1]);
            std::swap(a[3], a[4]);
            spec.partner = make_dedekind(l, a, h.dedekind.chi_ev, h.dedekind.chi_od, h.dedekind.n);
            break;
        }
        case Kind::QuadraticDedekind:
            spec.scale_base = static_cast<double>(std::abs(h.discriminant));
            if (h.discriminant > 0) {
                spec.cos_power = 2;
            } else {
                spec.cos_power = 1;
                spec.sin_power = 1;
            }
            break;
        case Kind::SelbergEv:
        case Kind::SelbergOd: {
            const double q = static_cast<double>(h.a.den());
            spec.scale_base = q * q;
            (h.kind == Kind::SelbergEv ? spec.cos_power : spec.sin_power) = 2;
            break;
        }
    }
    return spec;
}

double fe_residual(const FunctionHandle& h, Complex s, const EvalDomain& domain) {
    const FunctionalEquationSpec spec = fe_spec(h);
    const Complex lhs = eval(h, 1.0 - s, domain);
    const Complex rhs = spec.factor(s) * eval(spec.partner, s, domain);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

}  // namespace zetalab
