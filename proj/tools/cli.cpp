#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetalab/composed.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/serialize.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab::cli {

namespace {

using nlohmann::json;

constexpr double kEvalTolerance = 1e-10;
constexpr double kSelbergTolerance = 1e-12;
constexpr double kScanThreshold = 1e-6;

// Bad flag or flag combination; the message starts with the flag name.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] void usage(const std::string& flag, const std::string& rule) { throw UsageError(flag + ": " + rule); }

std::string error_name(const ZetaError& e) {
    if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const AccuracyError*>(&e)) return "AccuracyError";
    if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
    if (dynamic_cast<const NonPrimitiveError*>(&e)) return "NonPrimitiveError";
    if (dynamic_cast<const NotFundamentalError*>(&e)) return "NotFundamentalError";
    if (dynamic_cast<const UnsupportedError*>(&e)) return "UnsupportedError";
    if (dynamic_cast<const BoundaryZeroError*>(&e)) return "BoundaryZeroError";
    if (dynamic_cast<const PoleOnBoundaryError*>(&e)) return "PoleOnBoundaryError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    return "ZetaError";
}

// ---- handle flags ----

struct HandleFlags {
    std::string kind;
    std::string json_text;
    std::string a;
    int q = 0;
    int label = 0;
    std::string l;
    std::array<std::string, 6> slots;
    std::string chi_ev;
    std::string chi_od;
    double n = 0.0;
    std::int64_t d = 0;
    std::map<std::string, CLI::Option*> opts;

    bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

void add_handle_flags(CLI::App* app, HandleFlags& f) {
    f.opts["--handle"] =
        app->add_option("--handle", f.kind, "z p y o q x dh fchi gchi vplus vminus zd zsev zsod qd rawl rawzeta");
    f.opts["--handle-json"] = app->add_option("--handle-json", f.json_text, "handle as a JSON object");
    f.opts["--a"] = app->add_option("--a", f.a, "shift r/q (z p y o q x zsev zsod)");
    f.opts["--q"] = app->add_option("--q", f.q, "character modulus");
    f.opts["--chi-label"] = app->add_option("--chi-label", f.label, "character label");
    f.opts["--l"] = app->add_option("--l", f.l, "zd exponents l1,...,l6");
    for (int i = 0; i < 6; ++i) {
        const std::string name = "--a" + std::to_string(i + 1);
        f.opts[name] = app->add_option(name, f.slots[static_cast<std::size_t>(i)], "zd slot shift r/q");
    }
    f.opts["--chi-ev"] = app->add_option("--chi-ev", f.chi_ev, "zd even character q:label");
    f.opts["--chi-od"] = app->add_option("--chi-od", f.chi_od, "zd odd character q:label");
    f.opts["--N"] = app->add_option("--N", f.n, "zd prefactor constant (default from the slots)");
    f.opts["--D"] = app->add_option("--D", f.d, "fundamental discriminant (qd)");
}

std::vector<std::string> allowed_flags(Kind kind) {
    switch (kind) {
        case Kind::Z:
        case Kind::P:
        case Kind::Y:
        case Kind::O:
        case Kind::Qfun:
        case Kind::X:
        case Kind::SelbergEv:
        case Kind::SelbergOd:
            return {"--a"};
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
        case Kind::RawL:
            return {"--q", "--chi-label"};
        case Kind::DedekindComposite:
            return {"--l", "--a1", "--a2", "--a3", "--a4", "--a5", "--a6", "--chi-ev", "--chi-od", "--N"};
        case Kind::QuadraticDedekind:
            return {"--D"};
        case Kind::DH:
        case Kind::RawZeta:
            return {};
    }
    return {};
}

Rational parse_rational(const std::string& text, const std::string& flag) {
    if (text.find_first_of(".eE") != std::string::npos) usage(flag, "decimals are not accepted; write the shift as r/q");
    try {
        return Rational::parse(text);
    } catch (const ZetaError& e) {
        usage(flag, e.what());
    }
}

CharacterPtr parse_character_ref(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) usage(flag, "expected q:label");
    try {
        const int q = std::stoi(text.substr(0, colon));
        const int label = std::stoi(text.substr(colon + 1));
        return character_from_label(q, label);
    } catch (const ZetaError& e) {
        usage(flag, e.what());
    } catch (const std::exception&) {
        usage(flag, "expected q:label with integer q and label");
    }
}

FunctionHandle build_handle(const HandleFlags& f) {
    if (f.given("--handle-json")) {
        if (f.given("--handle")) usage("--handle-json", "give either --handle or --handle-json, not both");
        for (const auto& [name, opt] : f.opts) {
            if (name != "--handle-json" && opt->count() > 0) usage(name, "not combined with --handle-json");
        }
        json j;
        try {
            j = json::parse(f.json_text);
        } catch (const json::exception&) {
            usage("--handle-json", "not valid JSON");
        }
        try {
            return handle_from_json(j);
        } catch (const ZetaError& e) {
            usage("--handle-json", e.what());
        }
    }
    if (!f.given("--handle")) usage("--handle", "a handle is required (--handle or --handle-json)");
    Kind kind{};
    try {
        kind = kind_from_name(f.kind);
    } catch (const ZetaError& e) {
        usage("--handle", e.what());
    }
    const auto allowed = allowed_flags(kind);
    for (const auto& [name, opt] : f.opts) {
        if (name == "--handle" || name == "--handle-json" || opt->count() == 0) continue;
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            usage(name, "not used by --handle " + f.kind);
        }
    }

    switch (kind) {
        case Kind::Z:
        case Kind::P:
        case Kind::Y:
        case Kind::O:
        case Kind::Qfun:
        case Kind::X:
        case Kind::SelbergEv:
        case Kind::SelbergOd: {
            if (!f.given("--a")) usage("--a", "--handle " + f.kind + " needs a shift r/q");
            const Rational a = parse_rational(f.a, "--a");
            try {
                return make_shifted(kind, a);
            } catch (const ZetaError& e) {
                usage("--a", e.what());
            }
        }
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
        case Kind::RawL: {
            if (!f.given("--q")) usage("--q", "--handle " + f.kind + " needs a modulus");
            if (!f.given("--chi-label")) usage("--chi-label", "--handle " + f.kind + " needs a character label");
            if (f.q < 1) usage("--q", "modulus must be a positive integer");
            CharacterPtr chi;
            try {
                chi = character_from_label(f.q, f.label);
            } catch (const ZetaError& e) {
                usage("--chi-label", e.what());
            }
            try {
                return make_character_handle(kind, chi);
            } catch (const ZetaError& e) {
                usage("--chi-label", e.what());
            }
        }
        case Kind::DedekindComposite: {
            if (!f.given("--l")) usage("--l", "--handle zd needs six exponents l1,...,l6");
            std::array<int, 6> l{};
            {
                std::stringstream ss(f.l);
                std::string item;
                std::size_t k = 0;
                while (std::getline(ss, item, ',')) {
                    if (k >= 6) usage("--l", "expected exactly six comma-separated integers");
                    try {
                        std::size_t used = 0;
                        l[k] = std::stoi(item, &used);
                        if (used != item.size()) throw std::invalid_argument(item);
                    } catch (const std::exception&) {
                        usage("--l", "'" + item + "' is not an integer");
                    }
                    ++k;
                }
                if (k != 6) usage("--l", "expected exactly six comma-separated integers");
            }
            DedekindParams defaults;
            std::array<Rational, 6> a = defaults.a;
            for (std::size_t i = 0; i < 6; ++i) {
                const std::string name = "--a" + std::to_string(i + 1);
                if (f.given(name)) a[i] = parse_rational(f.slots[i], name);
            }
            const CharacterPtr ev = f.given("--chi-ev") ? parse_character_ref(f.chi_ev, "--chi-ev") : nullptr;
            const CharacterPtr od = f.given("--chi-od") ? parse_character_ref(f.chi_od, "--chi-od") : nullptr;
            std::optional<double> n;
            if (f.given("--N")) {
                if (!(f.n > 0.0) || !std::isfinite(f.n)) usage("--N", "must be a positive number");
                n = f.n;
            }
            try {
                return make_dedekind(l, a, ev, od, n);
            } catch (const ZetaError& e) {
                usage("--handle zd", e.what());
            }
        }
        case Kind::QuadraticDedekind: {
            if (!f.given("--D")) usage("--D", "--handle qd needs a fundamental discriminant");
            try {
                return make_quadratic_dedekind(f.d);
            } catch (const ZetaError& e) {
                usage("--D", e.what());
            }
        }
        case Kind::DH: return make_dh();
        case Kind::RawZeta: return make_raw_zeta();
    }
    usage("--handle", "unsupported kind");
}

// ---- parsing helpers ----

Complex parse_point(const std::string& text, const std::string& flag) {
    try {
        return parse_complex(text);
    } catch (const ZetaError& e) {
        usage(flag, e.what());
    }
}

Rectangle parse_rect(const std::string& text, const EvalDomain& domain) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage("--rect", "'" + item + "' is not a number");
        }
    }
    if (v.size() != 4) usage("--rect", "expected sigma1,sigma2,t1,t2");
    const Rectangle r{v[0], v[1], v[2], v[3]};
    try {
        r.validate(domain);
    } catch (const ZetaError& e) {
        usage("--rect", e.what());
    }
    return r;
}

// Uniform doubles from the raw 64-bit stream, so the points do not depend on the standard library.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53); }

private:
    std::mt19937_64 gen_;
};

// ---- output ----

enum class Format { Json, Csv };

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string num(double x) { return format_double(x); }

void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

void json_line(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

struct Common {
    std::string output = "json";
    Format format() const { return output == "csv" ? Format::Csv : Format::Json; }
};

void add_output_flag(CLI::App* app, Common& c) {
    app->add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

// ---- commands ----

struct EvalArgs {
    std::vector<std::string> points;
};

int cmd_eval(const FunctionHandle& h, const EvalArgs& args, Format fmt, std::ostream& out) {
    if (args.points.empty()) usage("--s", "at least one point is required");
    std::vector<Complex> pts;
    for (const auto& p : args.points) pts.push_back(parse_point(p, "--s"));
    std::vector<Complex> values;
    for (const Complex& s : pts) {
        try {
            values.push_back(eval(h, s));
        } catch (const PoleError& e) {
            usage("--s", e.what());
        } catch (const AccuracyError& e) {
            usage("--s", e.what());
        }
    }
    if (fmt == Format::Csv) csv_row(out, {"sigma", "t", "re", "im", "abs", "route", "tolerance"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Complex s = pts[i], v = values[i];
        if (fmt == Format::Csv) {
            csv_row(out, {num(s.real()), num(s.imag()), num(v.real()), num(v.imag()), num(std::abs(v)),
                          eval_route(h, s), num(kEvalTolerance)});
        } else {
            json_line(out, {{"command", "eval"},
                            {"handle", handle_to_json(h)},
                            {"s", complex_to_json(s)},
                            {"value", complex_to_json(v)},
                            {"abs", std::abs(v)},
                            {"route", eval_route(h, s)},
                            {"tolerance", kEvalTolerance},
                            {"tolerance_kind", "relative to max(|value|, 1)"}});
        }
    }
    return kExitOk;
}

struct VerifyArgs {
    int points = 100;
    std::uint64_t seed = 0;
    double sigma_min = -3.0;
    double sigma_max = 4.0;
    double t_max = 50.0;
    double tol = 1e-8;
    bool per_point = false;
};

int cmd_verify_fe(const FunctionHandle& h, const VerifyArgs& args, Format fmt, std::ostream& out, std::ostream& err) {
    if (args.points < 1) usage("--points", "must be positive");
    if (!(args.sigma_min < args.sigma_max)) usage("--sigma-min", "must be below --sigma-max");
    if (!(args.t_max >= 0.0)) usage("--t-max", "must be non-negative");
    if (!(args.tol > 0.0)) usage("--tol", "must be positive");
    const EvalDomain domain;
    for (const Complex c : {Complex(args.sigma_min, args.t_max), Complex(args.sigma_max, args.t_max),
                            Complex(1.0 - args.sigma_min, args.t_max), Complex(1.0 - args.sigma_max, args.t_max)}) {
        if (!domain.contains(c)) usage("--sigma-min", "sample points and their reflections must stay in the evaluation window");
    }
    try {
        (void)fe_spec(h);
    } catch (const ZetaError& e) {
        usage("--handle", e.what());
    }

    PointSampler sampler(args.seed);
    std::vector<Complex> pts(static_cast<std::size_t>(args.points));
    for (auto& s : pts) {
        const double sigma = sampler.uniform(args.sigma_min, args.sigma_max);
        const double t = sampler.uniform(-args.t_max, args.t_max);
        s = Complex(sigma, t);
    }
    std::vector<double> res(pts.size(), std::nan(""));
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            res[i] = fe_residual(h, pts[i]);
        } catch (const PoleError&) {
            // measure-zero hit on a pole; reported as skipped
        }
    });

    int skipped = 0;
    std::size_t worst = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::isnan(res[i])) {
            ++skipped;
            continue;
        }
        if (worst == pts.size() || res[i] > res[worst]) worst = i;
    }
    const double max_res = worst < pts.size() ? res[worst] : 0.0;
    const bool pass = max_res <= args.tol;

    if (fmt == Format::Csv) {
        if (args.per_point) {
            csv_row(out, {"index", "sigma", "t", "residual", "tol"});
            for (std::size_t i = 0; i < pts.size(); ++i) {
                csv_row(out, {std::to_string(i), num(pts[i].real()), num(pts[i].imag()),
                              std::isnan(res[i]) ? "" : num(res[i]), num(args.tol)});
            }
        } else {
            csv_row(out, {"points", "skipped", "max_residual", "worst_sigma", "worst_t", "tol", "pass"});
            csv_row(out, {std::to_string(args.points), std::to_string(skipped), num(max_res),
                          worst < pts.size() ? num(pts[worst].real()) : "", worst < pts.size() ? num(pts[worst].imag()) : "",
                          num(args.tol), pass ? "true" : "false"});
        }
    } else {
        if (args.per_point) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                json_line(out, {{"command", "verify-fe"},
                                {"index", i},
                                {"s", complex_to_json(pts[i])},
                                {"residual", std::isnan(res[i]) ? json(nullptr) : json(res[i])},
                                {"tol", args.tol}});
            }
        }
        json summary = {{"command", "verify-fe"},
                        {"summary", true},
                        {"handle", handle_to_json(h)},
                        {"points", args.points},
                        {"seed", args.seed},
                        {"skipped", skipped},
                        {"max_residual", max_res},
                        {"tol", args.tol},
                        {"pass", pass}};
        if (worst < pts.size()) summary["worst_s"] = complex_to_json(pts[worst]);
        json_line(out, summary);
    }
    if (!pass) {
        err << "verify-fe: worst residual " << num(max_res) << " at s = " << num(pts[worst].real()) << (pts[worst].imag() < 0 ? "" : "+")
            << num(pts[worst].imag()) << "i exceeds tol " << num(args.tol) << '\n';
        return kExitTolerance;
    }
    return kExitOk;
}

struct RelationsArgs {
    int q = 0;
    std::vector<std::string> points;
    double tol = 1e-10;
};

int cmd_relations(const RelationsArgs& args, Format fmt, std::ostream& out, std::ostream& err) {
    if (args.q < 1) usage("--q", "modulus must be a positive integer");
    if (!(args.tol > 0.0)) usage("--tol", "must be positive");
    std::vector<Complex> pts;
    if (args.points.empty()) {
        pts = {Complex(2.0, 3.0), Complex(0.6, 5.0)};
    } else {
        for (const auto& p : args.points) pts.push_back(parse_point(p, "--s"));
    }
    const EvalDomain domain;
    for (const Complex& s : pts) {
        if (!domain.contains(s)) usage("--s", "point lies outside the evaluation window");
    }

    if (fmt == Format::Csv) {
        csv_row(out, {"q", "sigma", "t", "relation", "applicable", "checks", "max_mismatch", "max_relative", "tol", "note"});
    }
    double worst = 0.0;
    std::string worst_desc;
    for (const Complex& s : pts) {
        const RelationReport report = verify_linear_relations(args.q, s);
        for (const auto& r : report.relations) {
            if (r.applicable && (r.max_relative > worst || std::isnan(r.max_relative))) {
                worst = std::isnan(r.max_relative) ? INFINITY : r.max_relative;
                worst_desc = r.name + " at s = " + num(s.real()) + (s.imag() < 0 ? "" : "+") + num(s.imag()) + "i";
            }
            if (fmt == Format::Csv) {
                csv_row(out, {std::to_string(args.q), num(s.real()), num(s.imag()), r.name, r.applicable ? "true" : "false",
                              std::to_string(r.checks), num(r.max_mismatch), num(r.max_relative), num(args.tol), r.note});
            } else {
                json_line(out, {{"command", "relations"},
                                {"q", args.q},
                                {"s", complex_to_json(s)},
                                {"relation", r.name},
                                {"applicable", r.applicable},
                                {"checks", r.checks},
                                {"max_mismatch", r.max_mismatch},
                                {"max_relative", r.max_relative},
                                {"tol", args.tol},
                                {"note", r.note}});
            }
        }
    }
    if (worst > args.tol) {
        err << "relations: worst relative mismatch " << num(worst) << " (" << worst_desc << ") exceeds tol "
            << num(args.tol) << '\n';
        return kExitTolerance;
    }
    return kExitOk;
}

struct ZeroArgs {
    std::string rect;
    int max_zeros = 1000;
    double integrality_tol = 0.1;
    double newton_tol = 1e-9;
};

ZeroOptions zero_options(const ZeroArgs& args) {
    if (!(args.integrality_tol > 0.0 && args.integrality_tol < 0.5)) usage("--integrality-tol", "must lie in (0, 0.5)");
    if (!(args.newton_tol > 0.0)) usage("--newton-tol", "must be positive");
    ZeroOptions opts;
    opts.integrality_tol = args.integrality_tol;
    opts.newton_tol = args.newton_tol;
    return opts;
}

void require_countable_handle(const FunctionHandle& h) {
    if (identically_zero(h)) usage("--a", h.describe() + " vanishes identically; its zeros are not isolated");
}

int cmd_zeros_count(const FunctionHandle& h, const ZeroArgs& args, Format fmt, std::ostream& out) {
    const ZeroOptions opts = zero_options(args);
    if (args.rect.empty()) usage("--rect", "a rectangle sigma1,sigma2,t1,t2 is required");
    const Rectangle r = parse_rect(args.rect, opts.domain);
    require_countable_handle(h);
    const CountResult c = count_zeros(h, r, opts);
    if (fmt == Format::Csv) {
        csv_row(out, {"count", "winding_integral", "boundary_margin", "poles_inside", "perturbations", "sigma1", "sigma2",
                      "t1", "t2", "integrality_tol", "boundary_tol"});
        csv_row(out, {std::to_string(c.count), num(c.winding_integral), num(c.boundary_margin),
                      std::to_string(c.poles_inside), std::to_string(c.perturbations), num(c.rect.sigma1),
                      num(c.rect.sigma2), num(c.rect.t1), num(c.rect.t2), num(opts.integrality_tol),
                      num(opts.boundary_tol)});
    } else {
        json j = count_to_json(c);
        j["command"] = "zeros-count";
        j["handle"] = handle_to_json(h);
        j["integrality_tol"] = opts.integrality_tol;
        j["boundary_tol"] = opts.boundary_tol;
        json_line(out, j);
    }
    return kExitOk;
}

int cmd_zeros_locate(const FunctionHandle& h, const ZeroArgs& args, Format fmt, std::ostream& out, std::ostream& err) {
    const ZeroOptions opts = zero_options(args);
    if (args.rect.empty()) usage("--rect", "a rectangle sigma1,sigma2,t1,t2 is required");
    if (args.max_zeros < 1) usage("--max-zeros", "must be positive");
    const Rectangle r = parse_rect(args.rect, opts.domain);
    require_countable_handle(h);
    const LocateResult res = locate_zeros(h, r, args.max_zeros, opts);
    if (fmt == Format::Csv) {
        csv_row(out, {"sigma", "t", "residual", "multiplicity", "newton_tol"});
        for (const auto& z : res.zeros) {
            csv_row(out, {num(z.location.real()), num(z.location.imag()), num(z.residual), std::to_string(z.multiplicity),
                          num(opts.newton_tol)});
        }
        for (const auto& f : res.failures) err << "zeros-locate: " << f << '\n';
    } else {
        for (const auto& z : res.zeros) {
            json j = zero_to_json(z);
            j["command"] = "zeros-locate";
            j["newton_tol"] = opts.newton_tol;
            json_line(out, j);
        }
        int located = 0;
        for (const auto& z : res.zeros) located += z.multiplicity;
        json_line(out, {{"command", "zeros-locate"},
                        {"summary", true},
                        {"handle", handle_to_json(h)},
                        {"count", res.count.count},
                        {"located", located},
                        {"failures", res.failures},
                        {"integrality_tol", opts.integrality_tol},
                        {"newton_tol", opts.newton_tol}});
    }
    return kExitOk;
}

struct ScanArgs {
    double lo = 1.0;
    double hi = 3.0;
    double step = 0.01;
};

int cmd_scan_real(const FunctionHandle& h, const ScanArgs& args, Format fmt, std::ostream& out) {
    const EvalDomain domain;
    if (!(args.lo < args.hi)) usage("--sigma-lo", "must be below --sigma-hi");
    if (!(args.step > 0.0)) usage("--step", "must be positive");
    if (!domain.contains(args.lo)) usage("--sigma-lo", "outside the evaluation window");
    if (!domain.contains(args.hi)) usage("--sigma-hi", "outside the evaluation window");
    if (pole_order_at_one(h) > 0 && args.lo <= 1.0 && args.hi >= 1.0) {
        usage("--sigma-lo", "the interval contains the pole at s = 1 of " + h.describe());
    }
    require_countable_handle(h);
    const RealScanReport rep = scan_real_axis(h, args.lo, args.hi, args.step);
    if (fmt == Format::Csv) {
        csv_row(out, {"sigma", "abs_value", "threshold"});
        for (std::size_t i = 0; i < rep.sigma.size(); ++i) {
            csv_row(out, {num(rep.sigma[i]), num(rep.abs_value[i]), num(kScanThreshold)});
        }
        return kExitOk;
    }
    json minima = json::array();
    for (const auto& m : rep.minima) {
        minima.push_back({{"sigma", m.sigma}, {"abs_value", m.abs_value}, {"refined_to_zero", m.refined_to_zero}});
    }
    json zeros = json::array();
    for (const auto& z : rep.real_zeros) zeros.push_back(zero_to_json(z));
    json_line(out, {{"command", "scan-real"},
                    {"handle", handle_to_json(h)},
                    {"sigma_lo", args.lo},
                    {"sigma_hi", args.hi},
                    {"step", args.step},
                    {"min_abs", rep.min_abs},
                    {"certified_nonvanishing", rep.certified_nonvanishing},
                    {"threshold", kScanThreshold},
                    {"minima", minima},
                    {"real_zeros", zeros}});
    return kExitOk;
}

struct DensityArgs {
    double sigma1 = 0.55;
    double sigma2 = 0.95;
    std::vector<double> t_values;
    bool locate = false;
    double integrality_tol = 0.1;
};

int cmd_density(const FunctionHandle& h, const DensityArgs& args, Format fmt, std::ostream& out) {
    if (!(args.sigma1 > 0.5)) usage("--sigma1", "must exceed 1/2");
    if (!(args.sigma1 < args.sigma2)) usage("--sigma2", "must exceed --sigma1");
    if (args.t_values.empty()) usage("--T", "at least one height is required");
    for (std::size_t i = 0; i < args.t_values.size(); ++i) {
        if (!(args.t_values[i] > 0.0) || (i > 0 && !(args.t_values[i] > args.t_values[i - 1]))) {
            usage("--T", "heights must be positive and increasing");
        }
    }
    if (fmt == Format::Csv && args.locate) usage("--locate", "zero lists in CSV come from zeros-locate");
    if (!(args.integrality_tol > 0.0 && args.integrality_tol < 0.5)) usage("--integrality-tol", "must lie in (0, 0.5)");
    ZeroOptions opts;
    opts.integrality_tol = args.integrality_tol;
    const Rectangle outer{args.sigma1, args.sigma2, -args.t_values.back(), args.t_values.back()};
    try {
        outer.validate(opts.domain);
    } catch (const ZetaError& e) {
        usage("--T", e.what());
    }
    require_countable_handle(h);
    const DensityTable table = density_experiment(h, args.sigma1, args.sigma2, args.t_values, args.locate, opts);
    if (fmt == Format::Csv) {
        csv_row(out, {"T", "count", "ratio", "winding_integral", "integrality_tol"});
        for (const auto& r : table.rows) {
            csv_row(out, {num(r.t), std::to_string(r.count), num(r.ratio), num(r.winding_integral),
                          num(opts.integrality_tol)});
        }
        return kExitOk;
    }
    for (const auto& r : table.rows) {
        json_line(out, {{"command", "density"},
                        {"sigma1", args.sigma1},
                        {"sigma2", args.sigma2},
                        {"T", r.t},
                        {"count", r.count},
                        {"ratio", r.ratio},
                        {"winding_integral", r.winding_integral},
                        {"integrality_tol", opts.integrality_tol}});
    }
    if (args.locate) {
        for (const auto& z : table.zeros) {
            json j = zero_to_json(z);
            j["command"] = "density";
            j["newton_tol"] = opts.newton_tol;
            json_line(out, j);
        }
        json_line(out, {{"command", "density"}, {"summary", true}, {"located", table.zeros.size()}, {"failures", table.failures}});
    }
    return kExitOk;
}

int cmd_selberg(const FunctionHandle& h, Format fmt, std::ostream& out) {
    SelbergDescriptor d;
    try {
        d = selberg_descriptor(h);
    } catch (const UnsupportedError& e) {
        usage("--handle", e.what());
    } catch (const DomainError& e) {
        usage("--handle", e.what());
    }
    if (fmt == Format::Csv) {
        csv_row(out, {"degree", "conductor", "q_factor", "root_re", "root_im", "tolerance"});
        csv_row(out, {num(d.degree), num(d.conductor), num(d.gamma.q_factor), num(d.root_number.real()),
                      num(d.root_number.imag()), num(kSelbergTolerance)});
        return kExitOk;
    }
    json factors = json::array();
    for (const auto& [lambda, mu] : d.gamma.factors) factors.push_back({{"lambda", lambda}, {"mu", complex_to_json(mu)}});
    json_line(out, {{"command", "selberg"},
                    {"handle", handle_to_json(h)},
                    {"degree", d.degree},
                    {"conductor", d.conductor},
                    {"q_factor", d.gamma.q_factor},
                    {"gamma_factors", factors},
                    {"root_number", complex_to_json(d.root_number)},
                    {"tolerance", kSelbergTolerance}});
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zeta and L-function numerics: evaluation, functional equations, zeros"};
    app.name("zetalab");
    app.require_subcommand(1);

    Common common;
    HandleFlags hf_eval, hf_fe, hf_count, hf_locate, hf_scan, hf_density, hf_selberg;
    EvalArgs eval_args;
    VerifyArgs verify_args;
    RelationsArgs relations_args;
    ZeroArgs count_args, locate_args;
    ScanArgs scan_args;
    DensityArgs density_args;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a handle at one or more points");
    add_handle_flags(eval_cmd, hf_eval);
    eval_cmd->add_option("--s", eval_args.points, "point sigma+ti (repeatable; write --s=-2+0i for a leading minus)");

    auto* fe_cmd = app.add_subcommand("verify-fe", "functional-equation residuals at seeded random points");
    add_handle_flags(fe_cmd, hf_fe);
    fe_cmd->add_option("--points", verify_args.points, "number of points");
    fe_cmd->add_option("--seed", verify_args.seed, "random seed");
    fe_cmd->add_option("--sigma-min", verify_args.sigma_min);
    fe_cmd->add_option("--sigma-max", verify_args.sigma_max);
    fe_cmd->add_option("--t-max", verify_args.t_max);
    fe_cmd->add_option("--tol", verify_args.tol, "pass threshold for the max residual");
    fe_cmd->add_flag("--per-point", verify_args.per_point, "emit one record per point");

    auto* rel_cmd = app.add_subcommand("relations", "linear relations between the shifted functions and L mod q");
    rel_cmd->add_option("--q", relations_args.q, "modulus")->required();
    rel_cmd->add_option("--s", relations_args.points, "point (repeatable; default 2+3i and 0.6+5i)");
    rel_cmd->add_option("--tol", relations_args.tol, "pass threshold for the relative mismatch");

    auto add_zero_flags = [](CLI::App* cmd, ZeroArgs& z) {
        cmd->add_option("--rect", z.rect, "sigma1,sigma2,t1,t2");
        cmd->add_option("--integrality-tol", z.integrality_tol);
        cmd->add_option("--newton-tol", z.newton_tol);
    };
    auto* count_cmd = app.add_subcommand("zeros-count", "argument-principle zero count in a rectangle");
    add_handle_flags(count_cmd, hf_count);
    add_zero_flags(count_cmd, count_args);

    auto* locate_cmd = app.add_subcommand("zeros-locate", "locate and refine the zeros in a rectangle");
    add_handle_flags(locate_cmd, hf_locate);
    add_zero_flags(locate_cmd, locate_args);
    locate_cmd->add_option("--max-zeros", locate_args.max_zeros);

    auto* scan_cmd = app.add_subcommand("scan-real", "scan |F| on a real interval for zeros");
    add_handle_flags(scan_cmd, hf_scan);
    scan_cmd->add_option("--sigma-lo", scan_args.lo);
    scan_cmd->add_option("--sigma-hi", scan_args.hi);
    scan_cmd->add_option("--step", scan_args.step);

    auto* density_cmd = app.add_subcommand("density", "zero counts on sigma1 < sigma < sigma2, |t| <= T");
    add_handle_flags(density_cmd, hf_density);
    density_cmd->add_option("--sigma1", density_args.sigma1);
    density_cmd->add_option("--sigma2", density_args.sigma2);
    density_cmd->add_option("--T", density_args.t_values, "heights, comma separated")->delimiter(',');
    density_cmd->add_flag("--locate", density_args.locate, "also list the zeros of the largest T");
    density_cmd->add_option("--integrality-tol", density_args.integrality_tol);

    auto* selberg_cmd = app.add_subcommand("selberg", "degree, conductor and gamma factors");
    add_handle_flags(selberg_cmd, hf_selberg);

    for (auto* cmd : {eval_cmd, fe_cmd, rel_cmd, count_cmd, locate_cmd, scan_cmd, density_cmd, selberg_cmd}) {
        add_output_flag(cmd, common);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const Format fmt = common.format();
    try {
        if (eval_cmd->parsed()) return cmd_eval(build_handle(hf_eval), eval_args, fmt, out);
        if (fe_cmd->parsed()) return cmd_verify_fe(build_handle(hf_fe), verify_args, fmt, out, err);
        if (rel_cmd->parsed()) return cmd_relations(relations_args, fmt, out, err);
        if (count_cmd->parsed()) return cmd_zeros_count(build_handle(hf_count), count_args, fmt, out);
        if (locate_cmd->parsed()) return cmd_zeros_locate(build_handle(hf_locate), locate_args, fmt, out, err);
        if (scan_cmd->parsed()) return cmd_scan_real(build_handle(hf_scan), scan_args, fmt, out);
        if (density_cmd->parsed()) return cmd_density(build_handle(hf_density), density_args, fmt, out);
        if (selberg_cmd->parsed()) return cmd_selberg(build_handle(hf_selberg), fmt, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ZetaError& e) {
        err << "error: " << error_name(e) << ": " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace zetalab::cli
