#include "zetalab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {

namespace {

constexpr double kPoleMargin = 1e-6;
constexpr double kSegmentLength = 4.0;

// Evaluation window for contours: the certified window plus room for the outward perturbations.
EvalDomain padded(const EvalDomain& d) { return {d.sigma_min - 0.01, d.sigma_max + 0.01, d.t_max + 0.01}; }

int handle_modulus(const FunctionHandle& h) {
    switch (h.kind) {
        case Kind::DH: return 5;
        case Kind::QuadraticDedekind: return static_cast<int>(std::abs(h.discriminant));
        case Kind::FChi:
        case Kind::GChi:
        case Kind::VPlus:
        case Kind::VMinus:
        case Kind::RawL:
            return h.chi->modulus();
        case Kind::RawZeta: return 1;
        case Kind::DedekindComposite: {
            std::int64_t q = 1;
            for (const auto& a : h.dedekind.a) q = std::max(q, a.den());
            if (h.dedekind.chi_ev) q = std::max<std::int64_t>(q, h.dedekind.chi_ev->modulus());
            if (h.dedekind.chi_od) q = std::max<std::int64_t>(q, h.dedekind.chi_od->modulus());
            return static_cast<int>(q);
        }
        default:
            return static_cast<int>(h.a.den());
    }
}

double initial_step(const FunctionHandle& h, const ZeroOptions& opts) {
    if (opts.initial_step > 0.0) return opts.initial_step;
    return std::min(0.05, kTwoPi / (10.0 * std::log(handle_modulus(h) + 2.0)));
}

struct Pole {
    Complex location;
    int order;
};

std::vector<Pole> poles_near(const FunctionHandle& h, const Rectangle& r) {
    std::vector<Pole> out;
    if (const int order = pole_order_at_one(h); order > 0) out.push_back({1.0, order});
    if (h.kind == Kind::GChi && h.chi->modulus() > 1) {
        // q^{2s-1} = -1  <=>  s = 1/2 + iπ(2k+1) / (2 ln q)
        const double spacing = kPi / std::log(static_cast<double>(h.chi->modulus()));
        const long k_lo = static_cast<long>(std::floor((r.t1 / spacing - 1.0) / 2.0)) - 1;
        const long k_hi = static_cast<long>(std::ceil((r.t2 / spacing - 1.0) / 2.0)) + 1;
        for (long k = k_lo; k <= k_hi; ++k) out.push_back({Complex(0.5, spacing * (2 * k + 1) / 2.0), 1});
    }
    return out;
}

struct PhaseTrack {
    double phase = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    long samples = 0;
    bool boundary_zero = false;
};

double wrapped(double d) {
    while (d > kPi) d -= kTwoPi;
    while (d <= -kPi) d += kTwoPi;
    return d;
}

// Phase change of F along the segment a -> b, with steps shrunk until each half-step is below π/4.
PhaseTrack track_segment(const FunctionHandle& h, Complex a, Complex b, double h0, const ZeroOptions& opts,
                         const EvalDomain& domain) {
    PhaseTrack out;
    const double len = std::abs(b - a);
    const Complex dir = (b - a) / len;
    Complex fz = eval(h, a, domain);
    ++out.samples;
    out.min_abs = std::abs(fz);
    if (out.min_abs < opts.boundary_tol) {
        out.boundary_zero = true;
        return out;
    }
    double u = 0.0;
    double step = std::min(h0, len);
    const double min_step = 1e-12 * std::max(1.0, std::abs(a));
    while (u < len) {
        const double du = std::min(step, len - u);
        const Complex z1 = (u + du >= len) ? b : a + dir * (u + du);
        const Complex f1 = eval(h, z1, domain);
        const Complex fm = eval(h, a + dir * (u + 0.5 * du), domain);
        out.samples += 2;
        const double m = std::abs(f1);
        const double mm = std::abs(fm);
        if (m < opts.boundary_tol || mm < opts.boundary_tol) {
            out.min_abs = std::min({out.min_abs, m, mm});
            out.boundary_zero = true;
            return out;
        }
        // Both halves must turn by less than π/4 and keep |F| within a factor 2: a pair of
        // zeros near the edge can make the endpoints agree while F winds once in between.
        const double d1 = wrapped(std::arg(fm) - std::arg(fz));
        const double d2 = wrapped(std::arg(f1) - std::arg(fm));
        const double r1 = mm / std::abs(fz);
        const double r2 = m / mm;
        const bool smooth = std::abs(d1) < kPi / 4.0 && std::abs(d2) < kPi / 4.0 && r1 > 0.5 && r1 < 2.0 &&
                            r2 > 0.5 && r2 < 2.0;
        if (!smooth) {
            step = du / 2.0;
            if (step < min_step) {
                out.boundary_zero = true;
                return out;
            }
            continue;
        }
        out.phase += d1 + d2;
        out.min_abs = std::min({out.min_abs, m, mm});
        u += du;
        fz = f1;
        step = std::min(h0, du * 1.5);
    }
    return out;
}

struct ContourResult {
    double phase = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    long samples = 0;
    bool boundary_zero = false;
};

ContourResult track_polygon(const FunctionHandle& h, const std::vector<Complex>& vertices, double h0,
                            const ZeroOptions& opts, const EvalDomain& domain) {
    std::vector<std::pair<Complex, Complex>> pieces;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Complex a = vertices[i];
        const Complex b = vertices[(i + 1) % vertices.size()];
        const int parts = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / kSegmentLength)));
        for (int k = 0; k < parts; ++k) {
            const Complex p0 = a + (b - a) * (static_cast<double>(k) / parts);
            const Complex p1 = k + 1 == parts ? b : a + (b - a) * (static_cast<double>(k + 1) / parts);
            pieces.emplace_back(p0, p1);
        }
    }
    std::vector<PhaseTrack> tracks(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t i) {
        tracks[i] = track_segment(h, pieces[i].first, pieces[i].second, h0, opts, domain);
    });
    ContourResult out;
    for (const auto& t : tracks) {
        out.phase += t.phase;
        out.min_abs = std::min(out.min_abs, t.min_abs);
        out.samples += t.samples;
        out.boundary_zero = out.boundary_zero || t.boundary_zero;
    }
    return out;
}

std::vector<Complex> corners(const Rectangle& r) {
    return {{r.sigma1, r.t1}, {r.sigma2, r.t1}, {r.sigma2, r.t2}, {r.sigma1, r.t2}};
}

// One winding count on exactly this rectangle; nullopt when a zero sits on the contour.
std::optional<CountResult> count_once(const FunctionHandle& h, const Rectangle& r, const ZeroOptions& opts) {
    int poles = 0;
    for (const auto& p : poles_near(h, r)) {
        const bool on_edge = p.location.real() >= r.sigma1 - kPoleMargin && p.location.real() <= r.sigma2 + kPoleMargin &&
                             p.location.imag() >= r.t1 - kPoleMargin && p.location.imag() <= r.t2 + kPoleMargin &&
                             r.boundary_distance(p.location) < kPoleMargin;
        if (on_edge) {
            throw PoleOnBoundaryError("pole of " + h.describe() + " at " + std::to_string(p.location.real()) + "+" +
                                      std::to_string(p.location.imag()) + "i lies on the contour");
        }
        if (r.contains(p.location)) poles += p.order;
    }
    const ContourResult c = track_polygon(h, corners(r), initial_step(h, opts), opts, padded(opts.domain));
    if (c.boundary_zero) return std::nullopt;
    CountResult out;
    out.winding_integral = c.phase / kTwoPi;
    const long n = std::lround(out.winding_integral);
    if (std::abs(out.winding_integral - static_cast<double>(n)) >= opts.integrality_tol) {
        throw ConvergenceError("winding integral " + std::to_string(out.winding_integral) + " is not near an integer");
    }
    out.count = static_cast<int>(n) + poles;
    if (out.count < 0) throw ConvergenceError("negative zero count; pole bookkeeping is inconsistent");
    out.boundary_margin = c.min_abs;
    out.poles_inside = poles;
    out.rect = r;
    out.samples = c.samples;
    return out;
}

void require_countable(const FunctionHandle& h) {
    if (identically_zero(h)) throw DomainError(h.describe() + " vanishes identically; its zeros are not isolated");
}

bool sort_by_t_sigma(const ZeroRecord& a, const ZeroRecord& b) {
    if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
    return a.location.real() < b.location.real();
}

class Locator {
public:
    Locator(const FunctionHandle& h, int max_zeros, const ZeroOptions& opts)
        : h_(h), max_zeros_(max_zeros), opts_(opts) {}

    void run(const Rectangle& cell, int count, int depth) {
        if (count <= 0 || found_ >= max_zeros_) return;
        const double width = cell.sigma2 - cell.sigma1;
        const double height = cell.t2 - cell.t1;
        const double longest = std::max(width, height);
        if ((count == 1 && longest <= opts_.cell_size) || longest < 1e-6 || depth > 80) {
            refine_in(cell, count);
            return;
        }
        if (count > 1 && longest <= opts_.cell_size && accept_multiple(cell, count)) return;
        // Off-centre fractions keep split lines away from symmetry lines such as σ = 1/2.
        static constexpr double kFractions[] = {0.5137, 0.4621, 0.5589, 0.4173, 0.6043, 0.3711, 0.6502};
        for (double frac : kFractions) {
            Rectangle a = cell, b = cell;
            if (width >= height) {
                a.sigma2 = b.sigma1 = cell.sigma1 + frac * width;
            } else {
                a.t2 = b.t1 = cell.t1 + frac * height;
            }
            std::optional<CountResult> ca, cb;
            try {
                ca = count_once(h_, a, opts_);
                if (ca) cb = count_once(h_, b, opts_);
            } catch (const PoleOnBoundaryError&) {
                continue;
            }
            // A disagreement with the parent means a contour step skipped a pair of nearby zeros.
            if (!ca || !cb || ca->count + cb->count != count) continue;
            run(a, ca->count, depth + 1);
            run(b, cb->count, depth + 1);
            return;
        }
        failures_.push_back("could not split cell " + describe(cell) + " away from zeros");
    }

    std::vector<ZeroRecord> zeros() && { return std::move(zeros_); }
    std::vector<std::string> failures() && { return std::move(failures_); }

private:
    static std::string describe(const Rectangle& r) {
        return "(" + std::to_string(r.sigma1) + "," + std::to_string(r.sigma2) + ")x(" + std::to_string(r.t1) + "," +
               std::to_string(r.t2) + ")";
    }

    // A multiple zero cannot be split apart. Accept it when one refined point carries the whole
    // count on a circle small enough to separate zeros that are merely close.
    bool accept_multiple(const Rectangle& cell, int count) {
        constexpr double kRadius = 1e-4;
        const Complex center(0.5 * (cell.sigma1 + cell.sigma2), 0.5 * (cell.t1 + cell.t2));
        auto rec = refine_zero(h_, center, opts_);
        if (!rec || cell.boundary_distance(rec->location) <= kRadius) return false;
        int m = 0;
        try {
            m = multiplicity(h_, rec->location, kRadius, opts_);
        } catch (const ZetaError&) {
            return false;
        }
        if (m != count) return false;
        rec->rect = cell;
        rec->multiplicity = m;
        zeros_.push_back(*rec);
        found_ += m;
        return true;
    }

    void refine_in(const Rectangle& cell, int count) {
        const Complex center(0.5 * (cell.sigma1 + cell.sigma2), 0.5 * (cell.t1 + cell.t2));
        const Complex half(0.25 * (cell.sigma2 - cell.sigma1), 0.25 * (cell.t2 - cell.t1));
        const Complex starts[] = {center,
                                  center + half,
                                  center - half,
                                  center + Complex(half.real(), -half.imag()),
                                  center + Complex(-half.real(), half.imag())};
        for (const Complex& start : starts) {
            auto rec = refine_zero(h_, start, opts_);
            if (!rec || !cell.contains(rec->location)) continue;
            const bool seen = std::any_of(zeros_.begin(), zeros_.end(), [&](const ZeroRecord& z) {
                return std::abs(z.location - rec->location) < 1e-10 * std::max(1.0, std::abs(z.location));
            });
            if (seen) continue;
            rec->rect = cell;
            rec->multiplicity = count == 1 ? 1 : multiplicity(h_, rec->location, 1e-3, opts_);
            if (rec->multiplicity < 1) rec->multiplicity = count;
            zeros_.push_back(*rec);
            found_ += rec->multiplicity;
            return;
        }
        failures_.push_back("ConvergenceError: Newton refinement failed in cell " + describe(cell) + " holding " +
                            std::to_string(count) + " zero(s)");
    }

    const FunctionHandle& h_;
    int max_zeros_;
    ZeroOptions opts_;
    int found_ = 0;
    std::vector<ZeroRecord> zeros_;
    std::vector<std::string> failures_;
};

}  // namespace

bool Rectangle::contains(Complex s) const {
    return s.real() > sigma1 && s.real() < sigma2 && s.imag() > t1 && s.imag() < t2;
}

double Rectangle::boundary_distance(Complex s) const {
    if (!contains(s)) return 0.0;
    return std::min({s.real() - sigma1, sigma2 - s.real(), s.imag() - t1, t2 - s.imag()});
}

Rectangle Rectangle::expanded(double margin) const {
    return {sigma1 - margin, sigma2 + margin, t1 - margin, t2 + margin};
}

void Rectangle::validate(const EvalDomain& domain) const {
    if (!(sigma1 < sigma2) || !(t1 < t2)) throw DomainError("rectangle needs sigma1 < sigma2 and t1 < t2");
    for (const Complex& c : corners(*this)) {
        if (!domain.contains(c)) throw DomainError("rectangle leaves the evaluation window");
    }
}

CountResult count_zeros(const FunctionHandle& h, const Rectangle& rect, const ZeroOptions& opts) {
    require_countable(h);
    rect.validate(opts.domain);
    for (int attempt = 0; attempt <= opts.max_perturbations; ++attempt) {
        const Rectangle r = rect.expanded(attempt * opts.perturbation);
        if (auto result = count_once(h, r, opts)) {
            result->perturbations = attempt;
            return *result;
        }
    }
    throw BoundaryZeroError("a zero of " + h.describe() + " stays within " + std::to_string(opts.boundary_tol) +
                            " of the contour after " + std::to_string(opts.max_perturbations) + " perturbations");
}

std::optional<ZeroRecord> refine_zero(const FunctionHandle& h, Complex start, const ZeroOptions& opts) {
    const EvalDomain domain = padded(opts.domain);
    auto f = [&](Complex s) -> std::optional<Complex> {
        try {
            return eval(h, s, domain);
        } catch (const PoleError&) {
            return std::nullopt;
        } catch (const AccuracyError&) {
            return std::nullopt;
        }
    };
    Complex s = start;
    auto fs = f(s);
    if (!fs) return std::nullopt;
    double best = std::abs(*fs);
    int polish = 0;
    for (int it = 0; it < opts.max_newton && best > 0.0; ++it) {
        const double step = 1e-6 * std::max(1.0, std::abs(s));
        const auto fp = f(s + step), fm = f(s - step);
        if (!fp || !fm) return std::nullopt;
        const Complex deriv = (*fp - *fm) / (2.0 * step);
        if (deriv == Complex(0.0)) break;
        const Complex delta = *fs / deriv;
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 30; ++k) {
            const Complex trial = s - lambda * delta;
            const auto ft = f(trial);
            if (ft && std::abs(*ft) < best) {
                s = trial;
                fs = ft;
                best = std::abs(*ft);
                improved = true;
                break;
            }
            lambda /= 2.0;
        }
        if (!improved) break;
        // Keep polishing for a few steps past the tolerance.
        if (best < opts.newton_tol && ++polish > 3) break;
        if (std::abs(lambda * delta) < 1e-15 * std::max(1.0, std::abs(s))) break;
    }
    if (!(best < opts.newton_tol)) return std::nullopt;
    ZeroRecord rec;
    rec.location = s;
    rec.residual = best;
    rec.method = ZeroMethod::Refinement;
    return rec;
}

int multiplicity(const FunctionHandle& h, Complex center, double radius, const ZeroOptions& opts) {
    constexpr int kSides = 32;
    std::vector<Complex> ring;
    for (int k = 0; k < kSides; ++k) ring.push_back(center + std::polar(radius, kTwoPi * k / kSides));
    const ContourResult c = track_polygon(h, ring, radius, opts, padded(opts.domain));
    if (c.boundary_zero) return 0;
    return static_cast<int>(std::lround(c.phase / kTwoPi));
}

LocateResult locate_zeros(const FunctionHandle& h, const Rectangle& rect, int max_zeros, const ZeroOptions& opts) {
    LocateResult out;
    out.count = count_zeros(h, rect, opts);
    // Sub-cells keep their edges: a zero on a split line moves the split instead.
    ZeroOptions inner = opts;
    inner.max_perturbations = 0;
    Locator locator(h, max_zeros, inner);
    locator.run(out.count.rect, out.count.count, 0);
    out.zeros = std::move(locator).zeros();
    out.failures = std::move(locator).failures();
    std::sort(out.zeros.begin(), out.zeros.end(), sort_by_t_sigma);
    return out;
}

std::vector<Complex> factor_line_zeros(const DirichletCharacter& chi, double t_max) {
    if (!chi.is_primitive()) {
        throw NonPrimitiveError("factor_line_zeros needs a primitive character");
    }
    std::vector<Complex> out;
    const int q = chi.modulus();
    if (q == 1 || t_max <= 0.0) return out;
    const Complex i_kappa = chi.kappa() == 0 ? Complex(1.0) : -kI;
    const double phase = std::arg(-i_kappa * gauss_sum(chi).value / std::sqrt(static_cast<double>(q)));
    const double lq = std::log(static_cast<double>(q));
    for (long k = static_cast<long>(std::floor(-phase / kTwoPi)); ; ++k) {
        const double t = (phase + kTwoPi * static_cast<double>(k)) / lq;
        if (t > t_max) break;
        if (t > 0.0) out.emplace_back(0.5, t);
    }
    return out;
}

RealScanReport scan_real_axis(const FunctionHandle& h, double sigma_lo, double sigma_hi, double step,
                              const ZeroOptions& opts) {
    if (!(sigma_lo < sigma_hi) || !(step > 0.0)) throw DomainError("scan needs sigma_lo < sigma_hi and step > 0");
    require_countable(h);
    RealScanReport report;
    const long n = static_cast<long>(std::floor((sigma_hi - sigma_lo) / step + 1e-9)) + 1;
    report.sigma.resize(static_cast<std::size_t>(n));
    report.abs_value.resize(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double sigma = i + 1 == static_cast<std::size_t>(n) ? std::min(sigma_hi, sigma_lo + step * i)
                                                                  : sigma_lo + step * static_cast<double>(i);
        report.sigma[i] = sigma;
        report.abs_value[i] = std::abs(eval(h, sigma, opts.domain));
    });
    report.min_abs = *std::min_element(report.abs_value.begin(), report.abs_value.end());

    const auto& v = report.abs_value;
    for (long i = 0; i < n; ++i) {
        const bool left = i == 0 || v[i] <= v[i - 1];
        const bool right = i + 1 == n || v[i] <= v[i + 1];
        if (!(left && right)) continue;
        RealScanMinimum m{report.sigma[i], v[i], false};
        if (auto rec = refine_zero(h, report.sigma[i], opts)) {
            const Complex z = rec->location;
            const bool real = std::abs(z.imag()) < 1e-7;
            const bool in_range = z.real() >= sigma_lo - step && z.real() <= sigma_hi + step;
            const bool fresh = std::none_of(report.real_zeros.begin(), report.real_zeros.end(),
                                            [&](const ZeroRecord& r) { return std::abs(r.location - z) < 1e-6; });
            if (real && in_range) {
                m.refined_to_zero = true;
                if (fresh) {
                    rec->location = Complex(z.real(), 0.0);
                    rec->rect = {sigma_lo - step, sigma_hi + step, -1e-7, 1e-7};
                    rec->multiplicity = std::max(1, multiplicity(h, rec->location, 1e-3, opts));
                    report.real_zeros.push_back(*rec);
                }
            }
        }
        report.minima.push_back(m);
    }
    std::sort(report.real_zeros.begin(), report.real_zeros.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.location.real() < b.location.real(); });
    report.certified_nonvanishing = report.real_zeros.empty() && report.min_abs > 1e-6;
    return report;
}

DensityTable density_experiment(const FunctionHandle& h, double sigma1, double sigma2,
                                const std::vector<double>& t_values, bool locate, const ZeroOptions& opts) {
    if (!(0.5 < sigma1 && sigma1 < sigma2)) throw DomainError("density needs 1/2 < sigma1 < sigma2");
    if (t_values.empty()) throw DomainError("density needs at least one T");
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] > 0.0) || (i > 0 && !(t_values[i] > t_values[i - 1]))) {
            throw DomainError("T values must be positive and increasing");
        }
    }
    DensityTable table;
    table.sigma1 = sigma1;
    table.sigma2 = sigma2;
    for (double t : t_values) {
        const CountResult c = count_zeros(h, {sigma1, sigma2, -t, t}, opts);
        table.rows.push_back({t, c.count, c.count / t, c.winding_integral});
    }
    if (locate) {
        const double t = t_values.back();
        LocateResult located = locate_zeros(h, {sigma1, sigma2, -t, t}, 100000, opts);
        table.zeros = std::move(located.zeros);
        table.failures = std::move(located.failures);
    }
    return table;
}

}  // namespace zetalab
