#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetalab/composed.hpp"

namespace zetalab {

/// sigma1 < σ < sigma2, t1 < t < t2
struct Rectangle {
    double sigma1 = 0.0;
    double sigma2 = 1.0;
    double t1 = 0.0;
    double t2 = 1.0;

    bool contains(Complex s) const;
    /// Distance from s to the boundary (0 on the boundary, also for outside points).
    double boundary_distance(Complex s) const;
    Rectangle expanded(double margin) const;
    /// Throws DomainError unless sigma1 < sigma2, t1 < t2 and the corners lie in the domain.
    void validate(const EvalDomain& domain) const;
};

enum class ZeroMethod { Winding, Refinement };

struct ZeroRecord {
    Complex location;
    double residual = 0.0;
    int multiplicity = 1;
    ZeroMethod method = ZeroMethod::Refinement;
    Rectangle rect;
};

struct CountResult {
    int count = 0;
    /// Total phase change / 2π, before rounding; excludes the pole compensation.
    double winding_integral = 0.0;
    /// Smallest |F| seen on the contour.
    double boundary_margin = 0.0;
    int poles_inside = 0;
    /// Rectangle actually used (after outward perturbation).
    Rectangle rect;
    int perturbations = 0;
    long samples = 0;
};

struct ZeroOptions {
    EvalDomain domain;
    /// |F| below this on the contour counts as a zero on the boundary.
    double boundary_tol = 1e-9;
    int max_perturbations = 3;
    double perturbation = 1e-4;
    double integrality_tol = 0.1;
    /// Initial contour step; 0 selects min(0.05, 2π / (10 ln(q + 2))).
    double initial_step = 0.0;
    int max_newton = 60;
    double newton_tol = 1e-9;
    /// Cells are bisected until their longer side is below this before refinement.
    double cell_size = 0.25;
};

CountResult count_zeros(const FunctionHandle& h, const Rectangle& rect, const ZeroOptions& opts = {});

/// Damped Newton iteration with a central-difference derivative.
/// Returns nullopt when the iteration stalls before reaching opts.newton_tol.
std::optional<ZeroRecord> refine_zero(const FunctionHandle& h, Complex start, const ZeroOptions& opts = {});

/// Winding number of F around a circle of the given radius.
int multiplicity(const FunctionHandle& h, Complex center, double radius = 1e-3, const ZeroOptions& opts = {});

struct LocateResult {
    CountResult count;
    /// Sorted by (t, σ).
    std::vector<ZeroRecord> zeros;
    /// One message per cell whose refinement did not converge.
    std::vector<std::string> failures;
};

LocateResult locate_zeros(const FunctionHandle& h, const Rectangle& rect, int max_zeros = 1000,
                          const ZeroOptions& opts = {});

/// Zeros of q^s + i^{-κ} G(χ) with 0 < t <= t_max. Throws NonPrimitiveError for imprimitive χ.
std::vector<Complex> factor_line_zeros(const DirichletCharacter& chi, double t_max);

struct RealScanMinimum {
    double sigma = 0.0;
    double abs_value = 0.0;
    bool refined_to_zero = false;
};

struct RealScanReport {
    std::vector<double> sigma;
    std::vector<double> abs_value;
    double min_abs = 0.0;
    std::vector<RealScanMinimum> minima;
    std::vector<ZeroRecord> real_zeros;
    /// No real zero found and every grid value above the 1e-6 threshold.
    bool certified_nonvanishing = false;
};

RealScanReport scan_real_axis(const FunctionHandle& h, double sigma_lo, double sigma_hi, double step,
                              const ZeroOptions& opts = {});

struct DensityRow {
    double t = 0.0;
    int count = 0;
    double ratio = 0.0;
    double winding_integral = 0.0;
};

struct DensityTable {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::vector<DensityRow> rows;
    /// Zeros located in the rectangle of the largest T.
    std::vector<ZeroRecord> zeros;
    std::vector<std::string> failures;
};

/// N(σ1, σ2, T) on σ1 < σ < σ2, |t| <= T for each T. Needs 1/2 < σ1 < σ2 and increasing T.
DensityTable density_experiment(const FunctionHandle& h, double sigma1, double sigma2,
                                const std::vector<double>& t_values, bool locate = true,
                                const ZeroOptions& opts = {});

}  // namespace zetalab
