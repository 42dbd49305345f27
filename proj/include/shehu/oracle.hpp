#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shehu/atoms.hpp"
#include "shehu/image_expr.hpp"
#include "shehu/transform.hpp"

namespace shehu {

struct QuadratureSpec {
    long double rel_tol = 1e-10L;
    long double max_horizon = 1e5L;  // give up (ConvergenceFailure) beyond this t
    int max_depth = 48;
};

struct TalbotSpec {
    int nodes = 32;               // M; the check run uses 2M
    long double agreement = 1e-5L;  // OscillationFailure when M and 2M differ by more
};

/// integral_0^inf exp(-s t / u) v(t) dt by adaptive Gauss-Kronrod (7/15) on
/// doubling panels. Delta atoms are replaced by Gaussian mollifiers of width
/// 1e-2 and 1e-3 and Richardson-extrapolated. Raises ROCViolation when s/u is
/// not above the exponential order of v, SymbolicOnly for Si/Ci/Ei.
long double numeric_forward(const AtomSum& v, long double s, long double u, const QuadratureSpec& spec = {});
long double numeric_forward(const Expr& v, long double s, long double u, const QuadratureSpec& spec = {});

/// Image as a function of r = s/u.
using ImageOfR = std::function<Complex(Complex)>;

/// Bromwich inversion by the fixed Talbot contour, shifted right by `shift`
/// (which must exceed the real part of every singularity). t > 0.
long double numeric_invert(const ImageOfR& F, long double t, long double shift = 0, const TalbotSpec& spec = {});
long double numeric_invert(const TransformImage& V, long double t, const TalbotSpec& spec = {});
/// Inverts a closed form in s and u at the given u by substituting s = r u.
long double numeric_invert(const ImageExpr& V, long double t, long double u = 1, long double shift = 0,
                           const TalbotSpec& spec = {});

struct GridPoint {
    long double s;
    long double u;
};

/// (2,1), (3,2), (5,1), (4,3)
std::vector<GridPoint> default_grid();
/// default_grid plus (7,1) and (9,2), which separate more forms when the abscissa is large.
std::vector<GridPoint> extended_grid();

enum class Verdict { Pass, Fail, Skipped };
std::string_view to_string(Verdict v);

struct PointCheck {
    GridPoint at;
    Verdict verdict = Verdict::Skipped;
    long double numeric = 0;
    long double symbolic = 0;
    long double rel_err = 0;
    std::string note;
};

struct TalbotCheck {
    long double t = 0;
    Verdict verdict = Verdict::Skipped;
    long double numeric = 0;
    long double exact = 0;
    long double rel_err = 0;
    std::string note;
};

struct VerificationReport {
    std::vector<PointCheck> points;
    std::vector<TalbotCheck> talbot;

    bool passed() const;  // no failures and at least one check ran, or v = V = 0
    int failures() const;
    int checked() const;
};

/// Closed form V(s, u) to adjudicate; `invertible` enables the Talbot round trip.
struct ImageUnderTest {
    std::function<Complex(Complex, Complex)> eval;
    bool invertible = false;
};

ImageUnderTest image_under_test(const TransformImage& V);
ImageUnderTest image_under_test(const ImageExpr& V);

/// Compares numeric_forward(v) with V on the grid (relative 1e-6); points at or
/// left of the abscissa are skipped. Never throws for adjudication failures.
VerificationReport verify_pair(const Expr& v, const ImageUnderTest& V, const std::vector<GridPoint>& grid,
                               long double tol = 1e-6L);

/// Relative difference with an absolute floor for values near zero.
long double relative_error(long double a, long double b);
/// Talbot sums carry an absolute roundoff of about 1e-15 times the image scale,
/// so values below 1e-6 are compared absolutely.
long double talbot_error(long double numeric, long double exact);

}  // namespace shehu
