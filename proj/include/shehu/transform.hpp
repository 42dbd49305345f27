#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shehu/atoms.hpp"
#include "shehu/image_expr.hpp"
#include "shehu/rational_function.hpp"

namespace shehu {

/// Non-rational closed forms, as functions of r = s/u.
enum class PhiKind {
    ExpShift,     // exp(-a r)
    InvSqrtSum,   // (r^2 + a^2)^(-1/2)
    InvSqrtDiff,  // (r^2 - a^2)^(-1/2)
    ArcTan,       // atan(a / r)
    LogSum,       // log((r^2 + a^2) / a^2)
    LogDiff,      // log((r - a) / a)
};

struct SpecialImageTerm {
    RationalFunction multiplier;
    PhiKind kind;
    Coeff param;
};

/// Image V(s,u) = F(r) at r = s/u, where F is rational plus special terms.
/// roc is the abscissa: the image is valid for r > roc (nullopt means every r).
struct TransformImage {
    RationalFunction rational;
    std::vector<SpecialImageTerm> specials;
    std::optional<Coeff> roc;

    bool is_rational() const { return specials.empty(); }
    Complex eval_r(Complex r) const;
    Complex eval(Complex s, Complex u) const { return eval_r(s / u); }
};

struct GrowthBound {
    std::optional<Coeff> order;  // nullopt: faster decay than any exponential
    std::string witness;
};

TransformImage transform(const AtomSum& v);
TransformImage transform(const Expr& v);
TransformImage transform_special(const Special& s);

/// Image of the n-th derivative: r^n V - sum_k r^(n-1-k) v^(k)(0).
TransformImage derivative_image(int n, const TransformImage& V, const std::vector<Coeff>& inits);
/// Image of v(beta t): F(r/beta)/beta.
TransformImage change_of_scale(const TransformImage& V, const Coeff& beta);
GrowthBound exponential_order(const AtomSum& v);

TransformImage operator+(const TransformImage& a, const TransformImage& b);
TransformImage operator*(const Coeff& k, const TransformImage& a);

enum class View { Shehu, Natural, Sumudu, Laplace, Yang };
std::string_view to_string(View v);
View parse_view(std::string_view name);

/// Closed form in the requested view:
///   shehu V(s,u), natural V/u, sumudu V(1,u)/u, laplace V(s,1), yang V(1,w).
ImageExpr convert(const TransformImage& V, View view);
std::string format_image(const TransformImage& V, View view = View::Shehu);
/// "1/(r + 1), r = s/u"
std::string format_homogenized(const TransformImage& V);
std::string format_roc(const std::optional<Coeff>& roc);

}  // namespace shehu
