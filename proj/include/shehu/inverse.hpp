#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shehu/atoms.hpp"
#include "shehu/image_expr.hpp"
#include "shehu/rational_function.hpp"

namespace shehu {

/// u^u_power * f(r), r = s/u. Invertible images have u_power = 0 and f proper.
struct RationalR {
    RationalFunction f;
    int u_power = 0;
};

/// Raises NotHomogeneous, NonRationalImage or ImproperImage.
RationalR normalize_image(const ImageExpr& e);
RationalR normalize_image(std::string_view text, const ConstantBindings& constants = {});

/// A monic factor (r - a) or (r - beta)^2 + alpha^2 with alpha > 0.
struct DenominatorFactor {
    CPoly factor;
    unsigned multiplicity = 1;
};

struct Factorization {
    Coeff leading;
    std::vector<DenominatorFactor> factors;
};

/// Complete factorization over Q(pi) into linear factors and irreducible
/// quadratics. Raises IrrationalRoot when a root lies outside Q(pi) and
/// IrreducibleHighDegree when a residual of degree > 2 cannot be split.
Factorization factor_denominator(const CPoly& p);

struct PartialFractionTerm {
    enum class Kind { LinearPole, QuadraticPole };
    Kind kind = Kind::LinearPole;
    Coeff root;   // a for a linear pole, the center beta for a quadratic one
    Coeff freq;   // alpha (quadratic only)
    unsigned multiplicity = 1;
    Coeff c;      // numerator of a linear pole; C in (C(r - beta) + D) otherwise
    Coeff d;      // D (quadratic only)

    RationalFunction image() const;
    /// "(1/2)/(r - 1)", "(2*(r + 1) + 3)/((r + 1)^2 + 4)^2"
    std::string str() const;
};

/// Raises ImproperImage for an improper f; the sum of terms equals f exactly.
std::vector<PartialFractionTerm> partial_fractions(const RationalR& f);

AtomSum invert_term(const PartialFractionTerm& term);

struct InverseResult {
    AtomSum atoms;
    Expr expr;
    std::vector<PartialFractionTerm> terms;
};

/// Raises UPowerMismatch when u_power != 0.
InverseResult invert_with_trace(const RationalR& f);
Expr invert(const RationalR& f);

}  // namespace shehu
