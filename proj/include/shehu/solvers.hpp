#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shehu/atoms.hpp"
#include "shehu/inverse.hpp"
#include "shehu/transform.hpp"

namespace shehu {

/// sum_k coeffs[k] v^(k)(t) = forcing(t), with v^(k)(0) = inits[k] for k < n.
struct IVProblem {
    std::vector<Coeff> coeffs;  // a_0 .. a_n, a_n != 0
    AtomSum forcing;
    std::vector<Coeff> inits;   // length n

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

enum class PDEKind { Heat, Wave };

/// Heat: v_t = k v_xx + f(x).  Wave: v_tt = c^2 v_xx + f(x).
/// Zero Dirichlet data at x = 0 and x = length; all data are finite sine series.
struct ModalPDEProblem {
    PDEKind kind = PDEKind::Heat;
    Coeff speed{1};   // diffusivity for heat, wave speed for wave
    Coeff length{1};
    AtomSum initial;
    AtomSum velocity;  // wave only
    AtomSum forcing;
};

struct DerivationStep {
    std::string label;
    std::string value;
};

struct Solution {
    AtomSum atoms;
    Expr expr;
    std::vector<DerivationStep> derivation;
};

/// Raises NonTransformable for forcing without a rational image, ArityMismatch
/// for a wrong number of initial values, plus factoring errors.
Solution solve_ivp(const IVProblem& p);
Solution solve_pde(const ModalPDEProblem& p);

/// Parses "v'' - 3*v' + 2*v = exp(3*t)" and "v(0)=1, v'(0)=0". The equation
/// must be linear in v and its derivatives with constant coefficients.
IVProblem parse_ivp(std::string_view equation, std::string_view inits);
/// Exact value of a constant expression such as "1/2" or "pi^2".
Coeff parse_constant(std::string_view text);

struct ResidualReport {
    long double equation = 0;  // max |LHS - RHS| over the sample grid
    long double initial = 0;   // worst violation of initial data
    long double boundary = 0;  // worst violation of boundary data (PDE)

    long double max() const;
};

/// Sampled residual of a candidate on 32 points t in (0, 1].
ResidualReport residual(const IVProblem& p, const Expr& candidate);
/// Sampled residual on a 16 x 16 grid over (0, L] x (0, 1].
ResidualReport residual(const ModalPDEProblem& p, const Expr& candidate);

}  // namespace shehu
