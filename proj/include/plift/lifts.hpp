#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plift/tensor.hpp"

namespace plift {

// A 2N x 2N tensor on the tangent bundle, together with a record of which
// constructor produced it and from what.
struct LiftedTensor {
    PoissonTensor tensor;
    std::vector<std::pair<std::string, std::string>> provenance;
};

// Where a point deformation reads its Casimir: on base or fiber coordinates.
enum class PointArg { of_x, of_y };

// The four tangent-space deformations of a linear tensor: diagonal block
// lam*pi(x) or lam*pi(y), crossed blocks carrying c(x) or c(y).
enum class LinearVariant { tilde_cx, tilde_cy, dtilde_cx, dtilde_cy };

enum class SemidirectVariant { v1, v2 };

// The two side conditions tying a Casimir c to its partner f: either
// {f, x_j} under the first tensor equals {x_j, c} under the second, or the
// mirrored assignment.
enum class SideCondition { f_under_first, f_under_second };

// Lifting a Casimir family along a shift x -> x - t*y: either the pair
// (c(x), c(x - t*y) - c(x)) or the even/odd split c(x - t*y) +- c(x + t*y).
enum class CasimirShift { difference, even_odd };

// --- tensor constructors ---------------------------------------------------

// [[0, pi(x)], [pi(x), sum_s dpi/dx_s y_s]].
LiftedTensor tangent_lift(const PoissonTensor& base);

// Deformation by a Casimir c and a pi-preserving field v:
// crossed blocks pi +- c v v^T, fiber block picks up the v-terms.
LiftedTensor lift_cv(const PoissonTensor& base, const Poly& casimir, const VecField& symmetry);

// Tangent lift of pi2 with lam*pi1(x) added to the fiber block; the pair
// must be compatible.
LiftedTensor lift_biham(const PoissonTensor& pi1, const PoissonTensor& pi2,
                        const std::string& lam_name);

// Crossed blocks pi +- E_pp c where E_pp has the single entry c at (p,p);
// requires pi independent of x_p and c a Casimir (linear for of_y, which
// re-reads c in the fiber variables). `p` is 1-based.
LiftedTensor lift_point_deform(const PoissonTensor& base, const Poly& casimir, int p,
                               PointArg arg);
// Same with a compatible partner: fiber block gains lam*pi1(x).
LiftedTensor lift_point_deform(const PoissonTensor& base, const Poly& casimir, int p, PointArg arg,
                               const PoissonTensor& pi1, const std::string& lam_name);

// Linear (Lie-Poisson) tensors only: diagonal blocks lam*pi and pi(y),
// crossed blocks pi +- E_pp c. Variants other than tilde_cx need c linear.
LiftedTensor lift_linear_family(const PoissonTensor& base, const Poly& casimir, int p,
                                const std::string& lam_name, LinearVariant variant);

// Two-parameter deformation of a compatible pair: eps*pi2(x) upper-left,
// fiber block sum dpi2/dx_s y_s + lam*pi1(x) - lam*eps*pi1(y).
LiftedTensor lift_biham_eps(const PoissonTensor& pi1, const PoissonTensor& pi2,
                            const Poly& casimir, int p, const std::string& lam_name,
                            const std::string& eps_name);

// Semidirect-type products: [[pi1(y or x), pi2(x)], [pi2(x), sum dpi2 y]].
// The admissibility conditions are returned alongside the tensor rather than
// thrown, so inadmissible pairs can still be inspected.
struct SemidirectResult {
    LiftedTensor lifted;
    IdentityReport conditions;
};
SemidirectResult semidirect(const PoissonTensor& pi1, const PoissonTensor& pi2,
                            SemidirectVariant variant);
IdentityReport check_semidirect_conditions(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                           SemidirectVariant variant);

// --- function-family builders ----------------------------------------------

// {c_i(x), sum_s dc_i/dx_s y_s} for the plain tangent lift.
FunctionFamily lifted_casimirs(const FunctionFamily& casimirs);

// {c_i(x), sum_s dc_i/dx_s y_s + lam f_i(x)}; each partner f_i must satisfy
// the selected side condition against (pi1, pi2), verified symbolically.
FunctionFamily lifted_casimirs_biham(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                     const FunctionFamily& casimirs,
                                     const std::vector<Poly>& partners,
                                     const std::string& lam_name, SideCondition condition);

// Casimir families for the linear-tensor deformations, built by polynomial
// composition x_s -> x_s +- t y_s.
FunctionFamily casimirs_linear_family(const FunctionFamily& casimirs,
                                      const std::string& shift_param, CasimirShift variant);

// {c_i(y), c_i(x) + g_i(y)} for a semidirect product with constant pi2; each
// supplied fiber part g_i is verified against the defining condition.
FunctionFamily semidirect_casimirs(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                   const FunctionFamily& casimirs,
                                   const std::vector<Poly>& fiber_parts);

// Solves the semidirect Casimir condition for the fiber part by linear
// algebra over a bounded-degree ansatz in the fiber variables (parameter
// degree up to `max_param_degree`). Returns nothing when the ansatz admits
// no solution.
std::optional<Poly> solve_semidirect_casimir(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                             const Poly& casimir, int max_degree,
                                             int max_param_degree = 1);

// {H_i(y), sum_s dH_i/dx_s(y) x_s} for a constant-pi2 semidirect product;
// requires the H_i pairwise in involution for both tensors.
FunctionFamily involution_family(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                 const FunctionFamily& hamiltonians);

// Homogeneous Casimirs of pi1 lifted as sum_s dH_i/dx_s(y) x_s, extended by
// verified base-only functions hh_j.
FunctionFamily hat_family(const PoissonTensor& pi1, const PoissonTensor& pi2,
                          const FunctionFamily& hamiltonians, const FunctionFamily& base_only);

// Constant tensor pi(x0); x0 entries may be rational constants or parameter
// expressions (checked: no coordinate dependence).
PoissonTensor freeze(const PoissonTensor& linear, const std::vector<Poly>& point);
PoissonTensor freeze(const PoissonTensor& linear, const std::vector<Rational>& point);

}  // namespace plift
