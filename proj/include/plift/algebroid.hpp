#pragma once

#include "plift/tensor.hpp"

namespace plift {

// Differential of a scalar over the first `dim` coordinates.
OneForm differential(const Poly& f, int dim);
// Pairing alpha(v) = sum_i alpha_i v_i.
Poly pairing(const OneForm& alpha, const VecField& v);
// pi(alpha, beta) = sum_{i,j} pi_ij alpha_i beta_j.
Poly tensor_pairing(const PoissonTensor& pi, const OneForm& alpha, const OneForm& beta);
// The vector field pi(alpha, .), component j: sum_i alpha_i pi_ij.
VecField sharp(const PoissonTensor& pi, const OneForm& alpha);
// Cartan formula L_X gamma = d(gamma(X)) + i_X d gamma, componentwise.
OneForm lie_derivative_form(const VecField& x, const OneForm& gamma);

// Deformed bracket of one-forms:
//   [alpha,beta] = L_{pi(alpha,.)} beta - L_{pi(beta,.)} alpha - d(pi(alpha,beta))
//                  + c (beta(v) L_v alpha - alpha(v) L_v beta).
// Evaluates the formula as stated; hypothesis checks (c Casimir, L_v pi = 0)
// are the caller's business so that broken inputs can be probed.
OneForm algebroid_bracket(const PoissonTensor& pi, const Poly& casimir, const VecField& symmetry,
                          const OneForm& alpha, const OneForm& beta);

// Deformed anchor applied to a function:
//   a(alpha)(f) = pi(alpha, df) - c alpha(v) df(v).
Poly algebroid_anchor(const PoissonTensor& pi, const Poly& casimir, const VecField& symmetry,
                      const OneForm& alpha, const Poly& f);

// Hypotheses of the deformed-algebroid construction: casimir kills pi and
// the symmetry field preserves it. Witnesses tagged "casimir-hypothesis" /
// "symmetry-hypothesis".
IdentityReport check_algebroid_hypotheses(const PoissonTensor& pi, const Poly& casimir,
                                          const VecField& symmetry);

// Exhaustive symbolic check of the algebroid axioms over finite test sets:
// Leibniz rule [alpha, h beta] == h [alpha,beta] + a(alpha)(h) beta, anchor
// morphism a([alpha,beta]) == [a(alpha), a(beta)], and the Jacobi identity of
// the bracket. Witness tags: "leibniz", "anchor-morphism", "jacobi".
IdentityReport verify_algebroid_axioms(const PoissonTensor& pi, const Poly& casimir,
                                       const VecField& symmetry,
                                       const std::vector<OneForm>& test_forms,
                                       const std::vector<Poly>& test_fns);

}  // namespace plift
