#include "plift/algebroid.hpp"

namespace plift {

OneForm differential(const Poly& f, int dim) {
    OneForm df = OneForm::zero(f.context(), dim);
    for (int j = 0; j < dim; ++j) df.comps[j] = f.diff(j);
    return df;
}

Poly pairing(const OneForm& alpha, const VecField& v) {
    require_same_context(alpha.ctx, v.ctx);
    if (alpha.dim() != v.dim()) throw VarError("form/field dimension mismatch");
    Poly sum = Poly::zero(alpha.ctx);
    for (int i = 0; i < alpha.dim(); ++i) sum += alpha.comps[i] * v.comps[i];
    return sum;
}

Poly tensor_pairing(const PoissonTensor& pi, const OneForm& alpha, const OneForm& beta) {
    require_same_context(pi.context(), alpha.ctx);
    require_same_context(pi.context(), beta.ctx);
    const int n = pi.dim();
    if (alpha.dim() != n || beta.dim() != n) throw VarError("form dimension mismatch");
    Poly sum = Poly::zero(pi.context());
    for (int i = 0; i < n; ++i) {
        if (alpha.comps[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (i == j || beta.comps[j].is_zero() || pi.at(i, j).is_zero()) continue;
            sum += pi.at(i, j) * alpha.comps[i] * beta.comps[j];
        }
    }
    return sum;
}

VecField sharp(const PoissonTensor& pi, const OneForm& alpha) {
    require_same_context(pi.context(), alpha.ctx);
    const int n = pi.dim();
    if (alpha.dim() != n) throw VarError("form dimension mismatch");
    VecField out = VecField::zero(pi.context(), n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (i == j || alpha.comps[i].is_zero() || pi.at(i, j).is_zero()) continue;
            out.comps[j] += alpha.comps[i] * pi.at(i, j);
        }
    }
    return out;
}

OneForm lie_derivative_form(const VecField& x, const OneForm& gamma) {
    require_same_context(x.ctx, gamma.ctx);
    const int n = gamma.dim();
    if (x.dim() != n) throw VarError("form/field dimension mismatch");
    // (L_X gamma)_j = sum_i ( gamma_i d X_i/dz_j + X_i d gamma_j/dz_i )
    OneForm out = OneForm::zero(gamma.ctx, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!gamma.comps[i].is_zero()) out.comps[j] += gamma.comps[i] * x.comps[i].diff(j);
            if (!x.comps[i].is_zero()) out.comps[j] += x.comps[i] * gamma.comps[j].diff(i);
        }
    }
    return out;
}

OneForm algebroid_bracket(const PoissonTensor& pi, const Poly& casimir, const VecField& symmetry,
                          const OneForm& alpha, const OneForm& beta) {
    const int n = pi.dim();
    const OneForm la = lie_derivative_form(sharp(pi, alpha), beta);
    const OneForm lb = lie_derivative_form(sharp(pi, beta), alpha);
    const OneForm dpair = differential(tensor_pairing(pi, alpha, beta), n);

    const Poly av = pairing(alpha, symmetry);
    const Poly bv = pairing(beta, symmetry);
    const OneForm lva = lie_derivative_form(symmetry, alpha);
    const OneForm lvb = lie_derivative_form(symmetry, beta);

    OneForm out = OneForm::zero(pi.context(), n);
    for (int j = 0; j < n; ++j) {
        out.comps[j] = la.comps[j] - lb.comps[j] - dpair.comps[j] +
                       casimir * (bv * lva.comps[j] - av * lvb.comps[j]);
    }
    return out;
}

Poly algebroid_anchor(const PoissonTensor& pi, const Poly& casimir, const VecField& symmetry,
                      const OneForm& alpha, const Poly& f) {
    const int n = pi.dim();
    const OneForm df = differential(f, n);
    return tensor_pairing(pi, alpha, df) -
           casimir * pairing(alpha, symmetry) * pairing(df, symmetry);
}

IdentityReport check_algebroid_hypotheses(const PoissonTensor& pi, const Poly& casimir,
                                          const VecField& symmetry) {
    IdentityReport report;
    IdentityReport cas = is_casimir(pi, casimir);
    for (const auto& w : cas.witnesses()) report.add(w.indices, "casimir-hypothesis", w.residual);
    auto lv = lie_derivative(pi, symmetry);
    for (int i = 0; i < pi.dim(); ++i)
        for (int j = 0; j < pi.dim(); ++j)
            report.add({i + 1, j + 1}, "symmetry-hypothesis", lv[i][j]);
    return report;
}

IdentityReport verify_algebroid_axioms(const PoissonTensor& pi, const Poly& casimir,
                                       const VecField& symmetry,
                                       const std::vector<OneForm>& test_forms,
                                       const std::vector<Poly>& test_fns) {
    if (test_forms.empty() || test_fns.empty())
        throw PreconditionError("axiom verification needs nonempty test sets");
    const int n = pi.dim();
    const int nf = static_cast<int>(test_forms.size());
    IdentityReport report;

    auto bracket = [&](const OneForm& a, const OneForm& b) {
        return algebroid_bracket(pi, casimir, symmetry, a, b);
    };
    auto anchor = [&](const OneForm& a, const Poly& f) {
        return algebroid_anchor(pi, casimir, symmetry, a, f);
    };

    // Cache pairwise brackets: used by the morphism and Jacobi checks.
    std::vector<std::vector<OneForm>> br(nf, std::vector<OneForm>(nf));
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) br[i][j] = bracket(test_forms[i], test_forms[j]);

    for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nf; ++j) {
            for (std::size_t h = 0; h < test_fns.size(); ++h) {
                const Poly& fn = test_fns[h];
                // Leibniz: [alpha, h beta] - h [alpha,beta] - a(alpha)(h) beta
                OneForm scaled = test_forms[j];
                for (auto& comp : scaled.comps) comp *= fn;
                const OneForm lhs = bracket(test_forms[i], scaled);
                const Poly ah = anchor(test_forms[i], fn);
                for (int comp = 0; comp < n; ++comp) {
                    Poly residual =
                        lhs.comps[comp] - fn * br[i][j].comps[comp] - ah * test_forms[j].comps[comp];
                    report.add({i + 1, j + 1, static_cast<int>(h) + 1, comp + 1}, "leibniz",
                               std::move(residual));
                }
                // Anchor morphism: a([alpha,beta])(f) - [a(alpha), a(beta)](f)
                Poly lhs2 = anchor(br[i][j], fn);
                Poly rhs2 = anchor(test_forms[i], anchor(test_forms[j], fn)) -
                            anchor(test_forms[j], anchor(test_forms[i], fn));
                report.add({i + 1, j + 1, static_cast<int>(h) + 1}, "anchor-morphism", lhs2 - rhs2);
            }
        }
    }

    for (int i = 0; i < nf; ++i) {
        for (int j = i + 1; j < nf; ++j) {
            for (int k = j + 1; k < nf; ++k) {
                const OneForm t1 = bracket(br[i][j], test_forms[k]);
                const OneForm t2 = bracket(br[k][i], test_forms[j]);
                const OneForm t3 = bracket(br[j][k], test_forms[i]);
                for (int comp = 0; comp < n; ++comp) {
                    report.add({i + 1, j + 1, k + 1, comp + 1}, "jacobi",
                               t1.comps[comp] + t2.comps[comp] + t3.comps[comp]);
                }
            }
        }
    }
    return report;
}

}  // namespace plift
