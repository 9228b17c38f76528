#include "plift/lifts.hpp"

#include <algorithm>

namespace plift {

namespace {

// Lift constructors act on an N-dimensional tensor over a context that
// already carries N fiber variables; entries may use base variables and
// parameters only.
void require_base_tensor(const PoissonTensor& pi, const char* who) {
    const auto& ctx = pi.context();
    if (ctx->nfiber() != ctx->nbase())
        throw VarError(std::string(who) + ": context needs one fiber variable per base variable");
    if (pi.dim() != ctx->nbase())
        throw VarError(std::string(who) + ": expected a base-dimensional tensor");
    for (int i = 0; i < pi.dim(); ++i)
        for (int j = 0; j < pi.dim(); ++j)
            for (int f = ctx->nbase(); f < ctx->ncoords(); ++f)
                if (pi.at(i, j).depends_on(f))
                    throw VarError(std::string(who) + ": tensor entries involve fiber variables");
}

void require_poisson(const PoissonTensor& pi, const char* who) {
    auto report = jacobiator(pi);
    if (!report.ok())
        throw NotPoissonError(std::string(who) + ": tensor fails the Jacobi system; " +
                              report.summary());
}

void require_compatible(const PoissonTensor& pi1, const PoissonTensor& pi2, const char* who) {
    auto report = schouten_compatible(pi1, pi2);
    if (!report.ok())
        throw NotCompatibleError(std::string(who) + ": tensors are not compatible; " +
                                 report.summary());
}

void require_casimir(const PoissonTensor& pi, const Poly& c, const char* who) {
    auto report = is_casimir(pi, c);
    if (!report.ok())
        throw NotCasimirError(std::string(who) + ": function is not a Casimir; " +
                              report.summary());
}

void require_independent(const PoissonTensor& pi, int p0, const char* who) {
    if (pi.depends_on(p0))
        throw DependsOnCoordError(std::string(who) + ": tensor depends on " +
                                  pi.context()->symbol(p0));
}

bool is_linear_homogeneous(const Poly& p) {
    if (p.is_zero()) return false;
    for (const auto& [e, c] : p.terms()) {
        int coord_deg = 0;
        for (int i = 0; i < p.context()->ncoords(); ++i) coord_deg += e[i];
        if (coord_deg != 1) return false;
    }
    return true;
}

int check_p(const PoissonTensor& pi, int p, const char* who) {
    if (p < 1 || p > pi.dim()) throw VarError(std::string(who) + ": index p out of range");
    return p - 1;
}

Poly param_poly(const ContextPtr& ctx, const std::string& name, const char* who) {
    int idx = ctx->index_of(name);
    if (idx < 0 || !ctx->is_param(idx))
        throw VarError(std::string(who) + ": '" + name + "' is not a declared parameter");
    return Poly::variable(ctx, name);
}

using Block = std::vector<std::vector<Poly>>;

Block zero_block(const ContextPtr& ctx, int n) {
    return Block(n, std::vector<Poly>(n, Poly::zero(ctx)));
}

Block tensor_block(const PoissonTensor& pi) {
    const int n = pi.dim();
    Block b = zero_block(pi.context(), n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = pi.at(i, j);
    return b;
}

// sum_s dpi/dx_s y_s, the fiber block of the tangent lift.
Block prolonged_block(const PoissonTensor& pi) {
    const auto& ctx = pi.context();
    const int n = pi.dim();
    Block b = zero_block(ctx, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int s = 0; s < n; ++s) {
                Poly d = pi.at(i, j).diff(s);
                if (!d.is_zero()) b[i][j] += d * Poly::variable(ctx, ctx->fiber_vars()[s]);
            }
        }
    }
    return b;
}

LiftedTensor assemble(const PoissonTensor& base, Block ul, Block ur, Block ll, Block lr,
                      std::vector<std::pair<std::string, std::string>> provenance) {
    const auto& ctx = base.context();
    const int n = base.dim();
    std::vector<std::vector<Poly>> m(2 * n, std::vector<Poly>(2 * n, Poly::zero(ctx)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m[i][j] = std::move(ul[i][j]);
            m[i][n + j] = std::move(ur[i][j]);
            m[n + i][j] = std::move(ll[i][j]);
            m[n + i][n + j] = std::move(lr[i][j]);
        }
    }
    return LiftedTensor{PoissonTensor(ctx, 2 * n, std::move(m)), std::move(provenance)};
}

// E_pp * c as a block.
Block point_block(const ContextPtr& ctx, int n, int p0, const Poly& c) {
    Block b = zero_block(ctx, n);
    b[p0][p0] = c;
    return b;
}

Block add_blocks(Block a, const Block& b, const Poly& factor) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += factor * b[i][j];
    return a;
}

}  // namespace

LiftedTensor tangent_lift(const PoissonTensor& base) {
    require_base_tensor(base, "tangent_lift");
    require_poisson(base, "tangent_lift");
    const int n = base.dim();
    return assemble(base, zero_block(base.context(), n), tensor_block(base), tensor_block(base),
                    prolonged_block(base), {{"constructor", "tangent_lift"}});
}

LiftedTensor lift_cv(const PoissonTensor& base, const Poly& casimir, const VecField& symmetry) {
    require_base_tensor(base, "lift_cv");
    require_poisson(base, "lift_cv");
    require_same_context(base.context(), casimir.context());
    require_same_context(base.context(), symmetry.ctx);
    if (symmetry.dim() != base.dim()) throw VarError("lift_cv: field dimension mismatch");
    {
        auto report = is_casimir(base, casimir);
        if (!report.ok())
            throw PreconditionError("lift_cv: deformation function is not a Casimir; " +
                                    report.summary());
        if (!matrix_is_zero(lie_derivative(base, symmetry)))
            throw PreconditionError("lift_cv: field does not preserve the tensor");
    }
    const auto& ctx = base.context();
    const int n = base.dim();

    Block vv = zero_block(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vv[i][j] = casimir * symmetry.comps[i] * symmetry.comps[j];

    Block lr = prolonged_block(base);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int s = 0; s < n; ++s) {
                Poly term = symmetry.comps[i].diff(s) * symmetry.comps[j] -
                            symmetry.comps[i] * symmetry.comps[j].diff(s);
                if (!term.is_zero())
                    lr[i][j] += casimir * term * Poly::variable(ctx, ctx->fiber_vars()[s]);
            }
        }
    }

    Block ur = add_blocks(tensor_block(base), vv, Poly::constant(ctx, 1));
    Block ll = add_blocks(tensor_block(base), vv, Poly::constant(ctx, -1));
    return assemble(base, zero_block(ctx, n), std::move(ur), std::move(ll), std::move(lr),
                    {{"constructor", "lift_cv"}, {"casimir", casimir.render()}});
}

LiftedTensor lift_biham(const PoissonTensor& pi1, const PoissonTensor& pi2,
                        const std::string& lam_name) {
    require_base_tensor(pi1, "lift_biham");
    require_base_tensor(pi2, "lift_biham");
    require_same_context(pi1.context(), pi2.context());
    require_poisson(pi1, "lift_biham");
    require_poisson(pi2, "lift_biham");
    require_compatible(pi1, pi2, "lift_biham");
    const auto& ctx = pi2.context();
    const int n = pi2.dim();
    Poly lam = param_poly(ctx, lam_name, "lift_biham");
    Block lr = add_blocks(prolonged_block(pi2), tensor_block(pi1), lam);
    return assemble(pi2, zero_block(ctx, n), tensor_block(pi2), tensor_block(pi2), std::move(lr),
                    {{"constructor", "lift_biham"}, {"lam", lam_name}});
}

namespace {

LiftedTensor point_deform_impl(const PoissonTensor& base, const Poly& casimir, int p,
                               PointArg arg, const PoissonTensor* pi1,
                               const std::string& lam_name) {
    const char* who = "lift_point_deform";
    require_base_tensor(base, who);
    require_poisson(base, who);
    require_same_context(base.context(), casimir.context());
    const int p0 = check_p(base, p, who);
    require_independent(base, p0, who);
    require_casimir(base, casimir, who);

    Poly deform = casimir;
    if (arg == PointArg::of_y) {
        if (!is_linear_homogeneous(casimir))
            throw NotLinearError(std::string(who) +
                                 ": fiber-read deformation needs a linear Casimir");
        deform = casimir.read_in_fiber();
    }

    const auto& ctx = base.context();
    const int n = base.dim();
    Block lr = prolonged_block(base);
    std::vector<std::pair<std::string, std::string>> prov{
        {"constructor", who},
        {"casimir", casimir.render()},
        {"p", std::to_string(p)},
        {"arg", arg == PointArg::of_x ? "of_x" : "of_y"}};
    if (pi1) {
        require_base_tensor(*pi1, who);
        require_same_context(base.context(), pi1->context());
        require_poisson(*pi1, who);
        require_compatible(*pi1, base, who);
        require_independent(*pi1, p0, who);
        Poly lam = param_poly(ctx, lam_name, who);
        lr = add_blocks(std::move(lr), tensor_block(*pi1), lam);
        prov.emplace_back("lam", lam_name);
    }

    Block ur = add_blocks(tensor_block(base), point_block(ctx, n, p0, deform),
                          Poly::constant(ctx, 1));
    Block ll = add_blocks(tensor_block(base), point_block(ctx, n, p0, deform),
                          Poly::constant(ctx, -1));
    return assemble(base, zero_block(ctx, n), std::move(ur), std::move(ll), std::move(lr),
                    std::move(prov));
}

}  // namespace

LiftedTensor lift_point_deform(const PoissonTensor& base, const Poly& casimir, int p,
                               PointArg arg) {
    return point_deform_impl(base, casimir, p, arg, nullptr, "");
}

LiftedTensor lift_point_deform(const PoissonTensor& base, const Poly& casimir, int p, PointArg arg,
                               const PoissonTensor& pi1, const std::string& lam_name) {
    return point_deform_impl(base, casimir, p, arg, &pi1, lam_name);
}

LiftedTensor lift_linear_family(const PoissonTensor& base, const Poly& casimir, int p,
                                const std::string& lam_name, LinearVariant variant) {
    const char* who = "lift_linear_family";
    require_base_tensor(base, who);
    if (!base.is_linear_in_coords())
        throw NotLinearTensorError(std::string(who) + ": tensor is not linear");
    require_poisson(base, who);
    require_same_context(base.context(), casimir.context());
    const int p0 = check_p(base, p, who);
    require_independent(base, p0, who);
    require_casimir(base, casimir, who);

    const bool fiber_diag =
        variant == LinearVariant::dtilde_cx || variant == LinearVariant::dtilde_cy;
    const bool fiber_casimir =
        variant == LinearVariant::tilde_cy || variant == LinearVariant::dtilde_cy;
    if (variant != LinearVariant::tilde_cx && !is_linear_homogeneous(casimir))
        throw NotLinearError(std::string(who) + ": this variant needs a linear Casimir");

    const auto& ctx = base.context();
    const int n = base.dim();
    Poly lam = param_poly(ctx, lam_name, who);
    Poly deform = fiber_casimir ? casimir.read_in_fiber() : casimir;

    Block ul = tensor_block(fiber_diag ? base.read_in_fiber() : base);
    for (auto& row : ul)
        for (auto& e : row) e *= lam;
    Block ur = add_blocks(tensor_block(base), point_block(ctx, n, p0, deform),
                          Poly::constant(ctx, 1));
    Block ll = add_blocks(tensor_block(base), point_block(ctx, n, p0, deform),
                          Poly::constant(ctx, -1));
    Block lr = tensor_block(base.read_in_fiber());
    const char* names[] = {"tilde_cx", "tilde_cy", "dtilde_cx", "dtilde_cy"};
    return assemble(base, std::move(ul), std::move(ur), std::move(ll), std::move(lr),
                    {{"constructor", who},
                     {"casimir", casimir.render()},
                     {"p", std::to_string(p)},
                     {"variant", names[static_cast<int>(variant)]},
                     {"lam", lam_name}});
}

LiftedTensor lift_biham_eps(const PoissonTensor& pi1, const PoissonTensor& pi2,
                            const Poly& casimir, int p, const std::string& lam_name,
                            const std::string& eps_name) {
    const char* who = "lift_biham_eps";
    require_base_tensor(pi1, who);
    require_base_tensor(pi2, who);
    require_same_context(pi1.context(), pi2.context());
    require_poisson(pi1, who);
    require_poisson(pi2, who);
    require_compatible(pi1, pi2, who);
    const int p0 = check_p(pi2, p, who);
    require_independent(pi1, p0, who);
    require_independent(pi2, p0, who);
    require_casimir(pi2, casimir, who);

    const auto& ctx = pi2.context();
    const int n = pi2.dim();
    Poly lam = param_poly(ctx, lam_name, who);
    Poly eps = param_poly(ctx, eps_name, who);

    Block ul = tensor_block(pi2);
    for (auto& row : ul)
        for (auto& e : row) e *= eps;
    Block ur = add_blocks(tensor_block(pi2), point_block(ctx, n, p0, casimir),
                          Poly::constant(ctx, 1));
    Block ll = add_blocks(tensor_block(pi2), point_block(ctx, n, p0, casimir),
                          Poly::constant(ctx, -1));
    Block lr = add_blocks(prolonged_block(pi2), tensor_block(pi1), lam);
    lr = add_blocks(std::move(lr), tensor_block(pi1.read_in_fiber()), -(lam * eps));
    return assemble(pi2, std::move(ul), std::move(ur), std::move(ll), std::move(lr),
                    {{"constructor", who},
                     {"casimir", casimir.render()},
                     {"p", std::to_string(p)},
                     {"lam", lam_name},
                     {"eps", eps_name}});
}

IdentityReport check_semidirect_conditions(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                           SemidirectVariant variant) {
    require_base_tensor(pi1, "check_semidirect_conditions");
    require_base_tensor(pi2, "check_semidirect_conditions");
    require_same_context(pi1.context(), pi2.context());
    const auto& ctx = pi1.context();
    const int n = pi1.dim();
    IdentityReport report;

    auto fiber_var = [&](int s) { return Poly::variable(ctx, ctx->fiber_vars()[s]); };

    if (variant == SemidirectVariant::v1) {
        const PoissonTensor a = pi1.read_in_fiber();
        // triple of base coordinates
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly acc = Poly::zero(ctx);
                    for (int s = 0; s < n; ++s) {
                        acc += pi2.at(s, k) * a.at(i, j).diff(n + s);
                        acc += pi2.at(s, j) * a.at(k, i).diff(n + s);
                        acc += pi2.at(s, i) * a.at(j, k).diff(n + s);
                    }
                    report.add({i + 1, j + 1, k + 1}, "cond-xxx", std::move(acc));
                }
        // two base coordinates against one fiber coordinate
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly acc = Poly::zero(ctx);
                    for (int s = 0; s < n; ++s) {
                        Poly prolong = Poly::zero(ctx);
                        for (int m = 0; m < n; ++m) {
                            Poly d = pi2.at(s, k).diff(m);
                            if (!d.is_zero()) prolong += d * fiber_var(m);
                        }
                        if (!prolong.is_zero()) acc += prolong * a.at(i, j).diff(n + s);
                        acc += a.at(s, i) * pi2.at(j, k).diff(s);
                        acc += a.at(s, j) * pi2.at(k, i).diff(s);
                    }
                    report.add({i + 1, j + 1, k + 1}, "cond-xxy", std::move(acc));
                }
        // two fiber coordinates against one base coordinate
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly acc = Poly::zero(ctx);
                    for (int s = 0; s < n; ++s)
                        for (int m = 0; m < n; ++m) {
                            Poly dd = pi2.at(i, j).diff(m).diff(s);
                            if (!dd.is_zero()) acc += fiber_var(s) * a.at(m, k) * dd;
                        }
                    report.add({i + 1, j + 1, k + 1}, "cond-yyx", std::move(acc));
                }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly acc = Poly::zero(ctx);
                    for (int s = 0; s < n; ++s) {
                        acc += pi2.at(s, k) * pi1.at(i, j).diff(s);
                        acc += pi1.at(s, i) * pi2.at(j, k).diff(s);
                        acc += pi1.at(s, j) * pi2.at(k, i).diff(s);
                    }
                    report.add({i + 1, j + 1, k + 1}, "cond-xxy", std::move(acc));
                }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Poly acc = Poly::zero(ctx);
                    for (int s = 0; s < n; ++s)
                        for (int m = 0; m < n; ++m) {
                            Poly dd = pi2.at(i, j).diff(m).diff(s);
                            if (!dd.is_zero()) acc += fiber_var(s) * pi1.at(m, k) * dd;
                        }
                    report.add({i + 1, j + 1, k + 1}, "cond-yyx", std::move(acc));
                }
    }
    return report;
}

SemidirectResult semidirect(const PoissonTensor& pi1, const PoissonTensor& pi2,
                            SemidirectVariant variant) {
    IdentityReport conditions = check_semidirect_conditions(pi1, pi2, variant);
    Block ul = tensor_block(variant == SemidirectVariant::v1 ? pi1.read_in_fiber() : pi1);
    LiftedTensor lifted =
        assemble(pi2, std::move(ul), tensor_block(pi2), tensor_block(pi2), prolonged_block(pi2),
                 {{"constructor", "semidirect"},
                  {"variant", variant == SemidirectVariant::v1 ? "v1" : "v2"}});
    return SemidirectResult{std::move(lifted), std::move(conditions)};
}

// --- function families ------------------------------------------------------

namespace {

// sum_s df/dx_s y_s
Poly fiber_pairing(const Poly& f) {
    const auto& ctx = f.context();
    Poly out = Poly::zero(ctx);
    for (int s = 0; s < ctx->nbase(); ++s) {
        Poly d = f.diff(s);
        if (!d.is_zero()) out += d * Poly::variable(ctx, ctx->fiber_vars()[s]);
    }
    return out;
}

// sum_s df/dx_s(y) x_s
Poly base_pairing_of_fiber_gradient(const Poly& f) {
    const auto& ctx = f.context();
    Poly out = Poly::zero(ctx);
    for (int s = 0; s < ctx->nbase(); ++s) {
        Poly d = f.diff(s);
        if (!d.is_zero()) out += d.read_in_fiber() * Poly::variable(ctx, ctx->base_vars()[s]);
    }
    return out;
}

}  // namespace

FunctionFamily lifted_casimirs(const FunctionFamily& casimirs) {
    FunctionFamily out{FunctionFamily::Role::casimir, {}};
    for (const auto& [name, c] : casimirs.entries) {
        out.entries.emplace_back(name, c);
        out.entries.emplace_back("l_d" + name, fiber_pairing(c));
    }
    return out;
}

FunctionFamily lifted_casimirs_biham(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                     const FunctionFamily& casimirs,
                                     const std::vector<Poly>& partners,
                                     const std::string& lam_name, SideCondition condition) {
    require_base_tensor(pi1, "lifted_casimirs_biham");
    require_base_tensor(pi2, "lifted_casimirs_biham");
    require_same_context(pi1.context(), pi2.context());
    if (partners.size() != casimirs.entries.size())
        throw VarError("lifted_casimirs_biham: one partner per Casimir required");
    const auto& ctx = pi1.context();
    Poly lam = param_poly(ctx, lam_name, "lifted_casimirs_biham");

    const PoissonTensor& bracket_f = condition == SideCondition::f_under_first ? pi1 : pi2;
    const PoissonTensor& bracket_c = condition == SideCondition::f_under_first ? pi2 : pi1;

    FunctionFamily out{FunctionFamily::Role::casimir, {}};
    for (std::size_t i = 0; i < partners.size(); ++i) {
        const auto& [name, c] = casimirs.entries[i];
        const Poly& f = partners[i];
        for (int j = 0; j < pi1.dim(); ++j) {
            Poly xj = Poly::variable(ctx, ctx->base_vars()[j]);
            Poly residual = poisson_bracket(bracket_f, f, xj) - poisson_bracket(bracket_c, xj, c);
            if (!residual.is_zero())
                throw SideConditionError("lifted_casimirs_biham: side condition fails for " +
                                         name + " at j=" + std::to_string(j + 1) + ": " +
                                         residual.render());
        }
        out.entries.emplace_back(name, c);
        out.entries.emplace_back(name + "~", fiber_pairing(c) + lam * f);
    }
    return out;
}

FunctionFamily casimirs_linear_family(const FunctionFamily& casimirs,
                                      const std::string& shift_param, CasimirShift variant) {
    FunctionFamily out{FunctionFamily::Role::casimir, {}};
    for (const auto& [name, c] : casimirs.entries) {
        const auto& ctx = c.context();
        const int idx = ctx->index_of(shift_param);
        if (idx < 0 || !ctx->is_param(idx))
            throw VarError("casimirs_linear_family: '" + shift_param + "' is not a parameter");
        Poly t = Poly::variable(ctx, shift_param);
        std::map<int, Poly> minus, plus;
        for (int s = 0; s < ctx->nbase(); ++s) {
            Poly xs = Poly::variable(ctx, ctx->base_vars()[s]);
            Poly ys = Poly::variable(ctx, ctx->fiber_vars()[s]);
            minus.emplace(s, xs - t * ys);
            plus.emplace(s, xs + t * ys);
        }
        if (variant == CasimirShift::difference) {
            out.entries.emplace_back(name, c);
            out.entries.emplace_back(name + "~~", c.substitute(minus) - c);
        } else {
            out.entries.emplace_back(name + "^", c.substitute(minus) + c.substitute(plus));
            out.entries.emplace_back(name + "^^", c.substitute(minus) - c.substitute(plus));
        }
    }
    return out;
}

FunctionFamily semidirect_casimirs(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                   const FunctionFamily& casimirs,
                                   const std::vector<Poly>& fiber_parts) {
    const char* who = "semidirect_casimirs";
    require_base_tensor(pi1, who);
    require_base_tensor(pi2, who);
    require_same_context(pi1.context(), pi2.context());
    if (!pi2.is_constant())
        throw PreconditionError(std::string(who) + ": second tensor must be constant");
    require_compatible(pi1, pi2, who);
    if (fiber_parts.size() != casimirs.entries.size())
        throw VarError(std::string(who) + ": one fiber part per Casimir required");

    const auto& ctx = pi1.context();
    const int n = pi1.dim();
    const PoissonTensor a = pi1.read_in_fiber();

    FunctionFamily out{FunctionFamily::Role::casimir, {}};
    for (std::size_t i = 0; i < fiber_parts.size(); ++i) {
        const auto& [name, c] = casimirs.entries[i];
        require_casimir(pi2, c, who);
        const Poly& g = fiber_parts[i];
        for (int j = 0; j < n; ++j) {
            Poly acc = Poly::zero(ctx);
            for (int s = 0; s < n; ++s) {
                acc += a.at(j, s) * c.diff(s);
                acc += pi2.at(j, s) * g.diff(n + s);
            }
            if (!acc.is_zero())
                throw SideConditionError(std::string(who) + ": condition fails for " + name +
                                         " at j=" + std::to_string(j + 1) + ": " + acc.render());
        }
        out.entries.emplace_back(name + "(y)", c.read_in_fiber());
        out.entries.emplace_back(name + "~", c + g);
    }
    return out;
}

std::optional<Poly> solve_semidirect_casimir(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                             const Poly& casimir, int max_degree,
                                             int max_param_degree) {
    const auto& ctx = pi1.context();
    const int n = pi1.dim();
    const PoissonTensor a = pi1.read_in_fiber();

    // Ansatz monomials: fiber variables up to max_degree, parameters up to
    // max_param_degree, no base variables.
    std::vector<Exponents> basis;
    Exponents current(ctx->nsymbols(), 0);
    auto expand = [&](auto&& self, int pos, int fiber_left, int param_left) -> void {
        if (pos == ctx->nsymbols()) {
            basis.push_back(current);
            return;
        }
        const bool fiberish = pos >= ctx->nbase() && pos < ctx->ncoords();
        const bool paramish = pos >= ctx->ncoords();
        const int budget = fiberish ? fiber_left : (paramish ? param_left : 0);
        for (int e = 0; e <= budget; ++e) {
            current[pos] = e;
            self(self, pos + 1, fiberish ? fiber_left - e : fiber_left,
                 paramish ? param_left - e : param_left);
        }
        current[pos] = 0;
    };
    expand(expand, 0, max_degree, max_param_degree);

    // Residual_j = known_j + sum_b u_b * contribution_{j,b}; expanding over
    // monomials gives a sparse rational linear system in the unknowns u.
    std::vector<Poly> known(n, Poly::zero(ctx));
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) known[j] += a.at(j, s) * casimir.diff(s);

    std::vector<std::vector<Poly>> contribution(n, std::vector<Poly>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Poly mono = Poly::monomial(ctx, 1, basis[b]);
        for (int j = 0; j < n; ++j) {
            Poly acc = Poly::zero(ctx);
            for (int s = 0; s < n; ++s) acc += pi2.at(j, s) * mono.diff(n + s);
            contribution[j][b] = std::move(acc);
        }
    }

    std::map<Exponents, std::size_t, GrlexLess> row_index;
    auto row_of = [&](const Exponents& e) {
        auto [it, inserted] = row_index.emplace(e, row_index.size());
        return it->second;
    };
    for (int j = 0; j < n; ++j) {
        for (const auto& [e, coef] : known[j].terms()) row_of(e);
        for (const auto& col : contribution[j])
            for (const auto& [e, coef] : col.terms()) row_of(e);
    }

    const std::size_t rows_per_j = row_index.size();
    const std::size_t nrows = rows_per_j * n, ncols = basis.size();
    std::vector<std::vector<Rational>> m(nrows, std::vector<Rational>(ncols + 1, 0));
    for (int j = 0; j < n; ++j) {
        for (const auto& [e, coef] : known[j].terms())
            m[j * rows_per_j + row_of(e)][ncols] = -coef;
        for (std::size_t b = 0; b < ncols; ++b)
            for (const auto& [e, coef] : contribution[j][b].terms())
                m[j * rows_per_j + row_of(e)][b] = coef;
    }

    // Gauss-Jordan; free unknowns stay zero.
    std::vector<int> pivot_col(nrows, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t sel = rank;
        while (sel < nrows && m[sel][col] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(m[sel], m[rank]);
        Rational inv = m[rank][col];
        for (auto& v : m[rank]) v /= inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational factor = m[r][col];
            for (std::size_t cidx = 0; cidx <= ncols; ++cidx) m[r][cidx] -= factor * m[rank][cidx];
        }
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }
    for (std::size_t r = rank; r < nrows; ++r)
        if (m[r][ncols] != 0) return std::nullopt;

    std::vector<Rational> solution(ncols, 0);
    for (std::size_t r = 0; r < rank; ++r) solution[pivot_col[r]] = m[r][ncols];

    Poly result = Poly::zero(ctx);
    for (std::size_t b = 0; b < ncols; ++b)
        if (solution[b] != 0) result += Poly::monomial(ctx, solution[b], basis[b]);
    return result;
}

FunctionFamily involution_family(const PoissonTensor& pi1, const PoissonTensor& pi2,
                                 const FunctionFamily& hamiltonians) {
    const char* who = "involution_family";
    require_base_tensor(pi1, who);
    require_base_tensor(pi2, who);
    require_same_context(pi1.context(), pi2.context());
    if (!pi2.is_constant())
        throw PreconditionError(std::string(who) + ": second tensor must be constant");
    require_compatible(pi1, pi2, who);
    for (std::size_t i = 0; i < hamiltonians.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < hamiltonians.entries.size(); ++j) {
            const auto& [ni, hi] = hamiltonians.entries[i];
            const auto& [nj, hj] = hamiltonians.entries[j];
            if (!poisson_bracket(pi1, hi, hj).is_zero())
                throw PreconditionError(std::string(who) + ": " + ni + "," + nj +
                                        " not in involution under the first tensor");
            if (!poisson_bracket(pi2, hi, hj).is_zero())
                throw PreconditionError(std::string(who) + ": " + ni + "," + nj +
                                        " not in involution under the second tensor");
        }
    }
    FunctionFamily out{FunctionFamily::Role::involution, {}};
    for (const auto& [name, h] : hamiltonians.entries) {
        out.entries.emplace_back(name + "(y)", h.read_in_fiber());
        out.entries.emplace_back(name + "~", base_pairing_of_fiber_gradient(h));
    }
    return out;
}

FunctionFamily hat_family(const PoissonTensor& pi1, const PoissonTensor& pi2,
                          const FunctionFamily& hamiltonians, const FunctionFamily& base_only) {
    const char* who = "hat_family";
    require_base_tensor(pi1, who);
    require_base_tensor(pi2, who);
    require_same_context(pi1.context(), pi2.context());
    const auto& ctx = pi1.context();
    const PoissonTensor a = pi1.read_in_fiber();

    for (const auto& [name, h] : hamiltonians.entries) {
        require_casimir(pi1, h, who);
        // Euler identity pins homogeneity of degree 1 or 2.
        Poly euler = Poly::zero(ctx);
        for (int s = 0; s < pi1.dim(); ++s)
            euler += Poly::variable(ctx, ctx->base_vars()[s]) * h.diff(s);
        if (euler != h && euler != h * Rational(2))
            throw NotHomogeneousError(std::string(who) + ": " + name +
                                      " is not homogeneous of degree 1 or 2");
    }
    for (const auto& [bname, bh] : base_only.entries) {
        for (const auto& [hname, h] : hamiltonians.entries) {
            if (!poisson_bracket(pi2, h, bh).is_zero())
                throw SideConditionError(std::string(who) + ": {" + hname + "," + bname +
                                         "} does not vanish under the second tensor");
        }
    }
    for (std::size_t i = 0; i < base_only.entries.size(); ++i) {
        for (std::size_t j = i; j < base_only.entries.size(); ++j) {
            Poly acc = Poly::zero(ctx);
            for (int s = 0; s < pi1.dim(); ++s)
                for (int m = 0; m < pi1.dim(); ++m)
                    acc += a.at(s, m) * base_only.entries[i].second.diff(s) *
                           base_only.entries[j].second.diff(m);
            if (!acc.is_zero())
                throw SideConditionError(std::string(who) + ": " + base_only.entries[i].first +
                                         "," + base_only.entries[j].first +
                                         " fail the fiber-block involution condition");
        }
    }

    FunctionFamily out{FunctionFamily::Role::involution, {}};
    for (const auto& [name, h] : hamiltonians.entries)
        out.entries.emplace_back(name + "^", base_pairing_of_fiber_gradient(h));
    for (const auto& [name, bh] : base_only.entries) out.entries.emplace_back(name, bh);
    return out;
}

PoissonTensor freeze(const PoissonTensor& linear, const std::vector<Poly>& point) {
    const char* who = "freeze";
    if (!linear.is_linear_in_coords())
        throw NotLinearTensorError(std::string(who) + ": tensor is not linear");
    if (static_cast<int>(point.size()) != linear.dim())
        throw VarError(std::string(who) + ": point dimension mismatch");
    const auto& ctx = linear.context();
    std::map<int, Poly> images;
    for (int s = 0; s < linear.dim(); ++s) {
        require_same_context(ctx, point[s].context());
        if (point[s].coord_degree() > 0)
            throw VarError(std::string(who) + ": freezing point must be coordinate-free");
        images.emplace(s, point[s]);
    }
    std::vector<std::vector<Poly>> m(linear.dim(), std::vector<Poly>(linear.dim()));
    for (int i = 0; i < linear.dim(); ++i)
        for (int j = 0; j < linear.dim(); ++j) m[i][j] = linear.at(i, j).substitute(images);
    return PoissonTensor(ctx, linear.dim(), std::move(m));
}

PoissonTensor freeze(const PoissonTensor& linear, const std::vector<Rational>& point) {
    std::vector<Poly> polys;
    polys.reserve(point.size());
    for (const auto& r : point) polys.push_back(Poly::constant(linear.context(), r));
    return freeze(linear, polys);
}

}  // namespace plift
