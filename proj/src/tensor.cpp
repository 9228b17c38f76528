#include "plift/tensor.hpp"

#include <sstream>

namespace plift {

std::string IdentityReport::summary(std::size_t max_entries) const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << witnesses_.size() << " nonzero residual(s):";
    for (std::size_t k = 0; k < witnesses_.size() && k < max_entries; ++k) {
        const auto& w = witnesses_[k];
        os << " [" << w.tag << " @(";
        for (std::size_t i = 0; i < w.indices.size(); ++i)
            os << (i ? "," : "") << w.indices[i];
        os << ") -> " << w.residual.render() << "]";
    }
    if (witnesses_.size() > max_entries) os << " ...";
    return os.str();
}

PoissonTensor::PoissonTensor(ContextPtr ctx, int dim, std::vector<std::vector<Poly>> entries)
    : ctx_(std::move(ctx)), dim_(dim), mat_(std::move(entries)) {
    if (dim_ < 1 || dim_ > ctx_->ncoords())
        throw VarError("tensor dimension exceeds coordinate count");
    if (static_cast<int>(mat_.size()) != dim_)
        throw VarError("tensor matrix has wrong number of rows");
    for (const auto& row : mat_) {
        if (static_cast<int>(row.size()) != dim_)
            throw VarError("tensor matrix has wrong number of columns");
        for (const auto& entry : row) require_same_context(ctx_, entry.context());
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            if (!(mat_[i][j] + mat_[j][i]).is_zero())
                throw VarError("tensor is not antisymmetric at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
}

PoissonTensor PoissonTensor::zero(ContextPtr ctx, int dim) {
    std::vector<std::vector<Poly>> m(dim, std::vector<Poly>(dim, Poly::zero(ctx)));
    return PoissonTensor(std::move(ctx), dim, std::move(m));
}

PoissonTensor PoissonTensor::from_upper(ContextPtr ctx, int dim,
                                        const std::vector<std::tuple<int, int, Poly>>& upper) {
    std::vector<std::vector<Poly>> m(dim, std::vector<Poly>(dim, Poly::zero(ctx)));
    for (const auto& [i, j, p] : upper) {
        if (i < 0 || j < 0 || i >= dim || j >= dim || i == j)
            throw VarError("invalid upper-triangle index");
        m[i][j] = p;
        m[j][i] = -p;
    }
    return PoissonTensor(std::move(ctx), dim, std::move(m));
}

PoissonTensor PoissonTensor::parse(ContextPtr ctx, int dim,
                                   const std::vector<std::vector<std::string>>& entries) {
    std::vector<std::vector<Poly>> m(dim, std::vector<Poly>(dim, Poly::zero(ctx)));
    if (static_cast<int>(entries.size()) != dim) throw VarError("matrix has wrong number of rows");
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(entries[i].size()) != dim)
            throw VarError("matrix has wrong number of columns");
        for (int j = 0; j < dim; ++j) m[i][j] = Poly::parse(ctx, entries[i][j]);
    }
    return PoissonTensor(std::move(ctx), dim, std::move(m));
}

bool PoissonTensor::operator==(const PoissonTensor& other) const {
    if (dim_ != other.dim_ || !same_context(ctx_, other.ctx_)) return false;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (mat_[i][j] != other.mat_[i][j]) return false;
    return true;
}

PoissonTensor PoissonTensor::operator+(const PoissonTensor& other) const {
    require_same_context(ctx_, other.ctx_);
    if (dim_ != other.dim_) throw VarError("tensor dimension mismatch");
    auto m = mat_;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m[i][j] += other.mat_[i][j];
    return PoissonTensor(ctx_, dim_, std::move(m));
}

PoissonTensor PoissonTensor::scaled(const Poly& factor) const {
    auto m = mat_;
    for (auto& row : m)
        for (auto& entry : row) entry *= factor;
    return PoissonTensor(ctx_, dim_, std::move(m));
}

PoissonTensor PoissonTensor::read_in_fiber() const {
    auto m = mat_;
    for (auto& row : m)
        for (auto& entry : row) entry = entry.read_in_fiber();
    return PoissonTensor(ctx_, dim_, std::move(m));
}

bool PoissonTensor::depends_on(int symbol_index) const {
    for (const auto& row : mat_)
        for (const auto& entry : row)
            if (entry.depends_on(symbol_index)) return true;
    return false;
}

bool PoissonTensor::is_linear_in_coords() const {
    for (const auto& row : mat_)
        for (const auto& entry : row)
            if (entry.coord_degree() > 1) return false;
    return true;
}

bool PoissonTensor::is_constant() const {
    for (const auto& row : mat_)
        for (const auto& entry : row)
            if (entry.coord_degree() > 0) return false;
    return true;
}

VecField VecField::zero(ContextPtr c, int dim) {
    return {c, std::vector<Poly>(dim, Poly::zero(c))};
}

VecField VecField::coordinate(ContextPtr c, int dim, int direction) {
    auto v = zero(c, dim);
    v.comps[direction] = Poly::constant(c, 1);
    return v;
}

OneForm OneForm::zero(ContextPtr c, int dim) {
    return {c, std::vector<Poly>(dim, Poly::zero(c))};
}

OneForm OneForm::coordinate(ContextPtr c, int dim, int direction) {
    auto a = zero(c, dim);
    a.comps[direction] = Poly::constant(c, 1);
    return a;
}

Poly poisson_bracket(const PoissonTensor& pi, const Poly& f, const Poly& g) {
    require_same_context(pi.context(), f.context());
    require_same_context(pi.context(), g.context());
    const int n = pi.dim();
    std::vector<Poly> df(n), dg(n);
    for (int i = 0; i < n; ++i) {
        df[i] = f.diff(i);
        dg[i] = g.diff(i);
    }
    Poly sum = Poly::zero(pi.context());
    for (int i = 0; i < n; ++i) {
        if (df[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (i == j || dg[j].is_zero() || pi.at(i, j).is_zero()) continue;
            sum += pi.at(i, j) * df[i] * dg[j];
        }
    }
    return sum;
}

IdentityReport jacobiator(const PoissonTensor& pi) {
    const int n = pi.dim();
    IdentityReport report;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                Poly acc = Poly::zero(pi.context());
                for (int s = 0; s < n; ++s) {
                    acc += pi.at(i, j).diff(s) * pi.at(s, k);
                    acc += pi.at(k, i).diff(s) * pi.at(s, j);
                    acc += pi.at(j, k).diff(s) * pi.at(s, i);
                }
                report.add({i + 1, j + 1, k + 1}, "jacobi", std::move(acc));
            }
        }
    }
    return report;
}

bool is_poisson(const PoissonTensor& pi) { return jacobiator(pi).ok(); }

IdentityReport schouten_compatible(const PoissonTensor& pi1, const PoissonTensor& pi2) {
    require_same_context(pi1.context(), pi2.context());
    if (pi1.dim() != pi2.dim()) throw VarError("tensor dimension mismatch");
    const int n = pi1.dim();
    IdentityReport report;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                Poly acc = Poly::zero(pi1.context());
                for (int s = 0; s < n; ++s) {
                    acc += pi2.at(s, k) * pi1.at(i, j).diff(s);
                    acc += pi1.at(s, k) * pi2.at(i, j).diff(s);
                    acc += pi2.at(s, j) * pi1.at(k, i).diff(s);
                    acc += pi1.at(s, j) * pi2.at(k, i).diff(s);
                    acc += pi2.at(s, i) * pi1.at(j, k).diff(s);
                    acc += pi1.at(s, i) * pi2.at(j, k).diff(s);
                }
                report.add({i + 1, j + 1, k + 1}, "schouten", std::move(acc));
            }
        }
    }
    return report;
}

std::vector<std::vector<Poly>> lie_derivative(const PoissonTensor& pi, const VecField& v) {
    require_same_context(pi.context(), v.ctx);
    const int n = pi.dim();
    if (v.dim() != n) throw VarError("vector field dimension mismatch");
    std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n, Poly::zero(pi.context())));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Poly acc = Poly::zero(pi.context());
            for (int s = 0; s < n; ++s) {
                acc += v.comps[s] * pi.at(i, j).diff(s);
                acc -= pi.at(s, j) * v.comps[i].diff(s);
                acc -= pi.at(i, s) * v.comps[j].diff(s);
            }
            out[i][j] = std::move(acc);
        }
    }
    return out;
}

bool matrix_is_zero(const std::vector<std::vector<Poly>>& m) {
    for (const auto& row : m)
        for (const auto& entry : row)
            if (!entry.is_zero()) return false;
    return true;
}

IdentityReport is_casimir(const PoissonTensor& pi, const Poly& c) {
    require_same_context(pi.context(), c.context());
    const int n = pi.dim();
    std::vector<Poly> grad(n);
    for (int s = 0; s < n; ++s) grad[s] = c.diff(s);
    IdentityReport report;
    for (int j = 0; j < n; ++j) {
        Poly acc = Poly::zero(pi.context());
        for (int s = 0; s < n; ++s) {
            if (!grad[s].is_zero()) acc += pi.at(j, s) * grad[s];
        }
        report.add({j + 1}, "casimir", std::move(acc));
    }
    return report;
}

IdentityReport in_involution(const PoissonTensor& pi, const FunctionFamily& family) {
    IdentityReport report;
    const int n = static_cast<int>(family.entries.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Poly b = poisson_bracket(pi, family.entries[i].second, family.entries[j].second);
            report.add({i + 1, j + 1},
                       "involution " + family.entries[i].first + "," + family.entries[j].first,
                       std::move(b));
        }
    }
    return report;
}

VecField hamiltonian_vf(const PoissonTensor& pi, const Poly& H) {
    require_same_context(pi.context(), H.context());
    const int n = pi.dim();
    std::vector<Poly> grad(n);
    for (int s = 0; s < n; ++s) grad[s] = H.diff(s);
    VecField field = VecField::zero(pi.context(), n);
    for (int j = 0; j < n; ++j) {
        for (int s = 0; s < n; ++s) {
            if (!grad[s].is_zero()) field.comps[j] += pi.at(j, s) * grad[s];
        }
    }
    return field;
}

}  // namespace plift
