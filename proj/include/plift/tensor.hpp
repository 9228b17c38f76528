#pragma once

#include <functional>
#include <vector>

#include "plift/poly.hpp"
#include "plift/report.hpp"

namespace plift {

// Antisymmetric dim x dim matrix of polynomials over the first `dim`
// coordinates of its context. A tensor on the base manifold has
// dim == nbase(); a lifted tensor on the tangent bundle has dim == ncoords().
// Antisymmetry is enforced at construction; entries are immutable afterwards.
class PoissonTensor {
  public:
    PoissonTensor(ContextPtr ctx, int dim, std::vector<std::vector<Poly>> entries);

    static PoissonTensor zero(ContextPtr ctx, int dim);
    // Build from the strict upper triangle; the rest follows by antisymmetry.
    static PoissonTensor from_upper(ContextPtr ctx, int dim,
                                    const std::vector<std::tuple<int, int, Poly>>& upper);
    // Entries parsed from strings, full matrix.
    static PoissonTensor parse(ContextPtr ctx, int dim,
                               const std::vector<std::vector<std::string>>& entries);

    const ContextPtr& context() const { return ctx_; }
    int dim() const { return dim_; }
    const Poly& at(int i, int j) const { return mat_[i][j]; }

    bool operator==(const PoissonTensor& other) const;

    PoissonTensor operator+(const PoissonTensor& other) const;
    PoissonTensor scaled(const Poly& factor) const;
    // Entries with x_i replaced by y_i (context must carry fiber variables).
    PoissonTensor read_in_fiber() const;

    bool depends_on(int symbol_index) const;
    // Every entry of total degree <= 1 in the coordinates.
    bool is_linear_in_coords() const;
    bool is_constant() const;

  private:
    ContextPtr ctx_;
    int dim_;
    std::vector<std::vector<Poly>> mat_;
};

// Contravariant / covariant component tuples. Size must match the dim of the
// tensors they are used with.
struct VecField {
    ContextPtr ctx;
    std::vector<Poly> comps;

    static VecField zero(ContextPtr c, int dim);
    // Constant unit field along the given coordinate.
    static VecField coordinate(ContextPtr c, int dim, int direction);
    int dim() const { return static_cast<int>(comps.size()); }
};

struct OneForm {
    ContextPtr ctx;
    std::vector<Poly> comps;

    static OneForm zero(ContextPtr c, int dim);
    static OneForm coordinate(ContextPtr c, int dim, int direction);  // dx_direction
    int dim() const { return static_cast<int>(comps.size()); }
};

// {f,g} = sum_{i,j} pi_ij df/dz_i dg/dz_j.
Poly poisson_bracket(const PoissonTensor& pi, const Poly& f, const Poly& g);

// Componentwise Jacobi system over triples i<j<k; ok iff all residuals are
// identically zero.
IdentityReport jacobiator(const PoissonTensor& pi);
bool is_poisson(const PoissonTensor& pi);

// Vanishing of the mixed six-term sum over triples i<j<k (equivalent to the
// pencil pi1 + t*pi2 being Poisson for every t).
IdentityReport schouten_compatible(const PoissonTensor& pi1, const PoissonTensor& pi2);

// (L_v pi)_ij = sum_s ( v_s d pi_ij/dz_s - pi_sj dv_i/dz_s - pi_is dv_j/dz_s ).
std::vector<std::vector<Poly>> lie_derivative(const PoissonTensor& pi, const VecField& v);
bool matrix_is_zero(const std::vector<std::vector<Poly>>& m);

// sum_s pi_js dc/dz_s == 0 for every row j.
IdentityReport is_casimir(const PoissonTensor& pi, const Poly& c);

// All pairs {f_i, f_j} == 0.
IdentityReport in_involution(const PoissonTensor& pi, const FunctionFamily& family);

// Hamiltonian vector field, component j: {z_j, H} = sum_s pi_js dH/dz_s.
// Sign fixed so that linear-tensor dynamics reproduce the textbook equations
// of motion (zdot_j = {z_j, H}).
VecField hamiltonian_vf(const PoissonTensor& pi, const Poly& H);

}  // namespace plift
