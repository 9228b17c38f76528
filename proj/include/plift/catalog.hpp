#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "plift/lifts.hpp"
#include "plift/numeric.hpp"
#include "plift/tensor.hpp"

namespace plift::catalog {

// Structure constants c[i][j][k]: coefficient of e_{k+1} in [e_{i+1}, e_{j+1}].
using StructureConstants = std::vector<std::vector<std::vector<Poly>>>;

struct LieAlgebra3 {
    std::string name;
    bool has_parameter = false;
    std::string parameter_range;  // recorded restriction, not enforced symbolically
    StructureConstants constants;
    std::string invariant_text;
};

// The nine 3-dimensional real Lie algebras, in catalog order.
const std::vector<std::string>& names();
bool has_parameter(const std::string& name);

// Context with base x1..x3, fiber y1..y3, the algebra's parameter symbol
// (when it has one) and any extra parameter names.
ContextPtr algebra_context(const std::string& name, std::vector<std::string> extra_params = {});
// Shared context for a pair; the first algebra's parameter is "a", the
// second one's "b" (a single "a" when the names coincide).
ContextPtr pair_context(const std::string& first, const std::string& second,
                        std::vector<std::string> extra_params = {});

// Linear tensor pi_ij = sum_k c_ij^k x_k; throws NotPoissonError when the
// constants fail the Jacobi identity.
PoissonTensor lie_poisson(const StructureConstants& constants, const ContextPtr& ctx);

struct AlgebraEntry {
    LieAlgebra3 algebra;
    PoissonTensor tensor;
};
// Builds the catalog row in the given context; `param_symbol` names the
// parameter for A3,5 / A3,7.
AlgebraEntry get_algebra(const std::string& name, const ContextPtr& ctx,
                         const std::string& param_symbol = "a");
// Convenience: tensor only.
PoissonTensor tensor(const std::string& name, const ContextPtr& ctx,
                     const std::string& param_symbol = "a");

// One invariant of a catalog algebra. Exact invariants carry a polynomial;
// the rest are numeric callables with a guarded point sampler that avoids
// their singular loci.
struct InvariantSpec {
    enum class Kind { exact, numeric };
    Kind kind = Kind::exact;
    std::string text;
    bool best_effort = false;  // transcendental with no exact real form pinned
    double tol = 1e-9;
    std::optional<Poly> poly;
    std::function<double(const std::vector<double>& point, double param)> fn;
    std::function<std::vector<double>(std::mt19937_64&)> sample;
};
std::vector<InvariantSpec> invariant_specs(const std::string& name, const ContextPtr& ctx);

struct TableCell {
    IdentityReport report;
};
struct Table {
    std::vector<std::string> labels;
    std::vector<std::vector<TableCell>> cells;
    bool yes(int i, int j) const { return cells[i][j].report.ok(); }
};

// 9x9 pairwise compatibility (symmetric); parameters stay symbolic.
Table compatibility_matrix();
// 9x9 admissibility of the semidirect product, row = first factor.
Table semidirect_table(SemidirectVariant variant = SemidirectVariant::v1);

// Reference decision tables for the catalog, used by the golden checks.
const std::vector<std::vector<bool>>& expected_compatibility();
const std::vector<std::vector<bool>>& expected_semidirect_v1();

struct InvariantCheck {
    std::string algebra;
    std::string invariant;
    bool exact;
    bool best_effort;
    bool ok;
    double max_residual;  // numeric checks only
};
// Exact invariants symbolically, numeric invariants at `npoints` guarded
// random points (parameterized algebras bound to `param_value`).
std::vector<InvariantCheck> verify_invariants(unsigned seed = 0x5eed, int npoints = 20,
                                              double param_value = 0.5);

// 6-dimensional target of the semidirect identification: nonzero brackets
// [e1,e3]=e4, [e1,e4]=e5, [e1,e5]=e6, [e2,e3]=e5, [e2,e4]=e6.
StructureConstants a616_structure_constants(const ContextPtr& ctx);

// Checks that `lifted` is carried onto the Lie-Poisson tensor of
// `target_constants` by the linear coordinate change z -> new_coords(z):
// {E_a, E_b}_lifted == sum_k c_ab^k E_k entry-for-entry.
IdentityReport check_pushforward(const PoissonTensor& lifted,
                                 const StructureConstants& target_constants,
                                 const std::vector<Poly>& new_coords);

}  // namespace plift::catalog
