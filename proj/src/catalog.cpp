#include "plift/catalog.hpp"

#include <cmath>

namespace plift::catalog {

namespace {

const std::vector<std::string> kNames = {"A3,1", "A3,2", "A3,3", "A3,4", "A3,5",
                                         "A3,6", "A3,7", "A3,8", "A3,9"};

int index_of_name(const std::string& name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<int>(i);
    throw UnknownAlgebraError("unknown algebra: " + name);
}

// (i, j, k, value): coefficient of e_k in [e_i, e_j], 1-based, "a" marks the
// parameter slot.
struct ConstEntry {
    int i, j, k;
    int value;  // 0 encodes the parameter itself
};

struct AlgebraData {
    const char* range;
    std::vector<ConstEntry> entries;
    const char* invariant;
};

const AlgebraData kData[9] = {
    // A3,1: [e2,e3] = e1
    {"", {{2, 3, 1, 1}}, "e1"},
    // A3,2: [e1,e3] = e1, [e2,e3] = e1 + e2
    {"", {{1, 3, 1, 1}, {2, 3, 1, 1}, {2, 3, 2, 1}}, "e1*exp(-e2/e1)"},
    // A3,3: [e1,e3] = e1, [e2,e3] = e2
    {"", {{1, 3, 1, 1}, {2, 3, 2, 1}}, "e2/e1"},
    // A3,4: [e1,e3] = e1, [e2,e3] = -e2
    {"", {{1, 3, 1, 1}, {2, 3, 2, -1}}, "e1*e2"},
    // A3,5: [e1,e3] = e1, [e2,e3] = a e2
    {"0<|a|<1", {{1, 3, 1, 1}, {2, 3, 2, 0}}, "e2*e1^(-a)"},
    // A3,6: [e1,e3] = -e2, [e2,e3] = e1
    {"", {{1, 3, 2, -1}, {2, 3, 1, 1}}, "e1^2+e2^2"},
    // A3,7: [e1,e3] = a e1 - e2, [e2,e3] = e1 + a e2
    {"a>0",
     {{1, 3, 1, 0}, {1, 3, 2, -1}, {2, 3, 1, 1}, {2, 3, 2, 0}},
     "(e1^2+e2^2)*exp(-2*a*atan2(e2,e1))"},
    // A3,8: [e1,e3] = -2 e2, [e1,e2] = e1, [e2,e3] = e3
    {"", {{1, 3, 2, -2}, {1, 2, 1, 1}, {2, 3, 3, 1}}, "2*e2^2+2*e1*e3"},
    // A3,9: [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2
    {"", {{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, 1}}, "e1^2+e2^2+e3^2"},
};

StructureConstants build_constants(int idx, const ContextPtr& ctx,
                                   const std::string& param_symbol) {
    StructureConstants c(3, std::vector<std::vector<Poly>>(
                                3, std::vector<Poly>(3, Poly::zero(ctx))));
    for (const auto& e : kData[idx].entries) {
        Poly v = e.value == 0 ? Poly::variable(ctx, param_symbol)
                              : Poly::constant(ctx, e.value);
        c[e.i - 1][e.j - 1][e.k - 1] = v;
        c[e.j - 1][e.i - 1][e.k - 1] = -v;
    }
    return c;
}

// Deterministic draws used by the guarded samplers.
double magnitude(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}
double signed_magnitude(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_int_distribution<int> s(0, 1);
    return (s(rng) ? 1.0 : -1.0) * magnitude(rng, lo, hi);
}

}  // namespace

const std::vector<std::string>& names() { return kNames; }

bool has_parameter(const std::string& name) {
    int idx = index_of_name(name);
    return idx == 4 || idx == 6;  // A3,5 and A3,7
}

ContextPtr algebra_context(const std::string& name, std::vector<std::string> extra_params) {
    std::vector<std::string> params;
    if (has_parameter(name)) params.push_back("a");
    for (auto& p : extra_params) params.push_back(std::move(p));
    return VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, std::move(params));
}

ContextPtr pair_context(const std::string& first, const std::string& second,
                        std::vector<std::string> extra_params) {
    std::vector<std::string> params;
    if (has_parameter(first)) params.push_back("a");
    if (has_parameter(second) && second != first) params.push_back("b");
    for (auto& p : extra_params) params.push_back(std::move(p));
    return VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, std::move(params));
}

PoissonTensor lie_poisson(const StructureConstants& constants, const ContextPtr& ctx) {
    const int n = static_cast<int>(constants.size());
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Poly& c = constants[i][j][k];
                if (!c.is_zero()) m[i][j] += c * Poly::variable(ctx, ctx->base_vars()[k]);
            }
        }
    }
    PoissonTensor pi(ctx, n, std::move(m));
    auto report = jacobiator(pi);
    if (!report.ok())
        throw NotPoissonError("structure constants violate the Jacobi identity; " +
                              report.summary());
    return pi;
}

AlgebraEntry get_algebra(const std::string& name, const ContextPtr& ctx,
                         const std::string& param_symbol) {
    const int idx = index_of_name(name);
    LieAlgebra3 alg;
    alg.name = name;
    alg.has_parameter = has_parameter(name);
    alg.parameter_range = kData[idx].range;
    alg.constants = build_constants(idx, ctx, param_symbol);
    alg.invariant_text = kData[idx].invariant;
    PoissonTensor pi = lie_poisson(alg.constants, ctx);
    return AlgebraEntry{std::move(alg), std::move(pi)};
}

PoissonTensor tensor(const std::string& name, const ContextPtr& ctx,
                     const std::string& param_symbol) {
    return get_algebra(name, ctx, param_symbol).tensor;
}

std::vector<InvariantSpec> invariant_specs(const std::string& name, const ContextPtr& ctx) {
    const int idx = index_of_name(name);
    InvariantSpec spec;
    spec.text = kData[idx].invariant;

    auto box = [](double lo, double hi) {
        return [lo, hi](std::mt19937_64& rng) {
            return std::vector<double>{signed_magnitude(rng, lo, hi),
                                       signed_magnitude(rng, lo, hi),
                                       signed_magnitude(rng, lo, hi)};
        };
    };

    switch (idx) {
        case 0:
            spec.poly = Poly::parse(ctx, "x1");
            break;
        case 1:
            spec.kind = InvariantSpec::Kind::numeric;
            spec.fn = [](const std::vector<double>& z, double) {
                return z[0] * std::exp(-z[1] / z[0]);
            };
            // same-sign ratio below 1 keeps the exponential tame
            spec.sample = [](std::mt19937_64& rng) {
                double x1 = signed_magnitude(rng, 0.75, 1.5);
                return std::vector<double>{x1, magnitude(rng, 0.0, 1.0) * x1,
                                           signed_magnitude(rng, 0.5, 1.5)};
            };
            break;
        case 2:
            spec.kind = InvariantSpec::Kind::numeric;
            spec.fn = [](const std::vector<double>& z, double) { return z[1] / z[0]; };
            spec.sample = [](std::mt19937_64& rng) {
                return std::vector<double>{signed_magnitude(rng, 1.0, 1.5),
                                           signed_magnitude(rng, 0.5, 0.75),
                                           signed_magnitude(rng, 0.5, 1.5)};
            };
            break;
        case 3:
            spec.poly = Poly::parse(ctx, "x1*x2");
            break;
        case 4:
            spec.kind = InvariantSpec::Kind::numeric;
            spec.fn = [](const std::vector<double>& z, double a) {
                return z[1] * std::pow(z[0], -a);
            };
            // real power needs a positive base
            spec.sample = [](std::mt19937_64& rng) {
                return std::vector<double>{magnitude(rng, 1.0, 1.5),
                                           signed_magnitude(rng, 0.5, 1.0),
                                           signed_magnitude(rng, 0.5, 1.5)};
            };
            break;
        case 5:
            spec.poly = Poly::parse(ctx, "x1^2 + x2^2");
            break;
        case 6:
            // real form of the complex-power invariant; no exact polynomial
            // representation exists, so this stays numeric and best-effort
            spec.kind = InvariantSpec::Kind::numeric;
            spec.best_effort = true;
            spec.tol = 1e-8;
            spec.fn = [](const std::vector<double>& z, double a) {
                return (z[0] * z[0] + z[1] * z[1]) * std::exp(-2.0 * a * std::atan2(z[1], z[0]));
            };
            // right half-plane, clear of the atan2 branch cut
            spec.sample = [](std::mt19937_64& rng) {
                return std::vector<double>{magnitude(rng, 1.0, 1.5),
                                           signed_magnitude(rng, 0.5, 0.75),
                                           signed_magnitude(rng, 0.5, 1.5)};
            };
            break;
        case 7:
            spec.poly = Poly::parse(ctx, "2*x2^2 + 2*x1*x3");
            break;
        case 8:
            spec.poly = Poly::parse(ctx, "x1^2 + x2^2 + x3^2");
            break;
    }
    if (!spec.sample) spec.sample = box(0.5, 1.5);
    if (spec.poly && !spec.fn) {
        Poly p = *spec.poly;
        const int nsym = ctx->nsymbols();
        spec.fn = [p, nsym](const std::vector<double>& z, double a) {
            std::vector<double> symbols(nsym, a);  // parameters (if any) get a
            for (std::size_t i = 0; i < z.size(); ++i) symbols[i] = z[i];
            return p.eval(symbols);
        };
    }
    return {spec};
}

Table compatibility_matrix() {
    Table table;
    table.labels = kNames;
    table.cells.resize(9);
    for (int i = 0; i < 9; ++i) table.cells[i].resize(9);
    for (int i = 0; i < 9; ++i) {
        for (int j = i; j < 9; ++j) {
            auto ctx = pair_context(kNames[i], kNames[j]);
            PoissonTensor first = tensor(kNames[i], ctx, "a");
            PoissonTensor second =
                tensor(kNames[j], ctx, (i == j || !has_parameter(kNames[j])) ? "a" : "b");
            auto report = schouten_compatible(first, second);
            table.cells[i][j].report = report;
            table.cells[j][i].report = std::move(report);
        }
    }
    return table;
}

Table semidirect_table(SemidirectVariant variant) {
    Table table;
    table.labels = kNames;
    table.cells.resize(9);
    for (int i = 0; i < 9; ++i) table.cells[i].resize(9);
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            auto ctx = pair_context(kNames[i], kNames[j]);
            PoissonTensor first = tensor(kNames[i], ctx, "a");
            PoissonTensor second =
                tensor(kNames[j], ctx, (i == j || !has_parameter(kNames[j])) ? "a" : "b");
            table.cells[i][j].report = check_semidirect_conditions(first, second, variant);
        }
    }
    return table;
}

namespace {

std::vector<std::vector<bool>> parse_table(const char* const rows[9]) {
    std::vector<std::vector<bool>> t(9);
    for (int i = 0; i < 9; ++i)
        for (const char* p = rows[i]; *p; ++p) t[i].push_back(*p == 'Y');
    return t;
}

}  // namespace

const std::vector<std::vector<bool>>& expected_compatibility() {
    static const char* const rows[9] = {
        "YYYYYYYYY",
        "YYYYYYYNN",
        "YYYYYYYNN",
        "YYYYYYYYY",
        "YYYYYYYNN",
        "YYYYYYYYY",
        "YYYYYYYNN",
        "YNNYNYNYY",
        "YNNYNYNYY",
    };
    static const auto table = parse_table(rows);
    return table;
}

const std::vector<std::vector<bool>>& expected_semidirect_v1() {
    static const char* const rows[9] = {
        "YYYNNNNNN",
        "YYYNNNNNN",
        "YYYYYYYNN",
        "NNYYYNNNN",
        "NNYYYNNNN",
        "NNYNNYYNN",
        "NNYNNYYNN",
        "NNNNNNNYN",
        "NNNNNNNNY",
    };
    static const auto table = parse_table(rows);
    return table;
}

std::vector<InvariantCheck> verify_invariants(unsigned seed, int npoints, double param_value) {
    std::vector<InvariantCheck> out;
    std::mt19937_64 rng(seed);
    for (const auto& name : kNames) {
        auto ctx = algebra_context(name);
        PoissonTensor pi = tensor(name, ctx);
        for (const auto& spec : invariant_specs(name, ctx)) {
            InvariantCheck check;
            check.algebra = name;
            check.invariant = spec.text;
            check.exact = spec.kind == InvariantSpec::Kind::exact;
            check.best_effort = spec.best_effort;
            check.max_residual = 0.0;
            if (check.exact) {
                check.ok = is_casimir(pi, *spec.poly).ok();
            } else {
                std::vector<std::vector<double>> points;
                points.reserve(npoints);
                for (int k = 0; k < npoints; ++k) points.push_back(spec.sample(rng));
                NumericCasimirOptions opts;
                opts.tol = spec.tol;
                opts.param_values.assign(ctx->nparams(), param_value);
                auto fn = [&spec, param_value](const std::vector<double>& z) {
                    return spec.fn(z, param_value);
                };
                auto result = is_casimir_numeric(pi, fn, points, opts);
                check.ok = result.ok;
                check.max_residual = result.max_residual;
            }
            out.push_back(std::move(check));
        }
    }
    return out;
}

StructureConstants a616_structure_constants(const ContextPtr& ctx) {
    StructureConstants c(6, std::vector<std::vector<Poly>>(6, std::vector<Poly>(6, Poly::zero(ctx))));
    auto set = [&](int i, int j, int k) {
        c[i - 1][j - 1][k - 1] = Poly::constant(ctx, 1);
        c[j - 1][i - 1][k - 1] = Poly::constant(ctx, -1);
    };
    set(1, 3, 4);
    set(1, 4, 5);
    set(1, 5, 6);
    set(2, 3, 5);
    set(2, 4, 6);
    return c;
}

IdentityReport check_pushforward(const PoissonTensor& lifted,
                                 const StructureConstants& target_constants,
                                 const std::vector<Poly>& new_coords) {
    const auto& ctx = lifted.context();
    const int n = static_cast<int>(new_coords.size());
    IdentityReport report;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            Poly lhs = poisson_bracket(lifted, new_coords[a], new_coords[b]);
            Poly rhs = Poly::zero(ctx);
            for (int k = 0; k < n; ++k) {
                const Poly& cabk = target_constants[a][b][k];
                if (!cabk.is_zero()) rhs += cabk * new_coords[k];
            }
            report.add({a + 1, b + 1}, "pushforward", lhs - rhs);
        }
    }
    return report;
}

}  // namespace plift::catalog
