// plift - exact Poisson structures on tangent bundles: verification,
// lift constructors, classification tables and Hamiltonian dynamics.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plift/algebroid.hpp"
#include "plift/json_io.hpp"

using namespace plift;

namespace {

// Documented exit codes. Every failure prints a machine-parseable JSON error
// object to stderr.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_usage = 2,
    exit_unknown_name = 3,
    exit_parse = 4,
    exit_precondition = 5,
    exit_numeric = 6,
    exit_io = 7,
};

int fail(int code, const std::string& kind, const std::string& message) {
    nlohmann::json err;
    err["schema_version"] = kSchemaVersion;
    err["kind"] = "error";
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump(2) << "\n";
    return code;
}

void emit(const nlohmann::json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out.good()) throw Error("cannot open output file: " + out_path);
    out << doc.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out.good()) throw Error("cannot open output file: " + out_path);
    out << text;
}

constexpr const char* kCatalogPrefix = "catalog:";

bool is_catalog_source(const std::string& src) { return src.rfind(kCatalogPrefix, 0) == 0; }
std::string catalog_name(const std::string& src) { return src.substr(sizeof("catalog:") - 1); }

PoissonTensor load_file_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error("cannot open tensor file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, true);
    return tensor_from_json(doc);
}

// The catalog param symbol stays "a"; extra parameter names make room for
// lift weights (lam, eps, ...) in the context.
PoissonTensor load_tensor(const std::string& src, std::vector<std::string> extra_params) {
    if (is_catalog_source(src))
        return catalog::tensor(catalog_name(src),
                               catalog::algebra_context(catalog_name(src), std::move(extra_params)));
    return load_file_tensor(src);
}

std::pair<PoissonTensor, PoissonTensor> load_pair(const std::string& src1,
                                                  const std::string& src2,
                                                  std::vector<std::string> extra_params) {
    if (is_catalog_source(src1) && is_catalog_source(src2)) {
        auto n1 = catalog_name(src1), n2 = catalog_name(src2);
        auto ctx = catalog::pair_context(n1, n2, std::move(extra_params));
        auto first = catalog::tensor(n1, ctx, "a");
        auto second = catalog::tensor(
            n2, ctx, (n1 == n2 || !catalog::has_parameter(n2)) ? "a" : "b");
        return {std::move(first), std::move(second)};
    }
    if (is_catalog_source(src2)) {
        PoissonTensor first = load_file_tensor(src1);
        return {first, catalog::tensor(catalog_name(src2), first.context())};
    }
    if (is_catalog_source(src1)) {
        PoissonTensor second = load_file_tensor(src2);
        return {catalog::tensor(catalog_name(src1), second.context()), second};
    }
    PoissonTensor first = load_file_tensor(src1);
    PoissonTensor second = load_file_tensor(src2);
    return {std::move(first), std::move(second)};
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& bindings) {
    std::map<std::string, Rational> out;
    for (const auto& binding : bindings) {
        auto eq = binding.find('=');
        if (eq == std::string::npos) throw Error("--param expects name=value: " + binding);
        out[binding.substr(0, eq)] = rational_from_string(binding.substr(eq + 1));
    }
    return out;
}

std::vector<double> parse_z0(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

VecField parse_vfield(const ContextPtr& ctx, int dim, const std::string& text) {
    VecField v = VecField::zero(ctx, dim);
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ';')) {
        if (i >= dim) throw Error("vector field has too many components");
        v.comps[i++] = Poly::parse(ctx, item);
    }
    if (i != dim) throw Error("vector field needs " + std::to_string(dim) + " components");
    return v;
}

// Monomial one-forms dx_j and x_i dx_j plus monomial functions of degree <= 2
// over the base coordinates: a spanning test set for the algebroid axioms.
std::pair<std::vector<OneForm>, std::vector<Poly>> default_axiom_sets(const ContextPtr& ctx,
                                                                      int dim) {
    std::vector<OneForm> forms;
    for (int j = 0; j < dim; ++j) forms.push_back(OneForm::coordinate(ctx, dim, j));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            OneForm f = OneForm::zero(ctx, dim);
            f.comps[j] = Poly::variable(ctx, ctx->base_vars()[i]);
            forms.push_back(f);
        }
    std::vector<Poly> fns = {Poly::constant(ctx, 1)};
    for (int i = 0; i < dim; ++i) fns.push_back(Poly::variable(ctx, ctx->base_vars()[i]));
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            fns.push_back(Poly::variable(ctx, ctx->base_vars()[i]) *
                          Poly::variable(ctx, ctx->base_vars()[j]));
    return {std::move(forms), std::move(fns)};
}

struct CheckList {
    nlohmann::json checks = nlohmann::json::array();
    bool all_ok = true;

    void add(const std::string& name, const IdentityReport& report) {
        checks.push_back(report_to_json(name, report));
        all_ok = all_ok && report.ok();
    }
    void add_flag(const std::string& name, bool ok, const std::string& detail = "") {
        nlohmann::json entry;
        entry["name"] = name;
        entry["ok"] = ok;
        if (!detail.empty()) entry["detail"] = detail;
        checks.push_back(std::move(entry));
        all_ok = all_ok && ok;
    }

    int finish(const std::string& command, const std::string& out_path) const {
        nlohmann::json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "report";
        doc["command"] = command;
        doc["ok"] = all_ok;
        doc["checks"] = checks;
        emit(doc, out_path);
        return all_ok ? exit_ok : exit_check_failed;
    }
};

// ---------------------------------------------------------------------------
// examples: the worked constructions, end to end
// ---------------------------------------------------------------------------

void run_lagrange_suite(CheckList& list, double tol) {
    auto ctx = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"w"});
    auto P = [&](const char* s) { return Poly::parse(ctx, s); };
    auto pi1 = PoissonTensor::from_upper(
        ctx, 3, {{0, 1, P("w*x3")}, {0, 2, P("-x2")}, {1, 2, P("x1")}});
    auto pi2 = PoissonTensor::from_upper(ctx, 3, {{0, 1, P("-1")}});

    list.add("pair is compatible", schouten_compatible(pi1, pi2));
    auto prod = semidirect(pi1, pi2, SemidirectVariant::v1);
    list.add("semidirect conditions", prod.conditions);
    list.add("product satisfies jacobi", jacobiator(prod.lifted.tensor));

    auto cas = semidirect_casimirs(pi1, pi2, {FunctionFamily::Role::casimir, {{"c1", P("x3")}}},
                                   {P("-1/2*(y1^2 + y2^2 + w*y3^2)")});
    for (const auto& [name, f] : cas.entries)
        list.add("casimir " + name, is_casimir(prod.lifted.tensor, f));

    auto inv = involution_family(pi1, pi2,
                                 {FunctionFamily::Role::involution,
                                  {{"H1", P("x1^2 + x2^2 + x3^2")},
                                   {"H2", P("x1^2 + x2^2 + w*x3^2")}}});
    list.add("lifted family in involution", in_involution(prod.lifted.tensor, inv));

    auto hats = hat_family(pi1, pi2,
                           {FunctionFamily::Role::involution, {{"H2", P("x1^2 + x2^2 + w*x3^2")}}},
                           {FunctionFamily::Role::involution, {{"HH1", P("x1^2 + x2^2 + x3^2")}}});
    list.add("hat family in involution", in_involution(prod.lifted.tensor, hats));

    auto small = hamiltons_equations(pi1, P("x1^2 + x2^2 + x3^2"));
    const std::vector<std::string> small_expected = {"2*w*x2*x3 - 2*x2*x3",
                                                     "-2*w*x1*x3 + 2*x1*x3", "0"};
    bool ok = true;
    for (int j = 0; j < 3; ++j) ok = ok && small.rhs[j].render() == small_expected[j];
    list.add_flag("equations of motion (base tensor)", ok);

    auto h = P("1/2*(x1^2 + x2^2 + x3^2) + (w - 1)*y3*(x1*y1 + x2*y2 + w*x3*y3)");
    auto sys = hamiltons_equations(prod.lifted.tensor, h);
    const std::vector<std::string> top_expected = {
        "x2*y3 - x3*y2",  "-x1*y3 + x3*y1",          "x1*y2 - x2*y1",
        "-w*y2*y3 + y2*y3 - x2", "w*y1*y3 - y1*y3 + x1", "0"};
    ok = true;
    for (int j = 0; j < 6; ++j) ok = ok && sys.rhs[j].render() == top_expected[j];
    list.add_flag("equations of motion (lifted tensor)", ok);

    const std::map<std::string, Rational> params = {{"w", 2}};
    auto traj = integrate_rk4(sys, {1, 0, 0.5, 0, 1, 0.3}, 1e-3, 10.0, params);
    FunctionFamily constants{FunctionFamily::Role::casimir,
                             {{"c1", P("y3")},
                              {"c1~", P("x3 - 1/2*(y1^2 + y2^2 + w*y3^2)")},
                              {"H2^", P("2*x1*y1 + 2*x2*y2 + 2*w*x3*y3")},
                              {"HH1", P("x1^2 + x2^2 + x3^2")}}};
    auto report = conservation_report(traj, constants, params);
    for (const auto& e : report.entries) {
        std::ostringstream detail;
        detail << "rel drift " << e.max_rel_drift;
        list.add_flag("conserved " + e.name, e.max_rel_drift <= tol, detail.str());
    }
}

void run_tables_suite(CheckList& list) {
    for (const auto& name : catalog::names()) {
        auto ctx = catalog::algebra_context(name);
        list.add("jacobi " + name, jacobiator(catalog::tensor(name, ctx)));
    }
    auto compat = catalog::compatibility_matrix();
    const auto& compat_expected = catalog::expected_compatibility();
    int mismatches = 0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (compat.yes(i, j) != compat_expected[i][j]) ++mismatches;
    list.add_flag("compatibility table reproduced", mismatches == 0,
                  std::to_string(mismatches) + " mismatching cells");

    auto semi = catalog::semidirect_table();
    const auto& semi_expected = catalog::expected_semidirect_v1();
    mismatches = 0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (semi.yes(i, j) != semi_expected[i][j]) ++mismatches;
    list.add_flag("semidirect table reproduced", mismatches == 0,
                  std::to_string(mismatches) + " mismatching cells");

    for (const auto& check : catalog::verify_invariants()) {
        std::ostringstream detail;
        if (!check.exact) detail << "max residual " << check.max_residual;
        list.add_flag("invariant " + check.algebra + ": " + check.invariant, check.ok,
                      detail.str());
    }
}

void run_sixdim_suite(CheckList& list) {
    {
        auto ctx = catalog::pair_context("A3,3", "A3,1");
        auto prod = semidirect(catalog::tensor("A3,3", ctx), catalog::tensor("A3,1", ctx),
                               SemidirectVariant::v1);
        list.add("A3,3 x A3,1 conditions", prod.conditions);
        list.add("A3,3 x A3,1 jacobi", jacobiator(prod.lifted.tensor));
        list.add("casimir y1", is_casimir(prod.lifted.tensor, Poly::parse(ctx, "y1")));
        list.add("casimir cubic",
                 is_casimir(prod.lifted.tensor,
                            Poly::parse(ctx, "1/3*x1^3 - x1*y1*y2 + x2*y1^2")));
        std::vector<Poly> coords = {Poly::parse(ctx, "x3"),  Poly::parse(ctx, "-y3"),
                                    Poly::parse(ctx, "-x2"), Poly::parse(ctx, "y2"),
                                    Poly::parse(ctx, "-x1"), Poly::parse(ctx, "y1")};
        list.add("six-dimensional identification",
                 catalog::check_pushforward(prod.lifted.tensor,
                                            catalog::a616_structure_constants(ctx), coords));
    }
    {
        auto ctx = catalog::pair_context("A3,2", "A3,1");
        auto prod = semidirect(catalog::tensor("A3,2", ctx), catalog::tensor("A3,1", ctx),
                               SemidirectVariant::v1);
        list.add("A3,2 x A3,1 conditions", prod.conditions);
        list.add("A3,2 x A3,1 jacobi", jacobiator(prod.lifted.tensor));
        list.add("casimir y1", is_casimir(prod.lifted.tensor, Poly::parse(ctx, "y1")));
        list.add("casimir cubic",
                 is_casimir(prod.lifted.tensor,
                            Poly::parse(ctx, "1/3*x1^3 - x1*y1*(y1 + y2) + x2*y1^2")));
        std::vector<Poly> coords = {Poly::parse(ctx, "x3"),      Poly::parse(ctx, "-y3"),
                                    Poly::parse(ctx, "-x2"),     Poly::parse(ctx, "y1 + y2"),
                                    Poly::parse(ctx, "-x1"),     Poly::parse(ctx, "y1")};
        list.add("six-dimensional identification",
                 catalog::check_pushforward(prod.lifted.tensor,
                                            catalog::a616_structure_constants(ctx), coords));
    }
    {
        auto ctx = catalog::algebra_context("A3,9");
        auto a39 = catalog::tensor("A3,9", ctx);
        auto prod = semidirect(a39, a39, SemidirectVariant::v1);
        list.add("A3,9 x A3,9 conditions", prod.conditions);
        list.add("A3,9 x A3,9 jacobi", jacobiator(prod.lifted.tensor));
        list.add("tangent lift of A3,9 jacobi", jacobiator(tangent_lift(a39).tensor));
    }
}

void run_deformations_suite(CheckList& list) {
    auto ctx = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"lam", "eps"});
    auto P = [&](const char* s) { return Poly::parse(ctx, s); };
    auto e2 = PoissonTensor::from_upper(ctx, 3, {{0, 2, P("-x2")}, {1, 2, P("x1")}});
    auto a34 = PoissonTensor::from_upper(ctx, 3, {{0, 2, P("x1")}, {1, 2, P("-x2")}});

    auto first = lift_point_deform(e2, P("eps*(x1^2 + x2^2)"), 3, PointArg::of_x);
    list.add("point deformation jacobi", jacobiator(first.tensor));
    auto fam1 = lifted_casimirs({FunctionFamily::Role::casimir, {{"c1", P("x1^2 + x2^2")}}});
    for (const auto& [name, f] : fam1.entries)
        list.add("point deformation casimir " + name, is_casimir(first.tensor, f));

    auto second = lift_point_deform(e2, P("eps*(x1^2 + x2^2)"), 3, PointArg::of_x, a34, "lam");
    list.add("compatible-pair deformation jacobi", jacobiator(second.tensor));
    auto fam2 = lifted_casimirs_biham(a34, e2,
                                      {FunctionFamily::Role::casimir, {{"c1", P("x1^2 + x2^2")}}},
                                      {P("-2*x1*x2")}, "lam", SideCondition::f_under_second);
    for (const auto& [name, f] : fam2.entries)
        list.add("compatible-pair casimir " + name, is_casimir(second.tensor, f));

    auto third =
        lift_linear_family(e2, P("eps*(x1^2 + x2^2)"), 3, "lam", LinearVariant::tilde_cx);
    list.add("linear family jacobi", jacobiator(third.tensor));
    auto fam3 = casimirs_linear_family({FunctionFamily::Role::casimir, {{"c1", P("x1^2 + x2^2")}}},
                                       "lam", CasimirShift::difference);
    for (const auto& [name, f] : fam3.entries)
        list.add("linear family casimir " + name, is_casimir(third.tensor, f));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "plift: exact Poisson structures on tangent bundles.\n"
        "Tensors are addressed as catalog:NAME (e.g. catalog:A3,9) or as paths\n"
        "to JSON tensor documents (see docs/schemas.md)."};
    app.footer(
        "Exit codes: 0 all checks passed; 1 a verification failed; 2 usage error;\n"
        "3 unknown catalog/constructor name; 4 input parse error; 5 precondition\n"
        "violated; 6 numeric failure; 7 I/O error. Errors print a JSON object to\n"
        "stderr.");
    app.require_subcommand(1);

    std::string tensor_src, tensor2_src, casimir_text, vfield_text, out_path;
    std::string format = "csv", kind = "compat", variant = "v1", which = "all";
    std::string constructor, arg_kind = "of_x", lam_name = "lam", eps_name = "eps";
    std::string hamiltonian_text, z0_text;
    std::vector<std::string> param_bindings, extra_params = {"lam", "eps", "mu"};
    std::vector<std::string> conserve_specs;
    int p_index = 3;
    double dt = 1e-3, horizon = 10.0, tol = 1e-8;
    bool do_jacobi = false, do_schouten = false, do_axioms = false, with_witnesses = false;

    auto* verify = app.add_subcommand("verify", "run symbolic identity checks on tensors");
    verify->add_option("--tensor", tensor_src, "tensor source")->required();
    verify->add_option("--tensor2", tensor2_src, "second tensor (for --schouten)");
    verify->add_flag("--jacobi", do_jacobi, "check the Jacobi system");
    verify->add_option("--casimir", casimir_text, "candidate Casimir polynomial");
    verify->add_flag("--schouten", do_schouten, "check compatibility with --tensor2");
    verify->add_flag("--algebroid-axioms", do_axioms,
                     "verify the deformed-bracket axioms (needs --casimir, --vfield)");
    verify->add_option("--vfield", vfield_text,
                       "symmetry field components, ';'-separated polynomials");
    verify->add_option("--out", out_path, "write the JSON report here instead of stdout");

    auto* lift = app.add_subcommand("lift", "build a lifted tensor and emit its JSON document");
    lift->add_option("--constructor", constructor,
                     "tangent | cv | biham | point | linear | biham-eps | semidirect")
        ->required();
    lift->add_option("--tensor", tensor_src, "tensor source")->required();
    lift->add_option("--tensor2", tensor2_src, "partner tensor (biham/biham-eps/semidirect)");
    lift->add_option("--casimir", casimir_text, "deformation Casimir polynomial");
    lift->add_option("--vfield", vfield_text, "symmetry field for the cv constructor");
    lift->add_option("--p", p_index, "deformation index (1-based)");
    lift->add_option("--arg", arg_kind, "of_x | of_y (point constructor)");
    lift->add_option("--variant", variant,
                     "tilde_cx | tilde_cy | dtilde_cx | dtilde_cy | v1 | v2");
    lift->add_option("--lam-name", lam_name, "parameter symbol for the pencil weight");
    lift->add_option("--eps-name", eps_name, "parameter symbol for the second weight");
    lift->add_option("--params", extra_params,
                     "extra parameter symbols available in catalog contexts");
    lift->add_option("--out", out_path, "write the tensor document here instead of stdout");

    auto* table = app.add_subcommand("table", "reproduce the 9x9 classification tables");
    table->add_option("--kind", kind, "compat | semidirect")->required();
    table->add_option("--variant", variant, "v1 | v2 (semidirect only)");
    table->add_option("--format", format, "csv | md | json");
    table->add_flag("--witnesses", with_witnesses, "include residuals (json format)");
    table->add_option("--out", out_path, "write the table here instead of stdout");

    auto* integrate = app.add_subcommand("integrate", "integrate Hamiltonian dynamics");
    integrate->add_option("--tensor", tensor_src, "tensor source")->required();
    integrate->add_option("--hamiltonian", hamiltonian_text, "Hamiltonian polynomial")
        ->required();
    integrate->add_option("--z0", z0_text, "initial state, comma-separated")->required();
    integrate->add_option("--dt", dt, "step size");
    integrate->add_option("--T", horizon, "integration horizon");
    integrate->add_option("--param", param_bindings, "parameter binding name=value");
    integrate->add_option("--conserve", conserve_specs,
                          "conserved quantity to track, name=polynomial");
    integrate->add_option("--out", out_path, "write the trajectory CSV here");

    auto* examples = app.add_subcommand("examples", "run the worked example suites end to end");
    examples->add_option("--which", which, "lagrange | tables | sixdim | deformations | all");
    examples->add_option("--tol", tol, "relative drift tolerance for conserved quantities");
    examples->add_option("--out", out_path, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_usage;
    }

    try {
        if (verify->parsed()) {
            CheckList list;
            PoissonTensor pi = load_tensor(tensor_src, extra_params);
            if (do_jacobi) list.add("jacobi", jacobiator(pi));
            if (!casimir_text.empty() && !do_axioms)
                list.add("casimir", is_casimir(pi, Poly::parse(pi.context(), casimir_text)));
            if (do_schouten) {
                if (tensor2_src.empty()) throw Error("--schouten needs --tensor2");
                auto [first, second] = load_pair(tensor_src, tensor2_src, extra_params);
                list.add("schouten", schouten_compatible(first, second));
            }
            if (do_axioms) {
                if (casimir_text.empty() || vfield_text.empty())
                    throw Error("--algebroid-axioms needs --casimir and --vfield");
                Poly cas = Poly::parse(pi.context(), casimir_text);
                VecField v = parse_vfield(pi.context(), pi.dim(), vfield_text);
                list.add("algebroid hypotheses", check_algebroid_hypotheses(pi, cas, v));
                auto [forms, fns] = default_axiom_sets(pi.context(), pi.dim());
                list.add("algebroid axioms", verify_algebroid_axioms(pi, cas, v, forms, fns));
            }
            if (list.checks.empty()) throw Error("nothing to verify: pass a check flag");
            return list.finish("verify", out_path);
        }

        if (lift->parsed()) {
            std::optional<LiftedTensor> lifted;
            auto need_casimir = [&]() {
                if (casimir_text.empty()) throw Error("constructor needs --casimir");
            };
            if (constructor == "tangent") {
                lifted = tangent_lift(load_tensor(tensor_src, extra_params));
            } else if (constructor == "cv") {
                need_casimir();
                if (vfield_text.empty()) throw Error("cv constructor needs --vfield");
                PoissonTensor pi = load_tensor(tensor_src, extra_params);
                lifted = lift_cv(pi, Poly::parse(pi.context(), casimir_text),
                                 parse_vfield(pi.context(), pi.dim(), vfield_text));
            } else if (constructor == "biham") {
                if (tensor2_src.empty()) throw Error("biham constructor needs --tensor2");
                auto [first, second] = load_pair(tensor_src, tensor2_src, extra_params);
                lifted = lift_biham(first, second, lam_name);
            } else if (constructor == "point") {
                need_casimir();
                PointArg arg = arg_kind == "of_y" ? PointArg::of_y : PointArg::of_x;
                if (arg_kind != "of_x" && arg_kind != "of_y")
                    throw UnknownAlgebraError("unknown --arg: " + arg_kind);
                if (tensor2_src.empty()) {
                    PoissonTensor pi = load_tensor(tensor_src, extra_params);
                    lifted = lift_point_deform(pi, Poly::parse(pi.context(), casimir_text),
                                               p_index, arg);
                } else {
                    auto [pi, partner] = load_pair(tensor_src, tensor2_src, extra_params);
                    lifted = lift_point_deform(pi, Poly::parse(pi.context(), casimir_text),
                                               p_index, arg, partner, lam_name);
                }
            } else if (constructor == "linear") {
                need_casimir();
                LinearVariant lv;
                if (variant == "tilde_cx") lv = LinearVariant::tilde_cx;
                else if (variant == "tilde_cy") lv = LinearVariant::tilde_cy;
                else if (variant == "dtilde_cx") lv = LinearVariant::dtilde_cx;
                else if (variant == "dtilde_cy") lv = LinearVariant::dtilde_cy;
                else throw UnknownAlgebraError("unknown --variant: " + variant);
                PoissonTensor pi = load_tensor(tensor_src, extra_params);
                lifted = lift_linear_family(pi, Poly::parse(pi.context(), casimir_text), p_index,
                                            lam_name, lv);
            } else if (constructor == "biham-eps") {
                need_casimir();
                if (tensor2_src.empty()) throw Error("biham-eps constructor needs --tensor2");
                auto [first, second] = load_pair(tensor_src, tensor2_src, extra_params);
                lifted = lift_biham_eps(first, second,
                                        Poly::parse(second.context(), casimir_text), p_index,
                                        lam_name, eps_name);
            } else if (constructor == "semidirect") {
                if (tensor2_src.empty()) throw Error("semidirect constructor needs --tensor2");
                SemidirectVariant sv;
                if (variant == "v1") sv = SemidirectVariant::v1;
                else if (variant == "v2") sv = SemidirectVariant::v2;
                else throw UnknownAlgebraError("unknown --variant: " + variant);
                auto [first, second] = load_pair(tensor_src, tensor2_src, extra_params);
                auto result = semidirect(first, second, sv);
                if (!result.conditions.ok())
                    return fail(exit_precondition, "conditions-violated",
                                result.conditions.summary());
                lifted = std::move(result.lifted);
            } else {
                throw UnknownAlgebraError("unknown constructor: " + constructor);
            }
            emit(tensor_to_json(*lifted), out_path);
            return exit_ok;
        }

        if (table->parsed()) {
            catalog::Table t;
            if (kind == "compat") {
                t = catalog::compatibility_matrix();
            } else if (kind == "semidirect") {
                if (variant == "v1") t = catalog::semidirect_table(SemidirectVariant::v1);
                else if (variant == "v2") t = catalog::semidirect_table(SemidirectVariant::v2);
                else throw UnknownAlgebraError("unknown --variant: " + variant);
            } else {
                throw UnknownAlgebraError("unknown table kind: " + kind);
            }
            if (format == "csv") emit_text(table_to_csv(t), out_path);
            else if (format == "md") emit_text(table_to_markdown(t), out_path);
            else if (format == "json") emit(table_to_json(t, kind, with_witnesses), out_path);
            else throw UnknownAlgebraError("unknown format: " + format);
            return exit_ok;
        }

        if (integrate->parsed()) {
            PoissonTensor pi = load_tensor(tensor_src, extra_params);
            Poly h = Poly::parse(pi.context(), hamiltonian_text);
            auto sys = hamiltons_equations(pi, h);
            auto params = parse_params(param_bindings);
            auto traj = integrate_rk4(sys, parse_z0(z0_text), dt, horizon, params);

            FunctionFamily tracked{FunctionFamily::Role::hamiltonian, {{"H", h}}};
            for (const auto& spec : conserve_specs) {
                auto eq = spec.find('=');
                if (eq == std::string::npos)
                    throw Error("--conserve expects name=polynomial: " + spec);
                tracked.entries.emplace_back(spec.substr(0, eq),
                                             Poly::parse(pi.context(), spec.substr(eq + 1)));
            }
            auto report = conservation_report(traj, tracked, params);

            if (!out_path.empty()) {
                std::vector<std::string> names;
                for (int i = 0; i < pi.dim(); ++i) names.push_back(pi.context()->symbol(i));
                emit_text(trajectory_to_csv(traj, names), out_path);
            }
            emit(conservation_to_json(report), "");
            return exit_ok;
        }

        if (examples->parsed()) {
            CheckList list;
            if (which == "lagrange" || which == "all") run_lagrange_suite(list, tol);
            if (which == "tables" || which == "all") run_tables_suite(list);
            if (which == "sixdim" || which == "all") run_sixdim_suite(list);
            if (which == "deformations" || which == "all") run_deformations_suite(list);
            if (list.checks.empty())
                throw UnknownAlgebraError("unknown example suite: " + which);
            return list.finish("examples", out_path);
        }
    } catch (const ParseError& e) {
        return fail(exit_parse, "parse-error", e.what());
    } catch (const UnknownAlgebraError& e) {
        return fail(exit_unknown_name, "unknown-name", e.what());
    } catch (const NotPoissonError& e) {
        return fail(exit_precondition, "not-poisson", e.what());
    } catch (const NotCompatibleError& e) {
        return fail(exit_precondition, "not-compatible", e.what());
    } catch (const NotCasimirError& e) {
        return fail(exit_precondition, "not-casimir", e.what());
    } catch (const DependsOnCoordError& e) {
        return fail(exit_precondition, "depends-on-coordinate", e.what());
    } catch (const NotLinearError& e) {
        return fail(exit_precondition, "not-linear", e.what());
    } catch (const NotLinearTensorError& e) {
        return fail(exit_precondition, "not-linear-tensor", e.what());
    } catch (const NotHomogeneousError& e) {
        return fail(exit_precondition, "not-homogeneous", e.what());
    } catch (const SideConditionError& e) {
        return fail(exit_precondition, "side-condition", e.what());
    } catch (const PreconditionError& e) {
        return fail(exit_precondition, "precondition", e.what());
    } catch (const DivergenceError& e) {
        return fail(exit_numeric, "divergence", e.what());
    } catch (const InsufficientSamplesError& e) {
        return fail(exit_numeric, "insufficient-samples", e.what());
    } catch (const EvalError& e) {
        return fail(exit_numeric, "eval-error", e.what());
    } catch (const VarError& e) {
        return fail(exit_parse, "symbol-error", e.what());
    } catch (const ContextError& e) {
        return fail(exit_parse, "context-error", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(exit_parse, "json-error", e.what());
    } catch (const Error& e) {
        return fail(exit_io, "error", e.what());
    }
    return exit_usage;
}
