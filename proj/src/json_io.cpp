#include "plift/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace plift {

namespace {

nlohmann::json matrix_to_json(const PoissonTensor& pi) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < pi.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < pi.dim(); ++j) row.push_back(pi.at(i, j).render());
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json base_tensor_doc(const PoissonTensor& pi) {
    const auto& ctx = pi.context();
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "tensor";
    nlohmann::json vars = nlohmann::json::array();
    for (int i = 0; i < pi.dim(); ++i) vars.push_back(ctx->symbol(i));
    doc["vars"] = std::move(vars);
    if (pi.dim() == ctx->nbase() && ctx->nfiber() > 0) doc["fiber_vars"] = ctx->fiber_vars();
    doc["params"] = ctx->params();
    doc["matrix"] = matrix_to_json(pi);
    return doc;
}

}  // namespace

nlohmann::json tensor_to_json(const PoissonTensor& pi) { return base_tensor_doc(pi); }

nlohmann::json tensor_to_json(const LiftedTensor& lifted) {
    nlohmann::json doc = base_tensor_doc(lifted.tensor);
    nlohmann::json prov;
    for (const auto& [key, value] : lifted.provenance) prov[key] = value;
    doc["provenance"] = std::move(prov);
    return doc;
}

PoissonTensor tensor_from_json(const nlohmann::json& doc) {
    if (!doc.contains("vars") || !doc.contains("matrix"))
        throw ParseError("tensor document needs 'vars' and 'matrix'", 0);
    std::vector<std::string> vars = doc["vars"].get<std::vector<std::string>>();
    std::vector<std::string> fiber;
    if (doc.contains("fiber_vars")) fiber = doc["fiber_vars"].get<std::vector<std::string>>();
    std::vector<std::string> params;
    if (doc.contains("params")) params = doc["params"].get<std::vector<std::string>>();
    auto ctx = VarContext::make(vars, fiber, params);

    const auto& matrix = doc["matrix"];
    const int dim = static_cast<int>(vars.size());
    if (static_cast<int>(matrix.size()) != dim)
        throw ParseError("tensor matrix must be square with one row per variable", 0);
    std::vector<std::vector<std::string>> entries(dim);
    for (int i = 0; i < dim; ++i) entries[i] = matrix[i].get<std::vector<std::string>>();
    return PoissonTensor::parse(ctx, dim, entries);
}

nlohmann::json report_to_json(const std::string& name, const IdentityReport& report) {
    nlohmann::json doc;
    doc["name"] = name;
    doc["ok"] = report.ok();
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : report.witnesses()) {
        nlohmann::json entry;
        entry["indices"] = w.indices;
        entry["tag"] = w.tag;
        entry["residual"] = w.residual.render();
        ws.push_back(std::move(entry));
    }
    doc["witnesses"] = std::move(ws);
    return doc;
}

nlohmann::json table_to_json(const catalog::Table& table, const std::string& kind,
                             bool with_witnesses) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "table";
    doc["table"] = kind;
    doc["labels"] = table.labels;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < table.cells[i].size(); ++j)
            row.push_back(table.yes(static_cast<int>(i), static_cast<int>(j)));
        rows.push_back(std::move(row));
    }
    doc["cells"] = std::move(rows);
    if (with_witnesses) {
        nlohmann::json ws = nlohmann::json::array();
        for (std::size_t i = 0; i < table.cells.size(); ++i)
            for (std::size_t j = 0; j < table.cells[i].size(); ++j) {
                const auto& report = table.cells[i][j].report;
                if (report.ok()) continue;
                nlohmann::json entry = report_to_json(
                    table.labels[i] + " x " + table.labels[j], report);
                entry["row"] = i;
                entry["col"] = j;
                ws.push_back(std::move(entry));
            }
        doc["witnesses"] = std::move(ws);
    }
    return doc;
}

std::string table_to_csv(const catalog::Table& table) {
    std::ostringstream os;
    os << "\"\"";
    for (const auto& label : table.labels) os << ",\"" << label << "\"";
    os << "\n";
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
        os << "\"" << table.labels[i] << "\"";
        for (std::size_t j = 0; j < table.cells[i].size(); ++j)
            os << "," << (table.yes(static_cast<int>(i), static_cast<int>(j)) ? "YES" : "NO");
        os << "\n";
    }
    return os.str();
}

std::string table_to_markdown(const catalog::Table& table) {
    std::ostringstream os;
    os << "| |";
    for (const auto& label : table.labels) os << " " << label << " |";
    os << "\n|---|";
    for (std::size_t j = 0; j < table.labels.size(); ++j) os << "---|";
    os << "\n";
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
        os << "| " << table.labels[i] << " |";
        for (std::size_t j = 0; j < table.cells[i].size(); ++j)
            os << " " << (table.yes(static_cast<int>(i), static_cast<int>(j)) ? "YES" : "NO")
               << " |";
        os << "\n";
    }
    return os.str();
}

std::string trajectory_to_csv(const Trajectory& traj, const std::vector<std::string>& var_names) {
    std::ostringstream os;
    os << "t";
    for (const auto& name : var_names) os << "," << name;
    os << "\n";
    char buf[32];
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
        os << buf;
        for (double v : traj.states[k]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
    return os.str();
}

nlohmann::json conservation_to_json(const ConservationReport& report) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "conservation";
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json entry;
        entry["name"] = e.name;
        entry["initial"] = e.initial;
        entry["max_abs_drift"] = e.max_abs_drift;
        entry["max_rel_drift"] = e.max_rel_drift;
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

}  // namespace plift
