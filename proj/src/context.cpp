#include "plift/context.hpp"

namespace plift {

ContextPtr VarContext::make(std::vector<std::string> base, std::vector<std::string> fiber,
                            std::vector<std::string> params) {
    if (base.empty()) throw VarError("context needs at least one base variable");
    auto ctx = std::shared_ptr<VarContext>(new VarContext());
    ctx->base_ = std::move(base);
    ctx->fiber_ = std::move(fiber);
    ctx->params_ = std::move(params);
    int idx = 0;
    for (const auto* group : {&ctx->base_, &ctx->fiber_, &ctx->params_}) {
        for (const auto& name : *group) {
            if (name.empty()) throw VarError("empty symbol name");
            if (!ctx->index_.emplace(name, idx).second)
                throw VarError("duplicate symbol name: " + name);
            ++idx;
        }
    }
    return ctx;
}

const std::string& VarContext::symbol(int idx) const {
    if (idx < 0 || idx >= nsymbols()) throw VarError("symbol index out of range");
    if (idx < nbase()) return base_[idx];
    idx -= nbase();
    if (idx < nfiber()) return fiber_[idx];
    return params_[idx - nfiber()];
}

int VarContext::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

}  // namespace plift
