#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "plift/errors.hpp"

namespace plift {

class VarContext;
using ContextPtr = std::shared_ptr<const VarContext>;

// Ordered symbol table shared by every polynomial in one computation:
// base coordinates x1..xN, fiber coordinates y1..yN (may be empty), and
// free parameters. Parameters belong to the coefficient ring: they are
// multiplied and compared like variables but are never differentiation
// targets. Global symbol order is base, fiber, params.
class VarContext {
  public:
    static ContextPtr make(std::vector<std::string> base,
                           std::vector<std::string> fiber = {},
                           std::vector<std::string> params = {});

    int nbase() const { return static_cast<int>(base_.size()); }
    int nfiber() const { return static_cast<int>(fiber_.size()); }
    int nparams() const { return static_cast<int>(params_.size()); }
    int ncoords() const { return nbase() + nfiber(); }
    int nsymbols() const { return ncoords() + nparams(); }

    const std::vector<std::string>& base_vars() const { return base_; }
    const std::vector<std::string>& fiber_vars() const { return fiber_; }
    const std::vector<std::string>& params() const { return params_; }

    const std::string& symbol(int idx) const;
    // -1 when the name is not declared.
    int index_of(const std::string& name) const;
    bool is_param(int idx) const { return idx >= ncoords(); }
    bool is_coord(int idx) const { return idx >= 0 && idx < ncoords(); }

    bool operator==(const VarContext& other) const {
        return base_ == other.base_ && fiber_ == other.fiber_ && params_ == other.params_;
    }

  private:
    VarContext() = default;
    std::vector<std::string> base_, fiber_, params_;
    std::unordered_map<std::string, int> index_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (!same_context(a, b)) throw ContextError("operands belong to different variable contexts");
}

}  // namespace plift
