#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plift/poly.hpp"

namespace plift {

// One failing instance of an identity: where it failed (1-based indices as
// they appear in the formulas), which condition, and the nonzero residual.
struct Witness {
    std::vector<int> indices;
    std::string tag;
    Poly residual;
};

class IdentityReport {
  public:
    bool ok() const { return witnesses_.empty(); }
    const std::vector<Witness>& witnesses() const { return witnesses_; }

    void add(std::vector<int> indices, std::string tag, Poly residual) {
        if (residual.is_zero()) return;
        witnesses_.push_back({std::move(indices), std::move(tag), std::move(residual)});
    }
    void merge(const IdentityReport& other) {
        witnesses_.insert(witnesses_.end(), other.witnesses_.begin(), other.witnesses_.end());
    }

    std::string summary(std::size_t max_entries = 4) const;

  private:
    std::vector<Witness> witnesses_;
};

// Named list of polynomial functions with a role tag.
struct FunctionFamily {
    enum class Role { casimir, involution, hamiltonian };
    Role role = Role::casimir;
    std::vector<std::pair<std::string, Poly>> entries;
};

}  // namespace plift
