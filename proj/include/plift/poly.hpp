#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plift/context.hpp"
#include "plift/rational.hpp"

namespace plift {

// One exponent per context symbol (coordinates first, then parameters).
using Exponents = std::vector<int>;

// Graded lexicographic order: lower total degree first, ties broken by
// lexicographic comparison of the exponent vector. Used both as the term-map
// comparator and (reversed) as the deterministic rendering order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

// Exact multivariate polynomial with rational coefficients over a declared
// variable context. Canonical form: the term map never stores a zero
// coefficient, so equal polynomials have identical maps. Immutable in
// practice: all operations return new values.
class Poly {
  public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Poly() = default;  // empty shell; only assignment is valid on it

    static Poly zero(ContextPtr ctx);
    static Poly constant(ContextPtr ctx, const Rational& c);
    static Poly variable(ContextPtr ctx, const std::string& name);
    static Poly monomial(ContextPtr ctx, const Rational& coeff, const Exponents& exps);

    // Grammar: integers, rationals p/q, declared names, + - * ^ and
    // parentheses; '*' is mandatory between factors.
    static Poly parse(ContextPtr ctx, std::string_view text);

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant value of a degree-0 polynomial (zero poly -> 0).
    Rational constant_value() const;

    bool operator==(const Poly& other) const;
    bool operator!=(const Poly& other) const { return !(*this == other); }

    Poly operator-() const;
    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& other) { return *this = *this * other; }
    Poly operator*(const Rational& c) const;
    friend Poly operator*(const Rational& c, const Poly& p) { return p * c; }
    Poly pow(int n) const;

    // Exact partial derivative; `var` must be a coordinate, not a parameter.
    Poly diff(const std::string& var) const;
    Poly diff(int symbol_index) const;

    int total_deg() const;
    int degree_in(int symbol_index) const;
    bool depends_on(int symbol_index) const;
    // Total degree counting coordinate symbols only (parameters weigh zero).
    int coord_degree() const;

    // Simultaneous substitution symbol -> polynomial (all in this context).
    Poly substitute(const std::map<int, Poly>& images) const;
    // Substitution of a single symbol by an exact rational constant.
    Poly substitute(int symbol_index, const Rational& value) const;
    // x_i -> y_i for every base variable (context must have matching fiber).
    Poly read_in_fiber() const;

    // Rebuild this polynomial in another context containing all symbols it
    // uses (matched by name).
    Poly in_context(const ContextPtr& target) const;

    // Every symbol (including parameters) must be assigned.
    Rational eval_exact(const std::map<std::string, Rational>& assignment) const;
    // values[i] corresponds to context symbol i, size == nsymbols().
    double eval(const std::vector<double>& symbol_values) const;

    // Deterministic rendering: graded-lex descending, variables in context
    // order inside each monomial. parse(render(p)) == p.
    std::string render() const;

  private:
    explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    void add_term(const Exponents& e, const Rational& c);

    ContextPtr ctx_;
    TermMap terms_;
};

}  // namespace plift
