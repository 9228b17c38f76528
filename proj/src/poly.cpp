#include "plift/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace plift {

int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw EvalError("zero denominator in rational literal");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool neg = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    if (digits.empty()) throw EvalError("malformed decimal literal: " + text);
    boost::multiprecision::cpp_int num(digits);
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

Poly Poly::zero(ContextPtr ctx) { return Poly(std::move(ctx)); }

Poly Poly::constant(ContextPtr ctx, const Rational& c) {
    Poly p(std::move(ctx));
    if (c != 0) p.terms_.emplace(Exponents(p.ctx_->nsymbols(), 0), c);
    return p;
}

Poly Poly::variable(ContextPtr ctx, const std::string& name) {
    int idx = ctx->index_of(name);
    if (idx < 0) throw VarError("unknown symbol: " + name);
    Exponents e(ctx->nsymbols(), 0);
    e[idx] = 1;
    return monomial(std::move(ctx), 1, e);
}

Poly Poly::monomial(ContextPtr ctx, const Rational& coeff, const Exponents& exps) {
    if (static_cast<int>(exps.size()) != ctx->nsymbols())
        throw VarError("exponent vector length does not match context");
    Poly p(std::move(ctx));
    if (coeff != 0) p.terms_.emplace(exps, coeff);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw EvalError("polynomial is not constant");
    return terms_.begin()->second;
}

bool Poly::operator==(const Poly& other) const {
    require_same_context(ctx_, other.ctx_);
    return terms_ == other.terms_;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& other) {
    require_same_context(ctx_, other.ctx_);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    require_same_context(ctx_, other.ctx_);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_context(a.ctx_, b.ctx_);
    Poly r(a.ctx_);
    Exponents e(a.ctx_->nsymbols(), 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(ctx_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [e, coeff] : r.terms_) coeff *= c;
    return r;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw EvalError("negative power");
    Poly r = Poly::constant(ctx_, 1);
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
}

Poly Poly::diff(const std::string& var) const {
    int idx = ctx_->index_of(var);
    if (idx < 0) throw VarError("unknown symbol: " + var);
    return diff(idx);
}

Poly Poly::diff(int symbol_index) const {
    if (!ctx_->is_coord(symbol_index))
        throw VarError("cannot differentiate with respect to parameter '" +
                       ctx_->symbol(symbol_index) + "'");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        if (e[symbol_index] == 0) continue;
        Exponents de = e;
        de[symbol_index] -= 1;
        r.add_term(de, c * e[symbol_index]);
    }
    return r;
}

int Poly::total_deg() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

int Poly::degree_in(int symbol_index) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[symbol_index]);
    return d;
}

bool Poly::depends_on(int symbol_index) const {
    for (const auto& [e, c] : terms_)
        if (e[symbol_index] > 0) return true;
    return false;
}

int Poly::coord_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int i = 0; i < ctx_->ncoords(); ++i) t += e[i];
        d = std::max(d, t);
    }
    return d;
}

Poly Poly::substitute(const std::map<int, Poly>& images) const {
    for (const auto& [idx, img] : images) {
        if (idx < 0 || idx >= ctx_->nsymbols()) throw VarError("substitution index out of range");
        require_same_context(ctx_, img.context());
    }
    Poly result = Poly::zero(ctx_);
    for (const auto& [e, c] : terms_) {
        Exponents kept = e;
        Poly factor = Poly::constant(ctx_, 1);
        for (const auto& [idx, img] : images) {
            if (e[idx] > 0) {
                factor *= img.pow(e[idx]);
                kept[idx] = 0;
            }
        }
        result += Poly::monomial(ctx_, c, kept) * factor;
    }
    return result;
}

Poly Poly::substitute(int symbol_index, const Rational& value) const {
    return substitute({{symbol_index, Poly::constant(ctx_, value)}});
}

Poly Poly::read_in_fiber() const {
    const int n = ctx_->nbase();
    if (ctx_->nfiber() != n) throw VarError("context has no matching fiber variables");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        for (int i = 0; i < n; ++i) {
            if (ne[i] == 0) continue;
            if (ne[n + i] != 0) throw VarError("polynomial already involves fiber variables");
            ne[n + i] = ne[i];
            ne[i] = 0;
        }
        r.add_term(ne, c);
    }
    return r;
}

Poly Poly::in_context(const ContextPtr& target) const {
    if (same_context(ctx_, target)) return *this;
    std::vector<int> remap(ctx_->nsymbols());
    for (int i = 0; i < ctx_->nsymbols(); ++i) {
        remap[i] = target->index_of(ctx_->symbol(i));
    }
    Poly r(target);
    for (const auto& [e, c] : terms_) {
        Exponents ne(target->nsymbols(), 0);
        for (int i = 0; i < ctx_->nsymbols(); ++i) {
            if (e[i] == 0) continue;
            if (remap[i] < 0)
                throw VarError("target context lacks symbol '" + ctx_->symbol(i) + "'");
            ne[remap[i]] = e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

Rational Poly::eval_exact(const std::map<std::string, Rational>& assignment) const {
    std::vector<Rational> values(ctx_->nsymbols());
    for (int i = 0; i < ctx_->nsymbols(); ++i) {
        auto it = assignment.find(ctx_->symbol(i));
        if (it == assignment.end()) {
            if (depends_on(i)) throw EvalError("missing assignment for '" + ctx_->symbol(i) + "'");
            values[i] = 0;
        } else {
            values[i] = it->second;
        }
    }
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < ctx_->nsymbols(); ++i)
            for (int k = 0; k < e[i]; ++k) term *= values[i];
        sum += term;
    }
    return sum;
}

double Poly::eval(const std::vector<double>& symbol_values) const {
    if (static_cast<int>(symbol_values.size()) != ctx_->nsymbols())
        throw EvalError("value vector length does not match context");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = to_double(c);
        for (std::size_t i = 0; i < symbol_values.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) term *= symbol_values[i];
        }
        sum += term;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string render_monomial(const VarContext& ctx, const Exponents& e) {
    std::string out;
    auto append = [&](int i) {
        if (e[i] == 0) return;
        if (!out.empty()) out += "*";
        out += ctx.symbol(i);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    };
    // parameters print first, the way coefficients are written
    for (int i = ctx.ncoords(); i < ctx.nsymbols(); ++i) append(i);
    for (int i = 0; i < ctx.ncoords(); ++i) append(i);
    return out;
}

}  // namespace

std::string Poly::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono = render_monomial(*ctx_, it->first);
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing: expr := ['-'] term (('+'|'-') term)*
//          term := factor ('*' factor)*
//          factor := atom ['^' uint]
//          atom := rational | name | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

class Parser {
  public:
    Parser(ContextPtr ctx, std::string_view text) : ctx_(std::move(ctx)), text_(text) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly expr() {
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else if (eat('+')) {}
        Poly acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent", at);
            return base.pow(std::stoi(digits));
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", at);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            if (eat('/')) {
                skip_ws();
                std::size_t dat = pos_;
                std::string den = read_digits();
                if (den.empty()) throw ParseError("expected denominator", dat);
                if (den.find_first_not_of('0') == std::string::npos)
                    throw ParseError("zero denominator", dat);
                return Poly::constant(ctx_, rational_from_string(num + "/" + den));
            }
            return Poly::constant(ctx_, rational_from_string(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = read_name();
            if (ctx_->index_of(name) < 0) throw ParseError("unknown identifier '" + name + "'", at);
            return Poly::variable(ctx_, name);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            out += text_[pos_++];
        return out;
    }

    std::string read_name() {
        std::string out;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            out += text_[pos_++];
        return out;
    }

    ContextPtr ctx_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(ContextPtr ctx, std::string_view text) {
    return Parser(std::move(ctx), text).run();
}

}  // namespace plift
