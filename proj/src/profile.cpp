#include "mspiral/profile.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "mspiral/errors.hpp"

namespace mspiral {

struct ProfileExpr::Node {
    enum class Kind { Number, Variable, Negate, Binary, Call };
    Kind kind = Kind::Number;
    double value = 0.0;
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

using Node = ProfileExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

std::string_view to_string(Function f) {
    switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Sinh: return "sinh";
    case Function::Cosh: return "cosh";
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
    }
    return "?";
}

std::string_view to_string(CanonicalForm::Kind k) {
    switch (k) {
    case CanonicalForm::Kind::Constant: return "constant";
    case CanonicalForm::Kind::Linear: return "linear";
    case CanonicalForm::Kind::ReciprocalLinear: return "reciprocal-linear";
    case CanonicalForm::Kind::Other: return "other";
    }
    return "?";
}

namespace {

std::optional<Function> lookup_function(std::string_view name) {
    static constexpr std::array<Function, 6> all{Function::Sin,  Function::Cos, Function::Sinh,
                                                 Function::Cosh, Function::Exp, Function::Ln};
    for (auto f : all) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty input", pos_);
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Add, lhs, term());
            } else if (peek('-')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Mul, lhs, factor());
            } else if (peek('/')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Negate;
            n->lhs = factor();
            return n;
        }
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (is_digit(c) || c == '.') return number();
        if (is_alpha(c)) return identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        std::size_t i = pos_;
        std::size_t digits = 0;
        while (i < text_.size() && is_digit(text_[i])) { ++i; ++digits; }
        if (i < text_.size() && text_[i] == '.') {
            ++i;
            while (i < text_.size() && is_digit(text_[i])) { ++i; ++digits; }
        }
        if (digits == 0) throw ParseError("malformed number", start);
        // The exponent is consumed only when it is complete.
        if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
            std::size_t j = i + 1;
            if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
            if (j < text_.size() && is_digit(text_[j])) {
                while (j < text_.size() && is_digit(text_[j])) ++j;
                i = j;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + i, v);
        if (ec != std::errc{} || ptr != text_.data() + i || !std::isfinite(v)) {
            throw ParseError("malformed number", start);
        }
        pos_ = i;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "s") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Variable;
            return n;
        }
        auto fn = lookup_function(name);
        if (!fn) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        if (!peek('(')) throw ParseError("expected '(' after function name", pos_);
        ++pos_;
        NodePtr arg = expr();
        if (!peek(')')) throw ParseError("expected ')'", pos_);
        ++pos_;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Call;
        n->fn = *fn;
        n->lhs = std::move(arg);
        return n;
    }

    static NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }
};

// Binding strength used by the printer.
int precedence(const Node& n) {
    switch (n.kind) {
    case Node::Kind::Binary: return (n.op == BinaryOp::Add || n.op == BinaryOp::Sub) ? 1 : 2;
    case Node::Kind::Negate: return 3;
    default: return 4;
    }
}

char op_char(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    }
    return '?';
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(n, out);
    if (wrap) out += ')';
}

void print(const Node& n, std::string& out) {
    switch (n.kind) {
    case Node::Kind::Number: out += format_number(n.value); break;
    case Node::Kind::Variable: out += 's'; break;
    case Node::Kind::Negate:
        out += '-';
        print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
        break;
    case Node::Kind::Call:
        out += to_string(n.fn);
        out += '(';
        print(*n.lhs, out);
        out += ')';
        break;
    case Node::Kind::Binary: {
        const int p = precedence(n);
        print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
        out += p == 1 ? std::string(" ") + op_char(n.op) + " " : std::string(1, op_char(n.op));
        // Left associativity: an equal-precedence right operand needs parentheses.
        print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
        break;
    }
    }
}

void sexpr(const Node& n, std::string& out) {
    switch (n.kind) {
    case Node::Kind::Number: out += format_number(n.value); break;
    case Node::Kind::Variable: out += 's'; break;
    case Node::Kind::Negate:
        out += "(neg ";
        sexpr(*n.lhs, out);
        out += ')';
        break;
    case Node::Kind::Call:
        out += '(';
        out += to_string(n.fn);
        out += ' ';
        sexpr(*n.lhs, out);
        out += ')';
        break;
    case Node::Kind::Binary:
        out += '(';
        out += op_char(n.op);
        out += ' ';
        sexpr(*n.lhs, out);
        out += ' ';
        sexpr(*n.rhs, out);
        out += ')';
        break;
    }
}

std::string describe(const Node& n) {
    std::string s;
    print(n, s);
    return s;
}

[[noreturn]] void domain_fail(const Node& n, double s, const std::string& what) {
    std::ostringstream msg;
    msg << what << " in '" << describe(n) << "' at s=" << format_number(s);
    throw DomainError(msg.str(), s);
}

double eval_node(const Node& n, double s) {
    double r = 0.0;
    switch (n.kind) {
    case Node::Kind::Number: return n.value;
    case Node::Kind::Variable: return s;
    case Node::Kind::Negate: return -eval_node(*n.lhs, s);
    case Node::Kind::Binary: {
        const double l = eval_node(*n.lhs, s);
        const double rr = eval_node(*n.rhs, s);
        switch (n.op) {
        case BinaryOp::Add: r = l + rr; break;
        case BinaryOp::Sub: r = l - rr; break;
        case BinaryOp::Mul: r = l * rr; break;
        case BinaryOp::Div:
            if (rr == 0.0) domain_fail(n, s, "division by zero");
            r = l / rr;
            break;
        }
        break;
    }
    case Node::Kind::Call: {
        const double a = eval_node(*n.lhs, s);
        switch (n.fn) {
        case Function::Sin: r = std::sin(a); break;
        case Function::Cos: r = std::cos(a); break;
        case Function::Sinh: r = std::sinh(a); break;
        case Function::Cosh: r = std::cosh(a); break;
        case Function::Exp: r = std::exp(a); break;
        case Function::Ln:
            if (!(a > 0.0)) domain_fail(n, s, "logarithm of non-positive argument");
            r = std::log(a);
            break;
        }
        break;
    }
    }
    if (!std::isfinite(r)) domain_fail(n, s, "non-finite result");
    return r;
}

bool same(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Node::Kind::Number: return a.value == b.value;
    case Node::Kind::Variable: return true;
    case Node::Kind::Negate: return same(*a.lhs, *b.lhs);
    case Node::Kind::Call: return a.fn == b.fn && same(*a.lhs, *b.lhs);
    case Node::Kind::Binary: return a.op == b.op && same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
    }
    return false;
}

bool mentions_s(const Node& n) {
    switch (n.kind) {
    case Node::Kind::Number: return false;
    case Node::Kind::Variable: return true;
    case Node::Kind::Negate:
    case Node::Kind::Call: return mentions_s(*n.lhs);
    case Node::Kind::Binary: return mentions_s(*n.lhs) || mentions_s(*n.rhs);
    }
    return true;
}

struct Affine {
    double a;
    double b;
};

// Reads a*s+b off the tree when the expression is affine by construction.
std::optional<Affine> affine_of(const Node& n) {
    if (!mentions_s(n)) {
        try {
            return Affine{0.0, eval_node(n, 0.0)};
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }
    switch (n.kind) {
    case Node::Kind::Variable: return Affine{1.0, 0.0};
    case Node::Kind::Negate: {
        auto v = affine_of(*n.lhs);
        if (!v) return std::nullopt;
        return Affine{-v->a, -v->b};
    }
    case Node::Kind::Binary: {
        auto l = affine_of(*n.lhs);
        auto r = affine_of(*n.rhs);
        if (!l || !r) return std::nullopt;
        switch (n.op) {
        case BinaryOp::Add: return Affine{l->a + r->a, l->b + r->b};
        case BinaryOp::Sub: return Affine{l->a - r->a, l->b - r->b};
        case BinaryOp::Mul:
            if (l->a == 0.0) return Affine{l->b * r->a, l->b * r->b};
            if (r->a == 0.0) return Affine{r->b * l->a, r->b * l->b};
            return std::nullopt;
        case BinaryOp::Div:
            if (r->a == 0.0 && r->b != 0.0) return Affine{l->a / r->b, l->b / r->b};
            return std::nullopt;
        }
        return std::nullopt;
    }
    default: return std::nullopt;
    }
}

// k / (a*s+b) read off the tree.
std::optional<Affine> reciprocal_of(const Node& n) {
    if (n.kind == Node::Kind::Negate) {
        auto v = reciprocal_of(*n.lhs);
        if (!v) return std::nullopt;
        return Affine{-v->a, -v->b};
    }
    if (n.kind != Node::Kind::Binary || n.op != BinaryOp::Div) return std::nullopt;
    auto num = affine_of(*n.lhs);
    auto den = affine_of(*n.rhs);
    if (!num || !den || num->a != 0.0 || num->b == 0.0 || den->a == 0.0) return std::nullopt;
    return Affine{den->a / num->b, den->b / num->b};
}

}  // namespace

ProfileExpr ProfileExpr::parse(std::string_view text) { return ProfileExpr(Parser(text).run()); }

ProfileExpr ProfileExpr::number(double value) {
    if (!std::isfinite(value)) throw DomainError("profile literal must be finite", 0.0);
    // The grammar has no negative literals; keep built trees printable.
    if (std::signbit(value)) return negate(number(-value));
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->value = value;
    return ProfileExpr(std::move(n));
}

ProfileExpr ProfileExpr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Variable;
    return ProfileExpr(std::move(n));
}

ProfileExpr ProfileExpr::negate(ProfileExpr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Negate;
    n->lhs = std::move(operand.node_);
    return ProfileExpr(std::move(n));
}

ProfileExpr ProfileExpr::binary(BinaryOp op, ProfileExpr lhs, ProfileExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return ProfileExpr(std::move(n));
}

ProfileExpr ProfileExpr::call(Function fn, ProfileExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->fn = fn;
    n->lhs = std::move(arg.node_);
    return ProfileExpr(std::move(n));
}

double ProfileExpr::eval(double s) const { return eval_node(*node_, s); }

std::string ProfileExpr::to_string() const {
    std::string out;
    print(*node_, out);
    return out;
}

std::string ProfileExpr::to_sexpr() const {
    std::string out;
    sexpr(*node_, out);
    return out;
}

bool ProfileExpr::is_constant() const { return !mentions_s(*node_); }

bool operator==(const ProfileExpr& a, const ProfileExpr& b) { return same(*a.node_, *b.node_); }

CanonicalForm canonicalize(const ProfileExpr& p) {
    using Kind = CanonicalForm::Kind;
    if (auto lin = affine_of(p.node())) {
        if (lin->a == 0.0) return {Kind::Constant, {lin->b}, true};
        return {Kind::Linear, {lin->a, lin->b}, true};
    }
    if (auto rec = reciprocal_of(p.node())) {
        return {Kind::ReciprocalLinear, {rec->a, rec->b}, true};
    }

    static constexpr std::array<double, 5> probes{0.3141592, 0.7182818, 1.4142136, 2.2360680, 3.1622777};
    constexpr double tol = 1e-9;
    std::array<Sample2, 5> values{};
    try {
        for (std::size_t i = 0; i < probes.size(); ++i) values[i] = {probes[i], p.eval(probes[i])};
    } catch (const DomainError&) {
        return {Kind::Other, {}, false};
    }

    if (auto c = fit_constant(values, tol); c.ok) return {Kind::Constant, c.coefficients, false};
    if (auto l = fit_linear(values, tol); l.ok) return {Kind::Linear, l.coefficients, false};

    std::array<Sample2, 5> inverse{};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].value == 0.0) return {Kind::Other, {}, false};
        inverse[i] = {values[i].s, 1.0 / values[i].value};
    }
    if (auto r = fit_linear(inverse, tol); r.ok && r.coefficients[0] != 0.0) {
        return {Kind::ReciprocalLinear, r.coefficients, false};
    }
    return {Kind::Other, {}, false};
}

FitResult fit_constant(std::span<const Sample2> samples, double tolerance) {
    if (samples.empty()) throw NumericError("constant fit needs at least one sample");
    double mean = 0.0;
    for (const auto& p : samples) mean += p.value;
    mean /= static_cast<double>(samples.size());
    double residual = 0.0;
    for (const auto& p : samples) residual = std::max(residual, std::abs(p.value - mean));
    return {{mean}, residual, residual <= tolerance};
}

FitResult fit_linear(std::span<const Sample2> samples, double tolerance) {
    if (samples.size() < 2) throw NumericError("linear fit needs at least two samples");
    const double n = static_cast<double>(samples.size());
    double s_mean = 0.0;
    double v_mean = 0.0;
    for (const auto& p : samples) {
        s_mean += p.s;
        v_mean += p.value;
    }
    s_mean /= n;
    v_mean /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : samples) {
        const double ds = p.s - s_mean;
        sxx += ds * ds;
        sxy += ds * (p.value - v_mean);
    }
    if (!(sxx > 0.0)) throw NumericError("linear fit needs at least two distinct s values");
    const double a = sxy / sxx;
    const double b = v_mean - a * s_mean;
    double residual = 0.0;
    for (const auto& p : samples) residual = std::max(residual, std::abs(a * p.s + b - p.value));
    return {{a, b}, residual, residual <= tolerance};
}

FitResult fit_ratio_rational_linear(std::span<const Sample3> samples, double tolerance) {
    if (samples.size() < 4) throw NumericError("ratio fit needs at least four samples");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()), 4);
    bool any = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& p = samples[i];
        const auto r = static_cast<Eigen::Index>(i);
        m(r, 0) = -p.tau * p.s;
        m(r, 1) = -p.tau;
        m(r, 2) = p.kappa * p.s;
        m(r, 3) = p.kappa;
        any = any || p.kappa != 0.0 || p.tau != 0.0;
    }
    if (!any) throw NumericError("ratio fit is degenerate: curvature and torsion vanish at every sample");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::Vector4d x = svd.matrixV().col(3);
    // Fix the sign so the largest component is positive.
    Eigen::Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    if (x(imax) < 0.0) x = -x;

    const Eigen::VectorXd rows = m * x;
    const double residual = rows.cwiseAbs().maxCoeff();
    return {{x(0), x(1), x(2), x(3)}, residual, residual <= tolerance};
}

}  // namespace mspiral
