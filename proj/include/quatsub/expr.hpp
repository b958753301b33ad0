#ifndef QUATSUB_EXPR_HPP
#define QUATSUB_EXPR_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatsub {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Second-order forward-mode jet: value, gradient, and exact symmetric Hessian.
struct Jet2 {
    double v = 0.0;
    VectorXd g;
    MatrixXd h;

    Jet2() = default;
    explicit Jet2(int n) : v(0.0), g(VectorXd::Zero(n)), h(MatrixXd::Zero(n, n)) {}

    static Jet2 constant(double c, int n) {
        Jet2 j(n);
        j.v = c;
        return j;
    }
    static Jet2 variable(double x, int i, int n) {
        Jet2 j(n);
        j.v = x;
        j.g(i) = 1.0;
        return j;
    }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v += b.v;
    r.g += b.g;
    r.h += b.h;
    return r;
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v -= b.v;
    r.g -= b.g;
    r.h -= b.h;
    return r;
}
inline Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v = -r.v;
    r.g = -r.g;
    r.h = -r.h;
    return r;
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(static_cast<int>(a.g.size()));
    r.v = a.v * b.v;
    r.g = a.g * b.v + b.g * a.v;
    r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
}

// f(u) with f', f'' supplied by the caller.
inline Jet2 unary_chain(const Jet2& u, double f, double df, double ddf) {
    Jet2 r(static_cast<int>(u.g.size()));
    r.v = f;
    r.g = df * u.g;
    r.h = df * u.h + ddf * (u.g * u.g.transpose());
    return r;
}

inline Jet2 jet_inv(const Jet2& u) {
    if (u.v == 0.0) throw DomainError("division by zero");
    double iv = 1.0 / u.v;
    return unary_chain(u, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * jet_inv(b); }

inline Jet2 jet_sqrt(const Jet2& u) {
    if (u.v <= 0.0) throw DomainError("sqrt of non-positive value");
    double s = std::sqrt(u.v);
    return unary_chain(u, s, 0.5 / s, -0.25 / (s * u.v));
}
inline Jet2 jet_exp(const Jet2& u) {
    double e = std::exp(u.v);
    return unary_chain(u, e, e, e);
}
inline Jet2 jet_log(const Jet2& u) {
    if (u.v <= 0.0) throw DomainError("log of non-positive value");
    return unary_chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}
inline Jet2 jet_sin(const Jet2& u) {
    return unary_chain(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v));
}
inline Jet2 jet_cos(const Jet2& u) {
    return unary_chain(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
}
inline Jet2 jet_powi(const Jet2& u, long long n) {
    if (n == 0) return Jet2::constant(1.0, static_cast<int>(u.g.size()));
    if (n < 0) {
        if (u.v == 0.0) throw DomainError("zero raised to negative power");
        return jet_inv(jet_powi(u, -n));
    }
    double f = std::pow(u.v, static_cast<double>(n));
    double df = static_cast<double>(n) * std::pow(u.v, static_cast<double>(n - 1));
    double ddf = (n >= 2)
                     ? static_cast<double>(n) * static_cast<double>(n - 1) *
                           std::pow(u.v, static_cast<double>(n - 2))
                     : 0.0;
    return unary_chain(u, f, df, ddf);
}

// ---------------------------------------------------------------------------
// Expression AST

enum class ExprKind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Exp, Log, Sin, Cos };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double number = 0.0;       // Number
    int var = -1;              // Variable (0-based)
    long long exponent = 0;    // Pow
    ExprPtr lhs, rhs;

    static ExprPtr num(double v) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Number;
        e->number = v;
        return e;
    }
    static ExprPtr variable(int i) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Variable;
        e->var = i;
        return e;
    }
    static ExprPtr node(ExprKind k, ExprPtr a, ExprPtr b = nullptr) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }
    static ExprPtr pow(ExprPtr a, long long n) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Pow;
        e->lhs = std::move(a);
        e->exponent = n;
        return e;
    }
};

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Number: return a->number == b->number;
        case ExprKind::Variable: return a->var == b->var;
        case ExprKind::Pow:
            return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
        default:
            return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

inline double eval_value(const Expr& e, const VectorXd& p) {
    switch (e.kind) {
        case ExprKind::Number: return e.number;
        case ExprKind::Variable: return p(e.var);
        case ExprKind::Add: return eval_value(*e.lhs, p) + eval_value(*e.rhs, p);
        case ExprKind::Sub: return eval_value(*e.lhs, p) - eval_value(*e.rhs, p);
        case ExprKind::Mul: return eval_value(*e.lhs, p) * eval_value(*e.rhs, p);
        case ExprKind::Div: {
            double d = eval_value(*e.rhs, p);
            if (d == 0.0) throw DomainError("division by zero");
            return eval_value(*e.lhs, p) / d;
        }
        case ExprKind::Neg: return -eval_value(*e.lhs, p);
        case ExprKind::Pow: return std::pow(eval_value(*e.lhs, p), static_cast<double>(e.exponent));
        case ExprKind::Sqrt: {
            double u = eval_value(*e.lhs, p);
            if (u < 0.0) throw DomainError("sqrt of negative value");
            return std::sqrt(u);
        }
        case ExprKind::Exp: return std::exp(eval_value(*e.lhs, p));
        case ExprKind::Log: {
            double u = eval_value(*e.lhs, p);
            if (u <= 0.0) throw DomainError("log of non-positive value");
            return std::log(u);
        }
        case ExprKind::Sin: return std::sin(eval_value(*e.lhs, p));
        case ExprKind::Cos: return std::cos(eval_value(*e.lhs, p));
    }
    throw std::logic_error("unreachable expression kind");
}

inline Jet2 eval_jet(const Expr& e, const VectorXd& p) {
    const int n = static_cast<int>(p.size());
    switch (e.kind) {
        case ExprKind::Number: return Jet2::constant(e.number, n);
        case ExprKind::Variable: return Jet2::variable(p(e.var), e.var, n);
        case ExprKind::Add: return eval_jet(*e.lhs, p) + eval_jet(*e.rhs, p);
        case ExprKind::Sub: return eval_jet(*e.lhs, p) - eval_jet(*e.rhs, p);
        case ExprKind::Mul: return eval_jet(*e.lhs, p) * eval_jet(*e.rhs, p);
        case ExprKind::Div: return eval_jet(*e.lhs, p) / eval_jet(*e.rhs, p);
        case ExprKind::Neg: return -eval_jet(*e.lhs, p);
        case ExprKind::Pow: return jet_powi(eval_jet(*e.lhs, p), e.exponent);
        case ExprKind::Sqrt: return jet_sqrt(eval_jet(*e.lhs, p));
        case ExprKind::Exp: return jet_exp(eval_jet(*e.lhs, p));
        case ExprKind::Log: return jet_log(eval_jet(*e.lhs, p));
        case ExprKind::Sin: return jet_sin(eval_jet(*e.lhs, p));
        case ExprKind::Cos: return jet_cos(eval_jet(*e.lhs, p));
    }
    throw std::logic_error("unreachable expression kind");
}

// Canonical printing. Reparsing the output yields a structurally equal AST.
inline void print_expr(const Expr& e, std::ostream& os) {
    auto paren = [&](const Expr& c) {
        os << '(';
        print_expr(c, os);
        os << ')';
    };
    switch (e.kind) {
        case ExprKind::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << e.number;
            os << tmp.str();
            break;
        }
        case ExprKind::Variable: os << 'x' << (e.var + 1); break;
        case ExprKind::Add: paren(*e.lhs); os << " + "; paren(*e.rhs); break;
        case ExprKind::Sub: paren(*e.lhs); os << " - "; paren(*e.rhs); break;
        case ExprKind::Mul: paren(*e.lhs); os << "*"; paren(*e.rhs); break;
        case ExprKind::Div: paren(*e.lhs); os << "/"; paren(*e.rhs); break;
        case ExprKind::Neg: os << "-"; paren(*e.lhs); break;
        case ExprKind::Pow: paren(*e.lhs); os << "^";
            if (e.exponent < 0) os << '(' << e.exponent << ')';
            else os << e.exponent;
            break;
        case ExprKind::Sqrt: os << "sqrt"; paren(*e.lhs); break;
        case ExprKind::Exp: os << "exp"; paren(*e.lhs); break;
        case ExprKind::Log: os << "log"; paren(*e.lhs); break;
        case ExprKind::Sin: os << "sin"; paren(*e.lhs); break;
        case ExprKind::Cos: os << "cos"; paren(*e.lhs); break;
    }
}

inline std::string to_string(const ExprPtr& e) {
    std::ostringstream os;
    print_expr(*e, os);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser: identifiers x1..xN, + - * / ^ (integer exponents), parentheses,
// sqrt/exp/log/sin/cos, decimal and scientific literals.

namespace detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    double number = 0.0;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) { tok_.kind = Tok::End; return; }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++pos_; ++col_;
        };
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '^': single(Tok::Caret); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case ',': single(Tok::Comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t save = pos_;
                ++pos_;
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        ++pos_;
                } else {
                    pos_ = save;
                }
            }
            tok_.kind = Tok::Number;
            tok_.text = src_.substr(start, pos_ - start);
            try {
                size_t used = 0;
                tok_.number = std::stod(tok_.text, &used);
                if (used != tok_.text.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + tok_.text + "'", line_, col_);
            }
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
  public:
    Parser(const std::string& src, int domain_dim) : lex_(src), dim_(domain_dim) {}

    std::vector<ExprPtr> parse_list() {
        std::vector<ExprPtr> out;
        out.push_back(parse_expr());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            out.push_back(parse_expr());
        }
        expect_end();
        return out;
    }

    ExprPtr parse_single() {
        ExprPtr e = parse_expr();
        expect_end();
        return e;
    }

  private:
    void expect_end() {
        if (lex_.peek().kind != Tok::End)
            throw ParseError("unexpected token '" + lex_.peek().text + "'", lex_.peek().line,
                             lex_.peek().col);
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Plus) {
                lex_.take();
                e = Expr::node(ExprKind::Add, e, parse_term());
            } else if (k == Tok::Minus) {
                lex_.take();
                e = Expr::node(ExprKind::Sub, e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Star) {
                lex_.take();
                e = Expr::node(ExprKind::Mul, e, parse_unary());
            } else if (k == Tok::Slash) {
                lex_.take();
                e = Expr::node(ExprKind::Div, e, parse_unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_unary() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return Expr::node(ExprKind::Neg, parse_unary());
        }
        if (lex_.peek().kind == Tok::Plus) {
            lex_.take();
            return parse_unary();
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (lex_.peek().kind != Tok::Caret) return base;
        lex_.take();
        return Expr::pow(base, parse_int_exponent());
    }

    long long parse_int_exponent() {
        bool neg = false;
        bool parens = false;
        if (lex_.peek().kind == Tok::LParen) {
            parens = true;
            lex_.take();
        }
        if (lex_.peek().kind == Tok::Minus) {
            neg = true;
            lex_.take();
        }
        Token t = lex_.take();
        if (t.kind != Tok::Number || t.text.find_first_of(".eE") != std::string::npos)
            throw ParseError("exponent must be an integer literal", t.line, t.col);
        long long n = std::stoll(t.text);
        if (parens) {
            Token r = lex_.take();
            if (r.kind != Tok::RParen) throw ParseError("expected ')'", r.line, r.col);
        }
        return neg ? -n : n;
    }

    ExprPtr parse_primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Number: return Expr::num(t.number);
            case Tok::LParen: {
                ExprPtr e = parse_expr();
                Token r = lex_.take();
                if (r.kind != Tok::RParen) throw ParseError("expected ')'", r.line, r.col);
                return e;
            }
            case Tok::Ident: {
                if (t.text.size() >= 2 && t.text[0] == 'x' &&
                    t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
                    int idx = std::stoi(t.text.substr(1));
                    if (idx < 1 || idx > dim_)
                        throw ParseError("variable index out of range: " + t.text, t.line, t.col);
                    return Expr::variable(idx - 1);
                }
                ExprKind fn;
                if (t.text == "sqrt") fn = ExprKind::Sqrt;
                else if (t.text == "exp") fn = ExprKind::Exp;
                else if (t.text == "log") fn = ExprKind::Log;
                else if (t.text == "sin") fn = ExprKind::Sin;
                else if (t.text == "cos") fn = ExprKind::Cos;
                else throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
                Token l = lex_.take();
                if (l.kind != Tok::LParen) throw ParseError("expected '(' after function", l.line, l.col);
                ExprPtr arg = parse_expr();
                Token r = lex_.take();
                if (r.kind != Tok::RParen) throw ParseError("expected ')'", r.line, r.col);
                return Expr::node(fn, arg);
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
        }
    }

    Lexer lex_;
    int dim_;
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& src, int domain_dim) {
    return detail::Parser(src, domain_dim).parse_single();
}

// ---------------------------------------------------------------------------
// SmoothMapSpec

using Interval = std::pair<double, double>;

struct SmoothMapSpec {
    int domain_dim = 0;
    int codomain_dim = 0;
    std::vector<ExprPtr> components;
    std::vector<Interval> domain_box;

    bool in_box(const VectorXd& p) const {
        if (domain_box.empty()) return true;
        for (int i = 0; i < domain_dim; ++i)
            if (p(i) < domain_box[i].first || p(i) > domain_box[i].second) return false;
        return true;
    }
};

inline SmoothMapSpec parse_map(const std::string& source, int domain_dim,
                               std::vector<Interval> box = {}) {
    SmoothMapSpec m;
    m.domain_dim = domain_dim;
    m.components = detail::Parser(source, domain_dim).parse_list();
    m.codomain_dim = static_cast<int>(m.components.size());
    m.domain_box = std::move(box);
    return m;
}

inline std::vector<Jet2> eval_jet2(const SmoothMapSpec& map, const VectorXd& p) {
    if (!map.in_box(p)) throw DomainError("evaluation point outside domain box");
    std::vector<Jet2> out;
    out.reserve(map.components.size());
    for (const auto& c : map.components) out.push_back(eval_jet(*c, p));
    return out;
}

inline VectorXd eval_map(const SmoothMapSpec& map, const VectorXd& p) {
    VectorXd out(map.codomain_dim);
    for (int i = 0; i < map.codomain_dim; ++i) out(i) = eval_value(*map.components[i], p);
    return out;
}

inline MatrixXd jacobian(const SmoothMapSpec& map, const VectorXd& p) {
    MatrixXd J(map.codomain_dim, map.domain_dim);
    auto jets = eval_jet2(map, p);
    for (int a = 0; a < map.codomain_dim; ++a) J.row(a) = jets[a].g.transpose();
    return J;
}

}  // namespace quatsub

#endif  // QUATSUB_EXPR_HPP
