#include "ifslab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace ifslab {

namespace {

ExprPtr make(NodeKind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

}  // namespace

Expr Expr::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Const;
    n->value = v;
    return Expr(n);
}

Expr Expr::variable() { return Expr(make(NodeKind::Var)); }
Expr Expr::add(const Expr& a, const Expr& b) { return Expr(make(NodeKind::Add, a.node, b.node)); }
Expr Expr::sub(const Expr& a, const Expr& b) { return Expr(make(NodeKind::Sub, a.node, b.node)); }
Expr Expr::mul(const Expr& a, const Expr& b) { return Expr(make(NodeKind::Mul, a.node, b.node)); }
Expr Expr::div(const Expr& a, const Expr& b) { return Expr(make(NodeKind::Div, a.node, b.node)); }
Expr Expr::neg(const Expr& a) { return Expr(make(NodeKind::Neg, a.node)); }
Expr Expr::exp_of(const Expr& a) { return Expr(make(NodeKind::Exp, a.node)); }

Expr Expr::int_pow(const Expr& a, int e) {
    if (e < 0) throw DomainError("negative exponent");
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::IntPow;
    n->exponent = e;
    n->a = a.node;
    return Expr(n);
}

Expr Expr::gauss_bump(double y, double eta) {
    if (!(eta >= 1e-300) || !std::isfinite(eta) || !std::isfinite(y))
        throw DomainError("gaussian width out of range");
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Gauss2;
    n->value = y;
    n->value2 = eta;
    return Expr(n);
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& s) : src_(s) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("empty expression", pos_);
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

  private:
    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = make(NodeKind::Add, e, parse_term());
            } else if (peek() == '-') {
                ++pos_;
                e = make(NodeKind::Sub, e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                e = make(NodeKind::Mul, e, parse_factor());
            } else if (peek() == '/') {
                ++pos_;
                e = make(NodeKind::Div, e, parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return make(NodeKind::Neg, parse_factor());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("exponent must be a nonnegative integer", pos_);
        long e = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            e = e * 10 + (src_[pos_] - '0');
            if (e > 1000000) throw SyntaxError("exponent too large", start);
            ++pos_;
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::IntPow;
        n->exponent = static_cast<int>(e);
        n->a = base;
        return n;
    }

    ExprPtr parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (c == 'x') {
            ++pos_;
            return make(NodeKind::Var);
        }
        if (c == 'e' && src_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            skip_ws();
            expect('(');
            ExprPtr e = parse_expr();
            expect(')');
            return make(NodeKind::Exp, e);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        throw SyntaxError(std::string("unexpected character '") + (c ? std::string(1, c) : "<end>") + "'",
                          pos_);
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("digit expected after decimal point", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t mark = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            } else {
                pos_ = mark;  // the 'e' belongs to something else (e.g. "2exp(x)" is an error anyway)
            }
        }
        std::string tok = src_.substr(start, pos_ - start);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) throw SyntaxError("bad numeric literal", start);
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Const;
        n->value = v;
        return n;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

// the printed (x - y)^2*exp(-((x - y)^2/eta)) pattern; parse() re-folds it
bool match_square_of_shift(const ExprNode* n, double& y) {
    if (!n || n->kind != NodeKind::IntPow || n->exponent != 2) return false;
    const ExprNode* s = n->a.get();
    if (!s || s->kind != NodeKind::Sub) return false;
    if (!s->a || s->a->kind != NodeKind::Var) return false;
    if (!s->b || s->b->kind != NodeKind::Const) return false;
    y = s->b->value;
    return true;
}

bool match_gauss_exp(const ExprNode* n, double& y, double& eta) {
    if (!n || n->kind != NodeKind::Exp) return false;
    const ExprNode* m = n->a.get();
    if (!m || m->kind != NodeKind::Neg) return false;
    m = m->a.get();
    if (!m || m->kind != NodeKind::Div) return false;
    if (!m->b || m->b->kind != NodeKind::Const) return false;
    eta = m->b->value;
    return match_square_of_shift(m->a.get(), y);
}

// rebuild l with a right-spine factor (x-y)^2 replaced by the composite node
ExprPtr graft_gauss(const ExprPtr& l, double y, double eta) {
    double y2 = 0.0;
    if (match_square_of_shift(l.get(), y2) && y2 == y) {
        auto g = std::make_shared<ExprNode>();
        g->kind = NodeKind::Gauss2;
        g->value = y;
        g->value2 = eta;
        return g;
    }
    if (l->kind == NodeKind::Mul) {
        if (ExprPtr nb = graft_gauss(l->b, y, eta)) {
            auto c = std::make_shared<ExprNode>(*l);
            c->b = std::move(nb);
            return c;
        }
        if (ExprPtr na = graft_gauss(l->a, y, eta)) {
            auto c = std::make_shared<ExprNode>(*l);
            c->a = std::move(na);
            return c;
        }
    }
    return nullptr;
}

ExprPtr fold_gauss(const ExprPtr& n) {
    if (!n) return n;
    if (!n->a && !n->b) return n;
    auto c = std::make_shared<ExprNode>(*n);
    if (n->a) c->a = fold_gauss(n->a);
    if (n->b) c->b = fold_gauss(n->b);
    if (c->kind == NodeKind::Mul) {
        double y = 0.0, eta = 0.0;
        if (match_gauss_exp(c->b.get(), y, eta) && eta >= 1e-300 && std::isfinite(eta) &&
            std::isfinite(y)) {
            if (ExprPtr g = graft_gauss(c->a, y, eta)) return g;
        }
    }
    return c;
}

int precedence(const ExprNode* n) {
    switch (n->kind) {
        case NodeKind::Add:
        case NodeKind::Sub:
            return 1;
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Gauss2:
            return 2;
        case NodeKind::Neg:
            return 3;
        case NodeKind::IntPow:
            return 4;
        case NodeKind::Const:
            return 5;
        case NodeKind::Var:
        case NodeKind::Exp:
            return 6;
    }
    return 6;
}

void print_node(const ExprNode* n, std::string& out);

void print_child(const ExprNode* child, int parent_prec, bool tight_side, std::string& out) {
    // tight_side: the operand position where equal precedence still needs parens
    // (right side of "-", "/"; any side under IntPow/Neg with lower-prec child)
    int p = precedence(child);
    bool parens = p < parent_prec || (tight_side && p == parent_prec);
    // a bare negative constant prints with a leading '-', so treat it like Neg
    if (child->kind == NodeKind::Const && child->value < 0 && parent_prec >= 2) parens = true;
    if (parens) out.push_back('(');
    print_node(child, out);
    if (parens) out.push_back(')');
}

std::string format_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

void print_node(const ExprNode* n, std::string& out) {
    switch (n->kind) {
        case NodeKind::Const:
            out += format_double(n->value);
            return;
        case NodeKind::Var:
            out.push_back('x');
            return;
        case NodeKind::Add:
            print_child(n->a.get(), 1, false, out);
            out += " + ";
            print_child(n->b.get(), 1, false, out);
            return;
        case NodeKind::Sub:
            print_child(n->a.get(), 1, false, out);
            out += " - ";
            print_child(n->b.get(), 1, true, out);
            return;
        case NodeKind::Mul:
            print_child(n->a.get(), 2, false, out);
            out.push_back('*');
            print_child(n->b.get(), 2, false, out);
            return;
        case NodeKind::Div:
            print_child(n->a.get(), 2, false, out);
            out.push_back('/');
            print_child(n->b.get(), 2, true, out);
            return;
        case NodeKind::Neg:
            out.push_back('-');
            print_child(n->a.get(), 3, true, out);
            return;
        case NodeKind::Exp:
            out += "exp(";
            print_node(n->a.get(), out);
            out.push_back(')');
            return;
        case NodeKind::IntPow:
            print_child(n->a.get(), 5, false, out);
            out.push_back('^');
            out += std::to_string(n->exponent);
            return;
        case NodeKind::Gauss2: {
            std::string ys = format_double(n->value);
            out += "(x - " + ys + ")^2*exp(-((x - " + ys + ")^2/" + format_double(n->value2) +
                   "))";
            return;
        }
    }
}

}  // namespace

Expr Expr::parse(const std::string& text) { return Expr(fold_gauss(Parser(text).run())); }

std::string Expr::str() const {
    std::string out;
    print_node(node.get(), out);
    return out;
}

namespace {

bool same_node(const ExprNode* a, const ExprNode* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Const:
            return a->value == b->value;
        case NodeKind::Var:
            return true;
        case NodeKind::Gauss2:
            return a->value == b->value && a->value2 == b->value2;
        case NodeKind::IntPow:
            return a->exponent == b->exponent && same_node(a->a.get(), b->a.get());
        case NodeKind::Neg:
        case NodeKind::Exp:
            return same_node(a->a.get(), b->a.get());
        default:
            return same_node(a->a.get(), b->a.get()) && same_node(a->b.get(), b->b.get());
    }
}

ExprPtr subst_node(const ExprNode* n, const ExprPtr& r) {
    switch (n->kind) {
        case NodeKind::Var:
            return r;
        case NodeKind::Const: {
            auto c = std::make_shared<ExprNode>(*n);
            return c;
        }
        case NodeKind::Gauss2: {
            // expand to the generic subtree in the substituted variable
            auto shift = make(NodeKind::Sub, r, [&] {
                auto y = std::make_shared<ExprNode>();
                y->kind = NodeKind::Const;
                y->value = n->value;
                return y;
            }());
            auto sq = [&] {
                auto p = std::make_shared<ExprNode>();
                p->kind = NodeKind::IntPow;
                p->exponent = 2;
                p->a = shift;
                return p;
            };
            auto eta = std::make_shared<ExprNode>();
            eta->kind = NodeKind::Const;
            eta->value = n->value2;
            return make(NodeKind::Mul, sq(),
                        make(NodeKind::Exp, make(NodeKind::Neg, make(NodeKind::Div, sq(), eta))));
        }
        default: {
            auto c = std::make_shared<ExprNode>(*n);
            if (n->a) c->a = subst_node(n->a.get(), r);
            if (n->b) c->b = subst_node(n->b.get(), r);
            return c;
        }
    }
}

}  // namespace

bool Expr::same_tree(const Expr& other) const { return same_node(node.get(), other.node.get()); }

Expr Expr::substitute(const Expr& r) const { return Expr(subst_node(node.get(), r.node)); }

namespace {

double eval_node(const ExprNode* n, double x) {
    switch (n->kind) {
        case NodeKind::Const:
            return n->value;
        case NodeKind::Var:
            return x;
        case NodeKind::Add:
            return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
        case NodeKind::Sub:
            return eval_node(n->a.get(), x) - eval_node(n->b.get(), x);
        case NodeKind::Mul:
            return eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
        case NodeKind::Div: {
            double d = eval_node(n->b.get(), x);
            if (d == 0.0) throw DomainError("division by zero in expression");
            return eval_node(n->a.get(), x) / d;
        }
        case NodeKind::Neg:
            return -eval_node(n->a.get(), x);
        case NodeKind::Exp:
            return std::exp(eval_node(n->a.get(), x));
        case NodeKind::IntPow:
            return std::pow(eval_node(n->a.get(), x), n->exponent);
        case NodeKind::Gauss2: {
            double u = x - n->value;
            double q = u * u;
            return q * std::exp(-(q / n->value2));
        }
    }
    return 0.0;
}

D2 eval2_node(const ExprNode* n, double x) {
    switch (n->kind) {
        case NodeKind::Const:
            return {n->value, 0.0, 0.0};
        case NodeKind::Var:
            return {x, 1.0, 0.0};
        case NodeKind::Add: {
            D2 a = eval2_node(n->a.get(), x), b = eval2_node(n->b.get(), x);
            return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2};
        }
        case NodeKind::Sub: {
            D2 a = eval2_node(n->a.get(), x), b = eval2_node(n->b.get(), x);
            return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2};
        }
        case NodeKind::Mul: {
            D2 a = eval2_node(n->a.get(), x), b = eval2_node(n->b.get(), x);
            return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
        }
        case NodeKind::Div: {
            D2 a = eval2_node(n->a.get(), x), b = eval2_node(n->b.get(), x);
            if (b.f == 0.0) throw DomainError("division by zero in expression");
            double q = a.f / b.f;
            double q1 = (a.d1 - q * b.d1) / b.f;
            double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.f;
            return {q, q1, q2};
        }
        case NodeKind::Neg: {
            D2 a = eval2_node(n->a.get(), x);
            return {-a.f, -a.d1, -a.d2};
        }
        case NodeKind::Exp: {
            D2 a = eval2_node(n->a.get(), x);
            double e = std::exp(a.f);
            return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
        }
        case NodeKind::IntPow: {
            D2 a = eval2_node(n->a.get(), x);
            int m = n->exponent;
            if (m == 0) return {1.0, 0.0, 0.0};
            double pm2 = m >= 2 ? std::pow(a.f, m - 2) : 0.0;
            double pm1 = m >= 2 ? pm2 * a.f : std::pow(a.f, m - 1);
            double p = pm1 * a.f;
            return {p, m * pm1 * a.d1, m * (m - 1) * pm2 * a.d1 * a.d1 + m * pm1 * a.d2};
        }
        case NodeKind::Gauss2: {
            double u = x - n->value;
            double s = u * u / n->value2;
            if (s > 745.0) return {0.0, 0.0, 0.0};  // below the double floor, as is every derivative
            double e = std::exp(-s);
            return {u * u * e, 2.0 * u * (1.0 - s) * e, (2.0 - 10.0 * s + 4.0 * s * s) * e};
        }
    }
    return {0.0, 0.0, 0.0};
}

}  // namespace

double Expr::eval(double x) const { return eval_node(node.get(), x); }
D2 Expr::eval2(double x) const { return eval2_node(node.get(), x); }

}  // namespace ifslab
