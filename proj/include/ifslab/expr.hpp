#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <type_traits>

#include "ifslab/jet.hpp"

namespace ifslab {

// Gauss2 is the composite atom (x-y)^2 * exp(-(x-y)^2/eta). It evaluates like
// the equivalent five-node subtree but its interval jets are computed through
// s = (x-y)^2/eta envelopes, which stay tight when sqrt(eta) is far below one
// ulp. parse() folds the printed pattern back into this node.
enum class NodeKind : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Neg, Exp, IntPow, Gauss2 };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    double value = 0.0;   // Const; Gauss2 center y
    double value2 = 0.0;  // Gauss2 width eta
    int exponent = 0;     // IntPow
    ExprPtr a, b;
};

struct D2 {
    double f, d1, d2;
};

// Immutable expression in one variable x over [0,1].
//
// Concrete syntax accepted by parse():
//   expr   = term { ("+" | "-") term } ;
//   term   = factor { ("*" | "/") factor } ;
//   factor = "-" factor | power ;
//   power  = atom [ "^" integer ] ;
//   atom   = number | "x" | "exp" "(" expr ")" | "(" expr ")" ;
//   number = digit {digit} ["." digit {digit}] [("e"|"E") ["+"|"-"] digit {digit}] ;
// "^" takes a nonnegative integer exponent only. str() prints a form that
// reparses to a structurally identical tree.
class Expr {
  public:
    Expr() = default;
    explicit Expr(ExprPtr n) : node(std::move(n)) {}

    static Expr constant(double v);
    static Expr variable();
    static Expr add(const Expr& a, const Expr& b);
    static Expr sub(const Expr& a, const Expr& b);
    static Expr mul(const Expr& a, const Expr& b);
    static Expr div(const Expr& a, const Expr& b);
    static Expr neg(const Expr& a);
    static Expr exp_of(const Expr& a);
    static Expr int_pow(const Expr& a, int e);
    static Expr gauss_bump(double y, double eta);

    static Expr parse(const std::string& text);
    std::string str() const;

    bool same_tree(const Expr& other) const;
    // replace every occurrence of x by r
    Expr substitute(const Expr& r) const;

    double eval(double x) const;
    D2 eval2(double x) const;  // value and first two derivatives, no allocation

    template <class T>
    Jet<T> jet(const T& x, int order) const;

    bool empty() const { return node == nullptr; }

    ExprPtr node;
};

namespace gauss_env {

// piecewise-monotone envelopes over s = (x-y)^2/eta of the Gauss2 derivative
// profiles: G = eta*s*e^-s, G' = 2u*(1-s)e^-s, G'' = (2-10s+4s^2)e^-s.
// turning points: s*e^-s peaks at 1; (1-s)e^-s bottoms at 2; the G'' profile
// turns at (9 -+ sqrt(33))/4.

inline Interval se_at(double t) {
    if (t > 745.0) return Interval(0.0, 1e-300);
    Interval T(t);
    return T * exp(-T);
}
inline Interval env_se(const Interval& s) {
    Interval a = se_at(s.lo()), b = se_at(s.hi());
    double lo, hi;
    if (s.hi() <= 1.0) {
        lo = a.lo(), hi = b.hi();
    } else if (s.lo() >= 1.0) {
        lo = b.lo(), hi = a.hi();
    } else {
        lo = std::min(a.lo(), b.lo());
        hi = 0.36787944117144245;  // just above 1/e
    }
    return Interval(std::max(lo, 0.0), std::max(hi, 0.0));
}

inline Interval w_at(double t) {
    if (t > 745.0) return Interval(-1e-300, 1e-300);
    Interval T(t);
    return (Interval(1.0) - T) * exp(-T);
}
inline Interval env_w(const Interval& s) {
    Interval a = w_at(s.lo()), b = w_at(s.hi());
    if (s.hi() <= 2.0) return Interval(std::min(b.lo(), a.hi()), a.hi());
    if (s.lo() >= 2.0) return Interval(std::min(a.lo(), b.hi()), b.hi());
    return Interval(-0.13533528323661273, std::max(a.hi(), b.hi()));  // min is -1/e^2
}

inline Interval h_at(double t) {
    if (t > 745.0) return Interval(-1e-300, 1e-300);
    Interval T(t);
    return (Interval(2.0) - Interval(10.0) * T + Interval(4.0) * T * T) * exp(-T);
}
inline Interval env_h(const Interval& s) {
    constexpr double kLoTurn = 0.81385933836549284;  // (9-sqrt(33))/4, rounded into the dip
    constexpr double kHiTurn = 3.6861406616345072;   // (9+sqrt(33))/4
    Interval a = h_at(s.lo()), b = h_at(s.hi());
    if (s.hi() <= 0.813859338) return Interval(std::min(b.lo(), a.hi()), a.hi());
    if (s.lo() >= 0.813859339 && s.hi() <= 3.686140661)
        return Interval(std::min(a.lo(), b.hi()), b.hi());
    if (s.lo() >= 3.686140662) return Interval(std::min(b.lo(), a.hi()), a.hi());
    double lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    if (s.lo() < kLoTurn && kLoTurn < s.hi()) lo = std::min(lo, -1.5475);
    if (s.lo() < kHiTurn && kHiTurn < s.hi()) hi = std::max(hi, 0.4886);
    return Interval(lo, hi);
}

}  // namespace gauss_env

template <class T>
Jet<T> gauss_jet(const ExprNode* n, const Jet<T>& x) {
    const int K = x.order();
    if constexpr (std::is_same_v<T, Interval>) {
        if (K <= 2) {
            Interval u = x.d[0] - Interval(n->value);
            Interval s = pow_int(u, 2) / Interval(n->value2);
            Jet<Interval> r(K);
            r.d[0] = Interval(n->value2) * gauss_env::env_se(s);
            if (K >= 1) r.d[1] = Interval(2.0) * u * gauss_env::env_w(s) * x.d[1];
            if (K >= 2)
                r.d[2] = gauss_env::env_h(s) * x.d[1] * x.d[1] +
                         Interval(2.0) * u * gauss_env::env_w(s) * x.d[2];
            return r;
        }
    }
    Jet<T> u = x - Jet<T>::constant(ScalarOps<T>::from_double(n->value), K);
    Jet<T> q = jet_pow_int(u, 2);
    Jet<T> ex = jet_exp(-(q / Jet<T>::constant(ScalarOps<T>::from_double(n->value2), K)));
    return q * ex;
}

template <class T>
Jet<T> expr_jet(const ExprNode* n, const Jet<T>& x) {
    switch (n->kind) {
        case NodeKind::Const:
            return Jet<T>::constant(ScalarOps<T>::from_double(n->value), x.order());
        case NodeKind::Var:
            return x;
        case NodeKind::Add:
            return expr_jet(n->a.get(), x) + expr_jet(n->b.get(), x);
        case NodeKind::Sub:
            return expr_jet(n->a.get(), x) - expr_jet(n->b.get(), x);
        case NodeKind::Mul:
            return expr_jet(n->a.get(), x) * expr_jet(n->b.get(), x);
        case NodeKind::Div: {
            Jet<T> num = expr_jet(n->a.get(), x);
            Jet<T> den = expr_jet(n->b.get(), x);
            if (!ScalarOps<T>::nonzero(den.d[0])) throw DomainError("division by zero in expression");
            return num / den;
        }
        case NodeKind::Neg:
            return -expr_jet(n->a.get(), x);
        case NodeKind::Exp:
            return jet_exp(expr_jet(n->a.get(), x));
        case NodeKind::IntPow:
            return jet_pow_int(expr_jet(n->a.get(), x), n->exponent);
        case NodeKind::Gauss2:
            return gauss_jet(n, x);
    }
    throw Error("unreachable expression node");
}

template <class T>
Jet<T> Expr::jet(const T& x, int order) const {
    return expr_jet(node.get(), Jet<T>::variable(x, order));
}

}  // namespace ifslab
