#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ifslab/errors.hpp"
#include "ifslab/interval.hpp"

namespace ifslab {

// scalar hooks; specialized for __float128 in test code
template <class T>
struct ScalarOps {
    static T exp(const T& x) {
        using std::exp;
        return exp(x);
    }
    static T from_double(double v) { return T(v); }
    static bool nonzero(const T& v) { return v != T(0); }
};

template <>
struct ScalarOps<Interval> {
    static Interval exp(const Interval& x) { return ifslab::exp(x); }
    static Interval from_double(double v) { return Interval(v); }
    static bool nonzero(const Interval& v) { return !v.contains(0.0); }
};

inline const double* binomial_row(int n) {
    // Pascal's triangle, exact in doubles for n <= 52
    constexpr int kMax = 52;
    static const std::vector<double> table = [] {
        std::vector<double> t((kMax + 1) * (kMax + 2) / 2, 0.0);
        auto at = [&t](int r, int c) -> double& { return t[r * (r + 1) / 2 + c]; };
        for (int r = 0; r <= kMax; ++r) {
            at(r, 0) = 1.0;
            for (int c = 1; c <= r; ++c)
                at(r, c) = at(r - 1, c - 1) + (c <= r - 1 ? at(r - 1, c) : 0.0);
        }
        return t;
    }();
    if (n > 52) throw OrderTooHigh("binomial row beyond exact range");
    return table.data() + n * (n + 1) / 2;
}

inline double factorial(int n) {
    if (n > 18) throw OrderTooHigh("factorial beyond exact double range");
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Truncated jet at a point: d[k] holds the k-th derivative value (not the
// Taylor coefficient; the k! conversion happens inside compose/invert only).
template <class T>
class Jet {
  public:
    Jet() = default;
    explicit Jet(int order) : d(static_cast<std::size_t>(order) + 1, ScalarOps<T>::from_double(0.0)) {}

    static Jet constant(const T& value, int order) {
        Jet j(order);
        j.d[0] = value;
        return j;
    }
    static Jet variable(const T& value, int order) {
        Jet j(order);
        j.d[0] = value;
        if (order >= 1) j.d[1] = ScalarOps<T>::from_double(1.0);
        return j;
    }

    int order() const { return static_cast<int>(d.size()) - 1; }
    const T& value() const { return d[0]; }

    std::vector<T> d;
};

template <class T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
    Jet<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}

template <class T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
    Jet<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
}

template <class T>
Jet<T> operator-(const Jet<T>& a) {
    Jet<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.d[k] = -a.d[k];
    return r;
}

// Leibniz rule
template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
    const int K = a.order();
    Jet<T> r(K);
    for (int k = 0; k <= K; ++k) {
        const double* C = binomial_row(k);
        T acc = ScalarOps<T>::from_double(0.0);
        for (int j = 0; j <= k; ++j) acc = acc + ScalarOps<T>::from_double(C[j]) * a.d[j] * b.d[k - j];
        r.d[k] = acc;
    }
    return r;
}

// triangular solve of a = r*b
template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
    const int K = a.order();
    Jet<T> r(K);
    r.d[0] = a.d[0] / b.d[0];
    for (int k = 1; k <= K; ++k) {
        const double* C = binomial_row(k);
        T acc = a.d[k];
        for (int j = 0; j < k; ++j) acc = acc - ScalarOps<T>::from_double(C[j]) * r.d[j] * b.d[k - j];
        r.d[k] = acc / b.d[0];
    }
    return r;
}

template <class T>
Jet<T> jet_scale(const Jet<T>& a, const T& s) {
    Jet<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.d[k] = a.d[k] * s;
    return r;
}

// E' = f'E pushed through orders
template <class T>
Jet<T> jet_exp(const Jet<T>& f) {
    const int K = f.order();
    Jet<T> e(K);
    e.d[0] = ScalarOps<T>::exp(f.d[0]);
    for (int k = 1; k <= K; ++k) {
        const double* C = binomial_row(k - 1);
        T acc = ScalarOps<T>::from_double(0.0);
        for (int j = 0; j <= k - 1; ++j)
            acc = acc + ScalarOps<T>::from_double(C[j]) * f.d[j + 1] * e.d[k - 1 - j];
        e.d[k] = acc;
    }
    return e;
}

template <class T>
Jet<T> jet_pow_int(const Jet<T>& base, int n) {
    if (n < 0) throw DomainError("negative exponent");
    Jet<T> acc = Jet<T>::constant(ScalarOps<T>::from_double(1.0), base.order());
    Jet<T> sq = base;
    int e = n;
    while (e > 0) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e > 0) sq = sq * sq;
    }
    return acc;
}

// jet of f at g(x) composed with jet of g at x -> jet of f.g at x.
// Taylor-coefficient Horner on truncated polynomials.
template <class T>
Jet<T> jet_compose(const Jet<T>& outer, const Jet<T>& inner) {
    const int K = outer.order();
    std::vector<T> a(K + 1), p(K + 1), c(K + 1, ScalarOps<T>::from_double(0.0));
    for (int k = 0; k <= K; ++k) {
        a[k] = outer.d[k] / ScalarOps<T>::from_double(factorial(k));
        p[k] = inner.d[k] / ScalarOps<T>::from_double(factorial(k));
    }
    p[0] = ScalarOps<T>::from_double(0.0);  // expand around the inner value
    c[0] = a[K];
    for (int j = K - 1; j >= 0; --j) {
        // c = c*p + a_j, truncated at degree K
        std::vector<T> nc(K + 1, ScalarOps<T>::from_double(0.0));
        for (int u = 0; u <= K; ++u)
            for (int v = 1; u + v <= K; ++v) nc[u + v] = nc[u + v] + c[u] * p[v];
        nc[0] = nc[0] + a[j];
        c = std::move(nc);
    }
    Jet<T> r(K);
    for (int k = 0; k <= K; ++k) r.d[k] = c[k] * ScalarOps<T>::from_double(factorial(k));
    return r;
}

// series reversion: jet of g at x0 -> jet of g^{-1} at g(x0)
template <class T>
Jet<T> jet_invert(const Jet<T>& g, const T& x0) {
    const int K = g.order();
    std::vector<T> p(K + 1);
    for (int k = 0; k <= K; ++k) p[k] = g.d[k] / ScalarOps<T>::from_double(factorial(k));
    // powers of the fluctuation part, truncated
    std::vector<std::vector<T>> ppow(K + 1, std::vector<T>(K + 1, ScalarOps<T>::from_double(0.0)));
    for (int k = 1; k <= K; ++k) ppow[1][k] = p[k];
    for (int j = 2; j <= K; ++j)
        for (int u = 1; u <= K; ++u)
            for (int v = 1; u + v <= K; ++v)
                ppow[j][u + v] = ppow[j][u + v] + ppow[j - 1][u] * p[v];
    std::vector<T> q(K + 1, ScalarOps<T>::from_double(0.0));
    for (int k = 1; k <= K; ++k) {
        T acc = ScalarOps<T>::from_double(k == 1 ? 1.0 : 0.0);
        for (int j = 1; j < k; ++j) acc = acc - q[j] * ppow[j][k];
        q[k] = acc / ppow[k][k];
    }
    Jet<T> r(K);
    r.d[0] = x0;  // the inverse evaluated at g(x0)
    for (int k = 1; k <= K; ++k) r.d[k] = q[k] * ScalarOps<T>::from_double(factorial(k));
    return r;
}

}  // namespace ifslab
