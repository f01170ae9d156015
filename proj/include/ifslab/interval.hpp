#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ifslab/errors.hpp"

namespace ifslab {

// Closed interval [lo, hi] over doubles. Every arithmetic result is widened
// outward by ulp steps, so the true real result set is always contained in the
// returned interval; libm calls get two steps since they may be off by >0.5 ulp.
class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}
    explicit Interval(double v) : lo_(v), hi_(v) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw DomainError("interval bounds out of order");
    }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }

    // max and min of |x| over the interval
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const {
        if (lo_ > 0.0) return lo_;
        if (hi_ < 0.0) return -hi_;
        return 0.0;
    }

    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool strictly_inside(const Interval& o) const { return o.lo_ < lo_ && hi_ < o.hi_; }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    Interval operator-() const { return make_raw(-hi_, -lo_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return make_raw(sum_down(a.lo_, b.lo_), sum_up(a.hi_, b.hi_));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return make_raw(sum_down(a.lo_, -b.hi_), sum_up(a.hi_, -b.lo_));
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        const double xs[2] = {a.lo_, a.hi_}, ys[2] = {b.lo_, b.hi_};
        for (double x : xs)
            for (double y : ys) {
                double p = x * y;
                if (mul_exact(x, y, p)) {
                    lo = std::min(lo, p);
                    hi = std::max(hi, p);
                } else {
                    lo = std::min(lo, step_down(p));
                    hi = std::max(hi, step_up(p));
                }
            }
        return make_raw(lo, hi);
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains(0.0)) throw DomainError("division by interval containing zero");
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        const double xs[2] = {a.lo_, a.hi_}, ys[2] = {b.lo_, b.hi_};
        for (double x : xs)
            for (double y : ys) {
                double q = x / y;
                if (div_exact(x, y, q)) {
                    lo = std::min(lo, q);
                    hi = std::max(hi, q);
                } else {
                    lo = std::min(lo, step_down(q));
                    hi = std::max(hi, step_up(q));
                }
            }
        return make_raw(lo, hi);
    }

    friend Interval operator+(const Interval& a, double b) { return a + Interval(b); }
    friend Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
    friend Interval operator-(const Interval& a, double b) { return a - Interval(b); }
    friend Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
    friend Interval operator*(const Interval& a, double b) { return a * Interval(b); }
    friend Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
    friend Interval operator/(const Interval& a, double b) { return a / Interval(b); }
    friend Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    friend Interval exp(const Interval& a) {
        if (a.lo_ == 0.0 && a.hi_ == 0.0) return make_raw(1.0, 1.0);
        double lo = std::exp(a.lo_), hi = std::exp(a.hi_);
        if (a.lo_ == 0.0) {
            lo = 1.0;
        } else {
            lo = step_down(step_down(lo));
            if (lo < 0.0) lo = 0.0;  // exp stays positive or zero after underflow
        }
        hi = a.hi_ == 0.0 ? 1.0 : step_up(step_up(hi));
        return make_raw(lo, hi);
    }

    friend Interval log(const Interval& a) {
        if (a.lo_ <= 0.0) throw DomainError("log of interval touching zero");
        return make_raw(step_down(step_down(std::log(a.lo_))),
                        step_up(step_up(std::log(a.hi_))));
    }

    friend Interval sqrt(const Interval& a) {
        if (a.lo_ < 0.0) throw DomainError("sqrt of negative interval");
        double lo = step_down(std::sqrt(a.lo_));
        if (lo < 0.0) lo = 0.0;
        return make_raw(lo, step_up(std::sqrt(a.hi_)));
    }

    friend Interval abs(const Interval& a) { return make_raw(a.mig(), a.mag()); }

    friend Interval pow_int(const Interval& a, int n) {
        if (n < 0) return Interval(1.0) / pow_int(a, -n);
        if (n == 0) return Interval(1.0);
        if (n == 1) return a;
        if (n % 2 == 0) {
            // x^n = |x|^n and the factors are nonnegative, so repeated interval
            // multiplication is tight (and keeps exact zeros exact)
            Interval q = abs(a), r = q;
            for (int i = 1; i < n; ++i) r = r * q;
            if (r.lo_ < 0.0) r.lo_ = 0.0;
            return r;
        }
        Interval lp(a.lo_), le = lp, hp(a.hi_), he = hp;
        for (int i = 1; i < n; ++i) {
            le = le * lp;
            he = he * hp;
        }
        return make_raw(le.lo_, he.hi_);
    }

    friend Interval intersect(const Interval& a, const Interval& b) {
        double lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
        if (lo > hi) throw DomainError("empty intersection");
        return make_raw(lo, hi);
    }

    std::string str() const;

  private:
    static double step_up(double v) {
        if (std::isinf(v)) return v;
        return std::nextafter(v, std::numeric_limits<double>::infinity());
    }
    static double step_down(double v) {
        if (std::isinf(v)) return v;
        return std::nextafter(v, -std::numeric_limits<double>::infinity());
    }
    static Interval widened(double lo, double hi) {
        return make_raw(step_down(lo), step_up(hi));
    }

    // error-free transforms: widening is skipped only when the float result is
    // provably the exact real result
    static bool add_exact(double x, double y, double s) {
        if (!std::isfinite(s)) return false;
        double xp = s - y, yp = s - xp;
        return (x - xp) + (y - yp) == 0.0;
    }
    static bool mul_exact(double x, double y, double p) {
        if (x == 0.0 || y == 0.0) return true;
        if (!std::isfinite(p) || std::fabs(p) < std::numeric_limits<double>::min())
            return false;  // subnormal residuals are not representable
        return std::fma(x, y, -p) == 0.0;
    }
    static bool div_exact(double x, double y, double q) {
        if (x == 0.0) return true;
        if (!std::isfinite(q) || std::fabs(q) < std::numeric_limits<double>::min())
            return false;
        return std::fma(q, y, -x) == 0.0;
    }
    static double sum_down(double x, double y) {
        double s = x + y;
        return add_exact(x, y, s) ? s : step_down(s);
    }
    static double sum_up(double x, double y) {
        double s = x + y;
        return add_exact(x, y, s) ? s : step_up(s);
    }
    static Interval make_raw(double lo, double hi) {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    double lo_, hi_;
};

// hidden friends, redeclared so qualified lookup works
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sqrt(const Interval& a);
Interval abs(const Interval& a);
Interval pow_int(const Interval& a, int n);
Interval intersect(const Interval& a, const Interval& b);

// split at the midpoint; degenerate when the interval is at the ulp floor
inline std::pair<Interval, Interval> bisect(const Interval& x) {
    double m = x.mid();
    if (!(x.lo() < m && m < x.hi())) m = x.lo();  // cannot split further
    return {Interval(x.lo(), std::max(m, x.lo())), Interval(std::min(m, x.hi()), x.hi())};
}

}  // namespace ifslab
