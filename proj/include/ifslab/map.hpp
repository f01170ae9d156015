#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ifslab/expr.hpp"
#include "ifslab/interval.hpp"

namespace ifslab {

struct SupResult {
    double lower = 0.0;  // certified lower bound on the supremum
    double upper = 0.0;  // certified upper bound on the supremum
    bool tolerance_met = false;
    long nodes = 0;
};

// branch-and-bound sup of a function given through an interval extension;
// sound for any inclusion-isotone F
SupResult certified_sup(const std::function<Interval(const Interval&)>& F, const Interval& domain,
                        double tol, int max_depth = 40, long max_nodes = 200000);

struct EnclosureResult {
    Interval range{0.0, 0.0};   // contains every value of f^(k) on the domain
    bool tolerance_met = false; // overestimation beyond the true range <= tol
    double achieved = 0.0;      // attained overestimation bound
};

// One analytic self-map of [0,1]: an expression plus the width of the real
// extension [-eps, 1+eps] on which the regularity properties are checked.
class AnalyticMap {
  public:
    AnalyticMap() = default;
    AnalyticMap(Expr e, double epsilon);

    static AnalyticMap parse_map(const std::string& text, double epsilon = 0.05);

    const Expr& expr() const { return expr_; }
    double epsilon() const { return epsilon_; }

    Interval unit_domain() const { return Interval(0.0, 1.0); }
    Interval extension() const { return Interval(-epsilon_, 1.0 + epsilon_); }

    double eval(double x) const { return expr_.eval(x); }
    D2 eval2(double x) const { return expr_.eval2(x); }

    template <class T>
    Jet<T> jet(const T& x, int order) const {
        return expr_.jet(x, order);
    }

    EnclosureResult enclose(const Interval& domain, int deriv_order, double tol = 1e-8,
                            int max_depth = 40) const;

  private:
    Expr expr_;
    double epsilon_ = 0.05;
};

struct ValidationReport {
    bool passed = false;
    // "assumed (expression analytic on the extension)" or a domain failure
    std::string analyticity;
    bool analytic_ok = false;
    bool invariant_unit = false;       // f([0,1]) inside [0,1]
    bool invariant_extension = false;  // f(extension) strictly inside the extension
    bool contraction = false;          // 0 < |f'| < 1 on the extension
    int derivative_sign = 0;
    Interval range_unit{0.0, 0.0};
    Interval range_extension{0.0, 0.0};
    Interval deriv_extension{0.0, 0.0};
    bool tolerance_met = true;
    std::string message;
};

ValidationReport validate_map(const AnalyticMap& f, double tol = 1e-8, int max_depth = 40);

}  // namespace ifslab
