#include "ifslab/map.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ifslab {

namespace {

struct Box {
    Interval x;
    double upper;
    int depth;
};

struct ByUpper {
    bool operator()(const Box& a, const Box& b) const { return a.upper < b.upper; }
};

}  // namespace

SupResult certified_sup(const std::function<Interval(const Interval&)>& F, const Interval& domain,
                        double tol, int max_depth, long max_nodes) {
    std::priority_queue<Box, std::vector<Box>, ByUpper> queue;
    SupResult res;
    res.lower = -std::numeric_limits<double>::infinity();
    bool depth_exhausted = false;

    auto push = [&](const Interval& x, int depth) {
        Interval fx = F(x);
        res.nodes++;
        // thin evaluation at the midpoint gives a certified lower bound
        Interval mv = F(Interval(x.mid()));
        res.lower = std::max(res.lower, mv.lo());
        queue.push({x, fx.hi(), depth});
    };

    push(domain, 0);
    double settled_upper = -std::numeric_limits<double>::infinity();

    while (!queue.empty() && res.nodes < max_nodes) {
        Box b = queue.top();
        double global_upper = std::max(b.upper, settled_upper);
        if (global_upper - res.lower <= tol) {
            res.upper = global_upper;
            res.tolerance_met = true;
            return res;
        }
        queue.pop();
        if (b.upper <= settled_upper || b.upper <= res.lower) {
            // cannot influence the result; keep as settled
            settled_upper = std::max(settled_upper, b.upper);
            continue;
        }
        if (b.depth >= max_depth || b.x.width() <= 0.0) {
            depth_exhausted = true;
            settled_upper = std::max(settled_upper, b.upper);
            continue;
        }
        auto [l, r] = bisect(b.x);
        if (l.width() == b.x.width() || r.width() == b.x.width()) {
            // ulp floor: cannot refine
            depth_exhausted = true;
            settled_upper = std::max(settled_upper, b.upper);
            continue;
        }
        push(l, b.depth + 1);
        push(r, b.depth + 1);
    }

    double global_upper = settled_upper;
    if (!queue.empty()) global_upper = std::max(global_upper, queue.top().upper);
    res.upper = global_upper;
    res.tolerance_met = !depth_exhausted && (global_upper - res.lower <= tol);
    if (res.nodes >= max_nodes) res.tolerance_met = false;
    return res;
}

AnalyticMap::AnalyticMap(Expr e, double epsilon) : expr_(std::move(e)), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("extension width must be positive");
}

AnalyticMap AnalyticMap::parse_map(const std::string& text, double epsilon) {
    return AnalyticMap(Expr::parse(text), epsilon);
}

EnclosureResult AnalyticMap::enclose(const Interval& domain, int deriv_order, double tol,
                                     int max_depth) const {
    auto F = [&](const Interval& x) -> Interval {
        return expr_.jet<Interval>(x, deriv_order).d[deriv_order];
    };
    SupResult hi = certified_sup(F, domain, tol / 2.0, max_depth);
    SupResult lo = certified_sup([&](const Interval& x) { return -F(x); }, domain, tol / 2.0, max_depth);
    EnclosureResult r;
    r.range = Interval(-lo.upper, hi.upper);
    r.achieved = (hi.upper - hi.lower) + (lo.upper - lo.lower);
    r.tolerance_met = hi.tolerance_met && lo.tolerance_met;
    return r;
}

ValidationReport validate_map(const AnalyticMap& f, double tol, int max_depth) {
    ValidationReport rep;
    const Interval ext = f.extension();
    // boundary-touching inclusions (f(1) = 1) cannot survive outward rounding;
    // allow ulp-scale slack on the closed unit-interval check only
    const double boundary_slack = 1e-11;

    try {
        rep.range_unit = f.enclose(f.unit_domain(), 0, tol, max_depth).range;
        EnclosureResult ext0 = f.enclose(ext, 0, tol, max_depth);
        EnclosureResult ext1 = f.enclose(ext, 1, tol, max_depth);
        rep.range_extension = ext0.range;
        rep.deriv_extension = ext1.range;
        rep.tolerance_met = ext0.tolerance_met && ext1.tolerance_met;
        rep.analytic_ok = true;
        rep.analyticity = "assumed (expression defined on the extension; denominators bounded away from zero)";
    } catch (const DomainError& e) {
        rep.analytic_ok = false;
        rep.analyticity = std::string("domain failure on the extension: ") + e.what();
        rep.message = rep.analyticity;
        return rep;
    }

    rep.invariant_unit = rep.range_unit.lo() >= -boundary_slack && rep.range_unit.hi() <= 1.0 + boundary_slack;
    rep.invariant_extension = rep.range_extension.lo() > ext.lo() && rep.range_extension.hi() < ext.hi();
    if (rep.deriv_extension.lo() > 0.0 && rep.deriv_extension.hi() < 1.0) {
        rep.contraction = true;
        rep.derivative_sign = 1;
    } else if (rep.deriv_extension.hi() < 0.0 && rep.deriv_extension.lo() > -1.0) {
        rep.contraction = true;
        rep.derivative_sign = -1;
    }
    rep.passed = rep.analytic_ok && rep.invariant_unit && rep.invariant_extension && rep.contraction;
    if (!rep.passed) {
        if (!rep.invariant_unit) rep.message = "image of [0,1] leaves [0,1]";
        else if (!rep.invariant_extension) rep.message = "image of the extension leaves the extension";
        else if (!rep.contraction)
            rep.message = "derivative not certified inside (0,1) or (-1,0) on the extension; enclosure " +
                          rep.deriv_extension.str();
    }
    return rep;
}

}  // namespace ifslab
