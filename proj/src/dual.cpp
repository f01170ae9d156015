#include "ifslab/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifslab/parallel.hpp"

namespace ifslab {

namespace {

const double kWideBound = 1e300;

Interval wide() { return Interval(-kWideBound, kWideBound); }

Interval imin(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval imax(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

}  // namespace

MapFrame map_frame(const AnalyticMap& m, const Interval& x) {
    MapFrame out;
    Jet<Interval> j = m.jet<Interval>(x, 2);
    out.f = j.d[0];
    out.df = j.d[1];
    if (out.df.contains(0.0)) {
        out.ratio = wide();
        out.resolved = false;
    } else {
        out.ratio = j.d[2] / out.df;
    }
    return out;
}

LiftPoint lift_eval(const Ifs& sys, const Word& w, double x) {
    sys.check_word(w);
    LiftPoint out;
    out.h = 0.0;
    out.df = 1.0;
    double t = x;
    for (std::size_t k = 0; k < w.size(); ++k) {
        D2 d = sys.map(w.at(k)).eval2(t);
        if (d.d1 == 0.0) throw DomainError("vanishing derivative along orbit");
        out.h += (d.d2 / d.d1) * out.df;
        out.df *= d.d1;
        t = d.f;
    }
    return out;
}

LiftBox lift_enclose(const Ifs& sys, const Word& w, const Interval& x) {
    sys.check_word(w);
    LiftBox out;
    out.h = Interval(0.0);
    out.df = Interval(1.0);
    Interval t = x;
    for (std::size_t k = 0; k < w.size(); ++k) {
        MapFrame fr = map_frame(sys.map(w.at(k)), t);
        if (!fr.resolved) {
            out.h = wide();
            out.df = wide();
            out.resolved = false;
            return out;
        }
        out.h += fr.ratio * out.df;
        out.df *= fr.df;
        t = fr.f;
    }
    return out;
}

double apply_lift(const Ifs& sys, int letter, const std::function<double(double)>& h, double x) {
    sys.check_letter(letter);
    D2 d = sys.map(letter).eval2(x);
    if (d.d1 == 0.0) throw DomainError("vanishing derivative");
    return d.d1 * h(d.f) + d.d2 / d.d1;
}

double lift_identity_residual(const Ifs& sys, const Word& w, double x) {
    LiftPoint lp = lift_eval(sys, w, x);
    Jet<double> j = compose_jet<double>(sys, w, Orientation::Reversed, x, 2);
    double rh = std::fabs(lp.h - j.d[2] / j.d[1]);
    double rd = std::fabs(lp.df - j.d[1]);
    return std::max(rh, rd);
}

double lift_cocycle_residual(const Ifs& sys, const Word& a, const Word& b, double x) {
    LiftPoint lab = lift_eval(sys, a.concat(b), x);
    LiftPoint la = lift_eval(sys, a, x);
    double ta = compose_eval(sys, a, Orientation::Reversed, x);
    LiftPoint lb = lift_eval(sys, b, ta);
    double rhs = la.df * lb.h + la.h;
    return std::fabs(lab.h - rhs);
}

double lift_periodic(const Ifs& sys, const Word& period, double x, double tol) {
    sys.check_word(period);
    if (period.empty()) throw DomainError("empty period");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const double c = sys.c_max();
    const double c0 = sys.c0_bound();
    double h = 0.0, df = 1.0, t = x, cpow = 1.0;
    long depth = 0;
    while (2.0 * c0 * cpow >= 1e-3 * tol) {
        for (std::size_t k = 0; k < period.size(); ++k) {
            D2 d = sys.map(period.at(k)).eval2(t);
            if (d.d1 == 0.0) throw DomainError("vanishing derivative along orbit");
            h += (d.d2 / d.d1) * df;
            df *= d.d1;
            t = d.f;
            ++depth;
            cpow *= c;
        }
        if (depth > 4000000) throw NoConvergence("periodic lift truncation did not converge");
    }
    return h;
}

bool verify_envelope(const Ifs& sys, double lo, double hi) {
    if (!(lo < hi)) return false;
    const double tol = 1e-9 * (1.0 + hi - lo);
    for (int i = 1; i <= sys.size(); ++i) {
        const AnalyticMap& m = sys.map(i);
        auto upper_fn = [&m, lo, hi](const Interval& x) {
            MapFrame fr = map_frame(m, x);
            if (!fr.resolved) return wide();
            return imax(lo * fr.df + fr.ratio, hi * fr.df + fr.ratio);
        };
        auto lower_neg_fn = [&m, lo, hi](const Interval& x) {
            MapFrame fr = map_frame(m, x);
            if (!fr.resolved) return wide();
            return -imin(lo * fr.df + fr.ratio, hi * fr.df + fr.ratio);
        };
        SupResult top = certified_sup(upper_fn, Interval(0.0, 1.0), tol);
        if (!(top.upper < hi)) return false;
        SupResult bot = certified_sup(lower_neg_fn, Interval(0.0, 1.0), tol);
        if (!(-bot.upper > lo)) return false;
    }
    return true;
}

Envelope choose_envelope(const Ifs& sys, double pad) {
    if (!(pad > 0.0)) throw DomainError("padding must be positive");
    const double c0 = sys.c0_bound();
    const double c = sys.c_max();
    double p = pad;
    for (int step = 0; step < 60; ++step) {
        double m = c0 / (1.0 - c) + p;
        if (verify_envelope(sys, -m, m)) {
            Envelope env;
            env.lo = -m;
            env.hi = m;
            env.pad = p;
            env.growth_steps = step;
            return env;
        }
        p *= 1.5;
    }
    throw EnvelopeNotFound("no verified invariant band after 60 growth steps");
}

namespace {

// hull of {L_w c : c in [lo, hi]} evaluated at x
void hull_at(const LiftBox& lb, const Envelope& env, Interval& out_lo, Interval& out_hi) {
    Interval a = env.lo * lb.df + lb.h;
    Interval b = env.hi * lb.df + lb.h;
    out_lo = imin(a, b);
    out_hi = imax(a, b);
}

double gap_estimate(const Ifs& sys, const Word& a, const Word& b, const Envelope& env, double x) {
    LiftPoint pa = lift_eval(sys, a, x);
    LiftPoint pb = lift_eval(sys, b, x);
    double lo_a = std::min(env.lo * pa.df, env.hi * pa.df) + pa.h;
    double hi_a = std::max(env.lo * pa.df, env.hi * pa.df) + pa.h;
    double lo_b = std::min(env.lo * pb.df, env.hi * pb.df) + pb.h;
    double hi_b = std::max(env.lo * pb.df, env.hi * pb.df) + pb.h;
    return std::max(lo_a - hi_b, lo_b - hi_a);
}

Interval gap_enclosure(const Ifs& sys, const Word& a, const Word& b, const Envelope& env,
                       const Interval& x) {
    LiftBox la = lift_enclose(sys, a, x);
    LiftBox lb = lift_enclose(sys, b, x);
    if (!la.resolved || !lb.resolved) return wide();
    Interval lo_a, hi_a, lo_b, hi_b;
    hull_at(la, env, lo_a, hi_a);
    hull_at(lb, env, lo_b, hi_b);
    return imax(lo_a - hi_b, lo_b - hi_a);
}

}  // namespace

PairResult cylinders_disjoint(const Ifs& sys, const Word& a, const Word& b, const Envelope& env,
                              const DualOptions& opt) {
    sys.check_word(a);
    sys.check_word(b);
    const int grid = std::max(2, opt.grid);
    PairResult out;
    double best_x = 0.0;
    double best_g = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        double x = static_cast<double>(j) / (grid - 1);
        double g = gap_estimate(sys, a, b, env, x);
        if (g > best_g) {
            best_g = g;
            best_x = x;
        }
    }
    double window = 1.0 / (grid - 1);
    double lo = std::max(0.0, best_x - window);
    double hi = std::min(1.0, best_x + window);
    for (int r = 0; r < opt.refine_rounds; ++r) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        double g1 = gap_estimate(sys, a, b, env, m1);
        double g2 = gap_estimate(sys, a, b, env, m2);
        if (g1 > best_g) {
            best_g = g1;
            best_x = m1;
        }
        if (g2 > best_g) {
            best_g = g2;
            best_x = m2;
        }
        if (g1 >= g2)
            hi = m2;
        else
            lo = m1;
    }
    out.best_estimate = best_g;
    out.witness = best_x;
    if (best_g > 0.0) {
        Interval cert = gap_enclosure(sys, a, b, env, Interval(best_x));
        if (cert.lo() > 0.0) {
            out.verdict = PairVerdict::Disjoint;
            out.gap = cert.lo();
            return out;
        }
    }
    SupResult sup = certified_sup(
        [&](const Interval& x) { return gap_enclosure(sys, a, b, env, x); }, Interval(0.0, 1.0),
        1e-10, 40, 50000);
    if (sup.upper <= 0.0) {
        out.verdict = PairVerdict::Overlapping;
        out.gap = sup.upper;
        return out;
    }
    out.verdict = PairVerdict::Inconclusive;
    out.gap = 0.0;
    return out;
}

DualSscResult dual_ssc_check(const Ifs& sys, int depth, const DualOptions& opt) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    DualSscResult res;
    res.depth = depth;
    res.envelope = choose_envelope(sys, opt.pad);
    if (depth == 0) {
        // the only depth-0 word is empty; no pair has distinct first letters
        res.verdict = Verdict3::Pass;
        return res;
    }
    std::vector<Word> words = enumerate_words(sys.size(), depth);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            if (words[i].at(0) < words[j].at(0)) pairs.emplace_back(i, j);
    if (pairs.size() > 10000000u) throw SizeLimit("pair enumeration exceeds cap");
    std::vector<PairResult> results(pairs.size());
    parallel_for(static_cast<long>(pairs.size()), opt.threads, [&](long k) {
        const auto& pr = pairs[static_cast<std::size_t>(k)];
        results[static_cast<std::size_t>(k)] =
            cylinders_disjoint(sys, words[pr.first], words[pr.second], res.envelope, opt);
    });
    res.pairs_checked = static_cast<long>(pairs.size());
    bool any_overlap = false, any_undecided = false;
    res.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const PairResult& r = results[k];
        if (r.verdict == PairVerdict::Disjoint) {
            if (r.gap < res.min_gap) {
                res.min_gap = r.gap;
                res.min_pair_a = words[pairs[k].first];
                res.min_pair_b = words[pairs[k].second];
                res.min_witness = r.witness;
            }
        } else {
            if (r.verdict == PairVerdict::Overlapping)
                any_overlap = true;
            else
                any_undecided = true;
            res.undecided.push_back({words[pairs[k].first], words[pairs[k].second], r});
        }
    }
    if (any_overlap)
        res.verdict = Verdict3::Fail;
    else if (any_undecided)
        res.verdict = Verdict3::Inconclusive;
    else
        res.verdict = Verdict3::Pass;
    if (!std::isfinite(res.min_gap)) res.min_gap = 0.0;
    return res;
}

}  // namespace ifslab
