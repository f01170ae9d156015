#pragma once

#include <functional>
#include <vector>

#include "ifslab/compose.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

// Transfer operators acting on candidate log-derivative data:
//   (L_i h)(x) = f_i'(x) h(f_i(x)) + (f_i''/f_i')(x).
// Words act with the first letter innermost, so the orbit of x under a word
// visits t_0 = x, t_1 = f_{i_1}(x), t_2 = f_{i_2}(t_1), ...

struct LiftPoint {
    double h = 0.0;   // accumulated affine offset H_w(x)
    double df = 0.0;  // derivative of the orbit map at x (product of f' along the orbit)
};

LiftPoint lift_eval(const Ifs& sys, const Word& w, double x);

struct LiftBox {
    Interval h;
    Interval df;
    bool resolved = true;  // false if a derivative sign could not be separated from zero
};

LiftBox lift_enclose(const Ifs& sys, const Word& w, const Interval& x);

double apply_lift(const Ifs& sys, int letter, const std::function<double(double)>& h, double x);

// |H_w(x) - (f_rev'' / f_rev')(x)| for the orbit map of w; zero in exact arithmetic
double lift_identity_residual(const Ifs& sys, const Word& w, double x);

// |H_{ab}(x) - (orbit'_a(x) H_b(orbit_a(x)) + H_a(x))|
double lift_cocycle_residual(const Ifs& sys, const Word& a, const Word& b, double x);

// limit of H along the infinite repetition of the period, truncated once the
// tail bound 2 C0 c_max^depth drops below 1e-3 * tol
double lift_periodic(const Ifs& sys, const Word& period, double x, double tol = 1e-8);

// order-2 data of one map over a box; perturbed maps route through the stored
// deviation bounds instead of interval-evaluating their expression
struct MapFrame {
    Interval f;
    Interval df;
    Interval ratio;
    bool resolved = true;
};

MapFrame map_frame(const AnalyticMap& m, const Interval& x);

struct Envelope {
    double lo = 0.0;
    double hi = 0.0;
    double pad = 0.0;
    int growth_steps = 0;
};

// invariant band [lo, hi] with every L_i mapping constants of the band strictly
// back inside; grows the padding until verification succeeds
Envelope choose_envelope(const Ifs& sys, double pad = 1.0);
bool verify_envelope(const Ifs& sys, double lo, double hi);

enum class PairVerdict { Disjoint, Overlapping, Inconclusive };

struct PairResult {
    PairVerdict verdict = PairVerdict::Inconclusive;
    double witness = 0.0;        // x at which the certified gap is attained
    double gap = 0.0;            // certified lower bound on the hull distance there
    double best_estimate = 0.0;  // unverified floating-point separation estimate
};

struct DualOptions {
    int grid = 64;
    int refine_rounds = 12;
    int threads = 0;  // 0 resolves IFSLAB_THREADS, then hardware
    double pad = 1.0;
};

// hull of {L_w c : c in [lo, hi]} at x, compared pointwise for the two words;
// disjointness needs one witness, overlap needs a sup bound over all of [0,1]
PairResult cylinders_disjoint(const Ifs& sys, const Word& a, const Word& b, const Envelope& env,
                              const DualOptions& opt = {});

struct PairRecord {
    Word a, b;
    PairResult result;
};

enum class Verdict3 { Pass, Fail, Inconclusive };

struct DualSscResult {
    Verdict3 verdict = Verdict3::Inconclusive;
    int depth = 0;
    Envelope envelope;
    long pairs_checked = 0;
    double min_gap = 0.0;  // smallest certified gap over all pairs (Pass only)
    Word min_pair_a, min_pair_b;
    double min_witness = 0.0;
    std::vector<PairRecord> undecided;  // pairs not certified disjoint
};

// strong separation of the dual system at one depth: every pair of distinct
// first letters must have certified disjoint hulls
DualSscResult dual_ssc_check(const Ifs& sys, int depth, const DualOptions& opt = {});

}  // namespace ifslab
