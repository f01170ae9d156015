#include "ifslab/compose.hpp"

#include <cmath>

namespace ifslab {

double compose_eval(const Ifs& sys, const Word& w, Orientation o, double x) {
    sys.check_word(w);
    const std::size_t n = w.size();
    double t = x;
    for (std::size_t k = 0; k < n; ++k) {
        int letter = (o == Orientation::Forward) ? w.at(n - 1 - k) : w.at(k);
        t = sys.map(letter).eval(t);
    }
    return t;
}

Interval compose_range(const Ifs& sys, const Word& w, Orientation o) {
    sys.check_word(w);
    const std::size_t n = w.size();
    Interval t(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        int letter = (o == Orientation::Forward) ? w.at(n - 1 - k) : w.at(k);
        t = sys.map(letter).enclose(t, 0).range;
    }
    return t;
}

ProjectionResult natural_projection(const Ifs& sys, const Word& w) {
    ProjectionResult r;
    r.value = compose_eval(sys, w, Orientation::Forward, 0.0);
    r.tail_bound = std::pow(sys.c_max(), static_cast<double>(w.size()));
    return r;
}

}  // namespace ifslab
