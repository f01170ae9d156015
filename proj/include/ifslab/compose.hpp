#pragma once

#include "ifslab/ifs.hpp"
#include "ifslab/word.hpp"

namespace ifslab {

// forward:  f_w = f_{i_1} after f_{i_2} after ... (innermost map is the last
//           letter, so f_w(x) = f_{i_1}(f_{i_2}(...f_{i_n}(x))))
// reversed: innermost map is the first letter
enum class Orientation { Forward, Reversed };

template <class T>
Jet<T> compose_jet(const Ifs& sys, const Word& w, Orientation o, const T& x, int order) {
    sys.check_word(w);
    Jet<T> acc = Jet<T>::variable(x, order);
    const std::size_t n = w.size();
    for (std::size_t k = 0; k < n; ++k) {
        int letter = (o == Orientation::Forward) ? w.at(n - 1 - k) : w.at(k);
        Jet<T> outer = sys.map(letter).jet<T>(acc.d[0], order);
        acc = jet_compose(outer, acc);
    }
    return acc;
}

double compose_eval(const Ifs& sys, const Word& w, Orientation o, double x);

// image of [0,1] under f_w, certified
Interval compose_range(const Ifs& sys, const Word& w, Orientation o);

struct ProjectionResult {
    double value;       // finite approximant f_w(0) in forward orientation
    double tail_bound;  // distance to any point of the cylinder's limit set
};

// address-to-point map: evaluates the cylinder of the word and bounds the
// remaining diameter by the contraction rate
ProjectionResult natural_projection(const Ifs& sys, const Word& w);

}  // namespace ifslab
