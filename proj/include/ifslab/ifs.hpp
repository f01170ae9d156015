#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ifslab/map.hpp"
#include "ifslab/word.hpp"

namespace ifslab {

// Validated contracting system on [0,1]. Letters are 1-based. Construction
// runs the full property check on every map and throws ValidationError on the
// first failure, so an Ifs in hand is always a certified system.
class Ifs {
  public:
    explicit Ifs(std::vector<AnalyticMap> maps, double tol = 1e-8);

    static Ifs from_exprs(const std::vector<std::string>& exprs, double epsilon = 0.05,
                          double tol = 1e-8);

    // for maps already validated by other means (certified perturbations);
    // reports must assert success for each map
    static Ifs trusted(std::vector<AnalyticMap> maps, std::vector<ValidationReport> reports);

    int size() const { return static_cast<int>(maps_.size()); }
    const AnalyticMap& map(int letter) const;  // 1-based
    const ValidationReport& report(int letter) const;
    double epsilon() const;

    // uniform contraction bounds: certified sup/inf of |f'| over [0,1]
    double c_max() const { return c_max_; }
    double c_min() const { return c_min_; }
    // same bounds taken over the extension [-eps, 1+eps]
    double c_max_ext() const { return c_max_ext_; }
    double c_min_ext() const { return c_min_ext_; }

    // upper bound for sup over maps and x in [0,1] of |d^k/dx^k (f''/f')|,
    // k >= 0; k = 0 is the distortion bound sup|f''/f'|
    double ratio_deriv_sup(int k) const;

    // upper bound for sup over [0,1] (or the extension) of |f_i^{(k)}|
    double deriv_sup(int letter, int k, bool extension = false) const;

    double c0_bound() const;  // ratio_deriv_sup(0) / (1 - c_max)

    void check_letter(int letter) const;
    void check_word(const Word& w) const;

  private:
    Ifs() = default;
    void compute_contraction();

    std::vector<AnalyticMap> maps_;
    std::vector<ValidationReport> reports_;
    double tol_ = 1e-8;
    double c_max_ = 0.0, c_min_ = 0.0;
    double c_max_ext_ = 0.0, c_min_ext_ = 0.0;
    mutable std::vector<double> ratio_sup_;           // index k
    mutable std::map<std::pair<int, int>, double> deriv_sup_unit_;
    mutable std::map<std::pair<int, int>, double> deriv_sup_ext_;
};

}  // namespace ifslab
