#include "ifslab/ifs.hpp"

#include <cmath>
#include <limits>

namespace ifslab {

Ifs::Ifs(std::vector<AnalyticMap> maps, double tol) : maps_(std::move(maps)), tol_(tol) {
    if (maps_.empty()) throw ValidationError("system needs at least one map");
    reports_.reserve(maps_.size());
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        ValidationReport rep = validate_map(maps_[i], tol_);
        if (!rep.passed)
            throw ValidationError("map " + std::to_string(i + 1) + ": " + rep.message);
        reports_.push_back(std::move(rep));
    }
    compute_contraction();
}

Ifs Ifs::from_exprs(const std::vector<std::string>& exprs, double epsilon, double tol) {
    std::vector<AnalyticMap> maps;
    maps.reserve(exprs.size());
    for (const auto& e : exprs) maps.push_back(AnalyticMap::parse_map(e, epsilon));
    return Ifs(std::move(maps), tol);
}

Ifs Ifs::trusted(std::vector<AnalyticMap> maps, std::vector<ValidationReport> reports) {
    if (maps.empty()) throw ValidationError("system needs at least one map");
    if (maps.size() != reports.size())
        throw ValidationError("one validation report required per map");
    for (std::size_t i = 0; i < reports.size(); ++i)
        if (!reports[i].passed)
            throw ValidationError("map " + std::to_string(i + 1) + ": " + reports[i].message);
    Ifs sys;
    sys.maps_ = std::move(maps);
    sys.reports_ = std::move(reports);
    sys.compute_contraction();
    return sys;
}

void Ifs::compute_contraction() {
    c_max_ = 0.0;
    c_min_ = std::numeric_limits<double>::infinity();
    c_max_ext_ = 0.0;
    c_min_ext_ = std::numeric_limits<double>::infinity();
    for (const auto& m : maps_) {
        EnclosureResult unit = m.enclose(m.unit_domain(), 1, tol_);
        EnclosureResult ext = m.enclose(m.extension(), 1, tol_);
        c_max_ = std::max(c_max_, unit.range.mag());
        c_min_ = std::min(c_min_, unit.range.mig());
        c_max_ext_ = std::max(c_max_ext_, ext.range.mag());
        c_min_ext_ = std::min(c_min_ext_, ext.range.mig());
    }
    if (!(c_max_ext_ < 1.0) || !(c_min_ > 0.0))
        throw ValidationError("contraction bounds could not be certified");
}

const AnalyticMap& Ifs::map(int letter) const {
    check_letter(letter);
    return maps_[static_cast<std::size_t>(letter - 1)];
}

const ValidationReport& Ifs::report(int letter) const {
    check_letter(letter);
    return reports_[static_cast<std::size_t>(letter - 1)];
}

double Ifs::epsilon() const {
    double e = std::numeric_limits<double>::infinity();
    for (const auto& m : maps_) e = std::min(e, m.epsilon());
    return e;
}

void Ifs::check_letter(int letter) const {
    if (letter < 1 || letter > size())
        throw LetterOutOfRange("letter " + std::to_string(letter) + " outside 1.." +
                               std::to_string(size()));
}

void Ifs::check_word(const Word& w) const {
    for (std::size_t k = 0; k < w.size(); ++k) check_letter(w.at(k));
}

double Ifs::ratio_deriv_sup(int k) const {
    if (k < 0) throw DomainError("negative derivative order");
    if (k < static_cast<int>(ratio_sup_.size()) && ratio_sup_[static_cast<std::size_t>(k)] >= 0.0)
        return ratio_sup_[static_cast<std::size_t>(k)];
    double best = 0.0;
    for (const auto& m : maps_) {
        auto obj = [&m, k](const Interval& x) {
            Jet<Interval> full = m.jet<Interval>(x, k + 2);
            Jet<Interval> d1(k), d2(k);
            for (int j = 0; j <= k; ++j) {
                d1.d[static_cast<std::size_t>(j)] = full.d[static_cast<std::size_t>(j + 1)];
                d2.d[static_cast<std::size_t>(j)] = full.d[static_cast<std::size_t>(j + 2)];
            }
            return abs((d2 / d1).d[static_cast<std::size_t>(k)]);
        };
        SupResult r = certified_sup(obj, Interval(0.0, 1.0), tol_);
        best = std::max(best, r.upper);
    }
    if (static_cast<int>(ratio_sup_.size()) <= k) ratio_sup_.resize(static_cast<std::size_t>(k) + 1, -1.0);
    ratio_sup_[static_cast<std::size_t>(k)] = best;
    return best;
}

double Ifs::deriv_sup(int letter, int k, bool extension) const {
    check_letter(letter);
    if (k < 0) throw DomainError("negative derivative order");
    auto& cache = extension ? deriv_sup_ext_ : deriv_sup_unit_;
    auto it = cache.find({letter, k});
    if (it != cache.end()) return it->second;
    const AnalyticMap& m = maps_[static_cast<std::size_t>(letter - 1)];
    Interval dom = extension ? m.extension() : m.unit_domain();
    double v = m.enclose(dom, k, tol_).range.mag();
    cache[{letter, k}] = v;
    return v;
}

double Ifs::c0_bound() const { return ratio_deriv_sup(0) / (1.0 - c_max_); }

}  // namespace ifslab
