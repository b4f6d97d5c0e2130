#pragma once

#include "srslab/rational.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace srslab {

// Parameter vector r = (r_0, ..., r_{d-1}).  Every entry carries an exact
// rational value; entries sourced from raw doubles keep the double's exact
// dyadic value but are flagged inexact so boundary-sensitive predicates can
// degrade honestly instead of pretending precision.
class ParamVector {
  public:
    static ParamVector from_rationals(std::vector<Rat> vals) {
        ParamVector r;
        r.vals_ = std::move(vals);
        r.exact_.assign(r.vals_.size(), true);
        r.check();
        return r;
    }

    static ParamVector from_doubles(const std::vector<double>& vals) {
        ParamVector r;
        r.vals_.reserve(vals.size());
        for (double v : vals) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite parameter entry");
            r.vals_.emplace_back(rat_from_double(v));
        }
        r.exact_.assign(r.vals_.size(), false);
        r.check();
        return r;
    }

    static ParamVector parse(const std::vector<std::string>& texts) {
        std::vector<Rat> vals;
        vals.reserve(texts.size());
        for (const auto& t : texts) {
            auto v = parse_rational(t);
            if (!v) throw std::invalid_argument("unparsable parameter entry: " + t);
            vals.push_back(*v);
        }
        return from_rationals(std::move(vals));
    }

    std::size_t dim() const { return vals_.size(); }
    const Rat& value(std::size_t i) const { return vals_.at(i); }
    double shadow(std::size_t i) const { return to_double(vals_.at(i)); }
    bool entry_exact(std::size_t i) const { return exact_.at(i) != 0; }

    bool all_exact() const {
        for (char e : exact_)
            if (!e) return false;
        return true;
    }

    bool operator==(const ParamVector& o) const { return vals_ == o.vals_; }

  private:
    void check() const {
        if (vals_.empty()) throw std::invalid_argument("parameter vector must have dimension >= 1");
    }

    std::vector<Rat> vals_;
    std::vector<char> exact_;
};

inline ParamVector param2(const Rat& r0, const Rat& r1) {
    return ParamVector::from_rationals({r0, r1});
}

}  // namespace srslab
