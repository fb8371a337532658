#pragma once

#include "gsd/laurent.hpp"

#include <stdexcept>
#include <vector>

namespace gsd {

// Truncated formal series  c_0 + c_1 eps + ... + c_N eps^N.  The formal
// parameter is never a polynomial variable, so it can never be inverted by
// accident; arithmetic drops everything above eps^N.
template <class T>
class EpsFamily {
public:
    EpsFamily() : order_(0), c_(1) {}
    explicit EpsFamily(int order) : order_(order), c_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("EpsFamily: negative order");
    }
    EpsFamily(int order, std::vector<T> coeffs) : order_(order), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<std::size_t>(order) + 1)
            throw std::invalid_argument("EpsFamily: coefficient count does not match order");
    }

    int order() const { return order_; }
    const T& at(int n) const { return c_.at(static_cast<std::size_t>(n)); }
    T& at(int n) { return c_.at(static_cast<std::size_t>(n)); }
    const std::vector<T>& coefficients() const { return c_; }

private:
    int order_;
    std::vector<T> c_;
};

using EpsPoly = EpsFamily<LaurentPoly>;

inline EpsPoly eps_add(const EpsPoly& a, const EpsPoly& b) {
    if (a.order() != b.order()) throw std::invalid_argument("eps_add: order mismatch");
    EpsPoly r(a.order());
    for (int n = 0; n <= a.order(); ++n) r.at(n) = a.at(n) + b.at(n);
    return r;
}

// Cauchy product truncated at the common order.
inline EpsPoly eps_mul(const EpsPoly& a, const EpsPoly& b) {
    if (a.order() != b.order()) throw std::invalid_argument("eps_mul: order mismatch");
    EpsPoly r(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j)
            r.at(i + j) += a.at(i) * b.at(j);
    return r;
}

inline EpsPoly eps_pow(const EpsPoly& a, unsigned e) {
    EpsPoly r(a.order());
    r.at(0) = LaurentPoly::one();
    for (unsigned k = 0; k < e; ++k) r = eps_mul(r, a);
    return r;
}

} // namespace gsd
