#include "eddymgrit/model/state.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace eddymgrit::model {

void axpy(double alpha, const State& y, State& x) {
    assert(x.a.size() == y.a.size());
    for (std::size_t k = 0; k < x.a.size(); ++k) {
        x.a[k] += alpha * y.a[k];
    }
    x.i += alpha * y.i;
}

State difference(const State& x, const State& y) {
    assert(x.a.size() == y.a.size());
    State d = x;
    for (std::size_t k = 0; k < d.a.size(); ++k) {
        d.a[k] -= y.a[k];
    }
    d.i -= y.i;
    return d;
}

double free_norm_squared(const State& r) {
    double sum = 0.0;
    const std::size_t free = r.a.empty() ? 0 : r.a.size() - 1;
    for (std::size_t k = 0; k < free; ++k) {
        sum += r.a[k] * r.a[k];
    }
    return sum + r.i * r.i;
}

double max_abs(const State& s) {
    double m = std::abs(s.i);
    for (double v : s.a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace eddymgrit::model
