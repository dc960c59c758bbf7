#include "eddymgrit/mgrit/communicator.hpp"

namespace eddymgrit::mgrit {

std::vector<double> flatten(const model::State& s) {
    std::vector<double> out(s.a);
    out.push_back(s.i);
    return out;
}

model::State unflatten(const double* data, std::size_t node_count) {
    model::State s;
    s.a.assign(data, data + node_count);
    s.i = data[node_count];
    return s;
}

}  // namespace eddymgrit::mgrit
