#include "trolab/tolerances.hpp"

namespace trolab {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

bool approx_zero(double magnitude, double scale) {
    const Tolerances& t = tolerances();
    return magnitude <= t.eps_abs + t.eps_rel * scale;
}

}  // namespace trolab
