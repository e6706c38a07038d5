#ifndef PHASEKIT_QUAD_HPP
#define PHASEKIT_QUAD_HPP

#include <functional>

namespace phasekit {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 60);

}  // namespace phasekit

#endif
