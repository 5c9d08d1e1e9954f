#include "fadinglab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fadinglab::quadrature {

namespace {

[[noreturn]] void fail(const char* where, double est, double tol) {
    std::ostringstream os;
    os << where << ": error estimate " << est << " exceeds requested " << tol;
    throw QuadratureFailure(os.str());
}

} // namespace

double integrate_finite(const Integrand& f, double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) throw DomainError("integrate_finite: abs_tol must be > 0");
    if (a == b) return 0.0;
    boost::math::quadrature::tanh_sinh<double> rule(15);
    double error = 0.0, l1 = 0.0;
    double value = rule.integrate(f, a, b, 1e-13, &error, &l1);
    // boost reports error relative to the L1 norm
    double abs_est = error * std::max(l1, 1.0e-300);
    if (!(abs_est <= std::max(abs_tol, 1e-14 * l1)))
        fail("integrate_finite", abs_est, abs_tol);
    return value;
}

double integrate_upper(const Integrand& f, double a, double scale, double abs_tol) {
    if (!(abs_tol > 0.0)) throw DomainError("integrate_upper: abs_tol must be > 0");
    if (!(scale > 0.0)) scale = 1.0;
    const double split = a + scale;
    double head = integrate_finite(f, a, split, abs_tol / 2.0);

    boost::math::quadrature::exp_sinh<double> tail_rule(12);
    double error = 0.0, l1 = 0.0;
    double tail = tail_rule.integrate(f, split, std::numeric_limits<double>::infinity(),
                                      1e-13, &error, &l1);
    double abs_est = error * std::max(l1, 1.0e-300);
    if (!(abs_est <= std::max(abs_tol / 2.0, 1e-14 * l1)))
        fail("integrate_upper", abs_est, abs_tol);
    return head + tail;
}

} // namespace fadinglab::quadrature
