#pragma once

// Special functions used by the fading-model formulas: generalized
// hypergeometric series pFq, modified Bessel I, digamma, log-gamma and the
// upper incomplete gamma function. All series evaluation is governed by an
// explicit convergence policy (SeriesControl) instead of hidden defaults.

#include <vector>

#include "fadinglab/errors.hpp"

namespace fadinglab::specfun {

// Tolerance and term-budget policy for series evaluation.
//
// A series is accepted once two successive terms are both below
// rel_tol * |partial sum| in magnitude (a single small term can be an
// accident of even/odd term patterns).
struct SeriesControl {
    double rel_tol = 1e-12;
    int max_terms = 100000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw DomainError("SeriesControl: rel_tol must be in (0, 1)");
        if (max_terms < 1)
            throw DomainError("SeriesControl: max_terms must be >= 1");
    }
};

// Parameter set of a generalized hypergeometric function
//   pFq(a1..ap; b1..bq; x) = sum_r [prod (ai)_r / prod (bj)_r] x^r / r!
// No denominator may be zero or a negative integer.
struct PFQParams {
    std::vector<double> numerators;
    std::vector<double> denominators;
    double argument = 0.0;

    PFQParams(std::vector<double> num, std::vector<double> den, double x);
};

// Pochhammer symbol (a)_r = a (a+1) ... (a+r-1), (a)_0 = 1.
// Large r with a > 0 is evaluated through log-gamma differences to avoid
// overflow of the direct product.
double pochhammer(double a, int r);

// Generalized hypergeometric series of one real scalar argument.
// For p = q+1 the argument must satisfy |x| < 1 unless the series terminates
// (some numerator is a non-positive integer). Throws NonConvergence when the
// term budget runs out and DomainError outside the convergence domain.
double hyp_pfq(const PFQParams& params, const SeriesControl& ctrl = {});

// log(1F1(a; b; z)) for a > 0, b > 0, z >= 0. All series terms are positive,
// so the sum is tracked in rescaled form and never overflows; arguments far
// beyond the overflow threshold switch to the large-z expansion
//   1F1(a;b;z) ~ Gamma(b)/Gamma(a) e^z z^(a-b) [1 + (b-a)(1-a)/z + ...].
double ln_hyp_1f1(double a, double b, double z, const SeriesControl& ctrl = {});

// log(e^-z 1F1(a; b; z)): the exponentially scaled form, finite for every
// finite z. Density tails combine this with their own decay rate so the
// leading exponentials never meet as inf - inf.
double ln_hyp_1f1_scaled(double a, double b, double z, const SeriesControl& ctrl = {});

// Modified Bessel function of the first kind I_nu(z) for z >= 0, nu > -1,
// via (z/2)^nu / Gamma(nu+1) * 0F1(nu+1; z^2/4). Overflows to +inf for large
// z; use ln_bessel_i there.
double bessel_i(double nu, double z, const SeriesControl& ctrl = {});

// log(I_nu(z)) for z >= 0, nu > -1. Series in rescaled form for moderate z,
// the e^z / sqrt(2 pi z) expansion (DLMF 10.40.1) beyond it.
double ln_bessel_i(double nu, double z, const SeriesControl& ctrl = {});

// log(e^-z I_nu(z)), finite for every finite z >= 0.
double ln_bessel_i_scaled(double nu, double z, const SeriesControl& ctrl = {});

// Digamma function psi(x), x > 0. Recurrence shift to x >= 12 followed by the
// Bernoulli asymptotic expansion; relative accuracy ~1e-13 or better.
double digamma(double x);

// log(Gamma(x)) for x > 0.
double ln_gamma(double x);

// Upper incomplete gamma function Gamma(a, x) = int_x^inf t^(a-1) e^-t dt,
// x >= 0. Lower-series for small x, Lentz continued fraction for large x;
// a = 0 gives the exponential integral E1(x).
double upper_incomplete_gamma(double a, double x, const SeriesControl& ctrl = {});

// Regularized Q(a, x) = Gamma(a, x) / Gamma(a), a > 0. Used for chi-square
// tail probabilities.
double gamma_q(double a, double x, const SeriesControl& ctrl = {});

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

} // namespace fadinglab::specfun
