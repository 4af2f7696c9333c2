// Complex gamma function and a small adaptive quadrature, enough for the
// Levy-area density on the line Re z = 1/4.
#pragma once

#include <complex>
#include <functional>

namespace hmix::special {

/// Lanczos series (g = 7, 9 terms) without reflection. Accurate for Re z > 0.
std::complex<double> gamma_lanczos(std::complex<double> z);

/// Gamma on the whole plane: Lanczos for Re z >= 1/2, reflection otherwise.
std::complex<double> gamma(std::complex<double> z);

/// Gamma(1/4) through Gamma(1/4) Gamma(3/4) = pi sqrt(2).
double gamma_quarter_by_reflection();

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace hmix::special
