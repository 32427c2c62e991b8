#pragma once

#include <complex>
#include <functional>

namespace qrep {

struct QuadOptions {
    double epsabs = 1e-10;
    double epsrel = 1e-10;
    int limit = 2000;
};

// Adaptive Gauss-Kronrod on a finite interval. Throws NumericalError when the
// requested accuracy is not reached.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt = {});

// Same rule applied to the real and imaginary parts.
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       const QuadOptions& opt = {});

// Integral over the whole real line.
double integrate_real_line(const std::function<double(double)>& f, const QuadOptions& opt = {});

}  // namespace qrep
