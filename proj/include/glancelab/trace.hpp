#pragma once

#include <complex>
#include <map>

namespace glancelab {

/// A function on the circle of radius `radius`, stored as Fourier
/// coefficients: f(theta) = sum_k coefficients[k] e^{i k theta}.
///
/// `h` is the semiclassical parameter the trace was produced at; weights
/// use it to evaluate sigma_k = 1 - (h k / radius)^2.
struct Trace {
  double radius = 1.0;
  double h = 1.0;
  std::map<int, std::complex<double>> coefficients;
};

}  // namespace glancelab
