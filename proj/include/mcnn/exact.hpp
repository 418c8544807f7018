#pragma once

#include "mcnn/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace mcnn {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

// integer polynomial, coefficient i multiplies x^i
using Poly = std::vector<BigInt>;

BigMatrix to_big(const IMatrix& a);
BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b);
BigInt trace_power(const IMatrix& a, int n);
std::vector<BigInt> trace_powers(const IMatrix& a, int n_max);  // index n-1 holds tr(A^n)

// number of points of least period n, by Moebius inversion of traces
std::vector<BigInt> least_period_counts(const IMatrix& a, int n_max);

// det(xI - A), division free (Berkowitz)
Poly characteristic_polynomial(const IMatrix& a);

int degree(const Poly& p);
Poly poly_gcd(Poly a, Poly b);  // primitive, positive leading coefficient
double poly_eval(const Poly& p, double x);
// |p(x)| relative to the size of its terms
double poly_relative_residual(const Poly& p, double x);
std::string poly_string(const Poly& p);

}  // namespace mcnn
