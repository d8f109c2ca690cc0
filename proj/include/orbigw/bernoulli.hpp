#pragma once

#include <vector>

#include "orbigw/rational.hpp"

namespace orbigw {

/// Generalized Bernoulli polynomial value B_m(ell, x): the coefficient of
/// t^m/m! in (t/(e^t - 1))^ell * e^{x t}. Both ell and x may be rational; the
/// rational power is taken through the binomial series on the unit constant
/// term. Values are memoized process-wide.
Rational gen_bernoulli(long m, const Rational& ell, const Rational& x);

/// Classical Bernoulli number B_m = B_m(1, 0).
Rational bernoulli_number(long m);

/// Coefficients c_0..c_K of D/(1 - e^{-D}) = sum c_k D^k, c_k = B_k(1,1)/k!.
std::vector<Rational> euler_maclaurin_coeffs(long K);

}  // namespace orbigw
