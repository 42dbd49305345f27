#pragma once

namespace shehu {

/// J0 and I0. A 30-term power series covers |x| <= 12; larger arguments
/// fall back to the standard library's cylindrical Bessel functions.
long double bessel_j0(long double x);
long double bessel_i0(long double x);

}  // namespace shehu
