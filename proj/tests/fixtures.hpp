#pragma once

#include "amitsur/extension.hpp"

namespace fixtures {

using namespace amitsur;

// F4 = F2[a]/(a^2+a+1) over F2.
inline ExtPtr f4_over_f2() { return over_integers(make_quotient_ring(2, {1, 1, 1})); }
// GR(4,2) = Z4[a]/(a^2+a+1) over Z4.
inline ExtPtr gr42_over_z4() { return over_integers(make_quotient_ring(4, {1, 1, 1})); }
// F2 x F2 over F2.
inline ExtPtr f2xf2_over_f2() {
    auto f2 = integers_mod(2);
    return over_integers(make_product_ring(f2, f2));
}
// F4 (x) F4 over F2.
inline ExtPtr f4f4_over_f2() {
    auto f4 = f4_over_f2();
    return tensor_over_base({f4, f4});
}

}  // namespace fixtures
