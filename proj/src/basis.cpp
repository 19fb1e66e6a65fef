/*
   Copyright 2026 the vortexmc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "vortexmc/basis.hpp"

#include <complex>
#include <stdexcept>

namespace vmc {

double trig_product_integral(std::span<const WaveVector> factors) {
    const std::size_t m = factors.size();
    if (m == 0) return 1.0;
    if (m > 8) throw std::invalid_argument("trig_product_integral: more than 8 factors");
    for (const auto& k : factors) require_nonzero(k, "trig_product_integral");

    // e_k = (sqrt2/2)(E_k + E_{-k}) for the cosine class and
    //       (-i sqrt2/2)(E_k - E_{-k}) for the sine class, E_q = exp(2 pi i q.x).
    // The integral is the coefficient of E_0 in the 2^m-term expansion.
    std::complex<double> total = 0.0;
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t mask = 0; mask < count; ++mask) {
        int f1 = 0, f2 = 0;
        std::complex<double> coeff = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const bool flip = (mask >> i) & 1;  // pick E_{-k_i} instead of E_{k_i}
            const WaveVector k = factors[i];
            f1 += flip ? -k.k1 : k.k1;
            f2 += flip ? -k.k2 : k.k2;
            if (k.positive()) {
                coeff *= kSqrt2 / 2.0;
            } else {
                coeff *= std::complex<double>(0.0, flip ? kSqrt2 / 2.0 : -kSqrt2 / 2.0);
            }
        }
        if (f1 == 0 && f2 == 0) total += coeff;
    }
    return total.real();
}

}  // namespace vmc
