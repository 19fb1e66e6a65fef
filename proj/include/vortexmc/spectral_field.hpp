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

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "vortexmc/wave_vector.hpp"

namespace vmc {

/// Real Fourier coefficients <omega, e_l> on exactly Lambda_M, stored in the
/// canonical lexicographic order. Asking for a mode outside the cutoff is an
/// error, never an implicit zero.
class SpectralField {
public:
    explicit SpectralField(int cutoff)
        : cutoff_(cutoff), modes_(lambda_set(cutoff)),
          coeffs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(modes_.size()))) {
        if (cutoff < 1) throw std::invalid_argument("SpectralField: cutoff must be >= 1");
    }

    int cutoff() const { return cutoff_; }
    const std::vector<WaveVector>& modes() const { return modes_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }

    std::size_t index_of(WaveVector l) const {
        auto it = std::lower_bound(modes_.begin(), modes_.end(), l);
        if (it == modes_.end() || *it != l)
            throw std::out_of_range("SpectralField: mode outside cutoff");
        return static_cast<std::size_t>(it - modes_.begin());
    }

    double at(WaveVector l) const { return coeffs_[static_cast<Eigen::Index>(index_of(l))]; }
    double& at(WaveVector l) { return coeffs_[static_cast<Eigen::Index>(index_of(l))]; }

private:
    int cutoff_;
    std::vector<WaveVector> modes_;
    Eigen::VectorXd coeffs_;
};

}  // namespace vmc
