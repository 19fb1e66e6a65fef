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

// Runs the full acceptance suite: one PASS/FAIL line per numbered check.
// Slow (tens of minutes single-threaded); run explicitly or via ctest.

#include <algorithm>
#include <cstdio>
#include <iostream>

#include "vortexmc/acceptance.hpp"

int main() {
    const auto results = vmc::run_acceptance(std::cout);
    const auto passed = std::count_if(results.begin(), results.end(),
                                      [](const auto& r) { return r.pass; });
    std::printf("%lld/%zu checks passed\n", static_cast<long long>(passed),
                results.size());
    return passed == static_cast<long long>(results.size()) ? 0 : 1;
}
