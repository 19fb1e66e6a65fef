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

#include <iosfwd>
#include <string>
#include <vector>

namespace vmc {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the numbered acceptance checks (all of them when `only` is empty),
/// logging one PASS/FAIL line per check. The statistical checks use fixed
/// internal seeds so a green suite stays green.
std::vector<CheckResult> run_acceptance(std::ostream& log,
                                        const std::vector<int>& only = {});

/// The exact-algebra subset (checks 1-3); used by the `identities` command.
bool run_identity_checks(std::ostream& log);

}  // namespace vmc
