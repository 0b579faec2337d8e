// Copyright 2026 The gto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Loads a channel (default: the first built-in example), prints the
// non-assisted fidelity and the best Gaussian measurement on the third mode.

#include <iostream>

#include "gto/format.hpp"
#include "gto/measurement_optimizer.hpp"
#include "gto/state_io.hpp"

int main(int argc, char **argv) {
    using namespace gto;
    const ThreeModeState channel =
        argc > 1 ? load_state(argv[1]) : build_example_channel(kExampleChannel1);
    if (!is_genuine(channel).holds) {
        std::cerr << "not a genuine correlation matrix\n";
        return 1;
    }
    const InputState coherent = InputState::coherent();
    const OptimizationResult best = optimize(channel, coherent);

    std::cout << "F_tr      " << format_number(best.fidelity_tr, 6) << '\n'
              << "F         " << format_number(best.fidelity, 6) << '\n'
              << "xi, phi   " << format_number(best.xi_bar, 6) << ", " << format_number(best.phi_bar, 6) << '\n'
              << "detector  " << to_string(best.classification) << '\n';
    return 0;
}
