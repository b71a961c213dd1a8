#pragma once

#include <iosfwd>
#include <string_view>

#include "mtum/montecarlo.hpp"

namespace mtum {

// JSON simulation config using the SimulationConfig field names:
//
//   {
//     "label": "G1",
//     "theta": 10,
//     "boundaries": "0:1:100,200",          // spec string or array of cuts
//     "windows": [[0, 200], [2, 12]],       // or [{"t": 0, "T": 200}, ...]
//     "sample_sizes": [50, 100, 250, 500, 1000],
//     "replications_per_batch": 1000,
//     "batches": 10,
//     "seed": 20240917,                     // optional
//     "threads": 0                          // optional
//   }
//
// Any schema violation raises ParseError.
SimulationConfig parse_simulation_config(std::istream& in);
SimulationConfig parse_simulation_config(std::string_view text);

}  // namespace mtum
