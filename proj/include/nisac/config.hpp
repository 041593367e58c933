#pragma once

// JSON run configuration. Every key is optional and defaults to the standard
// scenario; unknown keys are rejected.
//
//   {
//     "snr_db": 0, "p_t": 1, "t_slots": 2, "zeta": 0.5, "bits": 2,
//     "sigma_x2": 1.0, "monte_carlo_draws": 100, "design_draws": 16,
//     "td_split": 0.2,
//     "arrays": {"n_t": 8, "irs": [4, 4], "user": [4, 4]},
//     "ce": {"candidates": 80, "elite": 8, "threshold": 1e-3, "max_iterations": 200},
//     "path_loss": {"reference_db": 30, "exponent_b2i": 2.3, "exponent_i2u": 2.2},
//     "positions": {"bs": [x, y, z], "user": [x, y, z], "sub_irs": [[x, y, z], [x, y, z]]},
//     "links": [{"i2u": {"distance": 10, "elevation": 0.5, "azimuth": 0.7},
//                "b2i": {"distance": 30, "elevation": -0.2, "azimuth": 0.1},
//                "bs_departure_elevation": 0.1}, ...],
//     "distances": {"b2i": 30, "i2u": 10},
//     "phase_indices": [0, 1, ...]
//   }
//
// "positions" and "links" are mutually exclusive. "distances" overrides the
// link lengths of both blocks after the angles are fixed.

#include "nisac/scenario.hpp"

#include <string>

namespace nisac {

// Throws ConfigError for malformed JSON, unknown keys, wrong types or values
// rejected by validate(SystemConfig).
SystemConfig parse_config(const std::string& json_text);

// As parse_config; errors mention the path. A missing file is a ConfigError.
SystemConfig load_config(const std::string& path);

}  // namespace nisac
