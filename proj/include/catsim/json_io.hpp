#pragma once

#include <string>

#include "catsim/cat_state.hpp"

namespace catsim {

// State dump format:
//   {"modes": M, "terms": [{"coeff": [re, im], "labels": [[re, im], ...]}, ...]}
// Doubles are written with shortest round-trip precision, so dump -> load is
// bit-faithful for finite values.
std::string state_to_json(const CatState& state);

// Parses the dump format; rejects wrong shapes and non-finite numbers.
CatState state_from_json(const std::string& text);

void save_state(const CatState& state, const std::string& path);
CatState load_state(const std::string& path);

}  // namespace catsim
