#pragma once

#include <string>

#include "solver/linalg.hpp"

namespace solver {

// {"n": <int>, "A": [[row0...],...], "b": [...]}; ragged rows, non-finite
// values, and zero diagonals are rejected with distinct messages.
LinearSystem load_system_json(const std::string& path);
LinearSystem parse_system_json(const std::string& text);

std::string system_to_json(const LinearSystem& sys);
void save_system_json(const LinearSystem& sys, const std::string& path);

// A start/solution vector: either a bare array or {"solution": [...]}.
Vector load_vector_json(const std::string& path, std::size_t expected_len);

}  // namespace solver
