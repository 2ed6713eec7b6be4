#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solver/linalg.hpp"

namespace solver {

// Rectangular plate, Dirichlet boundary, nine-point Laplacian.
struct GridProblem {
    std::size_t p = 2;  // mesh divisions along x
    std::size_t q = 2;  // mesh divisions along y
    double h = 1.0;     // grid spacing (cm)
    struct Boundary {
        double left = 0.0, right = 0.0, top = 0.0, bottom = 0.0;  // edge temps (deg C)
    } boundary;
};

struct NamedProblem {
    std::string id;
    LinearSystem system;
    std::optional<Vector> known_solution;
    std::optional<std::vector<double>> known_spectrum;  // iteration-matrix eigenvalues, desc modulus
    Vector default_start;  // published starting vector for this system
};

const std::vector<std::string>& builtin_ids();
NamedProblem builtin(const std::string& id);  // throws invariant_error on unknown id

// One equation per interior node, row-major with x fastest, the hot edge at
// max x. Stencil weights {1,4,1 / 4,-20,4 / 1,4,1}; the common 1/(6h^2) factor
// cancels and is omitted. Boundary contributions move to b with sign
// -(weight * boundary temperature); a corner contributes the average of its
// two adjacent edge temperatures.
LinearSystem heatflow_system(const GridProblem& g);

// 4 / (2 + sqrt(4 - c^2)) with c = cos(pi/p) + cos(pi/q); in [1, 2).
double sor_optimal_omega(std::size_t p, std::size_t q);

// The 21x21 reference matrix for the p=8, q=4 plate, kept as an embedded
// integer constant so the generator's node ordering is pinned independently.
const DenseMatrix& heatflow21_reference();

}  // namespace solver
