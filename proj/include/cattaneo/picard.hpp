#pragma once

#include <vector>

#include "cattaneo/grid.hpp"
#include "cattaneo/model.hpp"

namespace cattaneo {

struct PicardOptions {
    int nodes = 256;                 // uniform time nodes on [0, T]
    int k_max = 30;
    double tol = 1e-10;              // sup-in-t relative grid-L2 distance of successive iterates
    double nonlinear_scale = 1.0;
    int record_stride = 0;           // keep every stride-th node state; 0 keeps only t = T
};

struct PicardResult {
    std::vector<SpectralState> trajectory;  // recorded states, last one at t = T
    std::vector<double> distances;          // one per iteration
    int iterations = 0;
    bool converged = false;
};

// Fixed-point iteration psi <- psi_lin + Duhamel(F(psi)) on the mild formulation.
// Each sweep integrates the Duhamel term exactly in the linear flow with the force
// interpolated quadratically between nodes; the first iterate is the linear solution.
// Throws NonContractionError when the distances stop decreasing.
PicardResult picard_solve(const SpectralGrid& g, const SpectralState& data, double T,
                          const ModelParams& p, const PicardOptions& opt = {});

}  // namespace cattaneo
