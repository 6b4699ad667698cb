// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hexising/sampleset.hpp"
#include "hexising/topology.hpp"

namespace hexising {

/// Ising cost function with linear, quadratic and cubic terms over a
/// heavy-hex lattice:
///   C(x) = sum_v c_v x_v + sum_(i,j) c_ij x_i x_j + sum_sites c_l x_l x_n1 x_n2
/// Coefficients are stored as reals; generated instances use +/-1 only, but
/// the evaluator also serves order-reduced problems with integer couplings.
struct CubicIsing {
    int num_nodes = 0;
    std::string lattice_ref;
    std::vector<double> linear;                                   // by node id
    std::vector<std::pair<std::pair<int, int>, double>> quadratic; // sorted edges
    std::vector<std::pair<CubicSite, double>> cubic;               // sorted by center

    std::size_t term_count() const {
        return linear.size() + quadratic.size() + cubic.size();
    }
};

/// Coefficients drawn independently from {+1,-1} with probability 1/2,
/// one stream per term class (see rng.hpp for the splitting rule).
CubicIsing generate_instance(const HeavyHexLattice& lattice, std::uint64_t seed);

double evaluate_energy(const CubicIsing& instance, std::span<const std::int8_t> spins);

/// `shots` spin vectors drawn uniformly, energies attached.
SampleSet random_baseline(const CubicIsing& instance, long long shots, std::uint64_t seed);

// Instance file format ("cubicising v1"): header, `lattice <ref>`, then
//   lin <node> <coef> / quad <u> <v> <coef> / cubic <n1> <center> <n2> <coef>
void write_instance(const CubicIsing& instance, std::ostream& out);
CubicIsing parse_instance(std::istream& in);

} // namespace hexising
