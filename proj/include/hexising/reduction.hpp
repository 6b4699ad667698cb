// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hexising/instance.hpp"

namespace hexising {

// Gadget variable roles.  N1/Center/N2 are the cubic term's originals (center
// is the bridge, n1 < n2); SlackP couples to all three originals.  The two
// variants differ in where SlackQ sits, matching the two coupler patterns the
// Pegasus layout provides around a cubic site:
//   variant A ("crossbar"):        SlackQ adjacent to both corners N1 and N2
//   variant B ("corner-anchored"): SlackQ adjacent to N1, the center and SlackP
// In the layout, SlackP is the odd partner of the center qubit; variant A's
// SlackQ is a second horizontal qubit crossing both corner qubits (available
// at in-line sites) and variant B's SlackQ is the odd partner of the N1
// corner (available at the sites joining two lines).
enum GadgetRole : int { kRoleN1 = 0, kRoleCenter = 1, kRoleN2 = 2, kRoleP = 3, kRoleQ = 4 };

enum class GadgetVariant : std::uint8_t { A, B };

/// Integer-coefficient Ising over the five roles whose slack minimization
/// reproduces sign * x1 * x2 * x3 + offset exactly.
struct Gadget {
    int sign = +1;
    GadgetVariant variant = GadgetVariant::A;
    std::array<int, 5> linear{};
    std::map<std::pair<int, int>, int> quadratic; // role pairs, first < second
    int offset = 0;

    long long energy(const std::array<int, 5>& spins) const;
};

/// Allowed role pairs for a variant.
std::vector<std::pair<int, int>> gadget_support(GadgetVariant variant);

struct GadgetVerification {
    bool pass = false;
    std::string reason;
    int witness_state = -1;            // original-assignment index 0..7, or -1
    std::array<long long, 32> table{}; // energies, state = x-index * 4 + slack-index
    long long ground_value = 0;
};

/// Checks the ground-state conditions by full 32-state enumeration in exact
/// integer arithmetic:
///  (a) the minimizers over slack assignments are exactly the four originals
///      with sign * x1 x2 x3 = -1,
///  (b) the four ground values are equal,
///  (c) every other original assignment sits strictly above the ground value.
GadgetVerification verify_gadget(const Gadget& gadget);

/// Exhaustive search over integer coefficients in [-bound, bound] on the
/// support, returning the first gadget (canonical slack-coefficient order,
/// original-side coefficients solved per candidate) whose slack minimum
/// reproduces sign * x1 x2 x3 up to a constant, and which passes
/// verify_gadget.  Returns nullopt if the bound admits none.
std::optional<Gadget> derive_gadget(int sign, int bound, GadgetVariant variant);

/// Mirror image under N1 <-> N2 (variant A's support is mirror symmetric, so
/// the mirror of a valid A gadget is again a valid A gadget).
Gadget mirror_gadget(const Gadget& gadget);

/// The frozen gadgets used by reduce_instance (rederived in tests).
const Gadget& builtin_gadget(int sign, GadgetVariant variant);

struct SlackEntry {
    CubicSite site;
    int slack_p = -1;
    int slack_q = -1;
    GadgetVariant variant = GadgetVariant::A;
};

/// Linear + quadratic Ising over original variables plus two slacks per cubic
/// site.  `offset` is the constant added to every assignment's energy so that
/// optima line up exactly with the original cubic instance.
struct ReducedIsing {
    int num_original = 0;
    int num_vars = 0;
    std::vector<double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    double offset = 0.0;
    std::vector<SlackEntry> slacks;
};

/// Replaces each cubic term with the matching-sign gadget.  Without geometry
/// the variants alternate A/B along cubic sites in center-id order; when the
/// lattice (with layout positions) is supplied, in-line sites take variant A
/// and line-joining sites variant B, which is what the Pegasus layout can
/// host.  Slack ids are dense above the original variables.  Terms with zero
/// coefficient are dropped.
ReducedIsing reduce_instance(const CubicIsing& instance,
                             const HeavyHexLattice* lattice = nullptr);

double evaluate_reduced(const ReducedIsing& reduced, std::span<const std::int8_t> spins);

// Fixture format: sign/variant/linear/quad lines plus the 32-row table.
void write_gadget_fixture(const Gadget& gadget, std::ostream& out);
Gadget parse_gadget_fixture(std::istream& in);

// Reduced instance files: "reducedising v1" with lin/quad/offset lines;
// slack registry as a JSON sidecar.
void write_reduced(const ReducedIsing& reduced, std::ostream& out);
ReducedIsing parse_reduced(std::istream& in);
std::string slack_registry_json(const ReducedIsing& reduced);
std::vector<SlackEntry> parse_slack_registry(const std::string& json_text);

} // namespace hexising
