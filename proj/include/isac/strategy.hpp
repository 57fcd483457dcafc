// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/directions.hpp"
#include "isac/scenario.hpp"
#include "isac/transmit_strategy.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isac
{

enum class ChoiceId
{
    G1,
    G2,
    G3,
    G4,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    Gauss
};

enum class ChoiceFamily
{
    general,  // deterministic + Gaussian beams
    sensing,  // deterministic only
    gaussian  // Gaussian only
};

std::string to_string(ChoiceId id);
ChoiceId parse_choice(const std::string &text); // "G1".."G4", "S1".."S6", "GAUSS"
ChoiceFamily family_of(ChoiceId id);
const std::vector<ChoiceId> &all_choices();

// Catalog labels combined in each slot. Allocation index t * per_slot + p
// weights position p of slot t; deterministic labels come first.
struct SlotLayout
{
    std::vector<std::string> det_labels;
    std::vector<std::string> gauss_labels;

    int per_slot() const { return static_cast<int>(det_labels.size() + gauss_labels.size()); }
};

const SlotLayout &slot_layout(ChoiceFamily family);

struct SimplexAllocation
{
    std::vector<double> lambda;

    int size() const { return static_cast<int>(lambda.size()); }
    void validate() const; // lambda >= 0, sum == 1 to 1e-12
};

struct ChoiceSpec
{
    ChoiceId id = ChoiceId::G1;
    int coherence_time = 2;
    std::vector<bool> active_mask;
    std::vector<std::pair<int, int>> tie_constraints; // 0-based index pairs with equal lambda

    static ChoiceSpec make(ChoiceId id, int coherence_time = 2);

    int size() const { return static_cast<int>(active_mask.size()); }
    ChoiceFamily family() const { return family_of(id); }

    // Active indices grouped by tie constraints; each group is one free
    // coordinate of the reduced simplex.
    std::vector<std::vector<int>> free_groups() const;
    int free_dimension() const { return static_cast<int>(free_groups().size()); }

    // Maps a point of the reduced simplex (one weight per free group) to a full
    // allocation; a group's weight is split evenly over its members.
    SimplexAllocation expand(const SimplexAllocation &reduced) const;

    // Simplex invariants plus mask and tie constraints.
    void check_allocation(const SimplexAllocation &alloc) const;
};

class DegenerateDirection : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Slot t gets direction sum_l sqrt(lambda_l) d_l / ||.|| and power
// (sum_l lambda_l) T P_max for each of its two components, so a full simplex
// allocation spends exactly P_max on average.
TransmitStrategy build_strategy(const ChoiceSpec &choice, const SimplexAllocation &alloc,
                                const DirectionCatalog &catalog, const ScenarioConfig &scenario);

struct AllocationScheme
{
    enum class Kind
    {
        vertices,
        grid,
        dirichlet
    };
    Kind kind = Kind::vertices;
    int parameter = 0; // grid step count K or Dirichlet sample count N

    static AllocationScheme parse(const std::string &text); // vertices | grid:K | dirichlet:N
    std::string to_string() const;
};

// Points of the (L-1)-simplex: the L vertices, every composition of K into L
// parts divided by K, or N uniform (Dirichlet(1,...,1)) samples from `seed`.
std::vector<SimplexAllocation> enumerate_allocations(int dimension, const AllocationScheme &scheme,
                                                     std::uint64_t seed = 0);

} // namespace isac
