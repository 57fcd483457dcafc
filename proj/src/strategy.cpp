// SPDX-License-Identifier: Apache-2.0

#include "isac/strategy.hpp"

#include "isac/rng.hpp"

#include <cmath>
#include <numeric>

namespace isac
{

std::string to_string(ChoiceId id)
{
    switch (id)
    {
    case ChoiceId::G1: return "G1";
    case ChoiceId::G2: return "G2";
    case ChoiceId::G3: return "G3";
    case ChoiceId::G4: return "G4";
    case ChoiceId::S1: return "S1";
    case ChoiceId::S2: return "S2";
    case ChoiceId::S3: return "S3";
    case ChoiceId::S4: return "S4";
    case ChoiceId::S5: return "S5";
    case ChoiceId::S6: return "S6";
    case ChoiceId::Gauss: return "GAUSS";
    }
    return "?";
}

const std::vector<ChoiceId> &all_choices()
{
    static const std::vector<ChoiceId> ids = {ChoiceId::G1, ChoiceId::G2, ChoiceId::G3, ChoiceId::G4,
                                              ChoiceId::S1, ChoiceId::S2, ChoiceId::S3, ChoiceId::S4,
                                              ChoiceId::S5, ChoiceId::S6, ChoiceId::Gauss};
    return ids;
}

ChoiceId parse_choice(const std::string &text)
{
    for (ChoiceId id : all_choices())
        if (to_string(id) == text)
            return id;
    throw std::invalid_argument("unknown choice id \"" + text + "\"");
}

ChoiceFamily family_of(ChoiceId id)
{
    switch (id)
    {
    case ChoiceId::G1:
    case ChoiceId::G2:
    case ChoiceId::G3:
    case ChoiceId::G4: return ChoiceFamily::general;
    case ChoiceId::Gauss: return ChoiceFamily::gaussian;
    default: return ChoiceFamily::sensing;
    }
}

const SlotLayout &slot_layout(ChoiceFamily family)
{
    static const SlotLayout general{{"rs1", "rs2", "v1_t1", "v1_t2"}, {"rc1"}};
    static const SlotLayout sensing{{"rs1", "rs2", "v1_t1", "v2_t1", "v1_t2", "v2_t2"}, {}};
    static const SlotLayout gaussian{{}, {"rs1", "rs2", "v1_t1", "v2_t1", "rc1"}};
    switch (family)
    {
    case ChoiceFamily::general: return general;
    case ChoiceFamily::sensing: return sensing;
    case ChoiceFamily::gaussian: return gaussian;
    }
    return general;
}

void SimplexAllocation::validate() const
{
    if (lambda.empty())
        throw std::invalid_argument("SimplexAllocation: empty");
    for (double l : lambda)
        if (!(l >= 0.0))
            throw std::invalid_argument("SimplexAllocation: negative or NaN entry");
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("SimplexAllocation: entries must sum to 1");
}

ChoiceSpec ChoiceSpec::make(ChoiceId id, int coherence_time)
{
    if (coherence_time < 1)
        throw std::invalid_argument("ChoiceSpec: coherence_time must be >= 1");
    ChoiceSpec spec;
    spec.id = id;
    spec.coherence_time = coherence_time;
    const int per_slot = slot_layout(family_of(id)).per_slot();
    spec.active_mask.assign(static_cast<std::size_t>(per_slot * coherence_time), true);

    // Positions nulled in every slot; S5 alternates by slot parity.
    auto null_positions = [&](int slot, std::initializer_list<int> positions) {
        for (int p : positions)
            spec.active_mask[static_cast<std::size_t>(slot * per_slot + p)] = false;
    };
    for (int t = 0; t < coherence_time; ++t)
    {
        switch (id)
        {
        case ChoiceId::G2: null_positions(t, {4}); break;
        case ChoiceId::G3: null_positions(t, {2, 3}); break;
        case ChoiceId::G4: null_positions(t, {0, 1}); break;
        case ChoiceId::S2: null_positions(t, {0, 1}); break;
        case ChoiceId::S3: null_positions(t, {2, 3, 4, 5}); break;
        case ChoiceId::S4: null_positions(t, {3, 5}); break;
        case ChoiceId::S5:
            if (t % 2 == 0)
                null_positions(t, {2, 3});
            else
                null_positions(t, {4, 5});
            break;
        case ChoiceId::S6:
            if (t > 0)
                for (int p = 0; p < per_slot; ++p)
                    spec.tie_constraints.emplace_back(p, t * per_slot + p);
            break;
        default: break;
        }
    }
    return spec;
}

std::vector<std::vector<int>> ChoiceSpec::free_groups() const
{
    std::vector<int> parent(active_mask.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (const auto &[a, b] : tie_constraints)
    {
        const int ra = find(a);
        const int rb = find(b);
        parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(active_mask.size(), -1);
    for (int k = 0; k < size(); ++k)
    {
        if (!active_mask[static_cast<std::size_t>(k)])
            continue;
        const int root = find(k);
        if (group_of[static_cast<std::size_t>(root)] < 0)
        {
            group_of[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[static_cast<std::size_t>(root)])].push_back(k);
    }
    return groups;
}

SimplexAllocation ChoiceSpec::expand(const SimplexAllocation &reduced) const
{
    const auto groups = free_groups();
    if (reduced.size() != static_cast<int>(groups.size()))
        throw std::invalid_argument("ChoiceSpec::expand: reduced allocation has " + std::to_string(reduced.size()) +
                                    " entries, choice " + isac::to_string(id) + " has " +
                                    std::to_string(groups.size()) + " free coordinates");
    SimplexAllocation full{std::vector<double>(active_mask.size(), 0.0)};
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (int k : groups[g])
            full.lambda[static_cast<std::size_t>(k)] = reduced.lambda[g] / static_cast<double>(groups[g].size());
    return full;
}

void ChoiceSpec::check_allocation(const SimplexAllocation &alloc) const
{
    if (alloc.size() != size())
        throw std::invalid_argument("choice " + isac::to_string(id) + " expects " + std::to_string(size()) +
                                    " allocation entries, got " + std::to_string(alloc.size()));
    alloc.validate();
    for (int k = 0; k < size(); ++k)
        if (!active_mask[static_cast<std::size_t>(k)] && alloc.lambda[static_cast<std::size_t>(k)] != 0.0)
            throw std::invalid_argument("choice " + isac::to_string(id) + ": lambda_" + std::to_string(k + 1) +
                                        " is masked but non-zero");
    for (const auto &[a, b] : tie_constraints)
        if (std::abs(alloc.lambda[static_cast<std::size_t>(a)] - alloc.lambda[static_cast<std::size_t>(b)]) > 1e-12)
            throw std::invalid_argument("choice " + isac::to_string(id) + ": lambda_" + std::to_string(a + 1) +
                                        " must equal lambda_" + std::to_string(b + 1));
}

namespace
{

// Normalized sqrt(lambda)-weighted combination and its power share.
std::pair<cvec, double> combine(const std::vector<std::string> &labels, const double *lambda,
                                const DirectionCatalog &catalog, const cvec &fallback, double power_scale,
                                const std::string &where)
{
    cvec raw = cvec::Zero(catalog.dimension());
    double share = 0.0;
    for (std::size_t p = 0; p < labels.size(); ++p)
    {
        if (lambda[p] <= 0.0)
            continue;
        raw += std::sqrt(lambda[p]) * catalog.at(labels[p]);
        share += lambda[p];
    }
    if (share == 0.0)
        return {fallback, 0.0};
    const double norm = raw.norm();
    if (!(norm > 1e-9 * std::sqrt(share)))
        throw DegenerateDirection(where + ": beam combination cancels to zero");
    return {raw / norm, share * power_scale};
}

} // namespace

TransmitStrategy build_strategy(const ChoiceSpec &choice, const SimplexAllocation &alloc,
                                const DirectionCatalog &catalog, const ScenarioConfig &scenario)
{
    if (choice.coherence_time != scenario.coherence_time)
        throw std::invalid_argument("build_strategy: choice and scenario disagree on coherence time");
    choice.check_allocation(alloc);

    const SlotLayout &layout = slot_layout(choice.family());
    const int per_slot = layout.per_slot();
    const double power_scale = scenario.coherence_time * scenario.p_max;
    const std::string &first_label = layout.det_labels.empty() ? layout.gauss_labels.front() : layout.det_labels.front();
    const cvec fallback = catalog.at(first_label);

    TransmitStrategy strategy;
    for (int t = 0; t < scenario.coherence_time; ++t)
    {
        const double *slot_lambda = alloc.lambda.data() + static_cast<std::ptrdiff_t>(t) * per_slot;
        const std::string where = "slot " + std::to_string(t + 1);
        auto [det_dir, det_power] = combine(layout.det_labels, slot_lambda, catalog, fallback, power_scale, where);
        auto [gauss_dir, gauss_power] =
            combine(layout.gauss_labels, slot_lambda + layout.det_labels.size(), catalog, fallback, power_scale, where);
        strategy.slots.push_back({std::move(det_dir), det_power, std::move(gauss_dir), gauss_power});
    }
    return strategy;
}

AllocationScheme AllocationScheme::parse(const std::string &text)
{
    AllocationScheme scheme;
    if (text == "vertices")
        return scheme;
    const auto colon = text.find(':');
    if (colon != std::string::npos)
    {
        const std::string kind = text.substr(0, colon);
        int value = 0;
        try
        {
            std::size_t used = 0;
            value = std::stoi(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1)
                value = 0;
        }
        catch (const std::exception &)
        {
            value = 0;
        }
        if (value >= 1 && kind == "grid")
            return {Kind::grid, value};
        if (value >= 1 && kind == "dirichlet")
            return {Kind::dirichlet, value};
    }
    throw std::invalid_argument("scheme must be vertices, grid:K or dirichlet:N (K, N >= 1), got \"" + text + "\"");
}

std::string AllocationScheme::to_string() const
{
    switch (kind)
    {
    case Kind::vertices: return "vertices";
    case Kind::grid: return "grid:" + std::to_string(parameter);
    case Kind::dirichlet: return "dirichlet:" + std::to_string(parameter);
    }
    return "?";
}

std::vector<SimplexAllocation> enumerate_allocations(int dimension, const AllocationScheme &scheme,
                                                     std::uint64_t seed)
{
    if (dimension < 1)
        throw std::invalid_argument("enumerate_allocations: dimension must be >= 1");
    const auto n = static_cast<std::size_t>(dimension);
    std::vector<SimplexAllocation> out;

    switch (scheme.kind)
    {
    case AllocationScheme::Kind::vertices:
        for (std::size_t k = 0; k < n; ++k)
        {
            SimplexAllocation a{std::vector<double>(n, 0.0)};
            a.lambda[k] = 1.0;
            out.push_back(std::move(a));
        }
        break;

    case AllocationScheme::Kind::grid:
    {
        if (scheme.parameter < 1)
            throw std::invalid_argument("enumerate_allocations: grid step must be >= 1");
        const int k = scheme.parameter;
        // Compositions of k into n parts in lexicographic order.
        std::vector<int> parts(n, 0);
        auto emit = [&]() {
            SimplexAllocation a{std::vector<double>(n)};
            for (std::size_t j = 0; j < n; ++j)
                a.lambda[j] = static_cast<double>(parts[j]) / k;
            out.push_back(std::move(a));
        };
        auto recurse = [&](auto &&self, std::size_t pos, int remaining) -> void {
            if (pos + 1 == n)
            {
                parts[pos] = remaining;
                emit();
                return;
            }
            for (int v = remaining; v >= 0; --v)
            {
                parts[pos] = v;
                self(self, pos + 1, remaining - v);
            }
        };
        recurse(recurse, 0, k);
        break;
    }

    case AllocationScheme::Kind::dirichlet:
    {
        if (scheme.parameter < 1)
            throw std::invalid_argument("enumerate_allocations: sample count must be >= 1");
        RandomStream stream(seed);
        for (int s = 0; s < scheme.parameter; ++s)
        {
            SimplexAllocation a{std::vector<double>(n)};
            double total = 0.0;
            for (auto &l : a.lambda)
            {
                l = -std::log1p(-stream.uniform());
                total += l;
            }
            for (auto &l : a.lambda)
                l /= total;
            out.push_back(std::move(a));
        }
        break;
    }
    }
    return out;
}

} // namespace isac
