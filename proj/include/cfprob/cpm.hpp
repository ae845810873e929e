#pragma once
#ifndef CFPROB_CPM_HPP
#define CFPROB_CPM_HPP

#include <cfprob/errors.hpp>
#include <cfprob/logic.hpp>
#include <cfprob/possibility.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfprob {

/// Absolute tolerance used for every probabilistic equality in checks.
inline constexpr double kTolerance = 1e-9;

//==============================================================================
// WorldDistribution
//==============================================================================

/// Nonnegative mass over worlds with a positive total. Sentence-level queries
/// normalize by the total, so masses need not sum to 1.
class WorldDistribution {
public:
    using Entry = std::pair<World, double>;

    WorldDistribution() = default;

    /// Zero-mass entries are dropped; duplicate worlds are summed.
    WorldDistribution(std::size_t universe, std::vector<Entry> entries) : universe_(universe)
    {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (auto& [w, m] : entries) {
            if (!(m >= 0.0)) throw ValidationError("negative or NaN mass");
            if (w.index >= universe_) throw ValidationError("world outside vocabulary");
            if (m == 0.0) continue;
            if (!entries_.empty() && entries_.back().first == w)
                entries_.back().second += m;
            else
                entries_.emplace_back(w, m);
            total_ += m;
        }
        if (!(total_ > 0.0)) throw ValidationError("distribution has no mass");
    }

    std::size_t universe() const noexcept { return universe_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    double total() const noexcept { return total_; }

    double mass(World w) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                                   [](const Entry& e, World x) { return e.first < x; });
        return it != entries_.end() && it->first == w ? it->second : 0.0;
    }

    /// Unnormalized mass inside `a`.
    double mass(const WorldSet& a) const
    {
        double sum = 0.0;
        for (const auto& [w, m] : entries_)
            if (a.contains(w)) sum += m;
        return sum;
    }

    /// Normalized probability of the proposition ‖A‖.
    double probability(const WorldSet& a) const { return mass(a) / total_; }

    WorldSet support() const
    {
        WorldSet s(universe_);
        for (const auto& e : entries_) s.insert(e.first);
        return s;
    }

    WorldDistribution normalized() const
    {
        auto copy = entries_;
        for (auto& e : copy) e.second /= total_;
        return WorldDistribution(universe_, std::move(copy));
    }

    /// Restricts to `a`. Returns nullopt when no mass remains.
    std::optional<WorldDistribution> conditioned_on(const WorldSet& a) const
    {
        std::vector<Entry> kept;
        for (const auto& e : entries_)
            if (a.contains(e.first)) kept.push_back(e);
        if (kept.empty()) return std::nullopt;
        return WorldDistribution(universe_, std::move(kept));
    }

private:
    std::size_t universe_ = 0;
    std::vector<Entry> entries_;
    double total_ = 0.0;
};

/// Largest |p(w) − q(w)| over the union of supports, after normalizing both.
inline double max_normalized_deviation(const WorldDistribution& p, const WorldDistribution& q)
{
    double worst = 0.0;
    for (World w : p.support() | q.support())
        worst = std::max(worst, std::abs(p.mass(w) / p.total() - q.mass(w) / q.total()));
    return worst;
}

//==============================================================================
// CpmModel
//==============================================================================

/// Possibility model plus a strictly positive weight on every possible world.
/// Weights are never globally normalized; every probability is a ratio.
class CpmModel {
public:
    CpmModel() = default;

    /// `weights[i]` must be > 0 exactly when world i is possible, 0 otherwise.
    CpmModel(PossibilityModel base, std::vector<double> weights)
        : base_(std::move(base)), weights_(std::move(weights))
    {
        if (weights_.size() != base_.vocab().world_count())
            throw ValidationError("weight table does not cover every world");
        for (std::uint32_t i = 0; i < weights_.size(); ++i) {
            const bool possible = base_.possible_worlds().contains(World{i});
            if (possible && !(weights_[i] > 0.0)) throw ValidationError("p missing or nonpositive on a possible world");
            if (!possible && weights_[i] != 0.0) throw ValidationError("p given for an impossible world");
        }
    }

    const PossibilityModel& base() const noexcept { return base_; }
    const Vocabulary& vocab() const noexcept { return base_.vocab(); }
    double weight(World w) const { return weights_.at(w.index); }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Σ weight over ‖A‖.
    double weight(const WorldSet& a) const
    {
        double sum = 0.0;
        for (World w : a) sum += weights_[w.index];
        return sum;
    }

    WorldSet models(const Formula& f) const { return base_.models(f); }

    /// The weights restricted to `a`, as a distribution (nullopt if no weight).
    std::optional<WorldDistribution> restricted_to(const WorldSet& a) const
    {
        std::vector<WorldDistribution::Entry> entries;
        for (World w : a)
            if (weights_[w.index] > 0.0) entries.emplace_back(w, weights_[w.index]);
        if (entries.empty()) return std::nullopt;
        return WorldDistribution(base_.vocab().world_count(), std::move(entries));
    }

private:
    PossibilityModel base_;
    std::vector<double> weights_;
};

//==============================================================================
// Probabilities
//==============================================================================

/// P(B ↑ A): relative weight of B-worlds within Pl(A). Undefined iff Π(A) = 0.
inline std::optional<double> counterfactual_prob(const CpmModel& m, const WorldSet& b, const WorldSet& a)
{
    if (pi_measure(m.base(), a) == 0.0) return std::nullopt;
    const WorldSet selected = pl(m.base(), a);
    double num = 0.0;
    double den = 0.0;
    for (World w : selected) {
        const double p = m.weight(w);
        den += p;
        if (b.contains(w)) num += p;
    }
    return num / den;
}

/// P(A) = P(A ↑ ⊤). Always defined.
inline double factual_prob(const CpmModel& m, const WorldSet& a)
{
    return *counterfactual_prob(m, a, m.vocab().all_worlds());
}

/// P(B | A) = P(A ∧ B) / P(A); undefined when P(A) = 0.
inline std::optional<double> conditional_prob(const CpmModel& m, const WorldSet& b, const WorldSet& a)
{
    const double pa = factual_prob(m, a);
    if (pa == 0.0) return std::nullopt;
    return factual_prob(m, a & b) / pa;
}

/// P*_A as a world distribution: the weights restricted to Pl(A).
/// Throws ImpossibleCondition when Π(A) = 0.
inline WorldDistribution revise(const CpmModel& m, const WorldSet& a)
{
    if (pi_measure(m.base(), a) == 0.0) throw ImpossibleCondition();
    return *m.restricted_to(pl(m.base(), a));
}

/// The factual probability function as a distribution over the π = 1 worlds.
inline WorldDistribution factual_distribution(const CpmModel& m) { return revise(m, m.vocab().all_worlds()); }

inline constexpr double kDefaultDemotion = 0.5;

/// Promotes Pl(A) to degree 1 and scales every other degree by `demotion`,
/// keeping weights. The result's belief set is K*_A and its factual
/// probabilities equal P*_A.
inline CpmModel natural_revision(const CpmModel& m, const WorldSet& a, double demotion = kDefaultDemotion)
{
    if (!(demotion > 0.0 && demotion < 1.0)) throw std::invalid_argument("demotion factor must lie in (0,1)");
    if (pi_measure(m.base(), a) == 0.0) throw ImpossibleCondition();
    const WorldSet promoted = pl(m.base(), a);
    std::vector<Degree> degrees = m.base().degrees();
    for (std::uint32_t i = 0; i < degrees.size(); ++i)
        degrees[i] = promoted.contains(World{i}) ? 1.0 : demotion * degrees[i];
    return CpmModel(PossibilityModel(m.vocab(), std::move(degrees)), m.weights());
}

//==============================================================================
// Formula overloads.
//==============================================================================

inline std::optional<double> counterfactual_prob(const CpmModel& m, const Formula& b, const Formula& a)
{
    return counterfactual_prob(m, m.models(b), m.models(a));
}
inline double factual_prob(const CpmModel& m, const Formula& a) { return factual_prob(m, m.models(a)); }
inline std::optional<double> conditional_prob(const CpmModel& m, const Formula& b, const Formula& a)
{
    return conditional_prob(m, m.models(b), m.models(a));
}
inline WorldDistribution revise(const CpmModel& m, const Formula& a) { return revise(m, m.models(a)); }
inline CpmModel natural_revision(const CpmModel& m, const Formula& a, double demotion = kDefaultDemotion)
{
    return natural_revision(m, m.models(a), demotion);
}

}  // namespace cfprob

#endif  // CFPROB_CPM_HPP
