#pragma once
#ifndef CFPROB_POSSIBILITY_HPP
#define CFPROB_POSSIBILITY_HPP

#include <cfprob/errors.hpp>
#include <cfprob/logic.hpp>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace cfprob {

/// Degree of possibility in [0,1]. Worlds are equally possible iff their
/// degrees compare equal; there is no tolerance.
using Degree = double;

/// Possibility model: a degree for every world of the vocabulary. The
/// possible worlds W are those with positive degree.
class PossibilityModel {
public:
    PossibilityModel() = default;

    /// `degrees[i]` is the possibility of world i; size must be 2^n.
    PossibilityModel(Vocabulary vocab, std::vector<Degree> degrees)
        : vocab_(std::move(vocab)), degrees_(std::move(degrees))
    {
        if (degrees_.size() != vocab_.world_count())
            throw ValidationError("expected " + std::to_string(vocab_.world_count()) + " degrees, got " +
                                  std::to_string(degrees_.size()));
        bool has_top = false;
        for (Degree d : degrees_) {
            if (!(d >= 0.0 && d <= 1.0)) throw ValidationError("pi out of range [0,1]");
            has_top = has_top || d == 1.0;
        }
        if (!has_top) throw ValidationError("no world with pi=1");

        possible_ = vocab_.no_worlds();
        for (std::uint32_t i = 0; i < degrees_.size(); ++i)
            if (degrees_[i] > 0.0) possible_.insert(World{i});

        for (Degree d : degrees_)
            if (d > 0.0 && std::find(ranks_.begin(), ranks_.end(), d) == ranks_.end()) ranks_.push_back(d);
        std::sort(ranks_.begin(), ranks_.end(), std::greater<>());
    }

    const Vocabulary& vocab() const noexcept { return vocab_; }
    Degree degree(World w) const { return degrees_.at(w.index); }
    const std::vector<Degree>& degrees() const noexcept { return degrees_; }

    /// W = {w : π(w) > 0}.
    const WorldSet& possible_worlds() const noexcept { return possible_; }

    /// V = W.
    bool is_complete() const noexcept { return possible_.size() == vocab_.world_count(); }

    /// Distinct positive degrees, highest first. The first is always 1.
    const std::vector<Degree>& ranks() const noexcept { return ranks_; }

    WorldSet worlds_at(Degree rank) const
    {
        WorldSet out = vocab_.no_worlds();
        for (std::uint32_t i = 0; i < degrees_.size(); ++i)
            if (degrees_[i] == rank) out.insert(World{i});
        return out;
    }

    WorldSet models(const Formula& f) const { return cfprob::models(f, vocab_); }

private:
    Vocabulary vocab_;
    std::vector<Degree> degrees_;
    WorldSet possible_;
    std::vector<Degree> ranks_;
};

enum class EpistemicStatus { accepted, rejected, indeterminate };

inline const char* to_string(EpistemicStatus s)
{
    switch (s) {
    case EpistemicStatus::accepted: return "accepted";
    case EpistemicStatus::rejected: return "rejected";
    case EpistemicStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

//==============================================================================
// Queries over propositions (world sets). The Formula overloads below forward
// here after computing ‖A‖.
//==============================================================================

/// ‖K‖: the epistemically possible worlds (π = 1).
inline WorldSet belief_worlds(const PossibilityModel& m) { return m.worlds_at(1.0); }

inline bool believes(const PossibilityModel& m, const WorldSet& a) { return belief_worlds(m).is_subset_of(a); }

/// Π(A) = max π over ‖A‖, 0 when ‖A‖ is empty.
inline Degree pi_measure(const PossibilityModel& m, const WorldSet& a)
{
    Degree best = 0.0;
    for (World w : a) best = std::max(best, m.degree(w));
    return best;
}

/// N(A) = 1 − Π(¬A).
inline Degree necessity(const PossibilityModel& m, const WorldSet& a) { return 1.0 - pi_measure(m, ~a); }

/// Pl(A): the A-worlds of maximal degree. When Π(A) = 0 these are impossible
/// worlds; probabilistic callers treat that case as undefined.
inline WorldSet pl(const PossibilityModel& m, const WorldSet& a)
{
    const Degree top = pi_measure(m, a);
    WorldSet out(a.universe());
    for (World w : a)
        if (m.degree(w) == top) out.insert(w);
    return out;
}

/// A ⇒ B iff Pl(A) ⊆ ‖B‖.
inline bool conditional(const PossibilityModel& m, const WorldSet& a, const WorldSet& b)
{
    return pl(m, a).is_subset_of(b);
}

/// ‖K*_A‖; B ∈ K*_A iff entails(result, B).
inline WorldSet revised_belief_worlds(const PossibilityModel& m, const WorldSet& a) { return pl(m, a); }

inline EpistemicStatus status(const PossibilityModel& m, const WorldSet& a)
{
    if (believes(m, a)) return EpistemicStatus::accepted;
    if (believes(m, ~a)) return EpistemicStatus::rejected;
    return EpistemicStatus::indeterminate;
}

/// Revision lands entirely outside W: ‖A‖ is nonempty but Π(A) = 0.
inline bool is_below_possible_revision(const PossibilityModel& m, const WorldSet& a)
{
    return !a.empty() && pi_measure(m, a) == 0.0;
}

//==============================================================================
// Formula overloads.
//==============================================================================

inline bool believes(const PossibilityModel& m, const Formula& a) { return believes(m, m.models(a)); }
inline Degree pi_measure(const PossibilityModel& m, const Formula& a) { return pi_measure(m, m.models(a)); }
inline Degree necessity(const PossibilityModel& m, const Formula& a) { return necessity(m, m.models(a)); }
inline WorldSet pl(const PossibilityModel& m, const Formula& a) { return pl(m, m.models(a)); }
inline bool conditional(const PossibilityModel& m, const Formula& a, const Formula& b)
{
    return conditional(m, m.models(a), m.models(b));
}
inline WorldSet revised_belief_worlds(const PossibilityModel& m, const Formula& a)
{
    return revised_belief_worlds(m, m.models(a));
}
inline EpistemicStatus status(const PossibilityModel& m, const Formula& a) { return status(m, m.models(a)); }
inline bool is_below_possible_revision(const PossibilityModel& m, const Formula& a)
{
    return is_below_possible_revision(m, m.models(a));
}

}  // namespace cfprob

#endif  // CFPROB_POSSIBILITY_HPP
