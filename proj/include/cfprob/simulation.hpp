#pragma once
#ifndef CFPROB_SIMULATION_HPP
#define CFPROB_SIMULATION_HPP

#include <cfprob/cpm.hpp>
#include <cfprob/logic.hpp>

#include <optional>
#include <vector>

namespace cfprob {

//==============================================================================
// Admissible sequences of probability functions
//==============================================================================

struct RankedDistribution {
    Degree rank;
    WorldDistribution dist;
};

/// One distribution per possibility rank, highest rank first. Admissible when
/// no world carries mass in two entries.
class AdmissibleSequence {
public:
    AdmissibleSequence() = default;
    explicit AdmissibleSequence(std::vector<RankedDistribution> entries) : entries_(std::move(entries)) {}

    const std::vector<RankedDistribution>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool is_admissible() const
    {
        if (entries_.empty()) return false;
        WorldSet seen(entries_.front().dist.universe());
        for (const auto& e : entries_) {
            const WorldSet s = e.dist.support();
            if (s.intersects(seen)) return false;
            seen |= s;
        }
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (!(entries_[i].rank < entries_[i - 1].rank)) return false;
        return true;
    }

private:
    std::vector<RankedDistribution> entries_;
};

inline AdmissibleSequence build_sequence(const CpmModel& m)
{
    std::vector<RankedDistribution> entries;
    for (Degree rank : m.base().ranks())
        entries.push_back({rank, *m.restricted_to(m.base().worlds_at(rank))});
    return AdmissibleSequence(std::move(entries));
}

/// Index of the highest-ranked entry giving A positive mass.
inline std::optional<std::size_t> most_possible_index(const AdmissibleSequence& seq, const WorldSet& a)
{
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq.entries()[i].dist.mass(a) > 0.0) return i;
    return std::nullopt;
}

/// Rank of the most possible function for A; nullopt when A is impossible.
inline std::optional<Degree> most_possible_function(const AdmissibleSequence& seq, const WorldSet& a)
{
    if (auto i = most_possible_index(seq, a)) return seq.entries()[*i].rank;
    return std::nullopt;
}

/// P_A(B | A) with P_A the most possible function for A.
inline std::optional<double> revise_via_sequence(const AdmissibleSequence& seq, const WorldSet& a, const WorldSet& b)
{
    auto i = most_possible_index(seq, a);
    if (!i) return std::nullopt;
    const WorldDistribution& d = seq.entries()[*i].dist;
    return d.mass(a & b) / d.mass(a);
}

//==============================================================================
// Characterizing sentences over a single distribution
//==============================================================================

struct CharacterizingSentence {
    Degree rank;
    Formula alpha;
    /// ‖alpha‖, evaluated from the formula.
    WorldSet extension;
};

/// One sentence per rank whose models are exactly that rank's worlds, plus a
/// single distribution carrying the raw weights of every possible world.
class CharacterizingFamily {
public:
    CharacterizingFamily() = default;
    CharacterizingFamily(Vocabulary vocab, std::vector<CharacterizingSentence> entries, WorldDistribution single)
        : vocab_(std::move(vocab)), entries_(std::move(entries)), single_(std::move(single))
    {
    }

    const Vocabulary& vocab() const noexcept { return vocab_; }
    const std::vector<CharacterizingSentence>& entries() const noexcept { return entries_; }
    const WorldDistribution& single_dist() const noexcept { return single_; }

    /// Pairwise disjoint sentences.
    bool is_admissible() const
    {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = i + 1; j < entries_.size(); ++j)
                if (entries_[i].extension.intersects(entries_[j].extension)) return false;
        return true;
    }

private:
    Vocabulary vocab_;
    std::vector<CharacterizingSentence> entries_;
    WorldDistribution single_;
};

inline CharacterizingFamily build_family(const CpmModel& m)
{
    std::vector<CharacterizingSentence> entries;
    for (Degree rank : m.base().ranks()) {
        Formula alpha = dnf_of_worlds(m.base().worlds_at(rank), m.vocab());
        WorldSet ext = models(alpha, m.vocab());
        entries.push_back({rank, std::move(alpha), std::move(ext)});
    }
    return CharacterizingFamily(m.vocab(), std::move(entries), *m.restricted_to(m.base().possible_worlds()));
}

/// α_A: the highest-ranked sentence consistent with A.
inline const CharacterizingSentence* alpha_for(const CharacterizingFamily& fam, const WorldSet& a)
{
    for (const auto& e : fam.entries())
        if (e.extension.intersects(a)) return &e;
    return nullptr;
}

/// P(B | A ∧ α_A) under the single distribution.
inline std::optional<double> revise_via_single(const CharacterizingFamily& fam, const WorldSet& a, const WorldSet& b)
{
    const CharacterizingSentence* alpha = alpha_for(fam, a);
    if (alpha == nullptr) return std::nullopt;
    const WorldSet condition = a & alpha->extension;
    const double den = fam.single_dist().mass(condition);
    if (den == 0.0) return std::nullopt;
    return fam.single_dist().mass(condition & b) / den;
}

inline std::optional<Degree> most_possible_function(const AdmissibleSequence& seq, const Formula& a, const Vocabulary& v)
{
    return most_possible_function(seq, models(a, v));
}
inline std::optional<double> revise_via_sequence(const AdmissibleSequence& seq, const Formula& a, const Formula& b,
                                                 const Vocabulary& v)
{
    return revise_via_sequence(seq, models(a, v), models(b, v));
}
inline const CharacterizingSentence* alpha_for(const CharacterizingFamily& fam, const Formula& a)
{
    return alpha_for(fam, models(a, fam.vocab()));
}
inline std::optional<double> revise_via_single(const CharacterizingFamily& fam, const Formula& a, const Formula& b)
{
    return revise_via_single(fam, models(a, fam.vocab()), models(b, fam.vocab()));
}

}  // namespace cfprob

#endif  // CFPROB_SIMULATION_HPP
