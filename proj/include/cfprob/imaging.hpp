#pragma once
#ifndef CFPROB_IMAGING_HPP
#define CFPROB_IMAGING_HPP

#include <cfprob/cpm.hpp>
#include <cfprob/errors.hpp>
#include <cfprob/logic.hpp>
#include <cfprob/possibility.hpp>

#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cfprob {

/// Explicit selection table: (source world, printed formula) → selected worlds.
/// Keys use the canonical print, so `A & B` and `B & A` are different keys.
class SelectionTable {
public:
    using Key = std::pair<std::uint32_t, std::string>;

    void set(World from, const Formula& a, const Vocabulary& vocab, WorldSet selected)
    {
        if (!selected.is_subset_of(models(a, vocab)))
            throw Error("selection for '" + to_string(a, vocab) + "' contains a world violating it");
        table_[{from.index, to_string(a, vocab)}] = std::move(selected);
    }

    const WorldSet* find(World from, const std::string& key) const
    {
        auto it = table_.find({from.index, key});
        return it == table_.end() ? nullptr : &it->second;
    }

    std::size_t size() const noexcept { return table_.size(); }

private:
    std::map<Key, WorldSet> table_;
};

/// Reads lines `select <world> | <formula> -> <world>[,<world>]*`; blank lines
/// and `#` comments are skipped. Throws ParseError.
inline SelectionTable parse_selection_table(std::istream& in, const Vocabulary& vocab)
{
    SelectionTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string_view rest = line;
        while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
        if (rest.empty() || rest.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        if (rest.substr(0, 7) != "select ") throw ParseError(lineno, "expected 'select'");
        rest.remove_prefix(7);
        const auto bar = rest.find('|');
        // The formula itself may contain '->', so split on the last arrow.
        const auto arrow = rest.rfind("->");
        if (bar == std::string_view::npos || arrow == std::string_view::npos || arrow < bar)
            throw ParseError(lineno, "expected '<world> | <formula> -> <worlds>'");
        try {
            const World from = parse_world_literals(rest.substr(0, bar), vocab);
            const Formula a = parse_formula(rest.substr(bar + 1, arrow - bar - 1), vocab);
            WorldSet selected = vocab.no_worlds();
            std::string_view targets = rest.substr(arrow + 2);
            while (!targets.empty()) {
                const auto comma = targets.find(',');
                selected.insert(parse_world_literals(targets.substr(0, comma), vocab));
                if (comma == std::string_view::npos) break;
                targets.remove_prefix(comma + 1);
            }
            table.set(from, a, vocab, std::move(selected));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return table;
}

/// Selection function f(v, A).
class SelectionPolicy {
public:
    enum class Kind { pl_uniform, centered, explicit_table };

    /// f(v, A) = Pl(A).
    static SelectionPolicy pl_uniform() { return SelectionPolicy(Kind::pl_uniform, nullptr); }
    /// f(v, A) = {v} when v ⊨ A, Pl(A) otherwise.
    static SelectionPolicy centered() { return SelectionPolicy(Kind::centered, nullptr); }
    static SelectionPolicy from_table(SelectionTable table)
    {
        return SelectionPolicy(Kind::explicit_table, std::make_shared<const SelectionTable>(std::move(table)));
    }

    Kind kind() const noexcept { return kind_; }
    const SelectionTable* table() const noexcept { return table_.get(); }

private:
    SelectionPolicy(Kind kind, std::shared_ptr<const SelectionTable> table) : kind_(kind), table_(std::move(table)) {}

    Kind kind_;
    std::shared_ptr<const SelectionTable> table_;
};

inline const char* to_string(SelectionPolicy::Kind k)
{
    switch (k) {
    case SelectionPolicy::Kind::pl_uniform: return "pl_uniform";
    case SelectionPolicy::Kind::centered: return "centered";
    case SelectionPolicy::Kind::explicit_table: return "explicit";
    }
    return "?";
}

namespace detail {

// ‖A‖, Pl(A) and the print key, computed once per imaging call.
struct Antecedent {
    WorldSet extension;
    WorldSet plausible;
    std::string key;
};

inline Antecedent make_antecedent(const CpmModel& m, const Formula& a)
{
    WorldSet ext = m.models(a);
    if (ext.empty()) throw EmptySelection("no world satisfies '" + to_string(a, m.vocab()) + "'");
    WorldSet plausible = pl(m.base(), ext);
    return {std::move(ext), std::move(plausible), to_string(a, m.vocab())};
}

inline WorldSet select(const SelectionPolicy& policy, World v, const Antecedent& a)
{
    switch (policy.kind()) {
    case SelectionPolicy::Kind::pl_uniform: return a.plausible;
    case SelectionPolicy::Kind::centered: {
        if (!a.extension.contains(v)) return a.plausible;
        WorldSet self(a.extension.universe());
        self.insert(v);
        return self;
    }
    case SelectionPolicy::Kind::explicit_table: {
        const WorldSet* found = policy.table()->find(v, a.key);
        if (found == nullptr || found->empty())
            throw EmptySelection("no selection for world " + std::to_string(v.index) + " and '" + a.key + "'");
        return *found;
    }
    }
    return a.plausible;
}

}  // namespace detail

/// f(v, A) under `policy`. Throws EmptySelection when ‖A‖ = ∅.
inline WorldSet select(const SelectionPolicy& policy, const CpmModel& m, World v, const Formula& a)
{
    return detail::select(policy, v, detail::make_antecedent(m, a));
}

/// Generalized imaging: every source world ships its mass to f(v, A), split in
/// proportion to the model's weights on the selected worlds. Total mass is
/// conserved.
inline WorldDistribution image(const WorldDistribution& dist, const SelectionPolicy& policy, const CpmModel& m,
                               const Formula& a)
{
    const detail::Antecedent ante = detail::make_antecedent(m, a);
    std::vector<double> out(m.vocab().world_count(), 0.0);
    for (const auto& [v, mass] : dist.entries()) {
        const WorldSet selected = detail::select(policy, v, ante);
        const double denom = m.weight(selected);
        if (!(denom > 0.0))
            throw ZeroShareDenominator("selected worlds for source " + world_literals(v, m.vocab()) +
                                       " carry no weight");
        for (World w : selected) out[w.index] += mass * (m.weight(w) / denom);
    }
    std::vector<WorldDistribution::Entry> entries;
    for (std::uint32_t i = 0; i < out.size(); ++i)
        if (out[i] > 0.0) entries.emplace_back(World{i}, out[i]);
    return WorldDistribution(out.size(), std::move(entries));
}

struct WorldComparison {
    World world;
    double imaged;   // normalized
    double revised;  // normalized
};

struct ImagingAgreementReport {
    SelectionPolicy::Kind policy;
    std::vector<WorldComparison> worlds;
    double max_deviation = 0.0;
    /// |total(image) − total(input)| / total(input).
    double mass_drift = 0.0;
    bool passed = false;
};

/// Compares imaging of the factual distribution against counterfactual
/// revision by A, world by world. Throws ImpossibleCondition when Π(A) = 0.
inline ImagingAgreementReport verify_imaging_agreement(const CpmModel& m, const Formula& a,
                                                       const SelectionPolicy& policy,
                                                       double tolerance = kTolerance)
{
    const WorldDistribution revised = revise(m, a);
    const WorldDistribution factual = factual_distribution(m);
    const WorldDistribution imaged = image(factual, policy, m, a);

    ImagingAgreementReport report{policy.kind(), {}, 0.0, 0.0, false};
    for (World w : imaged.support() | revised.support())
        report.worlds.push_back({w, imaged.mass(w) / imaged.total(), revised.mass(w) / revised.total()});
    report.max_deviation = max_normalized_deviation(imaged, revised);
    report.mass_drift = std::abs(imaged.total() - factual.total()) / factual.total();
    report.passed = report.max_deviation <= tolerance;
    return report;
}

}  // namespace cfprob

#endif  // CFPROB_IMAGING_HPP
