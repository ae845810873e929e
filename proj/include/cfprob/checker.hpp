#pragma once
#ifndef CFPROB_CHECKER_HPP
#define CFPROB_CHECKER_HPP

#include <cfprob/cpm.hpp>
#include <cfprob/format.hpp>
#include <cfprob/imaging.hpp>
#include <cfprob/logic.hpp>
#include <cfprob/possibility.hpp>
#include <cfprob/simulation.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace cfprob {

//==============================================================================
// Deterministic randomness
//==============================================================================

/// mt19937_64 output is fixed by the standard; the draws below avoid the
/// implementation-defined std distributions so seeds reproduce everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Uniform in (0, 1].
    double unit_open_closed() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

//==============================================================================
// Formula pools
//==============================================================================

struct PoolEntry {
    Formula formula;
    WorldSet extension;
    std::string text;
};

/// Finite stand-in for "every sentence": deduplicated by model set, in
/// generation order.
class FormulaPool {
public:
    FormulaPool(Vocabulary vocab) : vocab_(std::move(vocab)) {}

    /// Adds `f` unless a formula with the same models is already present.
    bool add(const Formula& f)
    {
        WorldSet ext = models(f, vocab_);
        if (!seen_.insert(ext).second) return false;
        entries_.push_back({f, std::move(ext), to_string(f, vocab_)});
        return true;
    }

    const Vocabulary& vocab() const noexcept { return vocab_; }
    const std::vector<PoolEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const PoolEntry& operator[](std::size_t i) const { return entries_[i]; }

    std::vector<Formula> formulas() const
    {
        std::vector<Formula> out;
        for (const auto& e : entries_) out.push_back(e.formula);
        return out;
    }

private:
    Vocabulary vocab_;
    std::vector<PoolEntry> entries_;
    std::unordered_set<WorldSet, WorldSetHash> seen_;
};

inline constexpr std::size_t kDefaultRandomFormulas = 24;

namespace detail {

inline Formula random_formula(Rng& rng, std::size_t atoms, std::size_t depth)
{
    if (depth <= 1) {
        const std::size_t pick = rng.index(2 * atoms + 2);
        if (pick == 2 * atoms) return Formula::top();
        if (pick == 2 * atoms + 1) return Formula::bottom();
        Formula a = Formula::atom(pick / 2);
        return pick % 2 == 0 ? a : ~a;
    }
    switch (rng.index(5)) {
    case 0: return ~random_formula(rng, atoms, depth - 1);
    case 1: return random_formula(rng, atoms, depth - 1) & random_formula(rng, atoms, depth - 1);
    case 2: return random_formula(rng, atoms, depth - 1) | random_formula(rng, atoms, depth - 1);
    case 3: return Formula::implication(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default:
        return Formula::biconditional(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    }
}

}  // namespace detail

/// ⊤, ⊥ and every literal; from depth 2 every ∧/∨ of two literals over
/// distinct atoms; then `random_count` seeded formulas of the given depth.
inline FormulaPool formula_pool(const Vocabulary& vocab, std::size_t depth, std::uint64_t seed,
                                std::size_t random_count = kDefaultRandomFormulas)
{
    if (depth < 1 || depth > 4) throw std::invalid_argument("pool depth must be in 1..4");
    FormulaPool pool(vocab);
    const std::size_t n = vocab.size();
    pool.add(Formula::top());
    pool.add(Formula::bottom());
    std::vector<Formula> literals;
    for (std::size_t i = 0; i < n; ++i) {
        literals.push_back(Formula::atom(i));
        literals.push_back(~Formula::atom(i));
    }
    for (const auto& l : literals) pool.add(l);
    if (depth >= 2) {
        for (std::size_t i = 0; i < literals.size(); ++i)
            for (std::size_t j = i + 1; j < literals.size(); ++j) {
                if (i / 2 == j / 2) continue;
                pool.add(literals[i] & literals[j]);
                pool.add(literals[i] | literals[j]);
            }
    }
    Rng rng(seed);
    for (std::size_t k = 0; k < random_count; ++k) pool.add(detail::random_formula(rng, n, depth));
    return pool;
}

//==============================================================================
// Random models
//==============================================================================

/// Seeded CPM with `n_ranks` positive ranks: 1.0 and distinct two-decimal
/// values below it, every rank inhabited where worlds allow. Incomplete models
/// get at least one impossible world. Weights are multiples of 0.001 in (0,1].
inline CpmModel random_cpm(std::uint64_t seed, std::size_t n_atoms, std::size_t n_ranks, bool complete)
{
    if (n_atoms < 1 || n_atoms > 10) throw std::invalid_argument("n_atoms must be in 1..10");
    if (n_ranks < 1 || n_ranks > 6) throw std::invalid_argument("n_ranks must be in 1..6");
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_atoms; ++i)
        names.push_back(n_atoms <= 26 ? std::string(1, static_cast<char>('A' + i)) : "p" + std::to_string(i));
    Vocabulary vocab(std::move(names));
    const std::size_t worlds = vocab.world_count();

    const std::size_t ranks = std::min(n_ranks, complete ? worlds : worlds - 1);
    std::vector<int> hundredths;
    while (hundredths.size() + 1 < ranks) {
        const int k = 1 + static_cast<int>(rng.index(99));
        if (std::find(hundredths.begin(), hundredths.end(), k) == hundredths.end()) hundredths.push_back(k);
    }
    std::sort(hundredths.begin(), hundredths.end(), std::greater<>());
    std::vector<Degree> levels{1.0};
    for (int k : hundredths) levels.push_back(k / 100.0);

    std::vector<std::uint32_t> order(worlds);
    for (std::uint32_t i = 0; i < worlds; ++i) order[i] = i;
    rng.shuffle(order);

    std::vector<Degree> degrees(worlds, 0.0);
    std::size_t next = 0;
    for (; next < levels.size(); ++next) degrees[order[next]] = levels[next];
    if (!complete) degrees[order[next++]] = 0.0;
    const std::size_t options = levels.size() + (complete ? 0 : 1);
    for (; next < worlds; ++next) {
        const std::size_t pick = rng.index(options);
        degrees[order[next]] = pick < levels.size() ? levels[pick] : 0.0;
    }

    std::vector<double> weights(worlds, 0.0);
    for (std::uint32_t i = 0; i < worlds; ++i)
        if (degrees[i] > 0.0) weights[i] = static_cast<double>(1 + rng.index(1000)) / 1000.0;
    return CpmModel(PossibilityModel(std::move(vocab), std::move(degrees)), std::move(weights));
}

/// Parameters of the seeded validation battery: 2..6 atoms, 1..5 ranks,
/// complete or not with equal odds.
struct BatteryParams {
    std::size_t atoms;
    std::size_t ranks;
    bool complete;
};

inline BatteryParams battery_params(std::uint64_t seed)
{
    Rng rng(seed ^ 0xB5AD4ECEDA1CE2A9ULL);
    BatteryParams p{};
    p.atoms = 2 + rng.index(5);
    p.ranks = 1 + rng.index(5);
    p.complete = rng.coin();
    return p;
}

inline CpmModel battery_model(std::uint64_t seed)
{
    const BatteryParams p = battery_params(seed);
    return random_cpm(seed, p.atoms, p.ranks, p.complete);
}

//==============================================================================
// Reports
//==============================================================================

struct CheckRecord {
    CheckRecord() = default;
    CheckRecord(std::string claim_, std::string instantiation_, std::string expected_, std::string actual_,
                double deviation_ = 0.0, bool passed_ = true, std::string note_ = {})
        : claim(std::move(claim_)), instantiation(std::move(instantiation_)), expected(std::move(expected_)),
          actual(std::move(actual_)), deviation(deviation_), passed(passed_), note(std::move(note_))
    {
    }

    std::string claim;
    std::string instantiation;
    std::string expected;
    std::string actual;
    double deviation = 0.0;
    bool passed = true;
    std::string note;
};

struct ClaimTally {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::size_t notes = 0;
};

/// Tallies every check per claim id; keeps records for failures and noted
/// cases (and for passing checks when `keep_passing` is set).
class CheckReport {
public:
    explicit CheckReport(std::string suite = "", std::uint64_t seed = 0, bool keep_passing = false)
        : suite_(std::move(suite)), seed_(seed), keep_passing_(keep_passing)
    {
    }

    void record(CheckRecord r)
    {
        auto& t = tallies_[r.claim];
        ++t.checks;
        if (!r.passed) ++t.failures;
        if (!r.note.empty()) ++t.notes;
        if (!r.passed || !r.note.empty() || keep_passing_) records_.push_back(std::move(r));
    }

    /// Records a check, building the record only when it will be kept.
    template <typename Describe>
    void check(const std::string& claim, bool passed, Describe&& describe)
    {
        if (passed && !keep_passing_) {
            ++tallies_[claim].checks;
            return;
        }
        CheckRecord r = describe();
        r.claim = claim;
        r.passed = passed;
        record(std::move(r));
    }

    void merge(const CheckReport& other)
    {
        for (const auto& [claim, t] : other.tallies_) {
            auto& mine = tallies_[claim];
            mine.checks += t.checks;
            mine.failures += t.failures;
            mine.notes += t.notes;
        }
        records_.insert(records_.end(), other.records_.begin(), other.records_.end());
    }

    /// Orders records by claim id, then instantiation.
    void finalize()
    {
        std::stable_sort(records_.begin(), records_.end(), [](const CheckRecord& a, const CheckRecord& b) {
            if (a.claim != b.claim) return a.claim < b.claim;
            return a.instantiation < b.instantiation;
        });
    }

    const std::string& suite() const noexcept { return suite_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::map<std::string, ClaimTally>& tallies() const noexcept { return tallies_; }
    const std::vector<CheckRecord>& records() const noexcept { return records_; }

    ClaimTally tally(const std::string& claim) const
    {
        auto it = tallies_.find(claim);
        return it == tallies_.end() ? ClaimTally{} : it->second;
    }

    std::size_t checks() const
    {
        std::size_t n = 0;
        for (const auto& [_, t] : tallies_) n += t.checks;
        return n;
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& [_, t] : tallies_) n += t.failures;
        return n;
    }

    bool passed() const { return failures() == 0; }

private:
    std::string suite_;
    std::uint64_t seed_;
    bool keep_passing_;
    std::map<std::string, ClaimTally> tallies_;
    std::vector<CheckRecord> records_;
};

/// Claim ids and what each one asserts.
inline const std::map<std::string, std::string>& claim_descriptions()
{
    static const std::map<std::string, std::string> kClaims = {
        {"agm.k1_closure", "K*_A is closed: membership is entailment and the conjunction of members is a member"},
        {"agm.k2_success", "A is in K*_A"},
        {"agm.k3_inclusion", "K*_A is included in Cn(K + A)"},
        {"agm.k4_vacuity", "if ~A is not in K then Cn(K + A) is included in K*_A"},
        {"agm.k5_consistency", "complete model: K*_A is inconsistent iff A is unsatisfiable"},
        {"agm.k5_possible_consistency", "incomplete model: K*_A has no possible world iff Pi(A) = 0"},
        {"agm.k6_extensionality", "logically equivalent inputs give the same K*_A"},
        {"agm.k7_superexpansion", "K*_(A&B) is included in Cn(K*_A + B)"},
        {"agm.k8_subexpansion", "if ~B is not in K*_A then Cn(K*_A + B) is included in K*_(A&B)"},
        {"measure.top_bottom", "Pi(true) = 1 and Pi(false) = 0"},
        {"measure.max", "Pi(A | B) = max(Pi(A), Pi(B))"},
        {"measure.necessity_dual", "N(A) = 1 - Pi(~A)"},
        {"measure.acceptance", "A in K iff N(A) > 0 iff Pi(~A) < 1"},
        {"measure.status", "indeterminate iff Pi(A) = Pi(~A) = 1; rejected iff ~A accepted"},
        {"measure.conditional", "A => B iff Pi(A & B) > Pi(A & ~B) or A is unsatisfiable; below-W A: iff A entails B"},
        {"factual.normalization", "P(true) = 1 and P(false) = 0"},
        {"factual.additivity", "P(X | Y) = P(X) + P(Y) for disjoint X, Y"},
        {"factual.certainty", "P(A) = 1 iff A in K"},
        {"revised.normalization", "P*_A(true) = 1, P*_A(false) = 0, P*_A(B) in [0,1] when Pi(A) > 0"},
        {"revised.additivity", "P*_A(X | Y) = P*_A(X) + P*_A(Y) for disjoint X, Y"},
        {"revision.certainty", "A => B iff P*_A(B) = 1 when Pi(A) > 0"},
        {"revision.conditioning", "P*_A(B) = P(B|A) when P(A) > 0"},
        {"simulation.admissible", "sequence supports and characterizing sentences are disjoint and cover W"},
        {"simulation.sequence", "P*_A(B) equals conditioning the most possible function; both undefined together"},
        {"simulation.single", "P*_A(B) = P(B | A & alpha_A); both undefined together"},
        {"imaging.pl_uniform", "imaging with f(v,A) = Pl(A) equals revision"},
        {"imaging.centered", "imaging with the centered selection function equals revision"},
        {"imaging.mass_conservation", "imaging conserves total mass"},
        {"robustness.rank_rescaling", "rescaling weights of a non-selected rank leaves revision unchanged"},
        {"natural_revision.coherence",
         "natural revision: factual P equals P*_A, belief set equals K*_A, order of other worlds kept"},
    };
    return kClaims;
}

//==============================================================================
// AGM postulates
//==============================================================================

/// Checks K*1..K*8 for the revision induced by `m`, quantifying over `pool`.
/// Incomplete models use the K*5 variant relative to W. Revisions with
/// Π(A) = 0 but satisfiable A are noted as below-W revisions.
inline CheckReport check_agm(const PossibilityModel& m, const FormulaPool& pool, bool keep_passing = false)
{
    CheckReport report("agm", 0, keep_passing);
    const WorldSet belief = belief_worlds(m);
    const WorldSet& possible = m.possible_worlds();
    const bool complete = m.is_complete();
    const auto& entries = pool.entries();

    for (const auto& A : entries) {
        const WorldSet& a = A.extension;
        const WorldSet revised = revised_belief_worlds(m, a);
        const WorldSet expansion = belief & a;
        const std::string inst = "A=" + A.text;

        // K*1: Ramsey-test membership (A => B) agrees with entailment, and
        // the conjunction of all members is again a member.
        {
            bool ok = true;
            WorldSet conj = m.vocab().all_worlds();
            for (const auto& B : entries) {
                const bool member = conditional(m, a, B.extension);
                ok = ok && member == entails(revised, B.extension);
                if (member) conj &= B.extension;
            }
            ok = ok && conditional(m, a, conj);
            report.check("agm.k1_closure", ok, [&] { return CheckRecord{"", inst, "closed", "not closed"}; });
        }

        report.check("agm.k2_success", revised.is_subset_of(a),
                     [&] { return CheckRecord{"", inst, "A in K*_A", "A not in K*_A"}; });

        {
            bool ok = expansion.is_subset_of(revised);
            for (const auto& B : entries)
                if (ok && conditional(m, a, B.extension)) ok = entails(expansion, B.extension);
            report.check("agm.k3_inclusion", ok,
                         [&] { return CheckRecord{"", inst, "K*_A within Cn(K+A)", "member outside Cn(K+A)"}; });
        }

        if (!expansion.empty()) {
            bool ok = revised.is_subset_of(expansion);
            for (const auto& B : entries)
                if (ok && entails(expansion, B.extension)) ok = conditional(m, a, B.extension);
            report.check("agm.k4_vacuity", ok,
                         [&] { return CheckRecord{"", inst, "Cn(K+A) within K*_A", "Cn(K+A) member missing"}; });
        }

        if (complete) {
            const bool inconsistent = revised.empty();
            report.check("agm.k5_consistency", inconsistent == a.empty(), [&] {
                return CheckRecord{"", inst, a.empty() ? "inconsistent" : "consistent",
                                   inconsistent ? "inconsistent" : "consistent"};
            });
        } else {
            const bool no_possible = !revised.intersects(possible);
            const bool impossible = pi_measure(m, a) == 0.0;
            CheckRecord r{"agm.k5_possible_consistency", inst, impossible ? "no possible world" : "possible world",
                          no_possible ? "no possible world" : "possible world"};
            r.passed = no_possible == impossible;
            if (is_below_possible_revision(m, a)) r.note = "below-W revision: Pi(A)=0 with satisfiable A";
            report.record(std::move(r));
        }

        {
            const Formula equivalent = dnf_of_worlds(a, m.vocab());
            const bool ok = revised_belief_worlds(m, models(equivalent, m.vocab())) == revised &&
                            revised_belief_worlds(m, models(~~A.formula, m.vocab())) == revised;
            report.check("agm.k6_extensionality", ok,
                         [&] { return CheckRecord{"", inst, "same K*", "different K*"}; });
        }

        for (const auto& B : entries) {
            const WorldSet revised_ab = revised_belief_worlds(m, a & B.extension);
            const WorldSet revised_then_b = revised & B.extension;
            report.check("agm.k7_superexpansion", revised_then_b.is_subset_of(revised_ab), [&] {
                return CheckRecord{"", inst + ", B=" + B.text, "K*_(A&B) within Cn(K*_A+B)", "violated"};
            });
            if (!revised_then_b.empty()) {
                report.check("agm.k8_subexpansion", revised_ab.is_subset_of(revised_then_b), [&] {
                    return CheckRecord{"", inst + ", B=" + B.text, "Cn(K*_A+B) within K*_(A&B)", "violated"};
                });
            }
        }
    }
    report.finalize();
    return report;
}

//==============================================================================
// Probabilistic theorems
//==============================================================================

inline constexpr std::size_t kAdditivityPairs = 200;
inline constexpr std::size_t kRescalingTrialsPerModel = 2;
inline constexpr double kCertaintyTolerance = 1e-12;
inline constexpr double kMassTolerance = 1e-12;

namespace detail {

inline std::string show(const std::optional<double>& v) { return v ? format_number(*v) : "undefined"; }

inline CheckRecord numeric(std::string inst, double expected, double actual)
{
    return CheckRecord{"", std::move(inst), format_number(expected), format_number(actual),
                       std::abs(expected - actual)};
}

// Three-way agreement of optional probabilities within tolerance.
inline bool agree(const std::optional<double>& x, const std::optional<double>& y)
{
    if (x.has_value() != y.has_value()) return false;
    return !x || std::abs(*x - *y) <= kTolerance;
}

}  // namespace detail

/// Rescales every weight at `rank` by `factor`.
inline CpmModel rescale_rank(const CpmModel& m, Degree rank, double factor)
{
    std::vector<double> w = m.weights();
    for (std::uint32_t i = 0; i < w.size(); ++i)
        if (m.base().degree(World{i}) == rank) w[i] *= factor;
    return CpmModel(m.base(), std::move(w));
}

/// Seeded trials: pick A with Π(A) > 0 and a rank other than Π(A), rescale
/// that rank by a factor in (0,10], and compare P*_A(B) for every pool B.
inline void check_rank_rescaling(const CpmModel& m, const FormulaPool& pool, Rng& rng, std::size_t trials,
                                 CheckReport& report)
{
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pi_measure(m.base(), pool[i].extension) > 0.0) candidates.push_back(i);
    for (std::size_t t = 0; t < trials; ++t) {
        const PoolEntry& A = pool[candidates[rng.index(candidates.size())]];
        const Degree selected = pi_measure(m.base(), A.extension);
        std::vector<Degree> others;
        for (Degree r : m.base().ranks())
            if (r != selected) others.push_back(r);
        const double factor = 10.0 * rng.unit_open_closed();
        if (others.empty()) continue;
        const Degree rank = others[rng.index(others.size())];
        const CpmModel rescaled = rescale_rank(m, rank, factor);
        double worst = 0.0;
        for (const auto& B : pool.entries()) {
            const double before = *counterfactual_prob(m, B.extension, A.extension);
            const double after = *counterfactual_prob(rescaled, B.extension, A.extension);
            worst = std::max(worst, std::abs(before - after));
        }
        report.check("robustness.rank_rescaling", worst <= kTolerance, [&] {
            CheckRecord r{"", "A=" + A.text + ", rank=" + format_number(rank) + ", factor=" + format_number(factor),
                          "0", format_number(worst), worst};
            return r;
        });
    }
}

/// Natural revision by A against counterfactual revision by A.
inline void check_natural_revision(const CpmModel& m, const PoolEntry& A, const FormulaPool& pool,
                                   CheckReport& report, double demotion = kDefaultDemotion)
{
    const std::string inst = "A=" + A.text;
    const CpmModel next = natural_revision(m, A.extension, demotion);
    const WorldSet selected = pl(m.base(), A.extension);
    bool ok = belief_worlds(next.base()) == selected;
    double worst = 0.0;
    for (const auto& B : pool.entries()) {
        const double after = factual_prob(next, B.extension);
        const double revised = *counterfactual_prob(m, B.extension, A.extension);
        worst = std::max(worst, std::abs(after - revised));
    }
    ok = ok && worst <= kTolerance;
    // Order among the non-promoted worlds is kept, and they sit strictly below 1.
    const auto n = static_cast<std::uint32_t>(m.vocab().world_count());
    for (std::uint32_t u = 0; ok && u < n; ++u) {
        if (selected.contains(World{u})) continue;
        const Degree pu = m.base().degree(World{u});
        const Degree qu = next.base().degree(World{u});
        if (pu > 0.0 && !(qu < 1.0)) ok = false;
        for (std::uint32_t v = 0; ok && v < n; ++v) {
            if (selected.contains(World{v})) continue;
            if (pu < m.base().degree(World{v}) && !(qu < next.base().degree(World{v}))) ok = false;
        }
    }
    report.check("natural_revision.coherence", ok,
                 [&] { return CheckRecord{"", inst, "coherent", "incoherent", worst}; });
}

/// Runs the probabilistic battery over all pool pairs of `m`.
inline CheckReport check_theorems(const CpmModel& m, const FormulaPool& pool, std::uint64_t seed,
                                  bool keep_passing = false)
{
    CheckReport report("theorems", seed, keep_passing);
    const PossibilityModel& base = m.base();
    const Vocabulary& vocab = m.vocab();
    const auto& entries = pool.entries();
    const WorldSet all = vocab.all_worlds();
    const WorldSet none = vocab.no_worlds();
    Rng rng(seed);

    {
        const double top = pi_measure(base, all);
        const double bottom = pi_measure(base, none);
        report.check("measure.top_bottom", top == 1.0 && bottom == 0.0,
                     [&] { return CheckRecord{"", "", "1, 0", format_number(top) + ", " + format_number(bottom)}; });
        const double pt = factual_prob(m, all);
        const double pf = factual_prob(m, none);
        report.check("factual.normalization", std::abs(pt - 1.0) <= kTolerance && std::abs(pf) <= kTolerance,
                     [&] { return CheckRecord{"", "", "1, 0", format_number(pt) + ", " + format_number(pf)}; });
    }

    {
        const AdmissibleSequence seq = build_sequence(m);
        const CharacterizingFamily fam = build_family(m);
        WorldSet covered = vocab.no_worlds();
        for (const auto& e : fam.entries()) covered |= e.extension;
        WorldSet supported = vocab.no_worlds();
        for (const auto& e : seq.entries()) supported |= e.dist.support();
        const bool ok = seq.is_admissible() && fam.is_admissible() && covered == base.possible_worlds() &&
                        supported == base.possible_worlds();
        report.check("simulation.admissible", ok, [&] { return CheckRecord{"", "", "admissible", "not admissible"}; });
    }

    const AdmissibleSequence seq = build_sequence(m);
    const CharacterizingFamily fam = build_family(m);

    std::vector<Degree> pis(entries.size());
    std::vector<std::size_t> possible_antecedents;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        pis[i] = pi_measure(base, entries[i].extension);
        if (pis[i] > 0.0) possible_antecedents.push_back(i);
    }

    for (std::size_t i = 0; i < entries.size(); ++i) {
        const PoolEntry& A = entries[i];
        const WorldSet& a = A.extension;
        const WorldSet not_a = ~a;
        const std::string inst = "A=" + A.text;
        const Degree pi_a = pis[i];
        const Degree pi_not_a = pi_measure(base, not_a);

        // N via min over ~A-worlds of (1 - pi), independent of pi_measure.
        {
            double independent = 1.0;
            for (World w : not_a) independent = std::min(independent, 1.0 - base.degree(w));
            const double n = necessity(base, a);
            report.check("measure.necessity_dual", std::abs(n - independent) <= kTolerance,
                         [&] { return detail::numeric(inst, independent, n); });
        }
        {
            const bool b = believes(base, a);
            const bool ok = b == (necessity(base, a) > 0.0) && b == (pi_not_a < 1.0);
            report.check("measure.acceptance", ok, [&] {
                return CheckRecord{"", inst, "B(A) iff N(A)>0 iff Pi(~A)<1", b ? "believed" : "not believed"};
            });
        }
        {
            const EpistemicStatus s = status(base, a);
            const bool ok = (s == EpistemicStatus::indeterminate) == (pi_a == 1.0 && pi_not_a == 1.0) &&
                            (s == EpistemicStatus::rejected) == believes(base, not_a) &&
                            (status(base, not_a) == EpistemicStatus::accepted) == (s == EpistemicStatus::rejected);
            report.check("measure.status", ok, [&] { return CheckRecord{"", inst, "consistent", to_string(s)}; });
        }
        {
            const double p = factual_prob(m, a);
            const bool certain = std::abs(p - 1.0) <= kCertaintyTolerance;
            report.check("factual.certainty", certain == believes(base, a), [&] {
                return CheckRecord{"", inst, believes(base, a) ? "1" : "<1", format_number(p)};
            });
        }

        if (pi_a > 0.0) {
            const auto pt = counterfactual_prob(m, all, a);
            const auto pf = counterfactual_prob(m, none, a);
            report.check("revised.normalization",
                         pt && pf && std::abs(*pt - 1.0) <= kTolerance && std::abs(*pf) <= kTolerance,
                         [&] { return CheckRecord{"", inst, "1, 0", detail::show(pt) + ", " + detail::show(pf)}; });

            for (const auto& policy : {SelectionPolicy::pl_uniform(), SelectionPolicy::centered()}) {
                const ImagingAgreementReport r = verify_imaging_agreement(m, A.formula, policy);
                const std::string claim =
                    policy.kind() == SelectionPolicy::Kind::pl_uniform ? "imaging.pl_uniform" : "imaging.centered";
                report.check(claim, r.passed, [&] { return CheckRecord{"", inst, "0", format_number(r.max_deviation), r.max_deviation}; });
                report.check("imaging.mass_conservation", r.mass_drift <= kMassTolerance, [&] {
                    return CheckRecord{"", inst + ", policy=" + to_string(policy.kind()), "0",
                                       format_number(r.mass_drift), r.mass_drift};
                });
            }

            check_natural_revision(m, A, pool, report);
        }

        const double pa = factual_prob(m, a);
        for (std::size_t j = 0; j < entries.size(); ++j) {
            const PoolEntry& B = entries[j];
            const WorldSet& b = B.extension;
            auto pair_inst = [&] { return inst + ", B=" + B.text; };

            {
                const Degree joint = pi_measure(base, a | b);
                const Degree expected = std::max(pi_a, pis[j]);
                report.check("measure.max", joint == expected,
                             [&] { return detail::numeric(pair_inst(), expected, joint); });
            }

            const bool cond = conditional(base, a, b);
            if (is_below_possible_revision(base, a)) {
                // Every A-world is tied at degree 0, so A => B reduces to
                // entailment rather than holding vacuously.
                const bool expected = a.is_subset_of(b);
                report.record(CheckRecord{"measure.conditional", pair_inst(), expected ? "holds" : "fails",
                                          cond ? "holds" : "fails", 0.0, cond == expected,
                                          "below-W antecedent: compared with entailment over pi=0 worlds"});
            } else {
                const bool via_measure = pi_measure(base, a & b) > pi_measure(base, a & ~b) || pi_a == 0.0;
                report.check("measure.conditional", cond == via_measure, [&] {
                    return CheckRecord{"", pair_inst(), via_measure ? "holds" : "fails", cond ? "holds" : "fails"};
                });
            }

            const auto direct = counterfactual_prob(m, b, a);
            const auto via_seq = revise_via_sequence(seq, a, b);
            const auto via_single = revise_via_single(fam, a, b);
            report.check("simulation.sequence", detail::agree(direct, via_seq) && direct.has_value() == (pi_a > 0.0),
                         [&] {
                             return CheckRecord{"", pair_inst(), detail::show(direct), detail::show(via_seq),
                                                direct && via_seq ? std::abs(*direct - *via_seq) : 0.0};
                         });
            report.check("simulation.single", detail::agree(direct, via_single), [&] {
                return CheckRecord{"", pair_inst(), detail::show(direct), detail::show(via_single),
                                   direct && via_single ? std::abs(*direct - *via_single) : 0.0};
            });

            if (pi_a > 0.0 && direct) {
                const double p = *direct;
                report.check("revised.normalization", p >= 0.0 && p <= 1.0,
                             [&] { return CheckRecord{"", pair_inst(), "[0,1]", format_number(p)}; });
                const bool certain = std::abs(p - 1.0) <= kCertaintyTolerance;
                report.check("revision.certainty", cond == certain, [&] {
                    return CheckRecord{"", pair_inst(), cond ? "1" : "<1", format_number(p), std::abs(1.0 - p)};
                });
            }
            if (pa > 0.0) {
                const auto cp = conditional_prob(m, b, a);
                const bool ok = direct && cp && std::abs(*direct - *cp) <= kTolerance;
                report.check("revision.conditioning", ok, [&] {
                    return CheckRecord{"", pair_inst(), detail::show(cp), detail::show(direct),
                                       direct && cp ? std::abs(*direct - *cp) : 0.0};
                });
            }
        }
    }

    // Additivity on seeded disjoint pairs (X, ~X & Y).
    for (std::size_t k = 0; k < kAdditivityPairs && !entries.empty(); ++k) {
        const PoolEntry& X = entries[rng.index(entries.size())];
        const PoolEntry& Y = entries[rng.index(entries.size())];
        const WorldSet x = X.extension;
        const WorldSet y = ~X.extension & Y.extension;
        const std::string inst = "X=" + X.text + ", Y=~(" + X.text + ") & (" + Y.text + ")";
        {
            const double lhs = factual_prob(m, x | y);
            const double rhs = factual_prob(m, x) + factual_prob(m, y);
            report.check("factual.additivity", std::abs(lhs - rhs) <= kTolerance,
                         [&] { return detail::numeric(inst, rhs, lhs); });
        }
        if (!possible_antecedents.empty()) {
            const PoolEntry& A = entries[possible_antecedents[rng.index(possible_antecedents.size())]];
            const double lhs = *counterfactual_prob(m, x | y, A.extension);
            const double rhs = *counterfactual_prob(m, x, A.extension) + *counterfactual_prob(m, y, A.extension);
            report.check("revised.additivity", std::abs(lhs - rhs) <= kTolerance,
                         [&] { return detail::numeric("A=" + A.text + ", " + inst, rhs, lhs); });
        }
    }

    if (!possible_antecedents.empty()) check_rank_rescaling(m, pool, rng, kRescalingTrialsPerModel, report);

    report.finalize();
    return report;
}

}  // namespace cfprob

#endif  // CFPROB_CHECKER_HPP
