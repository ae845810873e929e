#pragma once
#ifndef CFPROB_TOOLS_CLI_APP_HPP
#define CFPROB_TOOLS_CLI_APP_HPP

// Command-line front end. `run` is kept separate from main() so the test
// suite can drive it in-process.

#include <cfprob/cfprob.hpp>
#include <cfprob/report_io.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace cfprob::cli {

enum ExitCode : int { kOk = 0, kUndefined = 1, kUsage = 2, kCheckFailed = 3 };

using Json = nlohmann::ordered_json;

struct Options {
    bool json = false;
    std::size_t max_atoms = kDefaultAtomLimit;
    std::string model_path;
    std::string atoms;

    // query
    std::optional<std::string> believes, status, pi, necessity, prob, cond, cf, given, conditional;

    // revise / image / simulate
    std::string by;
    std::string of;
    bool natural = false;
    double demotion = kDefaultDemotion;
    std::string policy = "pl";
    std::string table_path;

    // check / gen
    std::string suite = "all";
    std::size_t depth = 2;
    std::uint64_t seed = 1;
    std::size_t battery = 0;
    std::size_t pool_random = kDefaultRandomFormulas;
    std::size_t gen_atoms = 3;
    std::size_t gen_ranks = 3;
    bool complete = false;
};

class Runner {
public:
    Runner(Options opts, std::ostream& out, std::ostream& err) : o_(std::move(opts)), out_(out), err_(err) {}

    int parse_cmd(const std::string& text)
    {
        const Vocabulary vocab = vocabulary();
        const Formula f = parse_formula(text, vocab);
        const WorldSet ext = models(f, vocab);
        if (o_.json) {
            Json j;
            j["formula"] = to_string(f, vocab);
            j["models"] = world_list(ext, vocab);
            j["dnf"] = to_string(dnf_of_worlds(ext, vocab), vocab);
            emit(j);
        } else {
            out_ << to_string(f, vocab) << '\n';
            for (World w : ext) out_ << "  " << world_literals(w, vocab) << '\n';
        }
        return kOk;
    }

    int worlds_cmd()
    {
        const LoadedModel m = load();
        const PossibilityModel& base = m.base();
        const Vocabulary& vocab = base.vocab();
        const WorldSet belief = belief_worlds(base);
        if (o_.json) {
            Json rows = Json::array();
            for (std::uint32_t i = 0; i < vocab.world_count(); ++i) {
                const World w{i};
                Json r;
                r["world"] = world_literals(w, vocab);
                r["pi"] = base.degree(w);
                if (m.has_weights()) r["p"] = m.cpm().weight(w);
                rows.push_back(std::move(r));
            }
            Json j;
            j["atoms"] = vocab.atoms();
            j["complete"] = base.is_complete();
            j["ranks"] = base.ranks();
            j["worlds"] = std::move(rows);
            j["belief_worlds"] = world_list(belief, vocab);
            emit(j);
            return kOk;
        }
        for (std::uint32_t i = 0; i < vocab.world_count(); ++i) {
            const World w{i};
            out_ << world_literals(w, vocab) << "  pi=" << format_number(base.degree(w));
            if (m.has_weights() && base.degree(w) > 0.0) out_ << " p=" << format_number(m.cpm().weight(w));
            if (belief.contains(w)) out_ << "  *";
            out_ << '\n';
        }
        out_ << "complete " << (base.is_complete() ? "yes" : "no") << '\n';
        out_ << "K " << to_string(dnf_of_worlds(belief, vocab), vocab) << '\n';
        return kOk;
    }

    int query_cmd()
    {
        const LoadedModel m = load();
        const Vocabulary& vocab = m.vocab();
        const PossibilityModel& base = m.base();
        auto formula = [&](const std::string& s) { return parse_formula(s, vocab); };

        int selected = !!o_.believes + !!o_.status + !!o_.pi + !!o_.necessity + !!o_.prob + !!o_.cond + !!o_.cf +
                       !!o_.conditional;
        if (selected != 1) throw CLI::ValidationError("query", "give exactly one query flag");
        if ((o_.cond || o_.cf) != o_.given.has_value())
            throw CLI::ValidationError("query", "--given goes with --cond or --cf");

        Json j;
        std::string text;
        std::optional<double> number;
        bool defined = true;
        if (o_.believes) {
            const bool v = believes(base, formula(*o_.believes));
            j = {{"query", "believes"}, {"formula", *o_.believes}, {"value", v}};
            text = v ? "true" : "false";
        } else if (o_.status) {
            const char* v = to_string(status(base, formula(*o_.status)));
            j = {{"query", "status"}, {"formula", *o_.status}, {"value", v}};
            text = v;
        } else if (o_.pi) {
            number = pi_measure(base, formula(*o_.pi));
            j = {{"query", "pi"}, {"formula", *o_.pi}};
        } else if (o_.necessity) {
            number = necessity(base, formula(*o_.necessity));
            j = {{"query", "n"}, {"formula", *o_.necessity}};
        } else if (o_.prob) {
            number = factual_prob(m.cpm(), formula(*o_.prob));
            j = {{"query", "p"}, {"formula", *o_.prob}};
        } else if (o_.cond) {
            number = conditional_prob(m.cpm(), formula(*o_.cond), formula(*o_.given));
            defined = number.has_value();
            j = {{"query", "cond"}, {"formula", *o_.cond}, {"given", *o_.given}};
        } else if (o_.cf) {
            number = counterfactual_prob(m.cpm(), formula(*o_.cf), formula(*o_.given));
            defined = number.has_value();
            j = {{"query", "cf"}, {"formula", *o_.cf}, {"given", *o_.given}};
        } else {
            const auto pos = o_.conditional->find("=>");
            if (pos == std::string::npos) throw CLI::ValidationError("--conditional", "expected 'A => B'");
            const std::string lhs = o_.conditional->substr(0, pos);
            const std::string rhs = o_.conditional->substr(pos + 2);
            const bool v = conditional(base, formula(lhs), formula(rhs));
            j = {{"query", "conditional"}, {"antecedent", trim(lhs)}, {"consequent", trim(rhs)}, {"value", v}};
            text = v ? "true" : "false";
        }
        if (j.contains("value") == false) {
            if (defined) {
                j["value"] = *number;
                text = format_number(*number);
            } else {
                j["value"] = nullptr;
                text = "undefined";
            }
        }
        if (o_.json) {
            j["defined"] = defined;
            emit(j);
        } else {
            out_ << text << '\n';
        }
        if (!defined) err_ << "cfprob: condition '" << *o_.given << "' has no defined probability\n";
        return defined ? kOk : kUndefined;
    }

    int revise_cmd()
    {
        const LoadedModel loaded = load();
        const Vocabulary& vocab = loaded.vocab();
        const Formula a = parse_formula(o_.by, vocab);
        const WorldSet ext = models(a, vocab);

        if (!loaded.has_weights()) {
            // Qualitative revision only.
            const WorldSet revised = revised_belief_worlds(loaded.base(), ext);
            return emit_belief_only(revised, vocab, is_below_possible_revision(loaded.base(), ext));
        }
        const CpmModel& m = loaded.cpm();
        if (pi_measure(m.base(), ext) == 0.0) return impossible("revise", a, vocab);

        const WorldDistribution dist = revise(m, ext);
        const WorldSet revised = revised_belief_worlds(m.base(), ext);
        std::optional<CpmModel> next;
        if (o_.natural) next = natural_revision(m, ext, o_.demotion);

        if (o_.json) {
            Json j;
            j["by"] = to_string(a, vocab);
            j["distribution"] = distribution_json(dist, vocab);
            j["belief_worlds"] = world_list(revised, vocab);
            j["belief_set"] = to_string(dnf_of_worlds(revised, vocab), vocab);
            if (next) {
                Json degrees = Json::object();
                for (World w : next->base().possible_worlds())
                    degrees[world_literals(w, vocab)] = next->base().degree(w);
                j["natural"] = {{"demotion", o_.demotion}, {"pi", std::move(degrees)}, {"model", dump_model(*next)}};
            }
            emit(j);
            return kOk;
        }
        out_ << "world" << std::string(padding(vocab), ' ') << "P*\n";
        print_distribution(dist, vocab);
        out_ << "K* " << to_string(dnf_of_worlds(revised, vocab), vocab) << '\n';
        if (next) out_ << "# natural revision, demotion " << format_number(o_.demotion) << '\n' << dump_model(*next);
        return kOk;
    }

    int image_cmd()
    {
        const LoadedModel loaded = load();
        const CpmModel& m = loaded.cpm();
        const Vocabulary& vocab = m.vocab();
        const Formula a = parse_formula(o_.by, vocab);
        const SelectionPolicy policy = make_policy(vocab);
        const WorldDistribution factual = factual_distribution(m);
        const WorldDistribution imaged = image(factual, policy, m, a);

        std::optional<ImagingAgreementReport> agreement;
        if (policy.kind() != SelectionPolicy::Kind::explicit_table && pi_measure(m.base(), a) > 0.0)
            agreement = verify_imaging_agreement(m, a, policy);

        if (o_.json) {
            Json j;
            j["by"] = to_string(a, vocab);
            j["policy"] = to_string(policy.kind());
            j["distribution"] = distribution_json(imaged, vocab);
            j["total"] = imaged.total();
            if (agreement)
                j["agreement"] = {{"max_deviation", agreement->max_deviation},
                                  {"mass_drift", agreement->mass_drift},
                                  {"passed", agreement->passed}};
            emit(j);
            return kOk;
        }
        out_ << "world" << std::string(padding(vocab), ' ') << "imaged\n";
        print_distribution(imaged, vocab);
        if (agreement)
            out_ << "agrees with revision: " << (agreement->passed ? "yes" : "no") << " (max deviation "
                 << format_number(agreement->max_deviation) << ")\n";
        return kOk;
    }

    int simulate_cmd()
    {
        const LoadedModel loaded = load();
        const CpmModel& m = loaded.cpm();
        const Vocabulary& vocab = m.vocab();
        const WorldSet a = models(parse_formula(o_.by, vocab), vocab);
        const WorldSet b = models(parse_formula(o_.of, vocab), vocab);
        const AdmissibleSequence seq = build_sequence(m);
        const CharacterizingFamily fam = build_family(m);

        const auto direct = counterfactual_prob(m, b, a);
        const auto via_seq = revise_via_sequence(seq, a, b);
        const auto via_single = revise_via_single(fam, a, b);
        const auto rank = most_possible_function(seq, a);
        const CharacterizingSentence* alpha = alpha_for(fam, a);

        auto show = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("undefined"); };
        auto value = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
        if (o_.json) {
            Json j;
            j["by"] = o_.by;
            j["of"] = o_.of;
            j["direct"] = value(direct);
            j["sequence"] = value(via_seq);
            j["single"] = value(via_single);
            j["rank"] = rank ? Json(*rank) : Json(nullptr);
            j["alpha"] = alpha ? Json(to_string(alpha->alpha, vocab)) : Json(nullptr);
            emit(j);
        } else {
            out_ << "method    value\n";
            out_ << "direct    " << show(direct) << '\n';
            out_ << "sequence  " << show(via_seq) << (rank ? "  (rank " + format_number(*rank) + ")" : "") << '\n';
            out_ << "single    " << show(via_single)
                 << (alpha ? "  (alpha " + to_string(alpha->alpha, vocab) + ")" : "") << '\n';
        }
        return direct ? kOk : kUndefined;
    }

    int check_cmd()
    {
        if (o_.suite != "agm" && o_.suite != "theorems" && o_.suite != "all")
            throw CLI::ValidationError("--suite", "expected agm, theorems or all");
        const bool agm = o_.suite != "theorems";
        const bool theorems = o_.suite != "agm";

        CheckReport total(o_.suite, o_.seed);
        if (!o_.model_path.empty()) {
            const LoadedModel loaded = load();
            const FormulaPool pool = formula_pool(loaded.vocab(), o_.depth, o_.seed, o_.pool_random);
            if (agm) total.merge(check_agm(loaded.base(), pool));
            if (theorems) total.merge(check_theorems(loaded.cpm(), pool, o_.seed));
        } else {
            const std::size_t n = o_.battery == 0 ? 1 : o_.battery;
            for (std::size_t k = 0; k < n; ++k) {
                const std::uint64_t seed = o_.seed + k;
                const CpmModel m = battery_model(seed);
                const FormulaPool pool = formula_pool(m.vocab(), o_.depth, seed, o_.pool_random);
                if (agm) total.merge(check_agm(m.base(), pool));
                if (theorems) total.merge(check_theorems(m, pool, seed));
            }
        }
        total.finalize();
        if (o_.json)
            emit(report_to_json(total));
        else
            out_ << report_to_text(total);
        return total.passed() ? kOk : kCheckFailed;
    }

    int gen_cmd()
    {
        const CpmModel m = random_cpm(o_.seed, o_.gen_atoms, o_.gen_ranks, o_.complete);
        if (o_.json) {
            Json j;
            j["seed"] = o_.seed;
            j["model"] = dump_model(m);
            emit(j);
        } else {
            out_ << dump_model(m);
        }
        return kOk;
    }

private:
    static std::string trim(const std::string& s)
    {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }

    Vocabulary vocabulary() const
    {
        if (!o_.model_path.empty()) return load().vocab();
        if (o_.atoms.empty()) throw CLI::ValidationError("parse", "give --model or --atoms");
        std::vector<std::string> names;
        std::string cur;
        for (char c : o_.atoms + " ") {
            if (c == ' ' || c == ',') {
                if (!cur.empty()) names.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        return Vocabulary(std::move(names), o_.max_atoms);
    }

    LoadedModel load() const
    {
        if (o_.model_path.empty()) throw CLI::ValidationError("--model", "a model file is required");
        return load_model(o_.model_path, o_.max_atoms);
    }

    SelectionPolicy make_policy(const Vocabulary& vocab) const
    {
        if (o_.policy == "pl") return SelectionPolicy::pl_uniform();
        if (o_.policy == "centered") return SelectionPolicy::centered();
        if (o_.policy == "file") {
            if (o_.table_path.empty()) throw CLI::ValidationError("--policy", "file policy needs --table");
            std::ifstream in(o_.table_path);
            if (!in) throw Error("cannot open selection table '" + o_.table_path + "'");
            return SelectionPolicy::from_table(parse_selection_table(in, vocab));
        }
        throw CLI::ValidationError("--policy", "expected pl, centered or file");
    }

    static Json world_list(const WorldSet& s, const Vocabulary& vocab)
    {
        Json arr = Json::array();
        for (World w : s) arr.push_back(world_literals(w, vocab));
        return arr;
    }

    static Json distribution_json(const WorldDistribution& d, const Vocabulary& vocab)
    {
        Json obj = Json::object();
        for (const auto& [w, mass] : d.entries()) obj[world_literals(w, vocab)] = mass / d.total();
        return obj;
    }

    // World 0 negates every atom, so its label is the widest.
    static std::size_t label_width(const Vocabulary& vocab) { return world_literals(World{0}, vocab).size(); }

    static std::size_t padding(const Vocabulary& vocab)
    {
        const std::size_t width = std::max<std::size_t>(label_width(vocab), 5) + 2;
        return width - 5;
    }

    void print_distribution(const WorldDistribution& d, const Vocabulary& vocab)
    {
        const std::size_t width = std::max<std::size_t>(label_width(vocab), 5) + 2;
        for (const auto& [w, mass] : d.entries()) {
            const std::string label = world_literals(w, vocab);
            out_ << label << std::string(width - label.size(), ' ') << format_number(mass / d.total()) << '\n';
        }
    }

    int emit_belief_only(const WorldSet& revised, const Vocabulary& vocab, bool below)
    {
        if (o_.json) {
            Json j;
            j["by"] = o_.by;
            j["belief_worlds"] = world_list(revised, vocab);
            j["belief_set"] = to_string(dnf_of_worlds(revised, vocab), vocab);
            j["below_possible"] = below;
            emit(j);
        } else {
            out_ << "K* " << to_string(dnf_of_worlds(revised, vocab), vocab) << '\n';
            if (below) out_ << "# revision lies entirely outside W (Pi = 0)\n";
        }
        return kOk;
    }

    int impossible(const char* what, const Formula& a, const Vocabulary& vocab)
    {
        if (o_.json) {
            Json j;
            j[what] = to_string(a, vocab);
            j["defined"] = false;
            emit(j);
        } else {
            out_ << "undefined\n";
        }
        err_ << "cfprob: '" << to_string(a, vocab) << "' is impossible (Pi = 0)\n";
        return kUndefined;
    }

    void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

    Options o_;
    std::ostream& out_;
    std::ostream& err_;
};

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Counterfactual probability models: queries, revision, imaging and checks", "cfprob"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--max-atoms", o.max_atoms, "Vocabulary size limit")->capture_default_str();

    std::string formula_text;
    auto* parse = app.add_subcommand("parse", "Parse a formula and list its models");
    parse->add_option("formula", formula_text, "Formula")->required();
    parse->add_option("--model", o.model_path, "Model file supplying the atoms");
    parse->add_option("--atoms", o.atoms, "Atom names, space or comma separated");

    auto* worlds = app.add_subcommand("worlds", "List every world with its degree and weight");
    worlds->add_option("--model", o.model_path, "Model file")->required();

    auto* query = app.add_subcommand("query", "Evaluate one query");
    query->add_option("--model", o.model_path, "Model file")->required();
    query->add_option("--believes", o.believes, "Is A believed");
    query->add_option("--status", o.status, "accepted, rejected or indeterminate");
    query->add_option("--pi", o.pi, "Possibility of A");
    query->add_option("--n", o.necessity, "Necessity of A");
    query->add_option("--p", o.prob, "Factual probability of A");
    query->add_option("--cond", o.cond, "Conditional probability P(B|A), with --given");
    query->add_option("--cf", o.cf, "Counterfactual probability P(B^A), with --given");
    query->add_option("--given", o.given, "Condition A");
    query->add_option("--conditional", o.conditional, "Conditional 'A => B'");

    auto* revise_sc = app.add_subcommand("revise", "Revise by a sentence");
    revise_sc->add_option("--model", o.model_path, "Model file")->required();
    revise_sc->add_option("--by", o.by, "Sentence to revise by")->required();
    revise_sc->add_flag("--natural", o.natural, "Also emit the naturally revised model");
    revise_sc->add_option("--demotion", o.demotion, "Demotion factor in (0,1)")->capture_default_str();

    auto* image_sc = app.add_subcommand("image", "Image the factual distribution by a sentence");
    image_sc->add_option("--model", o.model_path, "Model file")->required();
    image_sc->add_option("--by", o.by, "Sentence to image on")->required();
    image_sc->add_option("--policy", o.policy, "pl, centered or file")->capture_default_str();
    image_sc->add_option("--table", o.table_path, "Selection table for --policy file");

    auto* simulate = app.add_subcommand("simulate", "Compare direct, sequence and single-function revision");
    simulate->add_option("--model", o.model_path, "Model file")->required();
    simulate->add_option("--by", o.by, "Revise by A")->required();
    simulate->add_option("--of", o.of, "Query B")->required();

    auto* check = app.add_subcommand("check", "Run verification suites");
    check->add_option("--model", o.model_path, "Model file (default: seeded random battery)");
    check->add_option("--suite", o.suite, "agm, theorems or all")->capture_default_str();
    check->add_option("--depth", o.depth, "Formula pool depth (1..4)")->capture_default_str();
    check->add_option("--seed", o.seed, "Seed")->capture_default_str();
    check->add_option("--battery", o.battery, "Number of random models when no --model is given");
    check->add_option("--pool-random", o.pool_random, "Random formulas per pool")->capture_default_str();

    auto* gen = app.add_subcommand("gen", "Generate a random CPM model file");
    gen->add_option("--seed", o.seed, "Seed")->capture_default_str();
    gen->add_option("--atoms", o.gen_atoms, "Number of atoms (1..10)")->capture_default_str();
    gen->add_option("--ranks", o.gen_ranks, "Number of positive ranks (1..6)")->capture_default_str();
    gen->add_flag("--complete", o.complete, "No impossible worlds");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "cfprob: " << e.what() << '\n';
        return kUsage;
    }

    Runner runner(o, out, err);
    try {
        if (*parse) return runner.parse_cmd(formula_text);
        if (*worlds) return runner.worlds_cmd();
        if (*query) return runner.query_cmd();
        if (*revise_sc) return runner.revise_cmd();
        if (*image_sc) return runner.image_cmd();
        if (*simulate) return runner.simulate_cmd();
        if (*check) return runner.check_cmd();
        if (*gen) return runner.gen_cmd();
    } catch (const ImpossibleCondition& e) {
        err << "cfprob: " << e.what() << '\n';
        out << "undefined\n";
        return kUndefined;
    } catch (const EmptySelection& e) {
        err << "cfprob: " << e.what() << '\n';
        return kUndefined;
    } catch (const ZeroShareDenominator& e) {
        err << "cfprob: " << e.what() << '\n';
        return kUndefined;
    } catch (const CLI::Error& e) {
        err << "cfprob: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "cfprob: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace cfprob::cli

#endif  // CFPROB_TOOLS_CLI_APP_HPP
