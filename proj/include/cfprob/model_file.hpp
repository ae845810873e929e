#pragma once
#ifndef CFPROB_MODEL_FILE_HPP
#define CFPROB_MODEL_FILE_HPP

#include <cfprob/cpm.hpp>
#include <cfprob/errors.hpp>
#include <cfprob/format.hpp>
#include <cfprob/logic.hpp>
#include <cfprob/possibility.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cfprob {

/// A loaded model file: a CPM when worlds carry `p=` weights, otherwise a bare
/// possibility model.
class LoadedModel {
public:
    explicit LoadedModel(PossibilityModel m) : model_(std::move(m)) {}
    explicit LoadedModel(CpmModel m) : model_(std::move(m)) {}

    bool has_weights() const noexcept { return std::holds_alternative<CpmModel>(model_); }

    const PossibilityModel& base() const
    {
        if (const auto* c = std::get_if<CpmModel>(&model_)) return c->base();
        return std::get<PossibilityModel>(model_);
    }

    /// Throws ValidationError for possibility-only files.
    const CpmModel& cpm() const
    {
        if (const auto* c = std::get_if<CpmModel>(&model_)) return *c;
        throw ValidationError("model has no probability weights (p=)");
    }

    const Vocabulary& vocab() const { return base().vocab(); }

private:
    std::variant<PossibilityModel, CpmModel> model_;
};

namespace detail {

inline std::optional<double> parse_decimal(std::string_view s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

/// Parses the line-oriented model format:
///
///     atoms A B C
///     world ~A B C pi=1.0 p=0.5
///
/// Unlisted worlds get pi=0. Syntax problems throw ParseError, violated model
/// invariants throw ValidationError.
inline LoadedModel parse_model(std::istream& in, std::size_t atom_limit = kDefaultAtomLimit)
{
    std::optional<Vocabulary> vocab;
    std::vector<Degree> degrees;
    std::vector<double> weights;
    std::vector<std::size_t> defined_at;
    std::size_t with_p = 0;
    std::size_t without_p = 0;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto fields = detail::split_ws(raw);
        if (fields.empty()) continue;

        if (fields[0] == "atoms") {
            if (vocab) throw ParseError(lineno, "duplicate 'atoms' line");
            std::vector<std::string> names(fields.begin() + 1, fields.end());
            if (names.empty()) throw ParseError(lineno, "'atoms' needs at least one name");
            try {
                vocab.emplace(std::move(names), atom_limit);
            } catch (const VocabularyTooLarge&) {
                throw;
            } catch (const InvalidVocabulary& e) {
                throw ParseError(lineno, e.what());
            }
            degrees.assign(vocab->world_count(), 0.0);
            weights.assign(vocab->world_count(), 0.0);
            defined_at.assign(vocab->world_count(), 0);
            continue;
        }
        if (fields[0] != "world") throw ParseError(lineno, "expected 'atoms' or 'world'");
        if (!vocab) throw ParseError(lineno, "'world' before 'atoms'");

        std::string pattern;
        std::optional<double> pi;
        std::optional<double> p;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const std::string_view f = fields[i];
            if (f.substr(0, 3) == "pi=" || f.substr(0, 2) == "p=") {
                const bool is_pi = f[1] == 'i';
                auto value = detail::parse_decimal(f.substr(is_pi ? 3 : 2));
                if (!value) throw ParseError(lineno, "malformed number in '" + std::string(f) + "'");
                auto& slot = is_pi ? pi : p;
                if (slot) throw ParseError(lineno, "repeated '" + std::string(is_pi ? "pi" : "p") + "' field");
                slot = value;
                continue;
            }
            if (pi || p) throw ParseError(lineno, "literal after pi=/p= fields");
            if (!pattern.empty()) pattern += ' ';
            pattern += f;
        }
        if (!pi) throw ParseError(lineno, "missing pi=");

        World w;
        try {
            w = parse_world_literals(pattern, *vocab);
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
        if (defined_at[w.index] != 0)
            throw ValidationError("line " + std::to_string(lineno) + ": duplicate world (first at line " +
                                  std::to_string(defined_at[w.index]) + ")");
        defined_at[w.index] = lineno;

        if (!(*pi >= 0.0 && *pi <= 1.0))
            throw ValidationError("line " + std::to_string(lineno) + ": pi out of range [0,1]");
        if (p && !(*p > 0.0)) throw ValidationError("line " + std::to_string(lineno) + ": p must be positive");
        if (p && *pi == 0.0)
            throw ValidationError("line " + std::to_string(lineno) + ": p given for an impossible world (pi=0)");
        degrees[w.index] = *pi;
        if (*pi > 0.0) {
            if (p) {
                weights[w.index] = *p;
                ++with_p;
            } else {
                ++without_p;
            }
        }
    }
    if (!vocab) throw ParseError(lineno + 1, "missing 'atoms' line");
    if (with_p > 0 && without_p > 0) throw ValidationError("p missing on some possible worlds");

    PossibilityModel base(*vocab, std::move(degrees));
    if (with_p == 0) return LoadedModel(std::move(base));
    return LoadedModel(CpmModel(std::move(base), std::move(weights)));
}

inline LoadedModel parse_model(std::string_view text, std::size_t atom_limit = kDefaultAtomLimit)
{
    std::istringstream in{std::string(text)};
    return parse_model(in, atom_limit);
}

inline LoadedModel load_model(const std::string& path, std::size_t atom_limit = kDefaultAtomLimit)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path + "'");
    return parse_model(in, atom_limit);
}

/// Serializes possible worlds in index order; load(dump(m)) reproduces m.
inline std::string dump_model(const PossibilityModel& base, const std::vector<double>* weights = nullptr)
{
    std::string out = "atoms";
    for (const auto& a : base.vocab().atoms()) out += ' ' + a;
    out += '\n';
    for (World w : base.possible_worlds()) {
        out += "world " + world_literals(w, base.vocab()) + " pi=" + format_exact(base.degree(w));
        if (weights != nullptr) out += " p=" + format_exact((*weights)[w.index]);
        out += '\n';
    }
    if (!base.is_complete()) out += "# unlisted worlds have pi=0 (impossible)\n";
    return out;
}

inline std::string dump_model(const CpmModel& m) { return dump_model(m.base(), &m.weights()); }

inline std::string dump_model(const LoadedModel& m)
{
    return m.has_weights() ? dump_model(m.cpm()) : dump_model(m.base());
}

}  // namespace cfprob

#endif  // CFPROB_MODEL_FILE_HPP
