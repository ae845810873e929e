#pragma once
#ifndef CFPROB_LOGIC_HPP
#define CFPROB_LOGIC_HPP

#include <cfprob/errors.hpp>
#include <cfprob/worlds.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfprob {

inline constexpr std::size_t kDefaultAtomLimit = 20;

//==============================================================================
// Vocabulary
//==============================================================================

/// Ordered, duplicate-free list of atom names.
class Vocabulary {
public:
    Vocabulary() = default;

    explicit Vocabulary(std::vector<std::string> atoms, std::size_t limit = kDefaultAtomLimit)
        : atoms_(std::move(atoms))
    {
        if (atoms_.size() > limit || atoms_.size() > 30) throw VocabularyTooLarge(atoms_.size(), limit);
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (!is_valid_name(atoms_[i]))
                throw InvalidVocabulary("invalid atom name '" + atoms_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (atoms_[j] == atoms_[i])
                    throw InvalidVocabulary("duplicate atom '" + atoms_[i] + "'");
        }
    }

    static bool is_valid_name(std::string_view name)
    {
        if (name.empty() || name == "true" || name == "false") return false;
        auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
        auto digit = [](char c) { return c >= '0' && c <= '9'; };
        if (!alpha(name.front())) return false;
        return std::all_of(name.begin(), name.end(),
                           [&](char c) { return alpha(c) || digit(c) || c == '_'; });
    }

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::string& name(std::size_t i) const { return atoms_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == name) return i;
        return std::nullopt;
    }

    /// |V| = 2^n.
    std::size_t world_count() const noexcept { return std::size_t{1} << atoms_.size(); }

    WorldSet all_worlds() const { return WorldSet::all(world_count()); }
    WorldSet no_worlds() const { return WorldSet(world_count()); }

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.atoms_ == b.atoms_; }

private:
    std::vector<std::string> atoms_;
};

//==============================================================================
// Formula
//==============================================================================

/// Immutable propositional formula. Atoms are referenced by their index in a
/// Vocabulary; copies share structure.
class Formula {
public:
    enum class Kind { Atom, True, False, Not, And, Or, Implies, Iff };

    /// Defaults to ⊤.
    Formula();

    static Formula atom(std::size_t index);
    static Formula top();
    static Formula bottom();
    static Formula negation(Formula f);
    static Formula conjunction(Formula l, Formula r);
    static Formula disjunction(Formula l, Formula r);
    static Formula implication(Formula l, Formula r);
    static Formula biconditional(Formula l, Formula r);

    Kind kind() const noexcept;
    std::size_t atom_index() const noexcept;

    /// Sole child of a negation, left child of a binary connective.
    const Formula& lhs() const;
    const Formula& rhs() const;

    bool is_binary() const noexcept
    {
        switch (kind()) {
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: return true;
        default: return false;
        }
    }

    bool eval(World w) const
    {
        switch (kind()) {
        case Kind::Atom: return w.holds(atom_index());
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Not: return !lhs().eval(w);
        case Kind::And: return lhs().eval(w) && rhs().eval(w);
        case Kind::Or: return lhs().eval(w) || rhs().eval(w);
        case Kind::Implies: return !lhs().eval(w) || rhs().eval(w);
        case Kind::Iff: return lhs().eval(w) == rhs().eval(w);
        }
        return false;
    }

    /// Highest atom index referenced plus one (0 for closed formulas).
    std::size_t atom_bound() const
    {
        switch (kind()) {
        case Kind::Atom: return atom_index() + 1;
        case Kind::True:
        case Kind::False: return 0;
        case Kind::Not: return lhs().atom_bound();
        default: return std::max(lhs().atom_bound(), rhs().atom_bound());
        }
    }

    /// Structural equality.
    friend bool operator==(const Formula& a, const Formula& b)
    {
        if (a.node_ == b.node_) return true;
        if (a.kind() != b.kind()) return false;
        switch (a.kind()) {
        case Kind::Atom: return a.atom_index() == b.atom_index();
        case Kind::True:
        case Kind::False: return true;
        case Kind::Not: return a.lhs() == b.lhs();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
        }
    }

    friend Formula operator~(Formula f) { return negation(std::move(f)); }
    friend Formula operator&(Formula l, Formula r) { return conjunction(std::move(l), std::move(r)); }
    friend Formula operator|(Formula l, Formula r) { return disjunction(std::move(l), std::move(r)); }

private:
    struct Node;

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static Formula make(Kind kind, std::size_t atom, std::optional<Formula> l, std::optional<Formula> r);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    std::size_t atom;
    std::optional<Formula> lhs;
    std::optional<Formula> rhs;
};

inline Formula Formula::make(Kind kind, std::size_t atom, std::optional<Formula> l, std::optional<Formula> r)
{
    return Formula(std::make_shared<const Node>(Node{kind, atom, std::move(l), std::move(r)}));
}

inline Formula::Formula() : Formula(make(Kind::True, 0, {}, {})) {}
inline Formula Formula::atom(std::size_t index) { return make(Kind::Atom, index, {}, {}); }
inline Formula Formula::top() { return make(Kind::True, 0, {}, {}); }
inline Formula Formula::bottom() { return make(Kind::False, 0, {}, {}); }
inline Formula Formula::negation(Formula f) { return make(Kind::Not, 0, std::move(f), {}); }
inline Formula Formula::conjunction(Formula l, Formula r) { return make(Kind::And, 0, std::move(l), std::move(r)); }
inline Formula Formula::disjunction(Formula l, Formula r) { return make(Kind::Or, 0, std::move(l), std::move(r)); }
inline Formula Formula::implication(Formula l, Formula r)
{
    return make(Kind::Implies, 0, std::move(l), std::move(r));
}
inline Formula Formula::biconditional(Formula l, Formula r) { return make(Kind::Iff, 0, std::move(l), std::move(r)); }

inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline std::size_t Formula::atom_index() const noexcept { return node_->atom; }
inline const Formula& Formula::lhs() const { return *node_->lhs; }
inline const Formula& Formula::rhs() const { return *node_->rhs; }

//==============================================================================
// Semantics
//==============================================================================

inline bool eval(World w, const Formula& f) { return f.eval(w); }

/// ‖f‖: every world of `vocab` satisfying `f`.
inline WorldSet models(const Formula& f, const Vocabulary& vocab)
{
    WorldSet out = vocab.no_worlds();
    const auto n = static_cast<std::uint32_t>(vocab.world_count());
    for (std::uint32_t i = 0; i < n; ++i)
        if (f.eval(World{i})) out.insert(World{i});
    return out;
}

/// Vacuously true for the empty set.
inline bool entails(const WorldSet& worlds, const Formula& f)
{
    return std::all_of(worlds.begin(), worlds.end(), [&](World w) { return f.eval(w); });
}

inline bool entails(const WorldSet& worlds, const WorldSet& proposition) { return worlds.is_subset_of(proposition); }

/// Full conjunction of literals describing `w`, atoms in vocabulary order.
inline Formula world_formula(World w, const Vocabulary& vocab)
{
    std::optional<Formula> acc;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        Formula lit = w.holds(i) ? Formula::atom(i) : ~Formula::atom(i);
        acc = acc ? (*acc & lit) : lit;
    }
    return acc ? *acc : Formula::top();
}

/// Canonical DNF: a left-nested disjunction of world formulas ordered by world
/// index; ⊥ for the empty set.
inline Formula dnf_of_worlds(const WorldSet& worlds, const Vocabulary& vocab)
{
    std::optional<Formula> acc;
    for (World w : worlds) {
        Formula term = world_formula(w, vocab);
        acc = acc ? (*acc | term) : term;
    }
    return acc ? *acc : Formula::bottom();
}

//==============================================================================
// World literal syntax: one signed literal per atom, any order, e.g. "~A B C".
//==============================================================================

/// Throws Error when an atom is missing, repeated, or unknown.
inline World parse_world_literals(std::string_view text, const Vocabulary& vocab)
{
    std::vector<bool> seen(vocab.size(), false);
    World w{0};
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t') {
            ++i;
            continue;
        }
        bool positive = true;
        if (text[i] == '~') {
            positive = false;
            ++i;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
        const std::string_view name = text.substr(i, j - i);
        if (name.empty()) throw Error("dangling '~' in world pattern");
        const auto idx = vocab.index_of(name);
        if (!idx) throw UnknownAtom(std::string(name));
        if (seen[*idx]) throw Error("atom '" + std::string(name) + "' appears twice in world pattern");
        seen[*idx] = true;
        if (positive) w.index |= std::uint32_t{1} << *idx;
        i = j;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) throw Error("world pattern is missing atom '" + vocab.name(k) + "'");
    return w;
}

/// Space-separated literals in vocabulary order.
inline std::string world_literals(World w, const Vocabulary& vocab)
{
    std::string out;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (i != 0) out += ' ';
        if (!w.holds(i)) out += '~';
        out += vocab.name(i);
    }
    return out;
}

//==============================================================================
// Printing
//==============================================================================

namespace detail {

// Binding strength; higher binds tighter.
inline int precedence(Formula::Kind k)
{
    switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
    }
}

inline const char* connective(Formula::Kind k)
{
    switch (k) {
    case Formula::Kind::Iff: return " <-> ";
    case Formula::Kind::Implies: return " -> ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::And: return " & ";
    default: return "";
    }
}

inline void print(const Formula& f, const Vocabulary& vocab, std::string& out);

inline void print_operand(const Formula& f, bool parenthesize, const Vocabulary& vocab, std::string& out)
{
    if (parenthesize) out += '(';
    print(f, vocab, out);
    if (parenthesize) out += ')';
}

inline void print(const Formula& f, const Vocabulary& vocab, std::string& out)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Atom: out += vocab.name(f.atom_index()); return;
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Not:
        out += '~';
        print_operand(f.lhs(), f.lhs().is_binary(), vocab, out);
        return;
    default: break;
    }
    const int p = precedence(f.kind());
    const int lp = precedence(f.lhs().kind());
    const int rp = precedence(f.rhs().kind());
    // -> associates to the right, every other binary connective to the left.
    const bool right_assoc = f.kind() == K::Implies;
    print_operand(f.lhs(), right_assoc ? lp <= p : lp < p, vocab, out);
    out += connective(f.kind());
    print_operand(f.rhs(), right_assoc ? rp < p : rp <= p, vocab, out);
}

}  // namespace detail

/// Canonical ASCII rendering; parse_formula(to_string(f)) == f.
inline std::string to_string(const Formula& f, const Vocabulary& vocab)
{
    std::string out;
    detail::print(f, vocab, out);
    return out;
}

//==============================================================================
// Parsing
//==============================================================================

namespace detail {

enum class Tok { Atom, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

inline const char* describe(Tok t)
{
    switch (t) {
    case Tok::Atom: return "atom";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

inline std::vector<Token> tokenize(std::string_view s)
{
    static constexpr std::pair<std::string_view, Tok> kSymbols[] = {
        {"<->", Tok::Iff}, {"->", Tok::Implies}, {"~", Tok::Not},     {"&", Tok::And},
        {"|", Tok::Or},    {"(", Tok::LParen},   {")", Tok::RParen},  {"¬", Tok::Not},
        {"∧", Tok::And},   {"∨", Tok::Or},       {"→", Tok::Implies}, {"↔", Tok::Iff},
        {"⊤", Tok::True},  {"⊥", Tok::False},
    };
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
            std::size_t j = i;
            while (j < s.size() && ((s[j] >= 'A' && s[j] <= 'Z') || (s[j] >= 'a' && s[j] <= 'z') ||
                                    (s[j] >= '0' && s[j] <= '9') || s[j] == '_'))
                ++j;
            std::string word(s.substr(i, j - i));
            const Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Atom;
            out.push_back({kind, i, std::move(word)});
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& [sym, kind] : kSymbols) {
            if (s.substr(i, sym.size()) == sym) {
                out.push_back({kind, i, std::string(sym)});
                i += sym.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw SyntaxError(i, "formula", "'" + std::string(1, c) + "'");
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Vocabulary& vocab) : tokens_(tokenize(text)), vocab_(vocab) {}

    Formula parse()
    {
        Formula f = iff();
        expect(Tok::End, "operator or end of input");
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    bool accept(Tok t)
    {
        if (peek().kind != t) return false;
        ++pos_;
        return true;
    }

    void expect(Tok t, const char* what)
    {
        if (!accept(t)) fail(what);
    }

    [[noreturn]] void fail(const char* expected) const
    {
        const Token& tok = peek();
        throw SyntaxError(tok.pos, expected, tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'");
    }

    Formula iff()
    {
        Formula f = imp();
        while (accept(Tok::Iff)) f = Formula::biconditional(f, imp());
        return f;
    }

    Formula imp()
    {
        Formula f = disj();
        if (accept(Tok::Implies)) return Formula::implication(f, imp());
        return f;
    }

    Formula disj()
    {
        Formula f = conj();
        while (accept(Tok::Or)) f = f | conj();
        return f;
    }

    Formula conj()
    {
        Formula f = unary();
        while (accept(Tok::And)) f = f & unary();
        return f;
    }

    Formula unary()
    {
        const Token& tok = peek();
        switch (tok.kind) {
        case Tok::Not: ++pos_; return ~unary();
        case Tok::True: ++pos_; return Formula::top();
        case Tok::False: ++pos_; return Formula::bottom();
        case Tok::Atom: {
            auto idx = vocab_.index_of(tok.text);
            if (!idx) throw UnknownAtom(tok.text);
            ++pos_;
            return Formula::atom(*idx);
        }
        case Tok::LParen: {
            ++pos_;
            Formula f = iff();
            expect(Tok::RParen, describe(Tok::RParen));
            return f;
        }
        default: fail("atom, constant, '~' or '('");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const Vocabulary& vocab_;
};

}  // namespace detail

/// Parses the formula grammar. Precedence, tightest first: ~ & | -> <->.
/// `->` is right-associative. Throws SyntaxError or UnknownAtom.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab)
{
    return detail::Parser(text, vocab).parse();
}

}  // namespace cfprob

#endif  // CFPROB_LOGIC_HPP
