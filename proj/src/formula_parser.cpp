#include <cctype>
#include <map>
#include <set>
#include <string>

#include "rwmso/error.hpp"
#include "rwmso/formula.hpp"

namespace rwmso {

namespace {

enum class Tok { End, Ident, Int, LParen, RParen, Comma, Dot, Eq, Bang, Amp, Bar };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

auto describe(const Token& tok) -> std::string
{
    if (tok.kind == Tok::End)
        return "end of input";
    return "'" + tok.text + "'";
}

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    auto next() -> Token
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ == text_.size())
            return {Tok::End, "", start};
        const char ch = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                    text_[pos_] == '\''))
                ++pos_;
            return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), start};
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return {Tok::Int, std::string(text_.substr(start, pos_ - start)), start};
        }
        ++pos_;
        switch (ch) {
        case '(':
            return {Tok::LParen, "(", start};
        case ')':
            return {Tok::RParen, ")", start};
        case ',':
            return {Tok::Comma, ",", start};
        case '.':
            return {Tok::Dot, ".", start};
        case '=':
            return {Tok::Eq, "=", start};
        case '!':
            return {Tok::Bang, "!", start};
        case '&':
            return {Tok::Amp, "&", start};
        case '|':
            return {Tok::Bar, "|", start};
        default:
            throw ParseError(std::string("unexpected character '") + ch + "'", start);
        }
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

auto is_object_name(const std::string& s) -> bool
{
    return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}

auto is_set_name(const std::string& s) -> bool
{
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

auto is_quantifier_keyword(const std::string& s) -> bool
{
    return s == "Ex" || s == "Ax" || s == "EX" || s == "AX";
}

class Parser {
  public:
    Parser(std::string_view text, int label_width) : lexer_(text), t_(label_width)
    {
        advance();
    }

    auto parse() -> Formula
    {
        auto f = formula();
        if (cur_.kind != Tok::End)
            fail("expected end of input");
        return f;
    }

  private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& what)
    {
        throw ParseError(what + ", got " + describe(cur_), cur_.offset);
    }

    void expect(Tok kind, const char* what)
    {
        if (cur_.kind != kind)
            fail(std::string("expected ") + what);
        advance();
    }

    auto object_var() -> std::string
    {
        if (cur_.kind != Tok::Ident || !is_object_name(cur_.text) || cur_.text == "adj")
            fail("expected object variable");
        auto name = cur_.text;
        advance();
        return name;
    }

    auto set_var() -> std::string
    {
        if (cur_.kind != Tok::Ident || !is_set_name(cur_.text) || is_quantifier_keyword(cur_.text))
            fail("expected set variable");
        auto name = cur_.text;
        advance();
        return name;
    }

    auto formula() -> Formula
    {
        if (cur_.kind == Tok::Ident && is_quantifier_keyword(cur_.text))
            return quantified();
        return disjunction();
    }

    auto quantified() -> Formula
    {
        const std::string q = cur_.text;
        advance();
        const bool set_q = q[1] == 'X';
        std::string var = set_q ? set_var() : object_var();
        expect(Tok::Dot, "'.'");
        auto body = formula();
        if (q == "Ex")
            return mso::exists(std::move(var), std::move(body));
        if (q == "Ax")
            return mso::forall(std::move(var), std::move(body));
        if (q == "EX")
            return mso::exists_set(std::move(var), std::move(body));
        return mso::forall_set(std::move(var), std::move(body));
    }

    auto disjunction() -> Formula
    {
        auto f = conjunction();
        while (cur_.kind == Tok::Bar) {
            advance();
            f = mso::disj(std::move(f), conjunction());
        }
        return f;
    }

    auto conjunction() -> Formula
    {
        auto f = unary();
        while (cur_.kind == Tok::Amp) {
            advance();
            f = mso::conj(std::move(f), unary());
        }
        return f;
    }

    auto unary() -> Formula
    {
        if (cur_.kind == Tok::Bang) {
            advance();
            return mso::neg(unary());
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            auto f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (cur_.kind == Tok::Ident && is_quantifier_keyword(cur_.text))
            return quantified();
        return atom();
    }

    auto atom() -> Formula
    {
        if (cur_.kind != Tok::Ident)
            fail("expected formula");
        const Token tok = cur_;
        if (tok.text == "adj") {
            advance();
            expect(Tok::LParen, "'('");
            auto x = object_var();
            expect(Tok::Comma, "','");
            auto y = object_var();
            expect(Tok::RParen, "')'");
            return mso::adj(std::move(x), std::move(y));
        }
        if (tok.text.rfind("label", 0) == 0 &&
            tok.text.find_first_not_of("0123456789", 5) == std::string::npos) {
            advance();
            std::string digits = tok.text.substr(5);
            std::size_t index_offset = tok.offset + 5;
            if (digits.empty()) {
                if (cur_.kind != Tok::Int)
                    fail("expected label index");
                digits = cur_.text;
                index_offset = cur_.offset;
                advance();
            }
            if (digits.size() > 9)
                throw ParseError("label index too large", index_offset);
            const int index = std::stoi(digits);
            if (index < 1 || index > t_)
                throw ParseError("label index " + digits + " outside 1.." + std::to_string(t_),
                                 index_offset);
            expect(Tok::LParen, "'('");
            auto x = object_var();
            expect(Tok::RParen, "')'");
            return mso::label(index, std::move(x));
        }
        if (is_object_name(tok.text)) {
            auto x = object_var();
            expect(Tok::Eq, "'='");
            auto y = object_var();
            return mso::eq(std::move(x), std::move(y));
        }
        auto set = set_var();
        if (cur_.kind == Tok::Eq) {
            advance();
            return mso::set_eq(std::move(set), set_var());
        }
        expect(Tok::LParen, "'(' or '='");
        auto x = object_var();
        expect(Tok::RParen, "')'");
        return mso::in(std::move(set), std::move(x));
    }

    Lexer lexer_;
    Token cur_{Tok::End, "", 0};
    int t_;
};

void collect_names(const Formula& phi, std::set<std::string>& out)
{
    if (!phi.first().empty())
        out.insert(phi.first());
    if (!phi.second().empty())
        out.insert(phi.second());
    if (phi.left())
        collect_names(phi.left(), out);
    if (phi.right())
        collect_names(phi.right(), out);
}

// Gives every binder a name of its own, distinct from all free variables.
class AlphaRenamer {
  public:
    explicit AlphaRenamer(const Formula& phi)
    {
        collect_names(phi, used_);
        auto free = free_variables(phi);
        taken_.insert(free.objects.begin(), free.objects.end());
        taken_.insert(free.sets.begin(), free.sets.end());
    }

    auto rename(const Formula& phi) -> Formula
    {
        using K = FormulaKind;
        switch (phi.kind()) {
        case K::Equal:
            return mso::eq(lookup(phi.first()), lookup(phi.second()));
        case K::SetEqual:
            return mso::set_eq(lookup(phi.first()), lookup(phi.second()));
        case K::Adj:
            return mso::adj(lookup(phi.first()), lookup(phi.second()));
        case K::Label:
            return mso::label(phi.label(), lookup(phi.first()));
        case K::In:
            return mso::in(lookup(phi.first()), lookup(phi.second()));
        case K::Not:
            return mso::neg(rename(phi.left()));
        case K::And:
            return mso::conj(rename(phi.left()), rename(phi.right()));
        case K::Or:
            return mso::disj(rename(phi.left()), rename(phi.right()));
        default:
            break;
        }
        const std::string& original = phi.first();
        std::string fresh = original;
        if (taken_.count(fresh)) {
            for (int k = 1;; ++k) {
                fresh = original + "_" + std::to_string(k);
                if (!used_.count(fresh) && !taken_.count(fresh))
                    break;
            }
            used_.insert(fresh);
        }
        taken_.insert(fresh);
        scopes_[original].push_back(fresh);
        auto body = rename(phi.body());
        scopes_[original].pop_back();
        switch (phi.kind()) {
        case K::ExistsObj:
            return mso::exists(fresh, std::move(body));
        case K::ForallObj:
            return mso::forall(fresh, std::move(body));
        case K::ExistsSet:
            return mso::exists_set(fresh, std::move(body));
        default:
            return mso::forall_set(fresh, std::move(body));
        }
    }

  private:
    auto lookup(const std::string& name) const -> std::string
    {
        auto it = scopes_.find(name);
        if (it == scopes_.end() || it->second.empty())
            return name;
        return it->second.back();
    }

    std::set<std::string> used_;
    std::set<std::string> taken_;
    std::map<std::string, std::vector<std::string>> scopes_;
};

} // namespace

auto parse_formula(std::string_view text, int label_width) -> Formula
{
    if (label_width < 0 || label_width > 32)
        throw Error("label width out of range");
    auto raw = Parser(text, label_width).parse();
    return AlphaRenamer(raw).rename(raw);
}

} // namespace rwmso
