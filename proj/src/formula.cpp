#include "rwmso/formula.hpp"

#include <algorithm>
#include <set>

#include "rwmso/error.hpp"

namespace rwmso {

namespace {

auto make(FormulaKind kind, std::string first, std::string second, int label, Formula left,
          Formula right) -> Formula
{
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{
        kind, std::move(first), std::move(second), label, std::move(left), std::move(right)}));
}

} // namespace

auto Formula::kind() const -> FormulaKind { return node_->kind; }
auto Formula::first() const -> const std::string& { return node_->first; }
auto Formula::second() const -> const std::string& { return node_->second; }
auto Formula::label() const -> int { return node_->label; }
auto Formula::left() const -> const Formula& { return node_->left; }
auto Formula::right() const -> const Formula& { return node_->right; }

auto Formula::is_atomic() const -> bool
{
    switch (kind()) {
    case FormulaKind::Equal:
    case FormulaKind::SetEqual:
    case FormulaKind::Adj:
    case FormulaKind::Label:
    case FormulaKind::In:
        return true;
    default:
        return false;
    }
}

auto Formula::is_literal() const -> bool
{
    return is_atomic() || (kind() == FormulaKind::Not && left().is_atomic());
}

auto Formula::is_quantifier() const -> bool
{
    switch (kind()) {
    case FormulaKind::ExistsObj:
    case FormulaKind::ForallObj:
    case FormulaKind::ExistsSet:
    case FormulaKind::ForallSet:
        return true;
    default:
        return false;
    }
}

auto Formula::is_set_quantifier() const -> bool
{
    return kind() == FormulaKind::ExistsSet || kind() == FormulaKind::ForallSet;
}

auto operator==(const Formula& a, const Formula& b) -> bool
{
    if (a.node_ == b.node_)
        return true;
    if (!a.node_ || !b.node_)
        return false;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.first == y.first && x.second == y.second && x.label == y.label &&
           x.left == y.left && x.right == y.right;
}

namespace mso {
auto eq(std::string x, std::string y) -> Formula
{
    return make(FormulaKind::Equal, std::move(x), std::move(y), 0, {}, {});
}
auto set_eq(std::string x, std::string y) -> Formula
{
    return make(FormulaKind::SetEqual, std::move(x), std::move(y), 0, {}, {});
}
auto adj(std::string x, std::string y) -> Formula
{
    return make(FormulaKind::Adj, std::move(x), std::move(y), 0, {}, {});
}
auto label(int i, std::string x) -> Formula
{
    return make(FormulaKind::Label, std::move(x), {}, i, {}, {});
}
auto in(std::string set, std::string x) -> Formula
{
    return make(FormulaKind::In, std::move(set), std::move(x), 0, {}, {});
}
auto neg(Formula f) -> Formula { return make(FormulaKind::Not, {}, {}, 0, std::move(f), {}); }
auto conj(Formula a, Formula b) -> Formula
{
    return make(FormulaKind::And, {}, {}, 0, std::move(a), std::move(b));
}
auto disj(Formula a, Formula b) -> Formula
{
    return make(FormulaKind::Or, {}, {}, 0, std::move(a), std::move(b));
}
auto exists(std::string x, Formula body) -> Formula
{
    return make(FormulaKind::ExistsObj, std::move(x), {}, 0, std::move(body), {});
}
auto forall(std::string x, Formula body) -> Formula
{
    return make(FormulaKind::ForallObj, std::move(x), {}, 0, std::move(body), {});
}
auto exists_set(std::string x, Formula body) -> Formula
{
    return make(FormulaKind::ExistsSet, std::move(x), {}, 0, std::move(body), {});
}
auto forall_set(std::string x, Formula body) -> Formula
{
    return make(FormulaKind::ForallSet, std::move(x), {}, 0, std::move(body), {});
}
} // namespace mso

auto quantifier_rank(const Formula& phi) -> std::size_t
{
    if (phi.is_atomic())
        return 0;
    switch (phi.kind()) {
    case FormulaKind::Not:
        return quantifier_rank(phi.left());
    case FormulaKind::And:
    case FormulaKind::Or:
        return std::max(quantifier_rank(phi.left()), quantifier_rank(phi.right()));
    default:
        return quantifier_rank(phi.body()) + 1;
    }
}

namespace {

auto nnf(const Formula& phi, bool negated) -> Formula
{
    using K = FormulaKind;
    if (phi.is_atomic())
        return negated ? mso::neg(phi) : phi;
    switch (phi.kind()) {
    case K::Not:
        return nnf(phi.left(), !negated);
    case K::And:
    case K::Or: {
        auto l = nnf(phi.left(), negated);
        auto r = nnf(phi.right(), negated);
        bool is_and = (phi.kind() == K::And) != negated;
        return is_and ? mso::conj(std::move(l), std::move(r)) : mso::disj(std::move(l), std::move(r));
    }
    case K::ExistsObj:
    case K::ForallObj: {
        auto b = nnf(phi.body(), negated);
        bool ex = (phi.kind() == K::ExistsObj) != negated;
        return ex ? mso::exists(phi.first(), std::move(b)) : mso::forall(phi.first(), std::move(b));
    }
    case K::ExistsSet:
    case K::ForallSet: {
        auto b = nnf(phi.body(), negated);
        bool ex = (phi.kind() == K::ExistsSet) != negated;
        return ex ? mso::exists_set(phi.first(), std::move(b))
                  : mso::forall_set(phi.first(), std::move(b));
    }
    default:
        throw Error("unreachable formula kind");
    }
}

void collect_free(const Formula& phi, std::vector<std::string>& bound, VariableList& out)
{
    auto note = [&](const std::string& v, std::vector<std::string>& into) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end())
            return;
        if (std::find(into.begin(), into.end(), v) == into.end())
            into.push_back(v);
    };
    using K = FormulaKind;
    switch (phi.kind()) {
    case K::Equal:
    case K::Adj:
        note(phi.first(), out.objects);
        note(phi.second(), out.objects);
        break;
    case K::SetEqual:
        note(phi.first(), out.sets);
        note(phi.second(), out.sets);
        break;
    case K::Label:
        note(phi.first(), out.objects);
        break;
    case K::In:
        // X(x): x is written inside, but X comes first in the text
        note(phi.first(), out.sets);
        note(phi.second(), out.objects);
        break;
    case K::Not:
        collect_free(phi.left(), bound, out);
        break;
    case K::And:
    case K::Or:
        collect_free(phi.left(), bound, out);
        collect_free(phi.right(), bound, out);
        break;
    default:
        bound.push_back(phi.first());
        collect_free(phi.body(), bound, out);
        bound.pop_back();
        break;
    }
}

} // namespace

auto to_nnf(const Formula& phi) -> Formula { return nnf(phi, false); }

auto is_nnf(const Formula& phi) -> bool
{
    if (phi.is_atomic())
        return true;
    switch (phi.kind()) {
    case FormulaKind::Not:
        return phi.left().is_atomic();
    case FormulaKind::And:
    case FormulaKind::Or:
        return is_nnf(phi.left()) && is_nnf(phi.right());
    default:
        return is_nnf(phi.body());
    }
}

auto free_variables(const Formula& phi) -> VariableList
{
    VariableList out;
    std::vector<std::string> bound;
    collect_free(phi, bound, out);
    return out;
}

auto is_sentence(const Formula& phi) -> bool { return free_variables(phi).empty(); }

auto has_set_equality(const Formula& phi) -> bool
{
    if (phi.kind() == FormulaKind::SetEqual)
        return true;
    if (phi.is_atomic())
        return false;
    if (phi.kind() == FormulaKind::And || phi.kind() == FormulaKind::Or)
        return has_set_equality(phi.left()) || has_set_equality(phi.right());
    return has_set_equality(phi.left());
}

auto max_label_index(const Formula& phi) -> int
{
    if (phi.kind() == FormulaKind::Label)
        return phi.label();
    if (phi.is_atomic())
        return 0;
    if (phi.kind() == FormulaKind::And || phi.kind() == FormulaKind::Or)
        return std::max(max_label_index(phi.left()), max_label_index(phi.right()));
    return max_label_index(phi.left());
}

auto formula_size(const Formula& phi) -> std::size_t
{
    if (phi.is_atomic())
        return 1;
    if (phi.kind() == FormulaKind::And || phi.kind() == FormulaKind::Or)
        return 1 + formula_size(phi.left()) + formula_size(phi.right());
    return 1 + formula_size(phi.left());
}

namespace {

void print(const Formula& phi, std::string& out);

void print_operand(const Formula& phi, std::string& out)
{
    if (phi.is_atomic() || phi.kind() == FormulaKind::Not) {
        print(phi, out);
    } else {
        out += '(';
        print(phi, out);
        out += ')';
    }
}

void print(const Formula& phi, std::string& out)
{
    using K = FormulaKind;
    switch (phi.kind()) {
    case K::Equal:
    case K::SetEqual:
        out += phi.first() + " = " + phi.second();
        break;
    case K::Adj:
        out += "adj(" + phi.first() + "," + phi.second() + ")";
        break;
    case K::Label:
        out += "label" + std::to_string(phi.label()) + "(" + phi.first() + ")";
        break;
    case K::In:
        out += phi.first() + "(" + phi.second() + ")";
        break;
    case K::Not:
        out += '!';
        if (phi.left().is_atomic() && phi.left().kind() != K::Equal &&
            phi.left().kind() != K::SetEqual) {
            print(phi.left(), out);
        } else if (phi.left().kind() == K::Not) {
            print(phi.left(), out);
        } else {
            out += '(';
            print(phi.left(), out);
            out += ')';
        }
        break;
    case K::And:
    case K::Or:
        print_operand(phi.left(), out);
        out += phi.kind() == K::And ? " & " : " | ";
        print_operand(phi.right(), out);
        break;
    case K::ExistsObj:
        out += "Ex " + phi.first() + ". ";
        print(phi.body(), out);
        break;
    case K::ForallObj:
        out += "Ax " + phi.first() + ". ";
        print(phi.body(), out);
        break;
    case K::ExistsSet:
        out += "EX " + phi.first() + ". ";
        print(phi.body(), out);
        break;
    case K::ForallSet:
        out += "AX " + phi.first() + ". ";
        print(phi.body(), out);
        break;
    }
}

} // namespace

auto to_string(const Formula& phi) -> std::string
{
    std::string out;
    print(phi, out);
    return out;
}

} // namespace rwmso
