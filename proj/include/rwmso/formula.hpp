#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace rwmso {

enum class FormulaKind {
    Equal,    // x = y
    SetEqual, // X = Y
    Adj,      // adj(x, y)
    Label,    // label_i(x)
    In,       // X(x)
    Not,
    And,
    Or,
    ExistsObj,
    ForallObj,
    ExistsSet,
    ForallSet,
};

struct FormulaNode;

// Immutable MSO_1 formula over {E, L_1..L_t}. Copies share structure.
//
// Field use per kind:
//   Equal, Adj        first = x, second = y
//   SetEqual          first = X, second = Y
//   Label             first = x, label = i
//   In                first = X, second = x
//   Not               left
//   And, Or           left, right
//   quantifiers       first = bound variable, left = body
class Formula {
  public:
    Formula() = default;
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

    auto kind() const -> FormulaKind;
    auto first() const -> const std::string&;
    auto second() const -> const std::string&;
    auto label() const -> int;
    auto left() const -> const Formula&;
    auto right() const -> const Formula&;
    auto body() const -> const Formula& { return left(); }

    auto is_atomic() const -> bool;
    // Atomic or the negation of an atomic formula.
    auto is_literal() const -> bool;
    auto is_quantifier() const -> bool;
    auto is_set_quantifier() const -> bool;

    auto node() const -> const FormulaNode* { return node_.get(); }
    explicit operator bool() const { return node_ != nullptr; }

    friend auto operator==(const Formula& a, const Formula& b) -> bool;

  private:
    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
    FormulaKind kind;
    std::string first;
    std::string second;
    int label = 0;
    Formula left;
    Formula right;
};

// Builders.
namespace mso {
auto eq(std::string x, std::string y) -> Formula;
auto set_eq(std::string x, std::string y) -> Formula;
auto adj(std::string x, std::string y) -> Formula;
auto label(int i, std::string x) -> Formula;
auto in(std::string set, std::string x) -> Formula;
auto neg(Formula f) -> Formula;
auto conj(Formula a, Formula b) -> Formula;
auto disj(Formula a, Formula b) -> Formula;
auto exists(std::string x, Formula body) -> Formula;
auto forall(std::string x, Formula body) -> Formula;
auto exists_set(std::string x, Formula body) -> Formula;
auto forall_set(std::string x, Formula body) -> Formula;
} // namespace mso

struct VariableList {
    std::vector<std::string> objects;
    std::vector<std::string> sets;

    auto empty() const -> bool { return objects.empty() && sets.empty(); }
    friend auto operator==(const VariableList&, const VariableList&) -> bool = default;
};

auto quantifier_rank(const Formula& phi) -> std::size_t;

// Negation normal form: Not only in front of atoms. Preserves quantifier rank and
// free variables.
auto to_nnf(const Formula& phi) -> Formula;

auto is_nnf(const Formula& phi) -> bool;

// Free variables, ordered by first occurrence (left to right).
auto free_variables(const Formula& phi) -> VariableList;

auto is_sentence(const Formula& phi) -> bool;

// True if some X = Y atom occurs.
auto has_set_equality(const Formula& phi) -> bool;

// Largest label index used by a label atom (0 if none).
auto max_label_index(const Formula& phi) -> int;

// Number of AST nodes (counting shared subtrees once per occurrence).
auto formula_size(const Formula& phi) -> std::size_t;

// Concrete syntax accepted by parse_formula.
auto to_string(const Formula& phi) -> std::string;

// Parses the concrete syntax:
//   formula := quant | disj
//   quant   := ("Ex"|"Ax") objvar "." formula | ("EX"|"AX") setvar "." formula
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "!" unary | "(" formula ")" | atom
//   atom    := objvar "=" objvar | setvar "=" setvar | "adj(" objvar "," objvar ")"
//            | "label" INT "(" objvar ")" | setvar "(" objvar ")"
// Object variables start lowercase, set variables uppercase. A quantifier also
// may start an operand of & or |; its scope then extends as far right as possible.
// Bound variables are renamed so that each binder has a name of its own that is
// also distinct from every free variable. Throws ParseError.
auto parse_formula(std::string_view text, int label_width) -> Formula;

} // namespace rwmso
