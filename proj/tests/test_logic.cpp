#include "doctest.h"

#include <set>

#include "rwmso/error.hpp"
#include "rwmso/formula.hpp"
#include "rwmso/games.hpp"
#include "support.hpp"

using namespace rwmso;
using namespace rwmso::mso;

namespace {

void collect_binders(const Formula& f, std::vector<std::string>& out)
{
    if (!f)
        return;
    if (f.is_quantifier()) {
        out.push_back(f.first());
        collect_binders(f.body(), out);
        return;
    }
    if (f.kind() == FormulaKind::Not) {
        collect_binders(f.left(), out);
    } else if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
        collect_binders(f.left(), out);
        collect_binders(f.right(), out);
    }
}

} // namespace

TEST_CASE("parser maps the grammar onto the AST")
{
    CHECK(parse_formula("Ex x. Ex y. adj(x,y)", 1) == exists("x", exists("y", adj("x", "y"))));
    CHECK(parse_formula("AX S. Ex x. S(x)", 1) == forall_set("S", exists("x", in("S", "x"))));
    CHECK(parse_formula("x = y", 1) == eq("x", "y"));
    CHECK(parse_formula("X = Y", 1) == set_eq("X", "Y"));
    CHECK(parse_formula("label2(x)", 2) == label(2, "x"));
    CHECK(parse_formula("label 1 (x)", 1) == label(1, "x"));
    CHECK(parse_formula("!adj(x,y) | X(x) & Y(y)", 1) ==
          disj(neg(adj("x", "y")), conj(in("X", "x"), in("Y", "y"))));
    // a quantifier in operand position extends to the right
    CHECK(parse_formula("label1(x) & Ex y. adj(x,y) | x = y", 1) ==
          conj(label(1, "x"), exists("y", disj(adj("x", "y"), eq("x", "y")))));
}

TEST_CASE("parser reports positions")
{
    try {
        parse_formula("adj(x,", 1);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
    }
    CHECK_THROWS_AS(parse_formula("label3(x)", 2), ParseError);
    CHECK_THROWS_AS(parse_formula("label0(x)", 2), ParseError);
    CHECK_THROWS_AS(parse_formula("Ex X. X(x)", 1), ParseError);  // set name after Ex
    CHECK_THROWS_AS(parse_formula("x = Y", 1), ParseError);        // mixed sorts
    CHECK_THROWS_AS(parse_formula("adj(x,y) adj(y,x)", 1), ParseError);
    CHECK_THROWS_AS(parse_formula("(adj(x,y)", 1), ParseError);
    CHECK_THROWS_AS(parse_formula("adj(x,y) # z", 1), ParseError);
}

TEST_CASE("parser renames binders apart")
{
    auto f = parse_formula("(Ex x. label1(x)) & (Ex x. Ax y. adj(x,y)) & Ex y. y = z", 1);
    std::vector<std::string> binders;
    collect_binders(f, binders);
    std::set<std::string> distinct(binders.begin(), binders.end());
    CHECK(distinct.size() == binders.size());
    CHECK(distinct.count("z") == 0);
    CHECK(free_variables(f) == VariableList{{"z"}, {}});

    // a binder shadowing a free variable gets a new name
    auto g = parse_formula("adj(x,y) & Ex x. label1(x)", 1);
    binders.clear();
    collect_binders(g, binders);
    REQUIRE(binders.size() == 1);
    CHECK(binders[0] != "x");
    CHECK(free_variables(g) == VariableList{{"x", "y"}, {}});
}

TEST_CASE("quantifier rank")
{
    CHECK(quantifier_rank(adj("x", "y")) == 0);
    CHECK(quantifier_rank(exists("x", exists("y", adj("x", "y")))) == 2);
    CHECK(quantifier_rank(conj(exists("x", adj("x", "x")),
                               exists_set("S", forall("y", in("S", "y"))))) == 2);
    CHECK(quantifier_rank(neg(forall("x", neg(exists("y", adj("x", "y")))))) == 2);
}

TEST_CASE("negation normal form")
{
    CHECK(to_nnf(neg(forall("x", adj("x", "x")))) == exists("x", neg(adj("x", "x"))));
    CHECK(to_nnf(neg(neg(adj("x", "y")))) == adj("x", "y"));
    CHECK(to_nnf(neg(conj(adj("x", "y"), eq("x", "y")))) ==
          disj(neg(adj("x", "y")), neg(eq("x", "y"))));
    CHECK(to_nnf(neg(exists_set("X", in("X", "x")))) == forall_set("X", neg(in("X", "x"))));
    CHECK_FALSE(is_nnf(neg(conj(adj("x", "y"), eq("x", "y")))));
    CHECK(is_nnf(to_nnf(neg(conj(adj("x", "y"), eq("x", "y"))))));
}

TEST_CASE("free variables in order of first occurrence")
{
    CHECK(free_variables(adj("x", "y")) == VariableList{{"x", "y"}, {}});
    CHECK(free_variables(exists("x", adj("x", "y"))) == VariableList{{"y"}, {}});
    CHECK(free_variables(in("S", "x")) == VariableList{{"x"}, {"S"}});
    CHECK(is_sentence(exists("x", forall_set("X", in("X", "x")))));
    CHECK(has_set_equality(exists_set("X", set_eq("X", "Y"))));
    CHECK(max_label_index(conj(label(3, "x"), label(1, "y"))) == 3);
}

TEST_CASE("nnf properties and printer round trip over the catalog")
{
    std::vector<Formula> formulas;
    for (const auto& s : support::sentence_catalog())
        formulas.push_back(parse_formula(s.text, 2));
    for (const auto& o : support::open_catalog())
        formulas.push_back(parse_formula(o.text, 2));
    formulas.push_back(parse_formula("!(Ex x. AX Y. !(Y(x) & x = x) | EX Z. Z = Z)", 2));

    auto small = support::all_graphs(3, 1);
    auto two = support::all_graphs(2, 2);
    small.insert(small.end(), two.begin(), two.end());
    for (const auto& f : formulas) {
        CAPTURE(to_string(f));
        const auto n = to_nnf(f);
        CHECK(is_nnf(n));
        CHECK(to_nnf(n) == n);
        CHECK(quantifier_rank(n) == quantifier_rank(f));
        CHECK(free_variables(n).objects.size() == free_variables(f).objects.size());
        CHECK(parse_formula(to_string(f), 2) == f);

        // equivalence: evaluate both under every assignment of the free variables
        const auto free = free_variables(f);
        if (free.objects.size() + free.sets.size() > 2 || max_label_index(f) > 1)
            continue;
        for (const auto& g : small) {
            if (g.size() == 0)
                continue;
            const auto subsets = support::all_subsets(g.size());
            for (Element a = 0; a < g.size(); ++a)
                for (Element b = 0; b < g.size(); ++b)
                    for (std::size_t s = 0; s < subsets.size(); ++s) {
                        Assignment alpha;
                        if (!free.objects.empty())
                            alpha.bind(free.objects[0], a);
                        if (free.objects.size() > 1)
                            alpha.bind(free.objects[1], b);
                        for (const auto& x : free.sets)
                            alpha.bind_set(x, subsets[s]);
                        CHECK(evaluate(g, f, alpha) == evaluate(g, n, alpha));
                    }
        }
    }
}
