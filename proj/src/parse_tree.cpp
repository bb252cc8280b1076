#include "rwmso/parse_tree.hpp"

#include <cctype>
#include <utility>

#include "rwmso/error.hpp"

namespace rwmso {

auto ParseTree::leaf_count() const -> std::size_t
{
    std::size_t n = 0;
    for (const auto& nd : nodes_)
        n += nd.is_leaf() ? 1 : 0;
    return n;
}

ParseTreeBuilder::ParseTreeBuilder(int t) : t_(t)
{
    if (t < 1 || t > kMaxLabelWidth)
        throw WidthMismatch("parse tree width must be in 1..32");
}

auto ParseTreeBuilder::leaf() -> Handle
{
    nodes_.push_back({});
    used_.push_back(false);
    return static_cast<Handle>(nodes_.size() - 1);
}

auto ParseTreeBuilder::compose(const CompositionOp& op, Handle left, Handle right) -> Handle
{
    if (op.g.width() != t_ || op.f1.width() != t_ || op.f2.width() != t_)
        throw WidthMismatch("composition matrices must be " + std::to_string(t_) + "x" +
                            std::to_string(t_));
    for (auto h : {left, right}) {
        if (h >= nodes_.size())
            throw Error("unknown parse tree handle");
        if (used_[h])
            throw Error("parse tree node used twice");
        used_[h] = true;
    }
    if (left == right)
        throw Error("parse tree node used twice");
    nodes_.push_back({left, right, op});
    used_.push_back(false);
    return static_cast<Handle>(nodes_.size() - 1);
}

auto ParseTreeBuilder::finish(Handle root) const -> ParseTree
{
    if (root >= nodes_.size())
        throw Error("unknown parse tree handle");
    if (used_[root])
        throw Error("root is a child of another node");

    // iterative post-order relayout
    ParseTree tree;
    tree.t_ = t_;
    std::vector<ParseTree::Index> new_index(nodes_.size(), ParseTree::kNone);
    std::vector<std::pair<Handle, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [h, expanded] = stack.back();
        stack.pop_back();
        const auto& nd = nodes_[h];
        if (nd.is_leaf()) {
            new_index[h] = static_cast<ParseTree::Index>(tree.nodes_.size());
            tree.nodes_.push_back({});
        } else if (expanded) {
            new_index[h] = static_cast<ParseTree::Index>(tree.nodes_.size());
            tree.nodes_.push_back({new_index[nd.left], new_index[nd.right], nd.op});
        } else {
            stack.emplace_back(h, true);
            stack.emplace_back(nd.right, false);
            stack.emplace_back(nd.left, false);
        }
    }
    return tree;
}

namespace {

class TreeLexer {
  public:
    explicit TreeLexer(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    auto peek() -> char
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    auto offset() const -> std::size_t { return pos_; }

    void expect(char ch)
    {
        if (peek() != ch)
            throw ParseError(std::string("expected '") + ch + "'", pos_);
        ++pos_;
    }

    // a run of 0/1/; characters
    auto word() -> std::pair<std::string, std::size_t>
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1' || text_[pos_] == ';'))
            ++pos_;
        return {std::string(text_.substr(start, pos_ - start)), start};
    }

    auto at_end() -> bool { return peek() == '\0'; }

  private:
    std::string_view text_;
    std::size_t pos_;
};

auto parse_matrix(TreeLexer& lex, int t) -> Relabeling
{
    auto [text, offset] = lex.word();
    if (text.empty())
        throw ParseError("expected three matrices", offset);
    std::vector<LabelVec> rows;
    std::size_t start = 0;
    while (true) {
        auto end = text.find(';', start);
        std::string row = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (row.size() != static_cast<std::size_t>(t))
            throw ParseError("matrix row must have " + std::to_string(t) + " bits", offset + start);
        LabelVec v = 0;
        for (int i = 0; i < t; ++i)
            if (row[static_cast<std::size_t>(i)] == '1')
                v |= unit_label(i + 1);
        rows.push_back(v);
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    if (rows.size() != static_cast<std::size_t>(t))
        throw ParseError("matrix must have " + std::to_string(t) + " rows", offset);
    return {t, std::move(rows)};
}

} // namespace

auto parse_tree_from_text(std::string_view text) -> ParseTree
{
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (text.substr(pos, 2) != "t=")
        throw ParseError("expected header 't=<width>'", pos);
    pos += 2;
    std::size_t digits_end = pos;
    while (digits_end < text.size() && std::isdigit(static_cast<unsigned char>(text[digits_end])))
        ++digits_end;
    if (digits_end == pos || digits_end - pos > 3)
        throw ParseError("expected label width", pos);
    const int t = std::stoi(std::string(text.substr(pos, digits_end - pos)));
    if (t < 1 || t > kMaxLabelWidth)
        throw ParseError("label width must be in 1..32", pos);

    ParseTreeBuilder builder(t);
    TreeLexer lex(text, digits_end);

    struct Frame {
        CompositionOp op;
        std::vector<ParseTreeBuilder::Handle> children;
    };
    std::vector<Frame> stack;
    ParseTreeBuilder::Handle done = 0;
    bool finished = false;

    auto deliver = [&](ParseTreeBuilder::Handle h) {
        if (stack.empty()) {
            done = h;
            finished = true;
        } else {
            stack.back().children.push_back(h);
        }
    };

    do {
        if (!stack.empty() && stack.back().children.size() == 2) {
            lex.expect(')');
            Frame fr = std::move(stack.back());
            stack.pop_back();
            deliver(builder.compose(fr.op, fr.children[0], fr.children[1]));
            continue;
        }
        if (!stack.empty() && lex.peek() == ')')
            throw ParseError("expected two subtrees", lex.offset());
        lex.expect('(');
        const char kind = lex.peek();
        if (kind == 'v') {
            lex.expect('v');
            lex.expect(')');
            deliver(builder.leaf());
        } else if (kind == 'o') {
            lex.expect('o');
            auto g = parse_matrix(lex, t);
            auto f1 = parse_matrix(lex, t);
            auto f2 = parse_matrix(lex, t);
            stack.push_back({CompositionOp{std::move(g), std::move(f1), std::move(f2)}, {}});
        } else {
            throw ParseError("expected 'v' or 'o'", lex.offset());
        }
    } while (!finished);

    if (!lex.at_end())
        throw ParseError("trailing input after tree", lex.offset());
    return builder.finish(done);
}

auto parse_tree_to_text(const ParseTree& tree) -> std::string
{
    std::string out = "t=" + std::to_string(tree.label_width()) + "\n";
    std::vector<std::pair<ParseTree::Index, bool>> stack{{tree.root(), false}};
    while (!stack.empty()) {
        auto [i, closing] = stack.back();
        stack.pop_back();
        if (closing) {
            out += ')';
            continue;
        }
        const auto& nd = tree.node(i);
        if (nd.is_leaf()) {
            out += "(v)";
            continue;
        }
        out += "(o " + nd.op.g.to_string() + ' ' + nd.op.f1.to_string() + ' ' +
               nd.op.f2.to_string() + ' ';
        stack.emplace_back(i, true);
        stack.emplace_back(nd.right, false);
        stack.emplace_back(nd.left, false);
    }
    out += '\n';
    return out;
}

auto generate_graph(const ParseTree& tree) -> Structure
{
    const int t = tree.label_width();
    Structure g(tree.leaf_count(), t);
    // vertex range [lo, hi) of each subtree
    std::vector<std::pair<Element, Element>> range(tree.size());
    Element next = 0;
    for (ParseTree::Index i = 0; i < tree.size(); ++i) {
        const auto& nd = tree.node(i);
        if (nd.is_leaf()) {
            g.set_label(next, unit_label(1));
            range[i] = {next, next + 1};
            ++next;
            continue;
        }
        auto [lo1, hi1] = range[nd.left];
        auto [lo2, hi2] = range[nd.right];
        for (Element v = lo2; v < hi2; ++v) {
            const LabelVec gv = nd.op.g.apply(g.label(v));
            for (Element u = lo1; u < hi1; ++u)
                if (dot(g.label(u), gv))
                    g.add_edge(u, v);
        }
        for (Element u = lo1; u < hi1; ++u)
            g.set_label(u, nd.op.f1.apply(g.label(u)));
        for (Element v = lo2; v < hi2; ++v)
            g.set_label(v, nd.op.f2.apply(g.label(v)));
        range[i] = {lo1, hi2};
    }
    return g;
}

auto widen(const ParseTree& tree, int t) -> ParseTree
{
    if (t < tree.label_width())
        throw WidthMismatch("cannot narrow a parse tree");
    ParseTreeBuilder b(t);
    std::vector<ParseTreeBuilder::Handle> handle(tree.size());
    for (ParseTree::Index i = 0; i < tree.size(); ++i) {
        const auto& nd = tree.node(i);
        if (nd.is_leaf()) {
            handle[i] = b.leaf();
        } else {
            CompositionOp op{nd.op.g.widened(t), nd.op.f1.widened(t), nd.op.f2.widened(t)};
            handle[i] = b.compose(op, handle[nd.left], handle[nd.right]);
        }
    }
    return b.finish(handle[tree.root()]);
}

auto family_from_string(std::string_view name) -> Family
{
    if (name == "path")
        return Family::Path;
    if (name == "cycle")
        return Family::Cycle;
    if (name == "complete")
        return Family::Complete;
    if (name == "cograph-union")
        return Family::CographUnion;
    if (name == "cograph-join")
        return Family::CographJoin;
    if (name == "star")
        return Family::Star;
    throw Error("unknown family '" + std::string(name) + "'");
}

auto to_string(Family family) -> std::string
{
    switch (family) {
    case Family::Path:
        return "path";
    case Family::Cycle:
        return "cycle";
    case Family::Complete:
        return "complete";
    case Family::CographUnion:
        return "cograph-union";
    case Family::CographJoin:
        return "cograph-join";
    case Family::Star:
        return "star";
    }
    return "?";
}

namespace {

auto matrix(int t, std::initializer_list<LabelVec> rows) -> Relabeling
{
    return {t, std::vector<LabelVec>(rows)};
}

// Left-deep tree adding one vertex per step: step k composes G_k with a new leaf.
auto caterpillar(int t, std::size_t n, const CompositionOp& first, const CompositionOp& middle,
                 const CompositionOp& last) -> ParseTree
{
    ParseTreeBuilder b(t);
    auto acc = b.leaf();
    for (std::size_t k = 1; k < n; ++k) {
        const auto& op = k == 1 ? first : (k + 1 == n ? last : middle);
        acc = b.compose(op, acc, b.leaf());
    }
    return b.finish(acc);
}

auto cograph(ParseTreeBuilder& b, std::size_t n, bool join_here) -> ParseTreeBuilder::Handle
{
    if (n == 1)
        return b.leaf();
    const auto id = Relabeling::identity(1);
    const CompositionOp op{join_here ? id : Relabeling::zero(1), id, id};
    auto l = cograph(b, (n + 1) / 2, !join_here);
    auto r = cograph(b, n / 2, !join_here);
    return b.compose(op, l, r);
}

} // namespace

auto family_tree(Family family, std::size_t n) -> ParseTree
{
    if (n < 1)
        throw Error("family_tree: n must be at least 1");
    const auto i1 = Relabeling::identity(1);
    const auto z1 = Relabeling::zero(1);
    switch (family) {
    case Family::Path: {
        // only the newest vertex keeps label 1
        const CompositionOp step{i1, z1, i1};
        return caterpillar(1, n, step, step, step);
    }
    case Family::Complete: {
        const CompositionOp step{i1, i1, i1};
        return caterpillar(1, n, step, step, step);
    }
    case Family::Star: {
        // vertex 0 is the centre and the only vertex that keeps label 1
        const CompositionOp step{i1, i1, z1};
        return caterpillar(1, n, step, step, step);
    }
    case Family::CographUnion:
    case Family::CographJoin: {
        ParseTreeBuilder b(1);
        auto root = cograph(b, n, family == Family::CographJoin);
        return b.finish(root);
    }
    case Family::Cycle: {
        if (n < 3)
            throw Error("family_tree: a cycle needs at least 3 vertices");
        // label 2 marks vertex 0, label 1 marks the current end of the path;
        // the last vertex is joined to both
        const LabelVec e1 = unit_label(1), e2 = unit_label(2);
        const auto i2 = Relabeling::identity(2);
        const CompositionOp first{i2, matrix(2, {e2, e2}), i2};
        const CompositionOp middle{i2, matrix(2, {0, e2}), i2};
        const CompositionOp last{matrix(2, {e1 | e2, e2}), i2, i2};
        return caterpillar(2, n, first, middle, last);
    }
    }
    throw Error("unknown family");
}

} // namespace rwmso
