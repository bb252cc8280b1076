#include "rwmso/structure.hpp"

#include <algorithm>
#include <sstream>

#include "rwmso/error.hpp"

namespace rwmso {

Structure::Structure(std::size_t n, int t)
    : t_(t), adj_(n, ElementSet(n)), labels_(n, 0)
{
    if (t < 0 || t > kMaxLabelWidth)
        throw WidthMismatch("label width " + std::to_string(t) + " out of range");
}

void Structure::add_edge(Element u, Element v)
{
    if (u >= size() || v >= size())
        throw Error("edge endpoint out of range");
    if (u == v)
        throw Error("loops are not allowed");
    adj_[u].set(v);
    adj_[v].set(u);
}

auto Structure::edge_count() const -> std::size_t
{
    std::size_t twice = 0;
    for (const auto& row : adj_)
        twice += row.count();
    return twice / 2;
}

void Structure::set_label(Element v, LabelVec lab)
{
    if ((lab & ~label_mask(t_)) != 0)
        throw WidthMismatch("label wider than " + std::to_string(t_));
    labels_[v] = lab;
}

auto relabel(const Structure& g, const Relabeling& f) -> Structure
{
    if (f.width() != g.label_width())
        throw WidthMismatch("relabel: widths differ");
    Structure out = g;
    for (Element v = 0; v < g.size(); ++v)
        out.set_label(v, f.apply(g.label(v)));
    return out;
}

namespace {

// Disjoint union with cross edges lab1(u) . lab2(v) = 1; labels copied from the parts.
auto labeled_union(const Structure& g1, const Structure& g2) -> Structure
{
    if (g1.label_width() != g2.label_width())
        throw WidthMismatch("join: widths differ");
    const auto n1 = static_cast<Element>(g1.size());
    const auto n2 = static_cast<Element>(g2.size());
    Structure out(n1 + n2, g1.label_width());
    for (Element u = 0; u < n1; ++u) {
        out.set_label(u, g1.label(u));
        for (Element v = u + 1; v < n1; ++v)
            if (g1.adjacent(u, v))
                out.add_edge(u, v);
    }
    for (Element u = 0; u < n2; ++u) {
        out.set_label(n1 + u, g2.label(u));
        for (Element v = u + 1; v < n2; ++v)
            if (g2.adjacent(u, v))
                out.add_edge(n1 + u, n1 + v);
    }
    for (Element u = 0; u < n1; ++u)
        for (Element v = 0; v < n2; ++v)
            if (dot(g1.label(u), g2.label(v)))
                out.add_edge(u, n1 + v);
    return out;
}

} // namespace

auto join(const Structure& g1, const Structure& g2) -> Structure
{
    auto out = labeled_union(g1, g2);
    for (Element v = 0; v < out.size(); ++v)
        out.set_label(v, 0);
    return out;
}

auto compose(const Structure& g1, const Structure& g2, const Relabeling& g, const Relabeling& f1,
             const Relabeling& f2) -> Structure
{
    const int t = g1.label_width();
    if (g2.label_width() != t || g.width() != t || f1.width() != t || f2.width() != t)
        throw WidthMismatch("compose: widths differ");
    auto out = labeled_union(g1, relabel(g2, g));
    const auto n1 = static_cast<Element>(g1.size());
    for (Element u = 0; u < n1; ++u)
        out.set_label(u, f1.apply(g1.label(u)));
    for (Element v = 0; v < g2.size(); ++v)
        out.set_label(n1 + v, f2.apply(g2.label(v)));
    return out;
}

auto induced(const Structure& a, const ElementVector& c) -> Structure
{
    ElementVector distinct = c;
    for (auto e : distinct)
        if (e >= a.size())
            throw Error("induced: element " + std::to_string(e) + " out of range");
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Structure out(distinct.size(), a.label_width());
    for (Element i = 0; i < distinct.size(); ++i) {
        out.set_label(i, a.label(distinct[i]));
        for (Element j = i + 1; j < distinct.size(); ++j)
            if (a.adjacent(distinct[i], distinct[j]))
                out.add_edge(i, j);
    }
    return out;
}

auto is_partial_isomorphism(const Structure& a, const Structure& b, const SetVector& abar,
                            const SetVector& bbar, const PartialMap& pi) -> bool
{
    if (abar.size() != bbar.size())
        throw Error("partial isomorphism: set tuples differ in length");
    if (a.label_width() != b.label_width())
        return false;
    ElementSet seen_dom(a.size()), seen_range(b.size());
    for (auto [x, y] : pi) {
        if (x >= a.size() || y >= b.size())
            return false;
        if (seen_dom[x] || seen_range[y])
            return false; // not a function, or not one-to-one
        seen_dom.set(x);
        seen_range.set(y);
    }
    for (auto [x, y] : pi) {
        if (a.label(x) != b.label(y))
            return false;
        for (std::size_t i = 0; i < abar.size(); ++i)
            if (abar[i][x] != bbar[i][y])
                return false;
        for (auto [x2, y2] : pi)
            if (a.adjacent(x, x2) != b.adjacent(y, y2))
                return false;
    }
    return true;
}

auto generated_subspace(const Structure& g, const ElementSet& x) -> std::vector<LabelVec>
{
    std::vector<LabelVec> gens;
    for (auto v = x.find_first(); v != ElementSet::npos; v = x.find_next(v))
        gens.push_back(g.label(static_cast<Element>(v)));
    return row_echelon_basis(gens);
}

auto subspaces_orthogonal(const std::vector<LabelVec>& b1, const std::vector<LabelVec>& b2)
    -> bool
{
    for (auto u : b1)
        for (auto v : b2)
            if (dot(u, v))
                return false;
    return true;
}

auto make_set(std::size_t n, std::initializer_list<Element> members) -> ElementSet
{
    ElementSet s(n);
    for (auto m : members)
        s.set(m);
    return s;
}

namespace {

auto parse_label(const std::string& bits, int t, std::size_t line_offset) -> LabelVec
{
    if (bits.size() != static_cast<std::size_t>(t))
        throw ParseError("label must have " + std::to_string(t) + " bits", line_offset);
    LabelVec lab = 0;
    for (int i = 0; i < t; ++i) {
        char ch = bits[static_cast<std::size_t>(i)];
        if (ch == '1')
            lab |= unit_label(i + 1);
        else if (ch != '0')
            throw ParseError("label bits must be 0 or 1", line_offset);
    }
    return lab;
}

} // namespace

auto read_graph(std::string_view text) -> Structure
{
    std::optional<Structure> g;
    std::size_t declared_edges = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        auto end = text.find('\n', offset);
        if (end == std::string_view::npos)
            end = text.size();
        std::istringstream line{std::string(text.substr(offset, end - offset))};
        const std::size_t line_offset = offset;
        offset = end + 1;

        std::string tag;
        if (!(line >> tag) || tag[0] == 'c' || tag[0] == '#')
            continue;
        if (tag == "p") {
            std::string kind;
            long long n = -1, m = -1;
            int t = 0;
            if (!(line >> kind >> n >> m) || kind != "graph" || n < 0 || m < 0)
                throw ParseError("bad header, expected 'p graph <n> <m> <t>'", line_offset);
            if (!(line >> t))
                t = 0;
            if (g)
                throw ParseError("duplicate header", line_offset);
            g.emplace(static_cast<std::size_t>(n), t);
            declared_edges = static_cast<std::size_t>(m);
            continue;
        }
        if (!g)
            throw ParseError("missing 'p graph' header", line_offset);
        if (tag == "v") {
            long long id = -1;
            std::string bits;
            if (!(line >> id >> bits) || id < 0 || static_cast<std::size_t>(id) >= g->size())
                throw ParseError("bad vertex line", line_offset);
            g->set_label(static_cast<Element>(id), parse_label(bits, g->label_width(), line_offset));
        } else if (tag == "e") {
            long long u = -1, v = -1;
            if (!(line >> u >> v) || u < 0 || v < 0 || static_cast<std::size_t>(u) >= g->size() ||
                static_cast<std::size_t>(v) >= g->size() || u == v)
                throw ParseError("bad edge line", line_offset);
            g->add_edge(static_cast<Element>(u), static_cast<Element>(v));
        } else {
            throw ParseError("unknown line tag '" + tag + "'", line_offset);
        }
    }
    if (!g)
        throw ParseError("missing 'p graph' header", 0);
    if (g->edge_count() != declared_edges)
        throw ParseError("header declares " + std::to_string(declared_edges) + " edges, found " +
                             std::to_string(g->edge_count()),
                         0);
    return std::move(*g);
}

auto write_graph(const Structure& g) -> std::string
{
    std::ostringstream out;
    out << "p graph " << g.size() << ' ' << g.edge_count() << ' ' << g.label_width() << '\n';
    for (Element v = 0; v < g.size(); ++v)
        if (g.label(v) != 0)
            out << "v " << v << ' ' << label_to_string(g.label(v), g.label_width()) << '\n';
    for (Element u = 0; u < g.size(); ++u)
        for (Element v = u + 1; v < g.size(); ++v)
            if (g.adjacent(u, v))
                out << "e " << u << ' ' << v << '\n';
    return out.str();
}

} // namespace rwmso
