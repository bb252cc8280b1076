#include "rwmso/ordered_structure.hpp"

#include <sstream>

#include "rwmso/error.hpp"

namespace rwmso {

namespace {

inline void hash_mix(std::size_t& seed, std::size_t v)
{
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace

auto OrderedStructure::representative(std::size_t cls) const -> std::size_t
{
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (positions[i] == cls)
            return i + 1;
    throw Error("class " + std::to_string(cls) + " not in ordered structure");
}

auto OrderedStructure::as_structure() const -> Structure
{
    Structure s(universe_size(), t);
    for (std::size_t a = 0; a < universe_size(); ++a) {
        s.set_label(static_cast<Element>(a), labels[a]);
        for (std::size_t b = a + 1; b < universe_size(); ++b)
            if (adjacent(a, b))
                s.add_edge(static_cast<Element>(a), static_cast<Element>(b));
    }
    return s;
}

auto OrderedStructure::to_string() const -> std::string
{
    // classes are printed by their representative, as [r]
    std::ostringstream out;
    out << "pos=(";
    for (std::size_t i = 0; i < positions.size(); ++i)
        out << (i ? "," : "") << '[' << representative(positions[i]) << ']';
    out << ") lab=(";
    for (std::size_t a = 0; a < labels.size(); ++a)
        out << (a ? "," : "") << label_to_string(labels[a], t);
    out << ") E={";
    bool first = true;
    for (std::size_t a = 0; a < universe_size(); ++a)
        for (std::size_t b = a + 1; b < universe_size(); ++b)
            if (adjacent(a, b)) {
                out << (first ? "" : ",") << '[' << representative(a) << "][" << representative(b)
                    << ']';
                first = false;
            }
    out << "} sets=(";
    for (std::size_t j = 0; j < traces.size(); ++j) {
        out << (j ? "," : "") << '{';
        bool f = true;
        for (std::size_t a = 0; a < universe_size(); ++a)
            if (in_trace(j, a)) {
                out << (f ? "" : ",") << '[' << representative(a) << ']';
                f = false;
            }
        out << '}';
    }
    out << ')';
    return out.str();
}

auto OrderedStructureHash::operator()(const OrderedStructure& o) const noexcept -> std::size_t
{
    std::size_t seed = static_cast<std::size_t>(o.t);
    hash_mix(seed, o.positions.size());
    for (auto p : o.positions)
        hash_mix(seed, p);
    for (auto a : o.adjacency)
        hash_mix(seed, a);
    for (auto l : o.labels)
        hash_mix(seed, l);
    hash_mix(seed, o.traces.size());
    for (auto tr : o.traces)
        hash_mix(seed, tr);
    return seed;
}

auto ordered_induced(const Structure& a, const ElementVector& c, const SetVector& sets)
    -> OrderedStructure
{
    OrderedStructure out;
    out.t = a.label_width();
    ElementVector class_element; // class -> underlying element
    out.positions.reserve(c.size());
    for (auto e : c) {
        if (e >= a.size())
            throw Error("ordered_induced: element " + std::to_string(e) + " out of range");
        std::size_t cls = 0;
        while (cls < class_element.size() && class_element[cls] != e)
            ++cls;
        if (cls == class_element.size()) {
            if (cls == kMaxOrderedUniverse)
                throw ScaleGuardError("ordered structure universe too large");
            class_element.push_back(e);
        }
        out.positions.push_back(static_cast<std::uint8_t>(cls));
    }
    const std::size_t u = class_element.size();
    out.adjacency.assign(u, 0);
    out.labels.resize(u);
    for (std::size_t i = 0; i < u; ++i) {
        out.labels[i] = a.label(class_element[i]);
        for (std::size_t j = 0; j < u; ++j)
            if (a.adjacent(class_element[i], class_element[j]))
                out.adjacency[i] |= ClassMask{1} << j;
    }
    out.traces.reserve(sets.size());
    for (const auto& s : sets) {
        if (s.size() != a.size())
            throw Error("ordered_induced: set over a different universe");
        ClassMask mask = 0;
        for (std::size_t i = 0; i < u; ++i)
            if (s[class_element[i]])
                mask |= ClassMask{1} << i;
        out.traces.push_back(mask);
    }
    return out;
}

} // namespace rwmso
