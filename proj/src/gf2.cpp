#include "rwmso/gf2.hpp"

#include <algorithm>

#include "rwmso/error.hpp"

namespace rwmso {

Relabeling::Relabeling(int width, std::vector<LabelVec> rows)
    : width_(width), rows_(std::move(rows))
{
    if (width_ < 0 || width_ > kMaxLabelWidth)
        throw WidthMismatch("label width " + std::to_string(width_) + " out of range");
    if (rows_.size() != static_cast<std::size_t>(width_))
        throw WidthMismatch("relabeling needs " + std::to_string(width_) + " rows, got " +
                            std::to_string(rows_.size()));
    for (auto r : rows_)
        if ((r & ~label_mask(width_)) != 0)
            throw WidthMismatch("relabeling row wider than " + std::to_string(width_));
}

auto Relabeling::identity(int width) -> Relabeling
{
    std::vector<LabelVec> rows(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        rows[static_cast<std::size_t>(i)] = unit_label(i + 1);
    return {width, std::move(rows)};
}

auto Relabeling::zero(int width) -> Relabeling
{
    return {width, std::vector<LabelVec>(static_cast<std::size_t>(width), 0)};
}

auto Relabeling::then(const Relabeling& other) const -> Relabeling
{
    if (other.width_ != width_)
        throw WidthMismatch("relabeling widths differ");
    std::vector<LabelVec> rows;
    rows.reserve(rows_.size());
    for (auto r : rows_)
        rows.push_back(other.apply(r));
    return {width_, std::move(rows)};
}

auto Relabeling::widened(int width) const -> Relabeling
{
    if (width < width_)
        throw WidthMismatch("cannot narrow a relabeling");
    auto rows = rows_;
    rows.resize(static_cast<std::size_t>(width), 0);
    return {width, std::move(rows)};
}

auto Relabeling::to_string() const -> std::string
{
    std::string out;
    for (int i = 0; i < width_; ++i) {
        if (i > 0)
            out += ';';
        out += label_to_string(rows_[static_cast<std::size_t>(i)], width_);
    }
    return out;
}

auto label_to_string(LabelVec lab, int t) -> std::string
{
    std::string out(static_cast<std::size_t>(t), '0');
    for (int i = 0; i < t; ++i)
        if ((lab >> i) & 1)
            out[static_cast<std::size_t>(i)] = '1';
    return out;
}

auto row_echelon_basis(const std::vector<LabelVec>& vectors) -> std::vector<LabelVec>
{
    // pivot = lowest set bit; every other basis vector is cleared at each pivot
    std::vector<LabelVec> basis;
    for (auto v : vectors) {
        for (auto b : basis)
            if ((v >> std::countr_zero(b)) & 1)
                v ^= b;
        if (v == 0)
            continue;
        int pivot = std::countr_zero(v);
        for (auto& b : basis)
            if ((b >> pivot) & 1)
                b ^= v;
        basis.push_back(v);
    }
    std::sort(basis.begin(), basis.end(),
              [](LabelVec a, LabelVec b) { return std::countr_zero(a) < std::countr_zero(b); });
    return basis;
}

auto gf2_rank(std::vector<boost::dynamic_bitset<>> rows) -> std::size_t
{
    std::size_t rank = 0;
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][col])
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (rows[r][col])
                rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

} // namespace rwmso
