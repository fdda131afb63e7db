#include "dtmfilt/complex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "dtmfilt/errors.hpp"

namespace dtmf {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw ParameterError("a simplex needs at least one vertex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
        throw ParameterError("simplex vertices must be distinct");
    }
}

std::size_t FilteredComplex::count(int d) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < size(); ++i) total += dim(i) == d ? 1 : 0;
    return total;
}

std::optional<std::size_t> FilteredComplex::find(std::span<const Vertex> vs) const {
    for (std::size_t i = 0; i < size(); ++i) {
        auto mine = vertices(i);
        if (std::equal(mine.begin(), mine.end(), vs.begin(), vs.end())) return i;
    }
    return std::nullopt;
}

void FilteredComplex::validate() const {
    if (empty()) return;
    const SimplexIndex index(*this);
    for (std::size_t i = 0; i < size(); ++i) {
        const int d = dim(i);
        if (d == 0) continue;
        auto vs = vertices(i);
        for (std::size_t skip = 0; skip < vs.size(); ++skip) {
            const auto face = index.lookup(d - 1, index.keys().facet_key(vs, skip));
            if (!face) throw IntegrityError("simplex " + std::to_string(i) + " is missing a face");
            if (*face > i || value(*face) > value(i)) {
                throw IntegrityError("simplex " + std::to_string(i) + " enters before one of its faces");
            }
        }
    }
}

void ComplexBuilder::reserve(std::size_t simplices, std::size_t vertex_entries) {
    values_.reserve(simplices);
    offsets_.reserve(simplices + 1);
    vertex_data_.reserve(vertex_entries);
}

void ComplexBuilder::add(std::span<const Vertex> vertices, double value) {
    if (vertices.empty()) throw ParameterError("a simplex needs at least one vertex");
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (vertices[k] >= point_count_) throw ParameterError("simplex vertex out of range");
        if (k > 0 && vertices[k] <= vertices[k - 1]) {
            throw ParameterError("simplex vertices must be strictly increasing");
        }
    }
    if (std::isnan(value)) throw ParameterError("filtration values must not be NaN");
    vertex_data_.insert(vertex_data_.end(), vertices.begin(), vertices.end());
    offsets_.push_back(vertex_data_.size());
    values_.push_back(value);
}

FilteredComplex ComplexBuilder::build() && {
    const std::size_t n = values_.size();
    if (n >= std::numeric_limits<std::uint32_t>::max()) throw SizeError("complex has too many simplices");
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    auto verts = [&](std::uint32_t i) {
        return std::span<const Vertex>(vertex_data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
    };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (values_[a] != values_[b]) return values_[a] < values_[b];
        auto va = verts(a);
        auto vb = verts(b);
        if (va.size() != vb.size()) return va.size() < vb.size();
        return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });

    FilteredComplex out;
    out.point_count_ = point_count_;
    out.values_.reserve(n);
    out.offsets_.reserve(n + 1);
    out.vertex_data_.reserve(vertex_data_.size());
    for (std::uint32_t i : order) {
        auto vs = verts(i);
        out.vertex_data_.insert(out.vertex_data_.end(), vs.begin(), vs.end());
        out.offsets_.push_back(out.vertex_data_.size());
        out.values_.push_back(values_[i]);
        out.max_dim_ = std::max(out.max_dim_, static_cast<int>(vs.size()) - 1);
    }
    return out;
}

SimplexKeys::SimplexKeys(std::size_t point_count, int max_dim) {
    const std::size_t kmax = static_cast<std::size_t>(std::max(max_dim, 0)) + 1;
    table_.assign(kmax + 1, std::vector<std::uint64_t>(point_count + 1, 0));
    constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 2;
    for (std::size_t v = 0; v <= point_count; ++v) {
        table_[0][v] = 1;
        for (std::size_t k = 1; k <= kmax && k <= v; ++k) {
            const std::uint64_t sum = table_[k - 1][v - 1] + (k <= v - 1 ? table_[k][v - 1] : 0);
            if (sum > limit) throw SizeError("simplex keys overflow 64 bits");
            table_[k][v] = sum;
        }
    }
}

std::uint64_t SimplexKeys::key(std::span<const Vertex> vs) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) k += table_[i + 1][vs[i]];
    return k;
}

std::uint64_t SimplexKeys::facet_key(std::span<const Vertex> vs, std::size_t skip) const {
    std::uint64_t k = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i == skip) continue;
        k += table_[pos + 1][vs[i]];
        ++pos;
    }
    return k;
}

SimplexIndex::SimplexIndex(const FilteredComplex& complex)
    : keys_(complex.point_count(), complex.max_dim()),
      by_dim_(static_cast<std::size_t>(std::max(complex.max_dim(), 0)) + 1) {
    for (std::size_t i = 0; i < complex.size(); ++i) {
        by_dim_[static_cast<std::size_t>(complex.dim(i))].emplace_back(keys_.key(complex.vertices(i)),
                                                                        static_cast<std::uint32_t>(i));
    }
    for (auto& table : by_dim_) {
        std::sort(table.begin(), table.end());
        for (std::size_t j = 1; j < table.size(); ++j) {
            if (table[j].first == table[j - 1].first) throw IntegrityError("duplicate simplex in complex");
        }
    }
}

std::optional<std::size_t> SimplexIndex::lookup(int dim, std::uint64_t key) const {
    if (dim < 0 || static_cast<std::size_t>(dim) >= by_dim_.size()) return std::nullopt;
    const auto& table = by_dim_[static_cast<std::size_t>(dim)];
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(key, std::uint32_t{0}));
    if (it == table.end() || it->first != key) return std::nullopt;
    return it->second;
}

std::string format_real(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_complex(const FilteredComplex& complex) {
    std::string out;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        out += format_real(complex.value(i));
        out += ';';
        out += std::to_string(complex.dim(i));
        out += ';';
        auto vs = complex.vertices(i);
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (k > 0) out += ' ';
            out += std::to_string(vs[k]);
        }
        out += '\n';
    }
    return out;
}

void save_complex(const std::filesystem::path& path, const FilteredComplex& complex) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << format_complex(complex);
}

FilteredComplex parse_complex(const std::string& text) {
    struct Entry {
        double value;
        std::vector<Vertex> vertices;
    };
    std::vector<Entry> entries;
    std::size_t max_vertex = 0;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto a = line.find(';');
        const auto b = a == std::string::npos ? a : line.find(';', a + 1);
        if (b == std::string::npos) throw ParseError("expected 'value;dim;vertices'", line_no);
        Entry e;
        const std::string value_text = line.substr(0, a);
        if (value_text == "inf") {
            e.value = std::numeric_limits<double>::infinity();
        } else {
            const auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), e.value);
            if (value_text.empty() || ec != std::errc() || ptr != value_text.data() + value_text.size()) {
                throw ParseError("bad filtration value '" + value_text + "'", line_no);
            }
        }
        int dim = -1;
        const std::string dim_text = line.substr(a + 1, b - a - 1);
        const auto [dptr, dec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
        if (dim_text.empty() || dec != std::errc() || dptr != dim_text.data() + dim_text.size() || dim < 0) {
            throw ParseError("bad dimension '" + dim_text + "'", line_no);
        }
        std::istringstream vs(line.substr(b + 1));
        std::string token;
        while (vs >> token) {
            Vertex v = 0;
            const auto [vptr, vec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (vec != std::errc() || vptr != token.data() + token.size()) {
                throw ParseError("bad vertex '" + token + "'", line_no);
            }
            e.vertices.push_back(v);
            max_vertex = std::max<std::size_t>(max_vertex, v);
        }
        if (e.vertices.size() != static_cast<std::size_t>(dim) + 1) {
            throw ParseError("dimension does not match the vertex count", line_no);
        }
        for (std::size_t k = 1; k < e.vertices.size(); ++k) {
            if (e.vertices[k] <= e.vertices[k - 1]) throw ParseError("vertices must be strictly increasing", line_no);
        }
        entries.push_back(std::move(e));
    }
    ComplexBuilder builder(entries.empty() ? 0 : max_vertex + 1);
    for (const auto& e : entries) builder.add(e.vertices, e.value);
    return std::move(builder).build();
}

FilteredComplex load_complex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_complex(buffer.str());
}

}  // namespace dtmf
