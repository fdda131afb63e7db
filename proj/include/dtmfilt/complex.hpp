#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dtmf {

using Vertex = std::uint32_t;

/// Strictly increasing, nonempty list of point indices.
class Simplex {
public:
    /// Sorts and validates; throws ParameterError on duplicates or an empty list.
    explicit Simplex(std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Simplices with real filtration values, stored flat and sorted by
/// (value, dimension, lexicographic vertices). Closure under faces and face
/// monotonicity are checked by `validate()` and by persistence reduction.
class FilteredComplex {
public:
    FilteredComplex() = default;

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::size_t point_count() const noexcept { return point_count_; }

    int dim(std::size_t i) const noexcept { return static_cast<int>(offsets_[i + 1] - offsets_[i]) - 1; }
    std::span<const Vertex> vertices(std::size_t i) const noexcept {
        return {vertex_data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    double value(std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    int max_dim() const noexcept { return max_dim_; }
    std::size_t count(int dim) const;

    /// Truncation threshold the complex was built with, if any.
    std::optional<double> truncation() const noexcept { return truncation_; }
    void set_truncation(std::optional<double> t) { truncation_ = t; }

    /// Index of a simplex given by sorted vertices, or nullopt. Linear scan.
    std::optional<std::size_t> find(std::span<const Vertex> vertices) const;

    /// Throws IntegrityError when a face is missing or enters after its coface.
    void validate() const;

    friend class ComplexBuilder;

private:
    std::size_t point_count_ = 0;
    int max_dim_ = -1;
    std::vector<Vertex> vertex_data_;
    std::vector<std::size_t> offsets_{0};
    std::vector<double> values_;
    std::optional<double> truncation_;
};

/// Accumulates simplices in any order and produces a sorted FilteredComplex.
class ComplexBuilder {
public:
    explicit ComplexBuilder(std::size_t point_count) : point_count_(point_count) {}

    void reserve(std::size_t simplices, std::size_t vertex_entries);

    /// `vertices` must be strictly increasing.
    void add(std::span<const Vertex> vertices, double value);
    void add(std::initializer_list<Vertex> vertices, double value) {
        add(std::span<const Vertex>(vertices.begin(), vertices.size()), value);
    }

    std::size_t size() const noexcept { return values_.size(); }

    FilteredComplex build() &&;

private:
    std::size_t point_count_;
    std::vector<Vertex> vertex_data_;
    std::vector<std::size_t> offsets_{0};
    std::vector<double> values_;
};

/// Combinatorial-number-system keys: for a k-simplex v_0 < ... < v_k the key
/// sum_i C(v_i, i + 1) is a bijection onto [0, C(n, k + 1)).
class SimplexKeys {
public:
    SimplexKeys(std::size_t point_count, int max_dim);

    std::uint64_t key(std::span<const Vertex> vertices) const;
    /// Key of the facet obtained by dropping vertices[skip].
    std::uint64_t facet_key(std::span<const Vertex> vertices, std::size_t skip) const;
    std::uint64_t binomial(std::size_t n, std::size_t k) const { return table_[k][n]; }

private:
    std::vector<std::vector<std::uint64_t>> table_;
};

/// Position of every simplex, looked up by dimension and key.
class SimplexIndex {
public:
    explicit SimplexIndex(const FilteredComplex& complex);

    const SimplexKeys& keys() const noexcept { return keys_; }
    std::optional<std::size_t> lookup(int dim, std::uint64_t key) const;

private:
    SimplexKeys keys_;
    std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> by_dim_;
};

/// `value;dim;v0 v1 ... vk` per line, 17 significant digits, in filtration order.
std::string format_complex(const FilteredComplex& complex);
void save_complex(const std::filesystem::path& path, const FilteredComplex& complex);

/// Parses the complex format. Entries are re-sorted; the point count is one
/// more than the largest vertex index.
FilteredComplex parse_complex(const std::string& text);
FilteredComplex load_complex(const std::filesystem::path& path);

/// 17 significant digits (printf "%.17g"); "inf" for +infinity.
std::string format_real(double value);

}  // namespace dtmf
