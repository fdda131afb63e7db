#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dtmf {

/// Ordered finite set of points in R^d. Indices are stable identifiers;
/// coincident points are kept as distinct entries.
class PointCloud {
public:
    PointCloud() = default;

    /// `coords` holds the points row-major, `dim` coordinates each.
    PointCloud(std::size_t dim, std::vector<double> coords);

    static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return size() == 0; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coordinates() const noexcept { return coords_; }

    /// Points of `indices`, in that order.
    PointCloud subset(std::span<const std::size_t> indices) const;

    /// This cloud followed by the points of `other`.
    PointCloud concat(const PointCloud& other) const;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

/// Finitely supported probability measure. Masses are positive and sum to 1.
class DiscreteMeasure {
public:
    /// Normalizes `masses` to sum to 1. Throws ParameterError on a nonpositive mass.
    DiscreteMeasure(PointCloud support, std::vector<double> masses);

    /// Mass 1/|X| on each point of X.
    static DiscreteMeasure uniform(PointCloud support);

    const PointCloud& support() const noexcept { return support_; }
    std::span<const double> masses() const noexcept { return masses_; }
    std::size_t size() const noexcept { return support_.size(); }
    std::size_t dim() const noexcept { return support_.dim(); }

private:
    PointCloud support_;
    std::vector<double> masses_;
};

/// Real-valued series, at least one sample, all finite.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> samples);
    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::vector<double> samples_;
};

/// Symmetric matrix of Euclidean distances, stored densely row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    double max() const;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

DistanceMatrix pairwise_distances(const PointCloud& cloud);

/// Largest pairwise distance; 0 for fewer than two points.
double diameter(const PointCloud& cloud);

/// Symmetric Hausdorff distance. Throws DimensionError on mismatched dimensions
/// and ParameterError on an empty cloud.
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Point k is (s_k, s_{k+stride}, ..., s_{k+(dim-1)stride}).
PointCloud delay_embedding(const TimeSeries& series, std::size_t dim, std::size_t stride = 1);

// ---------------------------------------------------------------------------
// Input

/// Parses the point CSV format: one point per line, comma-separated decimals,
/// no header, LF or CRLF. Blank lines are skipped. When `weighted`, the last
/// column is the (unnormalized) mass of the point.
std::variant<PointCloud, DiscreteMeasure> parse_points(const std::string& text, bool weighted);
std::variant<PointCloud, DiscreteMeasure> load_points(const std::filesystem::path& path, bool weighted);

PointCloud load_cloud(const std::filesystem::path& path);
DiscreteMeasure load_measure(const std::filesystem::path& path);

std::string format_points(const PointCloud& cloud);
void save_points(const std::filesystem::path& path, const PointCloud& cloud);

TimeSeries load_series(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Synthetic data

/// SplitMix64-seeded xoshiro256** generator. Every draw is defined bit-exactly,
/// so seeded fixtures are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n);

private:
    std::uint64_t s_[4];
};

enum class SynthKind { circle, square, circle_with_outliers };

SynthKind parse_synth_kind(const std::string& name);

/// circle: n uniform angles on the unit circle in R^2.
/// square: n uniform points of [-1,1]^2.
/// circle_with_outliers: the circle sample followed by `outliers` square points,
/// drawn from the same stream, so the first n points equal synth(circle, n, 0, seed).
PointCloud synth(SynthKind kind, std::size_t n, std::size_t outliers, std::uint64_t seed);

}  // namespace dtmf
