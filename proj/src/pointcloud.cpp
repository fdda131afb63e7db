#include "dtmfilt/pointcloud.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "dtmfilt/errors.hpp"

namespace dtmf {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) {
        if (!coords_.empty()) throw DimensionError("zero-dimensional points cannot carry coordinates");
        return;
    }
    if (coords_.size() % dim_ != 0) {
        throw DimensionError("coordinate count " + std::to_string(coords_.size()) +
                             " is not a multiple of dimension " + std::to_string(dim_));
    }
    for (double c : coords_) {
        if (!std::isfinite(c)) throw ParameterError("point coordinates must be finite");
    }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t d = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * d);
    for (const auto& row : rows) {
        if (row.size() != d) throw DimensionError("all points must have the same dimension");
        coords.insert(coords.end(), row.begin(), row.end());
    }
    return PointCloud(d, std::move(coords));
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
    std::vector<double> coords;
    coords.reserve(indices.size() * dim_);
    for (std::size_t i : indices) {
        if (i >= size()) throw ParameterError("subset index out of range");
        auto p = point(i);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointCloud(dim_, std::move(coords));
}

PointCloud PointCloud::concat(const PointCloud& other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    if (other.dim_ != dim_) throw DimensionError("cannot concatenate clouds of different dimensions");
    std::vector<double> coords = coords_;
    coords.insert(coords.end(), other.coords_.begin(), other.coords_.end());
    return PointCloud(dim_, std::move(coords));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return sum;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

DiscreteMeasure::DiscreteMeasure(PointCloud support, std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
    if (support_.empty()) throw ParameterError("a measure needs a nonempty support");
    if (masses_.size() != support_.size()) throw ParameterError("one mass per support point is required");
    double total = 0.0;
    for (double w : masses_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("masses must be positive and finite");
        total += w;
    }
    for (double& w : masses_) w /= total;
}

DiscreteMeasure DiscreteMeasure::uniform(PointCloud support) {
    const std::size_t n = support.size();
    if (n == 0) throw ParameterError("a measure needs a nonempty support");
    return DiscreteMeasure(std::move(support), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

TimeSeries::TimeSeries(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw ParameterError("a time series needs at least one sample");
    for (double s : samples_) {
        if (!std::isfinite(s)) throw ParameterError("time series samples must be finite");
    }
}

double DistanceMatrix::max() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, v);
    return best;
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    DistanceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(cloud.point(i), cloud.point(j));
            out(i, j) = d;
            out(j, i) = d;
        }
    }
    return out;
}

double diameter(const PointCloud& cloud) {
    double best = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            best = std::max(best, squared_distance(cloud.point(i), cloud.point(j)));
        }
    }
    return std::sqrt(best);
}

namespace {

double directed_hausdorff_sq(const PointCloud& from, const PointCloud& to) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < to.size() && nearest > worst; ++j) {
            nearest = std::min(nearest, squared_distance(from.point(i), to.point(j)));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

}  // namespace

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw ParameterError("Hausdorff distance needs nonempty clouds");
    if (a.dim() != b.dim()) {
        throw DimensionError("Hausdorff distance between clouds of dimension " + std::to_string(a.dim()) +
                             " and " + std::to_string(b.dim()));
    }
    return std::sqrt(std::max(directed_hausdorff_sq(a, b), directed_hausdorff_sq(b, a)));
}

PointCloud delay_embedding(const TimeSeries& series, std::size_t dim, std::size_t stride) {
    if (dim == 0 || stride == 0) throw ParameterError("embedding dimension and stride must be positive");
    const std::size_t span = (dim - 1) * stride;
    if (series.size() < span + 1) {
        throw ParameterError("series of length " + std::to_string(series.size()) +
                             " is too short for dim " + std::to_string(dim) + " and stride " +
                             std::to_string(stride));
    }
    const std::size_t count = series.size() - span;
    std::vector<double> coords;
    coords.reserve(count * dim);
    auto s = series.samples();
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < dim; ++j) coords.push_back(s[k + j * stride]);
    }
    return PointCloud(dim, std::move(coords));
}

// ---------------------------------------------------------------------------

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double parse_double(std::string_view field, std::size_t line) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("non-numeric field '" + std::string(field) + "'", line);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite field '" + std::string(field) + "'", line);
    return value;
}

// Rows of numbers, one per nonblank line, paired with their 1-based line number.
std::vector<std::pair<std::size_t, std::vector<double>>> parse_rows(const std::string& text) {
    std::vector<std::pair<std::size_t, std::vector<double>>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") != std::string_view::npos) {
            std::vector<double> row;
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = line.find(',', start);
                row.push_back(parse_double(line.substr(start, comma - start), line_no));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            rows.emplace_back(line_no, std::move(row));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return rows;
}

}  // namespace

std::variant<PointCloud, DiscreteMeasure> parse_points(const std::string& text, bool weighted) {
    const auto rows = parse_rows(text);
    if (rows.empty()) throw ParseError("empty point file", 0);
    const std::size_t arity = rows.front().second.size();
    const std::size_t dim = weighted ? arity - 1 : arity;
    if (dim == 0) throw ParseError("a weighted row needs at least one coordinate and a mass", rows.front().first);

    std::vector<double> coords;
    std::vector<double> masses;
    coords.reserve(rows.size() * dim);
    for (const auto& [line, row] : rows) {
        if (row.size() != arity) {
            throw ParseError("expected " + std::to_string(arity) + " fields, found " + std::to_string(row.size()),
                             line);
        }
        coords.insert(coords.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dim));
        if (weighted) {
            if (!(row.back() > 0.0)) throw ParseError("nonpositive mass", line);
            masses.push_back(row.back());
        }
    }
    PointCloud cloud(dim, std::move(coords));
    if (!weighted) return cloud;
    return DiscreteMeasure(std::move(cloud), std::move(masses));
}

std::variant<PointCloud, DiscreteMeasure> load_points(const std::filesystem::path& path, bool weighted) {
    return parse_points(read_file(path), weighted);
}

PointCloud load_cloud(const std::filesystem::path& path) {
    return std::get<PointCloud>(load_points(path, false));
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
    return std::get<DiscreteMeasure>(load_points(path, true));
}

std::string format_points(const PointCloud& cloud) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k > 0) out += ',';
            const auto res = std::to_chars(buf, buf + sizeof buf, p[k], std::chars_format::general, 17);
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

void save_points(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << format_points(cloud);
}

TimeSeries load_series(const std::filesystem::path& path) {
    std::vector<double> samples;
    for (const auto& [line, row] : parse_rows(read_file(path))) {
        samples.insert(samples.end(), row.begin(), row.end());
    }
    if (samples.empty()) throw ParseError("empty time series file", 0);
    return TimeSeries(std::move(samples));
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw ParameterError("Rng::below needs n > 0");
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return static_cast<std::size_t>(x % n);
}

SynthKind parse_synth_kind(const std::string& name) {
    if (name == "circle") return SynthKind::circle;
    if (name == "square") return SynthKind::square;
    if (name == "circle-with-outliers") return SynthKind::circle_with_outliers;
    throw ParameterError("unknown synthetic kind '" + name + "'");
}

PointCloud synth(SynthKind kind, std::size_t n, std::size_t outliers, std::uint64_t seed) {
    if (n == 0) throw ParameterError("synthetic sample size must be positive");
    Rng rng(seed);
    std::vector<double> coords;
    auto add_square = [&](std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const double x = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(-1.0, 1.0);
            coords.push_back(x);
            coords.push_back(y);
        }
    };
    auto add_circle = [&](std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            coords.push_back(std::cos(angle));
            coords.push_back(std::sin(angle));
        }
    };
    switch (kind) {
        case SynthKind::circle:
            add_circle(n);
            break;
        case SynthKind::square:
            add_square(n);
            break;
        case SynthKind::circle_with_outliers:
            add_circle(n);
            add_square(outliers);
            break;
    }
    return PointCloud(2, std::move(coords));
}

}  // namespace dtmf
