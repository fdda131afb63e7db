#include "dtmfilt/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "dtmfilt/errors.hpp"

namespace dtmf {

bool DiagramPoint::essential() const noexcept { return std::isinf(death); }

std::vector<DiagramPoint> PersistenceDiagram::in_dim(int dim) const {
    std::vector<DiagramPoint> out;
    std::copy_if(points.begin(), points.end(), std::back_inserter(out),
                 [dim](const DiagramPoint& pt) { return pt.dim == dim; });
    return out;
}

std::size_t PersistenceDiagram::count(int dim) const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [dim](const DiagramPoint& pt) { return pt.dim == dim; }));
}

void PersistenceDiagram::sort() { std::sort(points.begin(), points.end()); }

namespace {

constexpr std::int64_t kNone = -1;

// Sparse columns in compressed form.
struct Csr {
    std::vector<std::uint64_t> offsets;
    std::vector<std::uint32_t> entries;

    std::span<const std::uint32_t> column(std::size_t i) const {
        return {entries.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
};

// Boundary columns (facet indices, ascending) for simplices whose dimension is
// flagged in `want`; other columns are empty.
Csr boundary_matrix(const FilteredComplex& complex, const std::vector<char>& want) {
    const SimplexIndex index(complex);
    Csr out;
    out.offsets.reserve(complex.size() + 1);
    out.offsets.push_back(0);
    std::vector<std::uint32_t> faces;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        const int d = complex.dim(i);
        if (d > 0 && want[static_cast<std::size_t>(d)]) {
            auto vs = complex.vertices(i);
            faces.clear();
            for (std::size_t skip = 0; skip < vs.size(); ++skip) {
                const auto face = index.lookup(d - 1, index.keys().facet_key(vs, skip));
                if (!face) throw IntegrityError("simplex " + std::to_string(i) + " is missing a face");
                if (*face >= i) {
                    throw IntegrityError("simplex " + std::to_string(i) + " enters before one of its faces");
                }
                faces.push_back(static_cast<std::uint32_t>(*face));
            }
            std::sort(faces.begin(), faces.end());
            out.entries.insert(out.entries.end(), faces.begin(), faces.end());
        }
        out.offsets.push_back(out.entries.size());
    }
    return out;
}

// Column reduction over GF(2). Rows are integers in [0, rows); the pivot of a
// column is its largest row.
class ColumnReducer {
public:
    explicit ColumnReducer(std::size_t rows) : owner_(rows, kNone) {}

    /// Reduces `column` (ascending rows) in place. Returns the pivot row or
    /// kNone when the column vanishes; nonzero columns are stored.
    std::int64_t reduce(std::vector<std::uint32_t>& column) {
        while (!column.empty()) {
            const std::uint32_t low = column.back();
            const std::int64_t slot = owner_[low];
            if (slot == kNone) {
                owner_[low] = static_cast<std::int64_t>(slots_.size());
                slots_.push_back(column);
                return low;
            }
            const auto& other = slots_[static_cast<std::size_t>(slot)];
            scratch_.clear();
            std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch_));
            column.swap(scratch_);
        }
        return kNone;
    }

private:
    std::vector<std::int64_t> owner_;
    std::vector<std::vector<std::uint32_t>> slots_;
    std::vector<std::uint32_t> scratch_;
};

struct Pairing {
    std::vector<std::int64_t> partner;  // death index for births, kNone otherwise
    std::vector<char> positive;         // column reduced to zero
};

Pairing reduce_homology(const FilteredComplex& complex, const std::vector<char>& active, bool twist) {
    const std::size_t n = complex.size();
    std::vector<char> want(active);
    const Csr boundary = boundary_matrix(complex, want);
    Pairing out{std::vector<std::int64_t>(n, kNone), std::vector<char>(n, 0)};
    std::vector<char> cleared(n, 0);
    ColumnReducer reducer(n);
    std::vector<std::uint32_t> column;

    auto process = [&](std::size_t i) {
        if (cleared[i]) return;
        auto b = boundary.column(i);
        column.assign(b.begin(), b.end());
        const std::int64_t low = reducer.reduce(column);
        if (low == kNone) {
            out.positive[i] = 1;
        } else {
            out.partner[static_cast<std::size_t>(low)] = static_cast<std::int64_t>(i);
            if (twist) cleared[static_cast<std::size_t>(low)] = 1;
        }
    };

    if (!twist) {
        for (std::size_t i = 0; i < n; ++i) {
            if (active[static_cast<std::size_t>(complex.dim(i))]) process(i);
        }
    } else {
        for (int d = static_cast<int>(active.size()) - 1; d >= 0; --d) {
            if (!active[static_cast<std::size_t>(d)]) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (complex.dim(i) == d) process(i);
            }
        }
    }
    return out;
}

Pairing reduce_cohomology(const FilteredComplex& complex, const std::vector<char>& active) {
    const std::size_t n = complex.size();
    const std::size_t top = active.size();
    // Cofaces of active dimensions come from boundaries one dimension up.
    std::vector<char> want(top, 0);
    for (std::size_t d = 0; d + 1 < top; ++d) want[d + 1] = active[d];
    const Csr boundary = boundary_matrix(complex, want);

    // Transpose into coboundary columns; rows are reversed indices.
    Csr cob;
    cob.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t face : boundary.column(i)) ++cob.offsets[face + 1];
    }
    for (std::size_t i = 0; i < n; ++i) cob.offsets[i + 1] += cob.offsets[i];
    cob.entries.resize(boundary.entries.size());
    {
        std::vector<std::uint64_t> fill(cob.offsets.begin(), cob.offsets.end() - 1);
        for (std::size_t i = n; i-- > 0;) {
            for (std::uint32_t face : boundary.column(i)) {
                cob.entries[fill[face]++] = static_cast<std::uint32_t>(n - 1 - i);
            }
        }
    }

    Pairing out{std::vector<std::int64_t>(n, kNone), std::vector<char>(n, 0)};
    std::vector<char> cleared(n, 0);
    ColumnReducer reducer(n);
    std::vector<std::uint32_t> column;
    for (std::size_t d = 0; d < top; ++d) {
        if (!active[d]) continue;
        for (std::size_t i = n; i-- > 0;) {
            if (static_cast<std::size_t>(complex.dim(i)) != d || cleared[i]) continue;
            auto c = cob.column(i);
            column.assign(c.begin(), c.end());
            const std::int64_t low = reducer.reduce(column);
            if (low == kNone) {
                out.positive[i] = 1;
            } else {
                const std::size_t death = n - 1 - static_cast<std::size_t>(low);
                out.partner[i] = static_cast<std::int64_t>(death);
                cleared[death] = 1;
            }
        }
    }
    return out;
}

}  // namespace

PersistenceDiagram reduce(const FilteredComplex& complex, const ReduceOptions& options) {
    PersistenceDiagram diagram;
    diagram.censor_value = complex.truncation();
    if (complex.empty()) return diagram;
    const int max_dim = complex.max_dim();

    std::set<int> report;
    if (options.dims.empty()) {
        for (int d = 0; d <= max_dim; ++d) report.insert(d);
    } else {
        for (int d : options.dims) {
            if (d < 0) throw ParameterError("homology dimensions must be >= 0");
            if (d <= max_dim) report.insert(d);
        }
    }
    if (report.empty()) return diagram;

    // Dimensions whose columns must be reduced.
    std::vector<char> active(static_cast<std::size_t>(max_dim) + 1, 0);
    for (int d : report) {
        active[static_cast<std::size_t>(d)] = 1;
        if (options.strategy == ReductionStrategy::cohomology) {
            if (d > 0) active[static_cast<std::size_t>(d - 1)] = 1;
        } else if (d < max_dim) {
            active[static_cast<std::size_t>(d + 1)] = 1;
        }
    }

    const Pairing pairing = options.strategy == ReductionStrategy::cohomology
                                ? reduce_cohomology(complex, active)
                                : reduce_homology(complex, active, options.strategy == ReductionStrategy::twist);

    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < complex.size(); ++i) {
        const int d = complex.dim(i);
        if (!report.count(d)) continue;
        const std::int64_t partner = pairing.partner[i];
        if (partner != kNone) {
            const double birth = complex.value(i);
            const double death = complex.value(static_cast<std::size_t>(partner));
            if (death > birth || options.keep_zero) diagram.points.push_back({d, birth, death});
        } else if (pairing.positive[i]) {
            diagram.points.push_back({d, complex.value(i), inf});
        }
    }
    diagram.sort();
    return diagram;
}

std::size_t betti(const PersistenceDiagram& diagram, double t, int dim) {
    return static_cast<std::size_t>(std::count_if(diagram.points.begin(), diagram.points.end(), [&](const DiagramPoint& pt) {
        return pt.dim == dim && pt.birth <= t && t < pt.death;
    }));
}

std::size_t betti(const FilteredComplex& complex, double t, int dim) {
    ReduceOptions options;
    options.dims = {dim};
    return betti(reduce(complex, options), t, dim);
}

std::string format_diagram(const PersistenceDiagram& diagram) {
    std::vector<DiagramPoint> points = diagram.points;
    std::sort(points.begin(), points.end());
    std::string out = "dim,birth,death\n";
    for (const auto& pt : points) {
        out += std::to_string(pt.dim);
        out += ',';
        out += format_real(pt.birth);
        out += ',';
        out += format_real(pt.death);
        out += '\n';
    }
    return out;
}

void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& diagram) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << format_diagram(diagram);
}

namespace {

double parse_real(const std::string& text, std::size_t line_no) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || std::isnan(value)) {
        throw ParseError("bad number '" + text + "'", line_no);
    }
    return value;
}

}  // namespace

PersistenceDiagram parse_diagram(const std::string& text) {
    PersistenceDiagram diagram;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (!header) {
            if (line != "dim,birth,death") throw ParseError("expected header 'dim,birth,death'", line_no);
            header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 3) throw ParseError("expected three fields", line_no);
        int dim = -1;
        const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), dim);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size() || dim < 0) {
            throw ParseError("bad dimension '" + fields[0] + "'", line_no);
        }
        const double birth = parse_real(fields[1], line_no);
        const double death = parse_real(fields[2], line_no);
        if (std::isinf(birth)) throw ParseError("birth must be finite", line_no);
        if (death < birth) throw ParseError("death precedes birth", line_no);
        diagram.points.push_back({dim, birth, death});
    }
    if (!header) throw ParseError("empty diagram file", line_no);
    diagram.sort();
    return diagram;
}

PersistenceDiagram load_diagram(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_diagram(buffer.str());
}

}  // namespace dtmf
