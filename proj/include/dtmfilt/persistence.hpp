#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dtmfilt/complex.hpp"

namespace dtmf {

struct DiagramPoint {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;  ///< +inf for essential classes

    bool essential() const noexcept;
    double persistence() const noexcept { return death - birth; }

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
    friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Multiset of diagram points, kept sorted by (dim, birth, death).
struct PersistenceDiagram {
    std::vector<DiagramPoint> points;
    /// Set when the complex was truncated: essential deaths are then only
    /// known to exceed this value.
    std::optional<double> censor_value;

    std::vector<DiagramPoint> in_dim(int dim) const;
    std::size_t count(int dim) const;
    void sort();
};

enum class ReductionStrategy {
    standard,    ///< boundary columns in filtration order
    twist,       ///< boundary columns by decreasing dimension, with clearing
    cohomology,  ///< coboundary columns in reverse order, with clearing
};

struct ReduceOptions {
    std::vector<int> dims;  ///< homology dimensions to report; empty means all
    ReductionStrategy strategy = ReductionStrategy::twist;
    bool keep_zero = false;  ///< keep points with birth == death
};

/// Persistence diagram over GF(2). Dimension k is only meaningful when the
/// complex contains its (k+1)-simplices. Throws IntegrityError when a face is
/// missing or enters after its coface.
PersistenceDiagram reduce(const FilteredComplex& complex, const ReduceOptions& options = {});

/// Number of diagram points of dimension `dim` with birth <= t < death.
std::size_t betti(const FilteredComplex& complex, double t, int dim);
std::size_t betti(const PersistenceDiagram& diagram, double t, int dim);

/// `dim,birth,death` header, then one row per point; `inf` for essential deaths.
std::string format_diagram(const PersistenceDiagram& diagram);
void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& diagram);
PersistenceDiagram parse_diagram(const std::string& text);
PersistenceDiagram load_diagram(const std::filesystem::path& path);

}  // namespace dtmf
