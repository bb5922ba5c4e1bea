#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace machlab {

/// Uniform cell-centered grid on a periodic box. The default box is
/// [-1,1]^dim; larger boxes are used to approximate the whole space in the
/// ill-prepared experiments. Sizes must be even and at least 8 so that the
/// real-to-complex spectral layout stays symmetric.
struct TorusGrid {
  int dim = 2;
  std::array<int, 2> cells{8, 8};           // cells[1] ignored when dim == 1
  std::array<double, 2> lengths{2.0, 2.0};  // physical box lengths

  TorusGrid() = default;
  TorusGrid(int dim_, std::array<int, 2> cells_, std::array<double, 2> lengths_)
      : dim(dim_), cells(cells_), lengths(lengths_) {
    validate();
  }

  static TorusGrid line(int n, double length = 2.0) {
    return TorusGrid(1, {n, 1}, {length, length});
  }
  static TorusGrid square(int n, double length = 2.0) {
    return TorusGrid(2, {n, n}, {length, length});
  }

  void validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("TorusGrid: dim must be 1 or 2");
    for (int d = 0; d < dim; ++d) {
      if (cells[d] < 8 || cells[d] % 2 != 0)
        throw std::invalid_argument("TorusGrid: cells per dim must be even and >= 8");
      if (!(lengths[d] > 0.0)) throw std::invalid_argument("TorusGrid: lengths must be positive");
    }
  }

  std::size_t cell_count() const {
    return dim == 1 ? static_cast<std::size_t>(cells[0])
                    : static_cast<std::size_t>(cells[0]) * cells[1];
  }
  double dx(int d) const { return lengths[d] / cells[d]; }
  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= dx(d);
    return v;
  }
  double volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= lengths[d];
    return v;
  }
  /// Cell-center coordinate along dimension d (box centered at the origin).
  double center(int d, int i) const { return -0.5 * lengths[d] + (i + 0.5) * dx(d); }

  /// Row-major flat index: 2D fields are stored as i * ny + j.
  std::size_t index(int i, int j = 0) const {
    return dim == 1 ? static_cast<std::size_t>(i)
                    : static_cast<std::size_t>(i) * cells[1] + j;
  }

  bool operator==(const TorusGrid& o) const {
    if (dim != o.dim) return false;
    for (int d = 0; d < dim; ++d)
      if (cells[d] != o.cells[d] || lengths[d] != o.lengths[d]) return false;
    return true;
  }
};

using Field = std::vector<double>;

/// Vector field with one component array per grid dimension.
struct VectorField {
  std::array<Field, 2> comp;

  VectorField() = default;
  explicit VectorField(const TorusGrid& g) {
    for (int d = 0; d < g.dim; ++d) comp[d].assign(g.cell_count(), 0.0);
  }
  Field& operator[](int d) { return comp[d]; }
  const Field& operator[](int d) const { return comp[d]; }
};

/// Axis-aligned compact sub-box used to restrict norms and relative-energy
/// integrals; cells belong to the subset when their center lies inside.
struct SubBox {
  std::array<double, 2> lo{-1.0, -1.0};
  std::array<double, 2> hi{1.0, 1.0};

  static SubBox centered(const std::array<double, 2>& halfwidth) {
    SubBox b;
    for (int d = 0; d < 2; ++d) {
      b.lo[d] = -halfwidth[d];
      b.hi[d] = halfwidth[d];
    }
    return b;
  }
  bool contains(int dim, const std::array<double, 2>& x) const {
    for (int d = 0; d < dim; ++d)
      if (x[d] < lo[d] || x[d] > hi[d]) return false;
    return true;
  }
  /// Euclidean diameter of the box restricted to the first `dim` axes.
  double diameter(int dim) const;
};

/// Cell-averaged conserved variables (density, momentum) of the rescaled
/// compressible system, tagged with the Mach number.
struct ConservedState {
  TorusGrid grid;
  Field rho;
  VectorField mom;
  double eps = 1.0;
  double time = 0.0;

  ConservedState() = default;
  ConservedState(const TorusGrid& g, double eps_)
      : grid(g), rho(g.cell_count(), 0.0), mom(g), eps(eps_) {
    if (!(eps_ > 0.0)) throw std::invalid_argument("ConservedState: eps must be positive");
  }

  void validate_positive(double floor = 0.0) const {
    for (double r : rho)
      if (!(r > floor)) throw std::invalid_argument("ConservedState: density must be positive");
  }
};

}  // namespace machlab
