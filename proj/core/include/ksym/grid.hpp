#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ksym/chart.hpp"

namespace ksym {

/// Rectangular uniform grid over the parameter space R^k. Nodes are stored
/// row-major over (i_1, ..., i_k) with the last axis fastest.
struct GridSpec {
    std::vector<int> sizes;
    std::vector<double> spacings;
    std::vector<double> origins;

    int dim() const { return static_cast<int>(sizes.size()); }
    std::size_t node_count() const;

    std::size_t flatten(const std::vector<int>& mi) const;
    std::vector<int> unflatten(std::size_t idx) const;
    double coord(int axis, int i) const { return origins[axis] + i * spacings[axis]; }
    /// All indices at least `layer` away from every face.
    bool is_interior(const std::vector<int>& mi, int layer = 1) const;

    void validate(int k) const;  // throws on mismatched lengths, N < 3, h <= 0
};

/// Sampled values of a map from the parameter grid into a bundle chart.
/// One double per (node, chart coordinate).
class DiscreteField {
  public:
    DiscreteField() = default;
    DiscreteField(Chart chart, GridSpec grid);

    const Chart& chart() const { return chart_; }
    const GridSpec& grid() const { return grid_; }

    double at(std::size_t node, int slot) const { return values_[node * ncoord_ + slot]; }
    double& at(std::size_t node, int slot) { return values_[node * ncoord_ + slot]; }
    double at(std::size_t node, const VarRef& v) const;
    double& at(std::size_t node, const VarRef& v);

    const std::vector<double>& raw() const { return values_; }
    std::vector<double>& raw() { return values_; }

  private:
    Chart chart_;
    GridSpec grid_;
    int ncoord_ = 0;
    std::vector<double> values_;
};

/// Lagrange multiplier values lam[A,a] over a grid, A = 1..m, a = 1..k.
struct MultiplierField {
    int m = 0;
    int k = 0;
    GridSpec grid;
    std::vector<double> values;

    MultiplierField() = default;
    MultiplierField(int m_, int k_, GridSpec g);
    double at(std::size_t node, int A, int a) const {
        return values[(node * m + (A - 1)) * k + (a - 1)];
    }
    double& at(std::size_t node, int A, int a) {
        return values[(node * m + (A - 1)) * k + (a - 1)];
    }
};

/// CSV field format: header `x[1],...,x[k],<coord>,...` with coordinate
/// names in chart enumeration order, one row per node in row-major node
/// order, floats with 17 significant digits.
void write_field_csv(const DiscreteField& f, std::ostream& os);
void write_field_csv(const DiscreteField& f, const std::string& path);
DiscreteField read_field_csv(std::istream& is);
DiscreteField read_field_csv(const std::string& path);

/// Multiplier file: same layout with columns lam[1,1],...,lam[m,k].
void write_multipliers_csv(const MultiplierField& f, std::ostream& os);
void write_multipliers_csv(const MultiplierField& f, const std::string& path);
MultiplierField read_multipliers_csv(std::istream& is);
MultiplierField read_multipliers_csv(const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace ksym
