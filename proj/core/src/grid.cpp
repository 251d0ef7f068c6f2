#include "ksym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "ksym/errors.hpp"

namespace ksym {

std::size_t GridSpec::node_count() const {
    std::size_t c = 1;
    for (int s : sizes) c *= static_cast<std::size_t>(s);
    return c;
}

std::size_t GridSpec::flatten(const std::vector<int>& mi) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < sizes.size(); ++a) idx = idx * sizes[a] + mi[a];
    return idx;
}

std::vector<int> GridSpec::unflatten(std::size_t idx) const {
    std::vector<int> mi(sizes.size());
    for (std::size_t a = sizes.size(); a-- > 0;) {
        mi[a] = static_cast<int>(idx % sizes[a]);
        idx /= sizes[a];
    }
    return mi;
}

bool GridSpec::is_interior(const std::vector<int>& mi, int layer) const {
    for (std::size_t a = 0; a < sizes.size(); ++a)
        if (mi[a] < layer || mi[a] > sizes[a] - 1 - layer) return false;
    return true;
}

void GridSpec::validate(int k) const {
    if (dim() != k)
        throw ChartMismatchError("grid dimension " + std::to_string(dim()) +
                                 " does not match chart k=" + std::to_string(k));
    if (spacings.size() != sizes.size() || origins.size() != sizes.size())
        throw FormatError("grid sizes/spacings/origins must have equal lengths");
    for (int s : sizes)
        if (s < 3) throw FormatError("grid too small: every axis needs at least 3 nodes");
    for (double h : spacings)
        if (!(h > 0)) throw FormatError("grid spacings must be strictly positive");
}

DiscreteField::DiscreteField(Chart chart, GridSpec grid)
    : chart_(std::move(chart)), grid_(std::move(grid)), ncoord_(chart_.size()) {
    grid_.validate(chart_.k());
    values_.assign(grid_.node_count() * static_cast<std::size_t>(ncoord_), 0.0);
}

double DiscreteField::at(std::size_t node, const VarRef& v) const {
    int slot = chart_.slot_of(v);
    if (slot < 0) throw ChartMismatchError("coordinate " + to_string(v) + " not on chart");
    return at(node, slot);
}

double& DiscreteField::at(std::size_t node, const VarRef& v) {
    int slot = chart_.slot_of(v);
    if (slot < 0) throw ChartMismatchError("coordinate " + to_string(v) + " not on chart");
    return at(node, slot);
}

MultiplierField::MultiplierField(int m_, int k_, GridSpec g)
    : m(m_), k(k_), grid(std::move(g)) {
    values.assign(grid.node_count() * static_cast<std::size_t>(m) * k, 0.0);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_rows(const GridSpec& g, int ncols, std::ostream& os,
                const std::function<double(std::size_t, int)>& value) {
    const std::size_t nodes = g.node_count();
    for (std::size_t node = 0; node < nodes; ++node) {
        auto mi = g.unflatten(node);
        for (int a = 0; a < g.dim(); ++a) {
            if (a) os << ",";
            os << format_double(g.coord(a, mi[a]));
        }
        for (int c = 0; c < ncols; ++c) os << "," << format_double(value(node, c));
        os << "\n";
    }
}

// Commas inside brackets belong to coordinate names like "v[1,2]".
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct RawTable {
    int k = 0;
    std::vector<std::string> names;               // non-x column names
    std::vector<std::vector<double>> xs;          // per row, k coords
    std::vector<std::vector<double>> vals;        // per row, values
};

RawTable read_table(std::istream& is) {
    RawTable t;
    std::string line;
    if (!std::getline(is, line)) throw FormatError("empty field file");
    auto header = split_csv(line);
    std::size_t col = 0;
    while (col < header.size() && header[col] == "x[" + std::to_string(col + 1) + "]") ++col;
    if (col == 0) throw FormatError("field file header must start with x[1]");
    t.k = static_cast<int>(col);
    for (; col < header.size(); ++col) t.names.push_back(header[col]);
    if (t.names.empty()) throw FormatError("field file has no coordinate columns");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != static_cast<std::size_t>(t.k) + t.names.size())
            throw FormatError("field file row has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(t.k + t.names.size()));
        std::vector<double> x(t.k), v(t.names.size());
        for (int a = 0; a < t.k; ++a) x[a] = std::stod(cells[a]);
        for (std::size_t c = 0; c < t.names.size(); ++c) v[c] = std::stod(cells[t.k + c]);
        t.xs.push_back(std::move(x));
        t.vals.push_back(std::move(v));
    }
    if (t.xs.empty()) throw FormatError("field file has no data rows");
    return t;
}

GridSpec infer_grid(const RawTable& t) {
    GridSpec g;
    g.sizes.resize(t.k);
    g.spacings.resize(t.k);
    g.origins.resize(t.k);
    for (int a = 0; a < t.k; ++a) {
        std::vector<double> vals;
        for (const auto& x : t.xs) vals.push_back(x[a]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end(),
                               [](double p, double q) { return std::abs(p - q) < 1e-12; }),
                   vals.end());
        if (vals.size() < 3) throw FormatError("axis " + std::to_string(a + 1) + " has fewer than 3 nodes");
        g.sizes[a] = static_cast<int>(vals.size());
        g.origins[a] = vals.front();
        g.spacings[a] = (vals.back() - vals.front()) / (vals.size() - 1);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (std::abs(vals[i] - (g.origins[a] + i * g.spacings[a])) >
                1e-9 * std::max(1.0, std::abs(vals.back())))
                throw FormatError("axis " + std::to_string(a + 1) + " is not uniformly spaced");
    }
    if (t.xs.size() != g.node_count())
        throw FormatError("row count does not match the inferred grid");
    // Row order must be row-major.
    for (std::size_t r = 0; r < t.xs.size(); ++r) {
        auto mi = g.unflatten(r);
        for (int a = 0; a < t.k; ++a)
            if (std::abs(t.xs[r][a] - g.coord(a, mi[a])) > 1e-9 * std::max(1.0, std::abs(g.coord(a, mi[a]))))
                throw FormatError("rows are not in row-major node order");
    }
    return g;
}

}  // namespace

void write_field_csv(const DiscreteField& f, std::ostream& os) {
    const auto& chart = f.chart();
    for (int a = 1; a <= chart.k(); ++a) os << (a > 1 ? "," : "") << "x[" << a << "]";
    for (const auto& c : chart.coords()) os << "," << to_string(c);
    os << "\n";
    write_rows(f.grid(), chart.size(), os,
               [&](std::size_t node, int c) { return f.at(node, c); });
}

void write_field_csv(const DiscreteField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open '" + path + "' for writing");
    write_field_csv(f, os);
}

DiscreteField read_field_csv(std::istream& is) {
    RawTable t = read_table(is);
    // Identify the chart from the header names.
    int n = 0;
    bool has_v = false, has_p = false, has_w = false, has_u = false, has_vv = false;
    for (const auto& name : t.names) {
        auto bracket = name.find('[');
        if (bracket == std::string::npos) throw FormatError("bad coordinate name '" + name + "'");
        std::string role = name.substr(0, bracket);
        std::string idx = name.substr(bracket + 1, name.size() - bracket - 2);
        int i1 = std::atoi(idx.c_str());
        if (role == "q") n = std::max(n, i1);
        has_v |= role == "v";
        has_p |= role == "p";
        has_w |= role == "w";
        has_u |= role == "u";
        has_vv |= role == "vv";
    }
    Bundle bundle;
    if (has_vv)
        bundle = Bundle::IteratedM;
    else if (has_w || has_u)
        bundle = Bundle::Iterated;
    else if (has_v && has_p)
        bundle = Bundle::Pontryagin;
    else if (has_p)
        bundle = Bundle::Cotangent;
    else if (has_v)
        bundle = Bundle::Tangent;
    else
        bundle = Bundle::Base;
    Chart chart = make_chart(std::max(n, 1), t.k, bundle);
    if (chart.size() != static_cast<int>(t.names.size()))
        throw FormatError("field file has " + std::to_string(t.names.size()) +
                          " coordinate columns, chart " + to_string(bundle) + " needs " +
                          std::to_string(chart.size()));
    for (int c = 0; c < chart.size(); ++c)
        if (t.names[c] != to_string(chart.coord(c)))
            throw FormatError("coordinate column " + std::to_string(c + 1) + " is '" + t.names[c] +
                              "', expected '" + to_string(chart.coord(c)) + "'");
    DiscreteField f(chart, infer_grid(t));
    for (std::size_t r = 0; r < t.vals.size(); ++r)
        for (int c = 0; c < chart.size(); ++c) f.at(r, c) = t.vals[r][c];
    return f;
}

DiscreteField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open field file '" + path + "'");
    return read_field_csv(is);
}

void write_multipliers_csv(const MultiplierField& f, std::ostream& os) {
    for (int a = 1; a <= f.grid.dim(); ++a) os << (a > 1 ? "," : "") << "x[" << a << "]";
    for (int A = 1; A <= f.m; ++A)
        for (int a = 1; a <= f.k; ++a) os << ",lam[" << A << "," << a << "]";
    os << "\n";
    write_rows(f.grid, f.m * f.k, os, [&](std::size_t node, int c) {
        return f.values[node * f.m * f.k + c];
    });
}

void write_multipliers_csv(const MultiplierField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open '" + path + "' for writing");
    write_multipliers_csv(f, os);
}

MultiplierField read_multipliers_csv(std::istream& is) {
    RawTable t = read_table(is);
    int m = 0, k = 0;
    for (const auto& name : t.names) {
        int A = 0, a = 0;
        if (std::sscanf(name.c_str(), "lam[%d,%d]", &A, &a) != 2)
            throw FormatError("bad multiplier column '" + name + "'");
        m = std::max(m, A);
        k = std::max(k, a);
    }
    if (static_cast<std::size_t>(m) * k != t.names.size())
        throw FormatError("multiplier columns must cover lam[1,1]..lam[m,k]");
    for (int A = 1; A <= m; ++A)
        for (int a = 1; a <= k; ++a) {
            std::string want = "lam[" + std::to_string(A) + "," + std::to_string(a) + "]";
            if (t.names[(A - 1) * k + (a - 1)] != want)
                throw FormatError("multiplier columns must be ordered lam[1,1]..lam[m,k]");
        }
    MultiplierField f(m, k, infer_grid(t));
    for (std::size_t r = 0; r < t.vals.size(); ++r)
        for (std::size_t c = 0; c < t.names.size(); ++c)
            f.values[r * t.names.size() + c] = t.vals[r][c];
    return f;
}

MultiplierField read_multipliers_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open multiplier file '" + path + "'");
    return read_multipliers_csv(is);
}

}  // namespace ksym
