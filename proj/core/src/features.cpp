#include "mlsa/features.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mlsa/text_io.hpp"

namespace mlsa {

namespace {

struct LayoutWidths {
  std::size_t mlpca;
  std::size_t plh;
  std::size_t coords;
};

std::optional<LayoutWidths> widths_of(Layout layout) {
  switch (layout) {
    case Layout::kCrossing36:
      return LayoutWidths{18, 18, 0};
    case Layout::kSides14:
      return LayoutWidths{12, 2, 0};
    case Layout::kLidar31:
      return LayoutWidths{24, 4, 3};
    case Layout::kGeneric:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string_view layout_name(Layout layout) {
  switch (layout) {
    case Layout::kCrossing36:
      return "crossing-36";
    case Layout::kSides14:
      return "sides-14";
    case Layout::kLidar31:
      return "lidar-31";
    case Layout::kGeneric:
      return "generic";
  }
  return "generic";
}

Layout parse_layout(std::string_view name) {
  if (name == "crossing-36") return Layout::kCrossing36;
  if (name == "sides-14") return Layout::kSides14;
  if (name == "lidar-31") return Layout::kLidar31;
  if (name == "generic") return Layout::kGeneric;
  throw std::invalid_argument("unknown feature layout '" + std::string(name) + "'");
}

std::string_view feature_mode_name(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kPlh:
      return "PLH";
    case FeatureMode::kMlpca:
      return "MLPCA";
    case FeatureMode::kMlsa:
      return "MLSA";
  }
  return "MLSA";
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "plh" || name == "PLH") return FeatureMode::kPlh;
  if (name == "mlpca" || name == "MLPCA") return FeatureMode::kMlpca;
  if (name == "mlsa" || name == "MLSA") return FeatureMode::kMlsa;
  throw std::invalid_argument("unknown feature mode '" + std::string(name) + "'");
}

void FeatureMatrix::validate() const {
  if (labels.size() != rows.size()) throw std::invalid_argument("one label per row required");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size()) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " values, expected " +
                                  std::to_string(columns.size()));
    }
  }
  for (int label : labels) {
    if (label != 1 && label != -1) throw std::invalid_argument("labels must be -1 or +1");
  }
  if (const auto w = widths_of(layout)) {
    if (mlpca.width() != w->mlpca || plh.width() != w->plh || coords.width() != w->coords) {
      throw std::invalid_argument("column blocks do not match layout " +
                                  std::string(layout_name(layout)));
    }
  }
}

FeatureMatrix FeatureMatrix::select(FeatureMode mode) const {
  std::vector<std::size_t> keep;
  auto take = [&](const ColumnRange& r) {
    for (std::size_t c = r.begin; c < r.end; ++c) keep.push_back(c);
  };
  FeatureMatrix out;
  out.layout = Layout::kGeneric;
  if (mode != FeatureMode::kPlh) {
    out.mlpca = {keep.size(), keep.size() + mlpca.width()};
    take(mlpca);
  }
  if (mode != FeatureMode::kMlpca) {
    out.plh = {keep.size(), keep.size() + plh.width()};
    take(plh);
  }
  if (mode != FeatureMode::kPlh) {
    out.coords = {keep.size(), keep.size() + coords.width()};
    take(coords);
  }
  if (mode == FeatureMode::kMlsa) out.layout = layout;
  for (std::size_t c : keep) out.columns.push_back(columns[c]);
  out.rows.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> r;
    r.reserve(keep.size());
    for (std::size_t c : keep) r.push_back(row[c]);
    out.rows.push_back(std::move(r));
  }
  out.labels = labels;
  return out;
}

FeatureMatrix assemble(Layout layout, const FeatureBlock& mlpca, const FeatureBlock& plh,
                       const std::optional<FeatureBlock>& coords, std::vector<int> labels) {
  const std::size_t n = labels.size();
  auto check_block = [&](const FeatureBlock& block, const char* name, std::size_t expected) {
    if (block.rows.size() != n) {
      throw std::invalid_argument(std::string(name) + " block has " +
                                  std::to_string(block.rows.size()) + " rows, expected " +
                                  std::to_string(n));
    }
    for (const auto& row : block.rows) {
      if (row.size() != block.names.size()) {
        throw std::invalid_argument(std::string(name) + " block row width " +
                                    std::to_string(row.size()) + " does not match its " +
                                    std::to_string(block.names.size()) + " column names");
      }
    }
    if (expected != SIZE_MAX && block.names.size() != expected) {
      throw std::invalid_argument(std::string(name) + " block has width " +
                                  std::to_string(block.names.size()) + ", layout " +
                                  std::string(layout_name(layout)) + " expects " +
                                  std::to_string(expected));
    }
  };
  const auto widths = widths_of(layout);
  check_block(mlpca, "mlpca", widths ? widths->mlpca : SIZE_MAX);
  check_block(plh, "plh", widths ? widths->plh : SIZE_MAX);
  if (coords) {
    check_block(*coords, "coords", widths ? widths->coords : SIZE_MAX);
  } else if (widths && widths->coords != 0) {
    throw std::invalid_argument("coords block required by layout " +
                                std::string(layout_name(layout)));
  }

  FeatureMatrix m;
  m.layout = layout;
  m.columns = mlpca.names;
  m.columns.insert(m.columns.end(), plh.names.begin(), plh.names.end());
  if (coords) m.columns.insert(m.columns.end(), coords->names.begin(), coords->names.end());
  m.mlpca = {0, mlpca.names.size()};
  m.plh = {m.mlpca.end, m.mlpca.end + plh.names.size()};
  m.coords = {m.plh.end, m.columns.size()};
  m.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = m.rows[i];
    row.reserve(m.columns.size());
    row.insert(row.end(), mlpca.rows[i].begin(), mlpca.rows[i].end());
    row.insert(row.end(), plh.rows[i].begin(), plh.rows[i].end());
    if (coords) row.insert(row.end(), coords->rows[i].begin(), coords->rows[i].end());
  }
  m.labels = std::move(labels);
  m.validate();
  return m;
}

ColumnStats column_stats(const FeatureMatrix& m) {
  if (m.rows.empty()) throw std::invalid_argument("standardization needs a nonempty training set");
  const std::size_t cols = m.num_columns();
  const double inv = 1.0 / static_cast<double>(m.rows.size());
  ColumnStats s;
  s.mean.assign(cols, 0.0);
  s.stdev.assign(cols, 0.0);
  for (const auto& row : m.rows) {
    for (std::size_t c = 0; c < cols; ++c) s.mean[c] += row[c];
  }
  for (double& v : s.mean) v *= inv;
  for (const auto& row : m.rows) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = row[c] - s.mean[c];
      s.stdev[c] += d * d;
    }
  }
  for (double& v : s.stdev) v = std::sqrt(v * inv);
  return s;
}

FeatureMatrix apply_standardization(const FeatureMatrix& m, const ColumnStats& stats) {
  if (stats.mean.size() != m.num_columns()) {
    throw std::invalid_argument("standardization statistics do not match column count");
  }
  FeatureMatrix out = m;
  for (auto& row : out.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = stats.stdev[c] < kMinStdev ? 0.0 : (row[c] - stats.mean[c]) / stats.stdev[c];
    }
  }
  return out;
}

Standardized standardize(const FeatureMatrix& train, const FeatureMatrix& apply_to) {
  ColumnStats stats = column_stats(train);
  FeatureMatrix m = apply_standardization(apply_to, stats);
  return {std::move(m), std::move(stats)};
}

// Acklam's rational approximation followed by one Halley step against erfc.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -INFINITY;
    if (p == 1.0) return INFINITY;
    throw std::invalid_argument("normal_quantile needs p in [0, 1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

BinningSpec BinningSpec::equal_probability10() {
  BinningSpec spec{
      {-INFINITY, -1.2816, -0.8416, -0.5244, -0.2533, 0.0, 0.2533, 0.5244, 0.8416, 1.2816,
       INFINITY},
      {}};
  for (int i = 0; i < 10; ++i) spec.representatives[i] = normal_quantile((i + 0.5) / 10.0);
  return spec;
}

std::size_t BinningSpec::bin_of(double x) const {
  // upper_bound finds the first boundary > x, so x == b_i lands in bin i.
  const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, x);
  return static_cast<std::size_t>(it - (boundaries.begin() + 1));
}

FeatureMatrix discretize(const FeatureMatrix& m, const BinningSpec& spec) {
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    for (double& v : out.rows[r]) {
      if (std::isnan(v)) {
        throw std::invalid_argument("cannot discretize NaN (row " + std::to_string(r) + ")");
      }
      v = spec.representatives[spec.bin_of(v)];
    }
  }
  return out;
}

void write_feature_csv(std::ostream& os, const FeatureMatrix& m) {
  for (const auto& name : m.columns) os << name << ',';
  os << "label\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (double v : m.rows[r]) os << format_double(v) << ',';
    os << m.labels[r] << '\n';
  }
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

FeatureMatrix read_feature_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_commas(line);
  if (header.empty() || header.back() != "label") {
    throw ParseError(1, "last CSV column must be 'label'");
  }
  FeatureMatrix m;
  for (std::size_t c = 0; c + 1 < header.size(); ++c) m.columns.emplace_back(header[c]);

  // Blocks are recovered from the column-name prefixes the extractors emit.
  std::size_t c = 0;
  auto run = [&](auto pred) {
    const std::size_t begin = c;
    while (c < m.columns.size() && pred(m.columns[c])) ++c;
    return ColumnRange{begin, c};
  };
  m.mlpca = run([](const std::string& s) { return s.starts_with("mlpca_"); });
  m.plh = run([](const std::string& s) { return s.starts_with("plh_"); });
  m.coords = run([](const std::string& s) { return s == "x" || s == "y" || s == "z"; });
  if (c != m.columns.size()) m.mlpca = m.plh = m.coords = ColumnRange{};
  m.layout = Layout::kGeneric;
  for (Layout l : {Layout::kCrossing36, Layout::kSides14, Layout::kLidar31}) {
    const auto w = widths_of(l);
    if (c == m.columns.size() && m.mlpca.width() == w->mlpca && m.plh.width() == w->plh &&
        m.coords.width() == w->coords) {
      m.layout = l;
    }
  }

  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) throw ParseError(lineno, "wrong number of CSV fields");
    std::vector<double> row;
    row.reserve(m.columns.size());
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
      const auto v = parse_double(cells[k]);
      if (!v) throw ParseError(lineno, "non-numeric CSV field '" + std::string(cells[k]) + "'");
      row.push_back(*v);
    }
    const auto label = parse_integer(cells.back());
    if (!label || (*label != 1 && *label != -1)) throw ParseError(lineno, "label must be -1 or 1");
    m.rows.push_back(std::move(row));
    m.labels.push_back(static_cast<int>(*label));
  }
  return m;
}

}  // namespace mlsa
