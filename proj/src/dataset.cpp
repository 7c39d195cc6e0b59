#include "bnsaga/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "bnsaga/errors.hpp"
#include "bnsaga/sampling.hpp"

namespace bnsaga {

// ---------------------------------------------------------------------------
// FeatureMatrix

FeatureMatrix FeatureMatrix::automatic(const Matrix& dense) {
  const double total = static_cast<double>(dense.size());
  const double nnz = static_cast<double>((dense.array() != 0.0).count());
  if (total > 0 && nnz / total < kSparseFillThreshold) {
    return FeatureMatrix(SparseMatrix(dense.sparseView()));
  }
  return FeatureMatrix(dense);
}

FeatureMatrix FeatureMatrix::automatic(SparseMatrix sparse) {
  const double total = static_cast<double>(sparse.rows()) * static_cast<double>(sparse.cols());
  if (total > 0 && static_cast<double>(sparse.nonZeros()) / total >= kSparseFillThreshold) {
    return FeatureMatrix(Matrix(sparse));
  }
  return FeatureMatrix(std::move(sparse));
}

Index FeatureMatrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.rows()); }, storage_);
}

Index FeatureMatrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.cols()); }, storage_);
}

double FeatureMatrix::fill_ratio() const {
  const double total = static_cast<double>(rows()) * static_cast<double>(cols());
  if (total == 0) return 0.0;
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) {
    return static_cast<double>(s->nonZeros()) / total;
  }
  const auto& m = std::get<Matrix>(storage_);
  return static_cast<double>((m.array() != 0.0).count()) / total;
}

double FeatureMatrix::dot(Index col, const Vector& w) const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) {
    double acc = 0.0;
    for (SparseMatrix::InnerIterator it(*s, col); it; ++it) acc += it.value() * w[it.index()];
    return acc;
  }
  return std::get<Matrix>(storage_).col(col).dot(w);
}

void FeatureMatrix::add_column(Index col, double alpha, Vector& out) const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) {
    for (SparseMatrix::InnerIterator it(*s, col); it; ++it) out[it.index()] += alpha * it.value();
    return;
  }
  out.noalias() += alpha * std::get<Matrix>(storage_).col(col);
}

double FeatureMatrix::column_squared_norm(Index col) const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) return s->col(col).squaredNorm();
  return std::get<Matrix>(storage_).col(col).squaredNorm();
}

double FeatureMatrix::coeff(Index row, Index col) const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) return s->coeff(row, col);
  return std::get<Matrix>(storage_)(row, col);
}

void FeatureMatrix::gram_apply(const Vector& x, Vector& out) const {
  std::visit([&](const auto& m) { out.noalias() = m * (m.transpose() * x).eval(); }, storage_);
}

void FeatureMatrix::cogram_apply(const Vector& x, Vector& out) const {
  std::visit([&](const auto& m) { out.noalias() = m.transpose() * (m * x).eval(); }, storage_);
}

void FeatureMatrix::gather_column(Index col, Eigen::Ref<Eigen::VectorXd> out) const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) {
    out.setZero();
    for (SparseMatrix::InnerIterator it(*s, col); it; ++it) out[it.index()] = it.value();
    return;
  }
  out = std::get<Matrix>(storage_).col(col);
}

void FeatureMatrix::gather(std::span<const Index> cols, Matrix& out) const {
  out.resize(rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) gather_column(cols[j], out.col(static_cast<Index>(j)));
}

Matrix FeatureMatrix::to_dense() const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) return Matrix(*s);
  return std::get<Matrix>(storage_);
}

bool FeatureMatrix::operator==(const FeatureMatrix& other) const {
  if (rows() != other.rows() || cols() != other.cols()) return false;
  return to_dense() == other.to_dense();
}

void validate(const Dataset& ds) {
  if (ds.n() <= 0 || ds.d() <= 0) throw DimensionError("dataset must have n >= 1 and d >= 1");
  if (ds.labels.size() != ds.n()) {
    throw DimensionError("labels length " + std::to_string(ds.labels.size()) +
                         " does not match n = " + std::to_string(ds.n()));
  }
  if (!ds.labels.allFinite()) throw ValidationError("labels contain NaN or infinite values");
  if (!ds.features.to_dense().allFinite()) {
    throw ValidationError("features contain NaN or infinite values");
  }
}

// ---------------------------------------------------------------------------
// LIBSVM

namespace {

bool parse_real(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, long long& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<Index> d_override) {
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> labels;
  long long max_index = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = split_ws(view);
    if (tokens.empty()) continue;

    double label = 0.0;
    if (!parse_real(tokens.front(), label)) {
      throw ParseError(line_no, "invalid label '" + std::string(tokens.front()) + "'");
    }
    const auto sample = static_cast<Index>(labels.size());
    long long prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected <index>:<value>, got '" + std::string(tok) + "'");
      }
      long long idx = 0;
      double value = 0.0;
      if (!parse_index(tok.substr(0, colon), idx)) {
        throw ParseError(line_no, "non-numeric index in '" + std::string(tok) + "'");
      }
      if (idx <= 0) throw ParseError(line_no, "feature index must be >= 1");
      if (idx <= prev) throw ParseError(line_no, "feature indices must be strictly increasing");
      if (!parse_real(tok.substr(colon + 1), value)) {
        throw ParseError(line_no, "non-numeric value in '" + std::string(tok) + "'");
      }
      prev = idx;
      max_index = std::max(max_index, idx);
      if (value != 0.0) triplets.emplace_back(static_cast<Index>(idx - 1), sample, value);
    }
    labels.push_back(label);
  }
  if (labels.empty()) throw ParseError(0, "no samples");

  Index d = static_cast<Index>(max_index);
  if (d_override) {
    if (*d_override < d) {
      throw DimensionError("d_override " + std::to_string(*d_override) +
                           " is smaller than the largest feature index " + std::to_string(d));
    }
    d = *d_override;
  }
  if (d <= 0) throw DimensionError("no features found and no dimension given");

  const auto n = static_cast<Index>(labels.size());
  SparseMatrix a(d, n);
  a.setFromTriplets(triplets.begin(), triplets.end());

  Dataset ds{FeatureMatrix::automatic(std::move(a)),
             Eigen::Map<const Vector>(labels.data(), n)};
  return ds;
}

Dataset load_libsvm(const std::string& path, std::optional<Index> d_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  return parse_libsvm(in, d_override);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  char buf[64];
  const Matrix a = ds.features.to_dense();
  for (Index i = 0; i < ds.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", ds.labels[i]);
    out << buf;
    for (Index j = 0; j < ds.d(); ++j) {
      if (a(j, i) == 0.0) continue;
      std::snprintf(buf, sizeof buf, " %lld:%.17g", static_cast<long long>(j + 1), a(j, i));
      out << buf;
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Preprocessing and generators

Dataset standardize_features(const Dataset& ds) {
  Matrix a = ds.features.to_dense();
  const double n = static_cast<double>(ds.n());
  for (Index j = 0; j < a.rows(); ++j) {
    auto row = a.row(j);
    const double mean = row.sum() / n;
    row.array() -= mean;
    const double sd = std::sqrt(row.squaredNorm() / n);
    if (sd > 0.0) row /= sd;
  }
  return {FeatureMatrix::automatic(a), ds.labels};
}

ArtificialKind parse_artificial_kind(std::string_view name) {
  if (name == "uniform") return ArtificialKind::uniform;
  if (name == "alone" || name == "alone_eigval") return ArtificialKind::alone_eigval;
  if (name == "staircase" || name == "staircase_eigval") return ArtificialKind::staircase_eigval;
  throw std::invalid_argument("unknown generator kind '" + std::string(name) +
                              "' (expected uniform|alone|staircase)");
}

std::string_view to_string(ArtificialKind kind) {
  switch (kind) {
    case ArtificialKind::uniform: return "uniform";
    case ArtificialKind::alone_eigval: return "alone";
    case ArtificialKind::staircase_eigval: return "staircase";
  }
  return "?";
}

Dataset generate_artificial(ArtificialKind kind, Index n, Index d, std::uint64_t seed) {
  if (n <= 0 || d <= 0) throw DimensionError("n and d must be positive");
  if (kind != ArtificialKind::uniform && d != n) {
    throw DimensionError(std::string(to_string(kind)) + " requires a square matrix (d = n)");
  }
  Rng rng = make_stream(seed, 0);
  Matrix a = Matrix::Zero(d, n);
  switch (kind) {
    case ArtificialKind::uniform: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) a(j, i) = unif(rng);
      break;
    }
    case ArtificialKind::alone_eigval:
      for (Index i = 0; i < n; ++i) a(i, i) = 1.0;
      a(n - 1, n - 1) = 100.0;
      break;
    case ArtificialKind::staircase_eigval:
      // diag(1, 10 sqrt(1/n), ..., 10 sqrt((n-2)/n), 10)
      a(0, 0) = 1.0;
      for (Index i = 1; i + 1 < n; ++i) {
        a(i, i) = 10.0 * std::sqrt(static_cast<double>(i) / static_cast<double>(n));
      }
      if (n > 1) a(n - 1, n - 1) = 10.0;
      break;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector y(n);
  for (Index i = 0; i < n; ++i) y[i] = normal(rng);
  return {FeatureMatrix::automatic(a), std::move(y)};
}

Dataset rotate(const Dataset& ds, std::uint64_t seed) {
  if (ds.d() != ds.n()) throw DimensionError("rotate requires a square feature matrix (d = n)");
  const Index m = ds.d();
  Rng rng = make_stream(seed, 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix r(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) r(j, i) = unif(rng);
  const Matrix q = Eigen::HouseholderQR<Matrix>(r).householderQ();
  const Matrix rotated = q.transpose() * ds.features.to_dense() * q;
  return {FeatureMatrix::automatic(rotated), ds.labels};
}

}  // namespace bnsaga
