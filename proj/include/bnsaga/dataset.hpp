#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace bnsaga {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// Fill ratio below which a matrix is kept in compressed-column form.
inline constexpr double kSparseFillThreshold = 0.10;

/// d x n feature matrix, column i is sample i. Dense or compressed-column.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(Matrix dense) : storage_(std::move(dense)) {}
  explicit FeatureMatrix(SparseMatrix sparse) : storage_(std::move(sparse)) {
    std::get<SparseMatrix>(storage_).makeCompressed();
  }

  /// Picks sparse storage when the fill ratio is below kSparseFillThreshold.
  static FeatureMatrix automatic(const Matrix& dense);
  static FeatureMatrix automatic(SparseMatrix sparse);

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }
  double fill_ratio() const;

  double dot(Index col, const Vector& w) const;
  /// out += alpha * a_col
  void add_column(Index col, double alpha, Vector& out) const;
  double column_squared_norm(Index col) const;
  double coeff(Index row, Index col) const;

  /// out = A (A^T x), x in R^d
  void gram_apply(const Vector& x, Vector& out) const;
  /// out = A^T (A x), x in R^n
  void cogram_apply(const Vector& x, Vector& out) const;

  /// Copies the listed columns into the leading columns of out (d x |cols|).
  void gather(std::span<const Index> cols, Matrix& out) const;
  void gather_column(Index col, Eigen::Ref<Eigen::VectorXd> out) const;

  Matrix to_dense() const;

  bool operator==(const FeatureMatrix& other) const;

 private:
  std::variant<Matrix, SparseMatrix> storage_;
};

struct Dataset {
  FeatureMatrix features;
  Vector labels;

  Index n() const { return features.cols(); }
  Index d() const { return features.rows(); }

  bool operator==(const Dataset& other) const = default;
};

/// Throws DimensionError / ValidationError on shape mismatch or non-finite entries.
void validate(const Dataset& ds);

/// LIBSVM text: `<label> <idx>:<val> ...`, 1-based strictly increasing
/// indices, `#` comments and blank lines skipped.
Dataset parse_libsvm(std::istream& in, std::optional<Index> d_override = std::nullopt);
Dataset load_libsvm(const std::string& path, std::optional<Index> d_override = std::nullopt);
/// Writes nonzeros with 17 significant digits so parsing round-trips.
void write_libsvm(std::ostream& out, const Dataset& ds);

/// Per-feature mean removal and division by the population standard deviation.
Dataset standardize_features(const Dataset& ds);

enum class ArtificialKind { uniform, alone_eigval, staircase_eigval };

ArtificialKind parse_artificial_kind(std::string_view name);
std::string_view to_string(ArtificialKind kind);

/// Labels are i.i.d. standard normal drawn from the same seed.
Dataset generate_artificial(ArtificialKind kind, Index n, Index d, std::uint64_t seed);

/// Q^T A Q with Q the orthogonal factor of a uniform random square matrix.
Dataset rotate(const Dataset& ds, std::uint64_t seed);

}  // namespace bnsaga
