#ifndef MQAP_INSTANCE_HPP
#define MQAP_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mqap {

/// Dense square matrix of non-negative integer entries, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, std::int64_t fill = 0) : n_(n), data_(n * n, fill) {}
  Matrix(std::size_t n, std::vector<std::int64_t> data);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::int64_t operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }
  [[nodiscard]] std::int64_t& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * n_ + j];
  }
  [[nodiscard]] const std::int64_t* row(std::size_t i) const noexcept { return data_.data() + i * n_; }
  [[nodiscard]] const std::vector<std::int64_t>& data() const noexcept { return data_; }
  [[nodiscard]] std::int64_t max_entry() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

/// An mQAP instance: one distance matrix between locations and m flow
/// matrices between facilities. Immutable once constructed.
class Instance {
 public:
  using Metadata = std::map<std::string, std::string>;

  /// Validates n >= 2, m >= 1, shapes, non-negativity and that every
  /// objective value fits a signed 64-bit accumulator.
  Instance(Matrix distances, std::vector<Matrix> flows, std::string name = {}, Metadata metadata = {});

  [[nodiscard]] std::size_t n() const noexcept { return distances_.size(); }
  [[nodiscard]] std::size_t m() const noexcept { return flows_.size(); }
  [[nodiscard]] const Matrix& distances() const noexcept { return distances_; }
  [[nodiscard]] const Matrix& flow(std::size_t r) const noexcept { return flows_[r]; }
  [[nodiscard]] const std::vector<Matrix>& flows() const noexcept { return flows_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const Metadata& metadata() const noexcept { return metadata_; }

  /// Structural equality on (n, distances, flows); name and metadata ignored.
  [[nodiscard]] bool same_problem(const Instance& other) const noexcept {
    return distances_ == other.distances_ && flows_ == other.flows_;
  }

 private:
  Matrix distances_;
  std::vector<Matrix> flows_;
  std::string name_;
  Metadata metadata_;
};

struct InstanceSpec {
  std::size_t n = 10;
  std::size_t m = 2;
  double correlation = 0.0;
  std::uint64_t seed = 1;
  std::int64_t max_value = 100;
};

// Text format: optional comment lines (first non-blank character is not a
// digit), then n, the n x n distance matrix and one or more n x n flow
// matrices, all whitespace-delimited. Comment lines of the form
// "! key=value" are read back as metadata; the key "name" sets the name.
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

void write_instance(std::ostream& out, const Instance& instance);
std::string write_instance(const Instance& instance);

/// Uniform random instance. Flow 1 is uniform on [0, max_value]; every
/// further flow is an affine mixture of flow 1 and fresh uniform noise whose
/// empirical off-diagonal Pearson correlation with flow 1 is calibrated to
/// spec.correlation. Zero diagonals everywhere; deterministic in spec.seed.
Instance generate_uniform(const InstanceSpec& spec);

/// Pearson correlation of the off-diagonal entries of two equal-size matrices.
double off_diagonal_correlation(const Matrix& a, const Matrix& b);

}  // namespace mqap

#endif  // MQAP_INSTANCE_HPP
