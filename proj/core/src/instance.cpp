#include "mqap/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "mqap/error.hpp"

namespace mqap {

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_entry(std::string_view token) {
  if (!token.empty() && token.front() == '-') {
    throw Error(ErrorCode::NegativeEntry, "negative entry '" + std::string(token) + "'");
  }
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::InvalidToken, "not a non-negative integer: '" + std::string(token) + "'");
  }
  return value;
}

void parse_metadata_line(std::string_view line, std::string& name, Instance::Metadata& metadata) {
  if (line.empty() || line.front() != '!') return;
  line = trim(line.substr(1));
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return;
  const auto key = std::string(trim(line.substr(0, eq)));
  const auto value = std::string(trim(line.substr(eq + 1)));
  if (key.empty()) return;
  if (key == "name") {
    name = value;
  } else {
    metadata[key] = value;
  }
}

// Largest |C^r| is bounded by n^2 * max(d) * max(f^r).
void check_overflow(const Matrix& distances, const std::vector<Matrix>& flows) {
  constexpr auto limit = std::numeric_limits<std::int64_t>::max();
  const auto n = static_cast<std::int64_t>(distances.size());
  std::int64_t scale = n * n;
  const auto max_d = distances.max_entry();
  if (max_d > 0 && scale > limit / max_d) throw Error(ErrorCode::Overflow, "distance entries too large for n");
  scale *= std::max<std::int64_t>(max_d, 1);
  for (const auto& f : flows) {
    const auto max_f = f.max_entry();
    if (max_f > 0 && scale > limit / max_f) {
      throw Error(ErrorCode::Overflow, "objective values may exceed a signed 64-bit accumulator");
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t n, std::vector<std::int64_t> data) : n_(n), data_(std::move(data)) {
  if (data_.size() != n_ * n_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix data does not hold n*n entries");
  }
}

std::int64_t Matrix::max_entry() const noexcept {
  return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end());
}

Instance::Instance(Matrix distances, std::vector<Matrix> flows, std::string name, Metadata metadata)
    : distances_(std::move(distances)), flows_(std::move(flows)), name_(std::move(name)), metadata_(std::move(metadata)) {
  const auto n = distances_.size();
  if (n < 2) throw Error(ErrorCode::InvalidInstance, "instance needs n >= 2");
  if (flows_.empty()) throw Error(ErrorCode::InvalidInstance, "instance needs at least one flow matrix");
  auto check = [&](const Matrix& mat, const char* what) {
    if (mat.size() != n) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not n x n");
    for (auto v : mat.data()) {
      if (v < 0) throw Error(ErrorCode::NegativeEntry, std::string(what) + " has a negative entry");
    }
  };
  check(distances_, "distance matrix");
  for (const auto& f : flows_) check(f, "flow matrix");
  check_overflow(distances_, flows_);
}

Instance parse_instance(std::istream& in) {
  std::string name;
  Instance::Metadata metadata;
  std::vector<std::int64_t> tokens;

  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty()) continue;
    if (!is_digit(body.front())) {
      parse_metadata_line(body, name, metadata);
      continue;
    }
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t\r\f\v", pos);
      if (start == std::string_view::npos) break;
      auto stop = body.find_first_of(" \t\r\f\v", start);
      if (stop == std::string_view::npos) stop = body.size();
      tokens.push_back(parse_entry(body.substr(start, stop - start)));
      pos = stop;
    }
  }

  if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "no numeric data");
  const auto n = static_cast<std::size_t>(tokens.front());
  if (n < 2) throw Error(ErrorCode::InvalidInstance, "instance needs n >= 2");
  const std::size_t cells = n * n;
  const std::size_t remaining = tokens.size() - 1;
  if (remaining % cells != 0 || remaining / cells < 2) {
    std::ostringstream msg;
    msg << remaining << " tokens after n=" << n << " do not form a distance matrix plus whole flow matrices";
    throw Error(ErrorCode::TokenCountMismatch, msg.str());
  }

  auto take = [&](std::size_t k) {
    const auto first = tokens.begin() + 1 + static_cast<std::ptrdiff_t>(k * cells);
    return Matrix(n, std::vector<std::int64_t>(first, first + static_cast<std::ptrdiff_t>(cells)));
  };
  std::vector<Matrix> flows;
  for (std::size_t k = 1; k < remaining / cells; ++k) flows.push_back(take(k));
  return Instance(take(0), std::move(flows), std::move(name), std::move(metadata));
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InstanceLoadError, "cannot open instance file '" + path + "'");
  auto inst = parse_instance(in);
  if (inst.name().empty()) {
    auto stem = path.substr(path.find_last_of('/') + 1);
    if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
    return Instance(inst.distances(), inst.flows(), stem, inst.metadata());
  }
  return inst;
}

namespace {

void write_matrix(std::ostream& out, const Matrix& mat) {
  for (std::size_t i = 0; i < mat.size(); ++i) {
    for (std::size_t j = 0; j < mat.size(); ++j) {
      if (j) out << ' ';
      out << mat(i, j);
    }
    out << '\n';
  }
}

}  // namespace

void write_instance(std::ostream& out, const Instance& instance) {
  for (const auto& [key, value] : instance.metadata()) out << "! " << key << '=' << value << '\n';
  if (!instance.name().empty()) out << "! name=" << instance.name() << '\n';
  out << instance.n() << "\n\n";
  write_matrix(out, instance.distances());
  for (const auto& f : instance.flows()) {
    out << '\n';
    write_matrix(out, f);
  }
}

std::string write_instance(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

double off_diagonal_correlation(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in size");
  const auto n = a.size();
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  double count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto x = static_cast<double>(a(i, j));
      const auto y = static_cast<double>(b(i, j));
      sa += x;
      sb += y;
      saa += x * x;
      sbb += y * y;
      sab += x * y;
      count += 1;
    }
  }
  const double cov = sab - sa * sb / count;
  const double va = saa - sa * sa / count;
  const double vb = sbb - sb * sb / count;
  if (va <= 0 || vb <= 0) return 0.0;
  return cov / std::sqrt(va * vb);
}

namespace {

constexpr std::size_t kMinCalibrationSize = 5;

Matrix uniform_matrix(std::size_t n, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  Matrix mat(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) mat(i, j) = dist(rng);
    }
  }
  return mat;
}

std::vector<double> off_diagonal(const Matrix& mat) {
  std::vector<double> out;
  out.reserve(mat.size() * (mat.size() - 1));
  for (std::size_t i = 0; i < mat.size(); ++i) {
    for (std::size_t j = 0; j < mat.size(); ++j) {
      if (i != j) out.push_back(static_cast<double>(mat(i, j)));
    }
  }
  return out;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Centres and scales to unit sample variance; a constant vector maps to zeros.
void standardize(std::vector<double>& v) {
  const double mu = mean_of(v);
  double ss = 0;
  for (auto& x : v) {
    x -= mu;
    ss += x * x;
  }
  const double sd = std::sqrt(ss / static_cast<double>(v.size()));
  for (auto& x : v) x = sd > 0 ? x / sd : 0.0;
}

// Flow whose off-diagonal entries have empirical correlation `c` with `base`:
// c * base~ + sqrt(1 - c^2) * noise~, where noise~ is uniform noise with its
// projection on base removed, then mapped affinely onto [0, max_value].
Matrix correlated_flow(const Matrix& base, double c, std::int64_t max_value, std::mt19937_64& rng) {
  const auto n = base.size();
  if (c == 1.0) return base;
  if (c == -1.0) {
    Matrix mirrored(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) mirrored(i, j) = max_value - base(i, j);
      }
    }
    return mirrored;
  }

  auto x = off_diagonal(base);
  auto y = off_diagonal(uniform_matrix(n, 0, max_value, rng));
  standardize(x);
  standardize(y);
  const double k = static_cast<double>(x.size());
  const double beta = std::inner_product(x.begin(), x.end(), y.begin(), 0.0) / k;
  for (std::size_t t = 0; t < y.size(); ++t) y[t] -= beta * x[t];
  standardize(y);

  std::vector<double> z(x.size());
  const double w = std::sqrt(1.0 - c * c);
  for (std::size_t t = 0; t < z.size(); ++t) z[t] = c * x[t] + w * y[t];
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  const double zmin = *lo;
  const double span = *hi - *lo;

  Matrix out(n);
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double unit = span > 0 ? (z[t] - zmin) / span : 0.0;
      out(i, j) = static_cast<std::int64_t>(std::llround(unit * static_cast<double>(max_value)));
      ++t;
    }
  }
  return out;
}

std::string format_real(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

Instance generate_uniform(const InstanceSpec& spec) {
  if (spec.n < 2 || spec.m < 1 || spec.max_value < 1) {
    throw Error(ErrorCode::InvalidArgument, "generator needs n >= 2, m >= 1, max_value >= 1");
  }
  if (!(spec.correlation >= -1.0 && spec.correlation <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "correlation must lie in [-1, 1]");
  }
  if (spec.correlation != 0.0 && spec.n < kMinCalibrationSize) {
    throw Error(ErrorCode::InfeasibleCorrelation, "correlated flows need n >= 5 to calibrate");
  }

  std::mt19937_64 rng(spec.seed);
  auto distances = uniform_matrix(spec.n, 1, spec.max_value, rng);
  std::vector<Matrix> flows;
  flows.push_back(uniform_matrix(spec.n, 0, spec.max_value, rng));
  for (std::size_t r = 1; r < spec.m; ++r) {
    flows.push_back(correlated_flow(flows.front(), spec.correlation, spec.max_value, rng));
  }

  Instance::Metadata metadata{{"type", "uniform"},
                              {"correlation", format_real(spec.correlation)},
                              {"seed", std::to_string(spec.seed)}};
  const auto name = "uni-n" + std::to_string(spec.n) + "-m" + std::to_string(spec.m) + "-c" +
                    format_real(spec.correlation) + "-s" + std::to_string(spec.seed);
  return Instance(std::move(distances), std::move(flows), name, std::move(metadata));
}

}  // namespace mqap
