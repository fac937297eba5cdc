#include "omdlab/costs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"
#include "omdlab/sampling.hpp"

namespace omdlab {

namespace {

constexpr double kMinPivot = 1e-12;

// Cholesky factor of M = H diag(x) H^T with the pivot guard.
Eigen::LLT<Matrix> information_factor(const Matrix& H, const Vector& x) {
  const Matrix M = H * x.asDiagonal() * H.transpose();
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("information matrix H diag(x) H^T is not positive definite");
  }
  const Matrix L = llt.matrixL();
  const double pivot = L.diagonal().array().square().minCoeff();
  if (pivot < kMinPivot) {
    std::ostringstream os;
    os << "information matrix is numerically singular (smallest pivot " << pivot << ")";
    throw NumericalError(os.str());
  }
  return llt;
}

// W = L^{-1} H, so that H^T M^{-1} H = W^T W.
Matrix whitened(const Eigen::LLT<Matrix>& llt, const Matrix& H) {
  return llt.matrixL().solve(H);
}

Vector poisson_forward(const RoundData& rd, const Vector& x) {
  Vector y = rd.matrix * x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) {
      std::ostringstream os;
      os << "(A x)_" << i << " = " << y[i] << " is not positive";
      throw DomainError(os.str());
    }
  }
  return y;
}

void validate_round(CostKind kind, const RoundData& rd, int dim, int rows) {
  switch (kind) {
    case CostKind::kDOptimal:
      if (rd.matrix.rows() != rows || rd.matrix.cols() != dim) {
        throw InputError("D-optimal matrices must all be m x d");
      }
      if (rows > dim) throw InputError("D-optimal design needs m <= d");
      if (!rd.matrix.allFinite()) throw InputError("D-optimal matrix has non-finite entries");
      {
        Eigen::FullPivLU<Matrix> lu(rd.matrix);
        if (lu.rank() < rows) throw InputError("D-optimal matrix H_t must have full row rank");
      }
      break;
    case CostKind::kPoissonInverse:
      if (rd.matrix.rows() != rows || rd.matrix.cols() != dim || rd.b.size() != rows) {
        throw InputError("Poisson data must be A (m x d) and b (m)");
      }
      if (!rd.matrix.allFinite() || (rd.matrix.array() < 0.0).any()) {
        throw InputError("Poisson matrix A_t must be finite and nonnegative");
      }
      for (Eigen::Index j = 0; j < rd.matrix.cols(); ++j) {
        if (rd.matrix.col(j).maxCoeff() <= 0.0) {
          throw InputError("Poisson matrix A_t has an all-zero column");
        }
      }
      if (!rd.b.allFinite() || (rd.b.array() <= 0.0).any()) {
        throw InputError("Poisson measurements b_t must be positive");
      }
      break;
    case CostKind::kSyntheticQuadratic:
      if (rd.scale.size() != dim || rd.center.size() != dim) {
        throw InputError("quadratic scale and center must have length d");
      }
      if (!rd.scale.allFinite() || (rd.scale.array() <= 0.0).any() || !rd.center.allFinite()) {
        throw InputError("quadratic scales must be positive and centers finite");
      }
      break;
  }
}

}  // namespace

bool RoundData::operator==(const RoundData& o) const {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  };
  return same(matrix, o.matrix) && same(b, o.b) && same(scale, o.scale) && same(center, o.center);
}

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::kDOptimal:
      return "doptimal";
    case CostKind::kPoissonInverse:
      return "poisson";
    case CostKind::kSyntheticQuadratic:
      return "synthetic";
  }
  return "?";
}

CostKind parse_cost_kind(const std::string& name) {
  if (name == "doptimal") return CostKind::kDOptimal;
  if (name == "poisson") return CostKind::kPoissonInverse;
  if (name == "synthetic") return CostKind::kSyntheticQuadratic;
  throw InputError("unknown cost family '" + name + "' (expected doptimal, poisson or synthetic)");
}

CostSequence CostSequence::from_rounds(CostKind kind, std::vector<RoundData> data,
                                       std::vector<std::size_t> schedule) {
  if (data.empty() || schedule.empty()) throw InputError("cost sequence needs at least one round");
  CostSequence c;
  c.kind_ = kind;
  const RoundData& first = data.front();
  if (kind == CostKind::kSyntheticQuadratic) {
    c.dim_ = static_cast<int>(first.scale.size());
    c.rows_ = 0;
  } else {
    c.dim_ = static_cast<int>(first.matrix.cols());
    c.rows_ = static_cast<int>(first.matrix.rows());
  }
  if (c.dim_ < 1) throw InputError("cost dimension must be positive");
  for (const RoundData& rd : data) validate_round(kind, rd, c.dim_, c.rows_);
  for (std::size_t s : schedule) {
    if (s >= data.size()) throw InputError("round schedule references missing data");
  }
  c.data_ = std::move(data);
  c.schedule_ = std::move(schedule);
  return c;
}

CostSequence CostSequence::d_optimal(std::vector<Matrix> pool, std::vector<std::size_t> schedule) {
  std::vector<RoundData> data;
  data.reserve(pool.size());
  for (Matrix& H : pool) data.push_back(RoundData{std::move(H), {}, {}, {}});
  return from_rounds(CostKind::kDOptimal, std::move(data), std::move(schedule));
}

CostSequence CostSequence::poisson(std::vector<Matrix> A, std::vector<Vector> b) {
  if (A.size() != b.size()) throw InputError("Poisson needs one b_t per A_t");
  std::vector<RoundData> data;
  std::vector<std::size_t> schedule;
  for (std::size_t t = 0; t < A.size(); ++t) {
    data.push_back(RoundData{std::move(A[t]), std::move(b[t]), {}, {}});
    schedule.push_back(t);
  }
  return from_rounds(CostKind::kPoissonInverse, std::move(data), std::move(schedule));
}

CostSequence CostSequence::synthetic(const Vector& scale, const std::vector<Vector>& centers) {
  std::vector<RoundData> data;
  std::vector<std::size_t> schedule;
  for (const Vector& c : centers) {
    // Consecutive identical centers share one function.
    if (!data.empty() && data.back().center == c) {
      schedule.push_back(data.size() - 1);
      continue;
    }
    data.push_back(RoundData{{}, {}, scale, c});
    schedule.push_back(data.size() - 1);
  }
  return from_rounds(CostKind::kSyntheticQuadratic, std::move(data), std::move(schedule));
}

CostSequence CostSequence::prefix(int rounds) const {
  if (rounds < 1 || rounds > horizon()) throw InputError("prefix length out of range");
  CostSequence c = *this;
  c.schedule_.resize(static_cast<std::size_t>(rounds));
  return c;
}

void CostSequence::check_round(int t) const {
  if (t < 1 || t > horizon()) {
    std::ostringstream os;
    os << "round " << t << " outside 1.." << horizon();
    throw InputError(os.str());
  }
}

void CostSequence::check_point(const Vector& x) const {
  require_dim(x, dim_, "point");
  require_finite(x, "point");
  if (kind_ == CostKind::kSyntheticQuadratic) return;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      std::ostringstream os;
      os << "coordinate " << i << " = " << x[i] << " is not positive";
      throw DomainError(os.str());
    }
  }
}

std::size_t CostSequence::data_index(int t) const {
  check_round(t);
  return schedule_[static_cast<std::size_t>(t - 1)];
}

double CostSequence::value(int t, const Vector& x) const { return value_at(data_index(t), x); }
Vector CostSequence::gradient(int t, const Vector& x) const { return gradient_at(data_index(t), x); }
Matrix CostSequence::hessian(int t, const Vector& x) const { return hessian_at(data_index(t), x); }
double CostSequence::hessian_quadratic(int t, const Vector& x, const Vector& v) const {
  return hessian_quadratic_at(data_index(t), x, v);
}

double CostSequence::value_at(std::size_t index, const Vector& x) const {
  check_point(x);
  const RoundData& rd = data_.at(index);
  switch (kind_) {
    case CostKind::kDOptimal: {
      const auto llt = information_factor(rd.matrix, x);
      const Matrix L = llt.matrixL();
      return -2.0 * L.diagonal().array().log().sum();
    }
    case CostKind::kPoissonInverse: {
      const Vector y = poisson_forward(rd, x);
      double s = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        s += rd.b[i] * std::log(rd.b[i] / y[i]) + y[i] - rd.b[i];
      }
      return s;
    }
    case CostKind::kSyntheticQuadratic:
      return 0.5 * (rd.scale.array() * (x - rd.center).array().square()).sum();
  }
  return 0.0;
}

Vector CostSequence::gradient_at(std::size_t index, const Vector& x) const {
  check_point(x);
  const RoundData& rd = data_.at(index);
  switch (kind_) {
    case CostKind::kDOptimal: {
      const Matrix W = whitened(information_factor(rd.matrix, x), rd.matrix);
      return -W.colwise().squaredNorm().transpose();
    }
    case CostKind::kPoissonInverse: {
      const Vector y = poisson_forward(rd, x);
      const Vector w = (1.0 - rd.b.array() / y.array()).matrix();
      return rd.matrix.transpose() * w;
    }
    case CostKind::kSyntheticQuadratic:
      return (rd.scale.array() * (x - rd.center).array()).matrix();
  }
  return x;
}

Matrix CostSequence::hessian_at(std::size_t index, const Vector& x) const {
  check_point(x);
  const RoundData& rd = data_.at(index);
  switch (kind_) {
    case CostKind::kDOptimal: {
      const Matrix W = whitened(information_factor(rd.matrix, x), rd.matrix);
      const Matrix P = W.transpose() * W;
      return P.cwiseProduct(P);
    }
    case CostKind::kPoissonInverse: {
      const Vector y = poisson_forward(rd, x);
      const Vector w = (rd.b.array() / y.array().square()).matrix();
      return rd.matrix.transpose() * w.asDiagonal() * rd.matrix;
    }
    case CostKind::kSyntheticQuadratic:
      return rd.scale.asDiagonal();
  }
  return Matrix();
}

double CostSequence::hessian_quadratic_at(std::size_t index, const Vector& x,
                                          const Vector& v) const {
  check_point(x);
  require_dim(v, dim_, "direction");
  const RoundData& rd = data_.at(index);
  switch (kind_) {
    case CostKind::kDOptimal: {
      // trace((M^{-1} H D(v) H^T)^2) = |L^{-1} H D(v) H^T L^{-T}|_F^2
      const Matrix W = whitened(information_factor(rd.matrix, x), rd.matrix);
      const Matrix S = W * v.asDiagonal() * W.transpose();
      return S.squaredNorm();
    }
    case CostKind::kPoissonInverse: {
      const Vector y = poisson_forward(rd, x);
      const Vector av = rd.matrix * v;
      return (rd.b.array() * av.array().square() / y.array().square()).sum();
    }
    case CostKind::kSyntheticQuadratic:
      return (rd.scale.array() * v.array().square()).sum();
  }
  return 0.0;
}

CostSequence generate_d_optimal(int T, int m, int d, int pool_size, std::uint64_t seed) {
  if (T < 1 || m < 1 || d < m || pool_size < 1) {
    throw InputError("D-optimal generation needs T >= 1, 1 <= m <= d, pool_size >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Matrix> pool;
  while (static_cast<int>(pool.size()) < pool_size) {
    Matrix H(m, d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < d; ++j) H(i, j) = unit(rng);
    if (Eigen::FullPivLU<Matrix>(H).rank() == m) pool.push_back(std::move(H));
  }
  std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(pool_size - 1));
  std::vector<std::size_t> schedule(static_cast<std::size_t>(T));
  for (auto& s : schedule) s = pick(rng);
  return CostSequence::d_optimal(std::move(pool), std::move(schedule));
}

CostSequence generate_poisson(int T, int m, int d, std::uint64_t seed) {
  if (T < 1 || m < 1 || d < 1) throw InputError("Poisson generation needs T, m, d >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Matrix> A;
  std::vector<Vector> b;
  for (int t = 0; t < T; ++t) {
    Matrix At(m, d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < d; ++j) At(i, j) = unit(rng);
    for (int j = 0; j < d; ++j) {
      if (At.col(j).maxCoeff() <= 0.0) At(0, j) = 1.0;
    }
    Vector bt(m);
    for (int i = 0; i < m; ++i) bt[i] = 1.0 - unit(rng);  // (0, 1]
    A.push_back(std::move(At));
    b.push_back(std::move(bt));
  }
  return CostSequence::poisson(std::move(A), std::move(b));
}

CostSequence generate_synthetic(int T, const FeasibleSet& set, double drift, std::uint64_t seed) {
  if (T < 1) throw InputError("synthetic generation needs T >= 1");
  if (!(drift >= 0.0)) throw InputError("drift must be nonnegative");
  Sampler sampler(seed);
  Vector scale(set.dim());
  for (int i = 0; i < set.dim(); ++i) scale[i] = 0.5 + 1.5 * sampler.uniform01();
  std::vector<Vector> centers;
  centers.push_back(sampler.uniform(set));
  for (int t = 1; t < T; ++t) {
    const Vector w = set.is_simplex() && set.dim() >= 2 ? sampler.direction(set)
                                                        : sampler.unit_vector(set.dim());
    centers.push_back(set.project(centers.back() + drift * w));
  }
  return CostSequence::synthetic(scale, centers);
}

namespace {

// Orthonormal basis (columns) of the orthogonal complement of u.
Matrix complement_basis(const Vector& u) {
  const Eigen::Index d = u.size();
  Eigen::HouseholderQR<Matrix> qr(u);
  const Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
  return Q.rightCols(d - 1);
}

std::string describe_direction(const Vector& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

QuotientRange hessian_quotient_range(const CostSequence& c, std::size_t data_index,
                                     const Regularizer& r, const FeasibleSet& set,
                                     const Vector& x) {
  const Matrix F = c.hessian_at(data_index, x);
  const int d = c.dim();
  const bool simplex = set.is_simplex();
  if (simplex && d == 1) return QuotientRange{0.0, 0.0};

  Matrix S;
  if (r.kind() != RegularizerKind::kL1Squared) {
    // Diagonal Hess r = diag(h): substitute v = diag(h)^{-1/2} w, which turns
    // the generalized problem into a standard one without conditioning loss.
    const Vector h = r.hessian(x).diagonal();
    const Vector scale = h.array().rsqrt();
    const Matrix G = scale.asDiagonal() * F * scale.asDiagonal();
    if (simplex) {
      const Matrix Q = complement_basis(scale);  // sum(v) = 0  <=>  w . scale = 0
      S = Q.transpose() * G * Q;
    } else {
      S = G;
    }
  } else {
    const Matrix Q = simplex ? set.tangent_basis() : Matrix::Identity(d, d);
    const Matrix Rt = Q.transpose() * r.hessian(x) * Q;
    Eigen::SelfAdjointEigenSolver<Matrix> reig(Rt);
    const double top = std::max(reig.eigenvalues().maxCoeff(), 0.0);
    if (reig.eigenvalues().minCoeff() <= 1e-12 * std::max(top, 1.0)) {
      const Vector dir = Q * reig.eigenvectors().col(0);
      throw CertificationError("Hessian quotient undefined: " + r.name() +
                               " has zero curvature along direction " + describe_direction(dir));
    }
    const Matrix Wh = reig.eigenvectors() * reig.eigenvalues().array().rsqrt().matrix().asDiagonal();
    S = Wh.transpose() * (Q.transpose() * F * Q) * Wh;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(S, Eigen::EigenvaluesOnly);
  return QuotientRange{eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

SmoothnessCertificate certify_relative_smoothness(const CostSequence& c, const Regularizer& r,
                                                  const FeasibleSet& set, std::size_t samples,
                                                  std::uint64_t seed, Execution ex) {
  if (samples < 1) throw InputError("certification needs at least one sample");
  if (c.dim() != r.dim() || c.dim() != set.dim()) {
    throw InputError("cost, regularizer and set dimensions differ");
  }
  constexpr int kDirectionsPerPoint = 4;

  // Work items: (data index, point). Sampled items first, then the extreme
  // points of the set for every distinct round.
  struct Item {
    std::size_t data;
    Vector x;
  };
  std::vector<Item> items;
  std::vector<Vector> directions;
  Sampler sampler(seed);
  const std::vector<Vector> pts = mixed_points(set, samples, sampler);
  const std::size_t distinct = c.distinct_count();
  for (std::size_t k = 0; k < samples; ++k) items.push_back({k % distinct, pts[k]});

  std::vector<Vector> extremes;
  extremes.push_back(set.center());
  if (set.is_simplex()) {
    for (const Vector& v : set.vertices()) extremes.push_back(v);
  } else {
    extremes.push_back(set.lower());
    extremes.push_back(set.upper());
    for (int i = 0; i < set.dim(); ++i) {
      Vector hi = set.lower();
      hi[i] = set.upper()[i];
      extremes.push_back(hi);
      Vector lo = set.upper();
      lo[i] = set.lower()[i];
      extremes.push_back(lo);
    }
  }
  for (std::size_t s = 0; s < distinct; ++s) {
    for (const Vector& x : extremes) items.push_back({s, x});
  }
  const bool has_directions = !(set.is_simplex() && set.dim() < 2);
  if (has_directions) {
    for (std::size_t k = 0; k < items.size() * kDirectionsPerPoint; ++k) {
      directions.push_back(sampler.direction(set));
    }
  }

  const auto ranges = map_indices<QuotientRange>(items.size(), ex, [&](std::size_t k) {
    const Item& it = items[k];
    QuotientRange q = hessian_quotient_range(c, it.data, r, set, it.x);
    if (has_directions) {
      for (int j = 0; j < kDirectionsPerPoint; ++j) {
        const Vector& v = directions[k * kDirectionsPerPoint + j];
        const double rq = r.hessian_quadratic(it.x, v);
        if (!(rq > 1e-12 * v.squaredNorm())) {
          throw CertificationError("Hessian quotient undefined: " + r.name() +
                                   " has zero curvature along direction " + describe_direction(v));
        }
        const double quotient = c.hessian_quadratic_at(it.data, it.x, v) / rq;
        q.min = std::min(q.min, quotient);
        q.max = std::max(q.max, quotient);
      }
    }
    return q;
  });

  SmoothnessCertificate cert;
  cert.relative_to = r.kind();
  cert.samples = samples;
  cert.seed = seed;
  cert.max_quotient_observed = ranges.front().max;
  cert.min_quotient_observed = ranges.front().min;
  std::size_t argmax = 0;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    if (ranges[k].max > cert.max_quotient_observed) {
      cert.max_quotient_observed = ranges[k].max;
      argmax = k;
    }
    cert.min_quotient_observed = std::min(cert.min_quotient_observed, ranges[k].min);
  }
  // First round that uses the maximizing data.
  const auto& sched = c.schedule();
  const auto pos = std::find(sched.begin(), sched.end(), items[argmax].data);
  cert.argmax_round = pos == sched.end() ? 0 : static_cast<int>(pos - sched.begin()) + 1;
  cert.argmax_point = items[argmax].x;
  cert.beta = kBetaSafety * cert.max_quotient_observed;
  cert.lambda = std::max(0.0, kLambdaSafety * cert.min_quotient_observed);
  if (!(cert.beta > 0.0)) throw CertificationError("certified beta is not positive");
  cert.lambda = std::min(cert.lambda, cert.beta);
  return cert;
}

void dump_csv_bundle(const CostSequence& c, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  std::ostringstream manifest;
  manifest << "kind,T,m,d\n"
           << to_string(c.kind()) << ',' << c.horizon() << ',' << c.rows() << ',' << c.dim()
           << '\n';
  csv::write_text(dir / "manifest.csv", manifest.str());
  for (int t = 1; t <= c.horizon(); ++t) {
    const RoundData& rd = c.round(t);
    std::ostringstream os;
    os << "kind,m,d\n" << to_string(c.kind()) << ',' << c.rows() << ',' << c.dim() << '\n';
    auto row = [&](const auto& values) {
      for (Eigen::Index j = 0; j < values.size(); ++j) {
        os << (j ? "," : "") << csv::format_double(values[j]);
      }
    };
    if (c.kind() == CostKind::kSyntheticQuadratic) {
      row(rd.scale);
      os << '\n';
      row(rd.center);
      os << '\n';
    } else {
      for (Eigen::Index i = 0; i < rd.matrix.rows(); ++i) {
        row(rd.matrix.row(i));
        if (c.kind() == CostKind::kPoissonInverse) os << ',' << csv::format_double(rd.b[i]);
        os << '\n';
      }
    }
    char name[32];
    std::snprintf(name, sizeof name, "round_%04d.csv", t);
    csv::write_text(dir / name, os.str());
  }
}

CostSequence load_csv_bundle(const std::filesystem::path& dir) {
  const auto manifest = csv::read_lines(dir / "manifest.csv");
  if (manifest.size() < 2) throw InputError("manifest.csv is truncated");
  const auto head = csv::split(manifest[1]);
  if (head.size() != 4) throw InputError("manifest.csv: expected kind,T,m,d");
  const CostKind kind = parse_cost_kind(csv::trim(head[0]));
  const int T = static_cast<int>(csv::parse_int(head[1], "manifest T"));
  const int m = static_cast<int>(csv::parse_int(head[2], "manifest m"));
  const int d = static_cast<int>(csv::parse_int(head[3], "manifest d"));
  if (T < 1 || d < 1 || m < 0) throw InputError("manifest.csv: invalid sizes");

  std::vector<RoundData> data;
  std::vector<std::size_t> schedule;
  for (int t = 1; t <= T; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "round_%04d.csv", t);
    const auto path = dir / name;
    const auto lines = csv::read_lines(path);
    const std::string ctx = path.string();
    const std::size_t body_rows = kind == CostKind::kSyntheticQuadratic ? 2 : static_cast<std::size_t>(m);
    if (lines.size() < 2 + body_rows) throw InputError(ctx + ": truncated round file");
    const std::size_t width = static_cast<std::size_t>(d) + (kind == CostKind::kPoissonInverse ? 1 : 0);
    auto parse_row = [&](std::size_t ln) {
      const auto f = csv::split(lines[ln]);
      if (f.size() != width) {
        throw InputError(ctx + ":" + std::to_string(ln + 1) + ": expected " + std::to_string(width) +
                         " fields");
      }
      Vector v(static_cast<Eigen::Index>(width));
      for (std::size_t j = 0; j < width; ++j) {
        v[static_cast<Eigen::Index>(j)] = csv::parse_double(f[j], ctx + ":" + std::to_string(ln + 1));
      }
      return v;
    };
    RoundData rd;
    if (kind == CostKind::kSyntheticQuadratic) {
      rd.scale = parse_row(2);
      rd.center = parse_row(3);
    } else {
      rd.matrix.resize(m, d);
      if (kind == CostKind::kPoissonInverse) rd.b.resize(m);
      for (int i = 0; i < m; ++i) {
        const Vector v = parse_row(2 + static_cast<std::size_t>(i));
        rd.matrix.row(i) = v.head(d).transpose();
        if (kind == CostKind::kPoissonInverse) rd.b[i] = v[d];
      }
    }
    const auto same = std::find(data.begin(), data.end(), rd);
    if (same != data.end()) {
      schedule.push_back(static_cast<std::size_t>(same - data.begin()));
    } else {
      data.push_back(std::move(rd));
      schedule.push_back(data.size() - 1);
    }
  }
  return CostSequence::from_rounds(kind, std::move(data), std::move(schedule));
}

}  // namespace omdlab
