#include <cmath>
#include <sstream>

#include "qfs/error.hpp"
#include "qfs/format.hpp"
#include "qfs/qubo.hpp"

namespace qfs::qubo {

QuboInstance::QuboInstance(Eigen::MatrixXd q, double offset, std::optional<Provenance> provenance)
    : q_(std::move(q)), offset_(offset), provenance_(std::move(provenance)) {
  if (q_.rows() < 1 || q_.rows() != q_.cols()) throw InputError("QUBO matrix must be square, n >= 1");
  for (Eigen::Index i = 0; i < q_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < q_.cols(); ++j)
      if (q_(i, j) != q_(j, i)) throw InputError("QUBO matrix must be symmetric");
  if (!q_.allFinite() || !std::isfinite(offset_)) throw InputError("QUBO coefficients must be finite");
}

namespace {

void check_dims(const info::ImportanceVector& importance, const info::RedundancyMatrix& redundancy) {
  const auto n = importance.values.size();
  if (n < 1) throw InputError("importance vector is empty");
  if (redundancy.values.rows() != n || redundancy.values.cols() != n)
    throw InputError("importance has " + std::to_string(n) + " entries but redundancy is " +
                     std::to_string(redundancy.values.rows()) + "x" +
                     std::to_string(redundancy.values.cols()));
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
}

}  // namespace

QuboInstance build(const info::ImportanceVector& importance, const info::RedundancyMatrix& redundancy,
                   double alpha) {
  check_dims(importance, redundancy);
  check_alpha(alpha);
  const auto n = importance.values.size();
  const auto& R = redundancy.values;
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double delta = i == j ? importance.values(i) : 0.0;
      q(i, j) = R(i, j) - alpha * (R(i, j) + delta);
    }
  }
  // R is symmetric in exact arithmetic but a caller-supplied one may not be bitwise so.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) q(j, i) = q(i, j);
  return QuboInstance(std::move(q), 0.0, Provenance{alpha, std::nullopt, std::nullopt});
}

QuboInstance apply_epsilon_mu(const QuboInstance& q, const info::ImportanceVector& importance,
                              double alpha, double epsilon, double mu) {
  if (!(mu > 0.0)) throw InputError("mu must be positive");
  if (!(epsilon >= 0.0)) throw InputError("epsilon must be nonnegative");
  if (static_cast<std::size_t>(importance.values.size()) != q.size())
    throw InputError("importance vector does not match QUBO size");
  Eigen::MatrixXd m = q.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (alpha * importance.values(i) < epsilon) m(i, i) = mu;
  Provenance prov = q.provenance().value_or(Provenance{alpha, {}, {}});
  prov.epsilon = epsilon;
  prov.mu = mu;
  return QuboInstance(std::move(m), q.offset(), prov);
}

std::string MuPolicy::describe() const {
  return kind == Kind::MaxEntry ? std::string("max") : format_double(value);
}

double resolve_mu(const QuboInstance& q, const MuPolicy& policy) {
  if (policy.kind == MuPolicy::Kind::Fixed) {
    if (!(policy.value > 0.0)) throw InputError("fixed mu must be positive");
    return policy.value;
  }
  const double top = q.matrix().maxCoeff();
  if (top > 0.0) return top;
  const double mag = q.matrix().cwiseAbs().maxCoeff();
  return mag > 0.0 ? mag : 1.0;
}

QuboInstance build_penalty(const info::ImportanceVector& importance,
                           const info::RedundancyMatrix& redundancy, double alpha, int k,
                           double lambda) {
  if (!(lambda > 0.0)) throw InputError("penalty weight lambda must be positive");
  const QuboInstance base = build(importance, redundancy, alpha);
  if (k < 0 || static_cast<std::size_t>(k) > base.size())
    throw InputError("penalty target k must lie in [0, n]");
  Eigen::MatrixXd m = base.matrix();
  const auto n = m.rows();
  // (sum x - k)^2 = sum_i x_i (1 - 2k) + sum_{i != j} x_i x_j + k^2, using x_i^2 = x_i.
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) += lambda * (1.0 - 2.0 * k);
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) m(i, j) += lambda;
  }
  const double offset = lambda * static_cast<double>(k) * static_cast<double>(k);
  return QuboInstance(std::move(m), offset, base.provenance());
}

double energy(const QuboInstance& q, std::span<const std::uint8_t> x) {
  if (x.size() != q.size())
    throw InputError("assignment has " + std::to_string(x.size()) + " bits, QUBO has " +
                     std::to_string(q.size()));
  const auto& m = q.matrix();
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j]) row += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    e += row;
  }
  return e + q.offset();
}

QuboInstance clamp(const QuboInstance& q, std::span<const std::size_t> free_vars,
                   std::span<const std::uint8_t> assignment) {
  const std::size_t n = q.size();
  if (assignment.size() != n) throw InputError("assignment size does not match QUBO");
  if (free_vars.empty()) throw InputError("clamping needs at least one free variable");
  std::vector<std::uint8_t> is_free(n, 0);
  for (auto v : free_vars) {
    if (v >= n) throw InputError("free variable index out of range");
    if (is_free[v]) throw InputError("duplicate free variable");
    is_free[v] = 1;
  }
  const auto& m = q.matrix();
  const auto s = static_cast<Eigen::Index>(free_vars.size());
  Eigen::MatrixXd sub(s, s);
  for (Eigen::Index a = 0; a < s; ++a) {
    const auto i = static_cast<Eigen::Index>(free_vars[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < s; ++b)
      sub(a, b) = m(i, static_cast<Eigen::Index>(free_vars[static_cast<std::size_t>(b)]));
    double field = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (!is_free[j] && assignment[j]) field += m(i, static_cast<Eigen::Index>(j));
    sub(a, a) += 2.0 * field;
  }
  double fixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_free[i] || !assignment[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!is_free[j] && assignment[j])
        fixed += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return QuboInstance(std::move(sub), q.offset() + fixed);
}

IsingInstance to_ising(const QuboInstance& q) {
  const auto n = static_cast<Eigen::Index>(q.size());
  const auto& m = q.matrix();
  IsingInstance out{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), q.offset()};
  // x_i x_j = (1 - s_i - s_j + s_i s_j) / 4 for i != j, and x_i^2 = x_i = (1 - s_i) / 2.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.b(i) -= m(i, i) / 2.0;
    out.c += m(i, i) / 2.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double pair = m(i, j) + m(j, i);
      out.a(i, j) = pair / 4.0;
      out.a(j, i) = pair / 4.0;
      out.b(i) -= pair / 4.0;
      out.b(j) -= pair / 4.0;
      out.c += pair / 4.0;
    }
  }
  return out;
}

double ising_energy(const IsingInstance& ising, std::span<const std::int8_t> spins) {
  const auto n = ising.b.size();
  if (static_cast<Eigen::Index>(spins.size()) != n) throw InputError("spin vector size mismatch");
  double e = ising.c;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double si = spins[static_cast<std::size_t>(i)];
    e += ising.b(i) * si;
    for (Eigen::Index j = i + 1; j < n; ++j) e += ising.a(i, j) * si * spins[static_cast<std::size_t>(j)];
  }
  return e;
}

std::vector<std::int8_t> to_spins(std::span<const std::uint8_t> x) {
  std::vector<std::int8_t> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = static_cast<std::int8_t>(1 - 2 * x[i]);
  return s;
}

}  // namespace qfs::qubo
