#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qfs/infotheory.hpp"

namespace qfs::qubo {

/// Binary assignment, one byte per variable holding 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// How the QUBO was parameterized, when it came from the feature-selection builder.
struct Provenance {
  double alpha = 0.0;
  std::optional<double> epsilon;
  std::optional<double> mu;
};

/// Dense symmetric QUBO. Energy is the full double sum x^T Q x plus a constant offset.
class QuboInstance {
 public:
  explicit QuboInstance(Eigen::MatrixXd q, double offset = 0.0,
                        std::optional<Provenance> provenance = std::nullopt);

  std::size_t size() const { return static_cast<std::size_t>(q_.rows()); }
  const Eigen::MatrixXd& matrix() const { return q_; }
  double operator()(std::size_t i, std::size_t j) const {
    return q_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double offset() const { return offset_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

 private:
  Eigen::MatrixXd q_;
  double offset_;
  std::optional<Provenance> provenance_;
};

/// Q_ij(alpha) = R_ij - alpha * (R_ij + delta_ij * I_i).
QuboInstance build(const info::ImportanceVector& importance, const info::RedundancyMatrix& redundancy,
                   double alpha);

/// Replaces Q_ii by mu wherever alpha * I_i < epsilon. Requires mu > 0, epsilon >= 0.
QuboInstance apply_epsilon_mu(const QuboInstance& q, const info::ImportanceVector& importance,
                              double alpha, double epsilon, double mu);

/// Choice of the substitution weight mu.
struct MuPolicy {
  enum class Kind { MaxEntry, Fixed };
  Kind kind = Kind::MaxEntry;
  double value = 0.0;  // used when kind == Fixed

  static MuPolicy max_entry() { return {}; }
  static MuPolicy fixed(double v) { return {Kind::Fixed, v}; }
  std::string describe() const;
};

/// mu for `q` under `policy`. MaxEntry takes max_ij Q_ij; when that is not
/// positive it falls back to max_ij |Q_ij|, and to 1 for an all-zero matrix.
double resolve_mu(const QuboInstance& q, const MuPolicy& policy);

/// The plain Q(alpha) plus lambda * (sum x - k)^2. The constant lambda * k^2 is kept as the offset.
QuboInstance build_penalty(const info::ImportanceVector& importance,
                           const info::RedundancyMatrix& redundancy, double alpha, int k,
                           double lambda);

/// x^T Q x + offset, summed row by row in index order.
double energy(const QuboInstance& q, std::span<const std::uint8_t> x);

/// QUBO over the `free_vars` with every other variable clamped to its value in
/// `assignment`. The clamped part and the couplings into it are folded into the
/// diagonal and the offset, so sub.energy(y) == energy(q, assignment with free vars = y).
QuboInstance clamp(const QuboInstance& q, std::span<const std::size_t> free_vars,
                   std::span<const std::uint8_t> assignment);

/// Spin-glass form H(s) = sum_{i<j} a_ij s_i s_j + sum_i b_i s_i + c over s in {-1, +1}^n.
/// `a` is stored symmetric with zero diagonal; a_ij carries the whole pair coupling.
struct IsingInstance {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double c = 0.0;
};

/// Substitutes x_i = (1 - s_i) / 2, so the spin image of x is s_i = 1 - 2 x_i.
IsingInstance to_ising(const QuboInstance& q);

double ising_energy(const IsingInstance& ising, std::span<const std::int8_t> spins);

/// Spin image s_i = 1 - 2 x_i.
std::vector<std::int8_t> to_spins(std::span<const std::uint8_t> x);

// Export formats. Both fold the symmetric matrix into its upper triangle:
// entry (i, i) holds Q_ii and entry (i, j), i < j, holds Q_ij + Q_ji. Zero
// entries are omitted.

/// {"n":..,"offset":..,"entries":[[i,j,v],...]} plus "provenance" when known.
std::string to_json(const QuboInstance& q);
QuboInstance from_json(const std::string& text);

/// One "i j v" line per entry; a leading "# offset v" line when the offset is nonzero.
std::string to_coordinate_list(const QuboInstance& q);
/// `n` must be given when trailing variables have no entries; otherwise it is inferred.
QuboInstance from_coordinate_list(const std::string& text, std::optional<std::size_t> n = {});

/// {"n":..,"offset":c,"fields":[b...],"couplings":[[i,j,a_ij],...]} with i < j.
std::string ising_to_json(const IsingInstance& ising);

}  // namespace qfs::qubo
