#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fmbound/errors.hpp"

namespace fmbound {

// One slot of the dual object: a representation label with its dimension and
// Plancherel trace weight. The weight is the mass each singular value of that
// block carries in the spectral measure.
struct DualBlock {
  std::string label;
  int dim = 1;
  double weight = 1.0;
};

// G = Z_{N1} x ... x Z_{Nd} with counting Haar measure (weight 1 per point).
// The dual is the character group on the same index set; each character gets
// Plancherel weight haar_weight / |G|.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> orders, double haar_weight = 1.0);

  const std::vector<int>& orders() const { return orders_; }
  int order() const { return order_; }
  double haar_weight() const { return haar_weight_; }

  std::vector<int> unflatten(int index) const;
  int flatten(const std::vector<int>& coords) const;
  int add(int a, int b) const;
  int negate(int a) const;

  // chi_k(g) = exp(2*pi*i * sum_j k_j g_j / N_j)
  std::complex<double> character(int chi, int g) const;

  std::string element_label(int index) const;
  std::string character_label(int index) const;

 private:
  std::vector<int> orders_;
  int order_ = 1;
  double haar_weight_ = 1.0;
};

// A unitary irreducible representation given by its matrices on every group
// element (in element order).
struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<Eigen::MatrixXcd> matrices;
};

// A finite group presented by a multiplication table together with a complete
// system of unitary irreps. The constructor validates the table (index
// ranges, Latin-square rows/columns, identity) and the representation data:
// dimension sum, unitarity, the homomorphism property and Schur
// orthogonality, each to kValidationTol.
class FiniteGroupTable {
 public:
  static constexpr double kValidationTol = 1e-8;

  FiniteGroupTable(std::string name, std::vector<std::string> elements,
                   std::vector<int> mult_table, std::vector<Irrep> irreps);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int multiply(int a, int b) const { return mult_table_[a * order() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<int>& mult_table() const { return mult_table_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }

 private:
  void validate() const;

  std::string name_;
  std::vector<std::string> elements_;
  std::vector<int> mult_table_;
  std::vector<Irrep> irreps_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

// Band-limited torus T^d with probability Haar measure: frequencies
// m in Z^d, |m_i| <= K, sampled on an M^d uniform grid with M >= 2K+1 so
// band-limited functions are represented alias-free. Dual weight is 1 per
// frequency (counting measure on Z^d).
class TorusModel {
 public:
  TorusModel(int dimension, int truncation, int grid_size);

  int dimension() const { return dim_; }
  int truncation() const { return K_; }
  int grid_size() const { return M_; }
  int frequency_count() const;  // (2K+1)^d
  int grid_count() const;       // M^d

  std::vector<int> frequency(int index) const;  // index -> m, m_i in [-K, K]
  int frequency_index(const std::vector<int>& m) const;
  std::vector<int> grid_coords(int index) const;
  int grid_index(const std::vector<int>& coords) const;

  std::string frequency_label(int index) const;

 private:
  int dim_;
  int K_;
  int M_;
};

// Dual lattice h*Z^n intersected with [-R, R]^n, cell weight h^n per point.
// Carries scalar symbol data only (no domain-side functions).
class EuclideanGridDual {
 public:
  EuclideanGridDual(int dimension, double spacing, double extent);

  int dimension() const { return n_; }
  double spacing() const { return h_; }
  double extent() const { return R_; }
  int points_per_axis() const { return per_axis_; }
  int point_count() const;
  double cell_weight() const;  // h^n

  std::vector<int> point_coords(int index) const;  // integer lattice coords
  std::vector<double> point(int index) const;      // h * coords
  std::string point_label(int index) const;

 private:
  int n_;
  double h_;
  double R_;
  int per_axis_;  // points per axis: coords in [-kmax, kmax], kmax = floor(R/h)
};

// Truncated SU(2) dual: levels l = 0, 1/2, 1, ..., L stored as doubled
// integers 2l. Block dimension d_l = 2l+1 and trace weight d_l (Haar mass 1
// convention), so block l carries Plancherel mass d_l^2.
class SU2DualTruncation {
 public:
  explicit SU2DualTruncation(int max_level_twice);

  int max_level_twice() const { return max2l_; }
  int block_count() const { return max2l_ + 1; }
  int dim(int block) const { return block + 1; }  // block index = 2l
  std::string level_label(int block) const;

 private:
  int max2l_;
};

// Sum type over the five desk-scale models. Immutable after construction and
// cheap to copy; safe for concurrent reads.
class GroupModel {
 public:
  using Variant = std::variant<FiniteAbelianGroup, FiniteGroupTable, TorusModel,
                               EuclideanGridDual, SU2DualTruncation>;

  static GroupModel finite_abelian(std::vector<int> orders, double haar_weight = 1.0);
  static GroupModel finite_group(FiniteGroupTable table);
  static GroupModel torus(int dimension, int truncation, int grid_size);
  static GroupModel euclidean_grid(int dimension, double spacing, double extent);
  static GroupModel su2_truncation(int max_level_twice);

  const Variant& v() const { return *impl_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(impl_.get());
  }

  bool is_finite_group() const;  // finite abelian or irrep table
  bool has_domain() const;       // carries pointwise function values
  std::size_t domain_size() const;
  double haar_point_weight() const;  // quadrature weight per domain point

  std::vector<DualBlock> dual_measure() const;
  double tau_identity() const;  // recorded truncated total: sum dim * weight
  std::string describe() const;
  bool same_structure(const GroupModel& other) const;

 private:
  explicit GroupModel(Variant v);
  std::shared_ptr<const Variant> impl_;
};

GroupModel make_finite_abelian(const std::vector<int>& orders);

// Irrep table file format: JSON with fields
//   {order, elements, mult_table (row-major), irreps: [{label, dim,
//    matrices: one dim x dim matrix of [re, im] pairs per element}]}
GroupModel load_irrep_table(const std::string& path);
FiniteGroupTable parse_irrep_table(const nlohmann::json& spec,
                                   const std::string& name_hint);
nlohmann::ordered_json irrep_table_to_json(const FiniteGroupTable& table);

std::vector<DualBlock> dual_measure(const GroupModel& model);

// Shipped representation tables.
FiniteGroupTable builtin_cyclic_table(int n);
FiniteGroupTable builtin_s3_table();
FiniteGroupTable builtin_d4_table();
FiniteGroupTable builtin_q8_table();
// Accepts "S3", "D4", "Q8", "Z<n>".
FiniteGroupTable builtin_table(const std::string& name);

}  // namespace fmbound
