#include "fmbound/group_models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fmbound {

namespace {

std::string join_coords(const std::vector<int>& coords) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0) out << ",";
    out << coords[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- abelian

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> orders, double haar_weight)
    : orders_(std::move(orders)), haar_weight_(haar_weight) {
  if (orders_.empty()) throw InvalidArgument("finite abelian group needs at least one factor");
  if (haar_weight_ <= 0.0) throw InvalidArgument("haar weight must be positive");
  order_ = 1;
  for (int n : orders_) {
    if (n < 1) throw InvalidArgument("cyclic factor order must be >= 1");
    order_ *= n;
  }
}

std::vector<int> FiniteAbelianGroup::unflatten(int index) const {
  std::vector<int> coords(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    coords[i] = index % orders_[i];
    index /= orders_[i];
  }
  return coords;
}

int FiniteAbelianGroup::flatten(const std::vector<int>& coords) const {
  int index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    int c = coords[i] % orders_[i];
    if (c < 0) c += orders_[i];
    index = index * orders_[i] + c;
  }
  return index;
}

int FiniteAbelianGroup::add(int a, int b) const {
  auto ca = unflatten(a);
  auto cb = unflatten(b);
  for (std::size_t i = 0; i < orders_.size(); ++i) ca[i] += cb[i];
  return flatten(ca);
}

int FiniteAbelianGroup::negate(int a) const {
  auto ca = unflatten(a);
  for (int& c : ca) c = -c;
  return flatten(ca);
}

std::complex<double> FiniteAbelianGroup::character(int chi, int g) const {
  const auto k = unflatten(chi);
  const auto x = unflatten(g);
  double angle = 0.0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    angle += 2.0 * M_PI * static_cast<double>(k[i]) * static_cast<double>(x[i]) /
             static_cast<double>(orders_[i]);
  }
  return {std::cos(angle), std::sin(angle)};
}

std::string FiniteAbelianGroup::element_label(int index) const {
  return "g" + join_coords(unflatten(index));
}

std::string FiniteAbelianGroup::character_label(int index) const {
  return "chi" + join_coords(unflatten(index));
}

// ------------------------------------------------------------------ table

FiniteGroupTable::FiniteGroupTable(std::string name, std::vector<std::string> elements,
                                   std::vector<int> mult_table, std::vector<Irrep> irreps)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      mult_table_(std::move(mult_table)),
      irreps_(std::move(irreps)) {
  const int n = order();
  if (n < 1) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          "group table has no elements");
  }
  if (static_cast<int>(mult_table_.size()) != n * n) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          "multiplication table size is not order^2");
  }
  for (int v : mult_table_) {
    if (v < 0 || v >= n) {
      throw ValidationError(ValidationError::Kind::MalformedTable, "",
                            "multiplication table entry out of range");
    }
  }
  // Rows and columns must be permutations (cancellation laws).
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      row[multiply(a, b)] = true;
      col[multiply(b, a)] = true;
    }
    if (std::count(row.begin(), row.end(), true) != n ||
        std::count(col.begin(), col.end(), true) != n) {
      throw ValidationError(ValidationError::Kind::MalformedTable, "",
                            "multiplication table row/column is not a permutation");
    }
  }
  // Locate the two-sided identity.
  identity_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      ok = multiply(e, x) == x && multiply(x, e) == x;
    }
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          "multiplication table has no identity element");
  }
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (multiply(a, b) == identity_ && multiply(b, a) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] < 0) {
      throw ValidationError(ValidationError::Kind::MalformedTable, "",
                            "element without a two-sided inverse: " + elements_[a]);
    }
  }
  validate();
}

void FiniteGroupTable::validate() const {
  const int n = order();
  const double tol = kValidationTol;

  long long dim_sum = 0;
  for (const Irrep& pi : irreps_) {
    if (pi.dim < 1 || static_cast<int>(pi.matrices.size()) != n) {
      throw ValidationError(ValidationError::Kind::MalformedTable, pi.label,
                            "irrep '" + pi.label + "' has wrong matrix count or dimension");
    }
    for (const auto& m : pi.matrices) {
      if (m.rows() != pi.dim || m.cols() != pi.dim) {
        throw ValidationError(ValidationError::Kind::MalformedTable, pi.label,
                              "irrep '" + pi.label + "' has a non-square or mis-sized matrix");
      }
    }
    dim_sum += static_cast<long long>(pi.dim) * pi.dim;
  }
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    for (std::size_t j = i + 1; j < irreps_.size(); ++j) {
      if (irreps_[i].label == irreps_[j].label) {
        throw ValidationError(ValidationError::Kind::MalformedTable, irreps_[i].label,
                              "duplicate irrep label '" + irreps_[i].label + "'");
      }
    }
  }
  if (dim_sum != n) {
    std::ostringstream msg;
    msg << "sum of squared irrep dimensions is " << dim_sum << ", expected |G| = " << n;
    throw ValidationError(ValidationError::Kind::DimensionSum, "", msg.str());
  }

  for (const Irrep& pi : irreps_) {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(pi.dim, pi.dim);
    for (int g = 0; g < n; ++g) {
      const double err = (pi.matrices[g].adjoint() * pi.matrices[g] - eye).cwiseAbs().maxCoeff();
      if (!(err <= tol)) {
        std::ostringstream msg;
        msg << "irrep '" << pi.label << "' is not unitary at element " << elements_[g]
            << " (error " << err << ")";
        throw ValidationError(ValidationError::Kind::NonUnitary, pi.label, msg.str());
      }
    }
    for (int g = 0; g < n; ++g) {
      for (int h = 0; h < n; ++h) {
        const double err =
            (pi.matrices[multiply(g, h)] - pi.matrices[g] * pi.matrices[h]).cwiseAbs().maxCoeff();
        if (!(err <= tol)) {
          std::ostringstream msg;
          msg << "irrep '" << pi.label << "' fails pi(gh) = pi(g)pi(h) at (" << elements_[g]
              << ", " << elements_[h] << ") (error " << err << ")";
          throw ValidationError(ValidationError::Kind::Homomorphism, pi.label, msg.str());
        }
      }
    }
  }

  // Schur orthogonality: (1/|G|) sum_g pi_ij(g) conj(pi'_kl(g)) =
  // delta_{pi,pi'} delta_ik delta_jl / d_pi.
  for (std::size_t a = 0; a < irreps_.size(); ++a) {
    for (std::size_t b = a; b < irreps_.size(); ++b) {
      const Irrep& pa = irreps_[a];
      const Irrep& pb = irreps_[b];
      for (int i = 0; i < pa.dim; ++i) {
        for (int j = 0; j < pa.dim; ++j) {
          for (int k = 0; k < pb.dim; ++k) {
            for (int l = 0; l < pb.dim; ++l) {
              std::complex<double> sum = 0.0;
              for (int g = 0; g < n; ++g) {
                sum += pa.matrices[g](i, j) * std::conj(pb.matrices[g](k, l));
              }
              sum /= static_cast<double>(n);
              std::complex<double> expected = 0.0;
              if (a == b && i == k && j == l) expected = 1.0 / static_cast<double>(pa.dim);
              if (std::abs(sum - expected) > tol) {
                std::ostringstream msg;
                msg << "Schur orthogonality fails for irreps '" << pa.label << "' and '"
                    << pb.label << "' at indices (" << i << "," << j << "," << k << "," << l
                    << ") (error " << std::abs(sum - expected) << ")";
                throw ValidationError(ValidationError::Kind::Orthogonality, pa.label, msg.str());
              }
            }
          }
        }
      }
    }
  }
}

// ------------------------------------------------------------------ torus

TorusModel::TorusModel(int dimension, int truncation, int grid_size)
    : dim_(dimension), K_(truncation), M_(grid_size) {
  if (dim_ < 1) throw InvalidArgument("torus dimension must be >= 1");
  if (K_ < 0) throw InvalidArgument("torus truncation must be >= 0");
  if (M_ < 2 * K_ + 1) {
    throw InvalidArgument("torus grid size must be >= 2K+1 for alias-free sampling");
  }
}

int TorusModel::frequency_count() const {
  int count = 1;
  for (int i = 0; i < dim_; ++i) count *= 2 * K_ + 1;
  return count;
}

int TorusModel::grid_count() const {
  int count = 1;
  for (int i = 0; i < dim_; ++i) count *= M_;
  return count;
}

std::vector<int> TorusModel::frequency(int index) const {
  const int width = 2 * K_ + 1;
  std::vector<int> m(dim_);
  for (int i = dim_; i-- > 0;) {
    m[i] = index % width - K_;
    index /= width;
  }
  return m;
}

int TorusModel::frequency_index(const std::vector<int>& m) const {
  const int width = 2 * K_ + 1;
  int index = 0;
  for (int i = 0; i < dim_; ++i) {
    if (m[i] < -K_ || m[i] > K_) throw InvalidArgument("frequency outside truncation");
    index = index * width + (m[i] + K_);
  }
  return index;
}

std::vector<int> TorusModel::grid_coords(int index) const {
  std::vector<int> coords(dim_);
  for (int i = dim_; i-- > 0;) {
    coords[i] = index % M_;
    index /= M_;
  }
  return coords;
}

int TorusModel::grid_index(const std::vector<int>& coords) const {
  int index = 0;
  for (int i = 0; i < dim_; ++i) {
    int c = coords[i] % M_;
    if (c < 0) c += M_;
    index = index * M_ + c;
  }
  return index;
}

std::string TorusModel::frequency_label(int index) const {
  return "m" + join_coords(frequency(index));
}

// -------------------------------------------------------------- euclidean

EuclideanGridDual::EuclideanGridDual(int dimension, double spacing, double extent)
    : n_(dimension), h_(spacing), R_(extent) {
  if (n_ < 1) throw InvalidArgument("euclidean dual dimension must be >= 1");
  if (!(h_ > 0.0)) throw InvalidArgument("euclidean dual spacing must be positive");
  if (!(R_ > 0.0)) throw InvalidArgument("euclidean dual extent must be positive");
  const int kmax = static_cast<int>(std::floor(R_ / h_ + 1e-12));
  per_axis_ = 2 * kmax + 1;
}

int EuclideanGridDual::point_count() const {
  int count = 1;
  for (int i = 0; i < n_; ++i) count *= per_axis_;
  return count;
}

double EuclideanGridDual::cell_weight() const { return std::pow(h_, n_); }

std::vector<int> EuclideanGridDual::point_coords(int index) const {
  const int kmax = (per_axis_ - 1) / 2;
  std::vector<int> coords(n_);
  for (int i = n_; i-- > 0;) {
    coords[i] = index % per_axis_ - kmax;
    index /= per_axis_;
  }
  return coords;
}

std::vector<double> EuclideanGridDual::point(int index) const {
  auto coords = point_coords(index);
  std::vector<double> xi(n_);
  for (int i = 0; i < n_; ++i) xi[i] = h_ * coords[i];
  return xi;
}

std::string EuclideanGridDual::point_label(int index) const {
  return "xi" + join_coords(point_coords(index));
}

// -------------------------------------------------------------------- su2

SU2DualTruncation::SU2DualTruncation(int max_level_twice) : max2l_(max_level_twice) {
  if (max2l_ < 0) throw InvalidArgument("SU(2) truncation level must be >= 0");
}

std::string SU2DualTruncation::level_label(int block) const {
  if (block % 2 == 0) return "l=" + std::to_string(block / 2);
  return "l=" + std::to_string(block) + "/2";
}

// ------------------------------------------------------------- group model

GroupModel::GroupModel(Variant v) : impl_(std::make_shared<const Variant>(std::move(v))) {}

GroupModel GroupModel::finite_abelian(std::vector<int> orders, double haar_weight) {
  return GroupModel(Variant(FiniteAbelianGroup(std::move(orders), haar_weight)));
}

GroupModel GroupModel::finite_group(FiniteGroupTable table) {
  return GroupModel(Variant(std::move(table)));
}

GroupModel GroupModel::torus(int dimension, int truncation, int grid_size) {
  return GroupModel(Variant(TorusModel(dimension, truncation, grid_size)));
}

GroupModel GroupModel::euclidean_grid(int dimension, double spacing, double extent) {
  return GroupModel(Variant(EuclideanGridDual(dimension, spacing, extent)));
}

GroupModel GroupModel::su2_truncation(int max_level_twice) {
  return GroupModel(Variant(SU2DualTruncation(max_level_twice)));
}

bool GroupModel::is_finite_group() const {
  return std::holds_alternative<FiniteAbelianGroup>(v()) ||
         std::holds_alternative<FiniteGroupTable>(v());
}

bool GroupModel::has_domain() const {
  return is_finite_group() || std::holds_alternative<TorusModel>(v());
}

std::size_t GroupModel::domain_size() const {
  if (const auto* g = get_if<FiniteAbelianGroup>()) return g->order();
  if (const auto* g = get_if<FiniteGroupTable>()) return g->order();
  if (const auto* g = get_if<TorusModel>()) return g->grid_count();
  throw InvalidArgument("model has no pointwise domain: " + describe());
}

double GroupModel::haar_point_weight() const {
  if (const auto* g = get_if<FiniteAbelianGroup>()) return g->haar_weight();
  if (get_if<FiniteGroupTable>()) return 1.0;
  if (const auto* g = get_if<TorusModel>()) return 1.0 / static_cast<double>(g->grid_count());
  throw InvalidArgument("model has no pointwise domain: " + describe());
}

std::vector<DualBlock> GroupModel::dual_measure() const {
  std::vector<DualBlock> blocks;
  if (const auto* g = get_if<FiniteAbelianGroup>()) {
    const double w = g->haar_weight() / static_cast<double>(g->order());
    blocks.reserve(g->order());
    for (int chi = 0; chi < g->order(); ++chi) {
      blocks.push_back({g->character_label(chi), 1, w});
    }
    return blocks;
  }
  if (const auto* g = get_if<FiniteGroupTable>()) {
    blocks.reserve(g->irreps().size());
    for (const Irrep& pi : g->irreps()) {
      blocks.push_back({pi.label, pi.dim, static_cast<double>(pi.dim) / g->order()});
    }
    return blocks;
  }
  if (const auto* g = get_if<TorusModel>()) {
    blocks.reserve(g->frequency_count());
    for (int i = 0; i < g->frequency_count(); ++i) {
      blocks.push_back({g->frequency_label(i), 1, 1.0});
    }
    return blocks;
  }
  if (const auto* g = get_if<EuclideanGridDual>()) {
    blocks.reserve(g->point_count());
    for (int i = 0; i < g->point_count(); ++i) {
      blocks.push_back({g->point_label(i), 1, g->cell_weight()});
    }
    return blocks;
  }
  const auto* g = get_if<SU2DualTruncation>();
  blocks.reserve(g->block_count());
  for (int b = 0; b < g->block_count(); ++b) {
    blocks.push_back({g->level_label(b), g->dim(b), static_cast<double>(g->dim(b))});
  }
  return blocks;
}

double GroupModel::tau_identity() const {
  double total = 0.0;
  for (const DualBlock& b : dual_measure()) total += b.dim * b.weight;
  return total;
}

std::string GroupModel::describe() const {
  std::ostringstream out;
  if (const auto* g = get_if<FiniteAbelianGroup>()) {
    out << "finite abelian Z";
    for (std::size_t i = 0; i < g->orders().size(); ++i) {
      out << (i == 0 ? "" : "xZ") << g->orders()[i];
    }
    out << " (order " << g->order() << ")";
  } else if (const auto* g = get_if<FiniteGroupTable>()) {
    out << "finite group " << g->name() << " (order " << g->order() << ")";
  } else if (const auto* g = get_if<TorusModel>()) {
    out << "torus T^" << g->dimension() << " (K=" << g->truncation()
        << ", M=" << g->grid_size() << ")";
  } else if (const auto* g = get_if<EuclideanGridDual>()) {
    out << "euclidean dual grid R^" << g->dimension() << " (h=" << g->spacing()
        << ", R=" << g->extent() << ")";
  } else if (const auto* g = get_if<SU2DualTruncation>()) {
    out << "SU(2) dual truncation (2L=" << g->max_level_twice() << ")";
  }
  return out.str();
}

bool GroupModel::same_structure(const GroupModel& other) const {
  if (impl_ == other.impl_) return true;
  if (v().index() != other.v().index()) return false;
  if (const auto* a = get_if<FiniteAbelianGroup>()) {
    const auto* b = other.get_if<FiniteAbelianGroup>();
    return a->orders() == b->orders() && a->haar_weight() == b->haar_weight();
  }
  if (const auto* a = get_if<FiniteGroupTable>()) {
    const auto* b = other.get_if<FiniteGroupTable>();
    return a->name() == b->name() && a->mult_table() == b->mult_table();
  }
  if (const auto* a = get_if<TorusModel>()) {
    const auto* b = other.get_if<TorusModel>();
    return a->dimension() == b->dimension() && a->truncation() == b->truncation() &&
           a->grid_size() == b->grid_size();
  }
  if (const auto* a = get_if<EuclideanGridDual>()) {
    const auto* b = other.get_if<EuclideanGridDual>();
    return a->dimension() == b->dimension() && a->spacing() == b->spacing() &&
           a->extent() == b->extent();
  }
  const auto* a = get_if<SU2DualTruncation>();
  const auto* b = other.get_if<SU2DualTruncation>();
  return a->max_level_twice() == b->max_level_twice();
}

// ------------------------------------------------------------- operations

GroupModel make_finite_abelian(const std::vector<int>& orders) {
  return GroupModel::finite_abelian(orders);
}

std::vector<DualBlock> dual_measure(const GroupModel& model) { return model.dual_measure(); }

FiniteGroupTable parse_irrep_table(const nlohmann::json& spec, const std::string& name_hint) {
  if (!spec.is_object()) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          "irrep table must be a JSON object");
  }
  for (const auto& [key, value] : spec.items()) {
    (void)value;
    if (key != "order" && key != "elements" && key != "mult_table" && key != "irreps" &&
        key != "name") {
      throw ValidationError(ValidationError::Kind::MalformedTable, "",
                            "unknown key in irrep table: " + key);
    }
  }
  try {
    const int order = spec.at("order").get<int>();
    auto elements = spec.at("elements").get<std::vector<std::string>>();
    auto mult = spec.at("mult_table").get<std::vector<int>>();
    if (static_cast<int>(elements.size()) != order) {
      throw ValidationError(ValidationError::Kind::MalformedTable, "",
                            "element list length does not match order");
    }
    std::vector<Irrep> irreps;
    for (const auto& jrep : spec.at("irreps")) {
      Irrep pi;
      pi.label = jrep.at("label").get<std::string>();
      pi.dim = jrep.at("dim").get<int>();
      const auto& mats = jrep.at("matrices");
      if (static_cast<int>(mats.size()) != order) {
        throw ValidationError(ValidationError::Kind::MalformedTable, pi.label,
                              "irrep '" + pi.label + "' matrix count != order");
      }
      for (const auto& jm : mats) {
        Eigen::MatrixXcd m(pi.dim, pi.dim);
        if (static_cast<int>(jm.size()) != pi.dim) {
          throw ValidationError(ValidationError::Kind::MalformedTable, pi.label,
                                "irrep '" + pi.label + "' has a mis-shaped matrix");
        }
        for (int r = 0; r < pi.dim; ++r) {
          const auto& jrow = jm.at(r);
          if (static_cast<int>(jrow.size()) != pi.dim) {
            throw ValidationError(ValidationError::Kind::MalformedTable, pi.label,
                                  "irrep '" + pi.label + "' has a mis-shaped matrix row");
          }
          for (int c = 0; c < pi.dim; ++c) {
            const auto& jz = jrow.at(c);
            m(r, c) = std::complex<double>(jz.at(0).get<double>(), jz.at(1).get<double>());
          }
        }
        pi.matrices.push_back(std::move(m));
      }
      irreps.push_back(std::move(pi));
    }
    std::string name = spec.contains("name") ? spec.at("name").get<std::string>() : name_hint;
    return FiniteGroupTable(std::move(name), std::move(elements), std::move(mult),
                            std::move(irreps));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          std::string("irrep table JSON: ") + e.what());
  }
}

GroupModel load_irrep_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open irrep table file: " + path);
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ValidationError::Kind::MalformedTable, "",
                          std::string("irrep table parse error: ") + e.what());
  }
  return GroupModel::finite_group(parse_irrep_table(spec, path));
}

nlohmann::ordered_json irrep_table_to_json(const FiniteGroupTable& table) {
  nlohmann::ordered_json out;
  out["name"] = table.name();
  out["order"] = table.order();
  out["elements"] = table.elements();
  out["mult_table"] = table.mult_table();
  nlohmann::ordered_json irreps = nlohmann::ordered_json::array();
  for (const Irrep& pi : table.irreps()) {
    nlohmann::ordered_json jrep;
    jrep["label"] = pi.label;
    jrep["dim"] = pi.dim;
    nlohmann::ordered_json mats = nlohmann::ordered_json::array();
    for (const auto& m : pi.matrices) {
      nlohmann::ordered_json jm = nlohmann::ordered_json::array();
      for (int r = 0; r < pi.dim; ++r) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
        for (int c = 0; c < pi.dim; ++c) {
          jrow.push_back({m(r, c).real(), m(r, c).imag()});
        }
        jm.push_back(jrow);
      }
      mats.push_back(jm);
    }
    jrep["matrices"] = mats;
    irreps.push_back(jrep);
  }
  out["irreps"] = irreps;
  return out;
}

}  // namespace fmbound
