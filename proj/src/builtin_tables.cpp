#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fmbound/group_models.hpp"

namespace fmbound {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd rotation2(double angle) {
  Eigen::MatrixXcd m(2, 2);
  m << cd(std::cos(angle), 0), cd(-std::sin(angle), 0), cd(std::sin(angle), 0),
      cd(std::cos(angle), 0);
  return m;
}

Eigen::MatrixXcd reflection2() {
  Eigen::MatrixXcd m(2, 2);
  m << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
  return m;
}

Eigen::MatrixXcd scalar1(cd z) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = z;
  return m;
}

// Dihedral-type table on elements r^a s^b with s r = r^-1 s.
// Element index = a + rot_order * b.
std::vector<int> dihedral_mult_table(int rot_order) {
  const int n = 2 * rot_order;
  std::vector<int> table(n * n);
  auto idx = [&](int a, int b) { return a + rot_order * b; };
  for (int a = 0; a < rot_order; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < rot_order; ++c) {
        for (int d = 0; d < 2; ++d) {
          const int rot = ((b ? a - c : a + c) % rot_order + rot_order) % rot_order;
          table[idx(a, b) * n + idx(c, d)] = idx(rot, (b + d) % 2);
        }
      }
    }
  }
  return table;
}

// Labels in index order a + rot_order * b.
std::vector<std::string> dihedral_labels(int rot_order) {
  std::vector<std::string> labels;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < rot_order; ++a) {
      std::string name;
      if (a == 0 && b == 0) {
        name = "e";
      } else {
        if (a == 1) name = "r";
        if (a > 1) name = "r" + std::to_string(a);
        if (b == 1) name += "s";
      }
      labels.push_back(name);
    }
  }
  return labels;
}

}  // namespace

FiniteGroupTable builtin_cyclic_table(int n) {
  if (n < 1) throw InvalidArgument("cyclic group order must be >= 1");
  std::vector<std::string> elements;
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a) {
    elements.push_back("g" + std::to_string(a));
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  }
  std::vector<Irrep> irreps;
  for (int k = 0; k < n; ++k) {
    Irrep pi;
    pi.label = "chi" + std::to_string(k);
    pi.dim = 1;
    for (int a = 0; a < n; ++a) {
      const double angle = 2.0 * M_PI * k * a / n;
      pi.matrices.push_back(scalar1(cd(std::cos(angle), std::sin(angle))));
    }
    irreps.push_back(std::move(pi));
  }
  return FiniteGroupTable("Z" + std::to_string(n), std::move(elements), std::move(table),
                          std::move(irreps));
}

FiniteGroupTable builtin_s3_table() {
  const int rot = 3;
  auto table = dihedral_mult_table(rot);
  auto labels = dihedral_labels(rot);

  std::vector<Irrep> irreps(3);
  irreps[0].label = "trivial";
  irreps[0].dim = 1;
  irreps[1].label = "sign";
  irreps[1].dim = 1;
  irreps[2].label = "standard";
  irreps[2].dim = 2;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < rot; ++a) {
      irreps[0].matrices.push_back(scalar1(1.0));
      irreps[1].matrices.push_back(scalar1(b ? -1.0 : 1.0));
      Eigen::MatrixXcd m = rotation2(2.0 * M_PI * a / rot);
      if (b) m = m * reflection2();
      irreps[2].matrices.push_back(m);
    }
  }
  return FiniteGroupTable("S3", std::move(labels), std::move(table), std::move(irreps));
}

FiniteGroupTable builtin_d4_table() {
  const int rot = 4;
  auto table = dihedral_mult_table(rot);
  auto labels = dihedral_labels(rot);

  std::vector<Irrep> irreps(5);
  irreps[0].label = "trivial";
  irreps[0].dim = 1;
  irreps[1].label = "sign_s";
  irreps[1].dim = 1;
  irreps[2].label = "sign_r";
  irreps[2].dim = 1;
  irreps[3].label = "sign_rs";
  irreps[3].dim = 1;
  irreps[4].label = "standard";
  irreps[4].dim = 2;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < rot; ++a) {
      irreps[0].matrices.push_back(scalar1(1.0));
      irreps[1].matrices.push_back(scalar1(b ? -1.0 : 1.0));
      irreps[2].matrices.push_back(scalar1(a % 2 ? -1.0 : 1.0));
      irreps[3].matrices.push_back(scalar1((a + b) % 2 ? -1.0 : 1.0));
      Eigen::MatrixXcd m = rotation2(M_PI_2 * a);
      if (b) m = m * reflection2();
      // d4 rotation entries are exactly 0/±1; snap away the pi round-off
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          m(r, c) = cd(std::round(m(r, c).real()), 0.0);
        }
      }
      irreps[4].matrices.push_back(m);
    }
  }
  return FiniteGroupTable("D4", std::move(labels), std::move(table), std::move(irreps));
}

FiniteGroupTable builtin_q8_table() {
  // elements: index = 2*unit + sign, units 1,i,j,k, sign 0 -> +, 1 -> -
  const std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  // unit products: unit_mult[a][b] = result unit, unit_sign[a][b] = 1 for a minus
  const int unit_mult[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // i*i = -1, i*j = k, i*k = -j, j*i = -k, j*j = -1, j*k = i, k*i = j,
  // k*j = -i, k*k = -1
  std::vector<int> table(64);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, sa = a % 2;
      const int ub = b / 2, sb = b % 2;
      const int uc = unit_mult[ua][ub];
      const int sc = (sa + sb + unit_sign[ua][ub]) % 2;
      table[a * 8 + b] = 2 * uc + sc;
    }
  }

  const cd one(1, 0), im(0, 1);
  std::vector<Irrep> irreps(5);
  const char* names[4] = {"trivial", "chi_i", "chi_j", "chi_k"};
  // the 1-dim characters factor through Q8/{±1}: chi_u(v) = +1 iff v in {1, u}
  const int char_values[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  for (int c = 0; c < 4; ++c) {
    irreps[c].label = names[c];
    irreps[c].dim = 1;
  }
  irreps[4].label = "spin";
  irreps[4].dim = 2;

  Eigen::MatrixXcd spin[4];
  spin[0] = Eigen::MatrixXcd::Identity(2, 2);
  spin[1] = Eigen::MatrixXcd(2, 2);
  spin[1] << im, cd(0, 0), cd(0, 0), -im;
  spin[2] = Eigen::MatrixXcd(2, 2);
  spin[2] << cd(0, 0), one, -one, cd(0, 0);
  spin[3] = Eigen::MatrixXcd(2, 2);
  spin[3] << cd(0, 0), im, im, cd(0, 0);

  for (int e = 0; e < 8; ++e) {
    const int u = e / 2;
    const double sign = e % 2 ? -1.0 : 1.0;
    for (int c = 0; c < 4; ++c) {
      // chi_u factors through the sign: value depends on the unit only
      irreps[c].matrices.push_back(scalar1(cd(char_values[c][u] == 1 ? 1.0 : -1.0, 0)));
    }
    irreps[4].matrices.push_back(sign * spin[u]);
  }
  return FiniteGroupTable("Q8", labels, std::move(table), std::move(irreps));
}

FiniteGroupTable builtin_table(const std::string& name) {
  if (name == "S3" || name == "s3") return builtin_s3_table();
  if (name == "D4" || name == "d4") return builtin_d4_table();
  if (name == "Q8" || name == "q8") return builtin_q8_table();
  if ((name.size() > 1) && (name[0] == 'Z' || name[0] == 'z')) {
    const int n = std::stoi(name.substr(1));
    return builtin_cyclic_table(n);
  }
  throw InvalidArgument("unknown builtin group table: " + name);
}

}  // namespace fmbound
