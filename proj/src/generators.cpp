#include "racp/generators.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace racp {

namespace {

constexpr double kDistortionAmplitude = 0.15;

int face_axis(Face f) {
  switch (f) {
    case Face::xmin:
    case Face::xmax:
      return 0;
    case Face::ymin:
    case Face::ymax:
      return 1;
    default:
      return 2;
  }
}

bool face_is_max(Face f) { return f == Face::xmax || f == Face::ymax || f == Face::zmax; }

Face min_face_of(Axis a) {
  switch (a) {
    case Axis::x:
      return Face::xmin;
    case Axis::y:
      return Face::ymin;
    default:
      return Face::zmin;
  }
}

// 8-node hex, corner a at local coordinates 2*off[a]-1.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

Eigen::Matrix<double, 6, 6> elasticity_matrix(double e_mod, double nu) {
  const double lambda = e_mod * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  const double mu = e_mod / (2.0 * (1.0 + nu));
  Eigen::Matrix<double, 6, 6> d = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d(i, j) = lambda;
    d(i, i) = lambda + 2.0 * mu;
    d(3 + i, 3 + i) = mu;
  }
  return d;
}

class HexBuilder {
 public:
  HexBuilder(const GridParams& p, bool require_both_sides_anchored) : p_(p) {
    n_[0] = p.nx;
    n_[1] = p.ny;
    n_[2] = p.nz;
    for (int a = 0; a < 3; ++a) {
      if (n_[a] < 1) throw std::invalid_argument("grid: element counts must be positive");
      h_[a] = 1.0 / static_cast<double>(n_[a]);
    }
    if (p.young_modulus <= 0.0) throw std::invalid_argument("grid: Young modulus must be positive");
    if (p.poisson_ratio <= -1.0 || p.poisson_ratio >= 0.5)
      throw std::invalid_argument("grid: Poisson ratio out of range");
    if (p.distortion < 0.0 || p.distortion >= 1.0)
      throw std::invalid_argument("grid: distortion must lie in [0, 1)");
    ax_ = static_cast<int>(p.fracture_axis);
    has_fracture_ = p.fracture_index >= 0;
    f_ = p.fracture_index;
    if (has_fracture_ && (f_ < 1 || f_ > n_[ax_] - 1))
      throw std::invalid_argument("grid: fracture index must select an interior plane");
    if (has_fracture_ && require_both_sides_anchored) {
      bool minus_ok = false, plus_ok = false;
      for (Face f : p.dirichlet_faces) {
        int fa = face_axis(f);
        if (fa != ax_) {
          minus_ok = plus_ok = true;  // lateral faces touch both bodies
        } else if (face_is_max(f)) {
          plus_ok = true;
        } else {
          minus_ok = true;
        }
      }
      if (!minus_ok || !plus_ok)
        throw std::invalid_argument("grid: each fracture side needs a Dirichlet face");
    }
  }

  SaddleSystem build() {
    number_nodes();
    assemble_stiffness();
    assemble_coupling();
    return make_saddle_system(std::move(a_), std::move(b_), {}, label());
  }

 private:
  index_t node_id(index_t ix, index_t iy, index_t iz) const {
    return ix + (n_[0] + 1) * (iy + (n_[1] + 1) * iz);
  }

  // The two in-plane axes ordered by node-id stride, so plane ordinals
  // increase with the base node id.
  void plane_axes(int& a1, int& a2) const {
    a1 = ax_ == 0 ? 1 : 0;
    a2 = ax_ == 2 ? 1 : 2;
  }

  index_t plane_ordinal(const std::array<index_t, 3>& c) const {
    int a1, a2;
    plane_axes(a1, a2);
    return c[static_cast<std::size_t>(a1)] +
           (n_[a1] + 1) * c[static_cast<std::size_t>(a2)];
  }

  bool on_dirichlet_face(const std::array<index_t, 3>& c) const {
    for (Face f : p_.dirichlet_faces) {
      int a = face_axis(f);
      index_t want = face_is_max(f) ? n_[a] : 0;
      if (c[static_cast<std::size_t>(a)] == want) return true;
    }
    return false;
  }

  std::array<double, 3> position(const std::array<index_t, 3>& c) const {
    std::array<double, 3> x{};
    for (int a = 0; a < 3; ++a)
      x[static_cast<std::size_t>(a)] = h_[a] * static_cast<double>(c[static_cast<std::size_t>(a)]);
    if (p_.distortion > 0.0) {
      using std::numbers::pi;
      // Interior bubble: strictly positive away from the boundary, so every
      // interior node moves no matter how coarse the grid is. The cosine
      // factors decorrelate the three components.
      const double bubble = std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]);
      const double amp = kDistortionAmplitude * p_.distortion;
      std::array<double, 3> shift = {
          amp * h_[0] * bubble * (0.5 + 0.5 * std::cos(pi * x[1])),
          amp * h_[1] * bubble * (0.5 + 0.5 * std::cos(pi * x[2])),
          amp * h_[2] * bubble * (0.5 + 0.5 * std::cos(pi * x[0]))};
      // Keep the interface planar: no shift along the fracture axis there.
      if (has_fracture_ && c[static_cast<std::size_t>(ax_)] == f_)
        shift[static_cast<std::size_t>(ax_)] = 0.0;
      for (int a = 0; a < 3; ++a) x[static_cast<std::size_t>(a)] += shift[static_cast<std::size_t>(a)];
    }
    return x;
  }

  void number_nodes() {
    base_count_ = (n_[0] + 1) * (n_[1] + 1) * (n_[2] + 1);
    int a1, a2;
    plane_axes(a1, a2);
    plane_count_ = has_fracture_ ? (n_[a1] + 1) * (n_[a2] + 1) : 0;
    total_nodes_ = base_count_ + plane_count_;

    coords_.assign(static_cast<std::size_t>(total_nodes_), {});
    constrained_.assign(static_cast<std::size_t>(total_nodes_), false);
    for (index_t iz = 0; iz <= n_[2]; ++iz)
      for (index_t iy = 0; iy <= n_[1]; ++iy)
        for (index_t ix = 0; ix <= n_[0]; ++ix) {
          std::array<index_t, 3> c = {ix, iy, iz};
          index_t id = node_id(ix, iy, iz);
          coords_[static_cast<std::size_t>(id)] = position(c);
          constrained_[static_cast<std::size_t>(id)] = on_dirichlet_face(c);
          if (has_fracture_ && c[static_cast<std::size_t>(ax_)] == f_) {
            index_t dup = base_count_ + plane_ordinal(c);
            coords_[static_cast<std::size_t>(dup)] = coords_[static_cast<std::size_t>(id)];
            constrained_[static_cast<std::size_t>(dup)] = constrained_[static_cast<std::size_t>(id)];
          }
        }

    node_dof_.assign(static_cast<std::size_t>(total_nodes_), -1);
    n_free_ = 0;
    for (index_t v = 0; v < total_nodes_; ++v)
      if (!constrained_[static_cast<std::size_t>(v)]) node_dof_[static_cast<std::size_t>(v)] = 3 * n_free_++;
  }

  index_t corner_node(const std::array<index_t, 3>& e, int a) const {
    std::array<index_t, 3> c;
    for (int d = 0; d < 3; ++d)
      c[static_cast<std::size_t>(d)] = e[static_cast<std::size_t>(d)] + kCorner[a][d];
    index_t id = node_id(c[0], c[1], c[2]);
    if (has_fracture_ && c[static_cast<std::size_t>(ax_)] == f_ &&
        e[static_cast<std::size_t>(ax_)] >= f_)
      id = base_count_ + plane_ordinal(c);
    return id;
  }

  Eigen::Matrix<double, 24, 24> element_stiffness(const std::array<index_t, 8>& nodes) const {
    Eigen::Matrix<double, 8, 3> x;
    for (int a = 0; a < 8; ++a)
      for (int d = 0; d < 3; ++d)
        x(a, d) = coords_[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])]
                         [static_cast<std::size_t>(d)];

    const Eigen::Matrix<double, 6, 6> dmat = elasticity_matrix(p_.young_modulus, p_.poisson_ratio);
    const double g = 1.0 / std::sqrt(3.0);
    Eigen::Matrix<double, 24, 24> ke = Eigen::Matrix<double, 24, 24>::Zero();

    for (int gp = 0; gp < 8; ++gp) {
      const double xi = (gp & 1) ? g : -g;
      const double eta = (gp & 2) ? g : -g;
      const double zeta = (gp & 4) ? g : -g;
      Eigen::Matrix<double, 8, 3> dn;  // dN_a / d(xi, eta, zeta)
      for (int a = 0; a < 8; ++a) {
        const double sa = 2.0 * kCorner[a][0] - 1.0;
        const double sb = 2.0 * kCorner[a][1] - 1.0;
        const double sc = 2.0 * kCorner[a][2] - 1.0;
        dn(a, 0) = 0.125 * sa * (1.0 + sb * eta) * (1.0 + sc * zeta);
        dn(a, 1) = 0.125 * (1.0 + sa * xi) * sb * (1.0 + sc * zeta);
        dn(a, 2) = 0.125 * (1.0 + sa * xi) * (1.0 + sb * eta) * sc;
      }
      Eigen::Matrix3d jac = dn.transpose() * x;  // J(i,j) = d x_j / d xi_i
      const double det = jac.determinant();
      if (det <= 0.0)
        throw std::invalid_argument("grid: distortion inverts an element Jacobian");
      Eigen::Matrix3d jinv = jac.inverse();

      Eigen::Matrix<double, 6, 24> bmat = Eigen::Matrix<double, 6, 24>::Zero();
      for (int a = 0; a < 8; ++a) {
        Eigen::Vector3d grad = jinv * dn.row(a).transpose();
        const int c = 3 * a;
        bmat(0, c + 0) = grad(0);
        bmat(1, c + 1) = grad(1);
        bmat(2, c + 2) = grad(2);
        bmat(3, c + 0) = grad(1);
        bmat(3, c + 1) = grad(0);
        bmat(4, c + 1) = grad(2);
        bmat(4, c + 2) = grad(1);
        bmat(5, c + 0) = grad(2);
        bmat(5, c + 2) = grad(0);
      }
      ke += bmat.transpose() * dmat * bmat * det;
    }
    ke = 0.5 * (ke + ke.transpose()).eval();
    return ke;
  }

  void assemble_stiffness() {
    std::vector<Triplet> trips;
    std::array<index_t, 3> e;
    for (e[2] = 0; e[2] < n_[2]; ++e[2])
      for (e[1] = 0; e[1] < n_[1]; ++e[1])
        for (e[0] = 0; e[0] < n_[0]; ++e[0]) {
          std::array<index_t, 8> nodes;
          for (int a = 0; a < 8; ++a) nodes[static_cast<std::size_t>(a)] = corner_node(e, a);
          Eigen::Matrix<double, 24, 24> ke = element_stiffness(nodes);
          for (int a = 0; a < 8; ++a) {
            index_t da = node_dof_[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])];
            if (da < 0) continue;
            for (int b = 0; b < 8; ++b) {
              index_t db = node_dof_[static_cast<std::size_t>(nodes[static_cast<std::size_t>(b)])];
              if (db < 0) continue;
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                  trips.emplace_back(da + i, db + j, ke(3 * a + i, 3 * b + j));
            }
          }
        }
    index_t n_u = 3 * n_free_;
    a_ = symmetrize(from_triplets(n_u, n_u, std::move(trips)));
  }

  void assemble_coupling() {
    const index_t n_u = 3 * n_free_;
    if (!has_fracture_) {
      b_.n_rows = n_u;
      b_.n_cols = 0;
      b_.row_offsets.assign(static_cast<std::size_t>(n_u) + 1, 0);
      return;
    }
    int a1, a2;
    plane_axes(a1, a2);

    // Tributary interface areas: each interface quad spreads a quarter of
    // its area to its four corner pairs.
    std::vector<double> weight(static_cast<std::size_t>(plane_count_), 0.0);
    for (index_t q2 = 0; q2 < n_[a2]; ++q2)
      for (index_t q1 = 0; q1 < n_[a1]; ++q1) {
        std::array<std::array<double, 3>, 4> pt;
        const index_t corners[4][2] = {{q1, q2}, {q1 + 1, q2}, {q1 + 1, q2 + 1}, {q1, q2 + 1}};
        std::array<index_t, 4> ords;
        for (int k = 0; k < 4; ++k) {
          std::array<index_t, 3> c{};
          c[static_cast<std::size_t>(ax_)] = f_;
          c[static_cast<std::size_t>(a1)] = corners[k][0];
          c[static_cast<std::size_t>(a2)] = corners[k][1];
          ords[static_cast<std::size_t>(k)] = plane_ordinal(c);
          pt[static_cast<std::size_t>(k)] = coords_[static_cast<std::size_t>(node_id(c[0], c[1], c[2]))];
        }
        std::array<double, 3> d1, d2;
        for (int d = 0; d < 3; ++d) {
          d1[static_cast<std::size_t>(d)] = pt[2][static_cast<std::size_t>(d)] - pt[0][static_cast<std::size_t>(d)];
          d2[static_cast<std::size_t>(d)] = pt[3][static_cast<std::size_t>(d)] - pt[1][static_cast<std::size_t>(d)];
        }
        const double cx = d1[1] * d2[2] - d1[2] * d2[1];
        const double cy = d1[2] * d2[0] - d1[0] * d2[2];
        const double cz = d1[0] * d2[1] - d1[1] * d2[0];
        const double area = 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
        for (int k = 0; k < 4; ++k) weight[static_cast<std::size_t>(ords[static_cast<std::size_t>(k)])] += 0.25 * area;
      }

    std::vector<Triplet> trips;
    index_t n_active = 0;
    for (index_t q2 = 0; q2 <= n_[a2]; ++q2)
      for (index_t q1 = 0; q1 <= n_[a1]; ++q1) {
        std::array<index_t, 3> c{};
        c[static_cast<std::size_t>(ax_)] = f_;
        c[static_cast<std::size_t>(a1)] = q1;
        c[static_cast<std::size_t>(a2)] = q2;
        index_t base = node_id(c[0], c[1], c[2]);
        index_t ord = plane_ordinal(c);
        index_t dup = base_count_ + ord;
        index_t dof_minus = node_dof_[static_cast<std::size_t>(base)];
        index_t dof_plus = node_dof_[static_cast<std::size_t>(dup)];
        if (dof_minus < 0) continue;  // constrained pair carries no multipliers
        const double w = weight[static_cast<std::size_t>(ord)];
        for (int k = 0; k < 3; ++k) {
          int dir = (ax_ + k) % 3;  // normal direction first
          index_t col = 3 * n_active + k;
          trips.emplace_back(dof_minus + dir, col, w);
          trips.emplace_back(dof_plus + dir, col, -w);
        }
        ++n_active;
      }
    b_ = from_triplets(n_u, 3 * n_active, std::move(trips));
  }

  std::string label() const {
    return "hex-cube(" + std::to_string(n_[0]) + "x" + std::to_string(n_[1]) + "x" +
           std::to_string(n_[2]) + (has_fracture_ ? ", fractured" : "") + ")";
  }

  GridParams p_;
  index_t n_[3];
  double h_[3];
  int ax_ = 0;
  bool has_fracture_ = false;
  index_t f_ = -1;
  index_t base_count_ = 0;
  index_t plane_count_ = 0;
  index_t total_nodes_ = 0;
  index_t n_free_ = 0;
  std::vector<std::array<double, 3>> coords_;
  std::vector<bool> constrained_;
  std::vector<index_t> node_dof_;
  SparseMatrix a_;
  SparseMatrix b_;
};

}  // namespace

SaddleSystem generate_fracture_cube(const GridParams& p) {
  return HexBuilder(p, /*require_both_sides_anchored=*/true).build();
}

SaddleSystem generate_floating_side(const GridParams& p) {
  GridParams q = p;
  if (q.fracture_index < 0)
    throw std::invalid_argument("floating side: fracture plane required");
  q.dirichlet_faces = {min_face_of(q.fracture_axis)};
  SaddleSystem sys = HexBuilder(q, /*require_both_sides_anchored=*/false).build();
  sys.label += " floating";
  return sys;
}

SaddleSystem random_spd_saddle(index_t n_u, index_t n_t, std::uint64_t seed) {
  if (n_u <= 0 || n_t <= 0 || n_t >= n_u)
    throw std::invalid_argument("random saddle: need 0 < n_t < n_u");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> diag_dist(0.5, 1.5);
  std::uniform_real_distribution<double> off_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> mag_dist(0.3, 1.3);

  std::vector<Triplet> lt;
  for (index_t i = 0; i < n_u; ++i) {
    index_t max_off = std::min<index_t>(i, 3);
    index_t count = max_off > 0
                        ? std::uniform_int_distribution<index_t>(0, max_off)(rng)
                        : 0;
    std::set<index_t> cols;
    while (static_cast<index_t>(cols.size()) < count)
      cols.insert(std::uniform_int_distribution<index_t>(0, i - 1)(rng));
    for (index_t j : cols) lt.emplace_back(i, j, off_dist(rng));
    lt.emplace_back(i, i, diag_dist(rng));
  }
  SparseMatrix l = from_triplets(n_u, n_u, std::move(lt));
  SparseMatrix a0 = symmetrize(spmm(l, transpose(l)));
  double lambda_max = sym_eigenvalues(to_dense(a0)).back();
  SparseMatrix a = sparse_add(a0, identity(n_u), 1e-3 * lambda_max);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Triplet> bt;
    for (index_t col = 0; col < n_t; ++col) {
      index_t k = std::uniform_int_distribution<index_t>(2, std::min<index_t>(5, n_u))(rng);
      std::set<index_t> rows;
      while (static_cast<index_t>(rows.size()) < k)
        rows.insert(std::uniform_int_distribution<index_t>(0, n_u - 1)(rng));
      for (index_t r : rows) {
        double v = mag_dist(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) v = -v;
        bt.emplace_back(r, col, v);
      }
    }
    SparseMatrix b = from_triplets(n_u, n_t, std::move(bt));
    std::vector<double> sv = singular_values(to_dense(b));
    if (sv.back() > 1e-6 * sv.front()) {
      std::string label = "random(n_u=" + std::to_string(n_u) + ",n_t=" + std::to_string(n_t) +
                          ",seed=" + std::to_string(seed) + ")";
      return make_saddle_system(std::move(a), std::move(b), {}, label);
    }
  }
  throw std::runtime_error("random saddle: coupling block rank deficient after 10 redraws");
}

}  // namespace racp
