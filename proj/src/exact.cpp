#include "qnet/exact.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

namespace qnet::exact {

namespace {

using Complex = std::complex<double>;

std::vector<long long> layout_strides(const std::vector<Subsystem>& layout) {
  std::vector<long long> stride(layout.size(), 1);
  for (int i = static_cast<int>(layout.size()) - 2; i >= 0; --i)
    stride[i] = stride[i + 1] * layout[i + 1].dim;
  return stride;
}

long long layout_dim(const std::vector<Subsystem>& layout) {
  long long d = 1;
  for (const auto& s : layout) d *= s.dim;
  return d;
}

/// Reorders subsystems; order[k] names the old index that moves to slot k.
DenseState permute_subsystems(const DenseState& state, const std::vector<int>& order) {
  const auto& layout = state.layout;
  const long long dim = state.dim();
  auto old_strides = layout_strides(layout);
  std::vector<Subsystem> new_layout;
  new_layout.reserve(order.size());
  for (int o : order) new_layout.push_back(layout[o]);
  auto new_strides = layout_strides(new_layout);

  std::vector<long long> map(dim);
  std::vector<int> comp(layout.size());
  for (long long r = 0; r < dim; ++r) {
    long long rest = r;
    for (size_t i = 0; i < layout.size(); ++i) {
      comp[i] = static_cast<int>(rest / old_strides[i]);
      rest %= old_strides[i];
    }
    long long rn = 0;
    for (size_t k = 0; k < order.size(); ++k)
      rn += static_cast<long long>(comp[order[k]]) * new_strides[k];
    map[r] = rn;
  }
  DenseState out;
  out.layout = std::move(new_layout);
  out.mat = Matrix::Zero(dim, dim);
  for (long long r = 0; r < dim; ++r)
    for (long long c = 0; c < dim; ++c) out.mat(map[r], map[c]) = state.mat(r, c);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long long i = 0; i < a.rows(); ++i)
    for (long long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix isotropic_matrix(int d, double p) {
  const long long dim = static_cast<long long>(d) * d;
  Matrix m = Matrix::Identity(dim, dim) * ((1.0 - p) / static_cast<double>(dim));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(static_cast<long long>(i) * d + i, static_cast<long long>(j) * d + j) +=
          p / static_cast<double>(d);
  return m;
}

Matrix max_ent_projector(int d) { return isotropic_matrix(d, 1.0); }

/// Generalized Pauli W = X^a Z^b on C^d.
Matrix weyl_operator(int d, int a, int b) {
  Matrix w = Matrix::Zero(d, d);
  const double twopi = 2.0 * M_PI;
  for (int j = 0; j < d; ++j) {
    Complex phase = std::polar(1.0, twopi * b * j / d);
    w((j + a) % d, j) = phase;
  }
  return w;
}

/// (I (x) U (x) I) rho (I (x) U (x) I)^dagger with U on subsystem k.
Matrix apply_local(const Matrix& rho, const std::vector<Subsystem>& layout, int k,
                   const Matrix& u) {
  auto strides = layout_strides(layout);
  const long long dim = rho.rows();
  const int dk = layout[k].dim;
  const long long sk = strides[k];
  Matrix tmp = Matrix::Zero(dim, dim);
  // Left multiply.
  for (long long r = 0; r < dim; ++r) {
    int rk = static_cast<int>((r / sk) % dk);
    long long base = r - static_cast<long long>(rk) * sk;
    for (int x = 0; x < dk; ++x) {
      Complex coeff = u(x, rk);
      if (coeff == Complex{0, 0}) continue;
      tmp.row(base + static_cast<long long>(x) * sk) += coeff * rho.row(r);
    }
  }
  Matrix out = Matrix::Zero(dim, dim);
  for (long long c = 0; c < dim; ++c) {
    int ck = static_cast<int>((c / sk) % dk);
    long long base = c - static_cast<long long>(ck) * sk;
    for (int x = 0; x < dk; ++x) {
      Complex coeff = std::conj(u(x, ck));
      if (coeff == Complex{0, 0}) continue;
      out.col(base + static_cast<long long>(x) * sk) += coeff * tmp.col(c);
    }
  }
  return out;
}

}  // namespace

std::vector<int> DenseState::subsystems_of_parties(const std::vector<int>& parties) const {
  std::vector<int> out;
  for (size_t i = 0; i < layout.size(); ++i)
    if (std::find(parties.begin(), parties.end(), layout[i].party) != parties.end())
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> DenseState::subsystems_of_edges(const std::vector<int>& edges) const {
  std::vector<int> out;
  for (size_t i = 0; i < layout.size(); ++i)
    if (std::find(edges.begin(), edges.end(), layout[i].edge) != edges.end())
      out.push_back(static_cast<int>(i));
  return out;
}

void DenseState::validate(double tol) const {
  if (mat.rows() != mat.cols()) throw Error("density matrix must be square");
  if (mat.rows() != layout_dim(layout))
    throw Error("layout dimensions do not match the matrix");
  if (std::abs(mat.trace().real() - 1.0) > tol || std::abs(mat.trace().imag()) > tol)
    throw Error("trace differs from 1");
  double herm = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw Error("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((mat + mat.adjoint()) / 2.0,
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw Error("matrix has a negative eigenvalue");
}

DenseState build_isotropic(const iso::IsotropicParams& params, long long dim_cap) {
  iso::validate(params);
  const long long dim = static_cast<long long>(params.d) * params.d;
  if (dim > dim_cap) throw Error("state dimension exceeds the cap");
  DenseState s;
  s.mat = isotropic_matrix(params.d, params.p);
  s.layout = {{params.d, 0, 0}, {params.d, 1, 0}};
  return s;
}

DenseState build_network_state(const Graph& g, const iso::IsotropicParams& params,
                               long long dim_cap) {
  iso::validate(params);
  if (g.edge_count() == 0) throw Error("network state needs at least one edge");
  long long dim = 1;
  for (int e = 0; e < g.edge_count(); ++e) {
    dim *= static_cast<long long>(params.d) * params.d;
    if (dim > dim_cap) throw Error("state dimension exceeds the cap");
  }
  DenseState s;
  s.mat = Matrix::Ones(1, 1);
  Matrix link = isotropic_matrix(params.d, params.p);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges()[e];
    s.mat = kron(s.mat, link);
    s.layout.push_back({params.d, u, e});
    s.layout.push_back({params.d, v, e});
  }
  // Canonical order: parties ascending, edge factors ascending within a party.
  std::vector<int> order(s.layout.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair{s.layout[a].party, s.layout[a].edge} <
           std::pair{s.layout[b].party, s.layout[b].edge};
  });
  return permute_subsystems(s, order);
}

DenseState partial_trace(const DenseState& state, const std::vector<int>& subsystem_indices) {
  std::vector<int> traced = subsystem_indices;
  std::sort(traced.begin(), traced.end());
  traced.erase(std::unique(traced.begin(), traced.end()), traced.end());
  for (int t : traced)
    if (t < 0 || t >= static_cast<int>(state.layout.size()))
      throw Error("unknown subsystem index");

  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(state.layout.size()); ++i)
    if (!std::binary_search(traced.begin(), traced.end(), i)) kept.push_back(i);

  // Move traced subsystems to the back, keeping relative order of the rest.
  std::vector<int> order = kept;
  order.insert(order.end(), traced.begin(), traced.end());
  DenseState perm = permute_subsystems(state, order);

  long long keep_dim = 1;
  for (int i : kept) keep_dim *= state.layout[i].dim;
  long long traced_dim = state.dim() / keep_dim;

  DenseState out;
  for (size_t k = 0; k < kept.size(); ++k) out.layout.push_back(state.layout[kept[k]]);
  out.mat = Matrix::Zero(keep_dim, keep_dim);
  for (long long r = 0; r < keep_dim; ++r)
    for (long long c = 0; c < keep_dim; ++c) {
      Complex sum{0, 0};
      for (long long t = 0; t < traced_dim; ++t)
        sum += perm.mat(r * traced_dim + t, c * traced_dim + t);
      out.mat(r, c) = sum;
    }
  return out;
}

DenseState partial_trace_edges(const DenseState& state, const std::vector<int>& edges) {
  auto idx = state.subsystems_of_edges(edges);
  if (idx.size() != 2 * edges.size()) throw Error("unknown edge label");
  return partial_trace(state, idx);
}

DenseState partial_trace_parties(const DenseState& state, const std::vector<int>& parties) {
  auto idx = state.subsystems_of_parties(parties);
  if (idx.empty()) throw Error("unknown party label");
  return partial_trace(state, idx);
}

double ppt_min_eigenvalue(const DenseState& state, const std::vector<int>& parties) {
  auto idx = state.subsystems_of_parties(parties);
  if (idx.empty() || idx.size() == state.layout.size())
    throw Error("partial transpose needs a nontrivial bipartition");
  std::vector<char> flip(state.layout.size(), 0);
  for (int i : idx) flip[i] = 1;

  auto strides = layout_strides(state.layout);
  const long long dim = state.dim();
  Matrix pt(dim, dim);
  std::vector<int> rc(state.layout.size()), cc(state.layout.size());
  for (long long r = 0; r < dim; ++r) {
    long long rest = r;
    for (size_t i = 0; i < state.layout.size(); ++i) {
      rc[i] = static_cast<int>(rest / strides[i]);
      rest %= strides[i];
    }
    for (long long c = 0; c < dim; ++c) {
      long long rest2 = c;
      for (size_t i = 0; i < state.layout.size(); ++i) {
        cc[i] = static_cast<int>(rest2 / strides[i]);
        rest2 %= strides[i];
      }
      long long rr = 0, cccol = 0;
      for (size_t i = 0; i < state.layout.size(); ++i) {
        int a = rc[i], b = cc[i];
        if (flip[i]) std::swap(a, b);
        rr += static_cast<long long>(a) * strides[i];
        cccol += static_cast<long long>(b) * strides[i];
      }
      pt(rr, cccol) = state.mat(r, c);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((pt + pt.adjoint()) / 2.0,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double fidelity_with_max_ent(const DenseState& state, int d) {
  if (state.dim() != static_cast<long long>(d) * d)
    throw Error("fidelity target needs a bipartite d x d state");
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(state.dim());
  for (int i = 0; i < d; ++i)
    phi(static_cast<long long>(i) * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  Complex val = phi.adjoint() * state.mat * phi;
  return val.real();
}

DenseState teleport_once(const DenseState& state, int middle_party) {
  std::vector<int> mid;
  for (size_t i = 0; i < state.layout.size(); ++i)
    if (state.layout[i].party == middle_party) mid.push_back(static_cast<int>(i));
  if (mid.size() != 2) throw Error("middle party must hold exactly two subsystems");
  const int d = state.layout[mid[0]].dim;
  if (state.layout[mid[1]].dim != d) throw Error("middle subsystems must share dimension");
  // Lower edge index = teleported input, higher = resource.
  if (state.layout[mid[0]].edge > state.layout[mid[1]].edge) std::swap(mid[0], mid[1]);
  const int resource_edge = state.layout[mid[1]].edge;
  int far = -1;
  for (size_t i = 0; i < state.layout.size(); ++i)
    if (state.layout[i].edge == resource_edge && static_cast<int>(i) != mid[1])
      far = static_cast<int>(i);
  if (far < 0) throw Error("resource edge has no far endpoint");

  std::vector<int> others;
  for (int i = 0; i < static_cast<int>(state.layout.size()); ++i)
    if (i != mid[0] && i != mid[1]) others.push_back(i);
  int far_pos = static_cast<int>(
      std::find(others.begin(), others.end(), far) - others.begin());

  std::vector<int> order = others;
  order.push_back(mid[0]);
  order.push_back(mid[1]);
  DenseState perm = permute_subsystems(state, order);

  const long long d2 = static_cast<long long>(d) * d;
  const long long out_dim = state.dim() / d2;
  std::vector<Subsystem> out_layout;
  for (int i : others) out_layout.push_back(state.layout[i]);

  Matrix acc = Matrix::Zero(out_dim, out_dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Matrix w = weyl_operator(d, a, b);
      // bell = (I (x) W)|phi+>, components bell[i*d+j] = W(j,i)/sqrt(d).
      Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(d2);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          bell(static_cast<long long>(i) * d + j) = w(j, i) / std::sqrt(static_cast<double>(d));
      Matrix projected(out_dim, out_dim);
      for (long long r = 0; r < out_dim; ++r)
        for (long long c = 0; c < out_dim; ++c) {
          Complex sum{0, 0};
          for (long long m = 0; m < d2; ++m) {
            if (bell(m) == Complex{0, 0}) continue;
            for (long long mp = 0; mp < d2; ++mp) {
              if (bell(mp) == Complex{0, 0}) continue;
              sum += std::conj(bell(m)) * perm.mat(r * d2 + m, c * d2 + mp) * bell(mp);
            }
          }
          projected(r, c) = sum;
        }
      Matrix correction = w.transpose();
      acc += apply_local(projected, out_layout, far_pos, correction);
    }
  }
  DenseState out;
  out.mat = std::move(acc);
  out.layout = std::move(out_layout);
  return out;
}

DenseState depolarize_edge(const DenseState& state, int edge, double lam) {
  if (!(lam >= 0.0 && lam <= 1.0)) throw Error("depolarizing weight must lie in [0,1]");
  auto idx = state.subsystems_of_edges({edge});
  if (idx.size() != 2) throw Error("unknown edge label");
  DenseState rest = partial_trace(state, idx);
  const long long pair_dim =
      static_cast<long long>(state.layout[idx[0]].dim) * state.layout[idx[1]].dim;

  // Embed Itilde (x) rest back at the original subsystem positions.
  // Build in [rest..., pair...] order, then permute home.
  DenseState embedded;
  embedded.mat = kron(rest.mat, Matrix::Identity(pair_dim, pair_dim) /
                                    static_cast<double>(pair_dim));
  embedded.layout = rest.layout;
  embedded.layout.push_back(state.layout[idx[0]]);
  embedded.layout.push_back(state.layout[idx[1]]);

  // Recover the original order: each original slot is found in the embedded
  // layout (rest keeps relative order, pair sits at the back).
  std::vector<int> order;
  int rest_pos = 0;
  for (int i = 0; i < static_cast<int>(state.layout.size()); ++i) {
    if (i == idx[0]) {
      order.push_back(static_cast<int>(rest.layout.size()));
    } else if (i == idx[1]) {
      order.push_back(static_cast<int>(rest.layout.size()) + 1);
    } else {
      order.push_back(rest_pos);
      ++rest_pos;
    }
  }
  DenseState noise = permute_subsystems(embedded, order);
  DenseState out;
  out.layout = state.layout;
  out.mat = lam * state.mat + (1.0 - lam) * noise.mat;
  return out;
}

bool WitnessDecomposition::all_blocks_separable() const {
  for (const auto& b : blocks)
    if (!b.separable) return false;
  return true;
}

bool WitnessDecomposition::valid() const {
  if (!overdraft_report.empty()) return false;
  if (!all_blocks_separable()) return false;
  if (std::abs(weight_sum - 1.0) > 1e-10) return false;
  if (residual_checked && residual_norm > 1e-9) return false;
  return true;
}

WitnessDecomposition reconstruct_bs_witness(const Graph& g,
                                            const iso::IsotropicParams& params,
                                            const std::vector<int>& subset,
                                            long long residual_dim_cap) {
  iso::validate(params);
  const int E = g.edge_count();
  if (E > 20) throw Error("witness enumeration budget is |E| <= 20");
  if (E == 0) throw Error("witness needs at least one edge");
  if (subset.empty()) throw Error("witness subset must be nonempty");
  std::vector<int> vp = subset;
  std::sort(vp.begin(), vp.end());
  vp.erase(std::unique(vp.begin(), vp.end()), vp.end());
  for (int v : vp)
    if (v < 0 || v >= g.vertex_count()) throw Error("subset vertex out of range");

  const double p = params.p;
  const int d = params.d;
  const std::uint64_t full = (E == 64) ? ~0ULL : ((1ULL << E) - 1);
  std::vector<std::uint64_t> vmask(g.vertex_count(), 0);
  for (int e = 0; e < E; ++e) {
    auto [u, v] = g.edges()[e];
    vmask[u] |= 1ULL << e;
    vmask[v] |= 1ULL << e;
  }

  std::vector<double> pow_p(E + 1), pow_q(E + 1);
  pow_p[0] = pow_q[0] = 1.0;
  for (int k = 1; k <= E; ++k) {
    pow_p[k] = pow_p[k - 1] * p;
    pow_q[k] = pow_q[k - 1] * (1.0 - p);
  }
  auto weight_of = [&](std::uint64_t mask) {
    int k = std::popcount(mask);
    return pow_p[k] * pow_q[E - k];
  };

  const double vp_size = static_cast<double>(vp.size());
  std::vector<double> draws(1ULL << E, 0.0);
  std::map<std::pair<int, int>, WitnessBlockClass> classes;

  const std::uint64_t n_masks = 1ULL << E;
  for (std::uint64_t f = 0; f < n_masks; ++f) {
    bool covered = true;
    for (int v = 0; v < g.vertex_count() && covered; ++v)
      if ((f & vmask[v]) == 0) covered = false;
    if (!covered) continue;  // handled as leftover after draws are known

    const double wf = weight_of(f);
    for (int v : vp) {
      const int deg = g.degree(v);
      const int k = std::popcount(f & vmask[v]);
      const std::uint64_t partner = f & ~vmask[v];
      const double wp = weight_of(partner);
      const double lent = wp / (std::exp2(deg) - 1.0);
      draws[partner] += lent;

      auto& cls = classes[{v, k}];
      cls.vertex = v;
      cls.fv_size = k;
      cls.count += 1;
      cls.weight += wf / vp_size + lent;
      if (cls.iso_parameter == 0.0) {
        const double a = 1.0 / vp_size;
        const double beta = (p > 0.0)
                                ? std::pow((1.0 - p) / p, k) / (std::exp2(deg) - 1.0)
                                : std::numeric_limits<double>::infinity();
        cls.iso_parameter = std::isinf(beta) ? 0.0 : a / (a + beta);
        cls.sep_threshold = 1.0 / (std::pow(static_cast<double>(d), k) + 1.0);
        cls.separable = cls.iso_parameter <= cls.sep_threshold + 1e-12;
      }
    }
  }

  WitnessDecomposition out;
  for (auto& [key, cls] : classes) out.blocks.push_back(cls);

  double block_weight = 0.0;
  for (const auto& b : out.blocks) block_weight += b.weight;

  std::vector<double> leftover(n_masks, 0.0);
  for (std::uint64_t m = 0; m < n_masks; ++m) {
    bool covered = true;
    for (int v = 0; v < g.vertex_count() && covered; ++v)
      if ((m & vmask[v]) == 0) covered = false;
    if (covered) continue;
    const double avail = weight_of(m);
    leftover[m] = avail - draws[m];
    if (draws[m] > avail + 1e-12) out.overdraft_report.push_back({m, avail, draws[m]});
    out.leftover_weight += leftover[m];
    if (leftover[m] > 1e-15) out.leftover_count += 1;
  }
  out.weight_sum = block_weight + out.leftover_weight;

  // Dense reassembly check when the full matrix is affordable.
  long long dim = 1;
  bool fits = true;
  for (int e = 0; e < E; ++e) {
    dim *= static_cast<long long>(d) * d;
    if (dim > residual_dim_cap) {
      fits = false;
      break;
    }
  }
  if (fits) {
    // Emitted coefficient per edge subset: covered masks keep their full
    // weight through the per-vertex split, others carry draws + leftover.
    std::vector<double> coef(n_masks, 0.0);
    for (std::uint64_t m = 0; m < n_masks; ++m) {
      bool covered = true;
      for (int v = 0; v < g.vertex_count() && covered; ++v)
        if ((m & vmask[v]) == 0) covered = false;
      coef[m] = covered ? weight_of(m) : draws[m] + leftover[m];
    }
    Matrix phi = max_ent_projector(d);
    Matrix ident = Matrix::Identity(static_cast<long long>(d) * d,
                                    static_cast<long long>(d) * d) /
                   (static_cast<double>(d) * d);
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::uint64_t m = 0; m < n_masks; ++m) {
      Matrix term = Matrix::Ones(1, 1);
      for (int e = 0; e < E; ++e) term = kron(term, (m >> e) & 1 ? phi : ident);
      sum += coef[m] * term;
    }
    // Compare in edge-major order: permute the reference the same way.
    DenseState ref = build_network_state(g, params, residual_dim_cap);
    std::vector<Subsystem> edge_major;
    for (int e = 0; e < E; ++e) {
      auto [u, v] = g.edges()[e];
      edge_major.push_back({d, u, e});
      edge_major.push_back({d, v, e});
    }
    std::vector<int> order;
    std::vector<char> used(ref.layout.size(), 0);
    for (const auto& want : edge_major)
      for (size_t i = 0; i < ref.layout.size(); ++i)
        if (!used[i] && ref.layout[i].party == want.party &&
            ref.layout[i].edge == want.edge) {
          order.push_back(static_cast<int>(i));
          used[i] = 1;
          break;
        }
    DenseState ref_edge_major = permute_subsystems(ref, order);
    out.residual_norm = (sum - ref_edge_major.mat).norm();
    out.residual_checked = true;
  }
  return out;
}

}  // namespace qnet::exact
