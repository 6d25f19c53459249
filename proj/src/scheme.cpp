#include "fracclique/scheme.hpp"

#include "fracclique/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace fracclique {

int classify(const EdgeKey& e1, const EdgeKey& e2) {
  if (e1 == e2) return 0;
  const bool same_parts = e1.a.part == e2.a.part && e1.b.part == e2.b.part;
  const bool share_vertex = e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b;
  if (same_parts) return share_vertex ? 1 : 2;
  const bool share_part = e1.a.part == e2.a.part || e1.a.part == e2.b.part ||
                          e1.b.part == e2.a.part || e1.b.part == e2.b.part;
  if (share_part) return share_vertex ? 3 : 4;
  return 5;
}

namespace {

long long choose2(long long a) { return a < 2 ? 0 : a * (a - 1) / 2; }

using Table = std::array<std::array<long long, kNumClasses>, kNumClasses>;

// Row i, column j of the table for p_ij^k.
Table intersection_table(int k, long long r, long long n) {
  const long long n1 = n - 1;
  const long long n2 = n - 2;
  switch (k) {
    case 0:
      return {{{1, 0, 0, 0, 0, 0},
               {0, 2 * n1, 0, 0, 0, 0},
               {0, 0, n1 * n1, 0, 0, 0},
               {0, 0, 0, 2 * (r - 2) * n, 0, 0},
               {0, 0, 0, 0, 2 * (r - 2) * n1 * n, 0},
               {0, 0, 0, 0, 0, choose2(r - 2) * n * n}}};
    case 1:
      return {{{0, 1, 0, 0, 0, 0},
               {1, n2, n1, 0, 0, 0},
               {0, n1, n1 * n2, 0, 0, 0},
               {0, 0, 0, (r - 2) * n, (r - 2) * n, 0},
               {0, 0, 0, (r - 2) * n, (r - 2) * (2 * n - 3) * n, 0},
               {0, 0, 0, 0, 0, choose2(r - 2) * n * n}}};
    case 2:
      return {{{0, 0, 1, 0, 0, 0},
               {0, 2, 2 * n2, 0, 0, 0},
               {1, 2 * n2, n2 * n2, 0, 0, 0},
               {0, 0, 0, 0, 2 * (r - 2) * n, 0},
               {0, 0, 0, 2 * (r - 2) * n, 2 * (r - 2) * n2 * n, 0},
               {0, 0, 0, 0, 0, choose2(r - 2) * n * n}}};
    case 3:
      return {{{0, 0, 0, 1, 0, 0},
               {0, 0, 0, n1, n1, 0},
               {0, 0, 0, 0, n1 * n1, 0},
               {1, n1, 0, (r - 3) * n + 1, n1, (r - 3) * n},
               {0, n1, n1 * n1, n1, ((r - 2) * n - 1) * n1, (r - 3) * n1 * n},
               {0, 0, 0, (r - 3) * n, (r - 3) * n1 * n, choose2(r - 3) * n * n}}};
    case 4:
      return {{{0, 0, 0, 0, 1, 0},
               {0, 0, 0, 1, 2 * n - 3, 0},
               {0, 0, 0, n1, n1 * n2, 0},
               {0, 1, n1, 1, (r - 2) * n - 1, (r - 3) * n},
               {1, 2 * n - 3, n1 * n2, (r - 2) * n - 1, (r - 3) * n2 * n + n1 * n1, (r - 3) * n1 * n},
               {0, 0, 0, (r - 3) * n, (r - 3) * n1 * n, choose2(r - 3) * n * n}}};
    case 5:
      return {{{0, 0, 0, 0, 0, 1},
               {0, 0, 0, 0, 0, 2 * n1},
               {0, 0, 0, 0, 0, n1 * n1},
               {0, 0, 0, 4, 4 * n1, 2 * (r - 4) * n},
               {0, 0, 0, 4 * n1, 4 * n1 * n1, 2 * (r - 4) * n1 * n},
               {1, 2 * n1, n1 * n1, 2 * (r - 4) * n, 2 * (r - 4) * n1 * n, choose2(r - 4) * n * n}}};
    default:
      throw std::out_of_range("relation class out of range");
  }
}

void check_indices(int i, int j, int k) {
  for (int x : {i, j, k})
    if (x < 0 || x >= kNumClasses) throw std::out_of_range("relation class out of range");
}

}  // namespace

long long intersection_number(int i, int j, int k, int r, int n) {
  check_indices(i, j, k);
  if (r < 4) throw std::invalid_argument("the edge scheme needs at least 4 parts");
  if (n < 1) throw std::invalid_argument("part size must be positive");
  return intersection_table(k, r, n)[i][j];
}

long long valency(int j, int r, int n) { return intersection_number(j, j, 0, r, n); }

Matrix6Q multiply(const Matrix6Q& a, const Matrix6Q& b) {
  Matrix6Q out;
  for (int i = 0; i < kNumClasses; ++i)
    for (int j = 0; j < kNumClasses; ++j) {
      Rational acc = 0;
      for (int k = 0; k < kNumClasses; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  return out;
}

Matrix6Q identity6() {
  Matrix6Q id;
  for (int i = 0; i < kNumClasses; ++i)
    for (int j = 0; j < kNumClasses; ++j) id[i][j] = i == j ? 1 : 0;
  return id;
}

Eigenmatrices eigenmatrices(int r, int n) {
  if (r < 4) throw std::invalid_argument("the edge scheme needs at least 4 parts");
  if (n < 1) throw std::invalid_argument("part size must be positive");
  const Rational R = r;
  const Rational N = n;
  const Rational N1 = N - 1;
  Eigenmatrices eig;
  auto& C = eig.C;
  C[0] = {1, 1, 1, 1, 1, 1};
  C[1] = {2 * N1, 2 * N1, 2 * N1, N - 2, N - 2, -2};
  C[2] = {N1 * N1, N1 * N1, N1 * N1, 1 - N, 1 - N, 1};
  C[3] = {2 * (R - 2) * N, (R - 4) * N, -2 * N, (R - 2) * N, -N, 0};
  C[4] = {2 * (R - 2) * N1 * N, (R - 4) * N1 * N, 2 * (1 - N) * N, (2 - R) * N, N, 0};
  C[5] = {Rational(binom(r - 2, 2)) * N * N, (3 - R) * N * N, N * N, 0, 0, 0};

  const Rational cr2 = Rational(binom(r, 2));
  const Rational scale = 1 / (cr2 * N * N);
  auto& D = eig.D;
  const Rational d13 = (R - 4) * (R - 1) / (2 * (R - 2));
  const Rational d23 = R * (3 - R) / (2 * (R - 2));
  D[0] = {1, 1, 1, 1, 1, 1};
  D[1] = {R - 1, R - 1, R - 1, d13, d13, 2 * (1 - R) / (R - 2)};
  D[2] = {R * (R - 3) / 2, R * (R - 3) / 2, R * (R - 3) / 2, d23, d23, R / (R - 2)};
  D[3] = {R * N1, R * (N - 2) / 2, -R, R * N1 / 2, -R / 2, 0};
  D[4] = {R * (R - 2) * N1, R * (R - 2) * (N - 2) / 2, R * (2 - R), R * (1 - N) / 2, R / 2, 0};
  D[5] = {cr2 * N1 * N1, cr2 * (1 - N), cr2, 0, 0, 0};
  for (auto& row : D)
    for (auto& x : row) x *= scale;
  return eig;
}

SchemeElement SchemeElement::adjacency(int i) {
  SchemeElement e;
  e.basis = Basis::adjacency;
  e.coeff.fill(0);
  e.coeff.at(i) = 1;
  return e;
}

SchemeElement SchemeElement::idempotent(int i) {
  SchemeElement e = adjacency(i);
  e.basis = Basis::idempotent;
  return e;
}

SchemeElement SchemeElement::in_basis(Basis target, const Eigenmatrices& eig) const {
  if (target == basis) return *this;
  // Row vector times C (A -> E) or times D (E -> A).
  const Matrix6Q& m = basis == Basis::adjacency ? eig.C : eig.D;
  SchemeElement out;
  out.basis = target;
  for (int j = 0; j < kNumClasses; ++j) {
    Rational acc = 0;
    for (int i = 0; i < kNumClasses; ++i) acc += coeff[i] * m[i][j];
    out.coeff[j] = acc;
  }
  return out;
}

std::array<double, kNumClasses> SchemeElement::adjacency_coefficients(
    const Eigenmatrices& eig) const {
  const SchemeElement a = in_basis(Basis::adjacency, eig);
  std::array<double, kNumClasses> out{};
  for (int j = 0; j < kNumClasses; ++j) out[j] = to_double(a.coeff[j]);
  return out;
}

EdgeVector::EdgeVector(const PartiteStructure& ps, double fill)
    : ps_(ps), values_(ps.num_edges(), fill) {}

EdgeVector::EdgeVector(const PartiteStructure& ps, std::vector<double> values)
    : ps_(ps), values_(std::move(values)) {
  if (static_cast<long long>(values_.size()) != ps_.num_edges())
    throw std::invalid_argument("edge vector length does not match the host edge count");
}

EdgeVector& EdgeVector::refresh(int workers) {
  const int r = ps_.r;
  const int n = ps_.n;
  const long long nn = static_cast<long long>(n) * n;
  agg_.pair_sum.assign(static_cast<std::size_t>(r) * r, 0.0);
  agg_.vertex_sum.assign(static_cast<std::size_t>(r) * n * r, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) pairs.emplace_back(p, q);

  // Each part pair owns a disjoint slice of Q and one entry of P.
  parallel_for(static_cast<long long>(pairs.size()), workers, [&](long long b, long long e, int) {
    for (long long k = b; k < e; ++k) {
      const auto [p, q] = pairs[k];
      const double* block = values_.data() + k * nn;
      double sum = 0;
      for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) {
          row += block[i * n + j];
          agg_.vertex_sum[(static_cast<std::size_t>(q) * n + j) * r + p] += block[i * n + j];
        }
        agg_.vertex_sum[(static_cast<std::size_t>(p) * n + i) * r + q] = row;
        sum += row;
      }
      agg_.pair_sum[p * r + q] = sum;
      agg_.pair_sum[q * r + p] = sum;
    }
  });

  agg_.part_sum.assign(r, 0.0);
  agg_.total = 0;
  for (int p = 0; p < r; ++p) {
    for (int q = 0; q < r; ++q) agg_.part_sum[p] += agg_.pair_sum[p * r + q];
    agg_.total += agg_.part_sum[p];
  }
  agg_.total /= 2;
  agg_.vertex_tot.assign(static_cast<std::size_t>(r) * n, 0.0);
  for (int v = 0; v < r * n; ++v)
    for (int k = 0; k < r; ++k) agg_.vertex_tot[v] += agg_.vertex_sum[static_cast<std::size_t>(v) * r + k];
  fresh_ = true;
  return *this;
}

const EdgeAggregates& EdgeVector::aggregates() const {
  if (!fresh_) throw std::logic_error("edge vector aggregates are stale; call refresh()");
  return agg_;
}

double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector lengths differ");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

EdgeVector apply_adjacency_combination(const std::array<double, kNumClasses>& coeff,
                                       const EdgeVector& v, int workers) {
  const auto& agg = v.aggregates();
  const auto& ps = v.structure();
  const int r = ps.r;
  const int n = ps.n;
  const long long nn = static_cast<long long>(n) * n;
  EdgeVector out(ps);
  auto dst = out.mutable_values();
  auto src = v.values();

  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < r; ++p)
    for (int q = p + 1; q < r; ++q) pairs.emplace_back(p, q);

  parallel_for(static_cast<long long>(pairs.size()), workers, [&](long long b, long long e, int) {
    for (long long k = b; k < e; ++k) {
      const auto [p, q] = pairs[k];
      const double pij = agg.pair_sum[p * r + q];
      const double a5 = agg.total - agg.part_sum[p] - agg.part_sum[q] + pij;
      const double shared_parts = agg.part_sum[p] + agg.part_sum[q] - 2 * pij;
      for (int i = 0; i < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(p) * n + i;
        const double qa = agg.vertex_sum[u * r + q];
        const double qa_other = agg.vertex_tot[u] - qa;
        for (int j = 0; j < n; ++j) {
          const std::size_t w = static_cast<std::size_t>(q) * n + j;
          const long long idx = k * nn + static_cast<long long>(i) * n + j;
          const double x = src[idx];
          const double qb = agg.vertex_sum[w * r + p];
          const double a1 = qa + qb - 2 * x;
          const double a2 = pij - qa - qb + x;
          const double a3 = qa_other + (agg.vertex_tot[w] - qb);
          const double a4 = shared_parts - a3;
          dst[idx] = coeff[0] * x + coeff[1] * a1 + coeff[2] * a2 + coeff[3] * a3 +
                     coeff[4] * a4 + coeff[5] * a5;
        }
      }
    }
  });
  return out;
}

EdgeVector apply_adjacency(int i, const EdgeVector& v, int workers) {
  if (i < 0 || i >= kNumClasses) throw std::out_of_range("relation class out of range");
  std::array<double, kNumClasses> coeff{};
  coeff[i] = 1.0;
  return apply_adjacency_combination(coeff, v, workers);
}

EdgeVector apply_scheme_element(const SchemeElement& elem, const EdgeVector& v,
                                const Eigenmatrices& eig, int workers) {
  return apply_adjacency_combination(elem.adjacency_coefficients(eig), v, workers);
}

EdgeVector apply_idempotent(int i, const EdgeVector& v, const Eigenmatrices& eig, int workers) {
  return apply_scheme_element(SchemeElement::idempotent(i), v, eig, workers);
}

}  // namespace fracclique
