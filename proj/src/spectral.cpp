#include "fracclique/spectral.hpp"

#include <stdexcept>

namespace fracclique {

namespace {

void require_scheme_range(int r, int s, int n) {
  PartiteStructure{r, n, s}.validate();
  if (r < 4) throw std::invalid_argument("the edge scheme needs at least 4 parts");
}

}  // namespace

SchemeElement mgamma_element(int r, int s, int n) {
  require_scheme_range(r, s, n);
  SchemeElement m;
  m.basis = Basis::adjacency;
  m.coeff.fill(0);
  m.coeff[0] = Rational(binom(r - 2, s - 2)) * rpow(n, s - 2);
  m.coeff[3] = Rational(binom(r - 3, s - 3)) * rpow(n, s - 3);
  m.coeff[5] = Rational(binom(r - 4, s - 4)) * rpow(n, s - 4);
  return m;
}

bool SpectrumTable::all_positive() const {
  for (const auto& l : eigenvalues)
    if (l <= 0) return false;
  return true;
}

SchemeElement SpectrumTable::as_element() const {
  SchemeElement e;
  e.basis = Basis::idempotent;
  e.coeff = eigenvalues;
  return e;
}

SpectrumTable spectrum(int r, int s, int n, std::optional<Rational> eta) {
  require_scheme_range(r, s, n);
  if (s >= r) throw std::invalid_argument("spectrum requires s < r");
  if (eta && r != s + 1) throw std::invalid_argument("the eta shift only applies when r = s + 1");
  const Rational base = Rational(binom(r - 2, s - 2)) * rpow(n, s - 2);
  const Rational R = r;
  const Rational S = s;
  SpectrumTable t;
  t.eigenvalues[0] = S * (S - 1) / 2 * base;
  t.eigenvalues[1] = (R - S) * (S - 1) / (R - 2) * base;
  t.eigenvalues[2] = (R - S - 1) * (R - S) / ((R - 2) * (R - 3)) * base;
  t.eigenvalues[3] = (S - 1) * base;
  t.eigenvalues[4] = (R - S) / (R - 2) * base;
  t.eigenvalues[5] = base;
  if (eta) t.eigenvalues[2] = *eta;
  t.eta = eta;

  const Integer N = n;
  t.multiplicities[0] = 1;
  t.multiplicities[1] = r - 1;
  t.multiplicities[2] = Integer(r) * (r - 3) / 2;
  t.multiplicities[3] = Integer(r) * (N - 1);
  t.multiplicities[4] = Integer(r) * (r - 2) * (N - 1);
  t.multiplicities[5] = binom(r, 2) * (N - 1) * (N - 1);
  return t;
}

Rational eta_star(int s, int n) { return rpow(n, s - 2) * s / (s + 2); }

SchemeOperator::SchemeOperator(const PartiteStructure& ps, const SchemeElement& elem)
    : coeff_(elem.adjacency_coefficients(eigenmatrices(ps.r, ps.n))) {}

EdgeVector SchemeOperator::apply(const EdgeVector& v, int workers) const {
  return apply_adjacency_combination(coeff_, v, workers);
}

SchemeOperator mgamma_operator(const PartiteStructure& ps) {
  return SchemeOperator(ps, mgamma_element(ps.r, ps.s, ps.n));
}

SchemeOperator mgamma_eta_operator(const PartiteStructure& ps, const Rational& eta) {
  return SchemeOperator(ps, spectrum(ps.r, ps.s, ps.n, eta).as_element());
}

SchemeOperator mgamma_inverse_operator(const PartiteStructure& ps, std::optional<Rational> eta) {
  const SpectrumTable t = spectrum(ps.r, ps.s, ps.n, eta);
  SchemeElement inv;
  inv.basis = Basis::idempotent;
  for (int i = 0; i < kNumClasses; ++i) {
    if (t.eigenvalues[i] == 0)
      throw std::domain_error("M_Gamma is singular on U_" + std::to_string(i) +
                              (ps.r == ps.s + 1 ? "; supply an eta shift" : ""));
    inv.coeff[i] = 1 / t.eigenvalues[i];
  }
  return SchemeOperator(ps, inv);
}

SchemeOperator e2_operator(const PartiteStructure& ps, const Rational& eta) {
  SchemeElement e = SchemeElement::idempotent(2);
  e.coeff[2] = eta;
  return SchemeOperator(ps, e);
}

EdgeVector apply_mgamma(const EdgeVector& v, int workers) {
  return mgamma_operator(v.structure()).apply(v, workers);
}

EdgeVector apply_mgamma_inverse(const EdgeVector& v, int workers) {
  return mgamma_inverse_operator(v.structure()).apply(v, workers);
}

EdgeVector apply_mgamma_eta_inverse(const EdgeVector& v, const Rational& eta, int workers) {
  if (eta <= 0) throw std::domain_error("eta must be positive");
  return mgamma_inverse_operator(v.structure(), eta).apply(v, workers);
}

Rational inverse_inf_norm_via_scheme(int r, int n, const SpectrumTable& spec) {
  const Eigenmatrices eig = eigenmatrices(r, n);
  Rational norm = 0;
  for (int j = 0; j < kNumClasses; ++j) {
    Rational coeff = 0;
    for (int i = 0; i < kNumClasses; ++i) {
      if (spec.eigenvalues[i] == 0) throw std::domain_error("singular spectrum");
      coeff += eig.D[i][j] / spec.eigenvalues[i];
    }
    norm += abs(coeff) * valency(j, r, n);
  }
  return norm;
}

Rational norm_mgamma_inverse(int r, int s, int n) {
  require_scheme_range(r, s, n);
  if (r < s + 2) throw std::invalid_argument("closed-form inverse norm needs r >= s + 2");
  const Integer R = r;
  const Integer S = s;
  const Integer poly = R * R * (2 * S * S - 4 * S + 1) - R * (12 * S * S - 26 * S + 9) +
                       (17 * S * S - 39 * S + 16);
  const Rational den =
      Rational(S * (S - 1) * (R - 2) * (R - S - 1) * binom(r - 3, s - 2)) * rpow(n, s - 2);
  return Rational(2 * poly) / den;
}

Rational norm_mgamma_eta_inverse(int s, int n) {
  if (s < 3) throw std::invalid_argument("s must be at least 3");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const Integer S = s;
  const Integer N = n;
  const Integer sq = (S - 2) * (S - 2);
  const Integer poly = (3 * S * S * S - 11 * S * S + 12 * S - 3) * N * N -
                       2 * (S - 1) * sq * N + (S - 1) * sq;
  return 2 * rpow(n, -s) / Rational(S * (S - 1) * (S - 1)) * Rational(poly);
}

Rational norm_delta_bound(int r, int s, int n, const Rational& c) {
  PartiteStructure{r, n, s}.validate();
  if (r < s + 1) throw std::invalid_argument("defect bound needs r >= s + 1");
  if (c < 0 || c > 1) throw std::invalid_argument("c must lie in [0, 1]");
  return c * s * (s - 1) * (s + 1) * (r - 2) / 4 * Rational(binom(r - 3, s - 3)) * rpow(n, s - 2);
}

Rational norm_e2_block_bound(int s, const Rational& c) {
  if (s < 3) throw std::invalid_argument("s must be at least 3");
  if (c < 0 || c > 1) throw std::invalid_argument("c must lie in [0, 1]");
  return 4 * (s - 2) * c / s;
}

Rational norm_delta_eta_bound(int s, int n, const Rational& c, const Rational& eta) {
  if (eta <= 0) throw std::invalid_argument("eta must be positive");
  const Rational first =
      c * s * (s - 1) * (s - 1) * (s - 2) * (s + 1) * rpow(n, s - 2) / 4;
  return first + norm_e2_block_bound(s, c) * eta;
}

Rational contraction_bound(int r, int s, int n, const Rational& c) {
  if (r == s + 1)
    return norm_mgamma_eta_inverse(s, n) * norm_delta_eta_bound(s, n, c, eta_star(s, n));
  return norm_mgamma_inverse(r, s, n) * norm_delta_bound(r, s, n, c);
}

}  // namespace fracclique
