#pragma once

// Closed-form spectral data of the complete-host clique-pair matrix M_Gamma
// (and its E_2-shifted variant used when r = s + 1), matrix-free operators
// built from it, and the infinity-norm formulas and bounds that drive the
// contraction argument.

#include "fracclique/scheme.hpp"

#include <optional>

namespace fracclique {

/// A-basis expansion of M_Gamma:
/// C(r-2,s-2) n^{s-2} A_0 + C(r-3,s-3) n^{s-3} A_3 + C(r-4,s-4) n^{s-4} A_5.
SchemeElement mgamma_element(int r, int s, int n);

struct SpectrumTable {
  std::array<Rational, kNumClasses> eigenvalues{};
  std::array<Integer, kNumClasses> multiplicities{};
  std::optional<Rational> eta;

  bool all_positive() const;
  SchemeElement as_element() const;
};

/// Eigenvalues of M_Gamma on U_0..U_5 from the closed-form table; with `eta`
/// (only for r = s + 1) the zero eigenvalue on U_2 is replaced by eta.
SpectrumTable spectrum(int r, int s, int n, std::optional<Rational> eta = std::nullopt);

/// n^{s-2} s / (s + 2).
Rational eta_star(int s, int n);

/// Operator sum_i mu_i E_i applied through its A-basis expansion.
class SchemeOperator {
 public:
  SchemeOperator(const PartiteStructure& ps, const SchemeElement& elem);

  const std::array<double, kNumClasses>& adjacency_coefficients() const { return coeff_; }
  /// Requires fresh aggregates on v.
  EdgeVector apply(const EdgeVector& v, int workers = 1) const;

 private:
  std::array<double, kNumClasses> coeff_{};
};

SchemeOperator mgamma_operator(const PartiteStructure& ps);
/// sum_i mu_i E_i for the M_Gamma spectrum, optionally shifted by eta E_2.
SchemeOperator mgamma_eta_operator(const PartiteStructure& ps, const Rational& eta);
/// sum_i (1/mu_i) E_i. Throws std::domain_error when some mu_i is zero.
SchemeOperator mgamma_inverse_operator(const PartiteStructure& ps,
                                       std::optional<Rational> eta = std::nullopt);
/// eta E_2 alone.
SchemeOperator e2_operator(const PartiteStructure& ps, const Rational& eta);

EdgeVector apply_mgamma(const EdgeVector& v, int workers = 1);
EdgeVector apply_mgamma_inverse(const EdgeVector& v, int workers = 1);
EdgeVector apply_mgamma_eta_inverse(const EdgeVector& v, const Rational& eta, int workers = 1);

/// sum_j |sum_i D(i,j) / mu_i| p_jj^0, the infinity norm of any invertible
/// element given by its eigenvalues.
Rational inverse_inf_norm_via_scheme(int r, int n, const SpectrumTable& spec);

/// Closed-form ||M_Gamma^{-1}||_inf for r >= s + 2.
Rational norm_mgamma_inverse(int r, int s, int n);
/// Closed-form ||(M_Gamma + eta* E_2)^{-1}||_inf for r = s + 1.
Rational norm_mgamma_eta_inverse(int s, int n);

/// Upper bound on ||Delta M||_inf when the partite minimum degree is >= (1-c)n.
Rational norm_delta_bound(int r, int s, int n, const Rational& c);
/// Upper bound on ||E_2[E(G), missing]||_inf for r = s + 1.
Rational norm_e2_block_bound(int s, const Rational& c);
/// Upper bound on ||Delta M^eta||_inf for r = s + 1.
Rational norm_delta_eta_bound(int s, int n, const Rational& c, const Rational& eta);

/// Product of the inverse norm and the defect bound; the solver's contraction
/// factor is at most this value.
Rational contraction_bound(int r, int s, int n, const Rational& c);

}  // namespace fracclique
