#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oppenheim/forms.hpp"
#include "oppenheim/numeric.hpp"

namespace oppenheim {

/// Raised for definite forms, which have no nontrivial zeros at all.
class DefiniteFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a search cap is hit before anything was found.
class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(const std::string& what, std::int64_t last_budget) : std::runtime_error(what), last_budget(last_budget) {}
  std::int64_t last_budget;
};

struct IsotropicWitness {
  IntVector m;
  int128 weighted_norm = 0;
  int128 form_value = 0;
  bool content_reduced = false;
};

struct IsotropicSearchOptions {
  // largest value V = norm / 2 held in the reachability bitsets
  std::int64_t max_window = std::int64_t(1) << 27;
};

/// Minimal-norm nonzero m with f[m] = 0 and weighted norm <= norm_budget.
/// Ties go to the vector with nonnegative entries that is lexicographically greatest.
std::optional<IsotropicWitness> min_isotropic(const IntegerForm& form, std::int64_t norm_budget,
                                              const IsotropicSearchOptions& options = {});

/// Recomputes value, norm and content of m.
IsotropicWitness make_witness(const IntegerForm& form, const IntVector& m);

struct SchlickeweiCheck {
  IsotropicWitness witness;
  std::int64_t min_norm = 0;
  Rational exponent;  // (2 beta + 1) / d
  long double bound_base = 0;
  long double ratio = 0;
  std::int64_t budget = 0;
};

/// Minimal isotropic norm against |f_1 ... f_d|^{(2 beta + 1)/d}.
/// The budget starts at ceil(c * bound_base) and doubles up to budget_cap.
SchlickeweiCheck verify_schlickewei(const IntegerForm& form, double c = 64, std::int64_t budget_cap = std::int64_t(1) << 40);

/// Lower bound for the dimension of a maximal rational isotropic subspace.
int d0_lower_bound(int r, int s, int t);

struct SubspaceWitness {
  std::vector<IntVector> basis;
  int dim = 0;
};

/// Whether f vanishes on the rational span of basis and the basis is independent.
bool validate_subspace(const IntegerForm& form, const SubspaceWitness& w);

/// sum f_i u_i v_i
int128 polarization(const IntegerForm& form, const IntVector& u, const IntVector& v);

/// Two independent isotropic vectors with zero polarization and norms <= budget, else a single
/// isotropic vector, else nothing. Candidates are ordered by norm, then lexicographically descending.
std::optional<SubspaceWitness> isotropic_plane_witness(const IntegerForm& form, std::int64_t budget,
                                                       std::int64_t max_candidates = 200000);

}  // namespace oppenheim
