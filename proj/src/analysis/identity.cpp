#include "oppenheim/analysis/identity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace oppenheim::analysis {

long double Box::value_bound() const { return std::max(std::fabs(value_min), std::fabs(value_max)); }

Box lattice_box(const FloatForm& form, long double P) {
  if (form.dim() < 1) throw std::domain_error("form has no coefficients");
  const int d = static_cast<int>(form.dim());
  Box box;
  box.points = 1;
  for (Eigen::Index j = 0; j < form.dim(); ++j) {
    WeylRange r = weyl_range(form[j], P, d);
    box.ranges.push_back(r);
    box.points *= static_cast<long double>(r.size());
  }
  if (box.empty()) return box;
  for (Eigen::Index j = 0; j < form.dim(); ++j) {
    const auto& r = box.ranges[static_cast<std::size_t>(j)];
    long double lo = form[j] * r.lo * r.lo, hi = form[j] * r.hi * r.hi;
    box.value_min += std::min(lo, hi);
    box.value_max += std::max(lo, hi);
  }
  return box;
}

Complex weyl_product(const FloatForm& form, long double alpha, long double P) {
  const int d = static_cast<int>(form.dim());
  std::map<long double, Complex> seen;
  Complex out = 1;
  for (Eigen::Index j = 0; j < form.dim(); ++j) {
    auto it = seen.find(form[j]);
    if (it == seen.end()) it = seen.emplace(form[j], weyl_sum(form[j], alpha, P, d)).first;
    out *= it->second;
  }
  return out;
}

long double truncation_point(const KernelSpec& kernel, long double scale, long double tolerance, long double* tail) {
  if (!(tolerance > 0)) throw std::domain_error("tolerance must be positive");
  // int_A^inf env <= sum_{i >= 0} env(A + i) since env is nonincreasing
  auto bound = [&](long double A) {
    long double sum = 0;
    for (long double i = 0;; i += 1) {
      long double e = kernel.envelope(A + i);
      sum += e;
      if (e <= sum * 1e-20L) break;
    }
    return scale * sum;
  };
  for (long double A = 1; A <= 1e5L; A += 1) {
    long double b = bound(A);
    if (b <= tolerance) {
      if (tail) *tail = b;
      return A;
    }
  }
  throw std::runtime_error("kernel envelope too slow to reach the quadrature tolerance");
}

namespace {

// every partial value sum_{j in [from, to)} q_j m_j^2 over the box
std::vector<long double> half_values(const FloatForm& form, const Box& box, Eigen::Index from, Eigen::Index to) {
  std::vector<long double> values{0};
  for (Eigen::Index j = from; j < to; ++j) {
    const auto& r = box.ranges[static_cast<std::size_t>(j)];
    std::vector<long double> next;
    next.reserve(values.size() * static_cast<std::size_t>(r.size()));
    for (long double v : values)
      for (std::int64_t m = r.lo; m <= r.hi; ++m) next.push_back(v + form[j] * static_cast<long double>(m) * static_cast<long double>(m));
    values = std::move(next);
  }
  return values;
}

}  // namespace

IdentityResult smoothed_count_identity(const FloatForm& form, long double P, const KernelSpec& kernel, const IdentityOptions& options) {
  if (form.dim() < 2) throw std::domain_error("smoothed_count_identity needs d >= 2");
  const Box box = lattice_box(form, P);
  IdentityResult out;
  out.box_points = box.points;
  out.value_bound = box.value_bound();
  if (box.empty()) return out;

  const Eigen::Index split = (form.dim() + 1) / 2;
  long double left_size = 1, right_size = 1;
  for (Eigen::Index j = 0; j < form.dim(); ++j) (j < split ? left_size : right_size) *= box.ranges[static_cast<std::size_t>(j)].size();
  if (std::max(left_size, right_size) > static_cast<long double>(options.max_half_entries))
    throw std::length_error("lattice box too large: a half box has " + std::to_string(static_cast<double>(std::max(left_size, right_size))) +
                            " entries");

  // lhs: meet in the middle on |left + right| < 1/2
  std::vector<long double> left = half_values(form, box, 0, split), right = half_values(form, box, split, form.dim());
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::unordered_map<long double, long double> cache;
  long double sum = 0;
  const long double r = kernel.support_radius();
  for (long double v : right) {
    for (auto it = std::upper_bound(left.begin(), left.end(), -v - r); it != left.end() && *it + v < r; ++it) {
      long double x = *it + v;
      if (std::fabs(x) >= r) continue;
      auto [slot, fresh] = cache.try_emplace(x, 0.0L);
      if (fresh) slot->second = kernel.psi(x);
      sum += slot->second;
      ++out.support_points;
    }
  }
  out.box_sum = sum;
  out.lhs = sum / 2;

  // rhs: alias-free trapezoid rule on [0, A]
  out.truncation = truncation_point(kernel, box.points, options.quad_tolerance, &out.tail_bound);
  out.step = 1.0L / (out.value_bound + 1);
  const auto n_max = static_cast<std::int64_t>(std::floor(out.truncation / out.step));
  long double acc = box.points / 2;  // F(0) / 2 with hat(0) = 1
  for (std::int64_t n = 1; n <= n_max; ++n) {
    long double alpha = n * out.step;
    acc += static_cast<long double>(weyl_product(form, alpha, P).real()) * kernel.hat(alpha);
  }
  out.nodes = n_max + 1;
  out.rhs = acc * out.step;
  return out;
}

}  // namespace oppenheim::analysis
