#include "divmbest/diversity.hpp"

#include <cmath>
#include <string>

namespace divmbest {

DiversityMeasure DiversityMeasure::hamming(int M) {
  if (M < 1) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  std::vector<double> values(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) values[static_cast<std::size_t>(m)] = double(m) * double(M - m);
  return DiversityMeasure(std::move(values), DiversityKind::hamming, 0.0, true);
}

DiversityMeasure DiversityMeasure::power(int M, double p) {
  if (M < 1) throw Error(ErrorCode::invalid_input, "M must be at least 1");
  if (!(p >= 1.0)) {
    throw Error(ErrorCode::invalid_input, "power diversity needs p >= 1");
  }
  std::vector<double> values(static_cast<std::size_t>(M) + 1);
  for (int m = 0; m <= M; ++m) {
    values[static_cast<std::size_t>(m)] = -std::pow(std::abs(2.0 * m - M), p);
  }
  const auto kind = p == 1.0 ? DiversityKind::linear : DiversityKind::power;
  return DiversityMeasure(std::move(values), kind, p, true);
}

DiversityMeasure DiversityMeasure::custom(std::vector<double> values, double epsilon) {
  if (values.size() < 2) {
    throw Error(ErrorCode::invalid_input, "custom diversity needs Δ(0..M) with M >= 1");
  }
  const bool concave = check_concave(values, epsilon).is_concave;
  return DiversityMeasure(std::move(values), DiversityKind::custom, 0.0, concave);
}

ConcavityCertificate check_concave(std::span<const double> values, double epsilon) {
  ConcavityCertificate cert;
  // Non-increasing consecutive differences imply the all-pairs condition;
  // report the first adjacent violation as the witness pair.
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double left = values[i] - values[i - 1];
    const double right = values[i + 1] - values[i];
    if (right > left + epsilon) {
      cert.is_concave = false;
      cert.violating_pair = {static_cast<int>(i), static_cast<int>(i + 1)};
      break;
    }
  }
  return cert;
}

ConcavityCertificate check_concave(const DiversityMeasure& d, double epsilon) {
  return check_concave(d.values(), epsilon);
}

std::vector<Cost> GammaSchedule::fixed_gammas(double scale) const {
  std::vector<Cost> out;
  out.reserve(gammas.size());
  for (double g : gammas) out.push_back(to_fixed(g, scale));
  return out;
}

std::vector<Cost> GammaSchedule::fixed_weighted_diversity(double scale) const {
  std::vector<Cost> table;
  table.reserve(gammas.size() + 1);
  table.push_back(to_fixed(base, scale));
  for (Cost g : fixed_gammas(scale)) table.push_back(table.back() + g);
  return table;
}

GammaSchedule gamma_schedule(const DiversityMeasure& d, double lambda) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::invalid_input, "lambda must be positive");
  }
  const auto cert = check_concave(d);
  if (!d.concave_certified() || !cert.is_concave) {
    std::string msg = "diversity measure is not concave; the decoupling does not apply";
    if (cert.violating_pair) {
      msg += " (differences at m=" + std::to_string(cert.violating_pair->first) +
             " and m=" + std::to_string(cert.violating_pair->second) + " increase)";
    }
    throw Error(ErrorCode::not_concave, msg);
  }
  GammaSchedule s;
  s.M = d.M();
  s.lambda = lambda;
  s.base = lambda * d(0);
  s.gammas.reserve(static_cast<std::size_t>(s.M));
  for (int m = 1; m <= s.M; ++m) s.gammas.push_back(lambda * (d(m) - d(m - 1)));
  // Tolerance-level concavity can leave tiny increases; clamp so the
  // schedule is exactly monotone.
  for (std::size_t m = 1; m < s.gammas.size(); ++m) {
    if (s.gammas[m] > s.gammas[m - 1]) s.gammas[m] = s.gammas[m - 1];
  }
  return s;
}

std::vector<int> zero_counts(std::span<const Labeling> tuple) {
  if (tuple.empty()) return {};
  const std::size_t n = tuple.front().size();
  std::vector<int> zeros(n, 0);
  for (const auto& y : tuple) {
    if (y.size() != n) {
      throw Error(ErrorCode::invalid_input, "tuple labelings differ in node count");
    }
    for (std::size_t v = 0; v < n; ++v) zeros[v] += y[v] ? 0 : 1;
  }
  return zeros;
}

double diversity_of_tuple(const DiversityMeasure& d, std::span<const Labeling> tuple) {
  if (static_cast<int>(tuple.size()) != d.M()) {
    throw Error(ErrorCode::invalid_input,
                "tuple has " + std::to_string(tuple.size()) + " labelings, measure expects " +
                    std::to_string(d.M()));
  }
  double total = 0.0;
  for (int zeros : zero_counts(tuple)) total += d(zeros);
  return total;
}

}  // namespace divmbest
