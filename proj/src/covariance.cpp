#include "mvmom/covariance.hpp"

#include <stdexcept>

namespace mvmom {

CovarianceSpec CovarianceSpec::numeric(int k, std::vector<Rational> values) {
  CovarianceSpec spec(k);
  if (static_cast<int>(values.size()) != pair_count(k)) {
    throw std::invalid_argument("expected " + std::to_string(pair_count(k)) +
                                " covariance entries for k=" +
                                std::to_string(k));
  }
  for (int idx = 0; idx < pair_count(k); ++idx) {
    spec.entries_[idx] = std::move(values[idx]);
  }
  return spec;
}

std::string CovarianceSpec::fingerprint() const {
  std::string s = "k=" + std::to_string(k_);
  for (int idx = 0; idx < pair_count(k_); ++idx) {
    auto [i, j] = pair_at(idx, k_);
    s += ";" + Var(i, j).name() + "=";
    s += entries_[idx] ? entries_[idx]->str() : "sym";
  }
  return s;
}

}  // namespace mvmom
