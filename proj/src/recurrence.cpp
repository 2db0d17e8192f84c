#include "mvmom/recurrence.hpp"

#include <json.hpp>

#include <algorithm>

namespace mvmom {

int Recurrence::degree() const {
  int d = 0;
  for (const auto& ct : coeffs) {
    for (size_t e = 0; e < ct.size(); ++e) {
      if (!ct[e].is_zero()) d = std::max(d, static_cast<int>(e));
    }
  }
  return d;
}

Polynomial Recurrence::coeff_at(int t, long n) const {
  const auto& ct = coeffs[static_cast<size_t>(t)];
  Polynomial acc;
  Rational npow(1);
  const Rational nval(n);
  for (const auto& ce : ct) {
    if (!ce.is_zero()) {
      Polynomial scaled = ce;
      scaled.scale(npow);
      acc += scaled;
    }
    npow *= nval;
  }
  return acc;
}

MultiIndex Recurrence::index_at(long n) const {
  std::vector<long> v(static_cast<size_t>(k));
  size_t f = 0;
  for (int i = 0; i < k; ++i) {
    v[static_cast<size_t>(i)] = (i == direction) ? n : fixed[f++];
  }
  return MultiIndex(std::move(v));
}

VerifyReport verify(const Recurrence& rec, long lo, long hi,
                    const RaySupplier& supplier) {
  VerifyReport report;
  long n = std::max(lo, rec.first_application());
  const long rem = ((rec.offset % rec.step) + rec.step) % rec.step;
  // align n to the lattice offset (mod step), rounding up
  long misfit = ((n - rem) % rec.step + rec.step) % rec.step;
  if (misfit != 0) n += rec.step - misfit;
  for (; n <= hi; n += rec.step) {
    Polynomial residual;
    for (int t = 0; t <= rec.order; ++t) {
      Polynomial c = rec.coeff_at(t, n);
      if (c.is_zero()) continue;
      residual += c * supplier(n - t * rec.step);
    }
    ++report.checked;
    if (!residual.is_zero()) {
      report.ok = false;
      report.first_failure = n;
      return report;
    }
  }
  return report;
}

Polynomial evaluate(const Recurrence& rec, long n_target,
                    const RaySupplier& supplier, EvalStats* stats) {
  if (n_target < rec.offset ||
      ((n_target - rec.offset) % rec.step) != 0) {
    throw std::invalid_argument(
        "target is not on the recurrence lattice: n=" +
        std::to_string(n_target));
  }
  EvalStats local;
  EvalStats& st = stats ? *stats : local;

  if (n_target < rec.first_application()) return supplier(n_target);

  // Ring buffer of the most recent `order` values: slot i holds M(n - (i+1)*step)
  // rotated as n advances.
  const int r = rec.order;
  std::vector<Polynomial> window(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    window[static_cast<size_t>(i)] = supplier(rec.offset + i * rec.step);
    st.max_window = std::max(st.max_window, i + 1);
  }
  // window[(head + r - t) % r] is M(n - t*step) for t = 1..r
  size_t head = 0;  // index of the oldest value, M(n - r*step)

  for (long n = rec.first_application(); n <= n_target; n += rec.step) {
    Polynomial lead = rec.coeff_at(0, n);
    Polynomial value;
    ++st.applications;
    if (lead.is_zero()) {
      ++st.bridged_points;
      value = supplier(n);
    } else {
      Polynomial num;
      for (int t = 1; t <= r; ++t) {
        Polynomial c = rec.coeff_at(t, n);
        if (c.is_zero()) continue;
        num += c * window[(head + static_cast<size_t>(r - t)) % r];
      }
      num.negate();
      auto q = num.divide_exact(lead);
      if (!q) {
        throw std::logic_error(
            "recurrence does not hold exactly at n=" + std::to_string(n));
      }
      value = std::move(*q);
    }
    // the oldest value drops out; the new value enters
    window[head] = std::move(value);
    head = (head + 1) % r;
    st.max_window = std::max(st.max_window, r);
  }
  return window[(head + static_cast<size_t>(r) - 1) % r];
}

namespace {

nlohmann::ordered_json poly_to_obj(const Polynomial& p) {
  return nlohmann::ordered_json::parse(p.to_json());
}

Polynomial poly_from_obj(const nlohmann::json& j) {
  return Polynomial::from_json(j.dump());
}

}  // namespace

std::string Recurrence::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["direction"] = direction + 1;  // coordinates are 1-based on disk
  j["step"] = step;
  j["order"] = order;
  j["offset"] = offset;
  j["fixed"] = fixed;
  nlohmann::ordered_json cj;
  cj["k"] = cov.dimension();
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (int idx = 0; idx < pair_count(cov.dimension()); ++idx) {
    auto [a, b] = pair_at(idx, cov.dimension());
    entries[Var(a, b).name()] =
        cov.is_symbolic(a, b) ? "sym" : cov.value(a, b).str();
  }
  cj["entries"] = std::move(entries);
  j["cov"] = std::move(cj);
  nlohmann::ordered_json cc = nlohmann::ordered_json::array();
  for (const auto& ct : coeffs) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& ce : ct) row.push_back(poly_to_obj(ce));
    cc.push_back(std::move(row));
  }
  j["coeffs"] = std::move(cc);
  return j.dump();
}

Recurrence Recurrence::from_json(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    Recurrence rec;
    rec.k = j.at("k").get<int>();
    rec.direction = j.at("direction").get<int>() - 1;
    rec.step = j.at("step").get<long>();
    rec.order = j.at("order").get<int>();
    rec.offset = j.at("offset").get<long>();
    rec.fixed = j.at("fixed").get<std::vector<long>>();
    const auto& cj = j.at("cov");
    const int ck = cj.at("k").get<int>();
    CovarianceSpec cov(ck);
    for (int idx = 0; idx < pair_count(ck); ++idx) {
      auto [a, b] = pair_at(idx, ck);
      std::string v = cj.at("entries").at(Var(a, b).name()).get<std::string>();
      if (v != "sym") cov.set_entry(a, b, Rational(v));
    }
    rec.cov = std::move(cov);
    for (const auto& row : j.at("coeffs")) {
      std::vector<Polynomial> ct;
      for (const auto& ce : row) ct.push_back(poly_from_obj(ce));
      rec.coeffs.push_back(std::move(ct));
    }
    if (rec.k < 1 || rec.direction < 0 || rec.direction >= rec.k ||
        rec.order < 1 ||
        rec.coeffs.size() != static_cast<size_t>(rec.order) + 1 ||
        static_cast<int>(rec.fixed.size()) != rec.k - 1 || rec.step <= 0) {
      throw std::invalid_argument("malformed recurrence json");
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad recurrence json: ") +
                                e.what());
  }
}

}  // namespace mvmom
