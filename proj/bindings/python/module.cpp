#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mvmom/discover.hpp"
#include "mvmom/engines.hpp"
#include "mvmom/marriage.hpp"

namespace py = pybind11;

namespace {

using mvmom::CovarianceSpec;
using mvmom::Engine;
using mvmom::MultiIndex;
using mvmom::Polynomial;
using mvmom::Rational;

py::int_ to_py_int(const mvmom::Integer& v) {
  PyObject* obj = PyLong_FromString(v.str().c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

MultiIndex to_multi_index(const std::vector<long>& m) { return MultiIndex(m); }

CovarianceSpec to_cov(int k, const py::object& cov) {
  if (cov.is_none()) return CovarianceSpec::symbolic(k);
  CovarianceSpec spec = CovarianceSpec::symbolic(k);
  const auto seq = py::cast<std::vector<py::object>>(cov);
  if (static_cast<int>(seq.size()) != mvmom::pair_count(k)) {
    throw std::invalid_argument("cov needs " +
                                std::to_string(mvmom::pair_count(k)) +
                                " entries in pair order c12,c13,...");
  }
  for (int idx = 0; idx < mvmom::pair_count(k); ++idx) {
    const py::object& e = seq[static_cast<size_t>(idx)];
    auto [i, j] = mvmom::pair_at(idx, k);
    if (e.is_none()) continue;  // stays symbolic
    const std::string text = py::cast<std::string>(py::str(e));
    if (text == "sym") continue;
    spec.set_entry(i, j, Rational(text));
  }
  return spec;
}

Engine to_engine(const std::string& name) {
  const auto e = mvmom::engine_from_name(name);
  if (!e) throw std::invalid_argument("engine must be wick, stein, or pure");
  return *e;
}

py::dict result_to_dict(const mvmom::MomentResult& r) {
  py::dict d;
  d["result"] = r.value.str();
  d["engine"] = mvmom::engine_name(r.engine_used);
  d["fallback_used"] = r.fallback_used;
  d["recurrence_order"] =
      r.recurrence_order ? py::object(py::int_(*r.recurrence_order))
                         : py::object(py::none());
  d["bridged_points"] = r.bridged_points;
  return d;
}

std::vector<std::pair<mvmom::Var, Rational>> to_assignment(
    const py::dict& assign) {
  std::vector<std::pair<mvmom::Var, Rational>> out;
  for (auto item : assign) {
    const std::string name = py::cast<std::string>(item.first);
    const Polynomial var = Polynomial::parse(name);
    const auto vars = var.variables();
    if (vars.size() != 1 || var.term_count() != 1) {
      throw std::invalid_argument("'" + name + "' is not a variable name");
    }
    out.emplace_back(vars[0],
                     Rational(py::cast<std::string>(py::str(item.second))));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Exact mixed moments of a multivariate standard normal distribution";

  mod.def(
      "moment",
      [](const std::vector<long>& m, const py::object& cov,
         const std::string& engine) {
        const MultiIndex idx = to_multi_index(m);
        const CovarianceSpec spec = to_cov(static_cast<int>(m.size()), cov);
        return mvmom::compute_moment(spec, idx, to_engine(engine)).value.str();
      },
      py::arg("m"), py::arg("cov") = py::none(), py::arg("engine") = "wick",
      "Mixed moment as canonical polynomial text, e.g. '6*c12^3 + 9*c12'.");

  mod.def(
      "moment_info",
      [](const std::vector<long>& m, const py::object& cov,
         const std::string& engine, bool allow_fallback,
         const std::string& cache_dir) {
        const MultiIndex idx = to_multi_index(m);
        const CovarianceSpec spec = to_cov(static_cast<int>(m.size()), cov);
        mvmom::PureOptions options;
        options.allow_fallback = allow_fallback;
        if (!cache_dir.empty()) options.cache_dir = cache_dir;
        return result_to_dict(
            mvmom::compute_moment(spec, idx, to_engine(engine), options));
      },
      py::arg("m"), py::arg("cov") = py::none(), py::arg("engine") = "pure",
      py::arg("allow_fallback") = true, py::arg("cache_dir") = "",
      "Mixed moment plus engine metadata as a dict.");

  mod.def(
      "count_marriages",
      [](const std::vector<long>& m, const std::vector<long>& cross) {
        return to_py_int(mvmom::count_marriages(to_multi_index(m), cross));
      },
      py::arg("m"), py::arg("cross"),
      "Number of complete pairings with the given cross-pair counts.");

  mod.def(
      "univariate_moment",
      [](long r) { return to_py_int(mvmom::univariate_moment(r)); },
      py::arg("r"), "E[x^r] for a standard normal: (r-1)!! or 0.");

  mod.def(
      "marriage_polynomial",
      [](const std::vector<long>& m) {
        return mvmom::marriage_polynomial(to_multi_index(m)).str();
      },
      py::arg("m"),
      "Generating polynomial of all cross-pair counts, as text.");

  mod.def(
      "discover",
      [](int k, int direction, const std::vector<long>& fixed,
         const py::object& cov, int max_order, int max_degree) {
        mvmom::DiscoverOptions options;
        options.limits.max_order = max_order;
        options.limits.max_degree = max_degree;
        const auto rec =
            mvmom::discover(to_cov(k, cov), direction - 1, fixed, options);
        py::dict d;
        d["order"] = rec.order;
        d["degree"] = rec.degree();
        d["offset"] = rec.offset;
        d["direction"] = direction;
        d["json"] = rec.to_json();
        return d;
      },
      py::arg("k"), py::arg("direction"), py::arg("fixed"),
      py::arg("cov") = py::none(), py::arg("max_order") = 8,
      py::arg("max_degree") = 12,
      "Finds the moment recurrence along coordinate `direction` (1-based).");

  mod.def(
      "poly_eval",
      [](const std::string& poly, const py::dict& assign) {
        return Polynomial::parse(poly).eval(to_assignment(assign)).str();
      },
      py::arg("poly"), py::arg("assign"),
      "Evaluates polynomial text at {'c12': '1/2', ...}; returns 'p/q'.");

  mod.def(
      "poly_coeff",
      [](const std::string& poly, const py::dict& exps) {
        std::vector<std::pair<mvmom::Var, uint32_t>> parts;
        for (auto item : exps) {
          const std::string name = py::cast<std::string>(item.first);
          const Polynomial var = Polynomial::parse(name);
          const auto vars = var.variables();
          if (vars.size() != 1) {
            throw std::invalid_argument("'" + name +
                                        "' is not a variable name");
          }
          parts.emplace_back(vars[0], py::cast<uint32_t>(item.second));
        }
        return Polynomial::parse(poly)
            .coeff(mvmom::Monomial::from_parts(std::move(parts)))
            .str();
      },
      py::arg("poly"), py::arg("exps"),
      "Coefficient of the monomial with the given exponents, as 'p/q'.");

  py::register_exception<mvmom::NotFoundError>(mod, "NotFoundError",
                                               PyExc_RuntimeError);
}
