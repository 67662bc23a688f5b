// Copyright 2026 The rapdhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rapdhg/functions.h"
#include "rapdhg/gap.h"
#include "rapdhg/io.h"
#include "rapdhg/operator.h"
#include "rapdhg/oracles.h"
#include "rapdhg/problems.h"
#include "rapdhg/rates.h"
#include "rapdhg/solver.h"

namespace py = pybind11;
using namespace rapdhg;

namespace {

using PyProx = std::shared_ptr<ProxFunction>;

template <typename... Args>
auto Exported(ProxFn (*factory)(Args...)) {
  return [factory](Args... args) {
    return std::const_pointer_cast<ProxFunction>(factory(args...));
  };
}

PrimalDualPoint Point(const SaddleProblem& p, const std::optional<Vec>& x,
                      const std::optional<Vec>& y) {
  PrimalDualPoint z = PrimalDualPoint::Zero(p.n(), p.m());
  if (x) z.x = *x;
  if (y) z.y = *y;
  return z;
}

StopKind ParseStop(const std::string& s) {
  if (s == "max_iters") return StopKind::kMaxIters;
  if (s == "self_gap") return StopKind::kSelfGap;
  if (s == "kkt") return StopKind::kKkt;
  if (s == "distance") return StopKind::kDistance;
  throw py::value_error("unknown stop kind: " + s);
}

py::dict LogToDict(const IterateLog& log) {
  std::vector<std::int64_t> iter;
  std::vector<double> dist, gap, kp, kd;
  std::vector<bool> restart;
  for (const IterateRecord& r : log.records()) {
    iter.push_back(r.iter);
    dist.push_back(r.dist_v.value_or(std::numeric_limits<double>::quiet_NaN()));
    gap.push_back(r.self_gap);
    kp.push_back(r.kkt_primal);
    kd.push_back(r.kkt_dual);
    restart.push_back(r.restart);
  }
  py::dict d;
  d["iter"] = iter;
  d["dist_v"] = dist;
  d["self_gap"] = gap;
  d["kkt_primal"] = kp;
  d["kkt_dual"] = kd;
  d["restart"] = restart;
  return d;
}

py::dict Solve(const SaddleProblem& p, const StepSizes& steps,
               const std::string& variant, const std::string& stop,
               double tol, std::int64_t max_iters, std::int64_t K,
               double beta0, std::int64_t log_every,
               const std::optional<Vec>& x0, const std::optional<Vec>& y0,
               const std::optional<Vec>& x_ref,
               const std::optional<Vec>& y_ref) {
  SolveOptions so;
  so.stop.kind = ParseStop(stop);
  so.stop.tol = tol;
  so.stop.max_iters = max_iters;
  so.log.every = log_every;
  if (x_ref && y_ref) {
    so.stop.reference = PrimalDualPoint{*x_ref, *y_ref};
    so.log.reference = so.stop.reference;
  }
  const PrimalDualPoint z0 = Point(p, x0, y0);
  SolveResult r;
  {
    py::gil_scoped_release release;
    if (variant == "pdhg") {
      r = run_pdhg(p, z0, steps, so);
    } else if (variant == "rapdhg") {
      r = run_rapdhg(p, z0, steps, K, max_iters / K, so);
    } else if (variant == "adaptive") {
      AdaptiveOptions ao;
      ao.beta0 = beta0;
      r = run_adaptive(p, z0, steps, ao, so);
    } else {
      throw std::invalid_argument("unknown variant: " + variant);
    }
  }
  py::dict d;
  d["x"] = r.solution.x;
  d["y"] = r.solution.y;
  d["converged"] = r.converged;
  d["iterations"] = r.iterations;
  d["kkt"] = r.last_residual.total();
  d["restarts"] = r.restarts.size();
  d["log"] = LogToDict(r.log);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Primal-dual hybrid gradient solvers, gap evaluators and rates";

  py::class_<ProxFunction, PyProx>(m, "ProxFunction")
      .def_property_readonly("name", &ProxFunction::name)
      .def_property_readonly("mu", &ProxFunction::mu)
      .def("__call__", &ProxFunction::Eval, py::arg("v"))
      .def(
          "prox",
          [](const ProxFunction& f, const Vec& v, double t) {
            return prox(f, v, t);
          },
          py::arg("v"), py::arg("t"))
      .def(
          "prox_conjugate",
          [](const ProxFunction& f, const Vec& v, double t) {
            return prox_conjugate_via_moreau(f, v, t);
          },
          py::arg("v"), py::arg("t"))
      .def("conjugate", &ProxFunction::Conjugate, py::arg("w"));

  m.def("l1_norm", Exported(&l1_norm), py::arg("scale") = 1.0);
  m.def("squared_l2", Exported(&squared_l2), py::arg("c"), py::arg("b") = Vec());
  m.def("box_indicator", Exported(&box_indicator), py::arg("lower"), py::arg("upper"));
  m.def("point_indicator", Exported(&point_indicator), py::arg("b"));
  m.def("group_ball_indicator", Exported(&group_ball_indicator), py::arg("group_size"));
  m.def("hinge_conjugate", Exported(&hinge_conjugate));
  m.def("shifted_l1", Exported(&shifted_l1), py::arg("lam"), py::arg("center"));

  py::class_<SaddleProblem>(m, "Problem")
      .def_property_readonly("n", &SaddleProblem::n)
      .def_property_readonly("m", &SaddleProblem::m)
      .def_property_readonly("name",
                             [](const SaddleProblem& p) {
                               return p.metadata.name;
                             })
      .def_property_readonly(
          "norm_estimate",
          [](const SaddleProblem& p) { return p.A.norm_estimate().value; })
      .def(
          "lagrangian",
          [](const SaddleProblem& p, const Vec& x, const Vec& y) {
            return p.Lagrangian(x, y);
          },
          py::arg("x"), py::arg("y"));

  m.def(
      "toy",
      [](double mu, double a, double b) {
        return build_toy({.mu = mu, .a = a, .b = b});
      },
      py::arg("mu") = 0.0, py::arg("a") = 0.03, py::arg("b") = 0.0);
  m.def("small_lp", [] { return build_lp(small_lp()); });
  m.def(
      "lp_from_json",
      [](const std::string& text) { return build_lp(parse_lp_json(text)); },
      py::arg("text"));
  m.def("ridge", &build_ridge, py::arg("A"), py::arg("b"), py::arg("c_reg"));
  m.def(
      "svm",
      [](const Eigen::MatrixXd& X, const Vec& labels, bool normalize) {
        return build_svm(X.sparseView(), labels, normalize);
      },
      py::arg("X"), py::arg("labels"), py::arg("normalize") = true);
  m.def(
      "tvl1",
      [](const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>& image,
         double lam) {
        Field2D f{image.rows(), image.cols(),
                  Eigen::Map<const Vec>(image.data(), image.size())};
        return build_tvl1(f, lam);
      },
      py::arg("image"), py::arg("lam"));

  py::class_<StepSizes>(m, "StepSizes")
      .def(py::init<double, double, double, double, double>(), py::arg("tau"),
           py::arg("sigma"), py::arg("a_norm"), py::arg("lipschitz_f") = 0.0,
           py::arg("lipschitz_gstar") = 0.0)
      .def_property_readonly("tau", &StepSizes::tau)
      .def_property_readonly("sigma", &StepSizes::sigma)
      .def_property_readonly("gamma", &StepSizes::gamma)
      .def_property_readonly("alpha_f", &StepSizes::alpha_f)
      .def_property_readonly("alpha_g", &StepSizes::alpha_g);

  m.def(
      "default_steps",
      [](const SaddleProblem& p, const std::string& strategy, double gamma) {
        StepOptions o;
        o.gamma = gamma;
        if (strategy == "strongly_convex") {
          o.strategy = StepStrategy::kStronglyConvex;
          o.mu_f = p.metadata.mu_f.value_or(0.0);
          o.mu_gstar = p.metadata.mu_gstar.value_or(0.0);
        } else if (strategy != "balanced") {
          throw py::value_error("unknown strategy: " + strategy);
        }
        return default_steps(p, o);
      },
      py::arg("problem"), py::arg("strategy") = "balanced",
      py::arg("gamma") = 0.9);
  m.def("steps_for", &StepSizes::ForProblem, py::arg("problem"),
        py::arg("tau"), py::arg("sigma"));

  m.def(
      "pdhg_step",
      [](const SaddleProblem& p, const Vec& x, const Vec& y,
         const StepSizes& s) {
        const StepResult r = pdhg_step(p, PrimalDualPoint{x, y}, s);
        return py::make_tuple(r.next.x, r.next.y, r.shadow.x, r.shadow.y);
      },
      py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("steps"));

  m.def("solve", &Solve, py::arg("problem"), py::arg("steps"),
        py::arg("variant") = "pdhg", py::arg("stop") = "kkt",
        py::arg("tol") = 1e-8, py::arg("max_iters") = 10000,
        py::arg("K") = 200, py::arg("beta0") = 1.0,
        py::arg("log_every") = 0, py::arg("x0") = py::none(),
        py::arg("y0") = py::none(), py::arg("x_ref") = py::none(),
        py::arg("y_ref") = py::none());

  m.def(
      "reference_solve",
      [](const SaddleProblem& p, const StepSizes& s, double tol) {
        ReferenceOptions o;
        o.tol = tol;
        const ReferenceSolution r = reference_solve(p, s, o);
        return py::make_tuple(r.z.x, r.z.y, r.residual);
      },
      py::arg("problem"), py::arg("steps"), py::arg("tol") = 1e-12);

  m.def(
      "smoothed_gap",
      [](const SaddleProblem& p, const Vec& x, const Vec& y, const Vec& cx,
         const Vec& cy, double beta_x, double beta_y, const StepSizes& s) {
        return smoothed_gap(p, PrimalDualPoint{x, y}, PrimalDualPoint{cx, cy},
                            {beta_x, beta_y}, s)
            .value;
      },
      py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("cx"),
      py::arg("cy"), py::arg("beta_x"), py::arg("beta_y"), py::arg("steps"));
  m.def(
      "kkt_residual",
      [](const SaddleProblem& p, const Vec& x, const Vec& y,
         const StepSizes& s) {
        const KktResidual r = kkt_residual(p, PrimalDualPoint{x, y}, s);
        return py::make_tuple(r.primal, r.dual);
      },
      py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("steps"));

  m.def("averaging_lambda", &averaging_lambda, py::arg("gamma"),
        py::arg("alpha_f"), py::arg("alpha_g"));
  m.def("a2_const", &a2_const, py::arg("alpha_f"), py::arg("alpha_g"),
        py::arg("gamma"));
  m.def("rate_strconv", &rate_strconv, py::arg("mu"), py::arg("lam"),
        py::arg("a2"));
  m.def("rate_msr", &rate_msr, py::arg("eta"), py::arg("lam"),
        py::arg("alpha_f"), py::arg("alpha_g"));
  m.def("rate_qebsm", &rate_qebsm, py::arg("eta"), py::arg("lam"),
        py::arg("a2"), py::arg("beta_x"), py::arg("beta_y"));
  m.def(
      "restart_period",
      [](double beta, double eta, double a2) {
        return restart_period(beta, eta, a2).K;
      },
      py::arg("beta"), py::arg("eta"), py::arg("a2"));
  m.def(
      "toy_exact_rate",
      [](double mu, double a, double tau, double sigma) {
        return toy_exact_rate(
            {.mu = mu, .a = a, .b = 0.0, .tau = tau, .sigma = sigma});
      },
      py::arg("mu"), py::arg("a") = 0.03, py::arg("tau") = 1.0,
      py::arg("sigma") = 1.0);

  py::register_exception<CertificateError>(m, "CertificateError",
                                           PyExc_ValueError);
  py::register_exception<ReferenceUnconverged>(m, "ReferenceUnconverged",
                                               PyExc_RuntimeError);
  py::register_exception<GapUnavailable>(m, "GapUnavailable",
                                         PyExc_RuntimeError);
}
